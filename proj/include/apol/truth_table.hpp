#pragma once

#include <algorithm>
#include <array>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "apol/detail/bits.hpp"

namespace apol {

/*! \brief An n-ary Boolean function stored as a 2^n-entry bit table.
 *
 * Entry at index i is the value of the function at the point whose j-th
 * coordinate is bit j-1 of i; coordinate 1 is the least significant bit.
 * Two tables are equal iff arity and table agree; there is no implicit
 * arity normalization.  Nullary functions are allowed and have a single
 * table entry.
 */
class truth_table {
public:
  //! Evaluation works up to this arity; enumeration-style algorithms use
  //! the much smaller max_enum_arity.
  static constexpr int max_arity = 24;

  truth_table() : arity_(0), bits_(1, 0) {}

  explicit truth_table(int arity) : arity_(checked_arity(arity)) {
    bits_.assign(word_count(arity_), 0);
  }

  //! Builds a table from its integer code (bit i of `code` = entry i).  Arity <= 6.
  static truth_table from_code(int arity, uint64_t code) {
    truth_table f(arity);
    if (arity > 6) throw input_error("truth_table::from_code supports arity <= 6");
    if (arity < 6 && (code >> (uint64_t{1} << arity)) != 0)
      throw input_error("truth_table::from_code: code has bits beyond table size");
    f.bits_[0] = code;
    return f;
  }

  int arity() const { return arity_; }
  uint64_t size() const { return uint64_t{1} << arity_; }

  bool get(uint64_t index) const {
    assert(index < size());
    return (bits_[index >> 6] >> (index & 63)) & 1;
  }

  void set(uint64_t index, bool value) {
    assert(index < size());
    uint64_t mask = uint64_t{1} << (index & 63);
    if (value)
      bits_[index >> 6] |= mask;
    else
      bits_[index >> 6] &= ~mask;
  }

  //! Function value at a point given as a bit tuple of length arity().
  bool eval(std::span<const uint8_t> point) const {
    if (static_cast<int>(point.size()) != arity_)
      throw input_error("eval: point length does not match arity");
    uint64_t index = 0;
    for (int j = 0; j < arity_; ++j)
      if (point[j]) index |= uint64_t{1} << j;
    return get(index);
  }

  bool eval(std::initializer_list<int> point) const {
    std::vector<uint8_t> p;
    p.reserve(point.size());
    for (int b : point) p.push_back(static_cast<uint8_t>(b != 0));
    return eval(std::span<const uint8_t>(p));
  }

  //! Integer table code; defined for arity <= 6.
  uint64_t code() const {
    if (arity_ > 6) throw capability_error("code() requires arity <= 6");
    return bits_[0];
  }

  //! Serializes as `arity:hexdigits`, table bits most significant index first.
  std::string serialize() const {
    uint64_t digits = (size() + 3) / 4;
    std::string out = std::to_string(arity_);
    out += ':';
    for (uint64_t t = digits; t-- > 0;) {
      int nibble = 0;
      for (int b = 3; b >= 0; --b) {
        uint64_t index = 4 * t + b;
        nibble = (nibble << 1) | (index < size() && get(index) ? 1 : 0);
      }
      out += "0123456789abcdef"[nibble];
    }
    return out;
  }

  static truth_table parse(std::string_view text) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos)
      throw parse_error("truth table literal must look like `arity:hexdigits`");
    int arity = 0;
    if (colon == 0) throw parse_error("missing arity in truth table literal");
    for (char ch : text.substr(0, colon)) {
      if (ch < '0' || ch > '9') throw parse_error("invalid arity in truth table literal");
      arity = arity * 10 + (ch - '0');
      if (arity > max_arity) throw parse_error("arity exceeds supported maximum");
    }
    truth_table f(arity);
    std::string_view digits = text.substr(colon + 1);
    uint64_t expected = (f.size() + 3) / 4;
    if (digits.size() != expected)
      throw parse_error("truth table literal has wrong digit count");
    for (uint64_t t = 0; t < expected; ++t) {
      char ch = digits[expected - 1 - t];
      int nibble;
      if (ch >= '0' && ch <= '9')
        nibble = ch - '0';
      else if (ch >= 'a' && ch <= 'f')
        nibble = ch - 'a' + 10;
      else if (ch >= 'A' && ch <= 'F')
        nibble = ch - 'A' + 10;
      else
        throw parse_error("invalid hex digit in truth table literal");
      for (int b = 0; b < 4; ++b) {
        uint64_t index = 4 * t + b;
        if (index < f.size()) {
          f.set(index, (nibble >> b) & 1);
        } else if ((nibble >> b) & 1) {
          throw parse_error("truth table literal sets bits beyond table size");
        }
      }
    }
    return f;
  }

  bool operator==(const truth_table&) const = default;

  //! Lexicographic by (arity, table code); gives the deterministic report order.
  bool operator<(const truth_table& other) const {
    if (arity_ != other.arity_) return arity_ < other.arity_;
    for (size_t w = bits_.size(); w-- > 0;)
      if (bits_[w] != other.bits_[w]) return bits_[w] < other.bits_[w];
    return false;
  }

private:
  static int checked_arity(int arity) {
    if (arity < 0 || arity > max_arity)
      throw input_error("truth table arity must be within [0, 24]");
    return arity;
  }

  static size_t word_count(int arity) {
    return arity <= 6 ? 1 : (size_t{1} << (arity - 6));
  }

  int arity_;
  std::vector<uint64_t> bits_;
};

// -- canonical small functions ------------------------------------------------

inline truth_table constant_function(int arity, bool value) {
  truth_table f(arity);
  for (uint64_t i = 0; i < f.size(); ++i) f.set(i, value);
  return f;
}

//! i-th projection (1-based argument position).
inline truth_table projection(int arity, int position) {
  if (position < 1 || position > arity)
    throw input_error("projection position out of range");
  truth_table f(arity);
  for (uint64_t i = 0; i < f.size(); ++i) f.set(i, (i >> (position - 1)) & 1);
  return f;
}

/*! \brief The outer negation of f: point-wise complement of the table. */
inline truth_table outer_negation(const truth_table& f) {
  truth_table g(f.arity());
  for (uint64_t i = 0; i < f.size(); ++i) g.set(i, !f.get(i));
  return g;
}

/*! \brief The inner negation of f: every argument complemented. */
inline truth_table inner_negation(const truth_table& f) {
  truth_table g(f.arity());
  uint64_t mask = f.size() - 1;
  for (uint64_t i = 0; i < f.size(); ++i) g.set(i, f.get(~i & mask));
  return g;
}

/*! \brief The dual of f, i.e. the outer negation of the inner negation. */
inline truth_table dual(const truth_table& f) {
  return outer_negation(inner_negation(f));
}

// -- algebraic normal form ----------------------------------------------------

/*! \brief Multilinear-polynomial coefficients of a Boolean function over GF(2).
 *
 * The coefficient of the monomial whose variable set is the bit positions of m
 * sits at index m; index 0 is the constant term.
 */
struct anf_polynomial {
  int arity = 0;
  std::vector<uint64_t> coefficients;  // packed like a truth table

  bool coefficient(uint64_t monomial) const {
    return (coefficients[monomial >> 6] >> (monomial & 63)) & 1;
  }

  //! Largest number of variables in a monomial with a set coefficient; 0 for the zero polynomial.
  int degree() const {
    int deg = 0;
    uint64_t entries = uint64_t{1} << arity;
    for (uint64_t m = 0; m < entries; ++m)
      if (coefficient(m)) deg = std::max(deg, std::popcount(m));
    return deg;
  }

  //! Direct evaluation: XOR of the monomials satisfied by the point.
  bool eval(uint64_t point) const {
    bool acc = false;
    uint64_t entries = uint64_t{1} << arity;
    for (uint64_t m = 0; m < entries; ++m)
      if (coefficient(m) && (m & point) == m) acc = !acc;
    return acc;
  }

  bool operator==(const anf_polynomial&) const = default;
};

namespace detail {

// In-place GF(2) zeta/Moebius butterfly; the transform is an involution.
inline void mobius_transform(std::vector<uint64_t>& bits, int arity) {
  // within-word steps
  static constexpr uint64_t low_masks[6] = {
      0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
      0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL};
  for (int j = 0; j < arity && j < 6; ++j)
    for (auto& w : bits) w ^= (w & low_masks[j]) << (1 << j);
  // across-word steps
  for (int j = 6; j < arity; ++j) {
    size_t stride = size_t{1} << (j - 6);
    for (size_t block = 0; block < bits.size(); block += 2 * stride)
      for (size_t k = 0; k < stride; ++k)
        bits[block + stride + k] ^= bits[block + k];
  }
}

inline uint64_t mobius_code(uint64_t code, int arity) {
  std::vector<uint64_t> bits{code};
  mobius_transform(bits, arity);
  return bits[0];
}

}  // namespace detail

inline anf_polynomial anf(const truth_table& f) {
  anf_polynomial p;
  p.arity = f.arity();
  p.coefficients.assign((f.size() + 63) / 64, 0);
  for (uint64_t i = 0; i < f.size(); ++i)
    if (f.get(i)) p.coefficients[i >> 6] |= uint64_t{1} << (i & 63);
  detail::mobius_transform(p.coefficients, p.arity);
  return p;
}

inline truth_table anf_inverse(const anf_polynomial& p) {
  std::vector<uint64_t> bits = p.coefficients;
  detail::mobius_transform(bits, p.arity);
  truth_table f(p.arity);
  uint64_t entries = uint64_t{1} << p.arity;
  for (uint64_t i = 0; i < entries; ++i)
    f.set(i, (bits[i >> 6] >> (i & 63)) & 1);
  return f;
}

inline int degree(const truth_table& f) { return anf(f).degree(); }

inline bool is_affine(const truth_table& f) { return degree(f) <= 1; }

namespace detail {

//! Affine test on a raw table code, arity <= 6.
inline bool is_affine_code(uint64_t code, int arity) {
  uint64_t coeffs = mobius_code(code, arity);
  uint64_t affine_mask = 1;  // constant term
  for (int j = 0; j < arity; ++j) affine_mask |= uint64_t{1} << (uint64_t{1} << j);
  return (coeffs & ~affine_mask) == 0;
}

}  // namespace detail

// -- minors ---------------------------------------------------------------

/*! \brief A substitution taking a source function to a function of target arity.
 *
 * Each source argument is mapped either to a target argument (0-based) or to
 * one of the constants 0/1.  Maps without constants realize the plain minor
 * relation; maps with constants realize I-minors.
 */
struct minor_map {
  struct assignment {
    enum class kind : uint8_t { argument, const_zero, const_one };
    kind what = kind::argument;
    int argument = 0;  // valid when what == kind::argument

    static assignment arg(int index) { return {kind::argument, index}; }
    static assignment zero() { return {kind::const_zero, 0}; }
    static assignment one() { return {kind::const_one, 0}; }
  };

  int source_arity = 0;
  int target_arity = 0;
  std::vector<assignment> assignments;  // one per source argument
};

inline truth_table apply_minor(const truth_table& g, const minor_map& m) {
  if (m.source_arity != g.arity() ||
      static_cast<int>(m.assignments.size()) != m.source_arity)
    throw input_error("apply_minor: map does not fit the source function");
  if (m.target_arity < 0 || m.target_arity > truth_table::max_arity)
    throw input_error("apply_minor: bad target arity");
  for (const auto& a : m.assignments)
    if (a.what == minor_map::assignment::kind::argument &&
        (a.argument < 0 || a.argument >= m.target_arity))
      throw input_error("apply_minor: assignment references a nonexistent target argument");

  truth_table f(m.target_arity);
  uint64_t points = f.size();
  for (uint64_t x = 0; x < points; ++x) {
    uint64_t source_point = 0;
    for (int s = 0; s < m.source_arity; ++s) {
      const auto& a = m.assignments[s];
      bool bit = false;
      switch (a.what) {
        case minor_map::assignment::kind::argument: bit = (x >> a.argument) & 1; break;
        case minor_map::assignment::kind::const_zero: bit = false; break;
        case minor_map::assignment::kind::const_one: bit = true; break;
      }
      if (bit) source_point |= uint64_t{1} << s;
    }
    f.set(x, g.get(source_point));
  }
  return f;
}

/*! \brief All functions of the given arity obtainable from g by argument
 * reuse, permutation and substitution of the constants 0/1 (I-minors).
 *
 * Result is sorted and duplicate-free.
 */
inline std::vector<truth_table> i_minors(const truth_table& g, int target_arity) {
  if (target_arity < 0) throw input_error("i_minors: negative target arity");
  int options = target_arity + 2;
  uint64_t total = 1;
  for (int s = 0; s < g.arity(); ++s) total *= options;

  minor_map m;
  m.source_arity = g.arity();
  m.target_arity = target_arity;
  m.assignments.assign(g.arity(), minor_map::assignment::zero());

  std::vector<truth_table> out;
  out.reserve(total);
  for (uint64_t key = 0; key < total; ++key) {
    uint64_t k = key;
    for (int s = 0; s < g.arity(); ++s) {
      int choice = static_cast<int>(k % options);
      k /= options;
      if (choice < target_arity)
        m.assignments[s] = minor_map::assignment::arg(choice);
      else if (choice == target_arity)
        m.assignments[s] = minor_map::assignment::zero();
      else
        m.assignments[s] = minor_map::assignment::one();
    }
    out.push_back(apply_minor(g, m));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/*! \brief Whether f = g(x_sigma(1), ..., x_sigma(m)) for some pure variable map sigma. */
inline bool is_minor_of(const truth_table& f, const truth_table& g) {
  uint64_t maps = 1;
  for (int s = 0; s < g.arity(); ++s) maps *= static_cast<uint64_t>(f.arity());
  if (g.arity() > 0 && f.arity() == 0) return false;

  minor_map m;
  m.source_arity = g.arity();
  m.target_arity = f.arity();
  m.assignments.assign(g.arity(), minor_map::assignment::arg(0));
  for (uint64_t key = 0; key < maps; ++key) {
    uint64_t k = key;
    for (int s = 0; s < g.arity(); ++s) {
      m.assignments[s] = minor_map::assignment::arg(static_cast<int>(k % f.arity()));
      k /= f.arity();
    }
    if (apply_minor(g, m) == f) return true;
  }
  return false;
}

// -- named function families ---------------------------------------------

/*! \brief The named classes of Boolean functions used throughout the engine.
 *
 * C: constants; N: negated projections and constants; I: projections and
 * constants; Omega(1) = N + I: everything depending on at most one argument;
 * L: affine functions; J: projections; All: every function.
 */
enum class family_id { C, N, I, Omega1, L, J, All };

inline std::string_view family_name(family_id id) {
  switch (id) {
    case family_id::C: return "C";
    case family_id::N: return "N";
    case family_id::I: return "I";
    case family_id::Omega1: return "Omega(1)";
    case family_id::L: return "L";
    case family_id::J: return "J";
    case family_id::All: return "ALL";
  }
  return "?";
}

inline bool is_constant(const truth_table& f) {
  return f == constant_function(f.arity(), f.get(0));
}

inline bool is_projection(const truth_table& f) {
  for (int k = 1; k <= f.arity(); ++k)
    if (f == projection(f.arity(), k)) return true;
  return false;
}

inline bool is_negated_projection(const truth_table& f) {
  for (int k = 1; k <= f.arity(); ++k)
    if (f == outer_negation(projection(f.arity(), k))) return true;
  return false;
}

class function_family {
public:
  explicit function_family(family_id id) : id_(id) {}

  family_id id() const { return id_; }
  std::string_view name() const { return family_name(id_); }

  bool contains(const truth_table& f) const {
    switch (id_) {
      case family_id::C: return is_constant(f);
      case family_id::N: return is_constant(f) || is_negated_projection(f);
      case family_id::I: return is_constant(f) || is_projection(f);
      case family_id::Omega1:
        return is_constant(f) || is_projection(f) || is_negated_projection(f);
      case family_id::L: return is_affine(f);
      case family_id::J: return is_projection(f);
      case family_id::All: return true;
    }
    return false;
  }

  //! All members of the given arity, ascending table code.  `All` is capped at arity 4.
  std::vector<truth_table> enumerate(int arity) const {
    std::vector<truth_table> out;
    auto add_constants = [&] {
      out.push_back(constant_function(arity, false));
      out.push_back(constant_function(arity, true));
    };
    switch (id_) {
      case family_id::C: add_constants(); break;
      case family_id::N:
        add_constants();
        for (int k = 1; k <= arity; ++k) out.push_back(outer_negation(projection(arity, k)));
        break;
      case family_id::I:
        add_constants();
        for (int k = 1; k <= arity; ++k) out.push_back(projection(arity, k));
        break;
      case family_id::Omega1:
        add_constants();
        for (int k = 1; k <= arity; ++k) {
          out.push_back(projection(arity, k));
          out.push_back(outer_negation(projection(arity, k)));
        }
        break;
      case family_id::L:
        // one function per (constant term, coefficient vector)
        for (uint64_t key = 0; key < (uint64_t{2} << arity); ++key) {
          truth_table f(arity);
          for (uint64_t x = 0; x < f.size(); ++x) {
            bool v = key & 1;
            if (std::popcount((key >> 1) & x) & 1) v = !v;
            f.set(x, v);
          }
          out.push_back(f);
        }
        break;
      case family_id::J:
        for (int k = 1; k <= arity; ++k) out.push_back(projection(arity, k));
        break;
      case family_id::All: {
        if (arity > 4) throw capability_error("enumerating ALL is capped at arity 4");
        for (uint64_t code = 0; code < (uint64_t{1} << (uint64_t{1} << arity)); ++code)
          out.push_back(truth_table::from_code(arity, code));
        break;
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  family_id id_;
};

/*! \brief Classification outcome: the least family in C < {N, I} < L containing f. */
enum class function_class { C, N, I, L, Other };

inline std::string_view function_class_name(function_class c) {
  switch (c) {
    case function_class::C: return "C";
    case function_class::N: return "N";
    case function_class::I: return "I";
    case function_class::L: return "L";
    case function_class::Other: return "OTHER";
  }
  return "?";
}

//! Constants report C (= N intersect I); Omega(1) adds nothing beyond N and I.
inline function_class classify_function(const truth_table& f) {
  if (is_constant(f)) return function_class::C;
  if (is_negated_projection(f)) return function_class::N;
  if (is_projection(f)) return function_class::I;
  if (is_affine(f)) return function_class::L;
  return function_class::Other;
}

}  // namespace apol
