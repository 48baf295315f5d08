#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apol/galois.hpp"
#include "apol/relation.hpp"

namespace apol {

/*! \brief A formal model of analogy: a named 4-ary relation whose tuples are
 * the proportions a : b :: c : d it accepts.
 */
struct analogy_model {
  std::string name;
  relation rel;

  analogy_model(std::string name, relation rel) : name(std::move(name)), rel(std::move(rel)) {
    if (this->rel.arity() != 4) throw input_error("analogy model must be a 4-ary relation");
  }
};

/*! \brief The five built-in Boolean analogy models R1..R5.
 *
 * The tuple sets are locked, golden data; the matrices below list one column
 * per tuple (row 1 on top).  R4 is the minimal proportion model (patterns
 * x:x::y:y and x:y::x:y), R5 the parity model a+b = c+d over GF(2).
 */
inline const std::array<analogy_model, 5>& builtin_models() {
  static const std::array<analogy_model, 5> models = {
      analogy_model{"R1", parse_relation("0 1 0 1 1 0 1 0 0 1 0 1\n"
                                         "0 0 1 1 0 1 0 1 0 0 1 1\n"
                                         "0 0 0 0 1 1 0 0 1 1 1 1\n"
                                         "0 0 0 0 0 0 1 1 1 1 1 1")},
      analogy_model{"R2", parse_relation("0 1 0 1 1 0 0 1\n"
                                         "0 0 1 1 0 1 0 1\n"
                                         "0 0 0 0 1 0 1 1\n"
                                         "0 0 0 0 0 1 1 1")},
      analogy_model{"R3", parse_relation("0 1 1 0 0 1 0 1\n"
                                         "0 1 0 1 0 0 1 1\n"
                                         "0 0 1 0 1 1 1 1\n"
                                         "0 0 0 1 1 1 1 1")},
      analogy_model{"R4", parse_relation("0 1 1 0 0 1\n"
                                         "0 1 0 1 0 1\n"
                                         "0 0 1 0 1 1\n"
                                         "0 0 0 1 1 1")},
      analogy_model{"R5", parse_relation("0 1 1 0 1 0 0 1\n"
                                         "0 1 0 1 0 1 0 1\n"
                                         "0 0 1 1 0 0 1 1\n"
                                         "0 0 0 0 1 1 1 1")},
  };
  return models;
}

inline const analogy_model& builtin_model(std::string_view name) {
  for (const auto& m : builtin_models())
    if (m.name == name) return m;
  throw input_error("unknown builtin analogy model `" + std::string(name) + "`");
}

//! R1..R5 plus anything the caller loads on top.
inline relation_registry default_registry() {
  relation_registry reg;
  for (const auto& m : builtin_models()) reg.add(m.name, m.rel);
  return reg;
}

// -- postulate audit --------------------------------------------------------

enum class postulate : int {
  reflexivity = 0,            // (a,a,b,b) for all a, b
  symmetry,                   // (a,b,c,d) -> (c,d,a,b)
  central_permutation,        // (a,b,c,d) -> (a,c,b,d)
  internal_reversal,          // (a,b,c,d) -> (b,a,d,c)
  extreme_permutation,        // (a,b,c,d) -> (d,b,c,a)
  strong_reflexivity,         // (a,b,a,d) in M implies d = b
  strong_inner_reflexivity,   // (a,a,c,d) in M implies d = c
  uniqueness,                 // any solvable prefix has exactly one completion
};

inline constexpr int postulate_count = 8;

inline std::string_view postulate_name(postulate p) {
  switch (p) {
    case postulate::reflexivity: return "reflexivity";
    case postulate::symmetry: return "symmetry";
    case postulate::central_permutation: return "central permutation";
    case postulate::internal_reversal: return "internal reversal";
    case postulate::extreme_permutation: return "extreme permutation";
    case postulate::strong_reflexivity: return "strong reflexivity";
    case postulate::strong_inner_reflexivity: return "strong inner reflexivity";
    case postulate::uniqueness: return "uniqueness";
  }
  return "?";
}

/*! \brief Verdict for one postulate; the witness re-checks as a violation.
 *
 * Witness shapes: the missing tuple (a,a,b,b) for reflexivity; the member
 * tuple whose transform escapes for the three permutation closures; the
 * offending member tuple for the two strong forms; the ambiguous 3-prefix
 * for uniqueness.
 */
struct postulate_check {
  bool holds = true;
  std::vector<uint8_t> witness;
};

struct postulate_report {
  std::array<postulate_check, postulate_count> checks;

  const postulate_check& operator[](postulate p) const {
    return checks[static_cast<size_t>(p)];
  }
  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

namespace detail {

inline std::vector<uint8_t> tuple_bits(uint16_t code) {
  return {static_cast<uint8_t>(code & 1), static_cast<uint8_t>((code >> 1) & 1),
          static_cast<uint8_t>((code >> 2) & 1), static_cast<uint8_t>((code >> 3) & 1)};
}

//! Coordinate shuffles as 4-bit code maps; slot k of the image takes bit from[k].
template <int A, int B, int C, int D>
uint16_t shuffle4(uint16_t t) {
  return static_cast<uint16_t>(((t >> A) & 1) | (((t >> B) & 1) << 1) |
                               (((t >> C) & 1) << 2) | (((t >> D) & 1) << 3));
}

}  // namespace detail

/*! \brief Exhaustive audit of the classical proportion postulates.
 *
 * Implication-style postulates are checked by scanning the 16 quadruples in
 * ascending code order, so the recorded witness is the first violation.
 * Uniqueness is evaluated on solvable prefixes only.
 */
inline postulate_report check_postulates(const analogy_model& model) {
  const relation& m = model.rel;
  postulate_report report;
  auto& checks = report.checks;

  auto fail = [&](postulate p, std::vector<uint8_t> witness) {
    auto& c = checks[static_cast<size_t>(p)];
    if (c.holds) {
      c.holds = false;
      c.witness = std::move(witness);
    }
  };

  for (int a = 0; a < 2 && checks[0].holds; ++a)
    for (int b = 0; b < 2; ++b) {
      uint16_t t = static_cast<uint16_t>(a | (a << 1) | (b << 2) | (b << 3));
      if (!m.contains(t)) {
        fail(postulate::reflexivity, detail::tuple_bits(t));
        break;
      }
    }

  for (uint16_t t = 0; t < 16; ++t) {
    if (!m.contains(t)) continue;
    if (!m.contains(detail::shuffle4<2, 3, 0, 1>(t)))
      fail(postulate::symmetry, detail::tuple_bits(t));
    if (!m.contains(detail::shuffle4<0, 2, 1, 3>(t)))
      fail(postulate::central_permutation, detail::tuple_bits(t));
    if (!m.contains(detail::shuffle4<1, 0, 3, 2>(t)))
      fail(postulate::internal_reversal, detail::tuple_bits(t));
    if (!m.contains(detail::shuffle4<3, 1, 2, 0>(t)))
      fail(postulate::extreme_permutation, detail::tuple_bits(t));
    uint8_t a = t & 1, b = (t >> 1) & 1, c = (t >> 2) & 1, d = (t >> 3) & 1;
    if (a == c && d != b) fail(postulate::strong_reflexivity, detail::tuple_bits(t));
    if (a == b && d != c) fail(postulate::strong_inner_reflexivity, detail::tuple_bits(t));
  }

  for (uint16_t prefix = 0; prefix < 8; ++prefix) {
    if (m.contains(prefix) && m.contains(prefix | 8)) {
      fail(postulate::uniqueness,
           {static_cast<uint8_t>(prefix & 1), static_cast<uint8_t>((prefix >> 1) & 1),
            static_cast<uint8_t>((prefix >> 2) & 1)});
      break;
    }
  }

  return report;
}

// -- vector analogy equations -------------------------------------------------

/*! \brief Componentwise solution set of a : b :: c : x over bit vectors.
 *
 * Stored compactly as one two-bit mask per position; the full product set is
 * only materialized on demand and under a cap, since k two-solution positions
 * mean 2^k tuples.
 */
struct vector_solution_set {
  std::vector<uint8_t> component_masks;  // bit 0: x_i = 0 allowed; bit 1: x_i = 1 allowed

  bool empty() const {
    for (uint8_t m : component_masks)
      if (m == 0) return true;
    return false;
  }

  uint64_t count() const {
    uint64_t n = 1;
    for (uint8_t m : component_masks) {
      n *= static_cast<uint64_t>((m & 1) + ((m >> 1) & 1));
      if (n == 0) return 0;
    }
    return n;
  }

  //! All solutions in lexicographic order (position 1 most significant),
  //! or std::nullopt when more than cap solutions exist.
  std::optional<std::vector<std::vector<uint8_t>>> materialize(uint64_t cap = uint64_t{1} << 20) const {
    uint64_t n = count();
    if (n > cap) return std::nullopt;
    std::vector<std::vector<uint8_t>> out;
    if (n == 0) return out;
    std::vector<uint8_t> current(component_masks.size(), 0);
    // depth-first over positions, 0 before 1
    auto rec = [&](auto&& self, size_t pos) -> void {
      if (pos == component_masks.size()) {
        out.push_back(current);
        return;
      }
      for (uint8_t v = 0; v < 2; ++v)
        if ((component_masks[pos] >> v) & 1) {
          current[pos] = v;
          self(self, pos + 1);
        }
    };
    rec(rec, 0);
    return out;
  }
};

/*! \brief Solves a : b :: c : x componentwise in the given model. */
inline vector_solution_set solve_vector(const analogy_model& model,
                                        std::span<const uint8_t> a,
                                        std::span<const uint8_t> b,
                                        std::span<const uint8_t> c) {
  if (a.size() != b.size() || a.size() != c.size())
    throw input_error("solve_vector: tuple lengths differ");
  vector_solution_set out;
  out.component_masks.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    uint8_t mask = 0;
    for (uint8_t x : solutions(model.rel, a[i], b[i], c[i]))
      mask |= static_cast<uint8_t>(1u << x);
    out.component_masks.push_back(mask);
  }
  return out;
}

/*! \brief The relational constraint whose polymorphisms are exactly the
 * functions preserving analogies from src to dst: (src, dst-extended).
 */
inline constraint analogical_constraint(const analogy_model& src, const analogy_model& dst) {
  return constraint(src.rel, extend_consequent(dst.rel));
}

}  // namespace apol
