#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "apol/detail/bits.hpp"
#include "apol/relation.hpp"
#include "apol/truth_table.hpp"

namespace apol {

//! Enumeration-style operations (pol, inv, clone closure, the atlas) are
//! capped at this arity by default; 2^(2^5) tables are out of reach anyway.
inline constexpr int max_enum_arity = 4;

/*! \brief One way a function fails a constraint: n antecedent columns whose
 * componentwise image lands outside the consequent.
 */
struct violation {
  uint32_t constraint_index = 0;
  std::vector<uint16_t> columns;  // one antecedent tuple code per argument of f
  uint16_t image = 0;

  //! Re-derives the violation from scratch; true iff it is genuine.
  bool recheck(const truth_table& f, std::span<const constraint> constraints) const {
    if (constraint_index >= constraints.size()) return false;
    const constraint& c = constraints[constraint_index];
    if (static_cast<int>(columns.size()) != f.arity()) return false;
    uint16_t img = 0;
    for (int r = 0; r < c.arity(); ++r) {
      uint64_t point = 0;
      for (int j = 0; j < f.arity(); ++j) {
        if (!c.antecedent.contains(columns[j])) return false;
        if ((columns[j] >> r) & 1) point |= uint64_t{1} << j;
      }
      if (f.get(point)) img |= static_cast<uint16_t>(1u << r);
    }
    return img == image && !c.consequent.contains(img);
  }
};

namespace detail {

//! Iterates all |tuples|^n column selections in ascending odometer order
//! (first column fastest) and calls visit(selection) until it returns false.
template <typename Visit>
bool for_each_selection(std::span<const uint16_t> tuples, int n, Visit&& visit) {
  std::vector<int> digit(static_cast<size_t>(std::max(n, 1)), 0);
  std::vector<uint16_t> selection(static_cast<size_t>(n), tuples.empty() ? uint16_t{0} : tuples[0]);
  if (n > 0 && tuples.empty()) return true;  // no selections at all
  size_t k = tuples.size();
  while (true) {
    if (!visit(std::span<const uint16_t>(selection))) return false;
    int pos = 0;
    for (; pos < n; ++pos) {
      if (static_cast<size_t>(++digit[pos]) < k) {
        selection[pos] = tuples[digit[pos]];
        break;
      }
      digit[pos] = 0;
      selection[pos] = tuples[0];
    }
    if (pos == n) return true;  // odometer wrapped (or n == 0: single empty selection)
  }
}

}  // namespace detail

/*! \brief First violation of any constraint by f, in (constraint, selection)
 * odometer order; std::nullopt when f preserves them all.
 */
inline std::optional<violation> find_violation(const truth_table& f,
                                               std::span<const constraint> constraints) {
  int n = f.arity();
  std::optional<violation> found;
  for (uint32_t ci = 0; ci < constraints.size(); ++ci) {
    const constraint& c = constraints[ci];
    auto tuples = c.antecedent.tuples();
    int m = c.arity();
    bool ok = detail::for_each_selection(
        tuples, n, [&](std::span<const uint16_t> sel) {
          uint16_t img = 0;
          for (int r = 0; r < m; ++r) {
            uint64_t point = 0;
            for (int j = 0; j < n; ++j)
              if ((sel[j] >> r) & 1) point |= uint64_t{1} << j;
            if (f.get(point)) img |= static_cast<uint16_t>(1u << r);
          }
          if (!c.consequent.contains(img)) {
            found = violation{ci, {sel.begin(), sel.end()}, img};
            return false;
          }
          return true;
        });
    if (!ok) return found;
  }
  return std::nullopt;
}

inline bool preserves(const truth_table& f, const constraint& c) {
  return !find_violation(f, std::span<const constraint>(&c, 1)).has_value();
}

inline std::optional<violation> find_violation(const truth_table& f, const constraint& c) {
  return find_violation(f, std::span<const constraint>(&c, 1));
}

/*! \brief The n-ary part of the polymorphism set of a constraint family,
 * with one violating column selection per rejected function.
 *
 * members + rejected partition all 2^(2^n) n-ary functions; both are in
 * ascending table-code order regardless of worker count.
 */
struct pol_result {
  int arity = 0;
  std::vector<constraint> constraints;
  std::vector<truth_table> members;

  struct rejection {
    uint64_t function_code;
    violation why;
  };
  std::vector<rejection> rejected;

  uint64_t function_space() const { return uint64_t{1} << (uint64_t{1} << arity); }

  std::vector<uint64_t> member_codes() const {
    std::vector<uint64_t> out;
    out.reserve(members.size());
    for (const auto& f : members) out.push_back(f.code());
    return out;
  }
};

/*! \brief Exhaustive Pol computation at one arity.
 *
 * Column selections run in the outer loop so each selection's row-index
 * pattern is computed once; the inner loop filters the still-alive function
 * codes.  A function's witness is the first (constraint, selection) that
 * kills it, which is independent of the worker count because workers
 * partition the function space, not the selection order.
 */
inline pol_result pol(std::span<const constraint> constraints, int arity, int workers = 0,
                      int enum_cap = max_enum_arity) {
  if (arity < 0) throw input_error("pol: negative arity");
  if (arity > enum_cap)
    throw capability_error("pol: arity exceeds the enumeration cap");

  pol_result result;
  result.arity = arity;
  result.constraints.assign(constraints.begin(), constraints.end());

  const uint64_t space = uint64_t{1} << (uint64_t{1} << arity);
  const int n = arity;

  // Row-index patterns for every (constraint, selection), shared by workers.
  struct prepared {
    uint32_t constraint_index;
    std::vector<uint16_t> columns;
    std::array<uint8_t, 8> point_index;  // per consequent row: n-bit point
    int rows;
    const relation* consequent;
  };
  std::vector<prepared> steps;
  for (uint32_t ci = 0; ci < constraints.size(); ++ci) {
    const constraint& c = constraints[ci];
    auto tuples = c.antecedent.tuples();
    detail::for_each_selection(tuples, n, [&](std::span<const uint16_t> sel) {
      prepared p;
      p.constraint_index = ci;
      p.columns.assign(sel.begin(), sel.end());
      p.rows = c.arity();
      p.consequent = &c.consequent;
      for (int r = 0; r < p.rows; ++r) {
        uint8_t point = 0;
        for (int j = 0; j < n; ++j)
          if ((sel[j] >> r) & 1) point |= static_cast<uint8_t>(1u << j);
        p.point_index[r] = point;
      }
      steps.push_back(std::move(p));
      return true;
    });
  }

  workers = detail::resolve_workers(workers);
  std::vector<std::vector<uint64_t>> slice_members(static_cast<size_t>(workers));
  std::vector<std::vector<pol_result::rejection>> slice_rejections(static_cast<size_t>(workers));

  detail::parallel_slices(space, workers, [&](uint64_t begin, uint64_t end, int slot) {
    std::vector<uint32_t> alive(static_cast<size_t>(end - begin));
    std::iota(alive.begin(), alive.end(), static_cast<uint32_t>(begin));
    auto& rejections = slice_rejections[static_cast<size_t>(slot)];

    for (const prepared& p : steps) {
      if (alive.empty()) break;
      size_t keep = 0;
      for (size_t i = 0; i < alive.size(); ++i) {
        uint32_t code = alive[i];
        uint16_t img = 0;
        for (int r = 0; r < p.rows; ++r)
          img |= static_cast<uint16_t>(((code >> p.point_index[r]) & 1u) << r);
        if (p.consequent->contains(img)) {
          alive[keep++] = code;
        } else {
          rejections.push_back({code, violation{p.constraint_index, p.columns, img}});
        }
      }
      alive.resize(keep);
    }

    auto& members = slice_members[static_cast<size_t>(slot)];
    members.assign(alive.begin(), alive.end());
    std::sort(rejections.begin(), rejections.end(),
              [](const auto& a, const auto& b) { return a.function_code < b.function_code; });
  });

  for (int slot = 0; slot < workers; ++slot) {
    for (uint64_t code : slice_members[static_cast<size_t>(slot)])
      result.members.push_back(truth_table::from_code(arity, code));
    auto& rej = slice_rejections[static_cast<size_t>(slot)];
    result.rejected.insert(result.rejected.end(), std::make_move_iterator(rej.begin()),
                           std::make_move_iterator(rej.end()));
  }
  return result;
}

/*! \brief All m-ary relations preserved by every given function, ascending by
 * tuple bitmask.  Exhaustive over the 2^(2^m) candidates.
 */
inline std::vector<relation> inv(std::span<const truth_table> functions, int m,
                                 int enum_cap = max_enum_arity) {
  if (m < 1) throw input_error("inv: relation arity must be at least 1");
  if (m > enum_cap) throw capability_error("inv: arity exceeds the enumeration cap");

  // Cache per-function tables once; the hot loop works on raw codes.
  struct fn {
    int arity;
    uint64_t code;
  };
  std::vector<fn> fns;
  for (const auto& f : functions) {
    if (f.arity() > 6) throw capability_error("inv: function arity too large");
    fns.push_back({f.arity(), f.code()});
  }
  std::sort(fns.begin(), fns.end(), [](const fn& a, const fn& b) { return a.arity < b.arity; });

  std::vector<relation> out;
  const uint64_t relation_space = uint64_t{1} << (uint64_t{1} << m);
  std::vector<uint16_t> tuples;
  for (uint64_t mask = 0; mask < relation_space; ++mask) {
    tuples.clear();
    for (uint16_t t = 0; t < (1u << m); ++t)
      if ((mask >> t) & 1) tuples.push_back(t);

    bool invariant = true;
    for (const fn& f : fns) {
      bool ok = detail::for_each_selection(
          tuples, f.arity, [&](std::span<const uint16_t> sel) {
            uint16_t img = 0;
            for (int r = 0; r < m; ++r) {
              uint64_t point = 0;
              for (int j = 0; j < f.arity; ++j)
                if ((sel[j] >> r) & 1) point |= uint64_t{1} << j;
              if ((f.code >> point) & 1) img |= static_cast<uint16_t>(1u << r);
            }
            return ((mask >> img) & 1) != 0;
          });
      if (!ok) {
        invariant = false;
        break;
      }
    }
    if (invariant) {
      relation r(m);
      for (uint16_t t : tuples) r.insert(t);
      out.push_back(std::move(r));
    }
  }
  return out;
}

// -- bounded-arity composition closure -------------------------------------

/*! \brief A function set organized by arity, with O(1) membership. */
class function_set_by_arity {
public:
  explicit function_set_by_arity(int max_arity) : max_arity_(max_arity) {
    if (max_arity < 0 || max_arity > max_enum_arity)
      throw capability_error("function sets by arity are capped at arity 4");
    present_.resize(static_cast<size_t>(max_arity) + 1);
    for (int a = 0; a <= max_arity; ++a)
      present_[static_cast<size_t>(a)].assign(uint64_t{1} << (uint64_t{1} << a), false);
  }

  int max_arity() const { return max_arity_; }

  bool contains(int arity, uint64_t code) const {
    return arity <= max_arity_ && present_[static_cast<size_t>(arity)][code];
  }

  bool contains(const truth_table& f) const {
    return f.arity() <= max_arity_ && contains(f.arity(), f.code());
  }

  //! Returns true when the code was not present yet.
  bool insert(int arity, uint64_t code) {
    if (arity > max_arity_) throw input_error("function set: arity above limit");
    auto ref = present_[static_cast<size_t>(arity)].begin() + static_cast<ptrdiff_t>(code);
    if (*ref) return false;
    *ref = true;
    ++count_;
    return true;
  }

  void insert(const truth_table& f) { insert(f.arity(), f.code()); }

  std::vector<uint64_t> codes(int arity) const {
    std::vector<uint64_t> out;
    const auto& bits = present_[static_cast<size_t>(arity)];
    for (uint64_t c = 0; c < bits.size(); ++c)
      if (bits[c]) out.push_back(c);
    return out;
  }

  std::vector<truth_table> members(int arity) const {
    std::vector<truth_table> out;
    for (uint64_t c : codes(arity)) out.push_back(truth_table::from_code(arity, c));
    return out;
  }

  bool full(int arity) const {
    uint64_t space = uint64_t{1} << (uint64_t{1} << arity);
    uint64_t have = 0;
    for (bool b : present_[static_cast<size_t>(arity)]) have += b;
    return have == space;
  }

  uint64_t total() const { return count_; }

private:
  int max_arity_;
  std::vector<std::vector<bool>> present_;
  uint64_t count_ = 0;
};

namespace detail {

//! Table code of f(g_1, ..., g_n) as an m-ary function.
inline uint64_t compose_codes(uint64_t f_code, int n, std::span<const uint64_t> g_codes, int m) {
  uint64_t h = 0;
  for (uint64_t p = 0; p < (uint64_t{1} << m); ++p) {
    uint64_t args = 0;
    for (int i = 0; i < n; ++i) args |= ((g_codes[i] >> p) & 1) << i;
    h |= ((f_code >> args) & 1) << p;
  }
  return h;
}

}  // namespace detail

/*! \brief The arity-bounded part of the clone generated by the given functions.
 *
 * Saturates F together with all projections under composition, never building
 * intermediate functions of arity above max_arity.  This under-approximates
 * clone membership in general (derivations that pass through higher arities
 * are not explored) but is exact whenever every derivation of an
 * arity-<=max_arity member stays within the bound.
 */
inline function_set_by_arity clone_generate(std::span<const truth_table> generators,
                                            int max_arity) {
  function_set_by_arity closed(max_arity);
  for (int a = 1; a <= max_arity; ++a)
    for (int k = 1; k <= a; ++k) closed.insert(projection(a, k));
  for (const auto& g : generators) {
    if (g.arity() > max_arity)
      throw input_error("clone_generate: generator arity above the requested bound");
    closed.insert(g);
  }

  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 0; n <= max_arity; ++n) {
      auto outer = closed.codes(n);
      if (outer.empty()) continue;
      for (int m = 0; m <= max_arity; ++m) {
        if (closed.full(m)) continue;  // nothing new can appear there
        if (n > 0 && closed.codes(m).empty()) continue;
        if (n == 0) {
          for (uint64_t f_code : outer)
            changed |= closed.insert(m, detail::compose_codes(f_code, 0, {}, m));
          continue;
        }
        auto inner = closed.codes(m);
        std::vector<uint64_t> choice(static_cast<size_t>(n), inner[0]);
        std::vector<size_t> digit(static_cast<size_t>(n), 0);
        while (true) {
          for (uint64_t f_code : outer)
            changed |= closed.insert(m, detail::compose_codes(f_code, n, choice, m));
          int pos = 0;
          for (; pos < n; ++pos) {
            if (++digit[pos] < inner.size()) {
              choice[pos] = inner[digit[pos]];
              break;
            }
            digit[pos] = 0;
            choice[pos] = inner[0];
          }
          if (pos == n) break;
        }
      }
    }
  }
  return closed;
}

/*! \brief A witness that a function set is not minor-closed. */
struct minor_closure_violation {
  int source_arity;
  uint64_t source_code;
  int target_arity;
  uint64_t minor_code;
};

/*! \brief Searches for a minor of a member that escapes the set, over all
 * variable maps into arities 1..max_arity (nullary members also require
 * their constant extensions at every arity).
 */
inline std::optional<minor_closure_violation> find_minion_violation(
    const function_set_by_arity& k, int max_arity) {
  for (int m = 0; m <= max_arity; ++m) {
    for (uint64_t g_code : k.codes(m)) {
      truth_table g = truth_table::from_code(m, g_code);
      for (int n = m == 0 ? 0 : 1; n <= max_arity; ++n) {
        uint64_t maps = 1;
        for (int s = 0; s < m; ++s) maps *= static_cast<uint64_t>(n);
        minor_map map;
        map.source_arity = m;
        map.target_arity = n;
        map.assignments.assign(static_cast<size_t>(m), minor_map::assignment::arg(0));
        for (uint64_t key = 0; key < maps; ++key) {
          uint64_t kk = key;
          for (int s = 0; s < m; ++s) {
            map.assignments[static_cast<size_t>(s)] =
                minor_map::assignment::arg(static_cast<int>(kk % n));
            kk /= n;
          }
          uint64_t minor_code = apply_minor(g, map).code();
          if (!k.contains(n, minor_code))
            return minor_closure_violation{m, g_code, n, minor_code};
        }
      }
    }
  }
  return std::nullopt;
}

inline bool is_minion_closed(const function_set_by_arity& k, int max_arity) {
  return !find_minion_violation(k, max_arity).has_value();
}

/*! \brief Checks K C1 subseteq K and C2 K subseteq K with all arities bounded
 * by max_arity; C1 and C2 are named families standing in for clones.
 */
inline bool is_clonoid_stable(const function_set_by_arity& k, const function_family& c1,
                              const function_family& c2, int max_arity) {
  // right composition: f in K, inner functions from C1
  for (int n = 0; n <= max_arity; ++n) {
    for (uint64_t f_code : k.codes(n)) {
      for (int m = 0; m <= max_arity; ++m) {
        if (n == 0) {
          if (!k.contains(m, detail::compose_codes(f_code, 0, {}, m))) return false;
          continue;
        }
        auto inner = c1.enumerate(m);
        if (inner.empty()) continue;
        std::vector<uint64_t> inner_codes;
        inner_codes.reserve(inner.size());
        for (const auto& g : inner) inner_codes.push_back(g.code());
        std::vector<uint64_t> choice(static_cast<size_t>(n), inner_codes[0]);
        std::vector<size_t> digit(static_cast<size_t>(n), 0);
        while (true) {
          if (!k.contains(m, detail::compose_codes(f_code, n, choice, m))) return false;
          int pos = 0;
          for (; pos < n; ++pos) {
            if (++digit[pos] < inner_codes.size()) {
              choice[pos] = inner_codes[digit[pos]];
              break;
            }
            digit[pos] = 0;
            choice[pos] = inner_codes[0];
          }
          if (pos == n) break;
        }
      }
    }
  }
  // left composition: f from C2, inner functions from K
  for (int n = 0; n <= max_arity; ++n) {
    auto outer = c2.enumerate(n);
    for (const auto& f : outer) {
      uint64_t f_code = f.code();
      for (int m = 0; m <= max_arity; ++m) {
        if (n == 0) {
          if (!k.contains(m, detail::compose_codes(f_code, 0, {}, m))) return false;
          continue;
        }
        auto inner_codes = k.codes(m);
        if (inner_codes.empty()) continue;
        std::vector<uint64_t> choice(static_cast<size_t>(n), inner_codes[0]);
        std::vector<size_t> digit(static_cast<size_t>(n), 0);
        while (true) {
          if (!k.contains(m, detail::compose_codes(f_code, n, choice, m))) return false;
          int pos = 0;
          for (; pos < n; ++pos) {
            if (++digit[pos] < inner_codes.size()) {
              choice[pos] = inner_codes[digit[pos]];
              break;
            }
            digit[pos] = 0;
            choice[pos] = inner_codes[0];
          }
          if (pos == n) break;
        }
      }
    }
  }
  return true;
}

}  // namespace apol
