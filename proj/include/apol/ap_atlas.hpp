#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <cstdint>
#include <iterator>
#include <span>
#include <string>
#include <vector>

#include "apol/analogy.hpp"
#include "apol/galois.hpp"
#include "apol/truth_table.hpp"

namespace apol {

/*! \brief Expected class of analogy-preserving functions for every ordered
 * pair of built-in models, indexed by (src, dst) in 0..4.
 *
 * This 5x5 table is locked golden data, deliberately kept apart from the
 * enumeration machinery that verify_ap_atlas checks it against.
 */
inline family_id expected_ap_class(int src_index, int dst_index) {
  static constexpr family_id table[5][5] = {
      // dst:   R1                 R2            R3            R4            R5
      {family_id::Omega1, family_id::C, family_id::C, family_id::C, family_id::C},       // R1
      {family_id::Omega1, family_id::I, family_id::N, family_id::C, family_id::C},       // R2
      {family_id::Omega1, family_id::N, family_id::I, family_id::C, family_id::C},       // R3
      {family_id::L, family_id::Omega1, family_id::Omega1, family_id::L, family_id::L},  // R4
      {family_id::L, family_id::C, family_id::C, family_id::L, family_id::L},            // R5
  };
  if (src_index < 0 || src_index > 4 || dst_index < 0 || dst_index > 4)
    throw input_error("expected_ap_class: model index out of range");
  return table[src_index][dst_index];
}

/*! \brief Comparison of one enumerated Pol part against one family part. */
struct atlas_cell {
  int src_index = 0;
  int dst_index = 0;
  family_id expected = family_id::C;
  int arity = 0;
  uint64_t member_count = 0;
  uint64_t expected_count = 0;
  bool match = false;
  std::vector<uint64_t> unexpected_members;  // in Pol, not in the family
  std::vector<uint64_t> missing_members;     // in the family, not in Pol
};

//! Checks Pol(src, dst-extended) at one arity against a family enumeration.
inline atlas_cell check_atlas_cell(const analogy_model& src, const analogy_model& dst,
                                   int src_index, int dst_index, int arity, family_id expected,
                                   int workers = 0) {
  atlas_cell cell;
  cell.src_index = src_index;
  cell.dst_index = dst_index;
  cell.expected = expected;
  cell.arity = arity;

  constraint c = analogical_constraint(src, dst);
  pol_result computed = pol(std::span<const constraint>(&c, 1), arity, workers);
  std::vector<uint64_t> got = computed.member_codes();
  std::vector<uint64_t> want;
  for (const auto& f : function_family(expected).enumerate(arity)) want.push_back(f.code());

  cell.member_count = got.size();
  cell.expected_count = want.size();
  std::set_difference(got.begin(), got.end(), want.begin(), want.end(),
                      std::back_inserter(cell.unexpected_members));
  std::set_difference(want.begin(), want.end(), got.begin(), got.end(),
                      std::back_inserter(cell.missing_members));
  cell.match = cell.unexpected_members.empty() && cell.missing_members.empty();
  return cell;
}

/*! \brief Full verdict: all 25 (src, dst) cells at every arity 1..max_arity. */
struct atlas_verdict {
  int max_arity = 0;
  std::vector<atlas_cell> cells;  // row-major by (src, dst), then by arity
  double seconds = 0.0;

  bool pass() const {
    for (const auto& c : cells)
      if (!c.match) return false;
    return true;
  }

  const atlas_cell* find(int src_index, int dst_index, int arity) const {
    for (const auto& c : cells)
      if (c.src_index == src_index && c.dst_index == dst_index && c.arity == arity) return &c;
    return nullptr;
  }
};

inline atlas_verdict verify_ap_atlas(int max_arity, int workers = 0) {
  if (max_arity < 1) throw input_error("verify_ap_atlas: max arity must be at least 1");
  if (max_arity > max_enum_arity)
    throw capability_error("verify_ap_atlas: arity exceeds the enumeration cap");

  auto start = std::chrono::steady_clock::now();
  atlas_verdict verdict;
  verdict.max_arity = max_arity;
  const auto& models = builtin_models();
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int n = 1; n <= max_arity; ++n)
        verdict.cells.push_back(check_atlas_cell(models[static_cast<size_t>(i)],
                                                 models[static_cast<size_t>(j)], i, j, n,
                                                 expected_ap_class(i, j), workers));
  verdict.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return verdict;
}

}  // namespace apol
