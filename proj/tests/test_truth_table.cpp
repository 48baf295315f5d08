#include <doctest.h>

#include <vector>

#include "apol/truth_table.hpp"

using namespace apol;

namespace {

// binary/ternary tables used throughout (codes per the point encoding)
const truth_table tt_and = truth_table::from_code(2, 0x8);
const truth_table tt_or = truth_table::from_code(2, 0xE);
const truth_table tt_nand = truth_table::from_code(2, 0x7);
const truth_table tt_nor = truth_table::from_code(2, 0x1);
const truth_table tt_xor = truth_table::from_code(2, 0x6);
const truth_table tt_xnor = truth_table::from_code(2, 0x9);
const truth_table tt_imp = truth_table::from_code(2, 0xD);   // x1 -> x2
const truth_table tt_nimp = truth_table::from_code(2, 0x2);  // x1 and not x2
const truth_table tt_id = truth_table::from_code(1, 0x2);
const truth_table tt_not = truth_table::from_code(1, 0x1);
const truth_table tt_xor3 = truth_table::from_code(3, 0x96);
const truth_table tt_median = truth_table::from_code(3, 0xE8);

std::vector<truth_table> all_functions_up_to(int max_arity) {
  std::vector<truth_table> out;
  for (int n = 0; n <= max_arity; ++n)
    for (uint64_t code = 0; code < (uint64_t{1} << (uint64_t{1} << n)); ++code)
      out.push_back(truth_table::from_code(n, code));
  return out;
}

}  // namespace

TEST_CASE("evaluation follows the least-significant-first point encoding") {
  CHECK(tt_and.eval({1, 1}) == 1);
  CHECK(tt_and.eval({1, 0}) == 0);
  CHECK(tt_xor3.eval({1, 1, 1}) == 1);
  CHECK(tt_median.eval({1, 0, 1}) == 1);
  CHECK(tt_median.eval({0, 0, 1}) == 0);
  // asymmetric table: x1 and not x2
  CHECK(tt_nimp.eval({1, 0}) == 1);
  CHECK(tt_nimp.eval({0, 1}) == 0);
  CHECK_THROWS_AS(tt_and.eval({1}), input_error);
}

TEST_CASE("serialization is `arity:hex`, most significant index first") {
  CHECK(tt_and.serialize() == "2:8");
  CHECK(tt_id.serialize() == "1:2");
  CHECK(tt_not.serialize() == "1:1");
  CHECK(tt_median.serialize() == "3:e8");
  CHECK(truth_table::parse("2:8") == tt_and);
  CHECK(truth_table::parse("3:E8") == tt_median);

  // nullary tables have one entry
  CHECK(constant_function(0, true).serialize() == "0:1");
  CHECK(truth_table::parse("0:0") == constant_function(0, false));

  for (const auto& f : all_functions_up_to(3))
    CHECK(truth_table::parse(f.serialize()) == f);

  // arity 5: 32 bits -> 8 digits
  truth_table f(5);
  f.set(31, true);
  CHECK(f.serialize() == "5:80000000");
  CHECK(truth_table::parse("5:80000000") == f);

  CHECK_THROWS_AS(truth_table::parse("2"), parse_error);
  CHECK_THROWS_AS(truth_table::parse("2:"), parse_error);
  CHECK_THROWS_AS(truth_table::parse("2:88"), parse_error);
  CHECK_THROWS_AS(truth_table::parse("2:g"), parse_error);
  CHECK_THROWS_AS(truth_table::parse("1:4"), parse_error);  // bit beyond the table
  CHECK_THROWS_AS(truth_table::parse("99:0"), parse_error);
}

TEST_CASE("moebius transform round-trips exhaustively up to arity 3") {
  for (const auto& f : all_functions_up_to(3)) CHECK(anf_inverse(anf(f)) == f);
}

TEST_CASE("anf of the standard connectives") {
  // and = x1 x2
  CHECK(anf(tt_and).coefficients[0] == 0x8);

  // xnor: brute-force match of 1 + x1 + x2 over all 4 points, then freeze
  anf_polynomial expected;
  expected.arity = 2;
  expected.coefficients = {0x7};
  for (uint64_t x = 0; x < 4; ++x) CHECK(expected.eval(x) == tt_xnor.get(x));
  CHECK(anf(tt_xnor) == expected);

  // median = x1 x2 + x1 x3 + x2 x3
  CHECK(anf(tt_median).coefficients[0] == 0x68);

  // anf evaluation agrees with the function everywhere (arity <= 3)
  for (const auto& f : all_functions_up_to(3)) {
    anf_polynomial p = anf(f);
    for (uint64_t x = 0; x < f.size(); ++x) CHECK(p.eval(x) == f.get(x));
  }
}

TEST_CASE("degree and affineness") {
  CHECK(degree(tt_xor3) == 1);
  CHECK(is_affine(tt_xor3));
  CHECK(degree(tt_median) == 2);
  CHECK_FALSE(is_affine(tt_median));
  CHECK(degree(constant_function(2, true)) == 0);
  CHECK(is_affine(constant_function(2, true)));

  for (int n = 0; n <= 3; ++n) {
    uint64_t affine_count = 0;
    for (uint64_t code = 0; code < (uint64_t{1} << (uint64_t{1} << n)); ++code) {
      truth_table f = truth_table::from_code(n, code);
      bool fast = detail::is_affine_code(code, n);
      CHECK(fast == is_affine(f));
      affine_count += fast;
    }
    CHECK(affine_count == (n == 0 ? 2 : uint64_t{1} << (n + 1)));
  }
}

TEST_CASE("apply_minor on the classical identities") {
  minor_map to_unary;
  to_unary.source_arity = 2;
  to_unary.target_arity = 1;

  to_unary.assignments = {minor_map::assignment::arg(0), minor_map::assignment::zero()};
  CHECK(apply_minor(tt_xor, to_unary) == tt_id);   // x + 0 = x
  CHECK(apply_minor(tt_imp, to_unary) == tt_not);  // x -> 0 = not x

  to_unary.assignments = {minor_map::assignment::arg(0), minor_map::assignment::arg(0)};
  CHECK(apply_minor(tt_xor, to_unary) == constant_function(1, false));  // x + x = 0

  to_unary.assignments = {minor_map::assignment::arg(0), minor_map::assignment::arg(1)};
  CHECK_THROWS_AS(apply_minor(tt_xor, to_unary), input_error);  // no second target argument

  minor_map wrong_source = to_unary;
  wrong_source.source_arity = 3;
  CHECK_THROWS_AS(apply_minor(tt_xor, wrong_source), input_error);
}

TEST_CASE("i_minors mixes argument reuse and constants") {
  // nor: one constant-0 substitution yields negation
  minor_map drop_second;
  drop_second.source_arity = 2;
  drop_second.target_arity = 1;
  drop_second.assignments = {minor_map::assignment::arg(0), minor_map::assignment::zero()};
  CHECK(apply_minor(tt_nor, drop_second) == tt_not);

  auto nor_binaries = i_minors(tt_nor, 2);
  CHECK(std::find(nor_binaries.begin(), nor_binaries.end(), tt_nor) != nor_binaries.end());
  CHECK(std::find(nor_binaries.begin(), nor_binaries.end(),
                  outer_negation(projection(2, 1))) != nor_binaries.end());

  // and to arity 1: {0, 1, id}
  auto and_unaries = i_minors(tt_and, 1);
  CHECK(and_unaries == std::vector<truth_table>{constant_function(1, false), tt_id,
                                                constant_function(1, true)});

  // substituting into a projection only ever yields projections and constants
  for (const auto& g : i_minors(projection(2, 1), 2))
    CHECK((is_projection(g) || is_constant(g)));
}

TEST_CASE("minor relation is reflexive and transitive on arity <= 2") {
  auto all = all_functions_up_to(2);
  for (const auto& f : all) CHECK(is_minor_of(f, f));
  for (const auto& f : all)
    for (const auto& g : all) {
      if (!is_minor_of(f, g)) continue;
      for (const auto& h : all) {
        if (is_minor_of(g, h)) CHECK(is_minor_of(f, h));
      }
    }
}

TEST_CASE("negations and duality") {
  CHECK(inner_negation(tt_id) == tt_not);
  CHECK(outer_negation(tt_and) == tt_nand);

  // independent pointwise oracle for the dual
  auto dual_oracle = [](const truth_table& f) {
    truth_table g(f.arity());
    uint64_t mask = f.size() - 1;
    for (uint64_t x = 0; x < f.size(); ++x) g.set(x, !f.get(~x & mask));
    return g;
  };
  CHECK(dual_oracle(tt_and) == tt_or);
  CHECK(dual(tt_and) == tt_or);
  CHECK(dual_oracle(tt_median) == tt_median);
  CHECK(dual(tt_median) == tt_median);

  for (const auto& f : all_functions_up_to(3)) {
    CHECK(dual(f) == dual_oracle(f));
    CHECK(dual(dual(f)) == f);
  }
}

TEST_CASE("dual commutes with pure variable maps (arity <= 3)") {
  for (const auto& f : all_functions_up_to(3)) {
    int m = f.arity();
    for (int n = 0; n <= 3; ++n) {
      if (m > 0 && n == 0) continue;
      uint64_t maps = 1;
      for (int s = 0; s < m; ++s) maps *= static_cast<uint64_t>(n);
      minor_map map;
      map.source_arity = m;
      map.target_arity = n;
      map.assignments.assign(static_cast<size_t>(m), minor_map::assignment::arg(0));
      for (uint64_t key = 0; key < maps; ++key) {
        uint64_t k = key;
        for (int s = 0; s < m; ++s) {
          map.assignments[static_cast<size_t>(s)] =
              minor_map::assignment::arg(static_cast<int>(k % n));
          k /= n;
        }
        CHECK(dual(apply_minor(f, map)) == apply_minor(dual(f), map));
      }
    }
  }
}

TEST_CASE("family counts match the closed forms at arities 1..4") {
  for (int n = 1; n <= 4; ++n) {
    CHECK(function_family(family_id::C).enumerate(n).size() == 2);
    CHECK(function_family(family_id::N).enumerate(n).size() == static_cast<size_t>(n) + 2);
    CHECK(function_family(family_id::I).enumerate(n).size() == static_cast<size_t>(n) + 2);
    CHECK(function_family(family_id::Omega1).enumerate(n).size() ==
          2 * static_cast<size_t>(n) + 2);
    CHECK(function_family(family_id::L).enumerate(n).size() == (size_t{1} << (n + 1)));
    CHECK(function_family(family_id::J).enumerate(n).size() == static_cast<size_t>(n));
  }
}

TEST_CASE("family membership agrees with enumeration up to arity 3") {
  for (family_id id : {family_id::C, family_id::N, family_id::I, family_id::Omega1,
                       family_id::L, family_id::J, family_id::All}) {
    function_family family(id);
    for (int n = 0; n <= 3; ++n) {
      auto members = family.enumerate(n);
      CHECK(std::is_sorted(members.begin(), members.end(),
                           [](const auto& a, const auto& b) { return a < b; }));
      for (const auto& f : all_functions_up_to(3)) {
        if (f.arity() != n) continue;
        bool enumerated = std::find(members.begin(), members.end(), f) != members.end();
        CHECK(enumerated == family.contains(f));
      }
    }
  }
}

TEST_CASE("classification picks the least containing family") {
  CHECK(classify_function(constant_function(3, false)) == function_class::C);
  CHECK(classify_function(outer_negation(projection(3, 1))) == function_class::N);
  CHECK(classify_function(projection(4, 2)) == function_class::I);
  CHECK(classify_function(tt_xor) == function_class::L);
  CHECK(classify_function(tt_xor3) == function_class::L);
  CHECK(classify_function(tt_and) == function_class::Other);
  CHECK(classify_function(tt_median) == function_class::Other);
}
