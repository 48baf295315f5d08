#include <doctest.h>

#include <array>
#include <set>
#include <vector>

#include "apol/analogy.hpp"
#include "apol/detail/bits.hpp"

using namespace apol;

namespace {

using quad = std::array<int, 4>;

std::set<quad> tuple_set(const relation& r) {
  std::set<quad> out;
  for (uint16_t t : r.tuples())
    out.insert({t & 1, (t >> 1) & 1, (t >> 2) & 1, (t >> 3) & 1});
  return out;
}

// independent postulate oracle: literal definitions over explicit tuple sets
struct oracle_verdicts {
  bool reflexivity, symmetry, central, internal, extreme, strong_ref, strong_inner, uniqueness;
};

oracle_verdicts postulate_oracle(const relation& r) {
  std::set<quad> s = tuple_set(r);
  oracle_verdicts v{true, true, true, true, true, true, true, true};
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      if (!s.count({a, a, b, b})) v.reflexivity = false;
  for (const quad& q : s) {
    auto [a, b, c, d] = q;
    if (!s.count({c, d, a, b})) v.symmetry = false;
    if (!s.count({a, c, b, d})) v.central = false;
    if (!s.count({b, a, d, c})) v.internal = false;
    if (!s.count({d, b, c, a})) v.extreme = false;
    if (a == c && d != b) v.strong_ref = false;
    if (a == b && d != c) v.strong_inner = false;
  }
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        if (s.count({a, b, c, 0}) && s.count({a, b, c, 1})) v.uniqueness = false;
  return v;
}

}  // namespace

TEST_CASE("builtin tuple sets are locked golden data") {
  const auto& models = builtin_models();
  REQUIRE(models.size() == 5);
  CHECK(models[0].rel.size() == 12);
  CHECK(models[1].rel.size() == 8);
  CHECK(models[2].rel.size() == 8);
  CHECK(models[3].rel.size() == 6);
  CHECK(models[4].rel.size() == 8);

  // bitmask checksums of the five models
  const uint16_t golden[5] = {0xF66F, 0x942F, 0xF429, 0x9429, 0x9669};
  for (int i = 0; i < 5; ++i) {
    CHECK(models[static_cast<size_t>(i)].rel.mask4() == golden[i]);
    CHECK(models[static_cast<size_t>(i)].name == "R" + std::to_string(i + 1));
  }

  // the minimal model holds exactly the x:x::y:y and x:y::x:y patterns
  CHECK(models[3].rel.tuples() == std::vector<uint16_t>{0, 3, 5, 10, 12, 15});

  // the parity model is { (a,b,c,d) | a+b = c+d over GF(2) }
  for (uint16_t t = 0; t < 16; ++t) {
    bool parity_even = (std::popcount(static_cast<unsigned>(t)) & 1) == 0;
    CHECK(models[4].rel.contains(t) == parity_even);
  }

  CHECK_THROWS_AS(builtin_model("R9"), input_error);
  CHECK_THROWS_AS(analogy_model("bad", relation(3)), input_error);
}

TEST_CASE("negating a builtin yields a builtin") {
  const auto& models = builtin_models();
  CHECK(negate(models[0].rel) == models[0].rel);
  CHECK(negate(models[1].rel) == models[2].rel);
  CHECK(negate(models[2].rel) == models[1].rel);
  CHECK(negate(models[3].rel) == models[3].rel);
  CHECK(negate(models[4].rel) == models[4].rel);
}

TEST_CASE("postulate audit agrees with an independent oracle") {
  for (const auto& model : builtin_models()) {
    postulate_report report = check_postulates(model);
    oracle_verdicts expected = postulate_oracle(model.rel);
    CHECK(report[postulate::reflexivity].holds == expected.reflexivity);
    CHECK(report[postulate::symmetry].holds == expected.symmetry);
    CHECK(report[postulate::central_permutation].holds == expected.central);
    CHECK(report[postulate::internal_reversal].holds == expected.internal);
    CHECK(report[postulate::extreme_permutation].holds == expected.extreme);
    CHECK(report[postulate::strong_reflexivity].holds == expected.strong_ref);
    CHECK(report[postulate::strong_inner_reflexivity].holds == expected.strong_inner);
    CHECK(report[postulate::uniqueness].holds == expected.uniqueness);
  }
}

TEST_CASE("postulate verdicts are locked as regression goldens") {
  const auto& models = builtin_models();

  // every builtin: reflexivity, internal reversal and strong inner reflexivity hold
  for (const auto& model : models) {
    postulate_report report = check_postulates(model);
    CHECK(report[postulate::reflexivity].holds);
    CHECK(report[postulate::internal_reversal].holds);
    CHECK(report[postulate::strong_inner_reflexivity].holds);
  }

  // R4 and R5 satisfy all eight postulates
  CHECK(check_postulates(models[3]).all_hold());
  CHECK(check_postulates(models[4]).all_hold());

  using bits = std::vector<uint8_t>;
  postulate_report r1 = check_postulates(models[0]);
  CHECK_FALSE(r1[postulate::symmetry].holds);
  CHECK(r1[postulate::symmetry].witness == bits{1, 0, 0, 0});
  CHECK_FALSE(r1[postulate::central_permutation].holds);
  CHECK(r1[postulate::central_permutation].witness == bits{0, 1, 0, 0});
  CHECK_FALSE(r1[postulate::extreme_permutation].holds);
  CHECK(r1[postulate::extreme_permutation].witness == bits{1, 0, 0, 0});
  CHECK_FALSE(r1[postulate::strong_reflexivity].holds);
  CHECK(r1[postulate::strong_reflexivity].witness == bits{0, 1, 0, 0});
  CHECK_FALSE(r1[postulate::uniqueness].holds);
  CHECK(r1[postulate::uniqueness].witness == bits{1, 0, 0});  // prefix (1,0,0)

  postulate_report r2 = check_postulates(models[1]);
  CHECK_FALSE(r2[postulate::symmetry].holds);
  CHECK(r2[postulate::symmetry].witness == bits{1, 0, 0, 0});
  CHECK_FALSE(r2[postulate::extreme_permutation].holds);
  CHECK(r2[postulate::extreme_permutation].witness == bits{1, 0, 0, 0});
  CHECK_FALSE(r2[postulate::uniqueness].holds);
  CHECK(r2[postulate::uniqueness].witness == bits{0, 1, 0});

  postulate_report r3 = check_postulates(models[2]);
  CHECK_FALSE(r3[postulate::symmetry].holds);
  CHECK(r3[postulate::symmetry].witness == bits{1, 0, 1, 1});
  CHECK_FALSE(r3[postulate::extreme_permutation].holds);
  CHECK(r3[postulate::extreme_permutation].witness == bits{0, 1, 1, 1});
  CHECK_FALSE(r3[postulate::uniqueness].holds);
  CHECK(r3[postulate::uniqueness].witness == bits{1, 0, 1});
}

TEST_CASE("postulate witnesses revalidate as violations") {
  auto code_of = [](const std::vector<uint8_t>& w) {
    uint16_t t = 0;
    for (size_t i = 0; i < w.size(); ++i) t |= static_cast<uint16_t>(w[i] << i);
    return t;
  };
  for (const auto& model : builtin_models()) {
    const relation& m = model.rel;
    postulate_report report = check_postulates(model);
    for (int p = 0; p < postulate_count; ++p) {
      const auto& check = report.checks[static_cast<size_t>(p)];
      if (check.holds) {
        CHECK(check.witness.empty());
        continue;
      }
      uint16_t t = code_of(check.witness);
      int a = t & 1, b = (t >> 1) & 1, c = (t >> 2) & 1, d = (t >> 3) & 1;
      switch (static_cast<postulate>(p)) {
        case postulate::reflexivity:
          CHECK(a == b);
          CHECK(c == d);
          CHECK_FALSE(m.contains(t));
          break;
        case postulate::symmetry:
          CHECK(m.contains(t));
          CHECK_FALSE(m.contains(static_cast<uint16_t>(c | (d << 1) | (a << 2) | (b << 3))));
          break;
        case postulate::central_permutation:
          CHECK(m.contains(t));
          CHECK_FALSE(m.contains(static_cast<uint16_t>(a | (c << 1) | (b << 2) | (d << 3))));
          break;
        case postulate::internal_reversal:
          CHECK(m.contains(t));
          CHECK_FALSE(m.contains(static_cast<uint16_t>(b | (a << 1) | (d << 2) | (c << 3))));
          break;
        case postulate::extreme_permutation:
          CHECK(m.contains(t));
          CHECK_FALSE(m.contains(static_cast<uint16_t>(d | (b << 1) | (c << 2) | (a << 3))));
          break;
        case postulate::strong_reflexivity:
          CHECK(m.contains(t));
          CHECK(a == c);
          CHECK(d != b);
          break;
        case postulate::strong_inner_reflexivity:
          CHECK(m.contains(t));
          CHECK(a == b);
          CHECK(d != c);
          break;
        case postulate::uniqueness:
          REQUIRE(check.witness.size() == 3);
          CHECK(m.contains(t));
          CHECK(m.contains(static_cast<uint16_t>(t | 8)));
          break;
      }
    }
  }
}

TEST_CASE("vector equation solving") {
  const auto& r4 = builtin_model("R4");
  const auto& r5 = builtin_model("R5");

  std::vector<uint8_t> a = {0, 1}, b = {0, 1}, c = {1, 0};
  auto sols = solve_vector(r4, a, b, c);
  auto mat = sols.materialize();
  REQUIRE(mat.has_value());
  REQUIRE(mat->size() == 1);
  CHECK((*mat)[0] == std::vector<uint8_t>{1, 0});

  // any component hitting the unsolvable (0,1,1) prefix empties the set
  std::vector<uint8_t> ua = {0, 0}, ub = {1, 0}, uc = {1, 1};
  auto unsat = solve_vector(r4, ua, ub, uc);
  CHECK(unsat.empty());
  CHECK(unsat.count() == 0);
  CHECK(unsat.materialize()->empty());

  // in the parity model, a = b forces d = c componentwise
  detail::splitmix64 gen(9);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<uint8_t> va(5), vc(5);
    for (auto& bit : va) bit = static_cast<uint8_t>(gen.next_below(2));
    for (auto& bit : vc) bit = static_cast<uint8_t>(gen.next_below(2));
    auto s = solve_vector(r5, va, va, vc);
    REQUIRE(s.count() == 1);
    CHECK((*s.materialize())[0] == vc);
  }

  CHECK_THROWS_AS(solve_vector(r4, a, b, std::vector<uint8_t>{1}), input_error);
}

TEST_CASE("solution-set cardinality is the product of the componentwise sizes") {
  const auto& r1 = builtin_model("R1");
  detail::splitmix64 gen(123);
  for (int trial = 0; trial < 30; ++trial) {
    size_t width = 1 + gen.next_below(6);
    std::vector<uint8_t> a(width), b(width), c(width);
    for (size_t i = 0; i < width; ++i) {
      a[i] = static_cast<uint8_t>(gen.next_below(2));
      b[i] = static_cast<uint8_t>(gen.next_below(2));
      c[i] = static_cast<uint8_t>(gen.next_below(2));
    }
    auto s = solve_vector(r1, a, b, c);
    uint64_t product = 1;
    for (size_t i = 0; i < width; ++i)
      product *= solutions(r1.rel, a[i], b[i], c[i]).size();
    CHECK(s.count() == product);
    auto mat = s.materialize();
    REQUIRE(mat.has_value());
    CHECK(mat->size() == product);
  }

  // the cap keeps huge products unmaterialized but still countable
  std::vector<uint8_t> a(3, 1), b(3, 0), c(3, 0);  // three two-solution components in R1
  auto s = solve_vector(r1, a, b, c);
  CHECK(s.count() == 8);
  CHECK_FALSE(s.materialize(4).has_value());
}

TEST_CASE("analogical constraints pair the source with the extended target") {
  const auto& models = builtin_models();

  constraint c55 = analogical_constraint(models[4], models[4]);
  CHECK(c55.antecedent == models[4].rel);
  CHECK(c55.consequent == models[4].rel);

  constraint c44 = analogical_constraint(models[3], models[3]);
  CHECK(c44.antecedent == models[3].rel);
  CHECK(c44.consequent.mask4() == 0xD66B);
  CHECK(c44.consequent.size() == 10);

  constraint c11 = analogical_constraint(models[0], models[0]);
  CHECK(c11.consequent == models[0].rel);
}
