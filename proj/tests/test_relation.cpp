#include <doctest.h>

#include <array>

#include "apol/analogy.hpp"
#include "apol/relation.hpp"

using namespace apol;

TEST_CASE("parse_relation reads columns as tuples") {
  // the six-column minimal proportion matrix
  relation r4 = parse_relation(
      "0 1 1 0 0 1\n"
      "0 1 0 1 0 1\n"
      "0 0 1 0 1 1\n"
      "0 0 0 1 1 1\n");
  CHECK(r4.arity() == 4);
  CHECK(r4.size() == 6);
  CHECK(r4.tuples() == std::vector<uint16_t>{0, 3, 5, 10, 12, 15});

  relation single = parse_relation("0\n0\n0\n0\n");
  CHECK(single.size() == 1);
  CHECK(single.contains(0));

  CHECK_THROWS_AS(parse_relation("0 1\n0\n"), parse_error);    // ragged
  CHECK_THROWS_AS(parse_relation("0 2\n1 1\n"), parse_error);  // non-bit
  CHECK_THROWS_AS(parse_relation(""), parse_error);
}

TEST_CASE("format then parse is the identity on the builtin models") {
  for (const auto& model : builtin_models()) {
    relation round = parse_relation(format_relation(model.rel));
    CHECK(round == model.rel);
  }
  // canonical output ordering: ascending tuple codes
  relation r = relation::from_tuples(2, {2, 1});
  CHECK(format_relation(r) == "1 0\n0 1\n");
}

TEST_CASE("negation fixtures") {
  const auto& models = builtin_models();
  CHECK(negate(models[1].rel) == models[2].rel);  // R2bar = R3
  CHECK(negate(models[2].rel) == models[1].rel);
  CHECK(negate(models[0].rel) == models[0].rel);  // R1 is self-complementary
  relation zeros = relation::from_tuples(4, {0});
  CHECK(negate(zeros) == relation::from_tuples(4, {15}));
}

TEST_CASE("coordinate permutations") {
  const relation& r5 = builtin_model("R5").rel;

  std::array<int, 4> identity = {0, 1, 2, 3};
  CHECK(permute_coordinates(r5, identity) == r5);

  std::array<int, 4> swap_pairs = {2, 3, 0, 1};  // 1<->3, 2<->4
  CHECK(permute_coordinates(r5, swap_pairs) == r5);

  std::array<int, 4> central = {0, 2, 1, 3};  // 2<->3
  CHECK(permute_coordinates(r5, central) == r5);

  // R2 is not symmetric under the pair swap
  const relation& r2 = builtin_model("R2").rel;
  CHECK(permute_coordinates(r2, swap_pairs) != r2);

  std::array<int, 4> not_a_permutation = {0, 0, 1, 2};
  CHECK_THROWS_AS(permute_coordinates(r5, not_a_permutation), input_error);
  std::array<int, 2> wrong_length = {0, 1};
  CHECK_THROWS_AS(permute_coordinates(r5, wrong_length), input_error);
}

TEST_CASE("consequent extension fixtures") {
  const auto& models = builtin_models();

  CHECK(extend_consequent(models[4].rel) == models[4].rel);  // R5 already covers every prefix

  relation r2ext = extend_consequent(models[1].rel);
  relation expected = models[1].rel;
  expected.insert(0b0110);  // (0,1,1,0)
  expected.insert(0b1110);  // (0,1,1,1)
  CHECK(r2ext == expected);

  relation empty(4);
  CHECK(extend_consequent(empty).size() == 16);

  relation ternary(3);
  CHECK_THROWS_AS(extend_consequent(ternary), input_error);
}

TEST_CASE("extension properties over all 65536 4-ary relations") {
  for (uint32_t mask = 0; mask < (uint32_t{1} << 16); ++mask) {
    relation s = relation::from_mask4(static_cast<uint16_t>(mask));
    relation ext = extend_consequent(s);
    CHECK(extend_consequent(ext) == ext);  // idempotent
    for (uint16_t prefix = 0; prefix < 8; ++prefix)
      CHECK(solvable(ext, prefix & 1, (prefix >> 1) & 1, (prefix >> 2) & 1));
    CHECK(negate(negate(s)) == s);
    CHECK(extend_consequent(negate(s)) == negate(ext));
  }
}

TEST_CASE("solutions and solvability") {
  const auto& models = builtin_models();
  CHECK(solutions(models[1].rel, 0, 1, 1).empty());  // the R2 gap
  CHECK(solutions(models[3].rel, 0, 0, 1) == std::vector<uint8_t>{1});
  relation full(4);
  for (uint16_t t = 0; t < 16; ++t) full.insert(t);
  CHECK(solutions(full, 1, 0, 1) == std::vector<uint8_t>{0, 1});
  CHECK(solvable(models[3].rel, 0, 0, 0));
  CHECK_FALSE(solvable(models[3].rel, 1, 0, 0));
}

TEST_CASE("registry lookups and file format") {
  relation_registry reg = default_registry();
  CHECK(reg.names() == std::vector<std::string>{"R1", "R2", "R3", "R4", "R5"});
  CHECK(reg.at("R4").size() == 6);
  CHECK(reg.find("nope") == nullptr);
  CHECK_THROWS_AS(reg.at("nope"), input_error);

  reg.load_text(
      "# user relations\n"
      "pair = 0 1 ; 0 1\n"
      "xor3 = 0 1 1 0 ; 0 1 0 1 ; 0 0 1 1\n");
  CHECK(reg.at("pair").arity() == 2);
  CHECK(reg.at("pair").tuples() == std::vector<uint16_t>{0, 3});
  CHECK(reg.at("xor3").size() == 4);

  CHECK_THROWS_AS(reg.load_text("R4 = 0 ; 0 ; 0 ; 0\n"), input_error);  // duplicate
  CHECK_THROWS_AS(reg.load_text("broken\n"), parse_error);
  CHECK_THROWS_AS(reg.load_text("bad = 0 2 ; 0 1\n"), parse_error);
}
