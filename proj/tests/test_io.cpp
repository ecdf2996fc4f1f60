#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "matising/errors.hpp"
#include "matising/gen.hpp"
#include "matising/io.hpp"
#include "matising/matroid.hpp"
#include "matising/tutte.hpp"

using namespace matising;

TEST_CASE("instances survive a print/parse round trip") {
  Rng rng(3);
  for (int trial = 0; trial < 12; ++trial) {
    const BinaryMatroid m = random_binary_matroid(2 + rng() % 9, 2 + rng() % 5, rng);
    const WeightedMatroid w =
        make_weighted(m, random_rationals(m.size(), rng, /*allow_zero=*/true));
    const WeightedMatroid back = parse_instance(print_instance(w));
    CHECK(back.matroid.labels() == w.matroid.labels());
    CHECK(back.matroid.matrix() == w.matroid.matrix());
    CHECK(back.gamma == w.gamma);
  }
}

TEST_CASE("weights parse as exact rationals or decimals") {
  const std::string text =
      "3 2\n"
      "110\n"
      "011\n"
      "WEIGHTS 3/2 0.25 2\n";
  const WeightedMatroid w = parse_instance(text);
  CHECK(w.gamma[0] == Rat(3, 2));
  CHECK(w.gamma[1] == Rat(1, 4));
  CHECK(w.gamma[2] == Rat(2));
  // Labels default to e1..em when no ELEMENTS line is given.
  CHECK(w.matroid.labels() == std::vector<Label>{"e1", "e2", "e3"});
}

TEST_CASE("comments and blank lines are ignored") {
  const std::string text =
      "# a small 2-circuit\n"
      "\n"
      "2 1\n"
      "# the single representation row:\n"
      "11\n"
      "\n"
      "WEIGHTS 1 1\n"
      "ELEMENTS p e\n"
      "# trailing remark\n";
  const WeightedMatroid w = parse_instance(text);
  CHECK(w.matroid.size() == 2);
  CHECK(w.matroid.labels() == std::vector<Label>{"p", "e"});
  CHECK(tutte_exact(w) == Rat(5, 2));
}

TEST_CASE("malformed instances are rejected with a parse error") {
  CHECK_THROWS_AS(parse_instance(""), ParseError);
  CHECK_THROWS_AS(parse_instance("# only a comment\n"), ParseError);
  // Header damage.
  CHECK_THROWS_AS(parse_instance("2\n11\nWEIGHTS 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("two 1\n11\nWEIGHTS 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("0 1\n\nWEIGHTS\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 0\nWEIGHTS 1 1\n"), ParseError);
  // Representation rows must match the header exactly.
  CHECK_THROWS_AS(parse_instance("2 2\n11\nWEIGHTS 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 1\n111\nWEIGHTS 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 1\n1x\nWEIGHTS 1 1\n"), ParseError);
  // Weight line problems.
  CHECK_THROWS_AS(parse_instance("2 1\n11\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 1\n11\nWEIGHTS 1\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 1\n11\nWEIGHTS 1 -2\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 1\n11\nWEIGHTS 1 1/2.5\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 1\n11\nWEIGHTS 1 1\nWEIGHTS 1 1\n"), ParseError);
  // Label line problems.
  CHECK_THROWS_AS(parse_instance("2 1\n11\nWEIGHTS 1 1\nELEMENTS a\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 1\n11\nWEIGHTS 1 1\nELEMENTS a a\n"), ParseError);
  CHECK_THROWS_AS(parse_instance("2 1\n11\nWEIGHTS 1 1\nSTUFF a b\n"), ParseError);
}

TEST_CASE("certificates survive a print/parse round trip") {
  Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    const RegularComposite built = random_regular_with_certificate(12, 20, rng);
    const std::string text = print_certificate(built.certificate);
    const CertShape back = parse_certificate(text);
    CHECK(print_certificate(back) == text);
  }
}

TEST_CASE("hand-written certificates parse with flexible whitespace") {
  const CertShape shape = parse_certificate(
      " sum( 2 , [ p ] ,\n"
      "   leaf(graphic,[a1,a2,a3,p]),\n"
      "   leaf( cographic , [ b1 , b2 , p ] ) )\n");
  CHECK(shape.k == 2);
  CHECK(shape.shared == std::vector<Label>{"p"});
  REQUIRE(shape.left != nullptr);
  CHECK(shape.left->is_leaf());
  CHECK(*shape.left->tag == LeafTag::Graphic);
  CHECK(shape.left->elements.size() == 4);
  CHECK(*shape.right->tag == LeafTag::Cographic);
}

TEST_CASE("malformed certificates are rejected with a parse error") {
  CHECK_THROWS_AS(parse_certificate(""), ParseError);
  CHECK_THROWS_AS(parse_certificate("tree(1, [], x, y)"), ParseError);
  CHECK_THROWS_AS(parse_certificate("leaf(weird, [a])"), ParseError);
  CHECK_THROWS_AS(parse_certificate("leaf(graphic, [a)"), ParseError);
  CHECK_THROWS_AS(parse_certificate("sum(4, [p], leaf(small, [a]), leaf(small, [b]))"),
                  ParseError);
  CHECK_THROWS_AS(parse_certificate("sum(2, [p], leaf(small, [a]))"), ParseError);
  CHECK_THROWS_AS(parse_certificate("leaf(graphic, [a]) trailing"), ParseError);
}
