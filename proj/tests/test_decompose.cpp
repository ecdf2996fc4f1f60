#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <string>
#include <vector>

#include "matising/decompose.hpp"
#include "matising/errors.hpp"
#include "matising/gen.hpp"
#include "matising/graph.hpp"
#include "matising/io.hpp"
#include "matising/matroid.hpp"

using namespace matising;

namespace {

Multigraph complete_graph(std::size_t vertices, const std::string& prefix) {
  Multigraph g;
  g.vertices = vertices;
  std::size_t next = 1;
  for (std::size_t u = 0; u < vertices; ++u) {
    for (std::size_t v = u + 1; v < vertices; ++v) {
      g.edges.push_back({u, v, prefix + std::to_string(next++)});
    }
  }
  return g;
}

Multigraph petersen_graph() {
  Multigraph g;
  g.vertices = 10;
  const std::vector<std::pair<std::size_t, std::size_t>> ends{
      {0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 0},   // outer cycle
      {0, 5}, {1, 6}, {2, 7}, {3, 8}, {4, 9},   // spokes
      {5, 7}, {7, 9}, {9, 6}, {6, 8}, {8, 5}};  // inner pentagram
  std::size_t next = 1;
  for (const auto& [u, v] : ends) g.edges.push_back({u, v, "e" + std::to_string(next++)});
  return g;
}

// Count leaves of a materialized decomposition tree.
std::size_t leaf_count(const DecompNode& node) {
  if (node.is_leaf()) return 1;
  return leaf_count(*node.left) + leaf_count(*node.right);
}

}  // namespace

TEST_CASE("1-separations and connected components") {
  Rng rng(51);
  const BinaryMatroid t1 = cycle_matroid(complete_graph(3, "a"));
  const BinaryMatroid t2 = cycle_matroid(complete_graph(3, "b"));
  const BinaryMatroid direct = delta_sum(t1, t2);

  const auto sep = find_1_separation(direct);
  REQUIRE(sep.has_value());
  CHECK(sep->first.size() + sep->second.size() == direct.size());
  CHECK(direct.rank(sep->first) + direct.rank(sep->second) == direct.rank());
  CHECK(components(direct).size() == 2);

  CHECK_FALSE(find_1_separation(fixed_n3()).has_value());
  CHECK(components(fixed_n3()).size() == 1);
}

TEST_CASE("2-sum search recovers a planted separation") {
  Rng rng(52);
  for (int trial = 0; trial < 5; ++trial) {
    auto [m1, m2] = planted_2sum_pair(4 + rng() % 3, 4 + rng() % 3, rng);
    const BinaryMatroid glued = delta_sum(m1, m2);
    const auto split = find_2sum(glued);
    REQUIRE(split.has_value());
    // Not necessarily the planted separation, but a valid one: the parts
    // reconstruct the glued matroid exactly.
    CHECK(validate_2sum(split->m1, split->m2).ok);
    CHECK(same_cycle_space(delta_sum(split->m1, split->m2), glued));
  }
}

TEST_CASE("3-sum search recovers a planted separation") {
  Rng rng(53);
  auto [m1, m2] = planted_3sum_pair(7, 7, rng);
  const BinaryMatroid glued = delta_sum(m1, m2);
  const auto split = find_3sum(glued);
  REQUIRE(split.has_value());
  CHECK(relaxed_3sum(split->m1, split->m2).ok);
  CHECK(same_cycle_space(delta_sum(split->m1, split->m2), glued));
}

TEST_CASE("the 10-element base case admits no further split") {
  const BinaryMatroid r10 = fixed_r10();
  CHECK_FALSE(find_1_separation(r10).has_value());
  CHECK_FALSE(find_2sum(r10).has_value());
  CHECK_FALSE(find_3sum(r10).has_value());
}

TEST_CASE("graph realization search") {
  const BinaryMatroid k4 = cycle_matroid(complete_graph(4, "e"));
  const auto realization = is_graphic(k4);
  REQUIRE(realization.has_value());
  CHECK(realization->vertices <= k4.rank() + 1);
  CHECK(same_cycle_space(cycle_matroid(*realization), k4));

  CHECK(is_cographic(k4.dual()).has_value());

  CHECK_FALSE(is_graphic(fixed_r10()).has_value());
  CHECK_FALSE(is_cographic(fixed_r10()).has_value());
}

TEST_CASE("realization search agrees with cycle-matroid construction") {
  Rng rng(54);
  for (int trial = 0; trial < 6; ++trial) {
    const std::size_t v = 3 + rng() % 3;
    const Multigraph g = random_multigraph(v, v + rng() % 4, rng, "e");
    const BinaryMatroid m = cycle_matroid(g);
    const auto realization = is_graphic(m);
    REQUIRE(realization.has_value());
    CHECK(same_cycle_space(cycle_matroid(*realization), m));
  }
}

TEST_CASE("fixed-matroid recognition is isomorphism-invariant") {
  CHECK(is_r10(fixed_r10()));

  // Permute the representation's columns: recognition must still succeed.
  const BinaryMatroid fixed = fixed_r10();
  const Gf2Matrix& a = fixed.matrix();
  Gf2Matrix shuffled(a.rows(), a.cols());
  std::vector<Label> names;
  for (std::size_t j = 0; j < a.cols(); ++j) {
    const std::size_t src = (j * 3 + 1) % 10;
    for (std::size_t i = 0; i < a.rows(); ++i) shuffled.set(i, j, a.get(i, src));
    names.push_back("x" + std::to_string(j));
  }
  CHECK(is_r10(BinaryMatroid(shuffled, names)));

  CHECK_FALSE(is_r10(cycle_matroid(petersen_graph())));
  CHECK_FALSE(is_r10(cycle_matroid(complete_graph(4, "e"))));
}

TEST_CASE("decomposition trees of base cases are single leaves") {
  const DecompTree graphic = decompose(cycle_matroid(complete_graph(4, "e")));
  REQUIRE(graphic.root != nullptr);
  CHECK(graphic.root->is_leaf());
  CHECK(graphic.root->tag == LeafTag::Graphic);

  const DecompTree r10 = decompose(fixed_r10());
  CHECK(r10.root->is_leaf());
  CHECK(r10.root->tag == LeafTag::R10);
}

TEST_CASE("a glued graphic/cographic pair decomposes into two leaves") {
  // 2-sum of the 4-vertex complete graph with the dual of a 9-edge bipartite
  // graph: 13 elements, neither graphic nor cographic as a whole.
  Multigraph k33;
  k33.vertices = 6;
  std::size_t next = 1;
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t v = 3; v < 6; ++v) {
      k33.edges.push_back({u, v, "b" + std::to_string(next++)});
    }
  }
  const BinaryMatroid side1 = relabel(cycle_matroid(complete_graph(4, "a")),
                                      {{"a1", "p"}});
  const BinaryMatroid side2 = relabel(cycle_matroid(k33).dual(), {{"b1", "p"}});
  REQUIRE(validate_2sum(side1, side2).ok);
  const BinaryMatroid glued = delta_sum(side1, side2);

  const DecompTree tree = decompose(glued);
  REQUIRE(tree.root != nullptr);
  CHECK_FALSE(tree.root->is_leaf());
  CHECK(tree.root->k == 2);
  CHECK(leaf_count(*tree.root) == 2);

  // The printed shape re-validates against the same matroid.
  const CertShape shape = shape_of(tree);
  const CertShape reparsed = parse_certificate(print_certificate(shape));
  const DecompTree again = decompose(glued, DecompLimits{}, &reparsed);
  CHECK(leaf_count(*again.root) == 2);
}

TEST_CASE("certificates validate strictly") {
  Rng rng(55);
  auto [m1, m2] = planted_2sum_pair(5, 4, rng);
  const BinaryMatroid glued = delta_sum(m1, m2);
  const DecompTree tree = decompose(glued);
  const CertShape good = shape_of(tree);

  // Round-trip through text keeps the tree valid.
  const CertShape parsed = parse_certificate(print_certificate(good));
  CHECK_NOTHROW((void)decompose(glued, DecompLimits{}, &parsed));

  // A wrong marker name breaks validation with a node-level message.
  CertShape bad = good.clone();
  if (!bad.is_leaf()) {
    bad.shared[0] = "bogus";
    CHECK_THROWS_AS((void)decompose(glued, DecompLimits{}, &bad), DecompositionError);
  }

  // A certificate over the wrong ground set is rejected outright.
  CHECK_THROWS_AS((void)decompose(fixed_r10(), DecompLimits{}, &good),
                  DecompositionError);
}

TEST_CASE("searches respect the exhaustive limits") {
  Rng rng(56);
  const RegularComposite rc = random_regular_with_certificate(14, 18, rng);
  DecompLimits tiny;
  tiny.separation_search_max = 8;
  CHECK_THROWS_AS((void)decompose(rc.matroid, tiny), DecompositionError);
  // The same matroid passes when the certificate replaces the search.
  CHECK_NOTHROW((void)decompose(rc.matroid, tiny, &rc.certificate));
}

TEST_CASE("generated composites carry valid certificates") {
  Rng rng(57);
  for (int trial = 0; trial < 4; ++trial) {
    const RegularComposite rc = random_regular_with_certificate(14, 20, rng);
    CHECK(rc.matroid.size() >= 14);
    CHECK(rc.matroid.size() <= 20);
    CHECK(cert_ground(rc.certificate) == rc.matroid.label_set());
    const DecompTree tree = decompose(rc.matroid, DecompLimits{}, &rc.certificate);
    REQUIRE(tree.root != nullptr);
    CHECK(same_cycle_space(tree.root->matroid, rc.matroid));
  }
}
