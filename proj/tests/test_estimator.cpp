#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "matising/errors.hpp"
#include "matising/estimator.hpp"
#include "matising/gen.hpp"
#include "matising/graph.hpp"
#include "matising/matroid.hpp"
#include "matising/tutte.hpp"

using namespace matising;

namespace {

Multigraph complete4(const std::string& prefix) {
  Multigraph g;
  g.vertices = 4;
  std::size_t k = 0;
  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) {
      g.edges.push_back({a, b, prefix + std::to_string(++k)});
    }
  }
  return g;
}

// Exact mirror of a float-weighted instance (doubles are exact rationals).
WeightedMatroid exact_of(const WeightedMatroidF& w) {
  std::vector<Rat> gamma;
  gamma.reserve(w.gamma.size());
  for (const double g : w.gamma) gamma.emplace_back(g);
  return make_weighted(w.matroid, std::move(gamma));
}

WeightedMatroidF weighted_f(BinaryMatroid m, Rng& rng) {
  const std::vector<Rat> g = random_dyadics(m.size(), rng);
  std::vector<double> gf;
  gf.reserve(g.size());
  for (const Rat& x : g) gf.push_back(to_double(x));
  return make_weighted_f(std::move(m), std::move(gf));
}

double true_value(const WeightedMatroidF& w) { return to_double(tutte_exact(exact_of(w))); }

}  // namespace

TEST_CASE("base-case leaves reproduce the exact sweep") {
  Rng rng(11);

  // Graphic: a wheel-ish multigraph, evaluated directly.
  const WeightedMatroidF graphic = weighted_f(cycle_matroid(complete4("e")), rng);
  EstimateRequest req{graphic, 0.5};
  const EstimateResult res = estimate(req);
  CHECK(res.value == doctest::Approx(true_value(graphic)).epsilon(1e-12));
  CHECK(res.eps == req.eps);
  CHECK(res.stats.leaf_calls == 1);
  CHECK(res.stats.graphic_leaves == 1);
  CHECK(res.stats.max_depth == 0);
  CHECK(res.stats.max_leaf_size == 6);

  // Cographic: the dual of K3,3 goes through the duality formula.
  Multigraph k33;
  k33.vertices = 6;
  std::size_t n = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 3; b < 6; ++b) k33.edges.push_back({a, b, "b" + std::to_string(++n)});
  }
  const WeightedMatroidF cographic = weighted_f(cycle_matroid(k33).dual(), rng);
  EstimateRequest creq{cographic, 0.5};
  const EstimateResult cres = estimate(creq);
  CHECK(cres.value == doctest::Approx(true_value(cographic)).epsilon(1e-9));
  CHECK(cres.stats.cographic_leaves == 1);

  // R10 is its own base case.
  const WeightedMatroidF r10 = weighted_f(fixed_r10(), rng);
  EstimateRequest rreq{r10, 0.5};
  const EstimateResult rres = estimate(rreq);
  CHECK(rres.value == doctest::Approx(true_value(r10)).epsilon(1e-9));
  CHECK(rres.stats.r10_leaves == 1);
}

TEST_CASE("the empty matroid estimates to exactly one") {
  EstimateRequest req{WeightedMatroidF{}, 0.5};
  CHECK(estimate(req).value == 1.0);
}

TEST_CASE("exact-oracle estimates of glued instances match the sweep closely") {
  Rng rng(23);

  for (int trial = 0; trial < 4; ++trial) {
    const auto [m1, m2] = planted_2sum_pair(5 + trial % 3, 4 + trial % 2, rng);
    const WeightedMatroidF w = weighted_f(delta_sum(m1, m2), rng);
    EstimateRequest req{w, 0.1};
    const EstimateResult res = estimate(req);
    CHECK(std::abs(res.value / true_value(w) - 1.0) <= 1e-6);
  }

  const auto [t1, t2] = planted_3sum_pair(7, 7, rng);
  const WeightedMatroidF w3 = weighted_f(delta_sum(t1, t2), rng);
  EstimateRequest req3{w3, 0.1};
  const EstimateResult res3 = estimate(req3);
  CHECK(std::abs(res3.value / true_value(w3) - 1.0) <= 1e-6);
}

TEST_CASE("noisy estimates stay inside the promised sandwich") {
  Rng rng(31);
  const auto [m1, m2] = planted_2sum_pair(6, 5, rng);
  const WeightedMatroidF w = weighted_f(delta_sum(m1, m2), rng);
  const double want = true_value(w);

  for (const double eps : {0.1, 0.5, 1.0}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      EstimateRequest req{w, eps};
      req.oracle = OracleMode::Noisy;
      req.seed = seed;
      const EstimateResult res = estimate(req);
      CHECK(std::abs(std::log(res.value / want)) <= eps);
    }
  }
}

TEST_CASE("audit rows conserve the accuracy budget at every sum node") {
  Rng rng(47);
  const RegularComposite built = random_regular_with_certificate(16, 22, rng);
  WeightedMatroidF w = weighted_f(built.matroid, rng);

  EstimateRequest req{w, 0.3};
  req.certificate = &built.certificate;
  const EstimateResult res = estimate(req);

  REQUIRE(!res.stats.audit.empty());
  for (const AuditRow& row : res.stats.audit) {
    CHECK((row.k == 1 || row.k == 2 || row.k == 3));
    CHECK(row.eps > 0.0);
    CHECK(row.eps_replace > 0.0);
    CHECK(row.eps_recurse > 0.0);
    const double spend =
        row.k == 1 ? row.eps_replace + row.eps_recurse : 2 * row.eps_replace + row.eps_recurse;
    CHECK(spend == doctest::Approx(row.eps).epsilon(1e-9));
    if (row.k == 1) {
      CHECK(row.eps_minor == 0.0);
    } else {
      CHECK(row.eps_minor > 0.0);
      CHECK(row.m2 < row.m);
    }
  }
  const std::size_t sums =
      res.stats.sum_nodes_1 + res.stats.sum_nodes_2 + res.stats.sum_nodes_3;
  CHECK(sums == res.stats.audit.size());
}

TEST_CASE("estimates are deterministic per mode and seed") {
  Rng rng(59);
  const auto [m1, m2] = planted_2sum_pair(5, 5, rng);
  const WeightedMatroidF w = weighted_f(delta_sum(m1, m2), rng);

  EstimateRequest exact_req{w, 0.2};
  CHECK(estimate(exact_req).value == estimate(exact_req).value);

  EstimateRequest noisy_req{w, 0.2};
  noisy_req.oracle = OracleMode::Noisy;
  noisy_req.seed = 7;
  const double first = estimate(noisy_req).value;
  CHECK(estimate(noisy_req).value == first);

  noisy_req.seed = 8;
  CHECK(estimate(noisy_req).value != first);
}

TEST_CASE("out-of-range accuracy targets are rejected") {
  const WeightedMatroidF w = to_float(unit_weighted(fixed_i3()));
  EstimateRequest zero{w, 0.0};
  CHECK_THROWS_AS(estimate(zero), ConstraintError);
  EstimateRequest big{w, 1.5};
  CHECK_THROWS_AS(estimate(big), ConstraintError);
}

TEST_CASE("an instance beyond the search limit needs its certificate") {
  // K5* two-summed with K3,3* over "p": 17 elements, connected, and both
  // sides 3-connected, so nothing resolves without the certificate once the
  // exhaustive search is capped below 17.
  Multigraph k5;
  k5.vertices = 5;
  std::size_t n = 0;
  for (std::size_t a = 0; a < 5; ++a) {
    for (std::size_t b = a + 1; b < 5; ++b) k5.edges.push_back({a, b, "a" + std::to_string(++n)});
  }
  Multigraph k33;
  k33.vertices = 6;
  n = 0;
  for (std::size_t a = 0; a < 3; ++a) {
    for (std::size_t b = 3; b < 6; ++b) k33.edges.push_back({a, b, "b" + std::to_string(++n)});
  }
  const BinaryMatroid side1 = relabel(cycle_matroid(k5).dual(), {{"a1", "p"}});
  const BinaryMatroid side2 = relabel(cycle_matroid(k33).dual(), {{"b1", "p"}});
  REQUIRE(validate_2sum(side1, side2).ok);
  const BinaryMatroid glued = delta_sum(side1, side2);
  REQUIRE(glued.size() == 17);

  CertShape cert;
  cert.k = 2;
  cert.shared = {"p"};
  cert.left = std::make_unique<CertShape>();
  cert.left->tag = LeafTag::Cographic;
  cert.left->elements = side1.labels();
  cert.right = std::make_unique<CertShape>();
  cert.right->tag = LeafTag::Cographic;
  cert.right->elements = side2.labels();

  const WeightedMatroidF w = to_float(unit_weighted(glued));
  EstimateRequest req{w, 0.5};
  req.limits.separation_search_max = 8;
  CHECK_THROWS_AS(estimate(req), DecompositionError);

  req.certificate = &cert;
  const EstimateResult res = estimate(req);
  const double want = to_double(tutte_exact(unit_weighted(glued)));
  CHECK(std::abs(res.value / want - 1.0) <= 1e-6);
  CHECK(res.stats.sum_nodes_2 == 1);
  CHECK(res.stats.cographic_leaves >= 1);
}

TEST_CASE("size measure counts ground-set elements") {
  CHECK(size_measure(fixed_i3()) == 6);
  CHECK(size_measure(fixed_n1()) == 1);
  CHECK(size_measure(BinaryMatroid{}) == 0);
}

TEST_CASE("the noisy oracle honours its multiplicative window") {
  std::mt19937_64 rng(123);
  CHECK(noisy_oracle(2.0, 1e-12, rng) == doctest::Approx(2.0).epsilon(1e-11));

  std::mt19937_64 a(5), b(5);
  for (int i = 0; i < 16; ++i) CHECK(noisy_oracle(3.0, 0.4, a) == noisy_oracle(3.0, 0.4, b));

  std::mt19937_64 stream(9);
  const double lo = 5.0 * std::exp(-0.3), hi = 5.0 * std::exp(0.3);
  bool inside = true;
  for (int i = 0; i < 10000; ++i) {
    const double v = noisy_oracle(5.0, 0.3, stream);
    inside = inside && v >= lo && v <= hi;
  }
  CHECK(inside);
}
