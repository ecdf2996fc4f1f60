#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cmath>
#include <vector>

#include "matising/errors.hpp"
#include "matising/gen.hpp"
#include "matising/matroid.hpp"
#include "matising/rational.hpp"
#include "matising/signature.hpp"
#include "matising/sums.hpp"
#include "matising/tutte.hpp"

using namespace matising;

namespace {

WeightedMatroid gadget_with(const std::array<double, 3>& d) {
  WeightedMatroid w = unit_weighted(fixed_i3());
  w.set_weight("e1", Rat(d[0]));
  w.set_weight("e2", Rat(d[1]));
  w.set_weight("e3", Rat(d[2]));
  return w;
}

}  // namespace

TEST_CASE("signatures of pinned gadget weightings") {
  const std::array<Label, 3> t{"p1", "p2", "p3"};

  const Signature flat = signature_of(gadget_with({0.0, 0.0, 0.0}), t);
  CHECK(flat.s1 == 1.0);
  CHECK(flat.s2 == 1.0);
  CHECK(flat.s3 == 1.0);

  const double d = std::sqrt(5.0) - 1.0;
  const Signature mid = signature_of(gadget_with({d, d, d}), t);
  CHECK(mid.s1 == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(mid.s2 == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(mid.s3 == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("signature feasibility constraints") {
  CHECK(signature_feasible(Signature{1.0, 1.0, 1.0}));
  CHECK(signature_feasible(Signature{1.5, 1.5, 1.5}));
  CHECK(signature_feasible(Signature{1.9, 1.9, 1.9}));
  // The pairwise-product constraints hold with equality: still feasible.
  CHECK(signature_feasible(Signature{1.0, 1.0, 1.2}));

  // 2 + s1 - s2 - s3 = 0: the strict constraint fails, even at all-2.
  CHECK_FALSE(signature_feasible(Signature{1.0, 1.5, 1.5}));
  CHECK_FALSE(signature_feasible(Signature{2.0, 2.0, 2.0}));
  // s1 + s2 + s3 - s2*s3 - 2 = -0.2: a pairwise product too large.
  CHECK_FALSE(signature_feasible(Signature{1.05, 1.5, 1.5}));
  // Outside the box.
  CHECK_FALSE(signature_feasible(Signature{0.9, 1.6, 1.7}));
  CHECK_FALSE(check_signature(Signature{1.6, 1.7, 2.1}).ok);
  CHECK_FALSE(check_signature(Signature{1.0, 1.5, 1.5}).detail.empty());
}

TEST_CASE("2-element gadget weight formula") {
  CHECK(i2_weight(Rat(7, 3), Rat(7, 3)) == Rat(0));
  CHECK(i2_weight(Rat(5, 2), Rat(4)) == Rat(3));
  CHECK(i2_weight(Rat(3, 2), Rat(2)) == Rat(1));
  CHECK(i2_weight(2.5, 4.0) == doctest::Approx(3.0));

  CHECK_THROWS_AS((void)i2_weight(Rat(1), Rat(2)), ConstraintError);   // z1 = 2 z0
  CHECK_THROWS_AS((void)i2_weight(Rat(2), Rat(1)), ConstraintError);   // z1 < z0
  CHECK_THROWS_AS((void)i2_weight(Rat(0), Rat(0)), ConstraintError);   // z0 = 0

  // d reproduces the ratio: Z(I2/p; d) / Z(I2\p; d) = (1+d)/(1+d/2).
  const Rat d = i2_weight(Rat(5, 2), Rat(4));
  CHECK((1 + d) / (1 + d / 2) == Rat(4) / Rat(5, 2));
}

TEST_CASE("6-element gadget weight formulas") {
  const I3Weights identity = i3_weights(Signature{1.0, 1.0, 1.0});
  CHECK(identity.d[0] == 0.0);
  CHECK(identity.d[1] == 0.0);
  CHECK(identity.d[2] == 0.0);
  CHECK(identity.r == doctest::Approx(1.0));
  CHECK(identity.base == doctest::Approx(1.0));

  const I3Weights mid = i3_weights(Signature{1.5, 1.5, 1.5});
  const double want = std::sqrt(5.0) - 1.0;
  CHECK(mid.d[0] == doctest::Approx(want).epsilon(1e-12));
  CHECK(mid.d[1] == doctest::Approx(want).epsilon(1e-12));
  CHECK(mid.d[2] == doctest::Approx(want).epsilon(1e-12));
  CHECK(mid.base == doctest::Approx(std::sqrt(20.0)).epsilon(1e-12));

  // Boundary-feasible: the product constraints bind, one weight survives.
  const I3Weights edge = i3_weights(Signature{1.0, 1.0, 1.2});
  CHECK(edge.d[0] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(edge.d[1] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(edge.d[2] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(edge.base == doctest::Approx(1.25).epsilon(1e-9));

  CHECK_THROWS_AS((void)i3_weights(Signature{1.05, 1.5, 1.5}), ConstraintError);
  CHECK_THROWS_AS((void)i3_weights(Signature{2.0, 2.0, 2.0}), ConstraintError);
}

TEST_CASE("gadget synthesis round-trips the signature") {
  Rng rng(41);
  const std::array<Label, 3> t{"t1", "t2", "t3"};
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t size = 4 + rng() % 5;
    const BinaryMatroid m = random_with_triangle(size - 3, 2 + rng() % 2, rng, "e");
    const WeightedMatroid w = make_weighted(m, random_dyadics(size, rng));
    const Signature sig = signature_of(w, t);
    REQUIRE(signature_feasible(sig, 1e-12));
    const I3Weights ws = i3_weights(sig);
    const Signature back = signature_of(gadget_with(ws.d), {"p1", "p2", "p3"});
    CHECK(back.s1 == doctest::Approx(sig.s1).epsilon(1e-9));
    CHECK(back.s2 == doctest::Approx(sig.s2).epsilon(1e-9));
    CHECK(back.s3 == doctest::Approx(sig.s3).epsilon(1e-9));
    // The scale byproduct equals the gadget's deletion value.
    const double del = to_double(tutte_exact(
        carry_weights(gadget_with(ws.d), fixed_i3().deletion({"p1", "p2", "p3"}))));
    CHECK(del == doctest::Approx(ws.base).epsilon(1e-9));
  }
}

TEST_CASE("signature clamp on pinned inputs") {
  const Signature ones = clamp_signature({1.0, 1.0, 1.0}, 1e-4);
  CHECK(ones.s1 == 1.0);
  CHECK(ones.s2 == 1.0);
  CHECK(ones.s3 == 1.0);

  // Already feasible and far from every boundary: returned unchanged
  // (near-tie branch with chi small enough to keep 2-delta above s3).
  const Signature kept = clamp_signature({1.2, 1.2, 1.5}, 1e-3);
  CHECK(kept.s1 == doctest::Approx(1.2));
  CHECK(kept.s2 == doctest::Approx(1.2));
  CHECK(kept.s3 == doctest::Approx(1.5));

  const double delta = 4.0 * std::exp(1.0) * 1e-3;

  // Near-tie at the upper wall: every component retreats to 2 - delta,
  // restoring the strict constraint with margin delta.
  const Signature wall = clamp_signature({2.0, 2.0, 2.0}, 1e-3);
  CHECK(wall.s1 == doctest::Approx(2.0 - delta).epsilon(1e-15));
  CHECK(wall.s2 == doctest::Approx(2.0 - delta).epsilon(1e-15));
  CHECK(wall.s3 == doctest::Approx(2.0 - delta).epsilon(1e-15));
  CHECK(signature_feasible(wall, 1e-12));

  // Clear gap between the two smallest: the smallest is pushed up 4*delta.
  const Signature gap = clamp_signature({1.0, 1.1, 1.15}, 1e-3);
  CHECK(gap.s1 == doctest::Approx(1.0 + 4.0 * delta).epsilon(1e-15));
  CHECK(gap.s2 == doctest::Approx(1.1));
  CHECK(gap.s3 == doctest::Approx(1.15));
  CHECK(signature_feasible(gap, 1e-12));

  // Slightly below the box: the near-tie branch lifts the merged pair to 1.
  const Signature lifted = clamp_signature({0.9, 0.95, 1.1}, 1e-3);
  CHECK(lifted.s1 == 1.0);
  CHECK(lifted.s2 == 1.0);
  CHECK(lifted.s3 == doctest::Approx(1.1));

  // No feasible signature is near this spread-out input: the push-up breaks
  // the strict constraint, so the repair reports failure instead of lying.
  CHECK_THROWS_AS((void)clamp_signature({1.0, 1.5, 1.8}, 1e-3), ConstraintError);
  // Unsorted input.
  CHECK_THROWS_AS((void)clamp_signature({1.5, 1.2, 1.4}, 1e-3), ConstraintError);
  // Noise scale too large for the two-case repair to be sound.
  CHECK_THROWS_AS((void)clamp_signature({1.0, 1.0, 1.0}, 0.1), ConstraintError);
}

TEST_CASE("clamped outputs are always feasible or rejected") {
  Rng rng(42);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t kept = 0;
  std::size_t rejected = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const double chi = std::exp(std::log(1e-7) + unit(rng) * std::log(4e-3 / 1e-7));
    const double delta = 4.0 * std::exp(1.0) * chi;
    std::array<double, 3> s{0.9 + 1.2 * unit(rng), 0.9 + 1.2 * unit(rng),
                            0.9 + 1.2 * unit(rng)};
    std::sort(s.begin(), s.end());
    // The call sits outside CHECK so the rejection path stays catchable.
    Signature out;
    try {
      out = clamp_signature(s, chi);
      ++kept;
    } catch (const ConstraintError&) {
      // Rejection is allowed for inputs without a feasible neighbour.
      ++rejected;
      continue;
    }
    CHECK(signature_feasible(out, 1e-12));
    // Inputs already inside the box move at most 6*delta per component.
    if (s[0] >= 1.0 && s[2] <= 2.0) {
      const double moved = std::max({std::abs(out.s1 - s[0]),
                                     std::abs(out.s2 - s[1]),
                                     std::abs(out.s3 - s[2])});
      CHECK(moved <= 6.0 * delta + 1e-12);
    }
  }
  // Both outcomes must actually occur over this input spread.
  CHECK(kept > 0);
  CHECK(rejected > 0);
}

TEST_CASE("two-point clamp branches") {
  const auto near = clamp_2sum(1.0, 1.0, 0.01);
  CHECK(near.first == doctest::Approx(std::exp(0.01)).epsilon(1e-15));
  CHECK(near.second == doctest::Approx(std::exp(0.01)).epsilon(1e-15));

  const auto high = clamp_2sum(1.0, 3.0, 0.01);
  CHECK(high.second == doctest::Approx(2.0 * high.first).epsilon(1e-15));

  const auto mid = clamp_2sum(1.0, 1.5, 0.01);
  CHECK(mid.second == 1.5);

  CHECK_THROWS_AS((void)clamp_2sum(0.0, 1.0, 0.01), ConstraintError);
  CHECK_THROWS_AS((void)clamp_2sum(1.0, -1.0, 0.01), ConstraintError);
}

TEST_CASE("bilinear form stability window") {
  const std::array<double, 4> flat{1.0, 1.0, 1.0, 1.0};
  CHECK(bilinear_stability_check(flat, flat, flat, 0.5));

  std::array<double, 4> stretched{};
  for (std::size_t i = 0; i < 4; ++i) stretched[i] = flat[i] * std::exp(0.5);
  CHECK(bilinear_stability_check(flat, flat, stretched, 0.5));

  // Intermediate positivity bound used by the window proof: the form is at
  // least the product of the leading entries.
  Rng rng(43);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto vec = [&] {
      const double scale = 0.5 + 2.0 * unit(rng);
      return std::array<double, 4>{scale, scale * (1.0 + unit(rng)),
                                   scale * (1.0 + unit(rng)),
                                   scale * (1.0 + unit(rng))};
    };
    const auto z = vec();
    const auto v = vec();
    CHECK(bilinear_d3_f(z, v) >= z[0] * v[0] * (1.0 - 1e-12));
  }
}

TEST_CASE("gadget replacement with a trivial partner") {
  Rng rng(44);
  const ZOracle exact = [](const WeightedMatroidF& wf, double) {
    std::vector<Rat> g;
    for (const double x : wf.gamma) g.emplace_back(x);
    return to_double(tutte_exact(make_weighted(wf.matroid, std::move(g))));
  };

  // Partner side whose minors are both 1: replacement weight 0; the scale
  // carries only the deliberate e^{chi} shift of the two-point clamp.
  {
    auto [m1, m2] = planted_2sum_pair(5, 3, rng);
    const WeightedMatroid w1 = make_weighted(m1, random_dyadics(m1.size(), rng));
    const WeightedMatroid w2 = make_weighted(m2, std::vector<Rat>(m2.size(), Rat(0)));
    const Replacement2 rep = replace_2sum(to_float(w1), to_float(w2), "p", 0.5, exact);
    CHECK(rep.d == 0.0);
    CHECK(rep.c == doctest::Approx(std::exp(0.5 * kRho)).epsilon(1e-12));
    CHECK(rep.w1_prime.gamma[rep.w1_prime.matroid.index_of("p")] == 0.0);
  }
  {
    auto [m1, m2] = planted_3sum_pair(5, 4, rng);
    const WeightedMatroid w1 = make_weighted(m1, random_dyadics(m1.size(), rng));
    const WeightedMatroid w2 = make_weighted(m2, std::vector<Rat>(m2.size(), Rat(0)));
    const Replacement3 rep =
        replace_3sum(to_float(w1), to_float(w2), {"t1", "t2", "t3"}, 0.5, exact);
    CHECK(rep.c == doctest::Approx(1.0).epsilon(1e-9));
    for (const Label& e : {"t1", "t2", "t3"}) {
      CHECK(rep.w1_prime.gamma[rep.w1_prime.matroid.index_of(e)] ==
            doctest::Approx(0.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("gadget replacement reproduces the glued value with an exact oracle") {
  Rng rng(45);
  const ZOracle exact = [](const WeightedMatroidF& wf, double) {
    std::vector<Rat> g;
    for (const double x : wf.gamma) g.emplace_back(x);
    return to_double(tutte_exact(make_weighted(wf.matroid, std::move(g))));
  };
  const auto reproduced = [&exact](const WeightedMatroidF& w1p, double c) {
    std::vector<Rat> g;
    for (const double x : w1p.gamma) g.emplace_back(x);
    return c * to_double(tutte_exact(make_weighted(w1p.matroid, std::move(g))));
  };
  // The honoured contract is e^{±eps_local}; the built-in clamp shifts the
  // estimates by e^{chi} = e^{eps_local*rho} on purpose, so the residual error
  // shrinks linearly with the budget rather than vanishing.
  for (const double eps_local : {0.5, 1e-4}) {
    const double tight = 8.0 * eps_local * kRho;  // clamp shift, amplified <= 4x
    for (int trial = 0; trial < 8; ++trial) {
      auto [m1, m2] = planted_2sum_pair(3 + rng() % 4, 3 + rng() % 4, rng);
      const WeightedMatroid w1 = make_weighted(m1, random_dyadics(m1.size(), rng));
      const WeightedMatroid w2 = make_weighted(m2, random_dyadics(m2.size(), rng));
      const double want = to_double(tutte_exact(weighted_delta_sum(w1, w2)));
      const Replacement2 rep =
          replace_2sum(to_float(w1), to_float(w2), "p", eps_local, exact);
      const double got = reproduced(rep.w1_prime, rep.c);
      CHECK(std::abs(std::log(got / want)) <= eps_local);
      CHECK(std::abs(std::log(got / want)) <= tight);
    }
    for (int trial = 0; trial < 5; ++trial) {
      auto [m1, m2] = planted_3sum_pair(4 + rng() % 3, 4 + rng() % 3, rng);
      const WeightedMatroid w1 = make_weighted(m1, random_dyadics(m1.size(), rng));
      const WeightedMatroid w2 = make_weighted(m2, random_dyadics(m2.size(), rng));
      const double want = to_double(tutte_exact(weighted_delta_sum(w1, w2)));
      const Replacement3 rep =
          replace_3sum(to_float(w1), to_float(w2), {"t1", "t2", "t3"}, eps_local, exact);
      const double got = reproduced(rep.w1_prime, rep.c);
      CHECK(std::abs(std::log(got / want)) <= eps_local);
    }
  }
}
