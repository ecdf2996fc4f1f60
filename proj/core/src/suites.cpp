#include "matising/suites.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "matising/decompose.hpp"
#include "matising/errors.hpp"
#include "matising/estimator.hpp"
#include "matising/gen.hpp"
#include "matising/io.hpp"
#include "matising/matroid.hpp"
#include "matising/signature.hpp"
#include "matising/sums.hpp"
#include "matising/tutte.hpp"

namespace matising {

namespace {

std::size_t n_or(std::size_t count, std::size_t fallback) {
  return count == 0 ? fallback : count;
}

std::size_t draw(std::size_t lo, std::size_t hi, Rng& rng) {
  return lo + rng() % (hi - lo + 1);
}

std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a + 0x9e3779b97f4a7c15ull * (b + 1);
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ull;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebull;
  x ^= x >> 31;
  return x;
}

std::string num(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

SuiteResult success(std::size_t checked, std::string note = {}) {
  return {true, checked, std::move(note)};
}

SuiteResult failure(std::size_t checked, std::string what) {
  return {false, checked, std::move(what)};
}

WeightedMatroid exact_of(const WeightedMatroidF& wf) {
  std::vector<Rat> gamma;
  gamma.reserve(wf.gamma.size());
  for (const double g : wf.gamma) gamma.emplace_back(g);
  return make_weighted(wf.matroid, std::move(gamma));
}

LabelSet subset_of(const std::vector<Label>& pool, std::uint64_t mask) {
  LabelSet out;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    if (mask >> i & 1) out.insert(pool[i]);
  }
  return out;
}

std::vector<Label> without(const BinaryMatroid& m, const LabelSet& shared) {
  std::vector<Label> out;
  for (const Label& e : m.labels()) {
    if (!shared.count(e)) out.push_back(e);
  }
  return out;
}

std::string show_pair(const WeightedMatroid& w1, const WeightedMatroid& w2) {
  return "side 1:\n" + print_instance(w1) + "side 2:\n" + print_instance(w2);
}

// --- matrix-identities ------------------------------------------------------

SuiteResult run_matrix_identities(std::uint64_t, std::size_t) {
  const IdentityReport rep = matrix_identities();
  if (!rep.ok) return failure(1, rep.detail);
  return success(1, "C2 = V2^T D2 V2, C3 = V3^T D3' V3, rank(C3) = 4");
}

// --- split-2sum -------------------------------------------------------------

SuiteResult run_split_2sum(std::uint64_t seed, std::size_t count) {
  // Fixed worked case: two unit 2-circuits glued over p. Both minor vectors
  // are (3/2, 2) and the bilinear form gives 5/2, matching the direct sweep.
  {
    const BinaryMatroid ca(Gf2Matrix::from_strings({"11"}), {"a", "p"});
    const BinaryMatroid cb(Gf2Matrix::from_strings({"11"}), {"b", "p"});
    const SplitCheck ex = verify_2sum_split(unit_weighted(ca), unit_weighted(cb));
    if (ex.direct != ex.split || ex.split != Rat(5, 2)) {
      return failure(1, "fixed 2-circuit case: direct " + to_string(ex.direct) +
                            ", split " + to_string(ex.split) + ", expected 5/2");
    }
  }
  Rng rng(seed);
  const std::size_t n = n_or(count, 200);
  for (std::size_t i = 0; i < n; ++i) {
    auto [m1, m2] = planted_2sum_pair(draw(3, 7, rng), draw(3, 7, rng), rng);
    const WeightedMatroid w1 = make_weighted(m1, random_rationals(m1.size(), rng, true));
    const WeightedMatroid w2 = make_weighted(m2, random_rationals(m2.size(), rng, true));
    const SplitCheck chk = verify_2sum_split(w1, w2);
    if (chk.direct != chk.split) {
      return failure(i + 2, "2-sum split mismatch: direct " + to_string(chk.direct) +
                                ", split " + to_string(chk.split) + "\n" + show_pair(w1, w2));
    }
  }
  return success(n + 1);
}

// --- split-3sum -------------------------------------------------------------

SuiteResult run_split_3sum(std::uint64_t seed, std::size_t count) {
  // Fixed case: the parallel-triangle gadget glued with a relabeled copy of
  // itself. Unit minor vector (7/2, 5, 5, 5), bilinear form 19.
  {
    const WeightedMatroid w1 = unit_weighted(fixed_i3());
    const WeightedMatroid w2 = unit_weighted(
        relabel(fixed_i3(), {{"e1", "f1"}, {"e2", "f2"}, {"e3", "f3"}}));
    const SplitCheck ex = verify_3sum_split(w1, w2);
    if (ex.direct != ex.split || ex.split != Rat(19)) {
      return failure(1, "fixed gadget case: direct " + to_string(ex.direct) + ", split " +
                            to_string(ex.split) + ", expected 19");
    }
  }
  Rng rng(seed);
  const std::size_t n = n_or(count, 100);
  for (std::size_t i = 0; i < n; ++i) {
    auto [m1, m2] = planted_3sum_pair(draw(4, 9, rng), draw(4, 9, rng), rng);
    const WeightedMatroid w1 = make_weighted(m1, random_rationals(m1.size(), rng, true));
    const WeightedMatroid w2 = make_weighted(m2, random_rationals(m2.size(), rng, true));
    const SplitCheck chk = verify_3sum_split(w1, w2);
    if (chk.direct != chk.split) {
      return failure(i + 2, "3-sum split mismatch: direct " + to_string(chk.direct) +
                                ", split " + to_string(chk.split) + "\n" + show_pair(w1, w2));
    }
  }
  return success(n + 1);
}

// --- correction-tables ------------------------------------------------------

SuiteResult run_correction_tables(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const std::size_t n = n_or(count, 50);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % 2 == 0) {
      auto [m1, m2] = planted_2sum_pair(draw(3, 6, rng), draw(3, 6, rng), rng);
      const BinaryMatroid delta = delta_sum(m1, m2);
      const LabelSet shared{"p"};
      const std::vector<Label> pool1 = without(m1, shared);
      const std::vector<Label> pool2 = without(m2, shared);
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << pool1.size()); ++a) {
        const LabelSet a1 = subset_of(pool1, a);
        const bool inc1 = excess_rank(m1, a1, shared) == 1;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << pool2.size()); ++b) {
          const LabelSet a2 = subset_of(pool2, b);
          const bool inc2 = excess_rank(m2, a2, shared) == 1;
          const int observed = rank_correction(m1, m2, delta, a1, a2);
          const int predicted = predicted_correction_2(inc1, inc2);
          ++checked;
          if (observed != predicted) {
            return failure(checked,
                           "shared-element correction mismatch: observed " +
                               std::to_string(observed) + ", predicted " +
                               std::to_string(predicted) + "\n" +
                               show_pair(unit_weighted(m1), unit_weighted(m2)));
          }
        }
      }
    } else {
      auto [m1, m2] = planted_3sum_pair(draw(4, 6, rng), draw(4, 6, rng), rng);
      const std::array<Label, 3> t{"t1", "t2", "t3"};
      const LabelSet shared{t.begin(), t.end()};
      const BinaryMatroid delta = delta_sum(m1, m2);
      const std::vector<Label> pool1 = without(m1, shared);
      const std::vector<Label> pool2 = without(m2, shared);
      for (std::uint64_t a = 0; a < (std::uint64_t{1} << pool1.size()); ++a) {
        const LabelSet a1 = subset_of(pool1, a);
        const std::size_t cls1 = predicate_index(m1, a1, t);
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << pool2.size()); ++b) {
          const LabelSet a2 = subset_of(pool2, b);
          const std::size_t cls2 = predicate_index(m2, a2, t);
          const int observed = rank_correction(m1, m2, delta, a1, a2);
          const int predicted = predicted_correction_3(cls1, cls2);
          ++checked;
          if (observed != predicted) {
            return failure(checked,
                           "shared-circuit correction mismatch: classes (" +
                               std::to_string(cls1) + ", " + std::to_string(cls2) +
                               "), observed " + std::to_string(observed) + ", predicted " +
                               std::to_string(predicted) + "\n" +
                               show_pair(unit_weighted(m1), unit_weighted(m2)));
          }
        }
      }
    }
  }
  return success(checked);
}

// --- minor-inequalities -----------------------------------------------------

SuiteResult run_minor_inequalities(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const std::size_t n = n_or(count, 500);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t size = draw(4, 9, rng);
    const BinaryMatroid m =
        random_with_triangle(size - 3, draw(2, size - 2, rng), rng, "e");
    const WeightedMatroid w = make_weighted(m, random_rationals(size, rng, true));
    const std::array<Label, 3> t{"t1", "t2", "t3"};
    const MinorVector3 z = minor_vector_3(w, t);
    const Rat z4 =
        tutte_exact(carry_weights(w, m.contraction(LabelSet{t.begin(), t.end()})));
    const std::array<Rat, 3> zi{z.con1, z.con2, z.con3};
    const auto bad = [&](const std::string& what) {
      return failure(i + 1, what + ": z = (" + to_string(z.del) + ", " + to_string(z.con1) +
                                ", " + to_string(z.con2) + ", " + to_string(z.con3) +
                                "), full contraction " + to_string(z4) + "\n" +
                                print_instance(w));
    };
    if (!(z.del > 0)) return bad("deletion value must be positive");
    for (const Rat& v : zi) {
      if (!(v >= z.del && v <= 2 * z.del)) return bad("single contraction outside [z0, 2 z0]");
      if (!(2 * v > z4 && v <= z4)) return bad("single contraction outside (z4/2, z4]");
    }
    if (z.con1 + z.con2 + z.con3 != 2 * z.del + z4) return bad("linear identity failed");
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = j + 1; k < 3; ++k) {
        if (!(zi[j] * zi[k] <= z.del * z4)) return bad("correlation bound failed");
      }
    }
  }
  return success(n);
}

// --- signature-roundtrip ----------------------------------------------------

SuiteResult run_signature_roundtrip(std::uint64_t seed, std::size_t count) {
  // Fixed case: signature (3/2, 3/2, 3/2) gives equal gadget weights
  // sqrt(5) - 1 and deletion value sqrt(20).
  {
    const I3Weights ws = i3_weights(Signature{1.5, 1.5, 1.5});
    const double want_d = std::sqrt(5.0) - 1.0;
    for (const double d : ws.d) {
      if (std::abs(d - want_d) > 1e-12) {
        return failure(1, "fixed signature: gadget weight " + num(d) + ", expected " +
                              num(want_d));
      }
    }
    if (std::abs(ws.base - std::sqrt(20.0)) > 1e-12) {
      return failure(1, "fixed signature: deletion value " + num(ws.base) +
                            ", expected sqrt(20)");
    }
  }
  Rng rng(seed);
  const std::size_t n = n_or(count, 500);
  const std::array<Label, 3> t{"t1", "t2", "t3"};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t size = draw(4, 9, rng);
    const BinaryMatroid m =
        random_with_triangle(size - 3, draw(2, size - 2, rng), rng, "e");
    const WeightedMatroid w = make_weighted(m, random_dyadics(size, rng));
    const Signature sig = signature_of(w, t);
    if (!signature_feasible(sig, 1e-12)) {
      return failure(i + 2, "true signature reported infeasible: " +
                               check_signature(sig, 1e-12).detail + "\n" + print_instance(w));
    }
    I3Weights ws;
    try {
      ws = i3_weights(sig);
    } catch (const std::exception& e) {
      return failure(i + 2, std::string("weight synthesis failed: ") + e.what() + "\n" +
                                print_instance(w));
    }
    WeightedMatroid gadget = unit_weighted(fixed_i3());
    gadget.set_weight("e1", Rat(ws.d[0]));
    gadget.set_weight("e2", Rat(ws.d[1]));
    gadget.set_weight("e3", Rat(ws.d[2]));
    const MinorVector3 gz = minor_vector_3(gadget, {"p1", "p2", "p3"});
    const Signature back = signature_of(gz);
    const double err = std::max({std::abs(back.s1 - sig.s1), std::abs(back.s2 - sig.s2),
                                 std::abs(back.s3 - sig.s3)});
    if (err > 1e-9) {
      return failure(i + 2, "gadget signature drifted by " + num(err) + " from (" +
                               num(sig.s1) + ", " + num(sig.s2) + ", " + num(sig.s3) +
                               ")\n" + print_instance(w));
    }
    const double base_err = std::abs(to_double(gz.del) - ws.base);
    if (base_err > 1e-9 * std::max(1.0, ws.base)) {
      return failure(i + 2, "gadget deletion value " + num(to_double(gz.del)) +
                               " differs from the closed form " + num(ws.base) + "\n" +
                               print_instance(w));
    }
  }
  return success(n + 1);
}

// --- signature-clamp --------------------------------------------------------

SuiteResult run_signature_clamp(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const std::size_t n = n_or(count, 100000);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::size_t checked = 0;
  std::size_t rejected = 0;

  // Part A: fuzzed ascending triples around the admissible box. Every
  // successful clamp must be feasible; rejection is allowed (some inputs have
  // no feasible triple nearby).
  for (std::size_t i = 0; i < n; ++i) {
    const double chi =
        std::exp(std::log(1e-8) + (std::log(4.5e-3) - std::log(1e-8)) * unit(rng));
    std::array<double, 3> s{0.9 + 1.2 * unit(rng), 0.9 + 1.2 * unit(rng),
                            0.9 + 1.2 * unit(rng)};
    std::sort(s.begin(), s.end());
    ++checked;
    Signature out;
    try {
      out = clamp_signature(s, chi);
    } catch (const ConstraintError&) {
      ++rejected;
      continue;
    }
    if (!signature_feasible(out, 1e-12)) {
      return failure(checked, "clamp produced an infeasible triple from (" + num(s[0]) +
                                  ", " + num(s[1]) + ", " + num(s[2]) + "), chi " +
                                  num(chi) + ": " + check_signature(out, 1e-12).detail);
    }
  }

  // Part B: inputs within e^{±chi} of a feasible signature must clamp
  // successfully and land within e^{±100 chi} of it.
  const std::size_t nb = std::max<std::size_t>(1, n / 10);
  for (std::size_t i = 0; i < nb; ++i) {
    Signature truth;
    while (true) {
      std::array<double, 3> s{1.0 + unit(rng), 1.0 + unit(rng), 1.0 + unit(rng)};
      std::sort(s.begin(), s.end());
      truth = Signature{s[0], s[1], s[2]};
      if (signature_feasible(truth, 0.0)) break;
    }
    const double chi =
        std::exp(std::log(1e-7) + (std::log(4.4e-3) - std::log(1e-7)) * unit(rng));
    std::array<double, 3> in{truth.s1 * std::exp(chi * (2.0 * unit(rng) - 1.0)),
                             truth.s2 * std::exp(chi * (2.0 * unit(rng) - 1.0)),
                             truth.s3 * std::exp(chi * (2.0 * unit(rng) - 1.0))};
    std::sort(in.begin(), in.end());
    ++checked;
    Signature out;
    try {
      out = clamp_signature(in, chi);
    } catch (const ConstraintError& e) {
      return failure(checked, std::string("clamp rejected a feasible neighborhood: ") +
                                  e.what() + " near (" + num(truth.s1) + ", " +
                                  num(truth.s2) + ", " + num(truth.s3) + "), chi " +
                                  num(chi));
    }
    const std::array<double, 3> ts{truth.s1, truth.s2, truth.s3};
    const std::array<double, 3> os{out.s1, out.s2, out.s3};
    for (std::size_t k = 0; k < 3; ++k) {
      if (std::abs(std::log(os[k] / ts[k])) > 100.0 * chi) {
        return failure(checked, "clamp drifted beyond e^{±100 chi}: component " +
                                    std::to_string(k + 1) + " moved from " + num(ts[k]) +
                                    " to " + num(os[k]) + " at chi " + num(chi));
      }
    }
  }
  return success(checked, std::to_string(rejected) +
                              " fuzzed inputs rejected as infeasible neighborhoods");
}

// --- bilinear-stability -----------------------------------------------------

SuiteResult run_bilinear_stability(std::uint64_t seed, std::size_t count) {
  // Fixed value: the gadget minor vector against itself.
  {
    const std::array<double, 4> z{3.5, 5.0, 5.0, 5.0};
    if (bilinear_d3_f(z, z) != 19.0) {
      return failure(1, "fixed bilinear value: got " + num(bilinear_d3_f(z, z)) +
                            ", expected 19");
    }
  }
  Rng rng(seed);
  const std::size_t n = n_or(count, 100000);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double eps =
        std::exp(std::log(1e-6) + (std::log(0.99) - std::log(1e-6)) * unit(rng));
    const auto vec = [&](double scale) {
      return std::array<double, 4>{scale, scale * (1.0 + unit(rng)),
                                   scale * (1.0 + unit(rng)), scale * (1.0 + unit(rng))};
    };
    const std::array<double, 4> z = vec(0.25 + 4.0 * unit(rng));
    const std::array<double, 4> s = vec(0.25 + 4.0 * unit(rng));
    std::array<double, 4> r{};
    r[0] = s[0] * std::exp(eps * (2.0 * unit(rng) - 1.0));
    for (std::size_t k = 1; k < 4; ++k) {
      // Clamping back into [r0, 2 r0] keeps each component within e^{±eps}
      // of s (the s-ratios are themselves in [1, 2]).
      const double want = s[k] * std::exp(eps * (2.0 * unit(rng) - 1.0));
      r[k] = std::min(std::max(want, r[0]), 2.0 * r[0]);
    }
    if (!bilinear_stability_check(z, s, r, eps)) {
      std::ostringstream os;
      os.precision(17);
      os << "stability window violated at eps " << eps << ": s = (" << s[0] << ", " << s[1]
         << ", " << s[2] << ", " << s[3] << "), r = (" << r[0] << ", " << r[1] << ", "
         << r[2] << ", " << r[3] << ")";
      return failure(i + 2, os.str());
    }
  }
  return success(n + 1);
}

// --- identity-replacement ---------------------------------------------------

SuiteResult run_identity_replacement(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const std::size_t rounds = n_or(count, 2);
  std::size_t checked = 0;
  const auto check_i2 = [&](const BinaryMatroid& m) -> SuiteResult {
    const BinaryMatroid lhs = delta_sum(m, fixed_i2());
    const BinaryMatroid rhs = relabel(m, {{"p", "e"}});
    ++checked;
    if (!same_cycle_space(lhs, rhs)) {
      return failure(checked, "2-element gadget replacement changed the cycle space:\n" +
                                  print_instance(unit_weighted(m)));
    }
    return success(checked);
  };
  const auto check_i3 = [&](const BinaryMatroid& m) -> SuiteResult {
    const BinaryMatroid lhs = delta_sum(m, fixed_i3());
    const BinaryMatroid rhs = relabel(m, {{"p1", "e1"}, {"p2", "e2"}, {"p3", "e3"}});
    ++checked;
    if (!same_cycle_space(lhs, rhs)) {
      return failure(checked, "triangle gadget replacement changed the cycle space:\n" +
                                  print_instance(unit_weighted(m)));
    }
    return success(checked);
  };
  for (std::size_t round = 0; round < rounds; ++round) {
    for (std::size_t size = 3; size <= 8; ++size) {
      const SuiteResult r = check_i2(planted_2sum_pair(size, 3, rng).first);
      if (!r.ok) return r;
    }
    for (std::size_t size = 4; size <= 8; ++size) {
      const BinaryMatroid m0 =
          random_with_triangle(size - 3, draw(2, size - 2, rng), rng, "a");
      const SuiteResult r =
          check_i3(relabel(m0, {{"t1", "p1"}, {"t2", "p2"}, {"t3", "p3"}}));
      if (!r.ok) return r;
    }
    {
      const std::size_t v = draw(3, 5, rng);
      const Multigraph g = random_multigraph(v, draw(v, 8, rng), rng, "a");
      BinaryMatroid m = cycle_matroid(g);
      const Label chosen = m.labels()[rng() % m.size()];
      const SuiteResult r = check_i2(relabel(m, {{chosen, "p"}}));
      if (!r.ok) return r;
    }
    {
      const std::size_t v = draw(3, 4, rng);
      const Multigraph g = multigraph_with_triangle(v, draw(1, 8 - v, rng), rng, "a");
      const SuiteResult r = check_i3(
          relabel(cycle_matroid(g), {{"t1", "p1"}, {"t2", "p2"}, {"t3", "p3"}}));
      if (!r.ok) return r;
    }
  }
  return success(checked);
}

// --- duality ----------------------------------------------------------------

SuiteResult run_duality(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const std::size_t n = n_or(count, 100);
  for (std::size_t i = 0; i < n; ++i) {
    BinaryMatroid m;
    if (i % 5 == 4) {
      // Cycle matroid with a deliberate self-loop: exercises matroid loops
      // (dual coloops) through both routes.
      const std::size_t v = draw(2, 4, rng);
      Multigraph g = random_multigraph(v, draw(v, 8, rng), rng, "e");
      g.edges.push_back({0, 0, "selfloop"});
      m = cycle_matroid(g);
    } else {
      m = random_binary_matroid(draw(1, 10, rng), draw(1, 6, rng), rng, "e");
    }
    const WeightedMatroid w = make_weighted(m, random_rationals(m.size(), rng, true));
    const Rat direct = tutte_exact(w);
    const Rat via_dual = dual_evaluate(w);
    if (direct != via_dual) {
      return failure(i + 1, "dual route mismatch: direct " + to_string(direct) +
                                ", through the dual " + to_string(via_dual) + "\n" +
                                print_instance(w));
    }
  }
  return success(n);
}

// --- potts ------------------------------------------------------------------

void for_each_multigraph(std::size_t vertices, std::size_t max_edges,
                         const std::function<void(const Multigraph&)>& visit) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t u = 0; u < vertices; ++u) {
    for (std::size_t v = u; v < vertices; ++v) pairs.emplace_back(u, v);
  }
  std::vector<std::size_t> mult(pairs.size(), 0);
  const std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t idx,
                                                                std::size_t used) {
    if (idx == pairs.size()) {
      Multigraph g;
      g.vertices = vertices;
      std::size_t next = 1;
      for (std::size_t i = 0; i < pairs.size(); ++i) {
        for (std::size_t c = 0; c < mult[i]; ++c) {
          g.edges.push_back({pairs[i].first, pairs[i].second, "e" + std::to_string(next++)});
        }
      }
      visit(g);
      return;
    }
    for (std::size_t c = 0; used + c <= max_edges; ++c) {
      mult[idx] = c;
      rec(idx + 1, used + c);
    }
    mult[idx] = 0;
  };
  rec(0, 0);
}

std::string describe_graph(const Multigraph& g) {
  std::ostringstream os;
  os << g.vertices << " vertices, edges:";
  for (const auto& e : g.edges) os << ' ' << e.u << '-' << e.v;
  return os.str();
}

SuiteResult run_potts(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const std::size_t rounds = n_or(count, 1);
  std::size_t checked = 0;
  SuiteResult out = success(0);
  bool failed = false;
  for (std::size_t v = 1; v <= 4 && !failed; ++v) {
    for_each_multigraph(v, 6, [&](const Multigraph& g) {
      if (failed) return;
      const std::size_t k = g.edges.size();
      {
        const auto [lhs, rhs] = potts_crosscheck(g, std::vector<Rat>(k, Rat(1)));
        ++checked;
        if (lhs != rhs) {
          failed = true;
          out = failure(checked, "unit-weight coloring expansion mismatch: sweep " +
                                     to_string(lhs) + ", expansion " + to_string(rhs) +
                                     " on " + describe_graph(g));
          return;
        }
      }
      for (std::size_t r = 0; r < rounds; ++r) {
        const auto [lhs, rhs] = potts_crosscheck(g, random_rationals(k, rng, true));
        ++checked;
        if (lhs != rhs) {
          failed = true;
          out = failure(checked, "random-weight coloring expansion mismatch: sweep " +
                                     to_string(lhs) + ", expansion " + to_string(rhs) +
                                     " on " + describe_graph(g));
          return;
        }
      }
    });
  }
  if (failed) return out;
  return success(checked);
}

// --- replace-noise ----------------------------------------------------------

SuiteResult run_replace_noise(std::uint64_t seed, std::size_t count) {
  const std::size_t n = n_or(count, 100);
  const std::array<double, 3> budgets{0.1, 0.5, 1.0};
  std::size_t checked = 0;
  for (std::size_t bi = 0; bi < budgets.size(); ++bi) {
    const double eps = budgets[bi];
    for (std::size_t s = 0; s < n; ++s) {
      Rng rng(mix(seed, bi * 1000003 + s));
      std::mt19937_64 noise(rng());
      const ZOracle oracle = [&noise](const WeightedMatroidF& wf, double accuracy) {
        return noisy_oracle(to_double(tutte_exact(exact_of(wf))), accuracy, noise);
      };
      {
        auto [m1, m2] = planted_2sum_pair(draw(3, 6, rng), draw(3, 6, rng), rng);
        const WeightedMatroid w1 = make_weighted(m1, random_dyadics(m1.size(), rng));
        const WeightedMatroid w2 = make_weighted(m2, random_dyadics(m2.size(), rng));
        const double want = to_double(tutte_exact(weighted_delta_sum(w1, w2)));
        const Replacement2 rep = replace_2sum(to_float(w1), to_float(w2), "p", eps, oracle);
        const double got = rep.c * to_double(tutte_exact(exact_of(rep.w1_prime)));
        ++checked;
        if (!(std::abs(std::log(got / want)) <= eps)) {
          return failure(checked, "shared-element replacement left the accuracy window: "
                                  "eps " +
                                      num(eps) + ", got " + num(got) + ", want " +
                                      num(want) + "\n" + show_pair(w1, w2));
        }
      }
      {
        auto [m1, m2] = planted_3sum_pair(draw(4, 7, rng), draw(4, 7, rng), rng);
        const WeightedMatroid w1 = make_weighted(m1, random_dyadics(m1.size(), rng));
        const WeightedMatroid w2 = make_weighted(m2, random_dyadics(m2.size(), rng));
        const double want = to_double(tutte_exact(weighted_delta_sum(w1, w2)));
        const Replacement3 rep =
            replace_3sum(to_float(w1), to_float(w2), {"t1", "t2", "t3"}, eps, oracle);
        const double got = rep.c * to_double(tutte_exact(exact_of(rep.w1_prime)));
        ++checked;
        if (!(std::abs(std::log(got / want)) <= eps)) {
          return failure(checked, "shared-triangle replacement left the accuracy window: "
                                  "eps " +
                                      num(eps) + ", got " + num(got) + ", want " +
                                      num(want) + "\n" + show_pair(w1, w2));
        }
      }
    }
  }
  return success(checked);
}

// --- estimate-sandwich ------------------------------------------------------

SuiteResult run_estimate_sandwich(std::uint64_t seed, std::size_t count) {
  Rng rng(seed);
  const std::size_t n = n_or(count, 20);
  std::size_t checked = 0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t lo = 14 + 2 * (i % 3);
    std::size_t hi = lo + 2;
    if (i + 1 == n) {
      lo = 21;
      hi = 24;
    }
    const RegularComposite rc = random_regular_with_certificate(lo, hi, rng);
    const WeightedMatroid w =
        make_weighted(rc.matroid, random_dyadics(rc.matroid.size(), rng));
    SweepOptions sweep;
    sweep.max_elements = 24;
    sweep.threads = 4;
    const double want = to_double(tutte_exact(w, sweep));

    EstimateRequest req;
    req.w = to_float(w);
    req.certificate = &rc.certificate;
    req.oracle = OracleMode::Exact;
    req.eps = 0.1;
    const EstimateResult ex = estimate(req);
    ++checked;
    if (!(std::abs(ex.value / want - 1.0) <= 1e-6)) {
      return failure(checked, "exact-oracle estimate drifted beyond 1e-6: got " +
                                  num(ex.value) + ", want " + num(want) + "\n" +
                                  print_instance(w) + print_certificate(rc.certificate));
    }

    req.oracle = OracleMode::Noisy;
    for (const double eps : {0.1, 1.0}) {
      req.eps = eps;
      for (std::uint64_t s = 0; s < 50; ++s) {
        req.seed = mix(seed, i * 1009 + s);
        const EstimateResult r = estimate(req);
        ++checked;
        if (!(std::abs(std::log(r.value / want)) <= eps)) {
          return failure(checked, "noisy estimate left the e^{±eps} window: eps " +
                                      num(eps) + ", seed " + std::to_string(req.seed) +
                                      ", got " + num(r.value) + ", want " + num(want) +
                                      "\n" + print_instance(w) +
                                      print_certificate(rc.certificate));
        }
      }
    }
  }
  return success(checked);
}

// --- registry ----------------------------------------------------------------

std::function<SuiteResult(std::uint64_t, std::size_t)> guard(
    SuiteResult (*fn)(std::uint64_t, std::size_t)) {
  return [fn](std::uint64_t seed, std::size_t count) -> SuiteResult {
    try {
      return fn(seed, count);
    } catch (const std::exception& e) {
      return SuiteResult{false, 0, std::string("unexpected exception: ") + e.what()};
    }
  };
}

}  // namespace

const std::vector<SuiteInfo>& all_suites() {
  static const std::vector<SuiteInfo> suites = [] {
    std::vector<SuiteInfo> out;
    out.push_back({"matrix-identities",
                   "exact identities between the split, correction and transition matrices",
                   1, guard(run_matrix_identities)});
    out.push_back({"split-2sum",
                   "2-sum splitting identity against a direct subset sweep, exact rationals",
                   200, guard(run_split_2sum)});
    out.push_back({"split-3sum",
                   "3-sum splitting identity against a direct subset sweep, exact rationals",
                   100, guard(run_split_3sum)});
    out.push_back({"correction-tables",
                   "observed delta-sum rank corrections match the class tables", 50,
                   guard(run_correction_tables)});
    out.push_back({"minor-inequalities",
                   "order and correlation inequalities of shared-triangle minor values", 500,
                   guard(run_minor_inequalities)});
    out.push_back({"signature-roundtrip",
                   "synthesized gadget weights reproduce the signature they encode", 500,
                   guard(run_signature_roundtrip)});
    out.push_back({"signature-clamp",
                   "clamped signatures are feasible and stay near genuine inputs", 100000,
                   guard(run_signature_clamp)});
    out.push_back({"bilinear-stability",
                   "the split form is stable under small perturbations of one vector",
                   100000, guard(run_bilinear_stability)});
    out.push_back({"identity-replacement",
                   "gluing the identity gadget over a shared element or triangle preserves "
                   "the cycle space",
                   2, guard(run_identity_replacement)});
    out.push_back({"duality",
                   "evaluation through the dual matches the direct sweep exactly", 100,
                   guard(run_duality)});
    out.push_back({"potts",
                   "cycle-matroid sweep matches the vertex-coloring expansion on all small "
                   "multigraphs",
                   1, guard(run_potts)});
    out.push_back({"replace-noise",
                   "noisy-oracle gadget replacement keeps the value inside the accuracy "
                   "window",
                   100, guard(run_replace_noise)});
    out.push_back({"estimate-sandwich",
                   "end-to-end estimates bracket the exact value on composed regular "
                   "instances",
                   20, guard(run_estimate_sandwich)});
    return out;
  }();
  return suites;
}

const SuiteInfo* find_suite(const std::string& name) {
  for (const SuiteInfo& s : all_suites()) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

}  // namespace matising
