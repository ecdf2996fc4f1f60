#include "matising/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "matising/errors.hpp"
#include "matising/signature.hpp"

namespace matising {

namespace {

/// Budgets below this are indistinguishable from float noise; refuse rather
/// than silently miss the guarantee.
constexpr double kMinBudget = 1e-13;

void check_budget(double eps, const char* where) {
  if (!std::isfinite(eps) || eps < kMinBudget) {
    std::ostringstream os;
    os << "accuracy budget underflow at " << where << ": " << eps
       << " is below " << kMinBudget;
    throw ConstraintError(os.str());
  }
}

void check_conserved(double parts, double eps) {
  if (std::abs(parts - eps) > 1e-9 * eps) {
    throw std::logic_error("budget conservation violated at a sum node");
  }
}

WeightedMatroidF weighted_deletion(const WeightedMatroidF& w, const LabelSet& drop) {
  return carry_weights(w, w.matroid.deletion(drop));
}

WeightedMatroidF weighted_con_del(const WeightedMatroidF& w, const Label& pivot,
                                  const LabelSet& drop) {
  BinaryMatroid m = w.matroid.contraction({pivot});
  if (!drop.empty()) m = m.deletion(drop);
  return carry_weights(w, std::move(m));
}

WeightedMatroid to_exact(const WeightedMatroidF& wf) {
  std::vector<Rat> gamma;
  gamma.reserve(wf.gamma.size());
  for (double g : wf.gamma) gamma.emplace_back(g);  // double -> Rat is exact
  return make_weighted(wf.matroid, std::move(gamma));
}

/// Keep a ratio inside the half-open gadget domain [1, 2).
double into_ratio_domain(double s) {
  return std::min(std::max(s, 1.0), 2.0 - 1e-12);
}

struct Engine {
  OracleMode mode;
  double noise_scale;
  const DecompLimits& limits;
  const SweepOptions& sweep;
  std::mt19937_64 rng;
  EstimateStats stats;

  double leaf_value(const DecompNode& node, const WeightedMatroidF& wf) {
    WeightedMatroid exact = to_exact(wf);
    Rat z = (node.tag == LeafTag::Cographic) ? dual_evaluate(exact, sweep)
                                             : tutte_exact(exact, sweep);
    return to_double(z);
  }

  /// Fresh estimate of a side-2 minor: its own decomposition, its own budget
  /// thread, its own noise stream (seeded from ours for determinism).
  double sub_estimate(const WeightedMatroidF& minor, double accuracy) {
    ++stats.minor_estimates;
    EstimateRequest req;
    req.w = minor;
    req.eps = accuracy;
    req.oracle = mode;
    req.seed = (mode == OracleMode::Noisy) ? rng() : 0;
    req.noise_scale = noise_scale;
    req.limits = limits;
    req.sweep = sweep;
    return estimate(req).value;
  }

  double eval(const DecompNode& node, const WeightedMatroidF& wf, double eps,
              std::size_t depth) {
    check_budget(eps, "a recursion node");
    stats.max_depth = std::max(stats.max_depth, depth);

    if (node.is_leaf()) {
      ++stats.leaf_calls;
      switch (*node.tag) {
        case LeafTag::Graphic: ++stats.graphic_leaves; break;
        case LeafTag::Cographic: ++stats.cographic_leaves; break;
        case LeafTag::R10: ++stats.r10_leaves; break;
        case LeafTag::Small: ++stats.small_leaves; break;
      }
      stats.max_leaf_size = std::max(stats.max_leaf_size, wf.matroid.size());
      double value = leaf_value(node, wf);
      if (mode == OracleMode::Noisy) {
        value = noisy_oracle(value, eps * noise_scale, rng);
      }
      return value;
    }

    const std::size_t m = node.matroid.size();
    const std::size_t m2 = node.right->matroid.size();

    if (node.k == 1) {
      ++stats.sum_nodes_1;
      const std::size_t m1 = node.left->matroid.size();
      const double eps_left = eps * static_cast<double>(m1) / static_cast<double>(m);
      const double eps_right = eps * static_cast<double>(m2) / static_cast<double>(m);
      check_conserved(eps_left + eps_right, eps);
      stats.audit.push_back({1, m, m2, eps, 0.0, eps_right, eps_left});
      double left = eval(*node.left, carry_weights(wf, node.left->matroid), eps_left,
                         depth + 1);
      double right = eval(*node.right, carry_weights(wf, node.right->matroid),
                          eps_right, depth + 1);
      return left * right;
    }

    // 2- or 3-sum: replace the smaller side by its gadget, recurse the rest.
    const double eps_local = eps * static_cast<double>(m2) / (2.0 * static_cast<double>(m));
    const double eps_recurse =
        eps * static_cast<double>(m - m2) / static_cast<double>(m);
    check_budget(eps_local, "a replacement step");
    check_budget(eps_recurse, "the remaining side");
    check_conserved(2.0 * eps_local + eps_recurse, eps);
    const double chi = eps_local * kRho;

    WeightedMatroidF w1 = carry_weights(wf, node.left->matroid);
    WeightedMatroidF w2 = carry_weights(wf, node.right->matroid);
    double scale = 0.0;

    if (node.k == 2) {
      ++stats.sum_nodes_2;
      stats.audit.push_back({2, m, m2, eps, chi, eps_local, eps_recurse});
      const Label& p = node.shared[0];
      if (mode == OracleMode::Noisy) {
        ZOracle oracle = [this](const WeightedMatroidF& minor, double acc) {
          return sub_estimate(minor, acc);
        };
        Replacement2 rep = replace_2sum(w1, w2, p, eps_local, oracle);
        w1 = std::move(rep.w1_prime);
        scale = rep.c;
      } else {
        double z0 = sub_estimate(weighted_deletion(w2, {p}), chi);
        double z1 = sub_estimate(weighted_con_del(w2, p, {}), chi);
        double d = i2_weight(z0, into_ratio_domain(z1 / z0) * z0);
        scale = 2.0 * z0 / (2.0 + d);
        w1.set_weight(p, d);
      }
    } else if (node.k == 3) {
      ++stats.sum_nodes_3;
      stats.audit.push_back({3, m, m2, eps, chi / 2.0, eps_local, eps_recurse});
      const std::array<Label, 3> t = {node.shared[0], node.shared[1], node.shared[2]};
      if (mode == OracleMode::Noisy) {
        ZOracle oracle = [this](const WeightedMatroidF& minor, double acc) {
          return sub_estimate(minor, acc);
        };
        Replacement3 rep = replace_3sum(w1, w2, t, eps_local, oracle);
        w1 = std::move(rep.w1_prime);
        scale = rep.c;
      } else {
        LabelSet t_set(t.begin(), t.end());
        std::array<double, 4> z{};
        z[0] = sub_estimate(weighted_deletion(w2, t_set), chi / 2.0);
        for (int i = 0; i < 3; ++i) {
          LabelSet drop = t_set;
          drop.erase(t[i]);
          z[i + 1] = sub_estimate(weighted_con_del(w2, t[i], drop), chi / 2.0);
        }
        Signature sig{into_ratio_domain(z[1] / z[0]), into_ratio_domain(z[2] / z[0]),
                      into_ratio_domain(z[3] / z[0])};
        I3Weights ws = i3_weights(sig);
        scale = z[0] / ws.base;
        for (int i = 0; i < 3; ++i) w1.set_weight(t[i], ws.d[i]);
      }
    } else {
      throw std::logic_error("sum node with unsupported arity");
    }

    return scale * eval(*node.left, w1, eps_recurse, depth + 1);
  }
};

}  // namespace

std::size_t size_measure(const BinaryMatroid& m) { return m.size(); }

double noisy_oracle(double true_value, double accuracy, std::mt19937_64& rng) {
  if (!(accuracy > 0.0)) {
    throw ConstraintError("noisy_oracle needs a positive accuracy");
  }
  std::uniform_real_distribution<double> u(-accuracy, accuracy);
  return true_value * std::exp(u(rng));
}

EstimateResult estimate(const EstimateRequest& request) {
  if (!std::isfinite(request.eps) || request.eps <= 0.0 || request.eps > 1.0) {
    throw ConstraintError("accuracy parameter must lie in (0, 1]");
  }
  check_budget(request.eps, "the top-level request");
  if (!(request.noise_scale >= 0.0) || !std::isfinite(request.noise_scale)) {
    throw ConstraintError("noise scale must be nonnegative and finite");
  }
  for (double g : request.w.gamma) {
    if (!std::isfinite(g) || g < 0.0) {
      throw ConstraintError("weights must be nonnegative finite values");
    }
  }

  EstimateResult result;
  result.eps = request.eps;
  if (request.w.matroid.size() == 0) {
    result.value = 1.0;  // empty ground set: the empty-set term alone
    return result;
  }

  DecompTree tree = decompose(request.w.matroid, request.limits, request.certificate);
  Engine engine{request.oracle, request.noise_scale, request.limits, request.sweep,
                std::mt19937_64(request.seed), EstimateStats{}};
  result.value = engine.eval(*tree.root, request.w, request.eps, 0);
  result.stats = std::move(engine.stats);
  return result;
}

}  // namespace matising
