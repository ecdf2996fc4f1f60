#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "matising/decompose.hpp"
#include "matising/matroid.hpp"
#include "matising/tutte.hpp"

namespace matising {

/// Exact: base cases evaluated exactly (result float-precise, deterministic).
/// Noisy: every base-case value is perturbed by e^u, u uniform within the
/// call's accuracy budget — exercising the conditional error calculus while
/// keeping the end-to-end e^{±eps} sandwich intact.
enum class OracleMode { Exact, Noisy };

struct EstimateRequest {
  WeightedMatroidF w;
  /// Target accuracy: the result is within e^{±eps} of the true value
  /// (exactly, given the oracle contract). Must lie in (0, 1].
  double eps = 0.5;
  /// Optional decomposition certificate; validated, never trusted.
  const CertShape* certificate = nullptr;
  OracleMode oracle = OracleMode::Exact;
  /// Seeds the noise stream (noisy mode only); deterministic per seed.
  std::uint64_t seed = 0;
  /// Scales the leaf perturbation interval; 1.0 saturates the oracle
  /// contract, larger values deliberately break it for stress tests.
  double noise_scale = 1.0;
  DecompLimits limits;
  SweepOptions sweep;
};

/// One row per sum node of the main tree, recording how its accuracy budget
/// was divided. Conservation: k=1: eps_replace + eps_recurse = eps;
/// k=2,3: 2*eps_replace + eps_recurse = eps (replacement + scale estimate).
struct AuditRow {
  int k = 0;               // 1, 2 or 3
  std::size_t m = 0;       // |E| of the node's matroid
  std::size_t m2 = 0;      // |E(M2)|, the replaced (or smaller) side
  double eps = 0.0;        // budget entering the node
  double eps_minor = 0.0;  // accuracy of each side-2 minor estimate (0 for k=1)
  double eps_replace = 0.0;  // replacement budget (k=1: the smaller side's)
  double eps_recurse = 0.0;  // budget forwarded to the remaining matroid
};

struct EstimateStats {
  std::size_t leaf_calls = 0;
  std::size_t graphic_leaves = 0;
  std::size_t cographic_leaves = 0;
  std::size_t r10_leaves = 0;
  std::size_t small_leaves = 0;
  std::size_t sum_nodes_1 = 0;
  std::size_t sum_nodes_2 = 0;
  std::size_t sum_nodes_3 = 0;
  std::size_t max_depth = 0;      // leaves of a bare base case sit at depth 0
  std::size_t max_leaf_size = 0;  // largest ground set handed to the oracle
  /// Fresh sub-estimates launched for side-2 minors (the "small" calls; the
  /// single "large" call per sum node walks the tree and is not counted here).
  std::size_t minor_estimates = 0;
  std::vector<AuditRow> audit;
};

struct EstimateResult {
  double value = 0.0;
  /// The honoured guarantee: value within e^{±eps} of the true Z.
  double eps = 0.0;
  EstimateStats stats;
};

/// |E(M)|. Under the sum conventions |E(M)| = |E1| + |E2| at a sum node and
/// |E(Mi)| = |Ei| + |T| for its sides, so applying this to the materialized
/// side matroids yields the budget-formula sizes directly.
std::size_t size_measure(const BinaryMatroid& m);

/// true_value * e^u with u uniform on [-accuracy, +accuracy].
double noisy_oracle(double true_value, double accuracy, std::mt19937_64& rng);

/// The recursive estimator. Decomposes (or validates the certificate), then
/// evaluates: base leaves by the exact oracle (graphic/small/R10 by direct
/// sweep, cographic through the duality formula), 1-sums by recursing both
/// sides at eps*|Mi|/|M|, 2-/3-sums by estimating the smaller side's minors
/// at eps*rho*|M2|/(2|M|) resp. eps*rho*|M2|/(4|M|), replacing it with the
/// synthesized 2- or 6-element gadget, and recursing the remainder at
/// eps*(|M|-|M2|)/|M|. Throws ConstraintError when a budget underflows below
/// 1e-13 (never silently violated) and DecompositionError when the matroid
/// (or a side-2 minor) cannot be decomposed within the limits.
EstimateResult estimate(const EstimateRequest& request);

}  // namespace matising
