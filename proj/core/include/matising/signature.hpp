#pragma once

#include <array>
#include <functional>
#include <string>
#include <utility>

#include "matising/matroid.hpp"
#include "matising/tutte.hpp"

namespace matising {

/// Noise-scale constant of the gadget-replacement error analysis (covers both
/// the 3-sum requirement 1/6000 and the 2-sum requirement <= 1/160).
inline constexpr double kRho = 1.0 / 6000.0;

/// Proximity constant of the signature clamp: output within e^{±kClampConst·chi}
/// of the true signature when the input was within e^{±chi}. Any value in
/// [66, 107] satisfies both derivable constraints (must dominate 24e ≈ 65.23,
/// and kClampConst·kRho ≤ 1/56 needs ≤ 107.14).
inline constexpr double kClampConst = 100.0;

/// Ratio triple (z1, z2, z3)/z0 of the four minor values against a 3-circuit.
struct Signature {
  double s1 = 1.0;
  double s2 = 1.0;
  double s3 = 1.0;
};

Signature signature_of(const MinorVector3& z);
Signature signature_of(const WeightedMatroid& w, const std::array<Label, 3>& t,
                       const SweepOptions& opts = {});

struct FeasibilityReport {
  bool ok = true;
  std::string detail;
};

/// The three feasibility constraint families, with slack tolerance `tol`:
/// 2+s_i−s_j−s_k > 0 each permutation (strict); s1+s2+s3−3 ≥ 0;
/// s1+s2+s3−s_j·s_k−2 ≥ 0 each pair; 1 ≤ s_i ≤ 2.
FeasibilityReport check_signature(const Signature& s, double tol = 0.0);
bool signature_feasible(const Signature& s, double tol = 0.0);

/// 2-element gadget weight d = 2(z1−z0)/(2z0−z1), the unique nonnegative
/// weight with (1+d)/(1+d/2) = z1/z0. Requires 0 < z0 <= z1 < 2 z0.
Rat i2_weight(const Rat& z0, const Rat& z1);
double i2_weight(double z0, double z1);

/// 6-element gadget weights for a feasible signature:
/// d_i = −1 + sqrt(R·S_i/(S_j·S_k)), R = s1+s2+s3−2, S_i = 2+s_i−s_j−s_k.
/// Self-verifies the round-trip sigma(gadget; delta) = s to 1e−9 relative.
struct I3Weights {
  std::array<double, 3> d{};
  double r = 0.0;
  std::array<double, 3> s_factors{};
  /// Z of the gadget with T deleted: sqrt(R/(S1·S2·S3)) — the scale byproduct.
  double base = 0.0;
};
I3Weights i3_weights(const Signature& s);

/// Two-case repair of a noisy ascending triple (delta = 4e·chi):
/// Case 1 (s̃2−s̃1 ≤ 5δ): s1 = s2 = min(max(1,s̃2), 2−δ), s3 = min(max(1,s̃3), 2−δ);
/// Case 2: s1 = s̃1+4δ, s2 = min(s̃2,2), s3 = min(s̃3,2).
/// Feasible output within e^{±kClampConst·chi} of the true signature when the
/// input was within e^{±chi} of a feasible one. Throws when inputs are not
/// ascending, when chi is too large (4e·chi > 1/20), or when the computed
/// output fails the feasibility check (possible only when no feasible triple
/// is within e^{±chi} of the input).
Signature clamp_signature(const std::array<double, 3>& s_sorted, double chi);

/// Repair noisy (z̃0, z̃1) into z0' = z̃0·e^chi and z1' clamped into
/// [z0', 2z0']; both within e^{±4chi} of the true values when the inputs
/// were within e^{±chi}.
std::pair<double, double> clamp_2sum(double z0_noisy, double z1_noisy, double chi);

/// Stability sandwich of the 3-sum bilinear form: with all three vectors
/// positive, component ratios v_i/v_0 in [1,2], and s,r entrywise within
/// e^{±eps} (0 < eps < 1), checks e^{−56eps}·zᵀDs ≤ zᵀDr ≤ e^{56eps}·zᵀDs.
/// Throws on precondition violations; never false on valid inputs.
bool bilinear_stability_check(const std::array<double, 4>& z, const std::array<double, 4>& s,
                              const std::array<double, 4>& r, double eps);

/// The 4x4 bilinear form of the 3-sum splitting identity, double precision.
double bilinear_d3_f(const std::array<double, 4>& x, const std::array<double, 4>& y);

/// Black-box estimator contract: value within e^{±accuracy} of Z(W).
using ZOracle = std::function<double(const WeightedMatroidF&, double accuracy)>;

/// Replace the shared-element side W2 by the 2-element gadget: estimates the
/// two minor values of W2 at accuracy eps_local·rho, clamps, synthesizes d,
/// and returns W1 with the marker's weight set to d plus the scale c with
/// c·Z(W1') within e^{±eps_local} of Z(W1 Δ W2).
struct Replacement2 {
  WeightedMatroidF w1_prime;
  double c = 0.0;
  double d = 0.0;
  double z0_clamped = 0.0;
  double z1_clamped = 0.0;
};
Replacement2 replace_2sum(const WeightedMatroidF& w1, const WeightedMatroidF& w2,
                          const Label& p, double eps_local, const ZOracle& oracle);

/// 3-sum analogue: estimates the four minor values of W2 at eps_local·rho/2,
/// clamps the ratio triple, synthesizes (d1,d2,d3), sets the marker weights,
/// and returns c = z̃0/base with c·Z(W1') within e^{±eps_local} of Z(W1 Δ W2).
struct Replacement3 {
  WeightedMatroidF w1_prime;
  double c = 0.0;
  I3Weights weights;
  Signature clamped;
};
Replacement3 replace_3sum(const WeightedMatroidF& w1, const WeightedMatroidF& w2,
                          const std::array<Label, 3>& t, double eps_local,
                          const ZOracle& oracle);

}  // namespace matising
