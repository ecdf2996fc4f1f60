#include "matising/signature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "matising/errors.hpp"
#include "matising/sums.hpp"

namespace matising {

namespace {

/// Largest admissible clamp noise: delta = 4e*chi must stay below 1/20 for
/// the two-case repair to be sound.
constexpr double kMaxDelta = 1.0 / 20.0;

/// Relative tolerance of the gadget-weight round-trip self-check.
constexpr double kRoundTripTol = 1e-9;

/// Slack absorbing double rounding in the non-strict feasibility checks.
constexpr double kFeasSlack = 1e-12;

double to_positive_double(const Rat& v, const char* what) {
  double x = to_double(v);
  if (!(x > 0.0)) {
    throw ConstraintError(std::string(what) + " must be positive");
  }
  return x;
}

void require_positive_finite(double v, const char* what) {
  if (!std::isfinite(v) || v <= 0.0) {
    std::ostringstream os;
    os << what << " must be a positive finite value, got " << v;
    throw ConstraintError(os.str());
  }
}

/// Weighted deletion of `drop` from w (labels keep their weights).
WeightedMatroidF weighted_deletion(const WeightedMatroidF& w, const LabelSet& drop) {
  return carry_weights(w, w.matroid.deletion(drop));
}

/// Weighted contraction of `pivot` followed by deletion of `drop`.
WeightedMatroidF weighted_con_del(const WeightedMatroidF& w, const Label& pivot,
                                  const LabelSet& drop) {
  BinaryMatroid m = w.matroid.contraction({pivot});
  if (!drop.empty()) m = m.deletion(drop);
  return carry_weights(w, std::move(m));
}

}  // namespace

Signature signature_of(const MinorVector3& z) {
  double z0 = to_positive_double(z.del, "deletion minor value");
  return Signature{to_double(z.con1) / z0, to_double(z.con2) / z0,
                   to_double(z.con3) / z0};
}

Signature signature_of(const WeightedMatroid& w, const std::array<Label, 3>& t,
                       const SweepOptions& opts) {
  return signature_of(minor_vector_3(w, t, opts));
}

FeasibilityReport check_signature(const Signature& sig, double tol) {
  const double s[3] = {sig.s1, sig.s2, sig.s3};
  std::ostringstream os;
  for (int i = 0; i < 3; ++i) {
    if (!(s[i] >= 1.0 - tol) || !(s[i] <= 2.0 + tol)) {
      os << "component " << i + 1 << " = " << s[i] << " outside [1, 2]";
      return {false, os.str()};
    }
  }
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    double margin = 2.0 + s[i] - s[j] - s[k];
    if (!(margin > 0.0)) {
      os << "2 + s" << i + 1 << " - s" << j + 1 << " - s" << k + 1 << " = "
         << margin << " is not strictly positive";
      return {false, os.str()};
    }
  }
  double total = s[0] + s[1] + s[2];
  if (!(total - 3.0 >= -tol)) {
    os << "s1 + s2 + s3 - 3 = " << total - 3.0 << " is negative";
    return {false, os.str()};
  }
  for (int i = 0; i < 3; ++i) {
    int j = (i + 1) % 3, k = (i + 2) % 3;
    double margin = total - s[j] * s[k] - 2.0;
    if (!(margin >= -tol)) {
      os << "s1 + s2 + s3 - s" << j + 1 << "*s" << k + 1 << " - 2 = " << margin
         << " is negative";
      return {false, os.str()};
    }
  }
  return {true, ""};
}

bool signature_feasible(const Signature& s, double tol) {
  return check_signature(s, tol).ok;
}

Rat i2_weight(const Rat& z0, const Rat& z1) {
  if (z0 <= 0) throw ConstraintError("i2_weight needs z0 > 0");
  if (z1 < z0 || z1 >= 2 * z0) {
    throw ConstraintError("i2_weight needs z0 <= z1 < 2*z0, got z1/z0 = " +
                          to_string(Rat(z1 / z0)));
  }
  return 2 * (z1 - z0) / (2 * z0 - z1);
}

double i2_weight(double z0, double z1) {
  require_positive_finite(z0, "z0");
  if (!(z1 >= z0) || !(z1 < 2.0 * z0)) {
    std::ostringstream os;
    os << "i2_weight needs z0 <= z1 < 2*z0, got z1/z0 = " << z1 / z0;
    throw ConstraintError(os.str());
  }
  return 2.0 * (z1 - z0) / (2.0 * z0 - z1);
}

I3Weights i3_weights(const Signature& sig) {
  FeasibilityReport feas = check_signature(sig, kFeasSlack);
  if (!feas.ok) {
    throw ConstraintError("i3_weights needs a feasible signature: " + feas.detail);
  }
  const double s[3] = {sig.s1, sig.s2, sig.s3};

  I3Weights out;
  out.r = s[0] + s[1] + s[2] - 2.0;
  for (int i = 0; i < 3; ++i) {
    out.s_factors[i] = 2.0 + s[i] - s[(i + 1) % 3] - s[(i + 2) % 3];
  }
  for (int i = 0; i < 3; ++i) {
    double q = out.r * out.s_factors[i] /
               (out.s_factors[(i + 1) % 3] * out.s_factors[(i + 2) % 3]);
    // q >= 1 up to rounding whenever the pairwise product constraint holds;
    // negative weights are off the ferromagnetic domain, so trim the noise.
    out.d[i] = std::max(0.0, -1.0 + std::sqrt(std::max(q, 0.0)));
  }
  out.base =
      std::sqrt(out.r / (out.s_factors[0] * out.s_factors[1] * out.s_factors[2]));

  // Round-trip self-check: evaluating the gadget exactly at these weights must
  // reproduce the requested ratios and the scale byproduct.
  WeightedMatroid gadget = unit_weighted(fixed_i3());
  for (int i = 0; i < 3; ++i) {
    gadget.set_weight("e" + std::to_string(i + 1), Rat(out.d[i]));
  }
  MinorVector3 z = minor_vector_3(gadget, {"p1", "p2", "p3"});
  Signature got = signature_of(z);
  const double back[3] = {got.s1, got.s2, got.s3};
  for (int i = 0; i < 3; ++i) {
    if (std::abs(back[i] - s[i]) > kRoundTripTol * s[i]) {
      std::ostringstream os;
      os << "gadget weight synthesis failed its round-trip check: component "
         << i + 1 << " reproduced " << back[i] << " instead of " << s[i];
      throw std::logic_error(os.str());
    }
  }
  double z0 = to_double(z.del);
  if (std::abs(z0 - out.base) > kRoundTripTol * out.base) {
    std::ostringstream os;
    os << "gadget scale byproduct mismatch: deletion value " << z0
       << " differs from sqrt(R/(S1*S2*S3)) = " << out.base;
    throw std::logic_error(os.str());
  }
  return out;
}

Signature clamp_signature(const std::array<double, 3>& s_sorted, double chi) {
  require_positive_finite(chi, "chi");
  for (double v : s_sorted) {
    require_positive_finite(v, "signature component");
  }
  if (!(s_sorted[0] <= s_sorted[1] && s_sorted[1] <= s_sorted[2])) {
    throw ConstraintError("clamp_signature needs its input sorted ascending");
  }
  const double delta = 4.0 * std::exp(1.0) * chi;
  if (delta > kMaxDelta) {
    std::ostringstream os;
    os << "clamp_signature noise scale too large: 4*e*chi = " << delta
       << " exceeds " << kMaxDelta;
    throw ConstraintError(os.str());
  }

  Signature out;
  if (s_sorted[1] - s_sorted[0] <= 5.0 * delta) {
    // Near-tie of the two smallest: merge them and retreat from the upper end.
    out.s1 = std::min(std::max(1.0, s_sorted[1]), 2.0 - delta);
    out.s2 = out.s1;
    out.s3 = std::min(std::max(1.0, s_sorted[2]), 2.0 - delta);
  } else {
    // Clear gap: push the smallest up, cap the rest at the upper end.
    out.s1 = s_sorted[0] + 4.0 * delta;
    out.s2 = std::min(s_sorted[1], 2.0);
    out.s3 = std::min(s_sorted[2], 2.0);
  }

  FeasibilityReport feas = check_signature(out, kFeasSlack);
  if (!feas.ok) {
    throw ConstraintError(
        "clamp_signature produced an infeasible triple (no feasible signature "
        "is within the stated noise of the input): " +
        feas.detail);
  }
  return out;
}

std::pair<double, double> clamp_2sum(double z0_noisy, double z1_noisy, double chi) {
  require_positive_finite(z0_noisy, "z0");
  require_positive_finite(z1_noisy, "z1");
  require_positive_finite(chi, "chi");
  double z0 = z0_noisy * std::exp(chi);
  double z1 = z1_noisy;
  if (z1 <= z0) {
    z1 = z0;
  } else if (z1 >= 2.0 * z0) {
    z1 = 2.0 * z0;
  }
  return {z0, z1};
}

double bilinear_d3_f(const std::array<double, 4>& x, const std::array<double, 4>& y) {
  const Mat4& d = d3_matrix();
  double acc = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      acc += d[i][j] * x[i] * y[j];
    }
  }
  return acc;
}

bool bilinear_stability_check(const std::array<double, 4>& z,
                              const std::array<double, 4>& s,
                              const std::array<double, 4>& r, double eps) {
  if (!(eps > 0.0) || !(eps < 1.0)) {
    throw ConstraintError("bilinear_stability_check needs 0 < eps < 1");
  }
  auto validate = [](const std::array<double, 4>& v, const char* name) {
    for (double x : v) require_positive_finite(x, name);
    for (int i = 1; i < 4; ++i) {
      double ratio = v[i] / v[0];
      if (ratio < 1.0 - kFeasSlack || ratio > 2.0 + kFeasSlack) {
        std::ostringstream os;
        os << name << " component ratio " << ratio << " is outside [1, 2]";
        throw ConstraintError(os.str());
      }
    }
  };
  validate(z, "z");
  validate(s, "s");
  validate(r, "r");
  for (int i = 0; i < 4; ++i) {
    if (std::abs(std::log(s[i] / r[i])) > eps * (1.0 + kFeasSlack)) {
      std::ostringstream os;
      os << "components " << i << " of s and r are further apart than e^eps";
      throw ConstraintError(os.str());
    }
  }
  double with_s = bilinear_d3_f(z, s);
  double with_r = bilinear_d3_f(z, r);
  double stretch = std::exp(56.0 * eps);
  double slack = 1.0 + kFeasSlack;
  return with_r <= stretch * with_s * slack &&
         with_r >= with_s / stretch / slack;
}

Replacement2 replace_2sum(const WeightedMatroidF& w1, const WeightedMatroidF& w2,
                          const Label& p, double eps_local, const ZOracle& oracle) {
  require_positive_finite(eps_local, "eps_local");
  if (!w1.matroid.has(p) || !w2.matroid.has(p)) {
    throw ConstraintError("replace_2sum: shared element '" + p +
                          "' must belong to both sides");
  }
  if (!oracle) throw ConstraintError("replace_2sum needs an oracle");

  const double chi = eps_local * kRho;
  double z0_noisy = oracle(weighted_deletion(w2, {p}), chi);
  double z1_noisy = oracle(weighted_con_del(w2, p, {}), chi);
  require_positive_finite(z0_noisy, "oracle value for the deletion minor");
  require_positive_finite(z1_noisy, "oracle value for the contraction minor");

  auto [z0, z1] = clamp_2sum(z0_noisy, z1_noisy, chi);
  // The clamp may land exactly on the open upper end z1 = 2*z0, where the
  // gadget weight diverges; a hair inside costs less than the noise budget.
  z1 = std::min(z1, (2.0 - 1e-12) * z0);

  Replacement2 out;
  out.d = i2_weight(z0, z1);
  out.c = 2.0 * z0 / (2.0 + out.d);
  out.z0_clamped = z0;
  out.z1_clamped = z1;
  out.w1_prime = w1;
  out.w1_prime.set_weight(p, out.d);
  return out;
}

Replacement3 replace_3sum(const WeightedMatroidF& w1, const WeightedMatroidF& w2,
                          const std::array<Label, 3>& t, double eps_local,
                          const ZOracle& oracle) {
  require_positive_finite(eps_local, "eps_local");
  for (const Label& e : t) {
    if (!w1.matroid.has(e) || !w2.matroid.has(e)) {
      throw ConstraintError("replace_3sum: shared element '" + e +
                            "' must belong to both sides");
    }
  }
  if (!oracle) throw ConstraintError("replace_3sum needs an oracle");

  const double chi = eps_local * kRho;
  const double acc = chi / 2.0;  // per-minor accuracy; ratios land within chi
  LabelSet t_set(t.begin(), t.end());
  if (t_set.size() != 3) {
    throw ConstraintError("replace_3sum needs three distinct shared elements");
  }

  std::array<double, 4> zt{};
  zt[0] = oracle(weighted_deletion(w2, t_set), acc);
  for (int i = 0; i < 3; ++i) {
    LabelSet drop = t_set;
    drop.erase(t[i]);
    zt[i + 1] = oracle(weighted_con_del(w2, t[i], drop), acc);
  }
  for (double v : zt) require_positive_finite(v, "oracle value for a minor");

  std::array<double, 3> ratios = {zt[1] / zt[0], zt[2] / zt[0], zt[3] / zt[0]};
  std::array<int, 3> order = {0, 1, 2};
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return ratios[a] < ratios[b]; });
  std::array<double, 3> sorted = {ratios[order[0]], ratios[order[1]],
                                  ratios[order[2]]};

  Signature clamped_sorted = clamp_signature(sorted, chi);
  const double cs[3] = {clamped_sorted.s1, clamped_sorted.s2, clamped_sorted.s3};
  std::array<double, 3> unsorted{};
  for (int i = 0; i < 3; ++i) unsorted[order[i]] = cs[i];

  Replacement3 out;
  out.clamped = Signature{unsorted[0], unsorted[1], unsorted[2]};
  out.weights = i3_weights(out.clamped);
  out.c = zt[0] / out.weights.base;
  out.w1_prime = w1;
  for (int i = 0; i < 3; ++i) {
    out.w1_prime.set_weight(t[i], out.weights.d[i]);
  }
  return out;
}

}  // namespace matising
