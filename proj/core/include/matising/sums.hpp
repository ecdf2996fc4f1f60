#pragma once

#include <array>
#include <cstddef>
#include <string>

#include "matising/matroid.hpp"
#include "matising/rational.hpp"
#include "matising/tutte.hpp"

namespace matising {

using Mat2 = std::array<std::array<int, 2>, 2>;
using Mat4 = std::array<std::array<int, 4>, 4>;
using Mat5 = std::array<std::array<int, 5>, 5>;

/// Constant matrices of the 2-sum splitting identity:
/// Z(M1 Δ M2) = z(M1)^T D2 z(M2) with z(M) = (Z(M\p), Z(M/p)).
const Mat2& d2_matrix();
/// C2[j][k] = 2^{-c} for the rank correction c of combining subsets with
/// rank-increment classes j,k against the shared element.
const Mat2& c2_matrix();
/// Class-to-minor transition: z = V2 * zhat. C2 = V2^T D2 V2.
const Mat2& v2_matrix();

/// 3-sum analogue: Z(M1 Δ M2) = z(M1)^T D3 z(M2) with
/// z(M) = (Z(M\T), Z(M/p1\p2p3), Z(M/p2\p1p3), Z(M/p3\p1p2)).
const Mat4& d3_matrix();
/// D3 padded with a zero fifth row/column (class-4 coordinate).
const Mat5& d3_padded();
/// C3[j][k] = 2^{-c} for rank-increment classes j,k against the shared circuit.
const Mat5& c3_matrix();
/// z-extended = V3 * zhat; C3 = V3^T D3_padded V3.
const Mat5& v3_matrix();

struct IdentityReport {
  bool ok = true;
  std::string detail;
};

/// Verifies C2 = V2^T D2 V2, C3 = V3^T D3_padded V3, and rank(C3) = 4 over
/// the rationals. Returns the first discrepancy in `detail` when not ok.
IdentityReport matrix_identities();

/// e(A, S) = rank(A union S) - rank(A).
unsigned excess_rank(const BinaryMatroid& m, const LabelSet& a, const LabelSet& s);

/// Class 0..4 of subset A against the 3-element circuit t, by the pattern of
/// singleton rank increments: (0,0,0) -> 0, (1,1,1) -> 4, two-ones patterns
/// take the class of their zero position.
std::size_t predicate_index(const BinaryMatroid& m, const LabelSet& a,
                            const std::array<Label, 3>& t);

/// Observed rank correction of a delta-sum:
/// r_delta(A1 ∪ A2) − r_{M1}(A1) − r_{M2}(A2), for Ai avoiding the shared set.
int rank_correction(const BinaryMatroid& m1, const BinaryMatroid& m2,
                    const BinaryMatroid& delta, const LabelSet& a1, const LabelSet& a2);

/// Predicted corrections: -1 exactly when the shared element lies in both
/// closures; and -log2(C3[cls1][cls2]) for the shared-circuit case.
int predicted_correction_2(bool increment1, bool increment2);
int predicted_correction_3(std::size_t cls1, std::size_t cls2);

Rat bilinear_d2(const MinorVector2& a, const MinorVector2& b);
Rat bilinear_d3(const MinorVector3& a, const MinorVector3& b);

/// Extended minor vector (z0..z4) = V3 * zhat; z4 is the full-contraction
/// value that the 4-entry minor vector omits.
std::array<Rat, 5> extended_z(const std::array<Rat, 5>& zhat);

struct SplitCheck {
  Rat direct;  // Z of the delta-sum, one subset sweep
  Rat split;   // bilinear form in the sides' minor vectors
};

/// Both evaluation routes for a 2-sum (shared = exactly one common label,
/// not a loop on either side) and a 3-sum (shared = common 3-label circuit).
SplitCheck verify_2sum_split(const WeightedMatroid& w1, const WeightedMatroid& w2);
SplitCheck verify_3sum_split(const WeightedMatroid& w1, const WeightedMatroid& w2);

}  // namespace matising
