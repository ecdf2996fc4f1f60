#include "matising/sums.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

#include "matising/errors.hpp"

namespace matising {

namespace {

template <std::size_t N>
using IntMat = std::array<std::array<int, N>, N>;

template <std::size_t N>
IntMat<N> congruence(const IntMat<N>& v, const IntMat<N>& d) {
  // v^T d v
  IntMat<N> dv{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      int s = 0;
      for (std::size_t k = 0; k < N; ++k) s += d[i][k] * v[k][j];
      dv[i][j] = s;
    }
  }
  IntMat<N> out{};
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) {
      int s = 0;
      for (std::size_t k = 0; k < N; ++k) s += v[k][i] * dv[k][j];
      out[i][j] = s;
    }
  }
  return out;
}

template <std::size_t N>
std::size_t rational_rank(const IntMat<N>& m) {
  std::vector<std::vector<Rat>> rows(N, std::vector<Rat>(N));
  for (std::size_t i = 0; i < N; ++i) {
    for (std::size_t j = 0; j < N; ++j) rows[i][j] = m[i][j];
  }
  std::size_t rank = 0;
  for (std::size_t col = 0; col < N && rank < N; ++col) {
    std::size_t pivot = rank;
    while (pivot < N && rows[pivot][col] == 0) ++pivot;
    if (pivot == N) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t i = 0; i < N; ++i) {
      if (i == rank || rows[i][col] == 0) continue;
      const Rat f = rows[i][col] / rows[rank][col];
      for (std::size_t j = col; j < N; ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

const Mat2& d2_matrix() {
  static const Mat2 m = {{{2, -1}, {-1, 1}}};
  return m;
}

const Mat2& c2_matrix() {
  static const Mat2 m = {{{2, 1}, {1, 1}}};
  return m;
}

const Mat2& v2_matrix() {
  static const Mat2 m = {{{1, 1}, {2, 1}}};
  return m;
}

const Mat4& d3_matrix() {
  static const Mat4 m = {{{4, -1, -1, -1}, {-1, 1, 0, 0}, {-1, 0, 1, 0}, {-1, 0, 0, 1}}};
  return m;
}

const Mat5& d3_padded() {
  static const Mat5 m = {{{4, -1, -1, -1, 0},
                          {-1, 1, 0, 0, 0},
                          {-1, 0, 1, 0, 0},
                          {-1, 0, 0, 1, 0},
                          {0, 0, 0, 0, 0}}};
  return m;
}

const Mat5& c3_matrix() {
  static const Mat5 m = {{{4, 2, 2, 2, 1},
                          {2, 2, 1, 1, 1},
                          {2, 1, 2, 1, 1},
                          {2, 1, 1, 2, 1},
                          {1, 1, 1, 1, 1}}};
  return m;
}

const Mat5& v3_matrix() {
  static const Mat5 m = {{{1, 1, 1, 1, 1},
                          {2, 2, 1, 1, 1},
                          {2, 1, 2, 1, 1},
                          {2, 1, 1, 2, 1},
                          {4, 2, 2, 2, 1}}};
  return m;
}

IdentityReport matrix_identities() {
  IdentityReport report;
  const Mat2 c2 = congruence<2>(v2_matrix(), d2_matrix());
  if (c2 != c2_matrix()) {
    return {false, "V2^T D2 V2 differs from C2"};
  }
  const Mat5 c3 = congruence<5>(v3_matrix(), d3_padded());
  if (c3 != c3_matrix()) {
    return {false, "V3^T D3_padded V3 differs from C3"};
  }
  if (const std::size_t r = rational_rank<5>(c3_matrix()); r != 4) {
    return {false, "rank(C3) = " + std::to_string(r) + ", expected 4"};
  }
  return report;
}

unsigned excess_rank(const BinaryMatroid& m, const LabelSet& a, const LabelSet& s) {
  LabelSet both = a;
  both.insert(s.begin(), s.end());
  return m.rank(both) - m.rank(a);
}

std::size_t predicate_index(const BinaryMatroid& m, const LabelSet& a,
                            const std::array<Label, 3>& t) {
  unsigned pattern = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (excess_rank(m, a, {t[i]})) pattern |= 1u << i;
  }
  switch (pattern) {
    case 0b000: return 0;
    case 0b110: return 1;
    case 0b101: return 2;
    case 0b011: return 3;
    case 0b111: return 4;
    default:
      throw std::logic_error("impossible rank-increment pattern against a circuit");
  }
}

int rank_correction(const BinaryMatroid& m1, const BinaryMatroid& m2,
                    const BinaryMatroid& delta, const LabelSet& a1, const LabelSet& a2) {
  LabelSet joint = a1;
  joint.insert(a2.begin(), a2.end());
  return static_cast<int>(delta.rank(joint)) - static_cast<int>(m1.rank(a1)) -
         static_cast<int>(m2.rank(a2));
}

int predicted_correction_2(bool increment1, bool increment2) {
  return (!increment1 && !increment2) ? -1 : 0;
}

int predicted_correction_3(std::size_t cls1, std::size_t cls2) {
  const int entry = c3_matrix()[cls1][cls2];
  switch (entry) {
    case 1: return 0;
    case 2: return -1;
    case 4: return -2;
    default: throw std::logic_error("unexpected class-combination entry");
  }
}

Rat bilinear_d2(const MinorVector2& a, const MinorVector2& b) {
  const std::array<Rat, 2> x = {a.del, a.con};
  const std::array<Rat, 2> y = {b.del, b.con};
  const Mat2& d = d2_matrix();
  Rat total = 0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) total += d[i][j] * x[i] * y[j];
  }
  return total;
}

Rat bilinear_d3(const MinorVector3& a, const MinorVector3& b) {
  const std::array<Rat, 4> x = {a.del, a.con1, a.con2, a.con3};
  const std::array<Rat, 4> y = {b.del, b.con1, b.con2, b.con3};
  const Mat4& d = d3_matrix();
  Rat total = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) total += d[i][j] * x[i] * y[j];
  }
  return total;
}

std::array<Rat, 5> extended_z(const std::array<Rat, 5>& zhat) {
  const Mat5& v = v3_matrix();
  std::array<Rat, 5> out;
  for (std::size_t i = 0; i < 5; ++i) {
    Rat s = 0;
    for (std::size_t j = 0; j < 5; ++j) s += v[i][j] * zhat[j];
    out[i] = s;
  }
  return out;
}

SplitCheck verify_2sum_split(const WeightedMatroid& w1, const WeightedMatroid& w2) {
  std::vector<Label> shared;
  for (const Label& e : w1.matroid.labels()) {
    if (w2.matroid.has(e)) shared.push_back(e);
  }
  if (shared.size() != 1) {
    throw ConstraintError("2-sum split needs exactly one common label, found " +
                          std::to_string(shared.size()));
  }
  if (Validity v = relaxed_2sum(w1.matroid, w2.matroid); !v.ok) {
    throw ConstraintError("2-sum split preconditions failed: " + v.reason);
  }
  SplitCheck out;
  out.direct = tutte_exact(weighted_delta_sum(w1, w2));
  out.split = bilinear_d2(minor_vector_2(w1, shared[0]), minor_vector_2(w2, shared[0]));
  return out;
}

SplitCheck verify_3sum_split(const WeightedMatroid& w1, const WeightedMatroid& w2) {
  std::vector<Label> shared;
  for (const Label& e : w1.matroid.labels()) {
    if (w2.matroid.has(e)) shared.push_back(e);
  }
  if (shared.size() != 3) {
    throw ConstraintError("3-sum split needs exactly three common labels, found " +
                          std::to_string(shared.size()));
  }
  if (Validity v = relaxed_3sum(w1.matroid, w2.matroid); !v.ok) {
    throw ConstraintError("3-sum split preconditions failed: " + v.reason);
  }
  std::sort(shared.begin(), shared.end());
  const std::array<Label, 3> t = {shared[0], shared[1], shared[2]};
  SplitCheck out;
  out.direct = tutte_exact(weighted_delta_sum(w1, w2));
  out.split = bilinear_d3(minor_vector_3(w1, t), minor_vector_3(w2, t));
  return out;
}

}  // namespace matising
