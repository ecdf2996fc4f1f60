#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "matising/gf2.hpp"
#include "matising/rational.hpp"

namespace matising {

using Label = std::string;
using LabelSet = std::set<Label>;

/// Every ground set handled here fits one machine word.
inline constexpr std::size_t kMaxDim = Gf2Matrix::kMaxDim;

/// Binary matroid: the column matroid of a GF(2) matrix, elements named by
/// distinct string labels. Rank queries take label sets or column bitmasks.
class BinaryMatroid {
 public:
  BinaryMatroid() = default;
  BinaryMatroid(Gf2Matrix matrix, std::vector<Label> labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<Label>& labels() const { return labels_; }
  LabelSet label_set() const;
  const Gf2Matrix& matrix() const { return matrix_; }

  bool has(const Label& e) const;
  std::size_t index_of(const Label& e) const;
  std::uint64_t ground_mask() const;
  std::uint64_t mask_of(const LabelSet& subset) const;
  LabelSet labels_of(std::uint64_t mask) const;

  unsigned rank_mask(std::uint64_t subset_mask) const;
  unsigned rank(const LabelSet& subset) const;
  unsigned rank() const;

  bool is_loop(const Label& e) const;
  bool is_coloop(const Label& e) const;
  /// Minimal dependent set?
  bool is_circuit(const LabelSet& subset) const;

  BinaryMatroid deletion(const LabelSet& remove) const;
  BinaryMatroid contraction(const LabelSet& contract) const;
  BinaryMatroid restriction(const LabelSet& keep) const;
  BinaryMatroid dual() const;

  /// Basis of the cycle space (disjoint unions of circuits) as bitmasks.
  std::vector<std::uint64_t> cycle_basis() const;
  /// All cycles, the empty set included. Guarded by a size limit.
  std::vector<std::uint64_t> cycles(std::size_t max_elements = 20) const;
  /// All circuits (minimal nonempty cycles). Guarded like cycles().
  std::vector<std::uint64_t> circuits(std::size_t max_elements = 20) const;

 private:
  Gf2Matrix matrix_;
  std::vector<Label> labels_;
  std::map<Label, std::size_t> index_;
};

/// Same ground set and identical cycle spaces (column order ignored).
bool same_cycle_space(const BinaryMatroid& a, const BinaryMatroid& b);

/// Matroid whose cycle space is the span of `generators` (bitmasks over the
/// label order given); the representation matrix is a basis of the
/// orthogonal complement.
BinaryMatroid matroid_from_cycles(const std::vector<Label>& labels,
                                  const std::vector<std::uint64_t>& generators);

/// Delta-sum M1 (triangle) M2 over the shared label set T = E(M1) cap E(M2):
/// cycle space { C1 xor C2 : Ci a cycle of Mi } restricted to the symmetric
/// difference of the ground sets. Requires M1|T = M2|T.
BinaryMatroid delta_sum(const BinaryMatroid& m1, const BinaryMatroid& m2);

struct Validity {
  bool ok = true;
  std::string reason;
};

/// Full 2-sum conditions: shared set is one element p, p neither loop nor
/// coloop on either side, both sides have at least 3 elements.
Validity validate_2sum(const BinaryMatroid& m1, const BinaryMatroid& m2);
/// Relaxed condition under which the 2-sum splitting identity holds:
/// shared element not a loop on either side.
Validity relaxed_2sum(const BinaryMatroid& m1, const BinaryMatroid& m2);
/// Full 3-sum conditions: shared set T of size 3, a circuit on both sides,
/// containing no cocircuit of either side, both sides at least 7 elements.
Validity validate_3sum(const BinaryMatroid& m1, const BinaryMatroid& m2);
/// Relaxed condition for the 3-sum splitting identity: T a circuit on both sides.
Validity relaxed_3sum(const BinaryMatroid& m1, const BinaryMatroid& m2);

// Fixed matroids.
BinaryMatroid fixed_n1();  // single element "p", rank 1
BinaryMatroid fixed_n3();  // 3-circuit {p1,p2,p3}
BinaryMatroid fixed_i2();  // 2-circuit {p,e}
BinaryMatroid fixed_i3();  // triangle {p1,p2,p3} with parallel copies {e1,e2,e3}
BinaryMatroid fixed_r10(); // 10 elements, rank 5; self-verified on first use

/// Matroid with one nonnegative weight per element, aligned with labels().
template <class W>
struct BasicWeighted {
  BinaryMatroid matroid;
  std::vector<W> gamma;

  const W& weight(const Label& e) const { return gamma[matroid.index_of(e)]; }
  void set_weight(const Label& e, W w) { gamma[matroid.index_of(e)] = std::move(w); }
};

using WeightedMatroid = BasicWeighted<Rat>;     // exact oracle domain
using WeightedMatroidF = BasicWeighted<double>; // estimation domain

WeightedMatroid make_weighted(BinaryMatroid m, std::vector<Rat> gamma);
WeightedMatroidF make_weighted_f(BinaryMatroid m, std::vector<double> gamma);

/// Unit weights.
WeightedMatroid unit_weighted(BinaryMatroid m);

WeightedMatroidF to_float(const WeightedMatroid& w);

/// Weights for a minor of w.matroid: surviving labels keep their weight,
/// labels absent from `w` (fresh markers) get `fill`.
template <class W>
BasicWeighted<W> carry_weights(const BasicWeighted<W>& w, BinaryMatroid minor,
                               W fill = W{}) {
  std::vector<W> g;
  g.reserve(minor.size());
  for (const Label& e : minor.labels()) {
    g.push_back(w.matroid.has(e) ? w.gamma[w.matroid.index_of(e)] : fill);
  }
  return BasicWeighted<W>{std::move(minor), std::move(g)};
}

/// Delta-sum with weights inherited from the respective sides.
WeightedMatroid weighted_delta_sum(const WeightedMatroid& w1,
                                   const WeightedMatroid& w2);

}  // namespace matising
