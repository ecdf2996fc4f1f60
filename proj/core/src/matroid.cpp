#include "matising/matroid.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "matising/decompose.hpp"
#include "matising/errors.hpp"

namespace matising {

namespace {

std::vector<Label> sorted_labels(const LabelSet& s) {
  return {s.begin(), s.end()};
}

}  // namespace

BinaryMatroid::BinaryMatroid(Gf2Matrix matrix, std::vector<Label> labels)
    : matrix_(std::move(matrix)), labels_(std::move(labels)) {
  if (matrix_.cols() != labels_.size()) {
    throw std::invalid_argument("BinaryMatroid: label count != column count");
  }
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (labels_[j].empty()) {
      throw std::invalid_argument("BinaryMatroid: empty label");
    }
    if (!index_.emplace(labels_[j], j).second) {
      throw std::invalid_argument("BinaryMatroid: duplicate label '" + labels_[j] + "'");
    }
  }
}

LabelSet BinaryMatroid::label_set() const {
  return {labels_.begin(), labels_.end()};
}

bool BinaryMatroid::has(const Label& e) const {
  return index_.count(e) != 0;
}

std::size_t BinaryMatroid::index_of(const Label& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) {
    throw std::out_of_range("BinaryMatroid: unknown element '" + e + "'");
  }
  return it->second;
}

std::uint64_t BinaryMatroid::ground_mask() const {
  return size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
}

std::uint64_t BinaryMatroid::mask_of(const LabelSet& subset) const {
  std::uint64_t mask = 0;
  for (const Label& e : subset) mask |= std::uint64_t{1} << index_of(e);
  return mask;
}

LabelSet BinaryMatroid::labels_of(std::uint64_t mask) const {
  LabelSet out;
  while (mask) {
    const int j = std::countr_zero(mask);
    out.insert(labels_[static_cast<std::size_t>(j)]);
    mask &= mask - 1;
  }
  return out;
}

unsigned BinaryMatroid::rank_mask(std::uint64_t subset_mask) const {
  return matrix_.rank_of_columns(subset_mask);
}

unsigned BinaryMatroid::rank(const LabelSet& subset) const {
  return rank_mask(mask_of(subset));
}

unsigned BinaryMatroid::rank() const {
  return rank_mask(ground_mask());
}

bool BinaryMatroid::is_loop(const Label& e) const {
  return matrix_.col_word(index_of(e)) == 0;
}

bool BinaryMatroid::is_coloop(const Label& e) const {
  const std::uint64_t rest = ground_mask() & ~(std::uint64_t{1} << index_of(e));
  return rank_mask(rest) + 1 == rank();
}

bool BinaryMatroid::is_circuit(const LabelSet& subset) const {
  if (subset.empty()) return false;
  const std::uint64_t mask = mask_of(subset);
  const auto n = static_cast<unsigned>(subset.size());
  if (rank_mask(mask) != n - 1) return false;
  for (std::uint64_t m = mask; m;) {
    const std::uint64_t bit = m & (~m + 1);
    if (rank_mask(mask & ~bit) != n - 1) return false;
    m &= m - 1;
  }
  return true;
}

BinaryMatroid BinaryMatroid::deletion(const LabelSet& remove) const {
  LabelSet keep = label_set();
  for (const Label& e : remove) {
    if (!has(e)) throw std::out_of_range("deletion: unknown element '" + e + "'");
    keep.erase(e);
  }
  return restriction(keep);
}

BinaryMatroid BinaryMatroid::restriction(const LabelSet& keep) const {
  std::vector<Label> new_labels;
  new_labels.reserve(keep.size());
  for (const Label& e : keep) {
    index_of(e);  // validates
    new_labels.push_back(e);
  }
  Gf2Matrix sub(matrix_.rows(), new_labels.size());
  for (std::size_t j = 0; j < new_labels.size(); ++j) {
    const std::size_t src = index_of(new_labels[j]);
    for (std::size_t i = 0; i < matrix_.rows(); ++i) {
      sub.set(i, j, matrix_.get(i, src));
    }
  }
  return BinaryMatroid(sub.row_reduced(), std::move(new_labels));
}

BinaryMatroid BinaryMatroid::contraction(const LabelSet& contract) const {
  const std::uint64_t t_mask = mask_of(contract);
  std::vector<std::uint64_t> rows(matrix_.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = matrix_.row_word(i);

  // Pivot on the contracted columns; the rows left over, restricted to the
  // remaining columns, represent M / contract.
  std::vector<bool> used(rows.size(), false);
  for (std::uint64_t m = t_mask; m; m &= m - 1) {
    const std::uint64_t bit = m & (~m + 1);
    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!used[i] && (rows[i] & bit)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;  // loop within the contracted set
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != pivot && (rows[i] & bit)) rows[i] ^= rows[pivot];
    }
    used[pivot] = true;
  }

  std::vector<Label> new_labels;
  std::vector<std::size_t> src_cols;
  for (std::size_t j = 0; j < labels_.size(); ++j) {
    if (!(t_mask >> j & 1u)) {
      new_labels.push_back(labels_[j]);
      src_cols.push_back(j);
    }
  }
  std::vector<std::uint64_t> kept;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!used[i]) kept.push_back(rows[i]);
  }
  Gf2Matrix out(kept.size(), new_labels.size());
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < src_cols.size(); ++j) {
      out.set(i, j, (kept[i] >> src_cols[j]) & 1u);
    }
  }
  return BinaryMatroid(out.row_reduced(), std::move(new_labels));
}

BinaryMatroid BinaryMatroid::dual() const {
  const Gf2Matrix rref = matrix_.row_reduced();
  const std::size_t m = size();
  std::vector<int> pivot_row_of_col(m, -1);
  for (std::size_t i = 0; i < rref.rows(); ++i) {
    pivot_row_of_col[static_cast<std::size_t>(std::countr_zero(rref.row_word(i)))] =
        static_cast<int>(i);
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < m; ++j) {
    if (pivot_row_of_col[j] < 0) free_cols.push_back(j);
  }
  // Standard form: if this reduces to [I | A] (up to column order), the dual
  // is [A^T | I] over the same column order.
  Gf2Matrix out(free_cols.size(), m);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    const std::size_t f = free_cols[k];
    out.set(k, f, true);
    for (std::size_t j = 0; j < m; ++j) {
      const int r = pivot_row_of_col[j];
      if (r >= 0 && rref.get(static_cast<std::size_t>(r), f)) out.set(k, j, true);
    }
  }
  return BinaryMatroid(std::move(out), labels_);
}

std::vector<std::uint64_t> BinaryMatroid::cycle_basis() const {
  return matrix_.nullspace_basis();
}

std::vector<std::uint64_t> BinaryMatroid::cycles(std::size_t max_elements) const {
  if (size() > max_elements) {
    throw SizeLimitError("cycles: ground set larger than " +
                         std::to_string(max_elements) + " elements");
  }
  const auto basis = cycle_basis();
  std::vector<std::uint64_t> out;
  out.reserve(std::size_t{1} << basis.size());
  out.push_back(0);
  std::uint64_t current = 0;
  for (std::uint64_t i = 1; i < (std::uint64_t{1} << basis.size()); ++i) {
    current ^= basis[static_cast<std::size_t>(std::countr_zero(i))];
    out.push_back(current);
  }
  return out;
}

std::vector<std::uint64_t> BinaryMatroid::circuits(std::size_t max_elements) const {
  std::vector<std::uint64_t> out;
  for (const std::uint64_t c : cycles(max_elements)) {
    if (c == 0) continue;
    const auto n = static_cast<unsigned>(std::popcount(c));
    if (rank_mask(c) != n - 1) continue;
    bool minimal = true;
    for (std::uint64_t m = c; m; m &= m - 1) {
      const std::uint64_t bit = m & (~m + 1);
      if (rank_mask(c & ~bit) != n - 1) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(c);
  }
  return out;
}

bool same_cycle_space(const BinaryMatroid& a, const BinaryMatroid& b) {
  if (a.label_set() != b.label_set()) return false;
  // Align both representation matrices on sorted label order; equal cycle
  // spaces are equivalent to equal row spaces of the representations.
  const std::vector<Label> order = sorted_labels(a.label_set());
  auto aligned = [&order](const BinaryMatroid& m) {
    Gf2Matrix g(m.matrix().rows(), order.size());
    for (std::size_t j = 0; j < order.size(); ++j) {
      const std::size_t src = m.index_of(order[j]);
      for (std::size_t i = 0; i < m.matrix().rows(); ++i) {
        g.set(i, j, m.matrix().get(i, src));
      }
    }
    return g;
  };
  return aligned(a).same_row_space(aligned(b));
}

BinaryMatroid matroid_from_cycles(const std::vector<Label>& labels,
                                  const std::vector<std::uint64_t>& generators) {
  const std::vector<std::uint64_t> rep = gf2_nullspace(generators, labels.size());
  Gf2Matrix mat(rep.size(), labels.size());
  for (std::size_t i = 0; i < rep.size(); ++i) {
    for (std::size_t j = 0; j < labels.size(); ++j) {
      mat.set(i, j, (rep[i] >> j) & 1u);
    }
  }
  return BinaryMatroid(mat.row_reduced(), labels);
}

BinaryMatroid delta_sum(const BinaryMatroid& m1, const BinaryMatroid& m2) {
  LabelSet shared;
  for (const Label& e : m1.labels()) {
    if (m2.has(e)) shared.insert(e);
  }
  if (!same_cycle_space(m1.restriction(shared), m2.restriction(shared))) {
    throw ConstraintError("delta_sum: shared restrictions differ");
  }

  LabelSet result_set;
  for (const Label& e : m1.labels()) {
    if (!shared.count(e)) result_set.insert(e);
  }
  for (const Label& e : m2.labels()) {
    if (!shared.count(e)) result_set.insert(e);
  }
  const std::vector<Label> result_labels = sorted_labels(result_set);
  const std::vector<Label> t_labels = sorted_labels(shared);
  const std::size_t n_e = result_labels.size();
  const std::size_t n = n_e + t_labels.size();
  if (n > Gf2Matrix::kMaxDim) {
    throw SizeLimitError("delta_sum: combined ground set larger than 64");
  }

  // Combined coordinates: result elements first, shared elements on top.
  std::map<Label, std::size_t> pos;
  for (std::size_t j = 0; j < result_labels.size(); ++j) pos[result_labels[j]] = j;
  for (std::size_t j = 0; j < t_labels.size(); ++j) pos[t_labels[j]] = n_e + j;

  auto embed = [&pos](const BinaryMatroid& m) {
    std::vector<std::uint64_t> rows;
    for (const std::uint64_t c : m.cycle_basis()) {
      std::uint64_t v = 0;
      for (std::uint64_t b = c; b; b &= b - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(b));
        v |= std::uint64_t{1} << pos.at(m.labels()[j]);
      }
      rows.push_back(v);
    }
    return rows;
  };

  // The amalgam cycle space is the span of both embedded cycle spaces; the
  // delta-sum keeps the members avoiding the shared coordinates.
  std::vector<std::uint64_t> rows = embed(m1);
  const std::vector<std::uint64_t> rows2 = embed(m2);
  rows.insert(rows.end(), rows2.begin(), rows2.end());

  std::vector<bool> used(rows.size(), false);
  for (std::size_t j = n_e; j < n; ++j) {
    const std::uint64_t bit = std::uint64_t{1} << j;
    std::size_t pivot = rows.size();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (!used[i] && (rows[i] & bit)) {
        pivot = i;
        break;
      }
    }
    if (pivot == rows.size()) continue;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i != pivot && (rows[i] & bit)) rows[i] ^= rows[pivot];
    }
    used[pivot] = true;
  }

  const std::uint64_t t_mask = ((n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1)) &
                               ~((std::uint64_t{1} << n_e) - 1);
  std::vector<std::uint64_t> gens;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (used[i]) continue;
    if (rows[i] & t_mask) {
      throw std::logic_error("delta_sum: shared coordinates survived elimination");
    }
    gens.push_back(rows[i]);
  }
  return matroid_from_cycles(result_labels, gens);
}

Validity validate_2sum(const BinaryMatroid& m1, const BinaryMatroid& m2) {
  LabelSet shared;
  for (const Label& e : m1.labels()) {
    if (m2.has(e)) shared.insert(e);
  }
  if (shared.size() != 1) return {false, "shared set must be a single element"};
  const Label p = *shared.begin();
  if (m1.size() < 3 || m2.size() < 3) return {false, "both sides need at least 3 elements"};
  if (m1.is_loop(p) || m2.is_loop(p)) return {false, "shared element is a loop"};
  if (m1.is_coloop(p) || m2.is_coloop(p)) return {false, "shared element is a coloop"};
  return {};
}

Validity relaxed_2sum(const BinaryMatroid& m1, const BinaryMatroid& m2) {
  LabelSet shared;
  for (const Label& e : m1.labels()) {
    if (m2.has(e)) shared.insert(e);
  }
  if (shared.size() != 1) return {false, "shared set must be a single element"};
  const Label p = *shared.begin();
  if (m1.is_loop(p) || m2.is_loop(p)) return {false, "shared element is a loop"};
  return {};
}

namespace {

Validity shared_triangle(const BinaryMatroid& m1, const BinaryMatroid& m2,
                         LabelSet& shared_out) {
  LabelSet shared;
  for (const Label& e : m1.labels()) {
    if (m2.has(e)) shared.insert(e);
  }
  if (shared.size() != 3) return {false, "shared set must have exactly 3 elements"};
  if (!m1.is_circuit(shared)) return {false, "shared set is not a circuit of the left side"};
  if (!m2.is_circuit(shared)) return {false, "shared set is not a circuit of the right side"};
  shared_out = shared;
  return {};
}

}  // namespace

Validity validate_3sum(const BinaryMatroid& m1, const BinaryMatroid& m2) {
  LabelSet shared;
  if (Validity v = shared_triangle(m1, m2, shared); !v.ok) return v;
  if (m1.size() < 7 || m2.size() < 7) return {false, "both sides need at least 7 elements"};
  // A set contains a cocircuit exactly when deleting it drops the rank.
  auto rest_rank_drops = [&shared](const BinaryMatroid& m) {
    LabelSet rest = m.label_set();
    for (const Label& e : shared) rest.erase(e);
    return m.rank(rest) < m.rank();
  };
  if (rest_rank_drops(m1)) return {false, "shared set contains a cocircuit of the left side"};
  if (rest_rank_drops(m2)) return {false, "shared set contains a cocircuit of the right side"};
  return {};
}

Validity relaxed_3sum(const BinaryMatroid& m1, const BinaryMatroid& m2) {
  LabelSet shared;
  return shared_triangle(m1, m2, shared);
}

BinaryMatroid fixed_n1() {
  return BinaryMatroid(Gf2Matrix::from_strings({"1"}), {"p"});
}

BinaryMatroid fixed_n3() {
  return BinaryMatroid(Gf2Matrix::from_strings({"101", "011"}), {"p1", "p2", "p3"});
}

BinaryMatroid fixed_i2() {
  return BinaryMatroid(Gf2Matrix::from_strings({"11"}), {"p", "e"});
}

BinaryMatroid fixed_i3() {
  return BinaryMatroid(Gf2Matrix::from_strings({"101101", "011011"}),
                       {"p1", "p2", "p3", "e1", "e2", "e3"});
}

BinaryMatroid fixed_r10() {
  static const BinaryMatroid instance = [] {
    // [I_5 | A] with A the circulant whose rows are cyclic shifts of 11001.
    Gf2Matrix mat(5, 10);
    std::vector<Label> labels;
    for (int j = 0; j < 10; ++j) labels.push_back("e" + std::to_string(j + 1));
    for (std::size_t i = 0; i < 5; ++i) {
      mat.set(i, i, true);
      for (int off : {0, 1, 4}) {
        mat.set(i, 5 + (i + static_cast<std::size_t>(off)) % 5, true);
      }
    }
    BinaryMatroid m(std::move(mat), std::move(labels));
    if (m.rank() != 5) throw std::logic_error("fixed_r10: rank != 5");
    for (const Label& e : m.labels()) {
      if (m.is_loop(e) || m.is_coloop(e)) {
        throw std::logic_error("fixed_r10: unexpected loop/coloop");
      }
    }
    if (is_graphic(m)) throw std::logic_error("fixed_r10: unexpectedly graphic");
    if (is_graphic(m.dual())) throw std::logic_error("fixed_r10: unexpectedly cographic");
    return m;
  }();
  return instance;
}

WeightedMatroid make_weighted(BinaryMatroid m, std::vector<Rat> gamma) {
  if (gamma.size() != m.size()) {
    throw std::invalid_argument("make_weighted: weight count != element count");
  }
  for (const Rat& g : gamma) {
    if (g < 0) throw ConstraintError("make_weighted: negative weight");
  }
  return {std::move(m), std::move(gamma)};
}

WeightedMatroidF make_weighted_f(BinaryMatroid m, std::vector<double> gamma) {
  if (gamma.size() != m.size()) {
    throw std::invalid_argument("make_weighted_f: weight count != element count");
  }
  for (const double g : gamma) {
    if (!(g >= 0)) throw ConstraintError("make_weighted_f: negative weight");
  }
  return {std::move(m), std::move(gamma)};
}

WeightedMatroid unit_weighted(BinaryMatroid m) {
  std::vector<Rat> gamma(m.size(), Rat(1));
  return {std::move(m), std::move(gamma)};
}

WeightedMatroidF to_float(const WeightedMatroid& w) {
  std::vector<double> g;
  g.reserve(w.gamma.size());
  for (const Rat& x : w.gamma) g.push_back(to_double(x));
  return {w.matroid, std::move(g)};
}

WeightedMatroid weighted_delta_sum(const WeightedMatroid& w1,
                                   const WeightedMatroid& w2) {
  BinaryMatroid m = delta_sum(w1.matroid, w2.matroid);
  std::vector<Rat> gamma;
  gamma.reserve(m.size());
  for (const Label& e : m.labels()) {
    gamma.push_back(w1.matroid.has(e) ? w1.weight(e) : w2.weight(e));
  }
  return {std::move(m), std::move(gamma)};
}

}  // namespace matising
