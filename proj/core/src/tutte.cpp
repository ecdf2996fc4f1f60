#include "matising/tutte.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

#include "matising/errors.hpp"

namespace matising {

namespace {

bool weight_is_zero(const Rat& g) { return g == 0; }
bool weight_is_zero(double g) { return g == 0.0; }

Rat unit_weight(const Rat*) { return Rat(1); }
double unit_weight(const double*) { return 1.0; }

void check_sweep_size(const BinaryMatroid& m, const SweepOptions& opts) {
  if (m.size() > opts.max_elements) {
    throw SizeLimitError("subset sweep limited to " + std::to_string(opts.max_elements) +
                         " elements, got " + std::to_string(m.size()));
  }
}

/// Depth-first include/exclude sweep over the listed columns with an
/// incrementally maintained GF(2) basis. The leaf functor sees the subset's
/// rank, its weight product, and the basis slots (for span tests against
/// columns outside the sweep).
template <class W, class LeafFn>
class SubsetSweep {
 public:
  SubsetSweep(const Gf2Matrix& mat, const std::vector<W>& gamma,
              const std::vector<std::size_t>& cols, LeafFn& leaf)
      : mat_(mat), gamma_(gamma), cols_(cols), leaf_(leaf) {}

  void run() { recurse(0, unit_weight(static_cast<const W*>(nullptr))); }

  /// Start from a fixed include/exclude pattern over the first `depth`
  /// columns (bit i of `prefix` includes cols[i]). Returns false when the
  /// prefix hits a zero weight, i.e. the whole branch contributes nothing.
  bool run_prefix(std::uint32_t prefix, std::size_t depth) {
    W prod = unit_weight(static_cast<const W*>(nullptr));
    for (std::size_t i = 0; i < depth; ++i) {
      if (!(prefix >> i & 1u)) continue;
      const W& g = gamma_[cols_[i]];
      if (weight_is_zero(g)) return false;
      prod = prod * g;
      std::uint64_t v = reduce(mat_.col_word(cols_[i]));
      if (v) {
        slot_[std::countr_zero(v)] = v;
        ++rank_;
      }
    }
    recurse(depth, prod);
    return true;
  }

 private:
  std::uint64_t reduce(std::uint64_t w) const {
    while (w) {
      const int b = std::countr_zero(w);
      if (!slot_[b]) return w;
      w ^= slot_[b];
    }
    return 0;
  }

  void recurse(std::size_t d, const W& prod) {
    if (d == cols_.size()) {
      leaf_(rank_, prod, slot_);
      return;
    }
    recurse(d + 1, prod);  // exclude cols_[d]
    const W& g = gamma_[cols_[d]];
    if (weight_is_zero(g)) return;  // include branch contributes nothing
    const W next = prod * g;
    const std::uint64_t v = reduce(mat_.col_word(cols_[d]));
    if (v) {
      const int b = std::countr_zero(v);
      slot_[b] = v;
      ++rank_;
      recurse(d + 1, next);
      slot_[b] = 0;
      --rank_;
    } else {
      recurse(d + 1, next);
    }
  }

  const Gf2Matrix& mat_;
  const std::vector<W>& gamma_;
  const std::vector<std::size_t>& cols_;
  LeafFn& leaf_;
  std::uint64_t slot_[64] = {};
  unsigned rank_ = 0;
};

template <class W>
std::vector<std::size_t> all_columns(const BasicWeighted<W>& w) {
  std::vector<std::size_t> cols(w.matroid.size());
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  return cols;
}

/// bucket[r] = sum of gamma_A over subsets of rank r.
template <class W>
std::vector<W> rank_buckets(const BasicWeighted<W>& w, const SweepOptions& opts) {
  check_sweep_size(w.matroid, opts);
  const std::vector<std::size_t> cols = all_columns(w);
  const std::size_t nslots = w.matroid.rank() + 1;
  const W zero = W{};

  if (opts.threads <= 1 || cols.size() < 12) {
    std::vector<W> bucket(nslots, zero);
    auto leaf = [&bucket](unsigned rank, const W& prod, const std::uint64_t*) {
      bucket[rank] = bucket[rank] + prod;
    };
    SubsetSweep<W, decltype(leaf)> sweep(w.matroid.matrix(), w.gamma, cols, leaf);
    sweep.run();
    return bucket;
  }

  // Split the sweep over fixed prefixes; merge task buckets in task order so
  // the result does not depend on the thread count.
  const std::size_t depth = 6;
  const std::uint32_t tasks = 1u << depth;
  std::vector<std::vector<W>> partial(tasks, std::vector<W>(nslots, zero));
  std::atomic<std::uint32_t> next{0};
  auto worker = [&]() {
    while (true) {
      const std::uint32_t task = next.fetch_add(1);
      if (task >= tasks) return;
      auto& bucket = partial[task];
      auto leaf = [&bucket](unsigned rank, const W& prod, const std::uint64_t*) {
        bucket[rank] = bucket[rank] + prod;
      };
      SubsetSweep<W, decltype(leaf)> sweep(w.matroid.matrix(), w.gamma, cols, leaf);
      sweep.run_prefix(task, depth);
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < opts.threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  std::vector<W> bucket(nslots, zero);
  for (std::uint32_t task = 0; task < tasks; ++task) {
    for (std::size_t r = 0; r < nslots; ++r) bucket[r] = bucket[r] + partial[task][r];
  }
  return bucket;
}

/// Rank increment e(A, {p}) from the sweep basis: 1 when column p lies
/// outside span(A).
bool rank_increment(const Gf2Matrix& mat, std::size_t col, const std::uint64_t* slot) {
  std::uint64_t w = mat.col_word(col);
  while (w) {
    const int b = std::countr_zero(w);
    if (!slot[b]) return true;
    w ^= slot[b];
  }
  return false;
}

std::vector<std::size_t> columns_without(const BinaryMatroid& m,
                                         const std::vector<std::size_t>& removed) {
  std::vector<std::size_t> cols;
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (std::find(removed.begin(), removed.end(), j) == removed.end()) cols.push_back(j);
  }
  return cols;
}

Rat bucket_total(const std::vector<Rat>& bucket) {
  Rat total = 0;
  for (std::size_t r = 0; r < bucket.size(); ++r) total += div_pow2(bucket[r], r);
  return total;
}

}  // namespace

Rat tutte_exact(const WeightedMatroid& w, const SweepOptions& opts) {
  return bucket_total(rank_buckets(w, opts));
}

double tutte_float(const WeightedMatroidF& w, const SweepOptions& opts) {
  const std::vector<double> bucket = rank_buckets(w, opts);
  double total = 0.0;
  for (std::size_t r = 0; r < bucket.size(); ++r) {
    total += std::ldexp(bucket[r], -static_cast<int>(r));
  }
  return total;
}

Rat tutte_dc(const WeightedMatroid& w) {
  if (w.matroid.size() > 20) {
    throw SizeLimitError("deletion/contraction recursion limited to 20 elements");
  }
  if (w.matroid.size() == 0) return Rat(1);
  const Label e = w.matroid.labels().back();
  const Rat& g = w.weight(e);
  if (w.matroid.is_loop(e)) {
    return (1 + g) * tutte_dc(carry_weights(w, w.matroid.deletion({e})));
  }
  return tutte_dc(carry_weights(w, w.matroid.deletion({e}))) +
         div_pow2(g, 1) * tutte_dc(carry_weights(w, w.matroid.contraction({e})));
}

MinorVector2 minor_vector_2(const WeightedMatroid& w, const Label& p,
                            const SweepOptions& opts) {
  check_sweep_size(w.matroid, opts);
  const std::size_t pcol = w.matroid.index_of(p);
  const std::vector<std::size_t> cols = columns_without(w.matroid, {pcol});
  const std::size_t nslots = w.matroid.rank() + 1;
  std::vector<Rat> del_bucket(nslots, Rat(0));
  std::vector<Rat> con_bucket(nslots, Rat(0));
  const bool loop = w.matroid.is_loop(p);

  auto leaf = [&](unsigned rank, const Rat& prod, const std::uint64_t* slot) {
    del_bucket[rank] += prod;
    if (loop) return;
    // Z(M/p) term: gamma_A 2^{-(rank + e(A,p) - 1)}.
    const unsigned e = rank_increment(w.matroid.matrix(), pcol, slot) ? 1 : 0;
    con_bucket[rank + e - 1] += prod;
  };
  SubsetSweep<Rat, decltype(leaf)> sweep(w.matroid.matrix(), w.gamma, cols, leaf);
  sweep.run();

  MinorVector2 out;
  out.del = bucket_total(del_bucket);
  out.con = loop ? out.del : bucket_total(con_bucket);
  return out;
}

MinorVector3 minor_vector_3(const WeightedMatroid& w, const std::array<Label, 3>& t,
                            const SweepOptions& opts) {
  check_sweep_size(w.matroid, opts);
  std::array<std::size_t, 3> tcol{};
  for (std::size_t i = 0; i < 3; ++i) {
    tcol[i] = w.matroid.index_of(t[i]);
    if (w.matroid.is_loop(t[i])) {
      throw ConstraintError("contraction pivot '" + t[i] + "' is a loop");
    }
  }
  const std::vector<std::size_t> cols =
      columns_without(w.matroid, {tcol[0], tcol[1], tcol[2]});
  const std::size_t nslots = w.matroid.rank() + 1;
  std::vector<Rat> del_bucket(nslots, Rat(0));
  std::array<std::vector<Rat>, 3> con_bucket;
  con_bucket.fill(std::vector<Rat>(nslots, Rat(0)));

  auto leaf = [&](unsigned rank, const Rat& prod, const std::uint64_t* slot) {
    del_bucket[rank] += prod;
    for (std::size_t i = 0; i < 3; ++i) {
      const unsigned e = rank_increment(w.matroid.matrix(), tcol[i], slot) ? 1 : 0;
      con_bucket[i][rank + e - 1] += prod;
    }
  };
  SubsetSweep<Rat, decltype(leaf)> sweep(w.matroid.matrix(), w.gamma, cols, leaf);
  sweep.run();

  MinorVector3 out;
  out.del = bucket_total(del_bucket);
  out.con1 = bucket_total(con_bucket[0]);
  out.con2 = bucket_total(con_bucket[1]);
  out.con3 = bucket_total(con_bucket[2]);
  return out;
}

std::array<Rat, 5> zhat_vector(const WeightedMatroid& w, const std::array<Label, 3>& t,
                               const SweepOptions& opts) {
  check_sweep_size(w.matroid, opts);
  if (!w.matroid.is_circuit({t.begin(), t.end()})) {
    throw ConstraintError("rank-pattern classes need the shared triple to be a circuit");
  }
  std::array<std::size_t, 3> tcol{};
  for (std::size_t i = 0; i < 3; ++i) tcol[i] = w.matroid.index_of(t[i]);
  const std::vector<std::size_t> cols =
      columns_without(w.matroid, {tcol[0], tcol[1], tcol[2]});
  const std::size_t nslots = w.matroid.rank() + 1;
  std::array<std::vector<Rat>, 5> bucket;
  bucket.fill(std::vector<Rat>(nslots, Rat(0)));

  auto leaf = [&](unsigned rank, const Rat& prod, const std::uint64_t* slot) {
    unsigned pattern = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      if (rank_increment(w.matroid.matrix(), tcol[i], slot)) pattern |= 1u << i;
    }
    std::size_t cls;
    switch (pattern) {
      case 0b000: cls = 0; break;
      case 0b111: cls = 4; break;
      case 0b110: cls = 1; break;  // zero at position 1
      case 0b101: cls = 2; break;  // zero at position 2
      case 0b011: cls = 3; break;  // zero at position 3
      default:
        // A single rank increment cannot happen when T is a circuit: the
        // two spanned elements would force the third into the span.
        throw std::logic_error("impossible rank-increment pattern against a circuit");
    }
    bucket[cls][rank] += prod;
  };
  SubsetSweep<Rat, decltype(leaf)> sweep(w.matroid.matrix(), w.gamma, cols, leaf);
  sweep.run();

  std::array<Rat, 5> out;
  for (std::size_t k = 0; k < 5; ++k) out[k] = bucket_total(bucket[k]);
  return out;
}

Rat dual_evaluate(const WeightedMatroid& w, const SweepOptions& opts) {
  LabelSet zeros;
  for (const Label& e : w.matroid.labels()) {
    if (w.weight(e) == 0) zeros.insert(e);
  }
  const WeightedMatroid trimmed = carry_weights(w, w.matroid.deletion(zeros));
  if (trimmed.matroid.size() == 0) return Rat(1);

  Rat scale = 1;
  std::vector<Rat> dual_gamma;
  dual_gamma.reserve(trimmed.matroid.size());
  const BinaryMatroid dual = trimmed.matroid.dual();
  for (const Label& e : dual.labels()) {
    const Rat& g = trimmed.weight(e);
    scale *= g;
    dual_gamma.push_back(2 / g);
  }
  const Rat dual_value = tutte_exact(make_weighted(dual, std::move(dual_gamma)), opts);
  return div_pow2(scale, trimmed.matroid.rank()) * dual_value;
}

std::pair<Rat, Rat> potts_crosscheck(const Multigraph& g,
                                     const std::vector<Rat>& edge_weights,
                                     const SweepOptions& opts) {
  if (edge_weights.size() != g.edges.size()) {
    throw ConstraintError("one weight per edge required");
  }
  if (g.vertices > 20) throw SizeLimitError("coloring sum limited to 20 vertices");

  const Rat matroid_route =
      tutte_exact(make_weighted(cycle_matroid(g), edge_weights), opts);

  Rat coloring_sum = 0;
  for (std::uint64_t coloring = 0; coloring < (std::uint64_t{1} << g.vertices);
       ++coloring) {
    Rat prod = 1;
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const bool mono = ((coloring >> g.edges[i].u) & 1u) == ((coloring >> g.edges[i].v) & 1u);
      if (mono) prod *= 1 + edge_weights[i];
    }
    coloring_sum += prod;
  }
  return {matroid_route, div_pow2(coloring_sum, g.vertices)};
}

}  // namespace matising
