#include "matising/decompose.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "matising/errors.hpp"

namespace matising {

namespace {

constexpr std::size_t kRealizationBudget = 20'000'000;

struct XorBasis {
  std::uint64_t slot[64] = {};

  std::uint64_t reduce(std::uint64_t w) const {
    while (w) {
      const int b = std::countr_zero(w);
      if (!slot[b]) return w;
      w ^= slot[b];
    }
    return 0;
  }

  // Returns false if w was already in the span.
  bool insert(std::uint64_t w) {
    w = reduce(w);
    if (!w) return false;
    slot[std::countr_zero(w)] = w;
    return true;
  }
};

/// Basis of { v in span(rows) : v & avoid == 0 }.
std::vector<std::uint64_t> span_avoiding(std::vector<std::uint64_t> rows,
                                         std::uint64_t avoid) {
  std::vector<bool> used(rows.size(), false);
  for (std::uint64_t m = avoid; m; m &= m - 1) {
    const std::uint64_t bit = m & (~m + 1);
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
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!used[i] && rows[i]) out.push_back(rows[i]);
  }
  return out;
}

struct FundamentalData {
  std::uint64_t basis_mask = 0;
  // (dependent column, its fundamental circuit as a column mask, itself included)
  std::vector<std::pair<std::size_t, std::uint64_t>> circuits;
};

FundamentalData fundamental_circuits(const BinaryMatroid& m) {
  FundamentalData out;
  struct Entry {
    std::uint64_t vec = 0;    // reduced column
    std::uint64_t combo = 0;  // columns whose sum equals vec
  };
  Entry slot[64] = {};
  for (std::size_t j = 0; j < m.size(); ++j) {
    std::uint64_t w = m.matrix().col_word(j);
    std::uint64_t combo = std::uint64_t{1} << j;
    bool inserted = false;
    while (w) {
      const int b = std::countr_zero(w);
      if (slot[b].vec) {
        w ^= slot[b].vec;
        combo ^= slot[b].combo;
      } else {
        slot[b] = {w, combo};
        out.basis_mask |= std::uint64_t{1} << j;
        inserted = true;
        break;
      }
    }
    if (!inserted) out.circuits.emplace_back(j, combo);
  }
  return out;
}

struct UnionFind {
  std::vector<std::size_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

std::vector<Label> append_markers(const BinaryMatroid& m, std::uint64_t side_mask,
                                  const std::vector<Label>& markers) {
  std::vector<Label> out;
  for (std::uint64_t b = side_mask; b; b &= b - 1) {
    out.push_back(m.labels()[static_cast<std::size_t>(std::countr_zero(b))]);
  }
  std::sort(out.begin(), out.end());
  for (const Label& p : markers) out.push_back(p);
  return out;
}

/// Remaps a full-coordinate mask into side coordinates given by `labels1`
/// order (side elements sorted first, markers last).
std::uint64_t remap_mask(const BinaryMatroid& m, std::uint64_t mask,
                         const std::map<Label, std::size_t>& pos) {
  std::uint64_t out = 0;
  for (std::uint64_t b = mask; b; b &= b - 1) {
    const auto j = static_cast<std::size_t>(std::countr_zero(b));
    out |= std::uint64_t{1} << pos.at(m.labels()[j]);
  }
  return out;
}

std::map<Label, std::size_t> positions_of(const std::vector<Label>& labels) {
  std::map<Label, std::size_t> pos;
  for (std::size_t j = 0; j < labels.size(); ++j) pos[labels[j]] = j;
  return pos;
}

unsigned lambda_of(const BinaryMatroid& m, std::uint64_t side_mask) {
  const std::uint64_t rest = m.ground_mask() & ~side_mask;
  return m.rank_mask(side_mask) + m.rank_mask(rest) - m.rank();
}

/// Lexicographic enumeration (by sorted element label) of size-k subsets;
/// fn returns true to stop. Returns true if stopped.
bool for_each_subset(const BinaryMatroid& m, std::size_t k,
                     const std::function<bool(std::uint64_t)>& fn) {
  std::vector<std::size_t> order(m.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&m](std::size_t a, std::size_t b) {
    return m.labels()[a] < m.labels()[b];
  });
  if (k > m.size()) return false;
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  while (true) {
    std::uint64_t mask = 0;
    for (const std::size_t i : idx) mask |= std::uint64_t{1} << order[i];
    if (fn(mask)) return true;
    // next combination
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (idx[i] != i + m.size() - k) {
        ++idx[i];
        for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
        break;
      }
      if (i == 0) return false;
    }
    if (k == 0) return false;
  }
}

/// Scan exact k-separations most balanced first (side sizes m/2 down to
/// min_side), calling `attempt` on each; the first engaged result wins.
/// Candidates whose side-matroid construction fails are skipped, so an
/// unusable separation (Seymour side conditions unmet) never blocks a
/// usable one elsewhere.
template <class Try>
auto scan_separations(const BinaryMatroid& m, const DecompLimits& limits, unsigned k,
                      std::size_t min_side, Try&& attempt)
    -> decltype(attempt(LabelSet{})) {
  using Result = decltype(attempt(LabelSet{}));
  if (m.size() > limits.separation_search_max) {
    throw SizeLimitError("separation search limited to " +
                         std::to_string(limits.separation_search_max) + " elements");
  }
  if (m.size() < 2 * min_side) return Result{};
  const unsigned r = m.rank();
  for (std::size_t s = m.size() / 2; s >= min_side; --s) {
    Result out{};
    for_each_subset(m, s, [&](std::uint64_t mask) {
      if (m.rank_mask(mask) + m.rank_mask(m.ground_mask() & ~mask) != r + k - 1) {
        return false;
      }
      out = attempt(m.labels_of(mask));
      return static_cast<bool>(out);
    });
    if (out) return out;
  }
  return Result{};
}

Label local_fresh_marker(const BinaryMatroid& m, std::size_t& counter) {
  while (true) {
    Label name = "s" + std::to_string(++counter);
    if (!m.has(name)) return name;
  }
}

}  // namespace

std::string_view to_string(LeafTag tag) {
  switch (tag) {
    case LeafTag::Graphic: return "graphic";
    case LeafTag::Cographic: return "cographic";
    case LeafTag::R10: return "r10";
    case LeafTag::Small: return "small";
  }
  return "?";
}

std::optional<LeafTag> leaf_tag_from(std::string_view text) {
  if (text == "graphic") return LeafTag::Graphic;
  if (text == "cographic") return LeafTag::Cographic;
  if (text == "r10") return LeafTag::R10;
  if (text == "small") return LeafTag::Small;
  return std::nullopt;
}

CertShape CertShape::clone() const {
  CertShape out;
  out.tag = tag;
  out.elements = elements;
  out.k = k;
  out.shared = shared;
  if (left) out.left = std::make_unique<CertShape>(left->clone());
  if (right) out.right = std::make_unique<CertShape>(right->clone());
  return out;
}

std::vector<LabelSet> components(const BinaryMatroid& m) {
  const FundamentalData fd = fundamental_circuits(m);
  UnionFind uf(m.size());
  for (const auto& [dep, circuit] : fd.circuits) {
    for (std::uint64_t b = circuit; b; b &= b - 1) {
      uf.unite(dep, static_cast<std::size_t>(std::countr_zero(b)));
    }
  }
  std::map<std::size_t, LabelSet> groups;
  for (std::size_t j = 0; j < m.size(); ++j) {
    groups[uf.find(j)].insert(m.labels()[j]);
  }
  std::vector<LabelSet> out;
  out.reserve(groups.size());
  for (auto& [root, labels] : groups) out.push_back(std::move(labels));
  return out;
}

std::optional<std::pair<LabelSet, LabelSet>> find_1_separation(const BinaryMatroid& m) {
  std::vector<LabelSet> comps = components(m);
  if (comps.size() <= 1) return std::nullopt;
  // Smallest component on the right; ties by label sequence.
  std::size_t best = 0;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    const auto& a = comps[i];
    const auto& b = comps[best];
    if (a.size() < b.size() ||
        (a.size() == b.size() &&
         std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()))) {
      best = i;
    }
  }
  LabelSet side1;
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (i != best) side1.insert(comps[i].begin(), comps[i].end());
  }
  return std::make_pair(side1, comps[best]);
}

TwoSumSplit build_2sum(const BinaryMatroid& m, const LabelSet& side2, const Label& marker) {
  if (m.has(marker)) {
    throw DecompositionError("2-sum marker '" + marker + "' collides with an element");
  }
  const std::uint64_t mask2 = m.mask_of(side2);
  const std::uint64_t mask1 = m.ground_mask() & ~mask2;
  if (std::popcount(mask1) < 2 || std::popcount(mask2) < 2) {
    throw DecompositionError("2-sum sides need at least 2 elements each");
  }
  if (lambda_of(m, mask2) != 1) {
    throw DecompositionError("2-sum partition is not an exact 2-separation");
  }

  const std::vector<std::uint64_t> cyc = m.cycle_basis();
  const std::vector<std::uint64_t> c10 = span_avoiding(cyc, mask2);
  const std::vector<std::uint64_t> c20 = span_avoiding(cyc, mask1);

  XorBasis q;
  for (const std::uint64_t v : c10) q.insert(v);
  std::uint64_t cstar = 0;
  for (const std::uint64_t c : cyc) {
    if (q.reduce(c & mask1)) {
      cstar = c;
      break;
    }
  }
  if (!cstar) throw std::logic_error("build_2sum: no crossing cycle despite lambda=1");

  auto side_matroid = [&m](std::uint64_t side_mask, const std::vector<Label>& markers,
                           const std::vector<std::uint64_t>& inner, std::uint64_t crossing,
                           std::uint64_t marker_bits) {
    const std::vector<Label> labels = append_markers(m, side_mask, markers);
    const auto pos = positions_of(labels);
    std::vector<std::uint64_t> gens;
    for (const std::uint64_t v : inner) gens.push_back(remap_mask(m, v, pos));
    gens.push_back(remap_mask(m, crossing & side_mask, pos) | marker_bits);
    return std::make_pair(labels, gens);
  };

  const std::uint64_t pbit1 = std::uint64_t{1} << std::popcount(mask1);
  const std::uint64_t pbit2 = std::uint64_t{1} << std::popcount(mask2);
  auto [labels1, gens1] = side_matroid(mask1, {marker}, c10, cstar, pbit1);
  auto [labels2, gens2] = side_matroid(mask2, {marker}, c20, cstar, pbit2);

  TwoSumSplit out{matroid_from_cycles(labels1, gens1), matroid_from_cycles(labels2, gens2),
                  marker};
  if (Validity v = validate_2sum(out.m1, out.m2); !v.ok) {
    throw DecompositionError("2-sum side conditions failed: " + v.reason);
  }
  if (!same_cycle_space(delta_sum(out.m1, out.m2), m)) {
    throw DecompositionError("2-sum reconstruction does not match the input");
  }
  return out;
}

ThreeSumSplit build_3sum(const BinaryMatroid& m, const LabelSet& side2,
                         const std::array<Label, 3>& markers) {
  for (const Label& p : markers) {
    if (m.has(p)) {
      throw DecompositionError("3-sum marker '" + p + "' collides with an element");
    }
  }
  if (markers[0] == markers[1] || markers[0] == markers[2] || markers[1] == markers[2]) {
    throw DecompositionError("3-sum markers must be distinct");
  }
  const std::uint64_t mask2 = m.mask_of(side2);
  const std::uint64_t mask1 = m.ground_mask() & ~mask2;
  if (std::popcount(mask1) < 4 || std::popcount(mask2) < 4) {
    throw DecompositionError("3-sum sides need at least 4 elements each");
  }
  if (lambda_of(m, mask2) != 2) {
    throw DecompositionError("3-sum partition is not an exact 3-separation");
  }

  const std::vector<std::uint64_t> cyc = m.cycle_basis();
  const std::vector<std::uint64_t> c10 = span_avoiding(cyc, mask2);
  const std::vector<std::uint64_t> c20 = span_avoiding(cyc, mask1);

  XorBasis q;
  for (const std::uint64_t v : c10) q.insert(v);
  std::array<std::uint64_t, 2> crossing = {0, 0};
  std::size_t found = 0;
  for (const std::uint64_t c : cyc) {
    const std::uint64_t res = q.reduce(c & mask1);
    if (res) {
      crossing[found++] = c;
      q.insert(res);
      if (found == 2) break;
    }
  }
  if (found != 2) throw std::logic_error("build_3sum: quotient dimension mismatch");

  const std::vector<Label> marker_list(markers.begin(), markers.end());
  auto side_matroid = [&](std::uint64_t side_mask, const std::vector<std::uint64_t>& inner) {
    const std::vector<Label> labels = append_markers(m, side_mask, marker_list);
    const auto pos = positions_of(labels);
    const std::size_t base = labels.size() - 3;
    const std::uint64_t p1 = std::uint64_t{1} << base;
    const std::uint64_t p2 = std::uint64_t{1} << (base + 1);
    const std::uint64_t p3 = std::uint64_t{1} << (base + 2);
    std::vector<std::uint64_t> gens;
    for (const std::uint64_t v : inner) gens.push_back(remap_mask(m, v, pos));
    gens.push_back(p1 | p2 | p3);
    gens.push_back(remap_mask(m, crossing[0] & side_mask, pos) | p2 | p3);
    gens.push_back(remap_mask(m, crossing[1] & side_mask, pos) | p1 | p3);
    return std::make_pair(labels, gens);
  };

  auto [labels1, gens1] = side_matroid(mask1, c10);
  auto [labels2, gens2] = side_matroid(mask2, c20);
  ThreeSumSplit out{matroid_from_cycles(labels1, gens1),
                    matroid_from_cycles(labels2, gens2), markers};
  if (Validity v = validate_3sum(out.m1, out.m2); !v.ok) {
    throw DecompositionError("3-sum side conditions failed: " + v.reason);
  }
  if (!same_cycle_space(delta_sum(out.m1, out.m2), m)) {
    throw DecompositionError("3-sum reconstruction does not match the input");
  }
  return out;
}

namespace {

std::optional<TwoSumSplit> scan_2sum(const BinaryMatroid& m, const DecompLimits& limits,
                                     const std::function<Label()>& fresh) {
  return scan_separations(m, limits, 2, 2,
                          [&](const LabelSet& side2) -> std::optional<TwoSumSplit> {
                            try {
                              return build_2sum(m, side2, fresh());
                            } catch (const DecompositionError&) {
                              return std::nullopt;
                            }
                          });
}

std::optional<ThreeSumSplit> scan_3sum(const BinaryMatroid& m, const DecompLimits& limits,
                                       const std::function<Label()>& fresh) {
  return scan_separations(m, limits, 3, 4,
                          [&](const LabelSet& side2) -> std::optional<ThreeSumSplit> {
                            try {
                              const Label a = fresh(), b = fresh(), c = fresh();
                              return build_3sum(m, side2, {a, b, c});
                            } catch (const DecompositionError&) {
                              return std::nullopt;
                            }
                          });
}

}  // namespace

std::optional<TwoSumSplit> find_2sum(const BinaryMatroid& m, const DecompLimits& limits) {
  std::size_t counter = 0;
  return scan_2sum(m, limits, [&] { return local_fresh_marker(m, counter); });
}

std::optional<ThreeSumSplit> find_3sum(const BinaryMatroid& m, const DecompLimits& limits) {
  std::size_t counter = 0;
  return scan_3sum(m, limits, [&] { return local_fresh_marker(m, counter); });
}

// ---------------------------------------------------------------------------
// Graph realization
// ---------------------------------------------------------------------------

namespace {

/// Spanning-forest embedding search for a connected, loopless matroid.
/// Tree (basis) edges are placed with canonical vertex numbering; every
/// non-basis element is forced onto the endpoints of its fundamental-circuit
/// path as soon as that path is available.
class ForestSearch {
 public:
  explicit ForestSearch(const BinaryMatroid& m) : m_(m) {
    const FundamentalData fd = fundamental_circuits(m);
    basis_mask_ = fd.basis_mask;
    deps_ = fd.circuits;
    order_ = plan_order();
    edge_of_.assign(m.size(), {-1, -1});
  }

  std::optional<Multigraph> run() {
    if (m_.size() == 0) return Multigraph{1, {}};
    if (!dfs(0)) return std::nullopt;
    Multigraph g;
    g.vertices = used_;
    for (std::size_t j = 0; j < m_.size(); ++j) {
      g.edges.push_back({static_cast<std::size_t>(edge_of_[j].first),
                         static_cast<std::size_t>(edge_of_[j].second), m_.labels()[j]});
    }
    return g;
  }

 private:
  std::vector<std::size_t> plan_order() const {
    // Place basis elements so fundamental circuits complete early.
    std::vector<std::size_t> basis_cols;
    for (std::uint64_t b = basis_mask_; b; b &= b - 1) {
      basis_cols.push_back(static_cast<std::size_t>(std::countr_zero(b)));
    }
    std::vector<std::size_t> order;
    std::uint64_t placed = 0;
    auto gain = [&](std::size_t col) {
      int g = 0;
      for (const auto& [dep, circ] : deps_) {
        const std::uint64_t need = circ & basis_mask_;
        if ((need >> col & 1u) && std::popcount(need & ~placed) <= 3) ++g;
      }
      return g;
    };
    std::vector<bool> taken(basis_cols.size(), false);
    for (std::size_t step = 0; step < basis_cols.size(); ++step) {
      std::size_t best = basis_cols.size();
      int best_gain = -1;
      for (std::size_t i = 0; i < basis_cols.size(); ++i) {
        if (taken[i]) continue;
        const int g = gain(basis_cols[i]);
        if (g > best_gain) {
          best_gain = g;
          best = i;
        }
      }
      taken[best] = true;
      placed |= std::uint64_t{1} << basis_cols[best];
      order.push_back(basis_cols[best]);
    }
    return order;
  }

  bool connected_in_forest(int u, int v) const {
    // BFS over placed tree edges.
    std::vector<int> stack = {u};
    std::uint64_t seen = std::uint64_t{1} << u;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      if (x == v) return true;
      for (std::uint64_t b = placed_ & basis_mask_; b; b &= b - 1) {
        const auto j = static_cast<std::size_t>(std::countr_zero(b));
        const auto [a, c] = edge_of_[j];
        int other = -1;
        if (a == x) other = c;
        if (c == x) other = a;
        if (other >= 0 && !(seen >> other & 1u)) {
          seen |= std::uint64_t{1} << other;
          stack.push_back(other);
        }
      }
    }
    return false;
  }

  // Places every dependent element whose circuit is fully available; returns
  // the list of newly placed columns, or nullopt on contradiction.
  std::optional<std::vector<std::size_t>> settle_forced() {
    std::vector<std::size_t> placed_now;
    bool progress = true;
    while (progress) {
      progress = false;
      for (const auto& [dep, circ] : deps_) {
        if (placed_ >> dep & 1u) continue;
        const std::uint64_t need = circ & basis_mask_;
        if (need & ~placed_) continue;
        // Endpoint degrees of the circuit's tree-edge set.
        std::map<int, int> degree;
        for (std::uint64_t b = need; b; b &= b - 1) {
          const auto j = static_cast<std::size_t>(std::countr_zero(b));
          ++degree[edge_of_[j].first];
          ++degree[edge_of_[j].second];
        }
        std::vector<int> ends;
        bool ok = true;
        for (const auto& [v, d] : degree) {
          if (d == 1) ends.push_back(v);
          if (d > 2) ok = false;
        }
        // A forest subgraph is a single path exactly when it has 2 leaves.
        if (!ok || ends.size() != 2) {
          for (const std::size_t j : placed_now) {
            placed_ &= ~(std::uint64_t{1} << j);
            edge_of_[j] = {-1, -1};
          }
          return std::nullopt;
        }
        edge_of_[dep] = {std::min(ends[0], ends[1]), std::max(ends[0], ends[1])};
        placed_ |= std::uint64_t{1} << dep;
        placed_now.push_back(dep);
        progress = true;
      }
    }
    return placed_now;
  }

  bool dfs(std::size_t step) {
    if (step == order_.size()) {
      // Everything dependent is forced by now; a full placement realizes m.
      return placed_ == (m_.size() == 64 ? ~std::uint64_t{0}
                                         : (std::uint64_t{1} << m_.size()) - 1);
    }
    const std::size_t col = order_[step];
    std::vector<std::pair<int, int>> candidates;
    for (int u = 0; u < static_cast<int>(used_); ++u) {
      for (int v = u + 1; v < static_cast<int>(used_); ++v) {
        if (!connected_in_forest(u, v)) candidates.emplace_back(u, v);
      }
    }
    for (int u = 0; u < static_cast<int>(used_); ++u) {
      candidates.emplace_back(u, static_cast<int>(used_));
    }
    candidates.emplace_back(static_cast<int>(used_), static_cast<int>(used_) + 1);

    for (const auto& [u, v] : candidates) {
      if (--budget_ == 0) {
        throw SizeLimitError("graph realization search exceeded its node budget");
      }
      const std::size_t prev_used = used_;
      used_ = std::max<std::size_t>(used_, static_cast<std::size_t>(v) + 1);
      edge_of_[col] = {u, v};
      placed_ |= std::uint64_t{1} << col;
      const auto forced = settle_forced();
      if (forced) {
        if (dfs(step + 1)) return true;
        for (const std::size_t j : *forced) {
          placed_ &= ~(std::uint64_t{1} << j);
          edge_of_[j] = {-1, -1};
        }
      }
      placed_ &= ~(std::uint64_t{1} << col);
      edge_of_[col] = {-1, -1};
      used_ = prev_used;
    }
    return false;
  }

  const BinaryMatroid& m_;
  std::uint64_t basis_mask_ = 0;
  std::vector<std::pair<std::size_t, std::uint64_t>> deps_;
  std::vector<std::size_t> order_;
  std::vector<std::pair<int, int>> edge_of_;
  std::uint64_t placed_ = 0;
  std::size_t used_ = 0;
  std::size_t budget_ = kRealizationBudget;
};

std::optional<Multigraph> realize_connected(const BinaryMatroid& m,
                                            const DecompLimits& limits);

/// Replace marker edges: g1's edge p is removed and g2 (minus its p edge) is
/// glued across the same endpoints.
Multigraph glue_on_edge(const Multigraph& g1, const Multigraph& g2, const Label& p) {
  auto find_edge = [&p](const Multigraph& g) {
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (g.edges[i].label == p) return i;
    }
    throw std::logic_error("glue_on_edge: marker edge missing");
  };
  const auto i1 = find_edge(g1);
  const auto i2 = find_edge(g2);
  const std::size_t a = g1.edges[i1].u, b = g1.edges[i1].v;
  const std::size_t c = g2.edges[i2].u, d = g2.edges[i2].v;

  Multigraph out;
  out.vertices = g1.vertices;
  for (std::size_t i = 0; i < g1.edges.size(); ++i) {
    if (i != i1) out.edges.push_back(g1.edges[i]);
  }
  std::vector<std::size_t> map2(g2.vertices);
  std::size_t next = g1.vertices;
  for (std::size_t x = 0; x < g2.vertices; ++x) {
    if (x == c) {
      map2[x] = a;
    } else if (x == d) {
      map2[x] = b;
    } else {
      map2[x] = next++;
    }
  }
  out.vertices = next;
  for (std::size_t i = 0; i < g2.edges.size(); ++i) {
    if (i != i2) {
      out.edges.push_back({map2[g2.edges[i].u], map2[g2.edges[i].v], g2.edges[i].label});
    }
  }
  return out;
}

std::optional<Multigraph> realize_connected(const BinaryMatroid& m,
                                            const DecompLimits& limits) {
  if (m.size() >= 4) {
    DecompLimits local = limits;
    local.separation_search_max = std::max(local.separation_search_max, m.size());
    if (const auto split = find_2sum(m, local)) {
      const auto g1 = realize_connected(split->m1, limits);
      if (!g1) return std::nullopt;
      const auto g2 = realize_connected(split->m2, limits);
      if (!g2) return std::nullopt;
      return glue_on_edge(*g1, *g2, split->p);
    }
  }
  return ForestSearch(m).run();
}

}  // namespace

std::optional<Multigraph> is_graphic(const BinaryMatroid& m, const DecompLimits& limits) {
  if (m.size() > limits.realization_search_max) {
    throw SizeLimitError("graph realization search limited to " +
                         std::to_string(limits.realization_search_max) + " elements");
  }
  LabelSet loops;
  for (const Label& e : m.labels()) {
    if (m.is_loop(e)) loops.insert(e);
  }
  const BinaryMatroid rest = m.deletion(loops);

  Multigraph out;
  out.vertices = 1;
  for (const Label& e : loops) out.edges.push_back({0, 0, e});
  for (const LabelSet& comp : components(rest)) {
    const auto g = realize_connected(rest.restriction(comp), limits);
    if (!g) return std::nullopt;
    // Coalesce each component at vertex 0 to stay within rank(E)+1 vertices.
    const std::size_t offset = out.vertices;
    for (const auto& e : g->edges) {
      const std::size_t u = e.u == 0 ? 0 : offset + e.u - 1;
      const std::size_t v = e.v == 0 ? 0 : offset + e.v - 1;
      out.edges.push_back({u, v, e.label});
    }
    out.vertices += g->vertices - 1;
  }
  if (!same_cycle_space(cycle_matroid(out), m)) {
    throw std::logic_error("is_graphic: realization failed the cycle-space check");
  }
  return out;
}

std::optional<Multigraph> is_cographic(const BinaryMatroid& m, const DecompLimits& limits) {
  return is_graphic(m.dual(), limits);
}

// ---------------------------------------------------------------------------
// R10 recognition
// ---------------------------------------------------------------------------

namespace {

struct CircuitProfile {
  // Sorted circuit sizes through each element, elements sorted canonically.
  std::vector<std::vector<int>> per_element;
  std::vector<int> all_sizes;
};

CircuitProfile circuit_profile(const BinaryMatroid& m) {
  CircuitProfile p;
  p.per_element.resize(m.size());
  for (const std::uint64_t c : m.circuits(12)) {
    const int size = std::popcount(c);
    p.all_sizes.push_back(size);
    for (std::uint64_t b = c; b; b &= b - 1) {
      p.per_element[static_cast<std::size_t>(std::countr_zero(b))].push_back(size);
    }
  }
  std::sort(p.all_sizes.begin(), p.all_sizes.end());
  for (auto& v : p.per_element) std::sort(v.begin(), v.end());
  std::sort(p.per_element.begin(), p.per_element.end());
  return p;
}

struct R10Match {
  const BinaryMatroid& m;
  const BinaryMatroid& ref;
  std::vector<std::size_t> image;  // m column -> ref column
  std::vector<bool> used;

  struct Entry {
    std::uint64_t vec = 0;
    std::uint64_t combo = 0;
  };
  std::vector<Entry> m_basis;

  explicit R10Match(const BinaryMatroid& m_in, const BinaryMatroid& ref_in)
      : m(m_in), ref(ref_in), image(10), used(10, false) {}

  // Reduce m's column j against the basis; empty optional when independent.
  std::optional<std::uint64_t> dependency(std::size_t j) const {
    std::uint64_t w = m.matrix().col_word(j);
    std::uint64_t combo = 0;
    std::uint64_t slots[64] = {};
    std::uint64_t combos[64] = {};
    for (const Entry& e : m_basis) {
      slots[std::countr_zero(e.vec)] = e.vec;
      combos[std::countr_zero(e.vec)] = e.combo;
    }
    while (w) {
      const int b = std::countr_zero(w);
      if (!slots[b]) return std::nullopt;
      w ^= slots[b];
      combo ^= combos[b];
    }
    return combo;
  }

  bool dfs(std::size_t depth) {
    if (depth == 10) return true;
    const auto combo = dependency(depth);
    for (std::size_t c = 0; c < 10; ++c) {
      if (used[c]) continue;
      if (combo) {
        // Mapped images must reproduce the same dependency.
        std::uint64_t x = ref.matrix().col_word(c);
        for (std::uint64_t b = *combo; b; b &= b - 1) {
          x ^= ref.matrix().col_word(image[static_cast<std::size_t>(std::countr_zero(b))]);
        }
        if (x != 0) continue;
      } else {
        // Image column must stay independent among mapped images.
        std::uint64_t slots[64] = {};
        for (std::size_t d = 0; d < depth; ++d) {
          std::uint64_t w = ref.matrix().col_word(image[d]);
          while (w) {
            const int b = std::countr_zero(w);
            if (slots[b]) {
              w ^= slots[b];
            } else {
              slots[b] = w;
              break;
            }
          }
        }
        std::uint64_t w = ref.matrix().col_word(c);
        bool independent = false;
        while (true) {
          if (!w) break;
          const int b = std::countr_zero(w);
          if (!slots[b]) {
            independent = true;
            break;
          }
          w ^= slots[b];
        }
        if (!independent) continue;
      }
      image[depth] = c;
      used[c] = true;
      Entry saved{};
      if (!combo) {
        // Insert m's column with combo tracking for later dependencies.
        std::uint64_t w = m.matrix().col_word(depth);
        std::uint64_t cb = std::uint64_t{1} << depth;
        std::uint64_t slots[64] = {}, combos[64] = {};
        for (const Entry& e : m_basis) {
          slots[std::countr_zero(e.vec)] = e.vec;
          combos[std::countr_zero(e.vec)] = e.combo;
        }
        while (w) {
          const int b = std::countr_zero(w);
          if (slots[b]) {
            w ^= slots[b];
            cb ^= combos[b];
          } else {
            break;
          }
        }
        saved = {w, cb};
        m_basis.push_back(saved);
      }
      if (dfs(depth + 1)) return true;
      if (!combo) m_basis.pop_back();
      used[c] = false;
    }
    return false;
  }
};

}  // namespace

bool is_r10(const BinaryMatroid& m) {
  if (m.size() != 10 || m.rank() != 5) return false;
  const BinaryMatroid& ref = fixed_r10();
  static const CircuitProfile ref_profile = circuit_profile(ref);
  const CircuitProfile mp = circuit_profile(m);
  if (mp.all_sizes != ref_profile.all_sizes || mp.per_element != ref_profile.per_element) {
    return false;
  }
  R10Match match(m, ref);
  return match.dfs(0);
}

// ---------------------------------------------------------------------------
// Decomposition driver
// ---------------------------------------------------------------------------

namespace {

struct MarkerGen {
  const BinaryMatroid* root;
  std::size_t next = 0;
  std::set<Label> issued;

  Label fresh() {
    while (true) {
      Label name = "s" + std::to_string(++next);
      if (!root->has(name) && !issued.count(name)) {
        issued.insert(name);
        return name;
      }
    }
  }
};

std::unique_ptr<DecompNode> leaf_node(BinaryMatroid m, LeafTag tag,
                                      std::optional<Multigraph> realization) {
  auto node = std::make_unique<DecompNode>();
  node->matroid = std::move(m);
  node->tag = tag;
  node->realization = std::move(realization);
  return node;
}

std::unique_ptr<DecompNode> search_decompose(const BinaryMatroid& m,
                                             const DecompLimits& limits, MarkerGen& gen) {
  if (m.size() <= limits.realization_search_max) {
    try {
      if (auto g = is_graphic(m, limits)) {
        return leaf_node(m, LeafTag::Graphic, std::move(g));
      }
      if (auto g = is_graphic(m.dual(), limits)) {
        return leaf_node(m, LeafTag::Cographic, std::move(g));
      }
    } catch (const SizeLimitError&) {
      // Realization search gave up; fall through to sums / small leaf.
    }
  }
  if (is_r10(m)) return leaf_node(m, LeafTag::R10, std::nullopt);

  if (const auto sep = find_1_separation(m)) {
    auto node = std::make_unique<DecompNode>();
    node->matroid = m;
    node->k = 1;
    node->left = search_decompose(m.restriction(sep->first), limits, gen);
    node->right = search_decompose(m.restriction(sep->second), limits, gen);
    return node;
  }
  if (m.size() <= limits.separation_search_max) {
    const auto fresh = [&gen] { return gen.fresh(); };
    if (auto split = scan_2sum(m, limits, fresh)) {
      auto node = std::make_unique<DecompNode>();
      node->matroid = m;
      node->k = 2;
      node->shared = {split->p};
      node->left = search_decompose(split->m1, limits, gen);
      node->right = search_decompose(split->m2, limits, gen);
      return node;
    }
    if (auto split = scan_3sum(m, limits, fresh)) {
      auto node = std::make_unique<DecompNode>();
      node->matroid = m;
      node->k = 3;
      node->shared = {split->t.begin(), split->t.end()};
      node->left = search_decompose(split->m1, limits, gen);
      node->right = search_decompose(split->m2, limits, gen);
      return node;
    }
    return leaf_node(m, LeafTag::Small, std::nullopt);
  }
  throw DecompositionError(
      "no decomposition found within the exhaustive-search limit (" +
      std::to_string(limits.separation_search_max) + " elements); supply a certificate");
}

std::unique_ptr<DecompNode> from_certificate(const BinaryMatroid& m, const CertShape& shape,
                                             const DecompLimits& limits,
                                             std::set<Label>& markers_seen,
                                             const std::string& path) {
  auto fail = [&path](const std::string& why) -> std::unique_ptr<DecompNode> {
    throw DecompositionError("certificate node " + path + ": " + why);
  };
  if (shape.is_leaf()) {
    const LabelSet listed(shape.elements.begin(), shape.elements.end());
    if (listed.size() != shape.elements.size()) return fail("duplicate leaf elements");
    if (listed != m.label_set()) return fail("leaf element list does not match the node's ground set");
    switch (*shape.tag) {
      case LeafTag::Graphic: {
        std::optional<Multigraph> g;
        try {
          g = is_graphic(m, limits);
        } catch (const SizeLimitError& e) {
          return fail(std::string("cannot verify graphic leaf: ") + e.what());
        }
        if (!g) return fail("leaf tagged graphic is not graphic");
        return leaf_node(m, LeafTag::Graphic, std::move(g));
      }
      case LeafTag::Cographic: {
        std::optional<Multigraph> g;
        try {
          g = is_graphic(m.dual(), limits);
        } catch (const SizeLimitError& e) {
          return fail(std::string("cannot verify cographic leaf: ") + e.what());
        }
        if (!g) return fail("leaf tagged cographic is not cographic");
        return leaf_node(m, LeafTag::Cographic, std::move(g));
      }
      case LeafTag::R10:
        if (!is_r10(m)) return fail("leaf tagged r10 does not match the fixed matroid");
        return leaf_node(m, LeafTag::R10, std::nullopt);
      case LeafTag::Small:
        if (m.size() > limits.separation_search_max) {
          return fail("small leaf larger than the evaluation limit");
        }
        return leaf_node(m, LeafTag::Small, std::nullopt);
    }
    return fail("unknown tag");
  }

  if (!shape.left || !shape.right) return fail("sum node missing a child");
  const std::size_t want_shared = shape.k == 1 ? 0 : shape.k == 2 ? 1 : 3;
  if (shape.k < 1 || shape.k > 3) return fail("sum arity must be 1, 2 or 3");
  if (shape.shared.size() != want_shared) return fail("wrong marker count for arity");
  for (const Label& p : shape.shared) {
    if (m.has(p)) return fail("marker '" + p + "' collides with an element of the node");
    if (!markers_seen.insert(p).second) return fail("marker '" + p + "' reused");
  }

  const LabelSet gl = cert_ground(*shape.left);
  const LabelSet gr = cert_ground(*shape.right);
  LabelSet e1 = gl, e2 = gr;
  for (const Label& p : shape.shared) {
    if (!gl.count(p) || !gr.count(p)) return fail("marker '" + p + "' missing from a child");
    e1.erase(p);
    e2.erase(p);
  }
  for (const Label& e : e1) {
    if (e2.count(e)) return fail("element '" + e + "' appears on both sides");
    if (!m.has(e)) return fail("element '" + e + "' not in the node's ground set");
  }
  for (const Label& e : e2) {
    if (!m.has(e)) return fail("element '" + e + "' not in the node's ground set");
  }
  if (e1.size() + e2.size() != m.size()) return fail("children do not partition the ground set");
  if (e1.empty() || e2.empty()) return fail("empty side");
  if (e2.size() > e1.size()) return fail("the right side must not be larger than the left");

  auto node = std::make_unique<DecompNode>();
  node->matroid = m;
  node->k = shape.k;
  node->shared = shape.shared;
  if (shape.k == 1) {
    const BinaryMatroid m1 = m.restriction(e1);
    const BinaryMatroid m2 = m.restriction(e2);
    if (m1.rank() + m2.rank() != m.rank()) return fail("parts are not a 1-separation");
    node->left = from_certificate(m1, *shape.left, limits, markers_seen, path + ".left");
    node->right = from_certificate(m2, *shape.right, limits, markers_seen, path + ".right");
    return node;
  }
  try {
    if (shape.k == 2) {
      TwoSumSplit split = build_2sum(m, e2, shape.shared[0]);
      node->left = from_certificate(split.m1, *shape.left, limits, markers_seen, path + ".left");
      node->right =
          from_certificate(split.m2, *shape.right, limits, markers_seen, path + ".right");
      return node;
    }
    ThreeSumSplit split = build_3sum(m, e2, {shape.shared[0], shape.shared[1], shape.shared[2]});
    node->left = from_certificate(split.m1, *shape.left, limits, markers_seen, path + ".left");
    node->right = from_certificate(split.m2, *shape.right, limits, markers_seen, path + ".right");
    return node;
  } catch (const DecompositionError& e) {
    const std::string what = e.what();
    if (what.rfind("certificate node", 0) == 0) throw;  // already annotated deeper
    return fail(what);
  }
}

CertShape shape_of_node(const DecompNode& node) {
  CertShape out;
  if (node.is_leaf()) {
    out.tag = node.tag;
    out.elements = node.matroid.labels();
    std::sort(out.elements.begin(), out.elements.end());
    return out;
  }
  out.k = node.k;
  out.shared = node.shared;
  out.left = std::make_unique<CertShape>(shape_of_node(*node.left));
  out.right = std::make_unique<CertShape>(shape_of_node(*node.right));
  return out;
}

}  // namespace

LabelSet cert_ground(const CertShape& shape) {
  if (shape.is_leaf()) return {shape.elements.begin(), shape.elements.end()};
  LabelSet out = cert_ground(*shape.left);
  const LabelSet right = cert_ground(*shape.right);
  out.insert(right.begin(), right.end());
  for (const Label& p : shape.shared) out.erase(p);
  return out;
}

DecompTree decompose(const BinaryMatroid& m, const DecompLimits& limits,
                     const CertShape* certificate) {
  DecompTree tree;
  if (certificate) {
    const LabelSet ground = cert_ground(*certificate);
    if (ground != m.label_set()) {
      throw DecompositionError("certificate ground set does not match the instance");
    }
    std::set<Label> markers_seen;
    tree.root = from_certificate(m, *certificate, limits, markers_seen, "root");
    return tree;
  }
  try {
    MarkerGen gen{&m};
    tree.root = search_decompose(m, limits, gen);
  } catch (const SizeLimitError& e) {
    throw DecompositionError(std::string("decomposition search hit a size limit: ") + e.what());
  }
  return tree;
}

CertShape shape_of(const DecompTree& tree) {
  if (!tree.root) throw std::logic_error("shape_of: empty tree");
  return shape_of_node(*tree.root);
}

}  // namespace matising
