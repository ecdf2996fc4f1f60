#include "matising/gen.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <stdexcept>
#include <string>

#include "matising/errors.hpp"

namespace matising {

namespace {

std::uint64_t random_nonzero_column(std::size_t rows, Rng& rng) {
  const std::uint64_t top = (rows >= 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << rows) - 1);
  std::uniform_int_distribution<std::uint64_t> dist(1, top);
  return dist(rng);
}

Gf2Matrix matrix_from_columns(std::size_t rows, const std::vector<std::uint64_t>& cols) {
  std::vector<std::string> text(rows, std::string(cols.size(), '0'));
  for (std::size_t j = 0; j < cols.size(); ++j) {
    for (std::size_t i = 0; i < rows; ++i) {
      if ((cols[j] >> i) & 1) text[i][j] = '1';
    }
  }
  return Gf2Matrix::from_strings(text);
}

std::vector<Label> numbered_labels(const std::string& prefix, std::size_t n) {
  std::vector<Label> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

std::size_t pick(std::size_t lo, std::size_t hi, Rng& rng) {
  return lo + rng() % (hi - lo + 1);
}

}  // namespace

BinaryMatroid relabel(const BinaryMatroid& m, const std::map<Label, Label>& names) {
  std::vector<Label> labels;
  labels.reserve(m.size());
  for (const Label& e : m.labels()) {
    auto it = names.find(e);
    labels.push_back(it == names.end() ? e : it->second);
  }
  return BinaryMatroid(m.matrix(), std::move(labels));
}

BinaryMatroid random_binary_matroid(std::size_t elements, std::size_t rows, Rng& rng,
                                    const std::string& prefix) {
  if (elements == 0 || rows == 0 || rows > kMaxDim || elements > kMaxDim) {
    throw ConstraintError("random matroid dimensions out of range");
  }
  std::vector<std::uint64_t> cols;
  cols.reserve(elements);
  for (std::size_t j = 0; j < elements; ++j) cols.push_back(random_nonzero_column(rows, rng));
  return BinaryMatroid(matrix_from_columns(rows, cols), numbered_labels(prefix, elements));
}

BinaryMatroid random_with_triangle(std::size_t extra_elements, std::size_t rows, Rng& rng,
                                   const std::string& prefix) {
  if (rows < 2 || rows > kMaxDim || extra_elements + 3 > kMaxDim) {
    throw ConstraintError("triangle matroid dimensions out of range");
  }
  std::vector<std::uint64_t> cols;
  cols.reserve(extra_elements + 3);
  for (std::size_t j = 0; j < extra_elements; ++j) {
    cols.push_back(random_nonzero_column(rows, rng));
  }
  const std::uint64_t t1 = random_nonzero_column(rows, rng);
  std::uint64_t t2 = t1;
  while (t2 == t1) t2 = random_nonzero_column(rows, rng);
  cols.push_back(t1);
  cols.push_back(t2);
  cols.push_back(t1 ^ t2);

  std::vector<Label> labels = numbered_labels(prefix, extra_elements);
  labels.push_back("t1");
  labels.push_back("t2");
  labels.push_back("t3");
  return BinaryMatroid(matrix_from_columns(rows, cols), std::move(labels));
}

Multigraph random_multigraph(std::size_t vertices, std::size_t edges, Rng& rng,
                             const std::string& prefix) {
  if (vertices == 0 || edges + 1 < vertices) {
    throw ConstraintError("need at least vertices-1 edges for a connected multigraph");
  }
  Multigraph g;
  g.vertices = vertices;
  std::size_t next = 1;
  for (std::size_t v = 1; v < vertices; ++v) {
    g.edges.push_back({rng() % v, v, prefix + std::to_string(next++)});
  }
  while (g.edges.size() < edges) {
    const std::size_t u = rng() % vertices;
    std::size_t v = rng() % vertices;
    while (vertices > 1 && v == u) v = rng() % vertices;
    g.edges.push_back({u, v, prefix + std::to_string(next++)});
  }
  return g;
}

Multigraph multigraph_with_triangle(std::size_t vertices, std::size_t extra_edges,
                                    Rng& rng, const std::string& prefix) {
  if (vertices < 3) throw ConstraintError("a triangle needs at least 3 vertices");
  Multigraph g;
  g.vertices = vertices;
  g.edges.push_back({0, 1, "t1"});
  g.edges.push_back({1, 2, "t2"});
  g.edges.push_back({0, 2, "t3"});
  std::size_t next = 1;
  for (std::size_t v = 3; v < vertices; ++v) {
    g.edges.push_back({rng() % v, v, prefix + std::to_string(next++)});
  }
  for (std::size_t i = 0; i < extra_edges; ++i) {
    const std::size_t u = rng() % vertices;
    std::size_t v = rng() % vertices;
    while (v == u) v = rng() % vertices;
    g.edges.push_back({u, v, prefix + std::to_string(next++)});
  }
  return g;
}

std::vector<Rat> random_rationals(std::size_t n, Rng& rng, bool allow_zero) {
  std::vector<Rat> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    unsigned long num = (allow_zero && rng() % 8 == 0) ? 0 : 1 + rng() % 8;
    unsigned long den = 1 + rng() % 8;
    Rat g(num, den);
    g.canonicalize();
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<Rat> random_dyadics(std::size_t n, Rng& rng) {
  std::vector<Rat> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    unsigned long num = 1 + rng() % 16;
    unsigned long den = 1ul << (rng() % 5);
    Rat g(num, den);
    g.canonicalize();
    out.push_back(std::move(g));
  }
  return out;
}

namespace {

/// `size` elements: size-1 random columns plus "p" spanned by them — never a
/// loop (nonzero) nor a coloop (inside the span of the rest).
BinaryMatroid side_with_glue(std::size_t size, const std::string& prefix, Rng& rng) {
  const std::size_t rows = pick(2, std::max<std::size_t>(2, size - 1), rng);
  while (true) {
    std::vector<std::uint64_t> cols;
    for (std::size_t j = 0; j + 1 < size; ++j) {
      cols.push_back(random_nonzero_column(rows, rng));
    }
    std::uint64_t p = 0;
    for (const std::uint64_t c : cols) {
      if (rng() % 2) p ^= c;
    }
    if (p == 0) continue;
    cols.push_back(p);
    std::vector<Label> labels = numbered_labels(prefix, size - 1);
    labels.push_back("p");
    return BinaryMatroid(matrix_from_columns(rows, cols), std::move(labels));
  }
}

}  // namespace

std::pair<BinaryMatroid, BinaryMatroid> planted_2sum_pair(std::size_t size1,
                                                          std::size_t size2, Rng& rng) {
  if (size1 < 3 || size2 < 3) {
    throw ConstraintError("2-sum sides need at least 3 elements");
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    BinaryMatroid m1 = side_with_glue(size1, "a", rng);
    BinaryMatroid m2 = side_with_glue(size2, "b", rng);
    if (validate_2sum(m1, m2).ok) return {std::move(m1), std::move(m2)};
  }
  throw std::logic_error("planted 2-sum construction failed repeatedly");
}

std::pair<BinaryMatroid, BinaryMatroid> planted_3sum_pair(std::size_t size1,
                                                          std::size_t size2, Rng& rng) {
  if (size1 < 4 || size2 < 4) {
    throw ConstraintError("3-sum sides need at least 4 elements");
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    const std::size_t rows1 = pick(2, size1 - 2, rng);
    const std::size_t rows2 = pick(2, size2 - 2, rng);
    BinaryMatroid m1 = random_with_triangle(size1 - 3, rows1, rng, "a");
    BinaryMatroid m2 = random_with_triangle(size2 - 3, rows2, rng, "b");
    if (relaxed_3sum(m1, m2).ok) return {std::move(m1), std::move(m2)};
  }
  throw std::logic_error("planted 3-sum construction failed repeatedly");
}

namespace {

Label pick_glue_element(const BinaryMatroid& m, Rng& rng) {
  std::vector<Label> candidates;
  for (const Label& e : m.labels()) {
    if (!m.is_loop(e) && !m.is_coloop(e)) candidates.push_back(e);
  }
  if (candidates.empty()) throw std::logic_error("no usable glue element");
  return candidates[rng() % candidates.size()];
}

std::optional<std::array<Label, 3>> pick_triangle(const BinaryMatroid& m, Rng& rng) {
  std::vector<std::uint64_t> small;
  for (const std::uint64_t c : m.circuits(m.size())) {
    if (std::popcount(c) == 3) small.push_back(c);
  }
  if (small.empty()) return std::nullopt;
  const LabelSet labels = m.labels_of(small[rng() % small.size()]);
  std::array<Label, 3> out;
  std::copy(labels.begin(), labels.end(), out.begin());
  return out;
}

Multigraph complete_graph(std::size_t vertices, const std::string& prefix) {
  Multigraph g;
  g.vertices = vertices;
  std::size_t next = 1;
  for (std::size_t u = 0; u < vertices; ++u) {
    for (std::size_t v = u + 1; v < vertices; ++v) {
      g.edges.push_back({u, v, prefix + std::to_string(next++)});
    }
  }
  return g;
}

Multigraph complete_bipartite_33(const std::string& prefix) {
  Multigraph g;
  g.vertices = 6;
  std::size_t next = 1;
  for (std::size_t u = 0; u < 3; ++u) {
    for (std::size_t v = 3; v < 6; ++v) {
      g.edges.push_back({u, v, prefix + std::to_string(next++)});
    }
  }
  return g;
}

struct Piece {
  BinaryMatroid m;
  LeafTag tag = LeafTag::Graphic;
};

Piece random_piece(std::size_t max_elements, Rng& rng, std::size_t index) {
  const std::string prefix = "g" + std::to_string(index) + "x";
  const int kind = static_cast<int>(rng() % 10);
  if (kind == 0 && max_elements >= 10) {
    std::map<Label, Label> names;
    for (std::size_t i = 1; i <= 10; ++i) {
      names["e" + std::to_string(i)] = prefix + std::to_string(i);
    }
    return {relabel(fixed_r10(), names), LeafTag::R10};
  }
  if (kind <= 2 && max_elements >= 9) {
    return {cycle_matroid(complete_bipartite_33(prefix)).dual(), LeafTag::Cographic};
  }
  if (kind == 3 && max_elements >= 10) {
    return {cycle_matroid(complete_graph(5, prefix)).dual(), LeafTag::Cographic};
  }
  // Keep at least one independent cycle (edges >= vertices) so the piece
  // always offers a glue element that is neither a loop nor a coloop.
  const std::size_t vertices = pick(3, std::min<std::size_t>(5, max_elements), rng);
  const std::size_t edges = pick(vertices, std::min(max_elements, vertices + 4), rng);
  return {cycle_matroid(random_multigraph(vertices, edges, rng, prefix)), LeafTag::Graphic};
}

CertShape leaf_shape(const BinaryMatroid& m, LeafTag tag) {
  CertShape out;
  out.tag = tag;
  out.elements = m.labels();
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

/// Sum node with the larger side (ground minus markers; both sides carry the
/// same markers, so plain sizes compare the same way) on the left.
CertShape sum_shape(int k, std::vector<Label> shared, CertShape a, std::size_t size_a,
                    CertShape b, std::size_t size_b) {
  CertShape out;
  out.k = k;
  out.shared = std::move(shared);
  if (size_b > size_a) std::swap(a, b);
  out.left = std::make_unique<CertShape>(std::move(a));
  out.right = std::make_unique<CertShape>(std::move(b));
  return out;
}

}  // namespace

RegularComposite random_regular_with_certificate(std::size_t min_size,
                                                 std::size_t max_size, Rng& rng) {
  if (min_size < 6 || max_size < min_size || max_size > kMaxDim) {
    throw ConstraintError("regular composite size range unusable");
  }
  std::size_t piece_index = 0;
  for (int attempt = 0; attempt < 200; ++attempt) {
    Piece start = random_piece(std::min<std::size_t>(max_size, 10), rng, ++piece_index);
    BinaryMatroid cur = std::move(start.m);
    CertShape tree = leaf_shape(cur, start.tag);
    for (int step = 0; step < 16 && cur.size() < min_size; ++step) {
      const std::size_t room = max_size - cur.size();
      const int choice = static_cast<int>(rng() % 10);
      if (choice == 0 && room >= 4) {
        // Direct sum: disjoint ground sets, cycle spaces concatenate.
        Piece piece = random_piece(room, rng, ++piece_index);
        tree = sum_shape(1, {}, std::move(tree), cur.size(),
                         leaf_shape(piece.m, piece.tag), piece.m.size());
        cur = delta_sum(cur, piece.m);
        continue;
      }
      if (choice <= 2 && room >= 1) {
        // Glue over a common triangle when both sides offer one.
        const auto tri = pick_triangle(cur, rng);
        if (tri) {
          const std::string prefix = "g" + std::to_string(++piece_index) + "x";
          const std::size_t extra = pick(2, std::min<std::size_t>(room + 2, 6), rng);
          Multigraph g = multigraph_with_triangle(pick(3, 4, rng), extra, rng, prefix);
          BinaryMatroid glued = relabel(
              cycle_matroid(g), {{"t1", (*tri)[0]}, {"t2", (*tri)[1]}, {"t3", (*tri)[2]}});
          if (glued.size() >= 7 && validate_3sum(cur, glued).ok &&
              cur.size() + glued.size() - 6 <= max_size) {
            tree = sum_shape(3, {(*tri)[0], (*tri)[1], (*tri)[2]}, std::move(tree),
                             cur.size(), leaf_shape(glued, LeafTag::Graphic), glued.size());
            cur = delta_sum(cur, glued);
            continue;
          }
        }
        // Fall through to a 2-sum when no triangle glue fits.
      }
      if (room < 2) break;
      Piece piece = random_piece(std::min<std::size_t>(room + 2, 10), rng, ++piece_index);
      const Label x = pick_glue_element(cur, rng);
      const Label y = pick_glue_element(piece.m, rng);
      BinaryMatroid glued = (y == x) ? std::move(piece.m) : relabel(piece.m, {{y, x}});
      if (!validate_2sum(cur, glued).ok) continue;
      if (cur.size() + glued.size() - 2 > max_size) continue;
      tree = sum_shape(2, {x}, std::move(tree), cur.size(), leaf_shape(glued, piece.tag),
                       glued.size());
      cur = delta_sum(cur, glued);
    }
    if (cur.size() >= min_size && cur.size() <= max_size) {
      return {std::move(cur), std::move(tree)};
    }
  }
  throw std::logic_error("could not compose a regular instance in the requested range");
}

BinaryMatroid random_regular(std::size_t min_size, std::size_t max_size, Rng& rng) {
  return random_regular_with_certificate(min_size, max_size, rng).matroid;
}

}  // namespace matising
