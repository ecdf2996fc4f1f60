#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "matising/decompose.hpp"
#include "matising/graph.hpp"
#include "matising/matroid.hpp"

namespace matising {

using Rng = std::mt19937_64;

/// Copy with labels renamed per `names` (labels not in the map keep theirs).
BinaryMatroid relabel(const BinaryMatroid& m, const std::map<Label, Label>& names);

/// Random nonzero GF(2) columns, labels prefix1..prefixN.
BinaryMatroid random_binary_matroid(std::size_t elements, std::size_t rows, Rng& rng,
                                    const std::string& prefix = "e");

/// Random matroid whose last three columns t1, t2, t3 form a 3-circuit.
BinaryMatroid random_with_triangle(std::size_t extra_elements, std::size_t rows,
                                   Rng& rng, const std::string& prefix = "e");

/// Random connected multigraph, no self-loops, labels prefix1..prefixE.
/// Requires edges >= vertices - 1.
Multigraph random_multigraph(std::size_t vertices, std::size_t edges, Rng& rng,
                             const std::string& prefix = "e");

/// Random connected multigraph whose first three edges t1, t2, t3 form a
/// triangle. Requires vertices >= 3.
Multigraph multigraph_with_triangle(std::size_t vertices, std::size_t extra_edges,
                                    Rng& rng, const std::string& prefix = "e");

/// Small random rationals in [0, 8]; zero drawn with probability 1/8 when
/// allowed, otherwise strictly positive.
std::vector<Rat> random_rationals(std::size_t n, Rng& rng, bool allow_zero = false);

/// Random dyadic rationals k/2^j in (0, 16] — exact in double precision.
std::vector<Rat> random_dyadics(std::size_t n, Rng& rng);

/// Two matroids of the given sizes sharing exactly the element "p", passing
/// the full 2-sum side conditions. Sizes count elements including p (>= 3).
std::pair<BinaryMatroid, BinaryMatroid> planted_2sum_pair(std::size_t size1,
                                                          std::size_t size2, Rng& rng);

/// Two matroids sharing exactly the common 3-circuit {t1, t2, t3}; the
/// splitting-identity (relaxed) conditions hold by construction. Sizes count
/// elements including the triangle (>= 4 each).
std::pair<BinaryMatroid, BinaryMatroid> planted_3sum_pair(std::size_t size1,
                                                          std::size_t size2, Rng& rng);

/// Regular matroid built as iterated 1-/2-/3-sums of graphic, cographic and
/// R10 pieces — regular by closure — with size in [min_size, max_size].
BinaryMatroid random_regular(std::size_t min_size, std::size_t max_size, Rng& rng);

/// Same, paired with the decomposition certificate recorded while gluing
/// (larger side left, glue labels as markers). Lets callers skip the
/// separation search on instances built here.
struct RegularComposite {
  BinaryMatroid matroid;
  CertShape certificate;
};
RegularComposite random_regular_with_certificate(std::size_t min_size,
                                                 std::size_t max_size, Rng& rng);

}  // namespace matising
