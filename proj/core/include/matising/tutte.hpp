#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "matising/graph.hpp"
#include "matising/matroid.hpp"
#include "matising/rational.hpp"

namespace matising {

struct SweepOptions {
  /// Hard cap on the ground-set size for subset sweeps.
  std::size_t max_elements = 24;
  /// Worker threads for the plain evaluators (1 = serial). Rational results
  /// are identical for every thread count; float results are deterministic
  /// for a fixed task split.
  unsigned threads = 1;
};

/// Z(M; gamma) = sum over subsets A of gamma_A 2^{-rank(A)}, exactly.
Rat tutte_exact(const WeightedMatroid& w, const SweepOptions& opts = {});

/// Same sum in double precision (all terms nonnegative, so no cancellation).
double tutte_float(const WeightedMatroidF& w, const SweepOptions& opts = {});

/// Independent evaluation route by deletion/contraction recursion:
/// Z(M) = Z(M\e) + gamma_e 2^{-rank({e})} Z(M/e).
Rat tutte_dc(const WeightedMatroid& w);

/// (Z(M\p), Z(M/p)) computed in one sweep over E - p.
struct MinorVector2 {
  Rat del;
  Rat con;
};
MinorVector2 minor_vector_2(const WeightedMatroid& w, const Label& p,
                            const SweepOptions& opts = {});

/// (Z(M\T), Z(M/p1\p2p3), Z(M/p2\p1p3), Z(M/p3\p1p2)) in one sweep over E - T.
struct MinorVector3 {
  Rat del;
  Rat con1;
  Rat con2;
  Rat con3;
};
MinorVector3 minor_vector_3(const WeightedMatroid& w, const std::array<Label, 3>& t,
                            const SweepOptions& opts = {});

/// Subset sums split by the rank-increment pattern against a 3-element
/// circuit T = {p1,p2,p3}: pattern (e(A,p1),e(A,p2),e(A,p3)) is (0,0,0) for
/// class 0, (1,1,1) for class 4, and two-ones patterns take the class of
/// their zero position. zhat[k] = sum of gamma_A 2^{-rank(A)} over class k.
std::array<Rat, 5> zhat_vector(const WeightedMatroid& w, const std::array<Label, 3>& t,
                               const SweepOptions& opts = {});

/// Evaluate through the dual: Z(M;gamma) = (prod_E gamma) 2^{-rank(E)}
/// Z(M*;gamma*) with gamma*_e = 2/gamma_e, after deleting zero-weight
/// elements (their subsets contribute nothing).
Rat dual_evaluate(const WeightedMatroid& w, const SweepOptions& opts = {});

/// Two routes to the same value for the cycle matroid of a multigraph:
/// first = subset sweep of Z(M(G); gamma), second = 2^{-|V|} sum over vertex
/// 2-colorings of prod over monochromatic edges of (1 + gamma_e). Weights
/// align with g.edges order.
std::pair<Rat, Rat> potts_crosscheck(const Multigraph& g, const std::vector<Rat>& edge_weights,
                                     const SweepOptions& opts = {});

}  // namespace matising
