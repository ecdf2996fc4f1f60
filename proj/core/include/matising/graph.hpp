#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "matising/matroid.hpp"

namespace matising {

/// Undirected multigraph; self-loops and parallel edges allowed.
struct Multigraph {
  struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    Label label;
  };

  std::size_t vertices = 0;
  std::vector<Edge> edges;
};

/// Cycle matroid of g: the column matroid of its GF(2) incidence matrix
/// (self-loops become zero columns, i.e. matroid loops).
BinaryMatroid cycle_matroid(const Multigraph& g);

}  // namespace matising
