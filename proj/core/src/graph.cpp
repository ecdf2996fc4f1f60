#include "matising/graph.hpp"

#include <stdexcept>

namespace matising {

BinaryMatroid cycle_matroid(const Multigraph& g) {
  Gf2Matrix inc(g.vertices, g.edges.size());
  std::vector<Label> labels;
  labels.reserve(g.edges.size());
  for (std::size_t j = 0; j < g.edges.size(); ++j) {
    const auto& e = g.edges[j];
    if (e.u >= g.vertices || e.v >= g.vertices) {
      throw std::invalid_argument("cycle_matroid: edge endpoint out of range");
    }
    if (e.u != e.v) {
      inc.set(e.u, j, true);
      inc.set(e.v, j, true);
    }
    labels.push_back(e.label);
  }
  return BinaryMatroid(inc.row_reduced(), std::move(labels));
}

}  // namespace matising
