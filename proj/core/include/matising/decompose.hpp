#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "matising/graph.hpp"
#include "matising/matroid.hpp"

namespace matising {

struct DecompLimits {
  /// Exhaustive separation search and "small" leaf evaluation cap.
  std::size_t separation_search_max = 24;
  /// Graph realization search cap.
  std::size_t realization_search_max = 12;
};

enum class LeafTag { Graphic, Cographic, R10, Small };

std::string_view to_string(LeafTag tag);
std::optional<LeafTag> leaf_tag_from(std::string_view text);

/// Label-only decomposition tree, the payload of certificate files.
struct CertShape {
  // Leaf: tag + ground set (inherited markers included).
  std::optional<LeafTag> tag;
  std::vector<Label> elements;
  // Sum: arity, marker labels, children.
  int k = 0;
  std::vector<Label> shared;
  std::unique_ptr<CertShape> left;
  std::unique_ptr<CertShape> right;

  bool is_leaf() const { return tag.has_value(); }
  CertShape clone() const;
};

/// Decomposition tree with the matroid materialized at every node.
struct DecompNode {
  BinaryMatroid matroid;

  // Leaf fields.
  std::optional<LeafTag> tag;
  std::optional<Multigraph> realization;  // graphic leaf (or of the dual, for cographic)

  // Sum fields.
  int k = 0;
  std::vector<Label> shared;
  std::unique_ptr<DecompNode> left;
  std::unique_ptr<DecompNode> right;

  bool is_leaf() const { return tag.has_value(); }
};

struct DecompTree {
  std::unique_ptr<DecompNode> root;
};

/// Finest split into two separators (E1, E2) with rank(E1)+rank(E2)=rank(E);
/// E2 is the smallest connected component. Empty result means connected.
std::optional<std::pair<LabelSet, LabelSet>> find_1_separation(const BinaryMatroid& m);

/// Connected components of the matroid (loops are singletons).
std::vector<LabelSet> components(const BinaryMatroid& m);

struct TwoSumSplit {
  BinaryMatroid m1;
  BinaryMatroid m2;
  Label p;
};

struct ThreeSumSplit {
  BinaryMatroid m1;
  BinaryMatroid m2;
  std::array<Label, 3> t;
};

/// Exhaustive search for an exact 2-/3-separation, most balanced first,
/// deterministic tie-breaking; reconstruction is verified before returning.
std::optional<TwoSumSplit> find_2sum(const BinaryMatroid& m, const DecompLimits& limits = {});
std::optional<ThreeSumSplit> find_3sum(const BinaryMatroid& m, const DecompLimits& limits = {});

/// Split M across the given side-2 element set with fresh marker label(s).
/// Throws DecompositionError unless the partition is an exact separation
/// whose reconstruction (delta-sum of the parts) matches M.
TwoSumSplit build_2sum(const BinaryMatroid& m, const LabelSet& side2, const Label& marker);
ThreeSumSplit build_3sum(const BinaryMatroid& m, const LabelSet& side2,
                         const std::array<Label, 3>& markers);

/// Graph realization if one exists (cycle matroid equal to m).
std::optional<Multigraph> is_graphic(const BinaryMatroid& m, const DecompLimits& limits = {});
/// Realization of the dual, if the dual is graphic.
std::optional<Multigraph> is_cographic(const BinaryMatroid& m, const DecompLimits& limits = {});
/// Is m isomorphic (by element relabeling) to the fixed 10-element matroid?
bool is_r10(const BinaryMatroid& m);

/// Decompose into base leaves via 1-/2-/3-sums. When a certificate shape is
/// supplied it is validated instead of searched.
DecompTree decompose(const BinaryMatroid& m, const DecompLimits& limits = {},
                     const CertShape* certificate = nullptr);

CertShape shape_of(const DecompTree& tree);

/// Ground set described by a certificate subtree: the union of its leaf
/// element lists minus every marker introduced inside the subtree.
LabelSet cert_ground(const CertShape& shape);

}  // namespace matising
