#pragma once

#include <string>

#include "matising/decompose.hpp"
#include "matising/matroid.hpp"

namespace matising {

/// Instance text format (line-oriented, hand-editable):
///   m r                      -- element count, representation rows
///   r lines of m chars 0/1   -- the GF(2) representation, one row per line
///   WEIGHTS g1 ... gm        -- nonnegative rationals ("3/2") or decimals
///   ELEMENTS e1 ... em       -- optional labels; default e1..em
/// Blank lines and lines starting with '#' are ignored.
WeightedMatroid parse_instance(const std::string& text);
std::string print_instance(const WeightedMatroid& w);

/// Certificate text format (whitespace-insensitive):
///   tree := leaf(tag, [labels]) | sum(k, [markers], tree, tree)
/// with tag in {graphic, cographic, r10, small} and k in {1, 2, 3}.
/// print/parse round-trip exactly.
CertShape parse_certificate(const std::string& text);
std::string print_certificate(const CertShape& shape);

}  // namespace matising
