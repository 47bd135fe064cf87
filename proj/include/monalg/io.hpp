#ifndef MONALG_IO_HPP
#define MONALG_IO_HPP

#include <string>
#include <string_view>

#include "monalg/algebra.hpp"

namespace monalg {

// Reads either of the two accepted texts:
//   JSON object   {"n": 2, "f": [1, 0]}
//   line format   n=2
//                 0 -> 1
//                 1 -> 0
// The first non-space character decides the format ('{' means JSON).  Every
// node must receive exactly one successor line; duplicates, gaps, and
// out-of-range targets are rejected with std::invalid_argument.
Algebra parse_algebra(std::string_view text);

// JSON form, e.g. {"n":2,"f":[1,0]}.  parse_algebra inverts it.
std::string serialize_algebra(const Algebra& a);

// Line-format form ("n=2\n0 -> 1\n1 -> 0\n").  parse_algebra inverts it.
std::string serialize_algebra_lines(const Algebra& a);

// Graphviz digraph with one edge per node.  Node names are bare indices.
// With annotate_degree, each node gets label="i (s=k)" where k is its
// degree ("inf" on cycles).
std::string export_dot(const Algebra& a, bool annotate_degree = false);

// Rebuilds an algebra from any text containing "i -> j" pairs, one per
// line; ignores everything else.  Accepts both the line format and the body
// of an exported DOT digraph.
Algebra parse_edge_list(std::string_view text);

// Line-format form of a pendant tree: "n=<k>", "root=<r>", then a successor
// line for every node except the root.
std::string serialize_tree_lines(const PendantTree& t);

}  // namespace monalg

#endif
