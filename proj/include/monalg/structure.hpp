#ifndef MONALG_STRUCTURE_HPP
#define MONALG_STRUCTURE_HPP

#include <cstdint>
#include <vector>

#include "monalg/algebra.hpp"

namespace monalg {

// Degree of every node.  The degree counts how deep the preimage trees
// below a node reach: nodes with empty preimage have degree 0, any other
// non-cyclic node has degree 1 + max over its preimages, and nodes on a
// cycle have infinite degree (they admit arbitrarily long preimage chains).
struct DegreeMap {
  static constexpr std::uint64_t kInfinite = static_cast<std::uint64_t>(-1);

  const Algebra* parent;
  std::vector<std::uint64_t> degree;

  bool infinite(Node x) const { return degree.at(x) == kInfinite; }
};

DegreeMap degree_function(const Algebra& a);

// Partition of the nodes into connected components (connectivity ignores
// edge direction).  Component ids are assigned in order of each component's
// least node, so component_id[0] == 0.
struct ComponentPartition {
  const Algebra* parent;
  std::vector<Node> component_id;
  std::size_t component_count;

  std::vector<std::vector<Node>> members() const;
};

ComponentPartition connected_components(const Algebra& a);

// flags[x] != 0 iff x lies on a cycle, i.e. f^k(x) = x for some k >= 1.
std::vector<char> cyclic_mask(const Algebra& a);

// All nodes on cycles, as a subset.  Every finite component has exactly one
// cycle, so this set meets every component.
NodeSubset cyclic_nodes(const Algebra& a);

// Cycle length of each component, indexed by component id.
std::vector<std::uint64_t> component_cycle_lengths(const Algebra& a,
                                                   const ComponentPartition& parts);

// The attachment points: non-cyclic nodes whose successor is cyclic.  These
// are exactly the roots of the pendant trees hanging off the cycles.
// Empty for an all-cyclic algebra.
std::vector<Node> boundary_nodes(const Algebra& a);

struct PendantTreeExtraction {
  PendantTree tree;
  std::vector<Node> original_of;  // tree node -> algebra node
  std::vector<Node> local_of;     // algebra node -> tree node or kNoNode
};

// The preimage closure of x (x itself plus everything that eventually maps
// to it), as a pendant tree rooted at x.  Throws std::invalid_argument when
// x is cyclic: the closure would contain the whole cycle and not be a tree.
PendantTreeExtraction pendant_tree(const Algebra& a, Node x);

// Largest finite degree; 0 when every node is cyclic.
std::uint64_t degree_bound(const Algebra& a);

// Degree of every tree node, measured inside the partial algebra: leaves
// have degree 0, inner nodes 1 + max over children.  The root's entry is
// the tree's height.
std::vector<std::uint64_t> tree_degrees(const PendantTree& t);

}  // namespace monalg

#endif
