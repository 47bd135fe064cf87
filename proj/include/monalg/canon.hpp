#ifndef MONALG_CANON_HPP
#define MONALG_CANON_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "monalg/algebra.hpp"
#include "monalg/structure.hpp"

namespace monalg {

// Canonical form of an algebra or pendant tree, as a sequence of naturals.
// Two algebras (resp. trees) get equal codes iff they are isomorphic; no
// other structure of the sequence is part of the contract.  Codes of
// algebras and codes of trees live in separate namespaces and must not be
// compared with each other.
struct CanonicalCode {
  std::vector<std::uint64_t> seq;

  bool operator==(const CanonicalCode& o) const noexcept { return seq == o.seq; }
  bool operator!=(const CanonicalCode& o) const noexcept { return seq != o.seq; }
  bool operator<(const CanonicalCode& o) const noexcept { return seq < o.seq; }

  // Hex rendering for golden tests and logs.  Stable for equal codes, but
  // the textual shape is not a versioned interface.
  std::string hex() const;
};

// Code of a rooted tree: each node contributes its child count followed by
// its children's codes sorted ascending.  The count prefix makes every
// code self-delimiting, so concatenations parse unambiguously.
CanonicalCode tree_code(const PendantTree& t);

// Code of a whole algebra: component codes (cycle length plus the rotation-
// minimal sequence of per-cycle-position hanging-tree codes), sorted.
CanonicalCode algebra_code(const Algebra& a);

bool is_isomorphic(const Algebra& a, const Algebra& b);

// Per-node subtree codes inside an algebra: entry v is the code of the tree
// rooted at v whose children are v's non-cyclic preimages, recursively.
// For a non-cyclic v this is exactly the code of pendant_tree(a, v); for a
// cyclic v it is the code of the tree hanging off that cycle position.
std::vector<CanonicalCode> subtree_codes(const Algebra& a);

// Component codes indexed by component id.
std::vector<CanonicalCode> component_codes(const Algebra& a);

// No node may have three pairwise-isomorphic pendant trees hanging from it:
// for every v, among the non-cyclic preimages of v, at most two may have
// isomorphic subtrees.  Cyclic preimages never participate.
bool satisfies_star(const Algebra& a);

// At most two components of any isomorphism type.
bool satisfies_star_star(const Algebra& a);

// Same condition for a free-standing tree: every node has at most two
// children per child-subtree isomorphism class.
bool tree_satisfies_star(const PendantTree& t);

// An isomorphism from the subtree rooted at x onto the subtree rooted at y
// (both non-cyclic, equal subtree codes required or std::invalid_argument).
// Children are matched class by class in code order, ties broken by node
// index, so the result is deterministic.  Returned as a partial map over
// all nodes of a: entries outside the source subtree are kNoNode.
std::vector<Node> subtree_isomorphism(const Algebra& a, Node x, Node y);

// An isomorphism from one whole component onto another (equal component
// codes required).  Cycles are aligned through each component's canonical
// rotation; hanging trees are matched like subtree_isomorphism.  Partial
// map over all nodes of a, kNoNode outside the source component.
std::vector<Node> component_isomorphism(const Algebra& a,
                                        const ComponentPartition& parts,
                                        Node source_component,
                                        Node target_component);

}  // namespace monalg

#endif
