#ifndef MONALG_ALGEBRA_HPP
#define MONALG_ALGEBRA_HPP

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace monalg {

using Node = std::uint32_t;

// Sentinel for "no node": used for the root slot of a PendantTree and for
// absent entries in partial node maps.
inline constexpr Node kNoNode = static_cast<Node>(-1);

// A finite algebra with one unary operation: a set {0,...,n-1} together with
// a successor function f.  Every structural notion in this library (cycles,
// pendant trees, degrees, retracts) derives from iterating f.
class Algebra {
public:
  // Throws std::invalid_argument if the successor array is empty or any
  // entry is out of range.
  explicit Algebra(std::vector<Node> successor);

  std::size_t size() const noexcept { return succ_.size(); }
  Node successor(Node x) const { return succ_.at(x); }
  const std::vector<Node>& successors() const noexcept { return succ_; }

  // Preimage lists: preimages()[v] holds all y with f(y) = v, ascending.
  std::vector<std::vector<Node>> preimages() const;

  bool operator==(const Algebra& other) const noexcept {
    return succ_ == other.succ_;
  }

  // The n-element cycle 0 -> 1 -> ... -> n-1 -> 0.
  static Algebra cycle(std::size_t n);

  // Disjoint union with offset relabeling: parts[k]'s node i becomes
  // i + (sum of earlier part sizes).
  static Algebra disjoint_union(std::span<const Algebra> parts);

private:
  std::vector<Node> succ_;
};

// A connected partial algebra with exactly one node (the root) lacking a
// successor; every other node's successor chain leads to the root.  This is
// the shape of a pendant tree cut off an algebra at a single node.
class PendantTree {
public:
  // successor[root] must be kNoNode and every other entry in range.
  // Throws std::invalid_argument unless the structure is connected with the
  // root as its unique undefined point (acyclicity follows and is checked).
  PendantTree(Node root, std::vector<Node> successor);

  std::size_t size() const noexcept { return succ_.size(); }
  Node root() const noexcept { return root_; }
  // kNoNode exactly when x is the root.
  Node successor(Node x) const { return succ_.at(x); }
  const std::vector<Node>& successors() const noexcept { return succ_; }

  // children()[v] = all y with successor(y) = v, ascending.
  std::vector<std::vector<Node>> children() const;

  bool operator==(const PendantTree& other) const noexcept {
    return root_ == other.root_ && succ_ == other.succ_;
  }

private:
  Node root_;
  std::vector<Node> succ_;
};

// A nonempty set of nodes of a particular algebra.  Members are kept sorted
// ascending and deduplicated so that identical sets compare equal and all
// derived output is deterministic.
struct NodeSubset {
  const Algebra* parent;
  std::vector<Node> members;

  NodeSubset(const Algebra& algebra, std::vector<Node> nodes);

  bool contains(Node x) const;
  std::size_t size() const noexcept { return members.size(); }
};

// A total map between the node sets of two algebras.  Whether it commutes
// with the successor operations is a property (is_homomorphism), not an
// invariant of the type.
struct HomMap {
  const Algebra* source;
  const Algebra* target;
  std::vector<Node> map;
};

bool is_homomorphism(const HomMap& h);

// True when `subset` is closed under the successor operation of `algebra`.
bool is_subalgebra(const Algebra& algebra, const NodeSubset& subset);

struct InducedSubalgebra {
  Algebra algebra;                 // relabeled restriction
  std::vector<Node> original_of;   // local node -> parent node (ascending)
  std::vector<Node> local_of;      // parent node -> local node or kNoNode
};

// Restriction of the algebra to a successor-closed subset, relabeled by the
// order-preserving bijection onto {0,...,k-1}.  Throws std::invalid_argument
// if the subset is not closed.
InducedSubalgebra induced_subalgebra(const Algebra& algebra,
                                     const NodeSubset& subset);

inline constexpr std::size_t kDefaultProductBudget = 100000;

// Direct product: nodes are tuples, successor acts coordinatewise.  The
// tuple (a_0,...,a_{k-1}) is labeled by its mixed-radix index with the first
// coordinate most significant.  Throws std::runtime_error when the result
// would exceed max_size nodes (the message reports the required size), and
// std::invalid_argument on an empty factor list.
Algebra product(std::span<const Algebra> factors,
                std::size_t max_size = kDefaultProductBudget);

// Number of nodes product(factors) would have, saturated at 2^64-1.
std::uint64_t product_size(std::span<const Algebra> factors);

// Mixed-radix label <-> coordinate-tuple conversions for product nodes.
std::uint64_t product_index(std::span<const Algebra> factors,
                            std::span<const Node> coords);
std::vector<Node> product_coordinates(std::span<const Algebra> factors,
                                      std::uint64_t index);

}  // namespace monalg

#endif
