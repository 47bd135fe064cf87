#ifndef MONALG_VARIETIES_HPP
#define MONALG_VARIETIES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monalg/algebra.hpp"
#include "monalg/canon.hpp"
#include "monalg/retract.hpp"

namespace monalg {

// ---------------------------------------------------------------------------
// Reductions.  Both return the reduced algebra together with the kept node
// set (original labels) and a retraction of the input onto that set, so the
// output is always a certified retract of the input.

struct Reduction {
  Algebra reduced;     // induced on `kept`, order-preserving relabel
  NodeSubset kept;
  HomMap retraction;   // endomorphism of the input with image `kept`
};

// Removes excess isomorphic siblings until no node has three pairwise
// isomorphic pendant trees hanging from it.  Each round picks the least
// node with a violation and, per violating sibling class, keeps the two
// least-index members and deletes the other members' trees, mapping every
// deleted tree onto the second kept member's tree.  Deleting trees can make
// previously distinct siblings isomorphic, so rounds repeat to a fixpoint;
// the composite of the per-round maps is the returned retraction.
Reduction star_reduce(const Algebra& a);

// Removes excess isomorphic components until every isomorphism type occurs
// at most twice: per class, the two components with least ids are kept and
// each deleted component is mapped onto the second kept one.  A single pass
// suffices (removing a component never changes another one).
Reduction star_star_reduce(const Algebra& a);

// ---------------------------------------------------------------------------
// Embeddings into products.

// Witness that `source` embeds into product(factors) with a retract image:
// map_coords[x] lists x's image tuple, one local node per factor.  When the
// product fits the budget it is materialized and the image verified to be a
// retract (retract_verified); otherwise the witness is returned unverified
// with the flag false.  Injectivity and the homomorphism law are always
// checked at construction.
struct EmbeddingWitness {
  Algebra source;
  std::vector<Algebra> factors;
  std::vector<std::vector<Node>> map_coords;
  std::optional<Algebra> target;             // product(factors) when materialized
  std::optional<std::vector<Node>> image;    // sorted image labels in *target
  bool retract_verified = false;

  // Mixed-radix labels of the image tuples (valid whether or not the
  // product was materialized; throws if the flat index would overflow).
  std::vector<std::uint64_t> flat_map() const;
  std::vector<std::uint64_t> flat_image() const;
};

struct BranchSplit {
  std::vector<NodeSubset> branch_subsets;  // cycle + one pendant tree each
  std::vector<Algebra> branches;           // induced on branch_subsets[i]
  HomMap core_retraction;                  // winds the input onto its cycle
  EmbeddingWitness witness;                // input into product(branches)
};

// Splits a connected algebra with at least two attachment points into its
// branches B_i = cycle + one pendant tree.  The embedding sends a cycle
// node to the constant tuple and a node of branch i's tree to the tuple
// that is itself in coordinate i and its cycle image elsewhere.  Throws
// std::invalid_argument when the input is disconnected or has fewer than
// two attachment points.
BranchSplit branch_split(const Algebra& a,
                         std::size_t budget = kDefaultProductBudget);

// Per-component embedding data for component_split: an embedding of one
// component into the product of `factors`, given by coordinate tuples.
struct ComponentEmbedding {
  std::vector<Algebra> factors;
  std::vector<std::vector<Node>> map_coords;  // component-local node -> tuple
};

// The identity embedding of a component into the product of itself alone.
ComponentEmbedding trivial_component_embedding(const Algebra& component);

// Reassembles per-component embeddings into one embedding of the whole
// algebra: for every way xi of choosing one factor per component, the
// algebra B_xi is the disjoint union of the chosen factors, and a node of
// component j maps at coordinate xi to its j-th embedding's value in the
// chosen factor.  inputs[j] must belong to component j (components ordered
// by id); throws std::invalid_argument on malformed witness inputs.
EmbeddingWitness component_split(const Algebra& a,
                                 std::span<const ComponentEmbedding> inputs,
                                 std::size_t budget = kDefaultProductBudget);

// Embedding of an algebra into a finite power of its star_reduce output,
// built from the reduction itself (never by search): survivors map to
// constant tuples; each deleted sibling gets a distinct non-constant
// pattern over the two kept members of its class; nodes inside a deleted
// tree follow their pattern through the isomorphisms onto the two kept
// trees.  Rounds compose, multiplying the exponent.
struct PowerEmbedding {
  Algebra reduced;          // == star_reduce(a).reduced
  std::size_t exponent;     // product of per-round class multiplicities
  EmbeddingWitness witness; // a into reduced^exponent
};

PowerEmbedding star_power_embedding(const Algebra& a,
                                    std::size_t budget = kDefaultProductBudget);

// Same construction one level up: deleted components follow patterns over
// the two kept components of their class.  One round always suffices.
PowerEmbedding star_star_power_embedding(const Algebra& a,
                                         std::size_t budget = kDefaultProductBudget);

// ---------------------------------------------------------------------------
// Generators.

// A deduplicated, code-sorted list of connected algebras, each a cycle with
// at most one pendant tree attached.
struct GeneratorSet {
  std::vector<CanonicalCode> codes;    // strictly increasing
  std::vector<Algebra> algebras;       // aligned with codes
};

struct GeneratorOrigin {
  std::size_t component;          // component id in the input algebra
  std::vector<Node> subset;       // nodes of the input forming this copy
};

struct GeneratorsResult {
  GeneratorSet set;
  std::vector<GeneratorOrigin> origins;  // first origin per kept code
};

// Pipeline: drop excess isomorphic components, star-reduce each survivor,
// then split off its branches (an all-cyclic component is its own cycle; a
// single-attachment component is already one branch).  Every emitted
// generator is realized by a concrete node subset of the input that is a
// retract of its component; for a connected input that makes it a retract
// of the input itself.
GeneratorsResult generators(const Algebra& a);

// True when the algebra could appear in a generator set: connected, at most
// one attachment point, and no three isomorphic sibling trees.
bool is_generator_shape(const Algebra& a);

// Structural validity of a GeneratorSet (codes strictly increasing and
// matching, every member a generator shape).
bool generator_set_valid(const GeneratorSet& g);

// ---------------------------------------------------------------------------
// Membership.

// Whether b consists of cycles of one fixed length: for n == 1, b must be
// the one-element algebra itself; for n >= 2, every component of b must be
// an n-cycle (any number of them).  Throws std::invalid_argument for n == 0.
bool in_cycle_variety(const Algebra& b, std::uint64_t n);

// Whether b belongs to the class generated by the 2-cycle and the 3-cycle
// together: equivalent to lying in the cycle class of 2, of 3, or of 6.
bool in_v23(const Algebra& b);

struct MembershipWitness {
  std::vector<std::size_t> factor_indices;  // multiset, indices into gens
  std::vector<Node> map;                    // b node -> product node
  std::vector<Node> image;                  // sorted image set
};

struct MembershipResult {
  bool certified = false;
  std::optional<MembershipWitness> witness;
  std::uint64_t products_tried = 0;
  std::uint64_t products_skipped = 0;  // multisets over the size budget
  std::string note;                    // diagnostics for unknown results
};

// Semi-decision of membership: searches every multiset of at most
// max_factors generators whose product has at most `budget` nodes for a
// closed subset isomorphic to b that passes is_retract.  Certification is
// always sound (the witness is the found embedding); exhausting the space
// yields "unknown", never a negative claim.  Candidate components are
// pruned by exact cycle-length matching before backtracking.
MembershipResult bounded_membership(const Algebra& b,
                                    std::span<const Algebra> gens,
                                    std::size_t max_factors,
                                    std::size_t budget);

}  // namespace monalg

#endif
