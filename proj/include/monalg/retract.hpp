#ifndef MONALG_RETRACT_HPP
#define MONALG_RETRACT_HPP

#include <optional>
#include <vector>

#include "monalg/algebra.hpp"

namespace monalg {

// Witness that `image` is a retract of `*base`: `map` is an endomorphism of
// the base algebra that fixes every node of the image and maps everything
// into it.
struct RetractionWitness {
  const Algebra* base;
  NodeSubset image;
  HomMap map;
};

// Checks the witness against its definition (endomorphism, image fixed
// pointwise, values inside the image).
bool witness_valid(const RetractionWitness& w);

// Decides whether the closed subset M is a retract of a, without searching
// for a map.  M is a retract iff
//   (a) every y with f(y) in M has some z in M with f(z) = f(y) and
//       degree(y) <= degree(z), and
//   (b) every component disjoint from M, with cycle length d, is matched by
//       a component meeting M whose cycle length divides d.
// A third clause would concern cycle-free components; finite components
// always carry a cycle, so it never fires (asserted).
// Throws std::invalid_argument when M is not closed under the successor.
bool is_retract(const Algebra& a, const NodeSubset& m);

// Builds a retraction onto M whenever one exists, deterministically: nodes
// are mapped level by level outward from M, each one to the least-index
// candidate of sufficient degree; components disjoint from M are wound onto
// the least suitable cycle through M.  Returns std::nullopt exactly when
// is_retract is false.
std::optional<RetractionWitness> find_retraction(const Algebra& a,
                                                 const NodeSubset& m);

inline constexpr std::size_t kDefaultOracleBound = 8;

// Brute-force oracle: enumerates every endomorphism of a by backtracking
// (propagating the homomorphism law, not scanning all |A|^|A| maps), keeps
// the idempotent ones, and returns their images sorted.  Guarded by the
// node bound; throws std::invalid_argument beyond it.
std::vector<NodeSubset> enumerate_retracts(const Algebra& a,
                                           std::size_t bound = kDefaultOracleBound);

}  // namespace monalg

#endif
