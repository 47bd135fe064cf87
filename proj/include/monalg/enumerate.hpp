#ifndef MONALG_ENUMERATE_HPP
#define MONALG_ENUMERATE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "monalg/algebra.hpp"
#include "monalg/canon.hpp"

namespace monalg {

// Exact unsigned arbitrary-precision natural, just large enough for the
// doubly exponential tree counts.  Base 2^32 limbs, little endian.
class BigNat {
public:
  BigNat() = default;
  explicit BigNat(std::uint64_t v);

  bool is_zero() const noexcept { return limbs_.empty(); }
  bool fits_u64() const noexcept { return limbs_.size() <= 2; }
  std::uint64_t to_u64() const;  // throws std::overflow_error if too large

  BigNat& operator+=(const BigNat& o);
  BigNat& operator-=(const BigNat& o);  // requires *this >= o
  BigNat operator*(const BigNat& o) const;

  bool operator==(const BigNat& o) const noexcept { return limbs_ == o.limbs_; }
  bool operator<(const BigNat& o) const noexcept;
  bool operator<=(const BigNat& o) const noexcept;

  // 3^e; the exponent is capped (see count_t) by the caller.
  static BigNat pow3(std::uint64_t e);

  std::string to_string() const;  // decimal

private:
  std::vector<std::uint32_t> limbs_;
};

// One isomorphism class per tree in the class: pendant trees whose root
// degree lies in 1..bound and in which no node has three pairwise
// isomorphic child subtrees.  Sorted by code, strictly increasing.
struct TreeClassCatalog {
  std::uint64_t bound;
  std::vector<CanonicalCode> codes;
  std::vector<PendantTree> trees;
};

inline constexpr std::size_t kDefaultCatalogCap = 1000000;

// Materializes the catalog for the given bound, recursing on the exact root
// degree: a tree of root degree m takes children of degree < m, at most two
// per class, with at least one of degree m-1.  Throws std::runtime_error
// ("cap exceeded") when the predicted class count is beyond cap.
TreeClassCatalog enumerate_t(std::uint64_t bound,
                             std::size_t cap = kDefaultCatalogCap);

// Number of classes in the catalog without materializing it, by the
// multiplicity recurrence: with S_h classes of root degree < h,
// the degree-h classes number 3^{S_h} - 3^{S_{h-1}}.  Exact; throws
// std::runtime_error ("cap exceeded") when an exponent passes the cap and
// the value would be physically unrepresentable.
BigNat count_t(std::uint64_t bound);

// Catalog restricted to trees of at most max_nodes nodes (same classes,
// size-filtered during generation, so the doubly exponential growth never
// materializes).  Used for cross-checking against brute-force generation.
TreeClassCatalog enumerate_t_bounded(std::uint64_t bound,
                                     std::size_t max_nodes);

// Every cycle of length 1..max_cycle, plus every algebra formed by defining
// the root successor of a catalog tree (bound tree_bound) to a node of such
// a cycle.  Filtered by satisfies_star, deduplicated and sorted by code.
std::vector<Algebra> enumerate_finite_s(std::uint64_t max_cycle,
                                        std::uint64_t tree_bound,
                                        std::size_t cap = kDefaultCatalogCap);

}  // namespace monalg

#endif
