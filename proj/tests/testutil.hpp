#ifndef TESTS_TESTUTIL_HPP
#define TESTS_TESTUTIL_HPP

// Deterministic random inputs for property tests.  Every generator takes
// the engine by reference; tests seed their own engines so failures
// reproduce from the seed alone.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "monalg/algebra.hpp"
#include "monalg/canon.hpp"
#include "monalg/structure.hpp"

namespace testutil {

using monalg::Algebra;
using monalg::Node;
using Rng = std::mt19937_64;

inline Node pick(Rng& rng, std::size_t upper) {
  return static_cast<Node>(
      std::uniform_int_distribution<std::size_t>(0, upper - 1)(rng));
}

inline Algebra random_algebra(Rng& rng, std::size_t n) {
  std::vector<Node> f(n);
  for (auto& v : f) v = pick(rng, n);
  return Algebra(std::move(f));
}

// Connected by construction: a cycle on the first c nodes, every later
// node pointing at some earlier one.
inline Algebra random_connected(Rng& rng, std::size_t n) {
  std::size_t c = 1 + pick(rng, n);
  std::vector<Node> f(n);
  for (std::size_t i = 0; i < c; ++i) f[i] = static_cast<Node>((i + 1) % c);
  for (std::size_t i = c; i < n; ++i) f[i] = pick(rng, i);
  return Algebra(std::move(f));
}

inline Algebra random_relabel(Rng& rng, const Algebra& a) {
  std::vector<Node> perm(a.size());
  std::iota(perm.begin(), perm.end(), Node{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Node> f(a.size());
  for (std::size_t x = 0; x < a.size(); ++x) {
    f[perm[x]] = perm[a.successor(static_cast<Node>(x))];
  }
  return Algebra(std::move(f));
}

// Largest class of non-cyclic siblings with pairwise isomorphic subtrees,
// over all nodes.  1 when the algebra has no repeated sibling at all.
inline std::size_t max_sibling_class(const Algebra& a) {
  const auto codes = monalg::subtree_codes(a);
  const auto mask = monalg::cyclic_mask(a);
  const auto pre = a.preimages();
  std::size_t best = 1;
  for (std::size_t v = 0; v < a.size(); ++v) {
    std::map<monalg::CanonicalCode, std::size_t> counts;
    for (Node y : pre[v]) {
      if (mask[y]) continue;
      best = std::max(best, ++counts[codes[y]]);
    }
  }
  return best;
}

inline std::size_t max_component_class(const Algebra& a) {
  std::map<monalg::CanonicalCode, std::size_t> counts;
  std::size_t best = 1;
  for (const auto& code : monalg::component_codes(a)) {
    best = std::max(best, ++counts[code]);
  }
  return best;
}

// Connected algebra with at least one sibling class of size exactly 3 and
// none larger: a random connected base plus three copies of one random
// pendant tree grafted onto a random base node.  Retries until the
// accidental classes stay below 3.
inline Algebra planted_star_violation(Rng& rng, std::size_t base_size,
                                      std::size_t tree_size) {
  for (;;) {
    const Algebra base = random_connected(rng, base_size);
    std::vector<Node> tree(tree_size);  // tree[i] < i, rooted at 0
    for (std::size_t i = 1; i < tree_size; ++i) tree[i] = pick(rng, i);
    const Node graft = pick(rng, base_size);
    std::vector<Node> f(base.successors());
    for (std::size_t copy = 0; copy < 3; ++copy) {
      const Node offset = static_cast<Node>(f.size());
      f.push_back(graft);
      for (std::size_t i = 1; i < tree_size; ++i) {
        f.push_back(offset + tree[i]);
      }
    }
    Algebra a(std::move(f));
    if (!monalg::satisfies_star(a) && max_sibling_class(a) == 3) {
      return random_relabel(rng, a);
    }
  }
}

// Disjoint union with exactly one component class of size 3: three copies
// of one random connected algebra plus a few unrelated components.  The
// extras are strictly larger than the planted component so they can never
// join its class.
inline Algebra planted_star_star_violation(Rng& rng, std::size_t comp_size,
                                           std::size_t extra_components) {
  for (;;) {
    const Algebra comp = random_connected(rng, comp_size);
    std::vector<Algebra> parts(3, comp);
    for (std::size_t i = 0; i < extra_components; ++i) {
      parts.push_back(random_connected(rng, comp_size + 1 + pick(rng, 2)));
    }
    Algebra a = Algebra::disjoint_union(parts);
    if (!monalg::satisfies_star_star(a) && max_component_class(a) == 3 &&
        monalg::satisfies_star(a)) {
      return random_relabel(rng, a);
    }
  }
}

// Successor closure of a random seed set: always a subalgebra.
inline std::vector<Node> random_closed_subset(Rng& rng, const Algebra& a) {
  std::vector<char> in(a.size(), 0);
  std::size_t seeds = 1 + pick(rng, a.size());
  for (std::size_t i = 0; i < seeds; ++i) in[pick(rng, a.size())] = 1;
  for (std::size_t x = 0; x < a.size(); ++x) {
    Node cur = static_cast<Node>(x);
    while (in[cur] && !in[a.successor(cur)]) {
      cur = a.successor(cur);
      in[cur] = 1;
    }
  }
  std::vector<Node> members;
  for (std::size_t x = 0; x < a.size(); ++x) {
    if (in[x]) members.push_back(static_cast<Node>(x));
  }
  return members;
}

}  // namespace testutil

#endif
