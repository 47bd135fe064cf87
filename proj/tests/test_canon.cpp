#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>
#include <stdexcept>
#include <vector>

#include "monalg/algebra.hpp"
#include "monalg/canon.hpp"
#include "monalg/structure.hpp"
#include "oracles.hpp"
#include "testutil.hpp"

using monalg::Algebra;
using monalg::CanonicalCode;
using monalg::Node;

TEST_CASE("codes agree with brute-force isomorphism, exhaustively") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto all = oracles::all_algebras(n);
    std::vector<CanonicalCode> codes;
    for (const Algebra& a : all) codes.push_back(monalg::algebra_code(a));
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = i; j < all.size(); ++j) {
        const bool expected = oracles::brute_isomorphic(all[i], all[j]);
        CHECK(monalg::is_isomorphic(all[i], all[j]) == expected);
        CHECK((codes[i] == codes[j]) == expected);
      }
    }
  }
}

TEST_CASE("codes agree with brute-force isomorphism on random pairs") {
  testutil::Rng rng(41);
  for (int t = 0; t < 300; ++t) {
    const std::size_t n = 1 + testutil::pick(rng, 6);
    const Algebra a = testutil::random_algebra(rng, n);
    const Algebra b = testutil::random_algebra(rng, n);
    CHECK(monalg::is_isomorphic(a, b) == oracles::brute_isomorphic(a, b));
  }
}

TEST_CASE("codes are invariant under relabeling") {
  testutil::Rng rng(42);
  for (int t = 0; t < 300; ++t) {
    const Algebra a = testutil::random_algebra(rng, 1 + testutil::pick(rng, 10));
    const Algebra b = testutil::random_relabel(rng, a);
    CHECK(monalg::algebra_code(a) == monalg::algebra_code(b));
    CHECK(monalg::is_isomorphic(a, b));
  }
}

TEST_CASE("tree codes separate shapes and ignore labels") {
  using monalg::kNoNode;
  const monalg::PendantTree chain(0, {kNoNode, 0, 1});
  const monalg::PendantTree fork(0, {kNoNode, 0, 0});
  const monalg::PendantTree chain2(2, {1, 2, kNoNode});
  CHECK(monalg::tree_code(chain) == monalg::tree_code(chain2));
  CHECK(monalg::tree_code(chain) != monalg::tree_code(fork));
}

TEST_CASE("subtree codes classify siblings") {
  // Three leaves under node 0 share one class; the chain through 4 differs.
  const Algebra a({0, 0, 0, 0, 0, 4});
  const auto codes = monalg::subtree_codes(a);
  CHECK(codes[1] == codes[2]);
  CHECK(codes[2] == codes[3]);
  CHECK(codes[4] != codes[1]);
}

TEST_CASE("star condition counts isomorphic siblings") {
  CHECK_FALSE(monalg::satisfies_star(Algebra({0, 0, 0, 0})));
  CHECK(monalg::satisfies_star(Algebra({0, 0, 0})));
  CHECK(monalg::satisfies_star(Algebra({1, 0, 0, 1})));
  // Two leaves and one chain on the same node: classes stay below three.
  CHECK(monalg::satisfies_star(Algebra({0, 0, 0, 1})));
  // Cyclic preimages never join a class: node 0 has preimages 1, 2, 3, but
  // the cyclic node 1 must not be counted alongside the two leaves.
  CHECK(monalg::satisfies_star(Algebra({1, 0, 0, 0})));
  const Algebra thirteen({0, 0, 0, 0, 1, 1, 2, 2, 2, 3, 3, 3, 3});
  CHECK_FALSE(monalg::satisfies_star(thirteen));
}

TEST_CASE("star-star condition counts isomorphic components") {
  const Algebra c2 = Algebra::cycle(2);
  const std::vector<Algebra> two{c2, c2};
  const std::vector<Algebra> three{c2, c2, c2};
  CHECK(monalg::satisfies_star_star(Algebra::disjoint_union(two)));
  CHECK_FALSE(monalg::satisfies_star_star(Algebra::disjoint_union(three)));
  const std::vector<Algebra> mixed{c2, c2, Algebra::cycle(3), Algebra::cycle(3)};
  CHECK(monalg::satisfies_star_star(Algebra::disjoint_union(mixed)));
}

TEST_CASE("tree star condition matches the algebra condition") {
  testutil::Rng rng(43);
  for (int t = 0; t < 100; ++t) {
    // A loop plus a tree below it: the algebra violates the condition iff
    // the free-standing tree does (the loop node never has three tree
    // children here because the tree root is its only non-cyclic preimage).
    std::vector<Node> f(1 + 1, 0);
    const std::size_t extra = testutil::pick(rng, 8);
    for (std::size_t i = 0; i < extra; ++i) {
      f.push_back(static_cast<Node>(1 + testutil::pick(rng, f.size() - 1)));
    }
    const Algebra a(f);
    const auto ext = monalg::pendant_tree(a, 1);
    CHECK(monalg::tree_satisfies_star(ext.tree) == monalg::satisfies_star(a));
  }
}

TEST_CASE("subtree isomorphism maps tree onto tree") {
  const Algebra a({0, 0, 0, 1, 2});
  const auto map = monalg::subtree_isomorphism(a, 1, 2);
  CHECK(map[1] == 2);
  CHECK(map[3] == 4);
  CHECK(map[0] == monalg::kNoNode);
  CHECK_THROWS_AS(monalg::subtree_isomorphism(a, 0, 1), std::invalid_argument);
  const Algebra b({0, 0, 0, 1});
  CHECK_THROWS_AS(monalg::subtree_isomorphism(b, 1, 2), std::invalid_argument);
}

TEST_CASE("subtree isomorphism is a structure-preserving bijection") {
  testutil::Rng rng(44);
  int done = 0;
  while (done < 50) {
    const Algebra a = testutil::planted_star_violation(
        rng, 2 + testutil::pick(rng, 4), 1 + testutil::pick(rng, 3));
    const auto codes = monalg::subtree_codes(a);
    const auto mask = monalg::cyclic_mask(a);
    Node x = monalg::kNoNode, y = monalg::kNoNode;
    for (std::size_t i = 0; i < a.size() && x == monalg::kNoNode; ++i) {
      for (std::size_t j = i + 1; j < a.size(); ++j) {
        if (!mask[i] && !mask[j] && codes[i] == codes[j] &&
            a.successor(static_cast<Node>(i)) ==
                a.successor(static_cast<Node>(j))) {
          x = static_cast<Node>(i);
          y = static_cast<Node>(j);
          break;
        }
      }
    }
    REQUIRE(x != monalg::kNoNode);
    const auto map = monalg::subtree_isomorphism(a, x, y);
    const auto src = monalg::pendant_tree(a, x);
    const auto dst = monalg::pendant_tree(a, y);
    CHECK(map[x] == y);
    std::set<Node> image;
    for (Node orig : src.original_of) {
      REQUIRE(map[orig] != monalg::kNoNode);
      image.insert(map[orig]);
      if (orig != x) CHECK(map[a.successor(orig)] == a.successor(map[orig]));
    }
    CHECK(image.size() == src.original_of.size());
    CHECK(image == std::set<Node>(dst.original_of.begin(),
                                  dst.original_of.end()));
    for (std::size_t v = 0; v < a.size(); ++v) {
      if (src.local_of[v] == monalg::kNoNode) {
        CHECK(map[v] == monalg::kNoNode);
      }
    }
    ++done;
  }
}

TEST_CASE("component isomorphism aligns the cycles") {
  const Algebra c3 = Algebra::cycle(3);
  const std::vector<Algebra> parts{c3, c3};
  const Algebra u = Algebra::disjoint_union(parts);
  const auto comps = monalg::connected_components(u);
  const auto map = monalg::component_isomorphism(u, comps, 0, 1);
  for (Node x = 0; x < 3; ++x) {
    CHECK(map[x] >= 3);
    CHECK(map[u.successor(x)] == u.successor(map[x]));
  }
  CHECK(map[3] == monalg::kNoNode);
  CHECK_THROWS_AS(monalg::component_isomorphism(u, comps, 0, 2),
                  std::invalid_argument);
}

TEST_CASE("component isomorphism on random twin components") {
  testutil::Rng rng(45);
  for (int t = 0; t < 60; ++t) {
    const Algebra comp = testutil::random_connected(rng, 2 + testutil::pick(rng, 6));
    const std::vector<Algebra> parts{comp, comp};
    const Algebra u = Algebra::disjoint_union(parts);
    const auto comps = monalg::connected_components(u);
    REQUIRE(comps.component_count == 2);
    const auto map = monalg::component_isomorphism(u, comps, 0, 1);
    std::set<Node> image;
    for (std::size_t x = 0; x < comp.size(); ++x) {
      const Node v = static_cast<Node>(x);
      REQUIRE(map[v] != monalg::kNoNode);
      image.insert(map[v]);
      CHECK(map[u.successor(v)] == u.successor(map[v]));
    }
    CHECK(image.size() == comp.size());
    for (Node v : image) CHECK(comps.component_id[v] == 1);
  }
}

TEST_CASE("unequal component codes are rejected") {
  const Algebra c2 = Algebra::cycle(2);
  const Algebra c3 = Algebra::cycle(3);
  const std::vector<Algebra> parts{c2, c3};
  const Algebra u = Algebra::disjoint_union(parts);
  const auto comps = monalg::connected_components(u);
  CHECK_THROWS_AS(monalg::component_isomorphism(u, comps, 0, 1),
                  std::invalid_argument);
}

TEST_CASE("hex rendering is stable and injective on distinct codes") {
  const CanonicalCode a = monalg::algebra_code(Algebra::cycle(2));
  const CanonicalCode b = monalg::algebra_code(Algebra::cycle(3));
  CHECK(a.hex() == monalg::algebra_code(Algebra::cycle(2)).hex());
  CHECK(a.hex() != b.hex());
}
