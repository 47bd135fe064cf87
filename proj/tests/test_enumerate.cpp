#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "monalg/algebra.hpp"
#include "monalg/canon.hpp"
#include "monalg/enumerate.hpp"
#include "monalg/structure.hpp"
#include "monalg/varieties.hpp"

using monalg::Algebra;
using monalg::BigNat;
using monalg::Node;
using monalg::PendantTree;

namespace {

// All star-compliant tree classes with root degree in 1..bound and at most
// max_nodes nodes, generated the dumb way: every function on a labeled node
// set, filtered through the PendantTree constructor.
std::set<monalg::CanonicalCode> brute_tree_classes(std::uint64_t bound,
                                                   std::size_t max_nodes) {
  std::set<monalg::CanonicalCode> out;
  for (std::size_t n = 1; n <= max_nodes; ++n) {
    std::vector<Node> succ(n, 0);
    succ[0] = monalg::kNoNode;
    for (;;) {
      std::optional<PendantTree> tree;
      try {
        tree.emplace(0, succ);
      } catch (const std::invalid_argument&) {
      }
      if (tree) {
        const auto deg = monalg::tree_degrees(*tree);
        if (deg[0] >= 1 && deg[0] <= bound &&
            monalg::tree_satisfies_star(*tree)) {
          out.insert(monalg::tree_code(*tree));
        }
      }
      std::size_t i = 1;
      while (i < n && succ[i] + 1 == n) succ[i++] = 0;
      if (i == n) break;
      ++succ[i];
    }
  }
  return out;
}

}  // namespace

TEST_CASE("BigNat round-trips small values") {
  CHECK(BigNat(0).is_zero());
  CHECK(BigNat(0).to_string() == "0");
  CHECK(BigNat(7).to_u64() == 7);
  CHECK(BigNat(12157665459056928801ull).to_string() == "12157665459056928801");
  CHECK(BigNat(1) < BigNat(2));
  CHECK(BigNat(5) <= BigNat(5));
  CHECK_FALSE(BigNat(2) < BigNat(2));
}

TEST_CASE("BigNat arithmetic agrees with native integers") {
  BigNat a(123456789);
  a += BigNat(987654321);
  CHECK(a.to_u64() == 1111111110);
  a -= BigNat(1111111100);
  CHECK(a.to_u64() == 10);
  CHECK((BigNat(1000000007) * BigNat(998244353)).to_u64() ==
        1000000007ull * 998244353ull);
  CHECK_THROWS_AS(BigNat(1) -= BigNat(2), std::invalid_argument);
}

TEST_CASE("BigNat powers of three") {
  CHECK(BigNat::pow3(0).to_u64() == 1);
  CHECK(BigNat::pow3(27).to_string() == "7625597484987");
  CHECK(BigNat::pow3(40) == BigNat(12157665459056928801ull));
  CHECK(BigNat::pow3(40).fits_u64());
  CHECK_THROWS_AS(BigNat::pow3(41).to_u64(), std::overflow_error);
  CHECK(BigNat::pow3(80) == BigNat::pow3(40) * BigNat::pow3(40));
  CHECK(BigNat::pow3(80).to_string() ==
        "147808829414345923316083210206383297601");
}

TEST_CASE("tree class counts") {
  CHECK(monalg::count_t(0).is_zero());
  CHECK(monalg::count_t(1).to_u64() == 2);
  CHECK(monalg::count_t(2).to_u64() == 26);
  CHECK(monalg::count_t(3).to_string() == "7625597484986");
  CHECK_THROWS_AS(monalg::count_t(4), std::runtime_error);
  CHECK_THROWS_WITH(monalg::count_t(4), doctest::Contains("cap exceeded"));
}

TEST_CASE("catalog matches the predicted count") {
  const auto t1 = monalg::enumerate_t(1);
  REQUIRE(t1.trees.size() == 2);
  CHECK(t1.codes.size() == 2);

  const auto t2 = monalg::enumerate_t(2);
  REQUIRE(t2.trees.size() == 26);
  for (std::size_t i = 0; i + 1 < t2.codes.size(); ++i) {
    CHECK(t2.codes[i] < t2.codes[i + 1]);
  }
  std::size_t degree_one = 0;
  for (const PendantTree& t : t2.trees) {
    const auto deg = monalg::tree_degrees(t);
    CHECK(deg[t.root()] >= 1);
    CHECK(deg[t.root()] <= 2);
    CHECK(monalg::tree_satisfies_star(t));
    degree_one += deg[t.root()] == 1;
  }
  CHECK(degree_one == 2);
}

TEST_CASE("catalog refuses to materialize beyond the cap") {
  CHECK_THROWS_AS(monalg::enumerate_t(3), std::runtime_error);
  CHECK_THROWS_AS(monalg::enumerate_t(2, 10), std::runtime_error);
}

TEST_CASE("size-bounded catalog matches brute-force generation") {
  for (std::uint64_t bound = 1; bound <= 3; ++bound) {
    for (std::size_t max_nodes : {3, 5, 6}) {
      const auto fast = monalg::enumerate_t_bounded(bound, max_nodes);
      std::set<monalg::CanonicalCode> got(fast.codes.begin(),
                                          fast.codes.end());
      CHECK(got.size() == fast.codes.size());
      CHECK(got == brute_tree_classes(bound, max_nodes));
      for (const PendantTree& t : fast.trees) CHECK(t.size() <= max_nodes);
    }
  }
}

TEST_CASE("small algebra enumeration hits the known counts") {
  const auto only_loop = monalg::enumerate_finite_s(1, 0);
  REQUIRE(only_loop.size() == 1);
  CHECK(only_loop[0].successors() == std::vector<Node>{0});

  const auto six = monalg::enumerate_finite_s(2, 1);
  CHECK(six.size() == 6);
  std::set<monalg::CanonicalCode> codes;
  for (const Algebra& a : six) {
    CHECK(monalg::satisfies_star(a));
    CHECK(monalg::is_generator_shape(a));
    codes.insert(monalg::algebra_code(a));
  }
  CHECK(codes.size() == six.size());
}

TEST_CASE("enumerated algebras are sorted with no duplicates") {
  const auto all = monalg::enumerate_finite_s(3, 2);
  std::vector<monalg::CanonicalCode> codes;
  for (const Algebra& a : all) codes.push_back(monalg::algebra_code(a));
  for (std::size_t i = 0; i + 1 < codes.size(); ++i) {
    CHECK(codes[i] < codes[i + 1]);
  }
  // One cycle per length, plus one algebra per (cycle length, tree class).
  const std::size_t tree_classes = monalg::count_t(2).to_u64();
  CHECK(all.size() == 3 + 3 * tree_classes);
}
