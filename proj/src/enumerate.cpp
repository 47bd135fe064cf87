#include "monalg/enumerate.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <stdexcept>

namespace monalg {

namespace {

// Largest exponent count_t will expand; 3^e beyond this is too large to
// print, let alone store.
constexpr std::uint64_t kMaxPow3Exponent = 100000;

}  // namespace

BigNat::BigNat(std::uint64_t v) {
  if (v) limbs_.push_back(static_cast<std::uint32_t>(v));
  if (v >> 32) limbs_.push_back(static_cast<std::uint32_t>(v >> 32));
}

std::uint64_t BigNat::to_u64() const {
  if (limbs_.size() > 2) {
    throw std::overflow_error("value exceeds 64 bits");
  }
  std::uint64_t v = 0;
  if (limbs_.size() == 2) v = static_cast<std::uint64_t>(limbs_[1]) << 32;
  if (!limbs_.empty()) v |= limbs_[0];
  return v;
}

BigNat& BigNat::operator+=(const BigNat& o) {
  if (limbs_.size() < o.limbs_.size()) limbs_.resize(o.limbs_.size(), 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t cur = carry + limbs_[i];
    if (i < o.limbs_.size()) cur += o.limbs_[i];
    limbs_[i] = static_cast<std::uint32_t>(cur);
    carry = cur >> 32;
  }
  if (carry) limbs_.push_back(static_cast<std::uint32_t>(carry));
  return *this;
}

BigNat& BigNat::operator-=(const BigNat& o) {
  if (*this < o) {
    throw std::invalid_argument("difference would be negative");
  }
  std::uint64_t borrow = 0;
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t sub = borrow + (i < o.limbs_.size() ? o.limbs_[i] : 0);
    std::uint64_t cur = limbs_[i];
    if (cur >= sub) {
      limbs_[i] = static_cast<std::uint32_t>(cur - sub);
      borrow = 0;
    } else {
      limbs_[i] = static_cast<std::uint32_t>((cur + (1ull << 32)) - sub);
      borrow = 1;
    }
  }
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  return *this;
}

BigNat BigNat::operator*(const BigNat& o) const {
  BigNat result;
  if (is_zero() || o.is_zero()) return result;
  result.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (std::size_t i = 0; i < limbs_.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < o.limbs_.size(); ++j) {
      std::uint64_t cur = result.limbs_[i + j] + carry +
                          static_cast<std::uint64_t>(limbs_[i]) * o.limbs_[j];
      result.limbs_[i + j] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
    }
    std::size_t k = i + o.limbs_.size();
    while (carry) {
      std::uint64_t cur = result.limbs_[k] + carry;
      result.limbs_[k] = static_cast<std::uint32_t>(cur);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!result.limbs_.empty() && result.limbs_.back() == 0) {
    result.limbs_.pop_back();
  }
  return result;
}

bool BigNat::operator<(const BigNat& o) const noexcept {
  if (limbs_.size() != o.limbs_.size()) {
    return limbs_.size() < o.limbs_.size();
  }
  for (std::size_t i = limbs_.size(); i-- > 0;) {
    if (limbs_[i] != o.limbs_[i]) return limbs_[i] < o.limbs_[i];
  }
  return false;
}

bool BigNat::operator<=(const BigNat& o) const noexcept { return !(o < *this); }

BigNat BigNat::pow3(std::uint64_t e) {
  BigNat result(1);
  BigNat base(3);
  while (e) {
    if (e & 1) result = result * base;
    base = base * base;
    e >>= 1;
  }
  return result;
}

std::string BigNat::to_string() const {
  if (is_zero()) return "0";
  std::vector<std::uint32_t> work = limbs_;
  std::vector<std::uint32_t> groups;
  while (!work.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = work.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | work[i];
      work[i] = static_cast<std::uint32_t>(cur / 1000000000);
      rem = cur % 1000000000;
    }
    while (!work.empty() && work.back() == 0) work.pop_back();
    groups.push_back(static_cast<std::uint32_t>(rem));
  }
  std::string out = std::to_string(groups.back());
  for (std::size_t i = groups.size() - 1; i-- > 0;) {
    std::string part = std::to_string(groups[i]);
    out += std::string(9 - part.size(), '0') + part;
  }
  return out;
}

BigNat count_t(std::uint64_t bound) {
  if (bound == 0) return BigNat(0);
  // With S_h classes of root degree below h, the classes of degree at most
  // h correspond to the multiplicity functions S_h -> {0,1,2}, so
  // S_{h+1} = 3^{S_h}; telescoping the per-level counts leaves
  // 3^{S_bound} - 1 classes of degree 1..bound.
  BigNat s(1);
  for (std::uint64_t h = 1; h <= bound; ++h) {
    if (!s.fits_u64() || s.to_u64() > kMaxPow3Exponent) {
      throw std::runtime_error(
          "cap exceeded: the class count needs exponent 3^" + s.to_string());
    }
    BigNat next = BigNat::pow3(s.to_u64());
    if (h == bound) {
      next -= BigNat(1);
      return next;
    }
    s = std::move(next);
  }
  return BigNat(0);
}

namespace {

// Classes materialized so far, in level order starting with the single-node
// tree; degree and node count are kept alongside for the chooser.
struct ClassPool {
  std::vector<PendantTree> trees;
  std::vector<std::uint64_t> degrees;
  std::vector<std::size_t> sizes;
};

PendantTree assemble(const ClassPool& pool,
                     const std::vector<std::pair<std::size_t, int>>& chosen) {
  std::vector<Node> succ{kNoNode};
  for (const auto& [ci, mult] : chosen) {
    const PendantTree& t = pool.trees[ci];
    for (int rep = 0; rep < mult; ++rep) {
      const Node offset = static_cast<Node>(succ.size());
      for (Node i = 0; i < t.size(); ++i) {
        succ.push_back(i == t.root() ? 0
                                     : static_cast<Node>(t.successor(i) + offset));
      }
    }
  }
  return PendantTree(0, std::move(succ));
}

TreeClassCatalog build_catalog(std::uint64_t bound, std::size_t max_nodes) {
  ClassPool pool;
  pool.trees.emplace_back(0, std::vector<Node>{kNoNode});
  pool.degrees.push_back(0);
  pool.sizes.push_back(1);

  std::vector<std::pair<PendantTree, CanonicalCode>> out;
  for (std::uint64_t h = 1; h <= bound; ++h) {
    const std::size_t prev = pool.trees.size();
    std::vector<std::pair<std::size_t, int>> chosen;
    // Pick at most two copies of each earlier class, at least one of degree
    // exactly h-1, within the node budget.
    auto dfs = [&](auto&& self, std::size_t ci, std::size_t budget,
                   bool has_top) -> void {
      if (!has_top) {
        bool possible = false;
        for (std::size_t j = ci; j < prev; ++j) {
          if (pool.degrees[j] == h - 1 && pool.sizes[j] <= budget) {
            possible = true;
            break;
          }
        }
        if (!possible) return;
      }
      if (ci == prev) {
        PendantTree t = assemble(pool, chosen);
        pool.trees.push_back(t);
        pool.degrees.push_back(h);
        pool.sizes.push_back(t.size());
        CanonicalCode code = tree_code(t);
        out.emplace_back(std::move(t), std::move(code));
        return;
      }
      for (int m = 0; m <= 2; ++m) {
        const std::size_t cost = m * pool.sizes[ci];
        if (cost > budget) break;
        if (m > 0) chosen.emplace_back(ci, m);
        self(self, ci + 1, budget - cost,
             has_top || (m > 0 && pool.degrees[ci] == h - 1));
        if (m > 0) chosen.pop_back();
      }
    };
    if (max_nodes >= 1) dfs(dfs, 0, max_nodes - 1, false);
  }

  std::sort(out.begin(), out.end(),
            [](const auto& p, const auto& q) { return p.second < q.second; });
  TreeClassCatalog catalog{bound, {}, {}};
  for (auto& [tree, code] : out) {
    assert(catalog.codes.empty() || catalog.codes.back() < code);
    catalog.codes.push_back(std::move(code));
    catalog.trees.push_back(std::move(tree));
  }
  return catalog;
}

}  // namespace

TreeClassCatalog enumerate_t(std::uint64_t bound, std::size_t cap) {
  const BigNat total = count_t(bound);
  if (!total.fits_u64() || total.to_u64() > cap) {
    throw std::runtime_error("cap exceeded: catalog would hold " +
                             total.to_string() + " classes");
  }
  return build_catalog(bound, std::numeric_limits<std::size_t>::max());
}

TreeClassCatalog enumerate_t_bounded(std::uint64_t bound,
                                     std::size_t max_nodes) {
  return build_catalog(bound, max_nodes);
}

std::vector<Algebra> enumerate_finite_s(std::uint64_t max_cycle,
                                        std::uint64_t tree_bound,
                                        std::size_t cap) {
  const TreeClassCatalog catalog = enumerate_t(tree_bound, cap);
  std::vector<std::pair<Algebra, CanonicalCode>> out;
  auto add = [&out](Algebra a) {
    if (!satisfies_star(a)) return;
    CanonicalCode code = algebra_code(a);
    for (const auto& [other, existing] : out) {
      if (existing == code) return;
    }
    out.emplace_back(std::move(a), std::move(code));
  };
  for (std::uint64_t n = 1; n <= max_cycle; ++n) {
    add(Algebra::cycle(n));
    for (const PendantTree& t : catalog.trees) {
      std::vector<Node> succ(n + t.size());
      for (std::uint64_t i = 0; i < n; ++i) {
        succ[i] = static_cast<Node>((i + 1) % n);
      }
      for (Node i = 0; i < t.size(); ++i) {
        succ[n + i] = i == t.root() ? 0
                                    : static_cast<Node>(t.successor(i) + n);
      }
      add(Algebra(std::move(succ)));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const auto& p, const auto& q) { return p.second < q.second; });
  std::vector<Algebra> result;
  result.reserve(out.size());
  for (auto& [algebra, code] : out) result.push_back(std::move(algebra));
  return result;
}

}  // namespace monalg
