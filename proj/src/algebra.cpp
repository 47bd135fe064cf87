#include "monalg/algebra.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace monalg {

Algebra::Algebra(std::vector<Node> successor) : succ_(std::move(successor)) {
  if (succ_.empty()) {
    throw std::invalid_argument("algebra must have at least one node");
  }
  for (std::size_t i = 0; i < succ_.size(); ++i) {
    if (succ_[i] >= succ_.size()) {
      std::ostringstream msg;
      msg << "successor of node " << i << " is " << succ_[i]
          << ", out of range for " << succ_.size() << " nodes";
      throw std::invalid_argument(msg.str());
    }
  }
}

std::vector<std::vector<Node>> Algebra::preimages() const {
  std::vector<std::vector<Node>> pre(succ_.size());
  for (Node x = 0; x < succ_.size(); ++x) {
    pre[succ_[x]].push_back(x);
  }
  return pre;
}

Algebra Algebra::cycle(std::size_t n) {
  if (n == 0) {
    throw std::invalid_argument("cycle length must be positive");
  }
  std::vector<Node> succ(n);
  for (std::size_t i = 0; i < n; ++i) {
    succ[i] = static_cast<Node>((i + 1) % n);
  }
  return Algebra(std::move(succ));
}

Algebra Algebra::disjoint_union(std::span<const Algebra> parts) {
  if (parts.empty()) {
    throw std::invalid_argument("disjoint union of no algebras");
  }
  std::vector<Node> succ;
  std::size_t offset = 0;
  for (const Algebra& part : parts) {
    for (Node x = 0; x < part.size(); ++x) {
      succ.push_back(static_cast<Node>(part.successor(x) + offset));
    }
    offset += part.size();
  }
  return Algebra(std::move(succ));
}

PendantTree::PendantTree(Node root, std::vector<Node> successor)
    : root_(root), succ_(std::move(successor)) {
  if (succ_.empty() || root_ >= succ_.size()) {
    throw std::invalid_argument("pendant tree root out of range");
  }
  for (std::size_t i = 0; i < succ_.size(); ++i) {
    if (i == root_) {
      if (succ_[i] != kNoNode) {
        throw std::invalid_argument("pendant tree root must lack a successor");
      }
    } else if (succ_[i] >= succ_.size()) {
      throw std::invalid_argument("pendant tree successor out of range");
    }
  }
  // Connected with a unique undefined point means every chain reaches the
  // root without revisiting a node.
  std::vector<char> reaches(succ_.size(), 0);
  reaches[root_] = 1;
  for (Node start = 0; start < succ_.size(); ++start) {
    std::vector<Node> path;
    Node x = start;
    while (!reaches[x]) {
      path.push_back(x);
      Node next = succ_[x];
      for (Node seen : path) {
        if (seen == next) {
          throw std::invalid_argument("pendant tree contains a cycle");
        }
      }
      x = next;
    }
    for (Node y : path) reaches[y] = 1;
  }
}

std::vector<std::vector<Node>> PendantTree::children() const {
  std::vector<std::vector<Node>> ch(succ_.size());
  for (Node x = 0; x < succ_.size(); ++x) {
    if (x != root_) ch[succ_[x]].push_back(x);
  }
  return ch;
}

NodeSubset::NodeSubset(const Algebra& algebra, std::vector<Node> nodes)
    : parent(&algebra), members(std::move(nodes)) {
  if (members.empty()) {
    throw std::invalid_argument("node subset must be nonempty");
  }
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.back() >= algebra.size()) {
    throw std::invalid_argument("node subset member out of range");
  }
}

bool NodeSubset::contains(Node x) const {
  return std::binary_search(members.begin(), members.end(), x);
}

bool is_homomorphism(const HomMap& h) {
  const Algebra& src = *h.source;
  const Algebra& dst = *h.target;
  if (h.map.size() != src.size()) return false;
  for (Node x = 0; x < src.size(); ++x) {
    if (h.map[x] >= dst.size()) return false;
    if (h.map[src.successor(x)] != dst.successor(h.map[x])) return false;
  }
  return true;
}

bool is_subalgebra(const Algebra& algebra, const NodeSubset& subset) {
  for (Node x : subset.members) {
    if (!subset.contains(algebra.successor(x))) return false;
  }
  return true;
}

InducedSubalgebra induced_subalgebra(const Algebra& algebra,
                                     const NodeSubset& subset) {
  if (!is_subalgebra(algebra, subset)) {
    throw std::invalid_argument("subset is not closed under the successor");
  }
  std::vector<Node> local_of(algebra.size(), kNoNode);
  for (std::size_t i = 0; i < subset.members.size(); ++i) {
    local_of[subset.members[i]] = static_cast<Node>(i);
  }
  std::vector<Node> succ(subset.members.size());
  for (std::size_t i = 0; i < subset.members.size(); ++i) {
    succ[i] = local_of[algebra.successor(subset.members[i])];
  }
  return InducedSubalgebra{Algebra(std::move(succ)), subset.members,
                           std::move(local_of)};
}

std::uint64_t product_size(std::span<const Algebra> factors) {
  std::uint64_t total = 1;
  for (const Algebra& f : factors) {
    const std::uint64_t n = f.size();
    if (total > std::numeric_limits<std::uint64_t>::max() / n) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    total *= n;
  }
  return total;
}

std::uint64_t product_index(std::span<const Algebra> factors,
                            std::span<const Node> coords) {
  std::uint64_t index = 0;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    index = index * factors[k].size() + coords[k];
  }
  return index;
}

std::vector<Node> product_coordinates(std::span<const Algebra> factors,
                                      std::uint64_t index) {
  std::vector<Node> coords(factors.size());
  for (std::size_t k = factors.size(); k-- > 0;) {
    coords[k] = static_cast<Node>(index % factors[k].size());
    index /= factors[k].size();
  }
  return coords;
}

Algebra product(std::span<const Algebra> factors, std::size_t max_size) {
  if (factors.empty()) {
    throw std::invalid_argument("product of no factors");
  }
  const std::uint64_t total = product_size(factors);
  if (total > max_size) {
    std::ostringstream msg;
    msg << "product requires " << total << " nodes, over the budget of "
        << max_size;
    if (total == std::numeric_limits<std::uint64_t>::max()) {
      msg << " (size saturated)";
    }
    throw std::runtime_error(msg.str());
  }
  if (total > std::numeric_limits<Node>::max()) {
    throw std::runtime_error("product too large for node labels");
  }
  std::vector<Node> succ(total);
  std::vector<Node> coords(factors.size(), 0);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t image = 0;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      image = image * factors[k].size() + factors[k].successor(coords[k]);
    }
    succ[index] = static_cast<Node>(image);
    for (std::size_t k = factors.size(); k-- > 0;) {
      if (++coords[k] < factors[k].size()) break;
      coords[k] = 0;
    }
  }
  return Algebra(std::move(succ));
}

}  // namespace monalg
