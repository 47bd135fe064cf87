#include "monalg/structure.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace monalg {

std::vector<char> cyclic_mask(const Algebra& a) {
  // Peel nodes with no remaining preimage; whatever survives lies on a cycle.
  std::vector<std::uint32_t> indegree(a.size(), 0);
  for (Node x = 0; x < a.size(); ++x) ++indegree[a.successor(x)];
  std::vector<Node> queue;
  for (Node x = 0; x < a.size(); ++x) {
    if (indegree[x] == 0) queue.push_back(x);
  }
  std::vector<char> cyclic(a.size(), 1);
  while (!queue.empty()) {
    Node x = queue.back();
    queue.pop_back();
    cyclic[x] = 0;
    Node next = a.successor(x);
    if (--indegree[next] == 0) queue.push_back(next);
  }
  return cyclic;
}

NodeSubset cyclic_nodes(const Algebra& a) {
  const std::vector<char> mask = cyclic_mask(a);
  std::vector<Node> nodes;
  for (Node x = 0; x < a.size(); ++x) {
    if (mask[x]) nodes.push_back(x);
  }
  return NodeSubset(a, std::move(nodes));
}

DegreeMap degree_function(const Algebra& a) {
  const auto pre = a.preimages();
  std::vector<std::uint32_t> pending(a.size());
  for (Node x = 0; x < a.size(); ++x) {
    pending[x] = static_cast<std::uint32_t>(pre[x].size());
  }
  std::vector<std::uint64_t> degree(a.size(), DegreeMap::kInfinite);
  std::vector<Node> queue;
  for (Node x = 0; x < a.size(); ++x) {
    if (pending[x] == 0) {
      degree[x] = 0;
      queue.push_back(x);
    }
  }
  // Nodes are finished in order of increasing degree; a node becomes ready
  // once all its preimages have been assigned.
  while (!queue.empty()) {
    Node x = queue.back();
    queue.pop_back();
    Node next = a.successor(x);
    if (--pending[next] == 0 && degree[next] == DegreeMap::kInfinite) {
      std::uint64_t best = 0;
      for (Node y : pre[next]) {
        best = std::max(best, degree[y] + 1);
      }
      degree[next] = best;
      queue.push_back(next);
    }
  }
  return DegreeMap{&a, std::move(degree)};
}

ComponentPartition connected_components(const Algebra& a) {
  // Union by following successors: x and f(x) always share a component.
  std::vector<Node> rep(a.size());
  for (Node x = 0; x < a.size(); ++x) rep[x] = x;
  auto find = [&rep](Node x) {
    while (rep[x] != x) {
      rep[x] = rep[rep[x]];
      x = rep[x];
    }
    return x;
  };
  for (Node x = 0; x < a.size(); ++x) {
    Node rx = find(x);
    Node ry = find(a.successor(x));
    if (rx != ry) rep[std::max(rx, ry)] = std::min(rx, ry);
  }
  std::vector<Node> component_id(a.size(), kNoNode);
  std::size_t count = 0;
  for (Node x = 0; x < a.size(); ++x) {
    Node r = find(x);
    if (component_id[r] == kNoNode) {
      component_id[r] = static_cast<Node>(count++);
    }
    component_id[x] = component_id[r];
  }
  return ComponentPartition{&a, std::move(component_id), count};
}

std::vector<std::vector<Node>> ComponentPartition::members() const {
  std::vector<std::vector<Node>> result(component_count);
  for (Node x = 0; x < component_id.size(); ++x) {
    result[component_id[x]].push_back(x);
  }
  return result;
}

std::vector<std::uint64_t> component_cycle_lengths(
    const Algebra& a, const ComponentPartition& parts) {
  const std::vector<char> cyclic = cyclic_mask(a);
  std::vector<std::uint64_t> lengths(parts.component_count, 0);
  for (Node x = 0; x < a.size(); ++x) {
    if (cyclic[x]) ++lengths[parts.component_id[x]];
  }
  // Every finite component keeps at least one node after peeling.
  for (std::uint64_t len : lengths) assert(len >= 1);
  return lengths;
}

std::vector<Node> boundary_nodes(const Algebra& a) {
  const std::vector<char> cyclic = cyclic_mask(a);
  std::vector<Node> result;
  for (Node x = 0; x < a.size(); ++x) {
    if (!cyclic[x] && cyclic[a.successor(x)]) result.push_back(x);
  }
  return result;
}

PendantTreeExtraction pendant_tree(const Algebra& a, Node x) {
  if (x >= a.size()) {
    throw std::invalid_argument("pendant tree root out of range");
  }
  const std::vector<char> cyclic = cyclic_mask(a);
  if (cyclic[x]) {
    throw std::invalid_argument(
        "pendant tree is undefined for a cyclic node: its preimage closure "
        "contains the whole cycle");
  }
  const auto pre = a.preimages();
  std::vector<Node> nodes{x};
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (Node y : pre[nodes[i]]) nodes.push_back(y);
  }
  std::sort(nodes.begin(), nodes.end());
  std::vector<Node> local_of(a.size(), kNoNode);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    local_of[nodes[i]] = static_cast<Node>(i);
  }
  std::vector<Node> succ(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    succ[i] = nodes[i] == x ? kNoNode : local_of[a.successor(nodes[i])];
  }
  PendantTree tree(local_of[x], std::move(succ));
  return PendantTreeExtraction{std::move(tree), std::move(nodes),
                               std::move(local_of)};
}

std::uint64_t degree_bound(const Algebra& a) {
  const DegreeMap degrees = degree_function(a);
  std::uint64_t bound = 0;
  for (Node x = 0; x < a.size(); ++x) {
    if (!degrees.infinite(x)) bound = std::max(bound, degrees.degree[x]);
  }
  return bound;
}

std::vector<std::uint64_t> tree_degrees(const PendantTree& t) {
  std::vector<std::uint32_t> pending(t.size(), 0);
  for (Node x = 0; x < t.size(); ++x) {
    if (x != t.root()) ++pending[t.successor(x)];
  }
  std::vector<std::uint64_t> degree(t.size(), 0);
  std::vector<Node> queue;
  for (Node x = 0; x < t.size(); ++x) {
    if (pending[x] == 0) queue.push_back(x);
  }
  while (!queue.empty()) {
    Node x = queue.back();
    queue.pop_back();
    if (x == t.root()) continue;
    Node next = t.successor(x);
    degree[next] = std::max(degree[next], degree[x] + 1);
    if (--pending[next] == 0) queue.push_back(next);
  }
  return degree;
}

}  // namespace monalg
