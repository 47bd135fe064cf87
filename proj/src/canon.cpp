#include "monalg/canon.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace monalg {

std::string CanonicalCode::hex() const {
  std::ostringstream out;
  out << std::hex;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (i) out << '.';
    out << seq[i];
  }
  return out.str();
}

namespace {

// Per-node codes of a free-standing tree, children taken from the tree's
// own successor map.  Nodes are finished in ascending height order, so every
// child is coded before its parent.
std::vector<CanonicalCode> tree_node_codes(const PendantTree& t) {
  std::vector<std::vector<Node>> children(t.size());
  for (Node x = 0; x < t.size(); ++x) {
    if (x != t.root()) children[t.successor(x)].push_back(x);
  }
  const std::vector<std::uint64_t> heights = tree_degrees(t);
  std::vector<Node> order(t.size());
  for (Node x = 0; x < t.size(); ++x) order[x] = x;
  std::sort(order.begin(), order.end(),
            [&heights](Node p, Node q) { return heights[p] < heights[q]; });
  std::vector<CanonicalCode> codes(t.size());
  for (Node v : order) {
    std::vector<CanonicalCode> kid_codes;
    kid_codes.reserve(children[v].size());
    for (Node c : children[v]) kid_codes.push_back(codes[c]);
    std::sort(kid_codes.begin(), kid_codes.end());
    CanonicalCode& code = codes[v];
    code.seq.push_back(kid_codes.size());
    for (const CanonicalCode& k : kid_codes) {
      code.seq.insert(code.seq.end(), k.seq.begin(), k.seq.end());
    }
  }
  return codes;
}

// Cycle of one component in successor order, starting at its least cyclic
// node, plus the rotation at which the concatenated hanging-tree codes are
// lexicographically least (ties broken by smaller rotation index).
struct ComponentShape {
  std::vector<Node> cycle;
  std::size_t canonical_rotation = 0;
  CanonicalCode code;
};

ComponentShape component_shape(const Algebra& a,
                               const std::vector<Node>& members,
                               const std::vector<char>& cyclic,
                               const std::vector<CanonicalCode>& subtree) {
  ComponentShape shape;
  Node start = kNoNode;
  for (Node x : members) {
    if (cyclic[x]) {
      start = x;
      break;
    }
  }
  assert(start != kNoNode);
  Node cur = start;
  do {
    shape.cycle.push_back(cur);
    cur = a.successor(cur);
  } while (cur != start);

  const std::size_t len = shape.cycle.size();
  std::vector<std::uint64_t> best;
  for (std::size_t r = 0; r < len; ++r) {
    std::vector<std::uint64_t> candidate;
    for (std::size_t j = 0; j < len; ++j) {
      const CanonicalCode& h = subtree[shape.cycle[(r + j) % len]];
      candidate.insert(candidate.end(), h.seq.begin(), h.seq.end());
    }
    if (r == 0 || candidate < best) {
      best = std::move(candidate);
      shape.canonical_rotation = r;
    }
  }
  shape.code.seq.push_back(len);
  shape.code.seq.insert(shape.code.seq.end(), best.begin(), best.end());
  return shape;
}

// Non-cyclic preimages of v ordered by (subtree code, node index); the
// deterministic pairing order for isomorphism construction.
std::vector<Node> sorted_hanging_children(
    const std::vector<std::vector<Node>>& pre, const std::vector<char>& cyclic,
    const std::vector<CanonicalCode>& codes, Node v) {
  std::vector<Node> kids;
  for (Node y : pre[v]) {
    if (!cyclic[y]) kids.push_back(y);
  }
  std::sort(kids.begin(), kids.end(), [&codes](Node p, Node q) {
    if (codes[p] != codes[q]) return codes[p] < codes[q];
    return p < q;
  });
  return kids;
}

// Extends an iso over already-matched pairs downward through hanging trees.
void extend_through_trees(const std::vector<std::vector<Node>>& pre,
                          const std::vector<char>& cyclic,
                          const std::vector<CanonicalCode>& codes,
                          std::vector<std::pair<Node, Node>>& queue,
                          std::vector<Node>& map) {
  while (!queue.empty()) {
    auto [s, t] = queue.back();
    queue.pop_back();
    std::vector<Node> from = sorted_hanging_children(pre, cyclic, codes, s);
    std::vector<Node> to = sorted_hanging_children(pre, cyclic, codes, t);
    assert(from.size() == to.size());
    for (std::size_t i = 0; i < from.size(); ++i) {
      assert(codes[from[i]] == codes[to[i]]);
      map[from[i]] = to[i];
      queue.emplace_back(from[i], to[i]);
    }
  }
}

}  // namespace

CanonicalCode tree_code(const PendantTree& t) {
  return tree_node_codes(t)[t.root()];
}

std::vector<CanonicalCode> subtree_codes(const Algebra& a) {
  const std::vector<char> cyclic = cyclic_mask(a);
  const auto pre = a.preimages();
  const DegreeMap degrees = degree_function(a);
  // Finish non-cyclic nodes in ascending degree order, then the cyclic ones;
  // a node's non-cyclic preimages always precede it.
  std::vector<Node> order;
  order.reserve(a.size());
  for (Node x = 0; x < a.size(); ++x) {
    if (!cyclic[x]) order.push_back(x);
  }
  std::sort(order.begin(), order.end(), [&degrees](Node p, Node q) {
    return degrees.degree[p] < degrees.degree[q];
  });
  for (Node x = 0; x < a.size(); ++x) {
    if (cyclic[x]) order.push_back(x);
  }
  std::vector<CanonicalCode> codes(a.size());
  for (Node v : order) {
    std::vector<CanonicalCode> kid_codes;
    for (Node y : pre[v]) {
      if (!cyclic[y]) kid_codes.push_back(codes[y]);
    }
    std::sort(kid_codes.begin(), kid_codes.end());
    CanonicalCode& code = codes[v];
    code.seq.push_back(kid_codes.size());
    for (const CanonicalCode& k : kid_codes) {
      code.seq.insert(code.seq.end(), k.seq.begin(), k.seq.end());
    }
  }
  return codes;
}

std::vector<CanonicalCode> component_codes(const Algebra& a) {
  const ComponentPartition parts = connected_components(a);
  const std::vector<char> cyclic = cyclic_mask(a);
  const std::vector<CanonicalCode> subtree = subtree_codes(a);
  const auto members = parts.members();
  std::vector<CanonicalCode> codes(parts.component_count);
  for (std::size_t c = 0; c < parts.component_count; ++c) {
    codes[c] = component_shape(a, members[c], cyclic, subtree).code;
  }
  return codes;
}

CanonicalCode algebra_code(const Algebra& a) {
  std::vector<CanonicalCode> comps = component_codes(a);
  std::sort(comps.begin(), comps.end());
  CanonicalCode code;
  code.seq.push_back(comps.size());
  for (const CanonicalCode& c : comps) {
    code.seq.insert(code.seq.end(), c.seq.begin(), c.seq.end());
  }
  return code;
}

bool is_isomorphic(const Algebra& a, const Algebra& b) {
  return algebra_code(a) == algebra_code(b);
}

bool satisfies_star(const Algebra& a) {
  const std::vector<char> cyclic = cyclic_mask(a);
  const auto pre = a.preimages();
  const std::vector<CanonicalCode> codes = subtree_codes(a);
  for (Node v = 0; v < a.size(); ++v) {
    std::vector<const CanonicalCode*> kids;
    for (Node y : pre[v]) {
      if (!cyclic[y]) kids.push_back(&codes[y]);
    }
    if (kids.size() < 3) continue;
    std::sort(kids.begin(), kids.end(),
              [](const CanonicalCode* p, const CanonicalCode* q) {
                return *p < *q;
              });
    std::size_t run = 1;
    for (std::size_t i = 1; i < kids.size(); ++i) {
      run = (*kids[i] == *kids[i - 1]) ? run + 1 : 1;
      if (run >= 3) return false;
    }
  }
  return true;
}

bool satisfies_star_star(const Algebra& a) {
  std::vector<CanonicalCode> comps = component_codes(a);
  if (comps.size() < 3) return true;
  std::sort(comps.begin(), comps.end());
  std::size_t run = 1;
  for (std::size_t i = 1; i < comps.size(); ++i) {
    run = (comps[i] == comps[i - 1]) ? run + 1 : 1;
    if (run >= 3) return false;
  }
  return true;
}

bool tree_satisfies_star(const PendantTree& t) {
  const std::vector<CanonicalCode> codes = tree_node_codes(t);
  std::vector<std::vector<Node>> children(t.size());
  for (Node x = 0; x < t.size(); ++x) {
    if (x != t.root()) children[t.successor(x)].push_back(x);
  }
  for (Node v = 0; v < t.size(); ++v) {
    if (children[v].size() < 3) continue;
    std::vector<const CanonicalCode*> kids;
    for (Node c : children[v]) kids.push_back(&codes[c]);
    std::sort(kids.begin(), kids.end(),
              [](const CanonicalCode* p, const CanonicalCode* q) {
                return *p < *q;
              });
    std::size_t run = 1;
    for (std::size_t i = 1; i < kids.size(); ++i) {
      run = (*kids[i] == *kids[i - 1]) ? run + 1 : 1;
      if (run >= 3) return false;
    }
  }
  return true;
}

std::vector<Node> subtree_isomorphism(const Algebra& a, Node x, Node y) {
  if (x >= a.size() || y >= a.size()) {
    throw std::invalid_argument("subtree isomorphism root out of range");
  }
  const std::vector<char> cyclic = cyclic_mask(a);
  if (cyclic[x] || cyclic[y]) {
    throw std::invalid_argument("subtree isomorphism requires non-cyclic roots");
  }
  const std::vector<CanonicalCode> codes = subtree_codes(a);
  if (codes[x] != codes[y]) {
    throw std::invalid_argument("subtrees are not isomorphic");
  }
  const auto pre = a.preimages();
  std::vector<Node> map(a.size(), kNoNode);
  map[x] = y;
  std::vector<std::pair<Node, Node>> queue{{x, y}};
  extend_through_trees(pre, cyclic, codes, queue, map);
  return map;
}

std::vector<Node> component_isomorphism(const Algebra& a,
                                        const ComponentPartition& parts,
                                        Node source_component,
                                        Node target_component) {
  if (source_component >= parts.component_count ||
      target_component >= parts.component_count) {
    throw std::invalid_argument("component id out of range");
  }
  const std::vector<char> cyclic = cyclic_mask(a);
  const std::vector<CanonicalCode> subtree = subtree_codes(a);
  const auto members = parts.members();
  const ComponentShape from =
      component_shape(a, members[source_component], cyclic, subtree);
  const ComponentShape to =
      component_shape(a, members[target_component], cyclic, subtree);
  if (from.code != to.code) {
    throw std::invalid_argument("components are not isomorphic");
  }
  const std::size_t len = from.cycle.size();
  std::vector<Node> map(a.size(), kNoNode);
  std::vector<std::pair<Node, Node>> queue;
  // Align the canonical rotations; the per-position hanging codes then agree.
  for (std::size_t j = 0; j < len; ++j) {
    Node s = from.cycle[(from.canonical_rotation + j) % len];
    Node t = to.cycle[(to.canonical_rotation + j) % len];
    map[s] = t;
    queue.emplace_back(s, t);
  }
  const auto pre = a.preimages();
  extend_through_trees(pre, cyclic, subtree, queue, map);
  return map;
}

}  // namespace monalg
