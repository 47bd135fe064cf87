#include "monalg/retract.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <stdexcept>

#include "monalg/structure.hpp"

namespace monalg {

bool witness_valid(const RetractionWitness& w) {
  if (w.base == nullptr || w.image.parent != w.base) return false;
  if (w.map.source != w.base || w.map.target != w.base) return false;
  if (!is_homomorphism(w.map)) return false;
  for (Node x = 0; x < w.base->size(); ++x) {
    if (!w.image.contains(w.map.map[x])) return false;
  }
  for (Node m : w.image.members) {
    if (w.map.map[m] != m) return false;
  }
  return true;
}

namespace {

void require_closed(const Algebra& a, const NodeSubset& m) {
  if (m.parent != &a) {
    throw std::invalid_argument("subset does not belong to this algebra");
  }
  for (Node x : m.members) {
    if (!m.contains(a.successor(x))) {
      throw std::invalid_argument("subset is not closed under the successor");
    }
  }
}

struct RetractAnalysis {
  DegreeMap degrees;
  ComponentPartition parts;
  std::vector<std::uint64_t> cycle_lengths;
  std::vector<char> meets_m;           // per component
  std::vector<char> in_m;              // per node
  bool preimage_condition = true;      // clause (a)
  bool component_condition = true;     // clause (b)
};

RetractAnalysis analyze(const Algebra& a, const NodeSubset& m) {
  require_closed(a, m);
  RetractAnalysis r{degree_function(a), connected_components(a), {}, {}, {},
                    true, true};
  r.cycle_lengths = component_cycle_lengths(a, r.parts);
  r.in_m.assign(a.size(), 0);
  for (Node x : m.members) r.in_m[x] = 1;
  r.meets_m.assign(r.parts.component_count, 0);
  for (Node x : m.members) r.meets_m[r.parts.component_id[x]] = 1;

  const auto pre = a.preimages();
  for (Node y = 0; y < a.size() && r.preimage_condition; ++y) {
    Node target = a.successor(y);
    if (!r.in_m[target]) continue;
    bool matched = false;
    for (Node z : pre[target]) {
      if (r.in_m[z] && r.degrees.degree[z] >= r.degrees.degree[y]) {
        matched = true;
        break;
      }
    }
    if (!matched) r.preimage_condition = false;
  }

  for (std::size_t c = 0; c < r.parts.component_count; ++c) {
    if (r.meets_m[c]) continue;
    bool matched = false;
    for (std::size_t c2 = 0; c2 < r.parts.component_count; ++c2) {
      if (r.meets_m[c2] && r.cycle_lengths[c] % r.cycle_lengths[c2] == 0) {
        matched = true;
        break;
      }
    }
    if (!matched) {
      r.component_condition = false;
      break;
    }
  }
  return r;
}

}  // namespace

bool is_retract(const Algebra& a, const NodeSubset& m) {
  const RetractAnalysis r = analyze(a, m);
  return r.preimage_condition && r.component_condition;
}

std::optional<RetractionWitness> find_retraction(const Algebra& a,
                                                 const NodeSubset& m) {
  const RetractAnalysis r = analyze(a, m);
  if (!r.preimage_condition || !r.component_condition) return std::nullopt;

  const auto pre = a.preimages();
  const std::vector<char> cyclic = cyclic_mask(a);
  std::vector<Node> map(a.size(), kNoNode);
  for (Node x : m.members) map[x] = x;

  // Components meeting M: walk outward from M against the arrows.  When y is
  // reached, its successor already maps to some w in M; any least-index
  // member of M over w with degree at least degree(y) keeps the construction
  // going, because members of M realize their full degree inside M.
  std::vector<Node> frontier = m.members;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    Node x = frontier[i];
    for (Node y : pre[x]) {
      if (map[y] != kNoNode) continue;
      Node w = map[x];
      Node chosen = kNoNode;
      for (Node z : pre[w]) {
        if (r.in_m[z] && r.degrees.degree[z] >= r.degrees.degree[y]) {
          chosen = z;
          break;
        }
      }
      assert(chosen != kNoNode);
      map[y] = chosen;
      frontier.push_back(y);
    }
  }

  // Components disjoint from M wind onto the least component through M whose
  // cycle length divides theirs; trees funnel into the cycle one step back.
  const auto members = r.parts.members();
  std::vector<Node> cycle_start(r.parts.component_count, kNoNode);
  for (Node x = 0; x < a.size(); ++x) {
    Node c = r.parts.component_id[x];
    if (cyclic[x] && cycle_start[c] == kNoNode) cycle_start[c] = x;
  }
  for (std::size_t c = 0; c < r.parts.component_count; ++c) {
    if (r.meets_m[c]) continue;
    std::size_t target = r.parts.component_count;
    for (std::size_t c2 = 0; c2 < r.parts.component_count; ++c2) {
      if (r.meets_m[c2] && r.cycle_lengths[c] % r.cycle_lengths[c2] == 0) {
        target = c2;
        break;
      }
    }
    assert(target < r.parts.component_count);
    const std::size_t n = r.cycle_lengths[target];
    std::vector<Node> target_cycle;
    target_cycle.reserve(n);
    Node cur = cycle_start[target];
    do {
      target_cycle.push_back(cur);
      cur = a.successor(cur);
    } while (cur != cycle_start[target]);
    std::vector<std::size_t> position(a.size(), 0);
    cur = cycle_start[c];
    std::size_t j = 0;
    do {
      map[cur] = target_cycle[j % n];
      position[cur] = j % n;
      cur = a.successor(cur);
      ++j;
    } while (cur != cycle_start[c]);
    std::vector<Node> stack;
    for (Node x : members[c]) {
      if (cyclic[x]) stack.push_back(x);
    }
    while (!stack.empty()) {
      Node x = stack.back();
      stack.pop_back();
      for (Node y : pre[x]) {
        if (map[y] != kNoNode) continue;
        std::size_t p = (position[x] + n - 1) % n;
        map[y] = target_cycle[p];
        position[y] = p;
        stack.push_back(y);
      }
    }
  }

  RetractionWitness w{&a, m, HomMap{&a, &a, std::move(map)}};
  assert(witness_valid(w));
  return w;
}

namespace {

enum class SlotKind { kFree, kForced, kChoice };

struct Slot {
  Node node;
  SlotKind kind;
  Node forced_from = kNoNode;  // cycle predecessor, for forced slots
  Node cycle_head = kNoNode;   // for the last node of each cycle
  bool closes_cycle = false;
};

void search(const Algebra& a, const std::vector<std::vector<Node>>& pre,
            const std::vector<Slot>& slots, std::size_t i,
            std::vector<Node>& map, std::set<std::vector<Node>>& images) {
  if (i == slots.size()) {
    for (Node x = 0; x < a.size(); ++x) {
      if (map[map[x]] != map[x]) return;
    }
    std::vector<Node> image = map;
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    images.insert(std::move(image));
    return;
  }
  const Slot& slot = slots[i];
  auto descend = [&](Node value) {
    if (slot.closes_cycle) {
      Node head = slot.cycle_head == slot.node ? value : map[slot.cycle_head];
      if (a.successor(value) != head) return;
    }
    map[slot.node] = value;
    search(a, pre, slots, i + 1, map, images);
    map[slot.node] = kNoNode;
  };
  switch (slot.kind) {
    case SlotKind::kFree:
      for (Node v = 0; v < a.size(); ++v) descend(v);
      break;
    case SlotKind::kForced:
      descend(a.successor(map[slot.forced_from]));
      break;
    case SlotKind::kChoice:
      for (Node v : pre[map[a.successor(slot.node)]]) descend(v);
      break;
  }
}

}  // namespace

std::vector<NodeSubset> enumerate_retracts(const Algebra& a,
                                           std::size_t bound) {
  if (a.size() > bound) {
    throw std::invalid_argument("algebra too large for exhaustive retract search");
  }
  const std::vector<char> cyclic = cyclic_mask(a);
  const ComponentPartition parts = connected_components(a);
  const auto pre = a.preimages();
  const auto members = parts.members();

  // Assignment order per component: the cycle in successor order (first node
  // free, the rest forced by the homomorphism law), then tree nodes outward
  // (each choosing among the preimages of its successor's value).
  std::vector<Slot> slots;
  for (std::size_t c = 0; c < parts.component_count; ++c) {
    Node start = kNoNode;
    for (Node x : members[c]) {
      if (cyclic[x]) {
        start = x;
        break;
      }
    }
    std::vector<Node> order;
    Node cur = start;
    do {
      order.push_back(cur);
      cur = a.successor(cur);
    } while (cur != start);
    const std::size_t cycle_len = order.size();
    for (std::size_t i = 0; i < order.size(); ++i) {
      for (Node y : pre[order[i]]) {
        if (!cyclic[y]) order.push_back(y);
      }
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      Slot s{order[i],
             i == 0 ? SlotKind::kFree
                    : (i < cycle_len ? SlotKind::kForced : SlotKind::kChoice)};
      if (s.kind == SlotKind::kForced) s.forced_from = order[i - 1];
      if (i + 1 == cycle_len) {
        s.cycle_head = start;
        s.closes_cycle = true;
      }
      slots.push_back(s);
    }
  }

  std::vector<Node> map(a.size(), kNoNode);
  std::set<std::vector<Node>> images;
  search(a, pre, slots, 0, map, images);

  std::vector<NodeSubset> result;
  result.reserve(images.size());
  for (const std::vector<Node>& image : images) {
    result.emplace_back(a, image);
  }
  return result;
}

}  // namespace monalg
