#include "monalg/varieties.hpp"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "monalg/structure.hpp"

namespace monalg {

namespace {

// One reduction round: the least node carrying a violation, with all its
// violating sibling classes (members ascending, classes in code order).
struct StarRound {
  Node node = kNoNode;
  std::vector<std::vector<Node>> classes;
};

std::optional<StarRound> find_star_round(const Algebra& a) {
  const std::vector<CanonicalCode> codes = subtree_codes(a);
  const std::vector<char> cyclic = cyclic_mask(a);
  const auto pre = a.preimages();
  for (Node v = 0; v < a.size(); ++v) {
    std::vector<Node> kids;
    for (Node y : pre[v]) {
      if (!cyclic[y]) kids.push_back(y);
    }
    if (kids.size() < 3) continue;
    std::sort(kids.begin(), kids.end(), [&codes](Node p, Node q) {
      if (codes[p] != codes[q]) return codes[p] < codes[q];
      return p < q;
    });
    StarRound round;
    round.node = v;
    std::size_t i = 0;
    while (i < kids.size()) {
      std::size_t j = i;
      while (j < kids.size() && codes[kids[j]] == codes[kids[i]]) ++j;
      if (j - i >= 3) {
        round.classes.emplace_back(kids.begin() + i, kids.begin() + j);
      }
      i = j;
    }
    if (!round.classes.empty()) return round;
  }
  return std::nullopt;
}

// Component ids grouped by isomorphism class, only classes of three or more,
// ids ascending within a class, classes in code order.
std::vector<std::vector<Node>> violating_component_classes(
    const std::vector<CanonicalCode>& comps) {
  std::vector<Node> ids(comps.size());
  std::iota(ids.begin(), ids.end(), 0);
  std::sort(ids.begin(), ids.end(), [&comps](Node p, Node q) {
    if (comps[p] != comps[q]) return comps[p] < comps[q];
    return p < q;
  });
  std::vector<std::vector<Node>> classes;
  std::size_t i = 0;
  while (i < ids.size()) {
    std::size_t j = i;
    while (j < ids.size() && comps[ids[j]] == comps[ids[i]]) ++j;
    if (j - i >= 3) classes.emplace_back(ids.begin() + i, ids.begin() + j);
    i = j;
  }
  return classes;
}

EmbeddingWitness make_witness(const Algebra& source,
                              std::vector<Algebra> factors,
                              std::vector<std::vector<Node>> coords,
                              std::size_t budget) {
  if (factors.empty()) {
    throw std::invalid_argument("embedding needs at least one factor");
  }
  if (coords.size() != source.size()) {
    throw std::invalid_argument("embedding map does not cover the source");
  }
  for (Node x = 0; x < source.size(); ++x) {
    if (coords[x].size() != factors.size()) {
      throw std::invalid_argument("embedding tuple length mismatch");
    }
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (coords[x][k] >= factors[k].size()) {
        throw std::invalid_argument("embedding coordinate out of range");
      }
    }
  }
  for (Node x = 0; x < source.size(); ++x) {
    const Node fx = source.successor(x);
    for (std::size_t k = 0; k < factors.size(); ++k) {
      if (factors[k].successor(coords[x][k]) != coords[fx][k]) {
        throw std::invalid_argument("embedding map is not a homomorphism");
      }
    }
  }
  {
    std::vector<std::vector<Node>> sorted = coords;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("embedding map is not injective");
    }
  }
  EmbeddingWitness w{source, std::move(factors), std::move(coords),
                     std::nullopt, std::nullopt, false};
  if (product_size(w.factors) <= budget) {
    w.target = product(w.factors, budget);
    std::vector<Node> image;
    image.reserve(w.source.size());
    for (Node x = 0; x < w.source.size(); ++x) {
      image.push_back(
          static_cast<Node>(product_index(w.factors, w.map_coords[x])));
    }
    std::sort(image.begin(), image.end());
    NodeSubset img(*w.target, image);
    w.retract_verified = is_retract(*w.target, img);
    w.image = std::move(image);
  }
  return w;
}

// Winds a connected algebra onto its cycle: cyclic nodes stay put, a tree
// node at distance t above attachment position p lands at position p - t.
std::vector<Node> winding_map(const Algebra& a) {
  const std::vector<char> cyclic = cyclic_mask(a);
  Node start = kNoNode;
  for (Node x = 0; x < a.size(); ++x) {
    if (cyclic[x]) {
      start = x;
      break;
    }
  }
  std::vector<Node> cycle;
  Node cur = start;
  do {
    cycle.push_back(cur);
    cur = a.successor(cur);
  } while (cur != start);
  const std::size_t n = cycle.size();
  std::vector<std::size_t> position(a.size(), 0);
  std::vector<Node> map(a.size(), kNoNode);
  for (std::size_t i = 0; i < n; ++i) {
    map[cycle[i]] = cycle[i];
    position[cycle[i]] = i;
  }
  const auto pre = a.preimages();
  std::vector<Node> stack = cycle;
  while (!stack.empty()) {
    Node x = stack.back();
    stack.pop_back();
    for (Node y : pre[x]) {
      if (map[y] != kNoNode) continue;
      std::size_t p = (position[map[x]] + n - 1) % n;
      map[y] = cycle[p];
      position[y] = p;
      stack.push_back(y);
    }
  }
  return map;
}

}  // namespace

std::vector<std::uint64_t> EmbeddingWitness::flat_map() const {
  if (product_size(factors) == std::numeric_limits<std::uint64_t>::max()) {
    throw std::overflow_error("flat product index would overflow");
  }
  std::vector<std::uint64_t> out(map_coords.size());
  for (std::size_t x = 0; x < map_coords.size(); ++x) {
    out[x] = product_index(factors, map_coords[x]);
  }
  return out;
}

std::vector<std::uint64_t> EmbeddingWitness::flat_image() const {
  std::vector<std::uint64_t> out = flat_map();
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Reduction star_reduce(const Algebra& a) {
  Algebra cur = a;
  std::vector<Node> to_cur(a.size());
  std::iota(to_cur.begin(), to_cur.end(), 0);
  std::vector<Node> from_cur = to_cur;
  while (std::optional<StarRound> round = find_star_round(cur)) {
    std::vector<Node> rmap(cur.size());
    std::iota(rmap.begin(), rmap.end(), 0);
    std::vector<char> removed(cur.size(), 0);
    for (const std::vector<Node>& cls : round->classes) {
      const Node second = cls[1];
      for (std::size_t i = 2; i < cls.size(); ++i) {
        const std::vector<Node> psi = subtree_isomorphism(cur, cls[i], second);
        for (Node t = 0; t < cur.size(); ++t) {
          if (psi[t] != kNoNode) {
            rmap[t] = psi[t];
            removed[t] = 1;
          }
        }
      }
    }
    std::vector<Node> kept_local;
    for (Node t = 0; t < cur.size(); ++t) {
      if (!removed[t]) kept_local.push_back(t);
    }
    InducedSubalgebra ind = induced_subalgebra(cur, NodeSubset(cur, kept_local));
    for (Node x = 0; x < a.size(); ++x) {
      to_cur[x] = ind.local_of[rmap[to_cur[x]]];
    }
    std::vector<Node> next_from(ind.algebra.size());
    for (Node j = 0; j < ind.algebra.size(); ++j) {
      next_from[j] = from_cur[ind.original_of[j]];
    }
    from_cur = std::move(next_from);
    cur = std::move(ind.algebra);
  }
  std::vector<Node> retraction(a.size());
  for (Node x = 0; x < a.size(); ++x) retraction[x] = from_cur[to_cur[x]];
  Reduction result{std::move(cur), NodeSubset(a, from_cur),
                   HomMap{&a, &a, std::move(retraction)}};
  assert(satisfies_star(result.reduced));
  assert(is_homomorphism(result.retraction));
  return result;
}

Reduction star_star_reduce(const Algebra& a) {
  const ComponentPartition parts = connected_components(a);
  const std::vector<CanonicalCode> comps = component_codes(a);
  const auto classes = violating_component_classes(comps);
  std::vector<Node> rmap(a.size());
  std::iota(rmap.begin(), rmap.end(), 0);
  std::vector<char> removed_comp(parts.component_count, 0);
  for (const std::vector<Node>& cls : classes) {
    const Node second = cls[1];
    for (std::size_t i = 2; i < cls.size(); ++i) {
      const std::vector<Node> phi =
          component_isomorphism(a, parts, cls[i], second);
      for (Node t = 0; t < a.size(); ++t) {
        if (phi[t] != kNoNode) rmap[t] = phi[t];
      }
      removed_comp[cls[i]] = 1;
    }
  }
  std::vector<Node> kept;
  for (Node x = 0; x < a.size(); ++x) {
    if (!removed_comp[parts.component_id[x]]) kept.push_back(x);
  }
  InducedSubalgebra ind = induced_subalgebra(a, NodeSubset(a, kept));
  Reduction result{std::move(ind.algebra), NodeSubset(a, kept),
                   HomMap{&a, &a, std::move(rmap)}};
  assert(satisfies_star_star(result.reduced));
  assert(is_homomorphism(result.retraction));
  return result;
}

BranchSplit branch_split(const Algebra& a, std::size_t budget) {
  const ComponentPartition parts = connected_components(a);
  if (parts.component_count != 1) {
    throw std::invalid_argument("branch split needs a connected algebra");
  }
  const std::vector<Node> attach = boundary_nodes(a);
  if (attach.size() < 2) {
    throw std::invalid_argument(
        "branch split needs at least two attachment points");
  }
  const std::vector<char> cyclic = cyclic_mask(a);
  std::vector<Node> cycle;
  for (Node x = 0; x < a.size(); ++x) {
    if (cyclic[x]) cycle.push_back(x);
  }
  const std::vector<Node> phi = winding_map(a);

  BranchSplit split{
      {}, {}, HomMap{&a, &a, phi}, EmbeddingWitness{a, {}, {}, {}, {}, false}};
  std::vector<std::vector<Node>> local_of;
  for (Node b : attach) {
    std::vector<Node> nodes = cycle;
    const PendantTreeExtraction tree = pendant_tree(a, b);
    nodes.insert(nodes.end(), tree.original_of.begin(), tree.original_of.end());
    NodeSubset subset(a, std::move(nodes));
    InducedSubalgebra ind = induced_subalgebra(a, subset);
    split.branch_subsets.push_back(std::move(subset));
    split.branches.push_back(std::move(ind.algebra));
    local_of.push_back(std::move(ind.local_of));
  }

  std::vector<std::vector<Node>> coords(a.size());
  for (Node x = 0; x < a.size(); ++x) {
    coords[x].resize(attach.size());
    for (std::size_t i = 0; i < attach.size(); ++i) {
      Node in_branch = local_of[i][x];
      coords[x][i] = in_branch != kNoNode ? in_branch : local_of[i][phi[x]];
    }
  }
  split.witness = make_witness(a, split.branches, std::move(coords), budget);
  return split;
}

ComponentEmbedding trivial_component_embedding(const Algebra& component) {
  ComponentEmbedding e;
  e.factors.push_back(component);
  e.map_coords.resize(component.size());
  for (Node x = 0; x < component.size(); ++x) e.map_coords[x] = {x};
  return e;
}

EmbeddingWitness component_split(const Algebra& a,
                                 std::span<const ComponentEmbedding> inputs,
                                 std::size_t budget) {
  const ComponentPartition parts = connected_components(a);
  if (inputs.size() != parts.component_count) {
    throw std::invalid_argument("one embedding per component is required");
  }
  const auto members = parts.members();
  std::vector<InducedSubalgebra> comps;
  comps.reserve(parts.component_count);
  for (std::size_t j = 0; j < parts.component_count; ++j) {
    comps.push_back(induced_subalgebra(a, NodeSubset(a, members[j])));
    const Algebra& c = comps[j].algebra;
    const ComponentEmbedding& in = inputs[j];
    if (in.factors.empty() || in.map_coords.size() != c.size()) {
      throw std::invalid_argument("component embedding shape mismatch");
    }
    for (Node x = 0; x < c.size(); ++x) {
      if (in.map_coords[x].size() != in.factors.size()) {
        throw std::invalid_argument("component embedding tuple mismatch");
      }
      for (std::size_t k = 0; k < in.factors.size(); ++k) {
        if (in.map_coords[x][k] >= in.factors[k].size()) {
          throw std::invalid_argument("component embedding value out of range");
        }
        if (in.factors[k].successor(in.map_coords[x][k]) !=
            in.map_coords[c.successor(x)][k]) {
          throw std::invalid_argument(
              "component embedding is not a homomorphism");
        }
      }
    }
    std::vector<std::vector<Node>> sorted = in.map_coords;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("component embedding is not injective");
    }
  }

  // One product coordinate per way of picking a factor for every component;
  // the witness itself has size (nodes x choices), so the budget bounds the
  // choice count as well.
  std::uint64_t choices = 1;
  for (std::size_t j = 0; j < inputs.size(); ++j) {
    choices *= inputs[j].factors.size();
    if (choices > budget) {
      throw std::runtime_error("too many factor choices for the budget");
    }
  }

  std::vector<Algebra> factors;
  std::vector<std::vector<std::size_t>> offsets(choices);
  std::vector<std::size_t> pick(inputs.size(), 0);
  for (std::uint64_t xi = 0; xi < choices; ++xi) {
    std::vector<Algebra> chosen;
    offsets[xi].resize(inputs.size());
    std::size_t offset = 0;
    for (std::size_t j = 0; j < inputs.size(); ++j) {
      offsets[xi][j] = offset;
      chosen.push_back(inputs[j].factors[pick[j]]);
      offset += chosen.back().size();
    }
    factors.push_back(Algebra::disjoint_union(chosen));
    for (std::size_t j = inputs.size(); j-- > 0;) {
      if (++pick[j] < inputs[j].factors.size()) break;
      pick[j] = 0;
    }
  }

  std::vector<std::vector<Node>> coords(a.size());
  for (Node x = 0; x < a.size(); ++x) {
    const std::size_t j = parts.component_id[x];
    const Node xl = comps[j].local_of[x];
    coords[x].resize(choices);
    std::fill(pick.begin(), pick.end(), 0);
    for (std::uint64_t xi = 0; xi < choices; ++xi) {
      coords[x][xi] = static_cast<Node>(inputs[j].map_coords[xl][pick[j]] +
                                        offsets[xi][j]);
      for (std::size_t k = inputs.size(); k-- > 0;) {
        if (++pick[k] < inputs[k].factors.size()) break;
        pick[k] = 0;
      }
    }
  }
  return make_witness(a, std::move(factors), std::move(coords), budget);
}

PowerEmbedding star_power_embedding(const Algebra& a, std::size_t budget) {
  Algebra cur = a;
  std::vector<std::vector<Node>> coords(a.size());
  for (Node x = 0; x < a.size(); ++x) coords[x] = {x};
  std::size_t exponent = 1;
  while (std::optional<StarRound> round = find_star_round(cur)) {
    std::size_t kappa = 0;
    for (const auto& cls : round->classes) kappa = std::max(kappa, cls.size());
    // Per-node tuples for this round, over the nodes of cur: survivors get
    // constant tuples, node number i of a removed tree follows its pattern
    // bitwise through the two isomorphisms onto the kept trees.
    std::vector<std::vector<Node>> step(cur.size());
    std::vector<char> removed(cur.size(), 0);
    for (const std::vector<Node>& cls : round->classes) {
      const Node first = cls[0];
      const Node second = cls[1];
      for (std::size_t i = 2; i < cls.size(); ++i) {
        const std::size_t pattern = i - 1;  // nonzero, below 2^kappa - 1
        const std::vector<Node> psi1 = subtree_isomorphism(cur, cls[i], first);
        const std::vector<Node> psi2 = subtree_isomorphism(cur, cls[i], second);
        for (Node t = 0; t < cur.size(); ++t) {
          if (psi1[t] == kNoNode) continue;
          removed[t] = 1;
          step[t].resize(kappa);
          for (std::size_t j = 0; j < kappa; ++j) {
            step[t][j] = (pattern >> j) & 1 ? psi2[t] : psi1[t];
          }
        }
      }
    }
    std::vector<Node> kept_local;
    for (Node t = 0; t < cur.size(); ++t) {
      if (!removed[t]) {
        kept_local.push_back(t);
        step[t].assign(kappa, t);
      }
    }
    InducedSubalgebra ind = induced_subalgebra(cur, NodeSubset(cur, kept_local));
    for (Node t = 0; t < cur.size(); ++t) {
      for (Node& v : step[t]) v = ind.local_of[v];
    }
    if (exponent > budget / kappa) {
      throw std::runtime_error("embedding exponent exceeds the budget");
    }
    for (Node x = 0; x < a.size(); ++x) {
      std::vector<Node> next;
      next.reserve(exponent * kappa);
      for (Node v : coords[x]) {
        next.insert(next.end(), step[v].begin(), step[v].end());
      }
      coords[x] = std::move(next);
    }
    exponent *= kappa;
    cur = std::move(ind.algebra);
  }
  std::vector<Algebra> factors(exponent, cur);
  PowerEmbedding out{std::move(cur), exponent,
                     make_witness(a, std::move(factors), std::move(coords),
                                  budget)};
  return out;
}

PowerEmbedding star_star_power_embedding(const Algebra& a,
                                         std::size_t budget) {
  const ComponentPartition parts = connected_components(a);
  const std::vector<CanonicalCode> comps = component_codes(a);
  const auto classes = violating_component_classes(comps);
  std::size_t kappa = 1;
  for (const auto& cls : classes) kappa = std::max(kappa, cls.size());

  std::vector<std::vector<Node>> coords(a.size());
  std::vector<char> removed_comp(parts.component_count, 0);
  for (const std::vector<Node>& cls : classes) {
    const Node first = cls[0];
    const Node second = cls[1];
    for (std::size_t i = 2; i < cls.size(); ++i) {
      const std::size_t pattern = i - 1;
      const std::vector<Node> phi1 =
          component_isomorphism(a, parts, cls[i], first);
      const std::vector<Node> phi2 =
          component_isomorphism(a, parts, cls[i], second);
      removed_comp[cls[i]] = 1;
      for (Node t = 0; t < a.size(); ++t) {
        if (phi1[t] == kNoNode) continue;
        coords[t].resize(kappa);
        for (std::size_t j = 0; j < kappa; ++j) {
          coords[t][j] = (pattern >> j) & 1 ? phi2[t] : phi1[t];
        }
      }
    }
  }
  std::vector<Node> kept;
  for (Node x = 0; x < a.size(); ++x) {
    if (!removed_comp[parts.component_id[x]]) {
      kept.push_back(x);
      coords[x].assign(kappa, x);
    }
  }
  InducedSubalgebra ind = induced_subalgebra(a, NodeSubset(a, kept));
  for (Node x = 0; x < a.size(); ++x) {
    for (Node& v : coords[x]) v = ind.local_of[v];
  }
  std::vector<Algebra> factors(kappa, ind.algebra);
  PowerEmbedding out{std::move(ind.algebra), kappa,
                     make_witness(a, std::move(factors), std::move(coords),
                                  budget)};
  assert(satisfies_star_star(out.reduced));
  return out;
}

GeneratorsResult generators(const Algebra& a) {
  const ComponentPartition input_parts = connected_components(a);
  const Reduction ss = star_star_reduce(a);
  const std::vector<Node>& ss_orig = ss.kept.members;
  const ComponentPartition parts = connected_components(ss.reduced);
  const auto members = parts.members();

  std::vector<std::pair<Algebra, GeneratorOrigin>> emitted;
  for (std::size_t j = 0; j < parts.component_count; ++j) {
    const InducedSubalgebra comp =
        induced_subalgebra(ss.reduced, NodeSubset(ss.reduced, members[j]));
    const Reduction r = star_reduce(comp.algebra);
    const Algebra& reduced = r.reduced;
    auto to_input = [&](Node local) {
      return ss_orig[comp.original_of[r.kept.members[local]]];
    };
    auto emit = [&](const Algebra& g, const std::vector<Node>& local_nodes) {
      GeneratorOrigin origin;
      for (Node t : local_nodes) origin.subset.push_back(to_input(t));
      std::sort(origin.subset.begin(), origin.subset.end());
      origin.component = input_parts.component_id[origin.subset.front()];
      emitted.emplace_back(g, std::move(origin));
    };
    if (boundary_nodes(reduced).size() < 2) {
      std::vector<Node> all(reduced.size());
      std::iota(all.begin(), all.end(), 0);
      emit(reduced, all);
    } else {
      const BranchSplit split = branch_split(reduced);
      for (std::size_t i = 0; i < split.branches.size(); ++i) {
        emit(split.branches[i], split.branch_subsets[i].members);
      }
    }
  }

  GeneratorsResult result;
  std::vector<CanonicalCode> seen;
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < emitted.size(); ++i) {
    CanonicalCode code = algebra_code(emitted[i].first);
    if (std::find(seen.begin(), seen.end(), code) != seen.end()) continue;
    seen.push_back(std::move(code));
    order.push_back(i);
  }
  std::sort(order.begin(), order.end(), [&](std::size_t p, std::size_t q) {
    return algebra_code(emitted[p].first) < algebra_code(emitted[q].first);
  });
  for (std::size_t i : order) {
    result.set.codes.push_back(algebra_code(emitted[i].first));
    result.set.algebras.push_back(std::move(emitted[i].first));
    result.origins.push_back(std::move(emitted[i].second));
  }
  assert(generator_set_valid(result.set));
  return result;
}

bool is_generator_shape(const Algebra& a) {
  return connected_components(a).component_count == 1 &&
         boundary_nodes(a).size() <= 1 && satisfies_star(a);
}

bool generator_set_valid(const GeneratorSet& g) {
  if (g.codes.size() != g.algebras.size()) return false;
  for (std::size_t i = 0; i < g.codes.size(); ++i) {
    if (i > 0 && !(g.codes[i - 1] < g.codes[i])) return false;
    if (algebra_code(g.algebras[i]) != g.codes[i]) return false;
    if (!is_generator_shape(g.algebras[i])) return false;
  }
  return true;
}

bool in_cycle_variety(const Algebra& b, std::uint64_t n) {
  if (n == 0) {
    throw std::invalid_argument("cycle length must be positive");
  }
  if (n == 1) return b.size() == 1;
  const std::vector<char> cyclic = cyclic_mask(b);
  for (Node x = 0; x < b.size(); ++x) {
    if (!cyclic[x]) return false;
  }
  const ComponentPartition parts = connected_components(b);
  for (std::uint64_t len : component_cycle_lengths(b, parts)) {
    if (len != n) return false;
  }
  return true;
}

bool in_v23(const Algebra& b) {
  return in_cycle_variety(b, 2) || in_cycle_variety(b, 3) ||
         in_cycle_variety(b, 6);
}

namespace {

// Structural data for one side of the membership search.
struct Skeleton {
  ComponentPartition parts;
  std::vector<std::uint64_t> cycle_lengths;
  std::vector<char> cyclic;
  std::vector<std::vector<Node>> cycles;      // per component, successor order
  std::vector<std::vector<Node>> tree_order;  // per component, parent first
};

Skeleton skeleton(const Algebra& a) {
  Skeleton s{connected_components(a), {}, cyclic_mask(a), {}, {}};
  s.cycle_lengths = component_cycle_lengths(a, s.parts);
  s.cycles.resize(s.parts.component_count);
  s.tree_order.resize(s.parts.component_count);
  const auto members = s.parts.members();
  const auto pre = a.preimages();
  for (std::size_t c = 0; c < s.parts.component_count; ++c) {
    Node start = kNoNode;
    for (Node x : members[c]) {
      if (s.cyclic[x]) {
        start = x;
        break;
      }
    }
    Node cur = start;
    do {
      s.cycles[c].push_back(cur);
      cur = a.successor(cur);
    } while (cur != start);
    std::vector<Node> frontier = s.cycles[c];
    for (std::size_t i = 0; i < frontier.size(); ++i) {
      for (Node y : pre[frontier[i]]) {
        if (s.cyclic[y]) continue;
        frontier.push_back(y);
        s.tree_order[c].push_back(y);
      }
    }
  }
  return s;
}

struct ProductSearch {
  const Algebra& b;
  const Skeleton& bs;
  const Algebra& d;
  const Skeleton& ds;
  const std::vector<std::vector<Node>>& d_pre;
  std::uint64_t& steps;
  const std::uint64_t step_cap;

  std::vector<Node> map;
  std::vector<char> used;
  std::vector<char> used_comp;
  bool cap_hit = false;
  std::optional<std::vector<Node>> found;

  ProductSearch(const Algebra& b_, const Skeleton& bs_, const Algebra& d_,
                const Skeleton& ds_, const std::vector<std::vector<Node>>& pre_,
                std::uint64_t& steps_, std::uint64_t cap_)
      : b(b_), bs(bs_), d(d_), ds(ds_), d_pre(pre_), steps(steps_),
        step_cap(cap_), map(b_.size(), kNoNode), used(d_.size(), 0),
        used_comp(ds_.parts.component_count, 0) {}

  bool run() { return component(0); }

  bool component(std::size_t ci) {
    if (ci == bs.parts.component_count) return finalize();
    const std::vector<Node>& bc = bs.cycles[ci];
    const std::size_t n = bc.size();
    for (std::size_t t = 0; t < ds.parts.component_count; ++t) {
      if (used_comp[t] || ds.cycle_lengths[t] != n) continue;
      const std::vector<Node>& dc = ds.cycles[t];
      used_comp[t] = 1;
      for (std::size_t r = 0; r < n; ++r) {
        if (++steps > step_cap) {
          cap_hit = true;
          used_comp[t] = 0;
          return true;
        }
        for (std::size_t i = 0; i < n; ++i) {
          Node target = dc[(r + i) % n];
          map[bc[i]] = target;
          used[target] = 1;
        }
        if (tree(ci, 0)) {
          used_comp[t] = 0;
          return true;
        }
        for (std::size_t i = 0; i < n; ++i) {
          map[bc[i]] = kNoNode;
          used[dc[i]] = 0;
        }
      }
      used_comp[t] = 0;
    }
    return false;
  }

  bool tree(std::size_t ci, std::size_t idx) {
    if (idx == bs.tree_order[ci].size()) return component(ci + 1);
    const Node x = bs.tree_order[ci][idx];
    const Node w = map[b.successor(x)];
    for (Node cand : d_pre[w]) {
      if (++steps > step_cap) {
        cap_hit = true;
        return true;
      }
      if (used[cand]) continue;
      map[x] = cand;
      used[cand] = 1;
      if (tree(ci, idx + 1)) return true;
      map[x] = kNoNode;
      used[cand] = 0;
    }
    return false;
  }

  bool finalize() {
    std::vector<Node> image = map;
    std::sort(image.begin(), image.end());
    NodeSubset subset(d, image);
    if (!is_retract(d, subset)) return false;
    found = map;
    return true;
  }
};

}  // namespace

MembershipResult bounded_membership(const Algebra& b,
                                    std::span<const Algebra> gens,
                                    std::size_t max_factors,
                                    std::size_t budget) {
  MembershipResult result;
  if (gens.empty()) {
    result.note = "no generators supplied";
    return result;
  }
  const Skeleton bsk = skeleton(b);
  constexpr std::uint64_t kStepCap = 50'000'000;
  std::uint64_t steps = 0;

  std::vector<std::size_t> indices;
  // Multisets in order of size, then lexicographically; the first witness
  // found under that order is the reported one.
  auto search_product = [&](std::span<const std::size_t> chosen) -> bool {
    std::vector<Algebra> factors;
    factors.reserve(chosen.size());
    for (std::size_t i : chosen) factors.push_back(gens[i]);
    if (product_size(factors) > budget) {
      ++result.products_skipped;
      return false;
    }
    const Algebra d = product(factors, budget);
    ++result.products_tried;
    if (b.size() > d.size()) return false;
    const Skeleton dsk = skeleton(d);
    for (std::size_t c = 0; c < bsk.parts.component_count; ++c) {
      std::size_t need = 0, have = 0;
      for (std::uint64_t len : bsk.cycle_lengths) {
        if (len == bsk.cycle_lengths[c]) ++need;
      }
      for (std::uint64_t len : dsk.cycle_lengths) {
        if (len == bsk.cycle_lengths[c]) ++have;
      }
      if (need > have) return false;
    }
    const auto d_pre = d.preimages();
    ProductSearch search(b, bsk, d, dsk, d_pre, steps, kStepCap);
    if (search.run() && search.found) {
      std::vector<Node> image = *search.found;
      std::sort(image.begin(), image.end());
      result.certified = true;
      result.witness = MembershipWitness{
          std::vector<std::size_t>(chosen.begin(), chosen.end()),
          *search.found, std::move(image)};
      return true;
    }
    return search.cap_hit;
  };

  bool stop = false;
  auto extend = [&](auto&& self, std::size_t min_index,
                    std::size_t remaining) -> void {
    if (stop) return;
    if (remaining == 0) {
      if (search_product(indices) || steps > kStepCap) stop = true;
      return;
    }
    for (std::size_t i = min_index; i < gens.size() && !stop; ++i) {
      indices.push_back(i);
      self(self, i, remaining - 1);
      indices.pop_back();
    }
  };
  for (std::size_t k = 1; k <= max_factors && !stop; ++k) {
    extend(extend, 0, k);
  }

  if (!result.certified) {
    std::ostringstream note;
    if (steps > kStepCap) {
      note << "step budget exhausted after " << result.products_tried
           << " products";
    } else {
      note << "no witness among products of up to " << max_factors
           << " generators (" << result.products_tried << " searched, "
           << result.products_skipped << " over the size budget)";
    }
    result.note = note.str();
  }
  return result;
}

}  // namespace monalg
