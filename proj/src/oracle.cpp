#include "mstu/oracle.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>
#include <stdexcept>

#include "mstu/graph.hpp"

namespace mstu {
namespace oracle {

namespace {

EdgeInstanceView reveal_edges(const EdgeInstanceView& view, const std::vector<Rational>& truths,
                              std::span<const EdgeId> queried) {
  EdgeInstanceView revealed = view;
  for (EdgeId e : queried) {
    revealed.sets[e] = UncertaintySet::singleton(truths[e]);
  }
  return revealed;
}

CycleDecomposition index_decomposition(const EdgeInstanceView& view) {
  const std::vector<EdgeId> tree =
      kruskal(view.vertex_count, view.edges, [](EdgeId a, EdgeId b) { return a < b; });
  return decompose_cycles(view.vertex_count, view.edges, tree);
}

bool cycle_has_always_maximal(const EdgeInstanceView& view, std::span<const EdgeId> cycle) {
  for (EdgeId f : cycle) {
    if (always_maximal(view, cycle, f)) return true;
  }
  return false;
}

/// Edge ids that lie on some cycle (equivalently, non-bridges). Weights of
/// bridge edges never enter any verification condition.
std::vector<bool> on_cycle_mask(const EdgeInstanceView& view) {
  const CycleDecomposition decomposition = index_decomposition(view);
  std::vector<bool> mask(view.edges.size(), false);
  for (const auto& cycle : decomposition.cycles) {
    for (EdgeId e : cycle) mask[e] = true;
  }
  return mask;
}

// --- subset enumeration in (cost, cardinality, lexicographic) order --------

bool mask_lex_less(std::uint32_t a, std::uint32_t b) {
  if (a == b) return false;
  const int d = std::countr_zero(a ^ b);
  return (a >> d) & 1u;
}

struct SubsetNode {
  Rational cost;
  std::uint32_t mask;
};

struct SubsetNodeAfter {
  bool operator()(const SubsetNode& x, const SubsetNode& y) const {
    if (x.cost != y.cost) return x.cost > y.cost;
    const int cx = std::popcount(x.mask), cy = std::popcount(y.mask);
    if (cx != cy) return cx > cy;
    return mask_lex_less(y.mask, x.mask);
  }
};

/// Visits subsets of {0..k-1} in non-decreasing cost until `stop` says done.
/// Each subset is generated exactly once by extending with indices above its
/// highest member, so pops are cost-monotone (costs are positive).
void enumerate_subsets(const std::vector<Rational>& costs,
                       const std::function<bool(std::uint32_t, const Rational&)>& visit,
                       std::size_t max_nodes) {
  const std::size_t k = costs.size();
  std::priority_queue<SubsetNode, std::vector<SubsetNode>, SubsetNodeAfter> queue;
  queue.push({Rational(0), 0});
  std::size_t popped = 0;
  while (!queue.empty()) {
    const SubsetNode node = queue.top();
    queue.pop();
    if (++popped > max_nodes) {
      throw std::runtime_error("instance too large for oracle");
    }
    if (visit(node.mask, node.cost)) return;
    const std::size_t first =
        node.mask == 0 ? 0 : static_cast<std::size_t>(std::bit_width(node.mask));
    for (std::size_t j = first; j < k; ++j) {
      queue.push({node.cost + costs[j], node.mask | (1u << j)});
    }
  }
}

struct SubsetSearch {
  std::vector<std::size_t> elements;  // universe, ascending element ids
  std::vector<Rational> costs;        // aligned with elements
};

std::vector<std::size_t> mask_elements(const SubsetSearch& search, std::uint32_t mask) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < search.elements.size(); ++i) {
    if (mask >> i & 1u) ids.push_back(search.elements[i]);
  }
  return ids;
}

std::optional<std::pair<std::vector<std::size_t>, Rational>> cheapest_feasible(
    const SubsetSearch& search, const std::function<bool(std::span<const std::size_t>)>& feasible,
    std::size_t max_nodes) {
  std::optional<std::pair<std::vector<std::size_t>, Rational>> best;
  enumerate_subsets(
      search.costs,
      [&](std::uint32_t mask, const Rational& cost) {
        const std::vector<std::size_t> ids = mask_elements(search, mask);
        if (feasible(ids)) {
          best = {ids, cost};
          return true;
        }
        return false;
      },
      max_nodes);
  return best;
}

std::vector<std::vector<std::size_t>> all_min_feasible(
    const SubsetSearch& search, const std::function<bool(std::span<const std::size_t>)>& feasible,
    std::size_t max_nodes) {
  std::vector<std::vector<std::size_t>> result;
  std::optional<Rational> best_cost;
  enumerate_subsets(
      search.costs,
      [&](std::uint32_t mask, const Rational& cost) {
        if (best_cost && cost > *best_cost) return true;
        const std::vector<std::size_t> ids = mask_elements(search, mask);
        if (feasible(ids)) {
          best_cost = cost;
          result.push_back(ids);
        }
        return false;
      },
      max_nodes);
  if (!best_cost) {
    throw std::logic_error("no feasible query set exists (querying everything must succeed)");
  }
  return result;
}

SubsetSearch edge_universe(const EdgeInstanceView& view, const OracleGuard& guard) {
  const std::vector<bool> relevant = on_cycle_mask(view);
  SubsetSearch search;
  for (EdgeId e = 0; e < view.edges.size(); ++e) {
    if (relevant[e] && !view.sets[e].trivial()) {
      search.elements.push_back(e);
      search.costs.push_back(view.costs[e]);
    }
  }
  if (search.elements.size() > guard.max_elements || search.elements.size() > 31) {
    throw std::runtime_error("instance too large for oracle");
  }
  return search;
}

}  // namespace

std::optional<TreeCertificate> verify_tree(const EdgeInstanceView& view,
                                           std::span<const EdgeId> tree) {
  if (tree.size() + 1 != view.vertex_count) {
    throw std::invalid_argument("edge set is not a spanning tree");
  }
  DisjointSets components(view.vertex_count);
  for (EdgeId e : tree) {
    if (e >= view.edges.size() || !components.unite(view.edges[e].u, view.edges[e].v)) {
      throw std::invalid_argument("edge set is not a spanning tree");
    }
  }
  TreeCertificate certificate;
  certificate.tree.assign(tree.begin(), tree.end());
  std::sort(certificate.tree.begin(), certificate.tree.end());

  const CycleDecomposition decomposition =
      decompose_cycles(view.vertex_count, view.edges, certificate.tree);
  for (std::size_t i = 0; i < decomposition.nontree.size(); ++i) {
    const EdgeId f = decomposition.nontree[i];
    for (EdgeId g : decomposition.cycles[i]) {
      if (g == f) continue;
      if (view.sets[g].upper() > view.sets[f].lower()) {
        return std::nullopt;
      }
      certificate.checks.push_back({f, g, view.sets[g].upper(), view.sets[f].lower()});
    }
  }
  return certificate;
}

bool has_verifiable_tree(const EdgeInstanceView& view, std::size_t tree_budget) {
  const CycleDecomposition decomposition = index_decomposition(view);
  if (is_cactus(decomposition, view.edges.size())) {
    for (const auto& cycle : decomposition.cycles) {
      if (!cycle_has_always_maximal(view, cycle)) return false;
    }
    return true;
  }

  // General graphs: enumerate candidate spanning trees directly.
  const std::size_t m = view.edges.size();
  const std::size_t pick = view.vertex_count - 1;
  std::vector<std::size_t> combo(pick);
  for (std::size_t i = 0; i < pick; ++i) combo[i] = i;
  std::size_t tried = 0;
  while (true) {
    if (++tried > tree_budget) {
      throw std::runtime_error("instance too large for oracle");
    }
    DisjointSets components(view.vertex_count);
    bool acyclic = true;
    for (std::size_t i : combo) {
      if (!components.unite(view.edges[i].u, view.edges[i].v)) {
        acyclic = false;
        break;
      }
    }
    if (acyclic) {
      std::vector<EdgeId> tree(combo.begin(), combo.end());
      if (verify_tree(view, tree)) return true;
    }
    // next combination
    std::size_t i = pick;
    while (i > 0 && combo[i - 1] == m - pick + (i - 1)) --i;
    if (i == 0) break;
    ++combo[i - 1];
    for (std::size_t j = i; j < pick; ++j) combo[j] = combo[j - 1] + 1;
  }
  return false;
}

bool is_feasible_query_set(const EdgeEnvironment& env, std::span<const EdgeId> q) {
  return has_verifiable_tree(reveal_edges(env.view(), env.true_weights(), q));
}

bool is_feasible_vertex_query_set(const VertexEnvironment& env, std::span<const VertexId> q) {
  const VertexInstanceView revealed = reveal_vertices(env.view(), env.true_locations(), q);
  return has_verifiable_tree(associated_edge_instance(revealed));
}

OptimalEdgeQueries optimal_query_set(const EdgeEnvironment& env, const OracleGuard& guard) {
  const EdgeInstanceView& view = env.view();
  const CycleDecomposition decomposition = index_decomposition(view);
  if (!is_cactus(decomposition, view.edges.size())) {
    return optimal_query_set_full(env, guard);
  }

  OptimalEdgeQueries result{{}, Rational(0)};
  for (const auto& cycle : decomposition.cycles) {
    SubsetSearch search;
    for (EdgeId e : cycle) {
      if (!view.sets[e].trivial()) search.elements.push_back(e);
    }
    std::sort(search.elements.begin(), search.elements.end());
    for (EdgeId e : search.elements) search.costs.push_back(view.costs[e]);
    if (search.elements.size() > 31) {
      throw std::runtime_error("instance too large for oracle");
    }
    auto feasible = [&](std::span<const std::size_t> ids) {
      const EdgeInstanceView revealed = reveal_edges(view, env.true_weights(), ids);
      return cycle_has_always_maximal(revealed, cycle);
    };
    const auto best = cheapest_feasible(search, feasible, guard.max_nodes);
    if (!best) {
      throw std::logic_error("cycle admits no feasible query set");
    }
    result.elements.insert(result.elements.end(), best->first.begin(), best->first.end());
    result.cost += best->second;
  }
  std::sort(result.elements.begin(), result.elements.end());
  return result;
}

OptimalEdgeQueries optimal_query_set_full(const EdgeEnvironment& env, const OracleGuard& guard) {
  const SubsetSearch search = edge_universe(env.view(), guard);
  auto feasible = [&](std::span<const std::size_t> ids) {
    return is_feasible_query_set(env, ids);
  };
  const auto best = cheapest_feasible(search, feasible, guard.max_nodes);
  if (!best) {
    throw std::logic_error("no feasible query set exists");
  }
  return {best->first, best->second};
}

std::vector<std::vector<EdgeId>> all_optimal_query_sets(const EdgeEnvironment& env,
                                                        const OracleGuard& guard) {
  const SubsetSearch search = edge_universe(env.view(), guard);
  auto feasible = [&](std::span<const std::size_t> ids) {
    return is_feasible_query_set(env, ids);
  };
  return all_min_feasible(search, feasible, guard.max_nodes);
}

namespace {

SubsetSearch vertex_universe(const VertexEnvironment& env, const OracleGuard& guard) {
  const VertexInstanceView& view = env.view();
  const CycleDecomposition decomposition = index_decomposition(env.assoc());
  std::vector<bool> on_cycle(view.vertex_count, false);
  for (const auto& cycle : decomposition.cycles) {
    for (EdgeId e : cycle) {
      on_cycle[view.edges[e].u] = true;
      on_cycle[view.edges[e].v] = true;
    }
  }
  SubsetSearch search;
  for (VertexId v = 0; v < view.vertex_count; ++v) {
    if (on_cycle[v] && !view.regions[v].trivial()) {
      search.elements.push_back(v);
      search.costs.push_back(rational_from_double(view.costs[v]));
    }
  }
  if (search.elements.size() > guard.max_elements || search.elements.size() > 31) {
    throw std::runtime_error("instance too large for oracle");
  }
  return search;
}

double rational_cost_to_double(const Rational& cost) { return rational_to_double(cost); }

}  // namespace

OptimalVertexQueries optimal_vertex_query_set(const VertexEnvironment& env,
                                              const OracleGuard& guard) {
  const VertexInstanceView& view = env.view();
  const CycleDecomposition decomposition = index_decomposition(env.assoc());

  bool decomposable = is_cactus(decomposition, view.edges.size());
  if (decomposable) {
    std::vector<unsigned> cycles_of_vertex(view.vertex_count, 0);
    for (const auto& cycle : decomposition.cycles) {
      std::vector<VertexId> members;
      for (EdgeId e : cycle) {
        members.push_back(view.edges[e].u);
        members.push_back(view.edges[e].v);
      }
      std::sort(members.begin(), members.end());
      members.erase(std::unique(members.begin(), members.end()), members.end());
      for (VertexId v : members) ++cycles_of_vertex[v];
    }
    for (VertexId v = 0; v < view.vertex_count; ++v) {
      if (cycles_of_vertex[v] > 1 && !view.regions[v].trivial()) decomposable = false;
    }
  }
  if (!decomposable) {
    return optimal_vertex_query_set_full(env, guard);
  }

  OptimalVertexQueries result{{}, 0.0};
  for (const auto& cycle : decomposition.cycles) {
    std::vector<VertexId> members;
    for (EdgeId e : cycle) {
      members.push_back(view.edges[e].u);
      members.push_back(view.edges[e].v);
    }
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());

    SubsetSearch search;
    for (VertexId v : members) {
      if (!view.regions[v].trivial()) {
        search.elements.push_back(v);
        search.costs.push_back(rational_from_double(view.costs[v]));
      }
    }
    if (search.elements.size() > 31) {
      throw std::runtime_error("instance too large for oracle");
    }
    auto feasible = [&](std::span<const std::size_t> ids) {
      const VertexInstanceView revealed = reveal_vertices(view, env.true_locations(), ids);
      const EdgeInstanceView assoc = associated_edge_instance(revealed);
      return cycle_has_always_maximal(assoc, cycle);
    };
    const auto best = cheapest_feasible(search, feasible, guard.max_nodes);
    if (!best) {
      throw std::logic_error("cycle admits no feasible vertex query set");
    }
    result.elements.insert(result.elements.end(), best->first.begin(), best->first.end());
    result.cost += rational_cost_to_double(best->second);
  }
  std::sort(result.elements.begin(), result.elements.end());
  return result;
}

OptimalVertexQueries optimal_vertex_query_set_full(const VertexEnvironment& env,
                                                   const OracleGuard& guard) {
  const SubsetSearch search = vertex_universe(env, guard);
  auto feasible = [&](std::span<const std::size_t> ids) {
    return is_feasible_vertex_query_set(env, ids);
  };
  const auto best = cheapest_feasible(search, feasible, guard.max_nodes);
  if (!best) {
    throw std::logic_error("no feasible vertex query set exists");
  }
  return {best->first, rational_cost_to_double(best->second)};
}

std::vector<std::vector<VertexId>> all_optimal_vertex_query_sets(const VertexEnvironment& env,
                                                                 const OracleGuard& guard) {
  const SubsetSearch search = vertex_universe(env, guard);
  auto feasible = [&](std::span<const std::size_t> ids) {
    return is_feasible_vertex_query_set(env, ids);
  };
  return all_min_feasible(search, feasible, guard.max_nodes);
}

// --- spanning stars ---------------------------------------------------------

std::vector<SpanningStar> enumerate_spanning_stars(const EdgeInstanceView& view) {
  std::vector<std::vector<EdgeId>> incident(view.vertex_count);
  for (EdgeId e = 0; e < view.edges.size(); ++e) {
    incident[view.edges[e].u].push_back(e);
    incident[view.edges[e].v].push_back(e);
  }
  std::vector<SpanningStar> stars;
  for (VertexId v = 0; v < view.vertex_count; ++v) {
    if (incident[v].size() == view.vertex_count - 1) {
      stars.push_back({v, incident[v]});
    }
  }
  if (stars.empty()) {
    throw std::invalid_argument("graph has no spanning star");
  }
  return stars;
}

std::optional<StarCertificate> verify_star(const EdgeInstanceView& view, VertexId center) {
  const std::vector<SpanningStar> stars = enumerate_spanning_stars(view);
  const SpanningStar* witness = nullptr;
  for (const SpanningStar& star : stars) {
    if (star.center == center) witness = &star;
  }
  if (witness == nullptr) {
    throw std::invalid_argument("vertex is not the center of a spanning star");
  }
  std::vector<bool> in_witness(view.edges.size(), false);
  for (EdgeId e : witness->edges) in_witness[e] = true;

  StarCertificate certificate{*witness, {}};
  for (const SpanningStar& other : stars) {
    if (other.center == center) continue;
    std::vector<bool> in_other(view.edges.size(), false);
    for (EdgeId e : other.edges) in_other[e] = true;

    Rational upper_sum = 0, lower_sum = 0;
    for (EdgeId e : witness->edges) {
      if (!in_other[e]) upper_sum += view.sets[e].upper();
    }
    for (EdgeId e : other.edges) {
      if (!in_witness[e]) lower_sum += view.sets[e].lower();
    }
    if (upper_sum > lower_sum) {
      return std::nullopt;
    }
    certificate.checks.push_back({other.center, upper_sum, lower_sum});
  }
  return certificate;
}

bool has_verifiable_star(const EdgeInstanceView& view) {
  for (const SpanningStar& star : enumerate_spanning_stars(view)) {
    if (verify_star(view, star.center)) return true;
  }
  return false;
}

bool is_feasible_star_query_set(const EdgeEnvironment& env, std::span<const EdgeId> q) {
  return has_verifiable_star(reveal_edges(env.view(), env.true_weights(), q));
}

OptimalEdgeQueries optimal_star_query_set(const EdgeEnvironment& env, const OracleGuard& guard) {
  const EdgeInstanceView& view = env.view();
  SubsetSearch search;
  for (EdgeId e = 0; e < view.edges.size(); ++e) {
    if (!view.sets[e].trivial()) {
      search.elements.push_back(e);
      search.costs.push_back(view.costs[e]);
    }
  }
  if (search.elements.size() > guard.max_elements || search.elements.size() > 31) {
    throw std::runtime_error("instance too large for oracle");
  }
  auto feasible = [&](std::span<const std::size_t> ids) {
    return is_feasible_star_query_set(env, ids);
  };
  const auto best = cheapest_feasible(search, feasible, guard.max_nodes);
  if (!best) {
    throw std::logic_error("no feasible star query set exists");
  }
  return {best->first, best->second};
}

EdgeTranscript mss_fixed_order_strategy(EdgeQuerier& querier, std::span<const EdgeId> order) {
  for (EdgeId e : order) {
    if (has_verifiable_star(querier.view())) break;
    if (querier.view().sets[e].trivial()) continue;
    querier.query(e);
  }
  return querier.transcript();
}

VertexTranscript fixed_order_vertex_strategy(VertexQuerier& querier,
                                             std::span<const VertexId> order) {
  for (VertexId v : order) {
    if (has_verifiable_tree(querier.assoc())) break;
    if (querier.view().regions[v].trivial()) continue;
    querier.query(v);
  }
  return querier.transcript();
}

}  // namespace oracle
}  // namespace mstu
