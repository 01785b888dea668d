#include "mstu/vmst_algorithms.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

#include "mstu/mst_algorithms.hpp"

namespace mstu {

namespace {

const Rational& vertex_eps() {
  static const Rational eps(1, 1000000000);
  return eps;
}

std::optional<EdgeId> max_upper_edge(const EdgeInstanceView& assoc, std::span<const EdgeId> cycle) {
  std::vector<EdgeId> ordered(cycle.begin(), cycle.end());
  std::sort(ordered.begin(), ordered.end());
  std::optional<EdgeId> best;
  for (EdgeId e : ordered) {
    if (!best || eps_gt(assoc.sets[e].upper(), assoc.sets[*best].upper())) best = e;
  }
  return best;
}

std::vector<VertexId> nontrivial_endpoints(const VertexInstanceView& view, const Edge& e) {
  std::vector<VertexId> result;
  for (VertexId v : {std::min(e.u, e.v), std::max(e.u, e.v)}) {
    if (!view.regions[v].trivial()) result.push_back(v);
  }
  return result;
}

void query_nontrivial_endpoints(VertexQuerier& querier, EdgeId e) {
  for (VertexId v : nontrivial_endpoints(querier.view(), querier.view().edges[e])) {
    querier.query(v);
  }
}

VertexTranscript transcript_delta(const VertexTranscript& full, std::size_t from) {
  VertexTranscript delta;
  delta.entries.assign(full.entries.begin() + static_cast<std::ptrdiff_t>(from),
                       full.entries.end());
  for (const auto& entry : delta.entries) delta.total_cost += entry.cost;
  return delta;
}

std::size_t factorial(std::size_t k) {
  std::size_t result = 1;
  for (std::size_t i = 2; i <= k; ++i) result *= i;
  return result;
}

/// index-th permutation of `base` in lexicographic order.
std::vector<VertexId> nth_permutation(std::vector<VertexId> base, std::size_t index) {
  std::vector<VertexId> result;
  result.reserve(base.size());
  while (!base.empty()) {
    const std::size_t block = factorial(base.size() - 1);
    const std::size_t at = index / block;
    index %= block;
    result.push_back(base[at]);
    base.erase(base.begin() + static_cast<std::ptrdiff_t>(at));
  }
  return result;
}

void run_pair_tail(VertexQuerier& querier, std::span<const EdgeId> cycle) {
  while (!eps_cycle_solved(querier.assoc(), cycle)) {
    const auto g = max_upper_edge(querier.assoc(), cycle);
    if (!g || querier.assoc().sets[*g].trivial()) {
      throw std::logic_error("unsolved cycle with nothing left to query");
    }
    query_nontrivial_endpoints(querier, *g);
  }
}

}  // namespace

bool eps_eq(const Rational& a, const Rational& b) {
  const Rational gap = a > b ? a - b : b - a;
  return gap <= vertex_eps();
}
bool eps_ge(const Rational& a, const Rational& b) { return a >= b - vertex_eps(); }
bool eps_gt(const Rational& a, const Rational& b) { return a > b + vertex_eps(); }
bool eps_le(const Rational& a, const Rational& b) { return a <= b + vertex_eps(); }

bool eps_always_maximal(const EdgeInstanceView& assoc, std::span<const EdgeId> cycle, EdgeId f) {
  const Rational& lf = assoc.sets[f].lower();
  for (EdgeId e : cycle) {
    if (e != f && !eps_ge(lf, assoc.sets[e].upper())) return false;
  }
  return true;
}

bool eps_cycle_solved(const EdgeInstanceView& assoc, std::span<const EdgeId> cycle) {
  for (EdgeId f : cycle) {
    if (eps_always_maximal(assoc, cycle, f)) return true;
  }
  return false;
}

std::vector<EdgeId> eps_neighbor_set(const EdgeInstanceView& assoc, std::span<const EdgeId> cycle,
                                     EdgeId f) {
  const Rational& lf = assoc.sets[f].lower();
  std::vector<EdgeId> x;
  for (EdgeId e : cycle) {
    if (e != f && eps_gt(assoc.sets[e].upper(), lf)) x.push_back(e);
  }
  std::sort(x.begin(), x.end());
  return x;
}

CoverAnalysis min_cover(const VertexInstanceView& view, const EdgeInstanceView& assoc,
                        std::span<const EdgeId> cycle, EdgeId f1) {
  if (std::find(cycle.begin(), cycle.end(), f1) == cycle.end()) {
    throw std::invalid_argument("edge is not on the given cycle");
  }
  const std::vector<EdgeId> x = eps_neighbor_set(assoc, cycle, f1);
  std::vector<EdgeId> targets;
  for (EdgeId e : x) {
    if (!nontrivial_endpoints(view, view.edges[e]).empty()) targets.push_back(e);
  }
  if (targets.empty()) {
    return CoverAnalysis{0, {{}}};
  }

  const Edge& f_edge = view.edges[f1];
  std::vector<VertexId> candidates;
  for (EdgeId e : cycle) {
    for (VertexId v : nontrivial_endpoints(view, view.edges[e])) {
      if (!f_edge.incident_to(v)) candidates.push_back(v);
    }
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  CoverAnalysis analysis{kNoCover, {}};
  const std::size_t k = candidates.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    const std::size_t size = static_cast<std::size_t>(std::popcount(mask));
    if (size > analysis.size) continue;
    bool covers_all = true;
    for (EdgeId e : targets) {
      bool hit = false;
      for (std::size_t i = 0; i < k && !hit; ++i) {
        hit = (mask >> i & 1) && view.edges[e].incident_to(candidates[i]);
      }
      if (!hit) {
        covers_all = false;
        break;
      }
    }
    if (!covers_all) continue;
    if (size < analysis.size) {
      analysis.size = size;
      analysis.covers.clear();
    }
    std::vector<VertexId> cover;
    for (std::size_t i = 0; i < k; ++i) {
      if (mask >> i & 1) cover.push_back(candidates[i]);
    }
    analysis.covers.push_back(std::move(cover));
  }
  return analysis;
}

VertexTranscript v_preprocess(VertexQuerier& querier) {
  const std::size_t start = querier.transcript().size();
  while (true) {
    const EdgeInstanceView& assoc = querier.assoc();
    const std::vector<EdgeId> upper = limit_tree(assoc, LimitMode::Upper);
    const std::vector<EdgeId> lower = limit_tree(assoc, LimitMode::Lower, upper);
    if (lower == upper) break;

    std::vector<bool> in_upper(assoc.edges.size(), false);
    for (EdgeId e : upper) in_upper[e] = true;
    EdgeId pick = assoc.edges.size();
    for (EdgeId e : lower) {
      if (!in_upper[e]) {
        pick = e;
        break;
      }
    }
    const auto ends = nontrivial_endpoints(querier.view(), querier.view().edges[pick]);
    if (ends.empty()) {
      throw std::logic_error("limit trees differ on a trivial edge");
    }
    for (VertexId v : ends) querier.query(v);
  }
  return transcript_delta(querier.transcript(), start);
}

VertexTranscript rand3(VertexQuerier& querier, std::span<const EdgeId> cycle,
                       ChoiceSource& choices) {
  const std::size_t start = querier.transcript().size();
  for (int iteration = 0; iteration < 2; ++iteration) {
    if (eps_cycle_solved(querier.assoc(), cycle)) {
      return transcript_delta(querier.transcript(), start);
    }
    query_nontrivial_endpoints(querier, *max_upper_edge(querier.assoc(), cycle));
  }
  if (!eps_cycle_solved(querier.assoc(), cycle)) {
    const EdgeId g = *max_upper_edge(querier.assoc(), cycle);
    const auto ends = nontrivial_endpoints(querier.view(), querier.view().edges[g]);
    if (ends.size() == 2) {
      const std::size_t first = choices.uniform(2);
      querier.query(ends[first]);
      if (!eps_cycle_solved(querier.assoc(), cycle)) {
        querier.query(ends[1 - first]);
      }
    } else if (ends.size() == 1) {
      querier.query(ends[0]);
    } else {
      throw std::logic_error("largest-upper-limit edge is trivial in an unsolved cycle");
    }
  }
  run_pair_tail(querier, cycle);
  return transcript_delta(querier.transcript(), start);
}

VertexTranscript rand1(VertexQuerier& querier, std::span<const EdgeId> cycle, EdgeId f1,
                       ChoiceSource& choices) {
  const std::size_t start = querier.transcript().size();
  if (eps_cycle_solved(querier.assoc(), cycle)) {
    return transcript_delta(querier.transcript(), start);
  }
  const std::vector<EdgeId> x = eps_neighbor_set(querier.assoc(), cycle, f1);
  const Edge& f_edge = querier.view().edges[f1];

  std::vector<VertexId> candidates;
  if (x.size() == 1) {
    const Edge& e = querier.view().edges[x[0]];
    candidates = {e.u, e.v, f_edge.u, f_edge.v};
  } else if (x.size() == 2) {
    const Edge& g = querier.view().edges[x[0]];
    const Edge& h = querier.view().edges[x[1]];
    VertexId shared;
    if (h.incident_to(g.u) && !f_edge.incident_to(g.u)) {
      shared = g.u;
    } else if (h.incident_to(g.v) && !f_edge.incident_to(g.v)) {
      shared = g.v;
    } else {
      throw std::logic_error("rand1 requires intersecting neighbor edges off f1");
    }
    candidates = {shared, f_edge.u, f_edge.v};
  } else {
    throw std::logic_error("rand1 called with cover size != 1");
  }
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  std::erase_if(candidates,
                [&](VertexId v) { return querier.view().regions[v].trivial(); });
  if (candidates.empty()) {
    throw std::logic_error("rand1 has no non-trivial candidate vertices");
  }

  const std::size_t arity = factorial(candidates.size());
  const std::size_t index = arity > 1 ? choices.uniform(arity) : 0;
  for (VertexId v : nth_permutation(candidates, index)) {
    if (eps_cycle_solved(querier.assoc(), cycle)) {
      return transcript_delta(querier.transcript(), start);
    }
    querier.query(v);
  }
  for (EdgeId e : x) {
    for (VertexId v : nontrivial_endpoints(querier.view(), querier.view().edges[e])) {
      if (eps_cycle_solved(querier.assoc(), cycle)) {
        return transcript_delta(querier.transcript(), start);
      }
      querier.query(v);
    }
  }
  return transcript_delta(querier.transcript(), start);
}

VertexTranscript rand2(VertexQuerier& querier, std::span<const EdgeId> cycle, EdgeId f1,
                       ChoiceSource& choices) {
  const std::size_t start = querier.transcript().size();
  if (eps_cycle_solved(querier.assoc(), cycle)) {
    return transcript_delta(querier.transcript(), start);
  }
  const CoverAnalysis analysis = min_cover(querier.view(), querier.assoc(), cycle, f1);
  if (analysis.size == 0 || analysis.size == kNoCover) {
    throw std::logic_error("rand2 reached with no usable vertex cover");
  }
  const std::vector<VertexId>& cover =
      analysis.covers[analysis.covers.size() > 1 ? choices.uniform(analysis.covers.size()) : 0];

  const EdgeId g = *max_upper_edge(querier.assoc(), cycle);
  const Edge& g_edge = querier.view().edges[g];
  std::optional<VertexId> on_g;
  for (VertexId v : cover) {
    if (g_edge.incident_to(v) && (!on_g || v < *on_g)) on_g = v;
  }
  if (!on_g) {
    throw std::logic_error("minimum cover misses the largest-upper-limit edge");
  }
  querier.query(*on_g);
  for (VertexId v : cover) {
    if (v == *on_g) continue;
    if (eps_cycle_solved(querier.assoc(), cycle)) break;
    querier.query(v);
  }
  run_pair_tail(querier, cycle);
  return transcript_delta(querier.transcript(), start);
}

namespace {

void check_cactus_like(const VertexInstanceView& view) {
  const std::vector<EdgeId> index_tree =
      kruskal(view.vertex_count, view.edges, [](EdgeId a, EdgeId b) { return a < b; });
  const CycleDecomposition decomposition =
      decompose_cycles(view.vertex_count, view.edges, index_tree);
  if (!is_cactus(decomposition, view.edges.size())) {
    throw std::invalid_argument("v_random_c requires a cactus graph");
  }
  std::vector<unsigned> cycle_count(view.vertex_count, 0);
  for (const auto& cycle : decomposition.cycles) {
    std::vector<VertexId> seen;
    for (EdgeId e : cycle) {
      seen.push_back(view.edges[e].u);
      seen.push_back(view.edges[e].v);
    }
    std::sort(seen.begin(), seen.end());
    seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
    for (VertexId v : seen) ++cycle_count[v];
  }
  for (VertexId v = 0; v < view.vertex_count; ++v) {
    if (cycle_count[v] > 1 && !view.regions[v].trivial()) {
      throw std::invalid_argument("cycles share the non-trivial vertex " + std::to_string(v));
    }
  }
  for (double q : view.costs) {
    if (q != view.costs.front()) {
      throw std::invalid_argument("v_random_c requires uniform query costs");
    }
  }
}

CycleDispatch process_vertex_cycle(VertexQuerier& querier, std::span<const EdgeId> cycle,
                                   EdgeId f, ChoiceSource& choices) {
  const CoverAnalysis analysis = min_cover(querier.view(), querier.assoc(), cycle, f);
  CycleDispatch dispatch{f, analysis.size, CycleRoute::Skip};
  if (eps_cycle_solved(querier.assoc(), cycle)) {
    return dispatch;
  }
  if (analysis.size == 0) {
    throw std::logic_error("unsolved cycle with an empty cover requirement");
  }
  if (analysis.size == 1) {
    dispatch.route = CycleRoute::Rand1;
    rand1(querier, cycle, f, choices);
    return dispatch;
  }
  query_nontrivial_endpoints(querier, f);
  const EdgeId g = *max_upper_edge(querier.assoc(), cycle);
  const Rational& w_f = querier.assoc().sets[f].lower();  // f is trivial now
  if (analysis.size >= 3 || eps_le(w_f, querier.assoc().sets[g].lower())) {
    dispatch.route = CycleRoute::Rand3;
    rand3(querier, cycle, choices);
  } else {
    dispatch.route = CycleRoute::Rand2;
    rand2(querier, cycle, f, choices);
  }
  return dispatch;
}

}  // namespace

VRandomCResult v_random_c(VertexQuerier& querier, ChoiceSource& choices) {
  check_cactus_like(querier.view());

  VRandomCResult result;
  v_preprocess(querier);
  const std::vector<EdgeId> common = limit_tree(querier.assoc(), LimitMode::Upper);
  const CycleDecomposition decomposition =
      decompose_cycles(querier.assoc().vertex_count, querier.assoc().edges, common);
  for (std::size_t i = 0; i < decomposition.nontree.size(); ++i) {
    result.dispatches.push_back(
        process_vertex_cycle(querier, decomposition.cycles[i], decomposition.nontree[i], choices));
  }
  result.transcript = querier.transcript();
  return result;
}

double v_exact_expectation(const VertexEnvironment& env) {
  VertexEnvironment preprocessed = env;
  VertexQuerier querier(preprocessed);
  check_cactus_like(preprocessed.view());
  v_preprocess(querier);
  double expectation = preprocessed.transcript().total_cost;

  const std::vector<EdgeId> common = limit_tree(preprocessed.assoc(), LimitMode::Upper);
  const CycleDecomposition decomposition =
      decompose_cycles(preprocessed.assoc().vertex_count, preprocessed.assoc().edges, common);
  for (std::size_t i = 0; i < decomposition.nontree.size(); ++i) {
    enumerate_choice_paths(
        [&](ChoiceSource& choices) {
          VertexEnvironment branch_env = preprocessed;
          VertexQuerier branch(branch_env);
          const double before = branch_env.transcript().total_cost;
          process_vertex_cycle(branch, decomposition.cycles[i], decomposition.nontree[i],
                               choices);
          return branch_env.transcript().total_cost - before;
        },
        [&](const Rational& probability, double cost) {
          expectation += rational_to_double(probability) * cost;
        });
  }
  return expectation;
}

VertexTranscript det_procedure(VertexQuerier& querier) {
  const EdgeInstanceView& assoc = querier.assoc();
  const std::vector<EdgeId> index_tree =
      kruskal(assoc.vertex_count, assoc.edges, [](EdgeId a, EdgeId b) { return a < b; });
  const CycleDecomposition decomposition =
      decompose_cycles(assoc.vertex_count, assoc.edges, index_tree);
  if (!is_cactus(decomposition, assoc.edges.size())) {
    throw std::invalid_argument("det_procedure requires a cactus graph");
  }
  const std::size_t start = querier.transcript().size();
  for (const auto& cycle : decomposition.cycles) {
    run_pair_tail(querier, cycle);
  }
  return transcript_delta(querier.transcript(), start);
}

}  // namespace mstu
