#include "mstu/core.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace mstu {

UncertaintySet UncertaintySet::singleton(Rational value) {
  return UncertaintySet(true, value, value);
}

UncertaintySet UncertaintySet::open(Rational lo, Rational hi) {
  if (!(lo < hi)) {
    throw std::invalid_argument("open uncertainty set requires lo < hi");
  }
  return UncertaintySet(false, std::move(lo), std::move(hi));
}

bool UncertaintySet::contains(const Rational& w) const {
  if (singleton_) return w == lo_;
  return lo_ < w && w < hi_;
}

bool UncertaintySet::subset_of(const UncertaintySet& other) const {
  if (other.singleton_) return singleton_ && lo_ == other.lo_;
  if (singleton_) return other.lo_ < lo_ && lo_ < other.hi_;
  return other.lo_ <= lo_ && hi_ <= other.hi_;
}

bool is_connected(std::size_t vertex_count, std::span<const Edge> edges) {
  if (vertex_count == 0) return false;
  std::vector<std::vector<VertexId>> adjacency(vertex_count);
  for (const Edge& e : edges) {
    adjacency[e.u].push_back(e.v);
    adjacency[e.v].push_back(e.u);
  }
  std::vector<bool> seen(vertex_count, false);
  std::vector<VertexId> stack = {0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const VertexId at = stack.back();
    stack.pop_back();
    for (VertexId next : adjacency[at]) {
      if (!seen[next]) {
        seen[next] = true;
        ++reached;
        stack.push_back(next);
      }
    }
  }
  return reached == vertex_count;
}

void validate_edge_view(const EdgeInstanceView& view) {
  if (view.vertex_count == 0) {
    throw std::invalid_argument("instance has no vertices");
  }
  if (view.sets.size() != view.edges.size() || view.costs.size() != view.edges.size()) {
    throw std::invalid_argument("per-edge arrays disagree with edge count");
  }
  for (std::size_t i = 0; i < view.edges.size(); ++i) {
    const Edge& e = view.edges[i];
    if (e.u >= view.vertex_count || e.v >= view.vertex_count) {
      throw std::invalid_argument("edge endpoint out of range");
    }
    if (e.u == e.v) {
      throw std::invalid_argument("self-loop at edge " + std::to_string(i));
    }
    if (!(view.costs[i] > 0)) {
      throw std::invalid_argument("query cost must be positive at edge " + std::to_string(i));
    }
  }
  for (std::size_t i = 0; i < view.edges.size(); ++i) {
    for (std::size_t j = i + 1; j < view.edges.size(); ++j) {
      const Edge &a = view.edges[i], &b = view.edges[j];
      if ((a.u == b.u && a.v == b.v) || (a.u == b.v && a.v == b.u)) {
        throw std::invalid_argument("parallel edges " + std::to_string(i) + "," + std::to_string(j));
      }
    }
  }
  if (!is_connected(view.vertex_count, view.edges)) {
    throw std::invalid_argument("graph is not connected");
  }
}

EdgeEnvironment::EdgeEnvironment(EdgeInstanceView view, std::vector<Rational> true_weights,
                                 QueryPolicy policy)
    : view_(std::move(view)), true_weights_(std::move(true_weights)), policy_(policy) {
  validate_edge_view(view_);
  if (true_weights_.size() != view_.edges.size()) {
    throw std::invalid_argument("true weight count disagrees with edge count");
  }
  for (std::size_t i = 0; i < true_weights_.size(); ++i) {
    if (!view_.sets[i].contains(true_weights_[i])) {
      throw std::invalid_argument("true weight outside uncertainty set at edge " + std::to_string(i));
    }
  }
}

Rational EdgeEnvironment::query(EdgeId e) {
  if (e >= view_.edges.size()) {
    throw std::invalid_argument("query of unknown edge " + std::to_string(e));
  }
  if (view_.sets[e].trivial()) {
    if (policy_ == QueryPolicy::Lenient) {
      return true_weights_[e];
    }
    throw std::runtime_error(transcript_.contains(e)
                                 ? "edge " + std::to_string(e) + " queried twice"
                                 : "query of trivial edge " + std::to_string(e));
  }
  const Rational w = true_weights_[e];
  view_.sets[e] = UncertaintySet::singleton(w);
  transcript_.entries.push_back({e, w, view_.costs[e]});
  transcript_.total_cost += view_.costs[e];
  return w;
}

bool always_maximal(const EdgeInstanceView& view, std::span<const EdgeId> cycle, EdgeId f) {
  if (cycle.size() < 2) {
    throw std::invalid_argument("always_maximal requires a cycle of at least two edges");
  }
  if (std::find(cycle.begin(), cycle.end(), f) == cycle.end()) {
    throw std::invalid_argument("edge is not on the given cycle");
  }
  const Rational& lf = view.sets[f].lower();
  for (EdgeId e : cycle) {
    if (e == f) continue;
    if (view.sets[e].upper() > lf) return false;
  }
  return true;
}

}  // namespace mstu
