#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mstu/rational.hpp"

namespace mstu {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;

  bool operator==(const Edge&) const = default;
  bool incident_to(VertexId w) const { return u == w || v == w; }
};

/// A weight's uncertainty set: either a singleton {value} or an open
/// interval (lo, hi). Open sets never contain their limits, so revealing a
/// weight always strictly shrinks the set.
class UncertaintySet {
 public:
  static UncertaintySet singleton(Rational value);
  /// Requires lo < hi strictly.
  static UncertaintySet open(Rational lo, Rational hi);

  bool trivial() const { return singleton_; }
  /// L: infimum of the set (attained only for singletons).
  const Rational& lower() const { return lo_; }
  /// U: supremum of the set (attained only for singletons).
  const Rational& upper() const { return hi_; }

  bool contains(const Rational& w) const;
  bool subset_of(const UncertaintySet& other) const;

  bool operator==(const UncertaintySet&) const = default;

 private:
  UncertaintySet(bool singleton, Rational lo, Rational hi)
      : singleton_(singleton), lo_(std::move(lo)), hi_(std::move(hi)) {}

  bool singleton_ = true;
  Rational lo_;
  Rational hi_;
};

/// What an algorithm is allowed to see: the graph, current uncertainty sets
/// and query costs. Ground truth lives in EdgeEnvironment only.
struct EdgeInstanceView {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<UncertaintySet> sets;
  std::vector<Rational> costs;

  std::size_t edge_count() const { return edges.size(); }
};

/// Throws std::invalid_argument unless the view is a connected simple graph
/// with positive costs and consistent array sizes.
void validate_edge_view(const EdgeInstanceView& view);

bool is_connected(std::size_t vertex_count, std::span<const Edge> edges);

/// Ordered record of queries with accrued cost.
template <typename ValueT, typename CostT>
struct Transcript {
  struct Entry {
    std::size_t element;
    ValueT value;
    CostT cost;
  };

  std::vector<Entry> entries;
  CostT total_cost{};

  bool contains(std::size_t element) const {
    for (const auto& entry : entries) {
      if (entry.element == element) return true;
    }
    return false;
  }
  std::size_t size() const { return entries.size(); }
};

struct Point {
  double x = 0;
  double y = 0;

  bool operator==(const Point&) const = default;
};

using EdgeTranscript = Transcript<Rational, Rational>;
using VertexTranscript = Transcript<Point, double>;

/// Strict: querying a trivial element (including a repeated query) is an
/// error. Lenient: such queries are no-ops that charge nothing.
enum class QueryPolicy { Strict, Lenient };

/// Instance plus hidden ground truth. Algorithms never receive this type;
/// they get an EdgeQuerier, which exposes only the view and the query
/// operation.
class EdgeEnvironment {
 public:
  EdgeEnvironment(EdgeInstanceView view, std::vector<Rational> true_weights,
                  QueryPolicy policy = QueryPolicy::Strict);

  const EdgeInstanceView& view() const { return view_; }
  const EdgeTranscript& transcript() const { return transcript_; }
  QueryPolicy policy() const { return policy_; }

  /// Oracle-side access to ground truth.
  const std::vector<Rational>& true_weights() const { return true_weights_; }

  /// Reveals w_e: the set becomes {w_e} and the transcript is charged q_e.
  Rational query(EdgeId e);

 private:
  EdgeInstanceView view_;
  std::vector<Rational> true_weights_;
  EdgeTranscript transcript_;
  QueryPolicy policy_;
};

/// The only handle algorithms get on an environment.
class EdgeQuerier {
 public:
  explicit EdgeQuerier(EdgeEnvironment& env) : env_(&env) {}

  const EdgeInstanceView& view() const { return env_->view(); }
  const EdgeTranscript& transcript() const { return env_->transcript(); }
  Rational query(EdgeId e) { return env_->query(e); }

 private:
  EdgeEnvironment* env_;
};

/// True iff L_f >= U_e for every cycle edge e other than f. Such an edge can
/// be excluded from some MST no matter how the remaining sets resolve.
/// Throws if f is not on the cycle or the cycle has fewer than two edges.
bool always_maximal(const EdgeInstanceView& view, std::span<const EdgeId> cycle, EdgeId f);

}  // namespace mstu
