#include "mstu/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mstu {

namespace {

void validate_vertex_view_throwing(const VertexInstanceView& view) {
  if (view.vertex_count == 0) {
    throw std::invalid_argument("instance has no vertices");
  }
  if (view.regions.size() != view.vertex_count || view.costs.size() != view.vertex_count) {
    throw std::invalid_argument("per-vertex arrays disagree with vertex count");
  }
  for (std::size_t i = 0; i < view.edges.size(); ++i) {
    const Edge& e = view.edges[i];
    if (e.u >= view.vertex_count || e.v >= view.vertex_count || e.u == e.v) {
      throw std::invalid_argument("bad edge " + std::to_string(i));
    }
  }
  for (double q : view.costs) {
    if (!(q > 0) || !std::isfinite(q)) {
      throw std::invalid_argument("vertex query costs must be positive and finite");
    }
  }
  if (!is_connected(view.vertex_count, view.edges)) {
    throw std::invalid_argument("graph is not connected");
  }
}

}  // namespace

VertexRegion VertexRegion::point(Point p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
    throw std::invalid_argument("non-finite point coordinates");
  }
  return VertexRegion(p, 0);
}

VertexRegion VertexRegion::disk(Point center, double radius) {
  if (!std::isfinite(center.x) || !std::isfinite(center.y) || !std::isfinite(radius)) {
    throw std::invalid_argument("non-finite disk parameters");
  }
  if (!(radius > 0)) {
    throw std::invalid_argument("disk radius must be positive");
  }
  return VertexRegion(center, radius);
}

bool VertexRegion::contains(const Point& p) const {
  if (trivial()) return p == center_;
  return distance(p, center_) < radius_;
}

double distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

UncertaintySet distance_interval(const VertexRegion& ru, const VertexRegion& rv) {
  const double d = distance(ru.center(), rv.center());
  const double spread = ru.radius() + rv.radius();
  if (!(d > spread)) {
    throw std::invalid_argument("region closures overlap or touch");
  }
  if (spread == 0) {
    return UncertaintySet::singleton(rational_from_double(d));
  }
  return UncertaintySet::open(rational_from_double(d - spread), rational_from_double(d + spread));
}

EdgeInstanceView associated_edge_instance(const VertexInstanceView& view) {
  EdgeInstanceView assoc;
  assoc.vertex_count = view.vertex_count;
  assoc.edges = view.edges;
  assoc.sets.reserve(view.edges.size());
  for (const Edge& e : view.edges) {
    assoc.sets.push_back(distance_interval(view.regions[e.u], view.regions[e.v]));
  }
  assoc.costs.assign(view.edges.size(), Rational(1));
  return assoc;
}

VertexInstanceView reveal_vertices(const VertexInstanceView& view,
                                   const std::vector<Point>& locations,
                                   std::span<const VertexId> queried) {
  VertexInstanceView revealed = view;
  for (VertexId v : queried) {
    revealed.regions[v] = VertexRegion::point(locations[v]);
  }
  return revealed;
}

VertexEnvironment::VertexEnvironment(VertexInstanceView view, std::vector<Point> true_locations,
                                     QueryPolicy policy)
    : view_(std::move(view)), true_locations_(std::move(true_locations)), policy_(policy) {
  validate_vertex_view_throwing(view_);
  if (true_locations_.size() != view_.vertex_count) {
    throw std::invalid_argument("true location count disagrees with vertex count");
  }
  for (std::size_t v = 0; v < view_.vertex_count; ++v) {
    if (!view_.regions[v].contains(true_locations_[v])) {
      throw std::invalid_argument("true location outside region at vertex " + std::to_string(v));
    }
  }
  assoc_ = associated_edge_instance(view_);  // also rejects overlapping adjacent regions
}

bool VertexEnvironment::uniform_costs() const {
  for (double q : view_.costs) {
    if (q != view_.costs.front()) return false;
  }
  return true;
}

Point VertexEnvironment::query(VertexId v) {
  if (v >= view_.vertex_count) {
    throw std::invalid_argument("query of unknown vertex " + std::to_string(v));
  }
  if (view_.regions[v].trivial()) {
    if (policy_ == QueryPolicy::Lenient) {
      return true_locations_[v];
    }
    throw std::runtime_error(transcript_.contains(v)
                                 ? "vertex " + std::to_string(v) + " queried twice"
                                 : "query of trivial vertex " + std::to_string(v));
  }
  const Point location = true_locations_[v];
  view_.regions[v] = VertexRegion::point(location);
  for (std::size_t i = 0; i < view_.edges.size(); ++i) {
    if (view_.edges[i].incident_to(v)) {
      assoc_.sets[i] = distance_interval(view_.regions[view_.edges[i].u],
                                         view_.regions[view_.edges[i].v]);
    }
  }
  transcript_.entries.push_back({v, location, view_.costs[v]});
  transcript_.total_cost += view_.costs[v];
  return location;
}

namespace {

/// Limit values an edge can exhibit across query states: none, one endpoint
/// revealed (either side), both revealed. Values that can only co-occur with
/// themselves are deduplicated.
std::vector<double> reachable_edge_values(const VertexInstanceView& view,
                                          const std::vector<Point>& locations, const Edge& e) {
  std::vector<double> values;
  auto add_interval = [&values](const VertexRegion& a, const VertexRegion& b) {
    const double d = distance(a.center(), b.center());
    const double spread = a.radius() + b.radius();
    values.push_back(d - spread);
    if (spread > 0) values.push_back(d + spread);
  };
  const VertexRegion& ru = view.regions[e.u];
  const VertexRegion& rv = view.regions[e.v];
  add_interval(ru, rv);
  if (!ru.trivial()) add_interval(VertexRegion::point(locations[e.u]), rv);
  if (!rv.trivial()) add_interval(ru, VertexRegion::point(locations[e.v]));
  values.push_back(distance(locations[e.u], locations[e.v]));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return values;
}

}  // namespace

std::vector<Violation> validate_vertex_instance(const VertexEnvironment& env, double margin) {
  std::vector<Violation> violations;
  const VertexInstanceView& view = env.view();

  for (std::size_t v = 0; v < view.vertex_count; ++v) {
    const VertexRegion& region = view.regions[v];
    if (!std::isfinite(region.center().x) || !std::isfinite(region.center().y) ||
        !std::isfinite(region.radius()) || region.radius() < 0) {
      violations.push_back({ViolationKind::BadRegion, "vertex " + std::to_string(v)});
    }
    if (!(view.costs[v] > 0) || !std::isfinite(view.costs[v])) {
      violations.push_back({ViolationKind::BadCost, "vertex " + std::to_string(v)});
    }
    if (!region.contains(env.true_locations()[v])) {
      violations.push_back({ViolationKind::LocationOutsideRegion, "vertex " + std::to_string(v)});
    }
  }
  if (!is_connected(view.vertex_count, view.edges)) {
    violations.push_back({ViolationKind::Structure, "graph is not connected"});
  }
  for (std::size_t i = 0; i < view.edges.size(); ++i) {
    const Edge& e = view.edges[i];
    const double d = distance(view.regions[e.u].center(), view.regions[e.v].center());
    if (!(d > view.regions[e.u].radius() + view.regions[e.v].radius())) {
      violations.push_back({ViolationKind::AdjacencyOverlap, "edge " + std::to_string(i)});
    }
  }
  if (!violations.empty()) return violations;  // value checks assume a sane instance

  std::vector<std::vector<double>> per_edge;
  per_edge.reserve(view.edges.size());
  for (const Edge& e : view.edges) {
    per_edge.push_back(reachable_edge_values(view, env.true_locations(), e));
  }
  auto flag_pair = [&violations, margin](double a, double b, std::size_t i, std::size_t j) {
    const double gap = std::abs(a - b);
    if (gap != 0 && gap < margin) {
      violations.push_back({ViolationKind::SeparationMargin,
                            "edges " + std::to_string(i) + "," + std::to_string(j)});
    }
  };
  for (std::size_t i = 0; i < per_edge.size(); ++i) {
    for (std::size_t a = 0; a < per_edge[i].size(); ++a) {
      for (std::size_t b = a + 1; b < per_edge[i].size(); ++b) {
        flag_pair(per_edge[i][a], per_edge[i][b], i, i);
      }
      for (std::size_t j = i + 1; j < per_edge.size(); ++j) {
        for (double other : per_edge[j]) {
          flag_pair(per_edge[i][a], other, i, j);
        }
      }
    }
  }
  return violations;
}

}  // namespace mstu
