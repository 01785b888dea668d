#pragma once

#include <string>
#include <vector>

#include "mstu/core.hpp"

namespace mstu {

/// Comparison tolerance for vertex-instance numerics. Generators must keep
/// every algorithm-relevant comparison separated by kSeparationMargin, so
/// any tolerance below the margin decides comparisons identically.
inline constexpr double kVertexEps = 1e-9;
inline constexpr double kSeparationMargin = 1e-6;

/// A vertex's uncertainty region: an exact point or an open disk.
class VertexRegion {
 public:
  static VertexRegion point(Point p);
  /// Requires radius > 0 and finite coordinates.
  static VertexRegion disk(Point center, double radius);

  bool trivial() const { return radius_ == 0; }
  const Point& center() const { return center_; }
  double radius() const { return radius_; }

  /// Strict interior for disks, exact equality for points.
  bool contains(const Point& p) const;

  bool operator==(const VertexRegion&) const = default;

 private:
  VertexRegion(Point center, double radius) : center_(center), radius_(radius) {}

  Point center_;
  double radius_ = 0;
};

struct VertexInstanceView {
  std::size_t vertex_count = 0;
  std::vector<Edge> edges;
  std::vector<VertexRegion> regions;
  std::vector<double> costs;
};

double distance(const Point& a, const Point& b);

/// The set of achievable distances between the two regions: a singleton for
/// two points, otherwise the open interval d(centers) -/+ (r_u + r_v).
/// Throws when the region closures overlap or touch (the set would attain
/// its infimum).
UncertaintySet distance_interval(const VertexRegion& ru, const VertexRegion& rv);

/// Edge instance on the same graph whose sets are the achievable endpoint
/// distances. Edge costs are a synthetic 1 and carry no meaning: vertex
/// algorithms charge vertex queries only.
EdgeInstanceView associated_edge_instance(const VertexInstanceView& view);

/// View with the listed vertices' regions collapsed to their true locations.
VertexInstanceView reveal_vertices(const VertexInstanceView& view,
                                   const std::vector<Point>& locations,
                                   std::span<const VertexId> queried);

class VertexEnvironment {
 public:
  VertexEnvironment(VertexInstanceView view, std::vector<Point> true_locations,
                    QueryPolicy policy = QueryPolicy::Strict);

  const VertexInstanceView& view() const { return view_; }
  /// Associated edge instance of the current regions, refreshed per query.
  const EdgeInstanceView& assoc() const { return assoc_; }
  const VertexTranscript& transcript() const { return transcript_; }
  QueryPolicy policy() const { return policy_; }
  const std::vector<Point>& true_locations() const { return true_locations_; }
  bool uniform_costs() const;

  Point query(VertexId v);

 private:
  VertexInstanceView view_;
  EdgeInstanceView assoc_;
  std::vector<Point> true_locations_;
  VertexTranscript transcript_;
  QueryPolicy policy_;
};

class VertexQuerier {
 public:
  explicit VertexQuerier(VertexEnvironment& env) : env_(&env) {}

  const VertexInstanceView& view() const { return env_->view(); }
  const EdgeInstanceView& assoc() const { return env_->assoc(); }
  const VertexTranscript& transcript() const { return env_->transcript(); }
  Point query(VertexId v) { return env_->query(v); }

 private:
  VertexEnvironment* env_;
};

enum class ViolationKind {
  Structure,
  BadRegion,
  BadCost,
  AdjacencyOverlap,
  LocationOutsideRegion,
  SeparationMargin,
};

struct Violation {
  ViolationKind kind;
  std::string detail;
};

/// Reports every invariant violation instead of throwing. SeparationMargin
/// entries flag pairs of reachable limit/weight values that are distinct yet
/// closer than `margin`; exact ties are deterministic and not flagged.
std::vector<Violation> validate_vertex_instance(const VertexEnvironment& env,
                                                double margin = kSeparationMargin);

}  // namespace mstu
