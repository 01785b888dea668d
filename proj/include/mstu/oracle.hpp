#pragma once

#include <optional>
#include <span>
#include <vector>

#include "mstu/core.hpp"
#include "mstu/geometry.hpp"

namespace mstu {
namespace oracle {

struct TreeCheck {
  EdgeId nontree;
  EdgeId tree_edge;
  Rational upper;  // U of the tree edge
  Rational lower;  // L of the non-tree edge
};

struct TreeCertificate {
  std::vector<EdgeId> tree;
  std::vector<TreeCheck> checks;
};

/// T is verified iff U_g <= L_f for every non-tree edge f and every tree
/// edge g on the cycle of T+f: then w_g <= w_f under every realization
/// (equality endpoints are excluded by openness, and all-singleton ties keep
/// T minimum), while U_g > L_f admits a realization with w_g > w_f, whose
/// exchange beats T. Throws if T is not a spanning tree.
std::optional<TreeCertificate> verify_tree(const EdgeInstanceView& view,
                                           std::span<const EdgeId> tree);

/// Whether the current sets already pin down some minimum spanning tree.
/// Exploits per-cycle structure on cacti; otherwise enumerates spanning
/// trees, throwing std::runtime_error past `tree_budget` candidates.
bool has_verifiable_tree(const EdgeInstanceView& view, std::size_t tree_budget = 1u << 22);

/// Reveals the true weights of Q and asks whether some spanning tree is
/// verified under the remaining sets.
bool is_feasible_query_set(const EdgeEnvironment& env, std::span<const EdgeId> q);

/// Vertex variant, via the associated edge instance of the revealed view.
bool is_feasible_vertex_query_set(const VertexEnvironment& env, std::span<const VertexId> q);

struct OptimalEdgeQueries {
  std::vector<EdgeId> elements;
  Rational cost;
};

struct OptimalVertexQueries {
  std::vector<VertexId> elements;
  double cost;
};

struct OracleGuard {
  /// Maximum number of non-trivial elements for global subset enumeration.
  std::size_t max_elements = 24;
  /// Abort knob for the best-first enumeration queue.
  std::size_t max_nodes = 1u << 22;
};

/// Cheapest feasible query set. On cactus instances this decomposes into
/// per-cycle optima (their disjoint union is optimal); otherwise it
/// enumerates subsets of non-trivial cycle edges in non-decreasing cost.
/// Ties break by cardinality, then lexicographically.
OptimalEdgeQueries optimal_query_set(const EdgeEnvironment& env, const OracleGuard& guard = {});

/// Global subset enumeration regardless of structure; the independent route
/// used to cross-check the cactus decomposition.
OptimalEdgeQueries optimal_query_set_full(const EdgeEnvironment& env,
                                          const OracleGuard& guard = {});

/// Every feasible query set of minimum cost (global enumeration).
std::vector<std::vector<EdgeId>> all_optimal_query_sets(const EdgeEnvironment& env,
                                                        const OracleGuard& guard = {});

OptimalVertexQueries optimal_vertex_query_set(const VertexEnvironment& env,
                                              const OracleGuard& guard = {});
OptimalVertexQueries optimal_vertex_query_set_full(const VertexEnvironment& env,
                                                   const OracleGuard& guard = {});
std::vector<std::vector<VertexId>> all_optimal_vertex_query_sets(const VertexEnvironment& env,
                                                                 const OracleGuard& guard = {});

// --- spanning stars -------------------------------------------------------

struct SpanningStar {
  VertexId center;
  std::vector<EdgeId> edges;
};

/// All spanning stars (centers of degree n-1). Throws if none exist.
std::vector<SpanningStar> enumerate_spanning_stars(const EdgeInstanceView& view);

struct StarCheck {
  VertexId other_center;
  Rational witness_upper_sum;  // sum of U over S \ S'
  Rational other_lower_sum;    // sum of L over S' \ S
};

struct StarCertificate {
  SpanningStar star;
  std::vector<StarCheck> checks;
};

/// S is verified iff sum U(S\S') <= sum L(S'\S) against every other spanning
/// star S'; openness makes equality safe exactly as in verify_tree.
std::optional<StarCertificate> verify_star(const EdgeInstanceView& view, VertexId center);

bool has_verifiable_star(const EdgeInstanceView& view);
bool is_feasible_star_query_set(const EdgeEnvironment& env, std::span<const EdgeId> q);
OptimalEdgeQueries optimal_star_query_set(const EdgeEnvironment& env,
                                          const OracleGuard& guard = {});

/// Queries the non-trivial edges in the given order until some spanning star
/// is verified; stops early when the current sets already verify one.
EdgeTranscript mss_fixed_order_strategy(EdgeQuerier& querier, std::span<const EdgeId> order);

/// Vertex twin: queries the given vertices in order until the associated
/// edge instance verifies some spanning tree.
VertexTranscript fixed_order_vertex_strategy(VertexQuerier& querier,
                                             std::span<const VertexId> order);

}  // namespace oracle
}  // namespace mstu
