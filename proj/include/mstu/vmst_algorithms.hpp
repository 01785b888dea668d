#pragma once

#include <span>
#include <vector>

#include "mstu/core.hpp"
#include "mstu/geometry.hpp"
#include "mstu/graph.hpp"
#include "mstu/rng.hpp"

namespace mstu {

/// Vertex-instance limits derive from square roots, so comparisons in this
/// module are eps-tolerant. Generators keep genuinely distinct values at
/// least kSeparationMargin apart, which makes every comparison unambiguous.
bool eps_eq(const Rational& a, const Rational& b);
bool eps_ge(const Rational& a, const Rational& b);
bool eps_gt(const Rational& a, const Rational& b);
bool eps_le(const Rational& a, const Rational& b);

bool eps_always_maximal(const EdgeInstanceView& assoc, std::span<const EdgeId> cycle, EdgeId f);
bool eps_cycle_solved(const EdgeInstanceView& assoc, std::span<const EdgeId> cycle);
std::vector<EdgeId> eps_neighbor_set(const EdgeInstanceView& assoc, std::span<const EdgeId> cycle,
                                     EdgeId f);

inline constexpr std::size_t kNoCover = static_cast<std::size_t>(-1);

/// Minimum vertex covers of the non-trivial edges of X(f1) that avoid f1's
/// endpoints and use non-trivial vertices only. size == kNoCover means no
/// admissible cover exists, in which case every feasible query set must
/// touch f1 itself.
struct CoverAnalysis {
  std::size_t size = 0;
  std::vector<std::vector<VertexId>> covers;
};

CoverAnalysis min_cover(const VertexInstanceView& view, const EdgeInstanceView& assoc,
                        std::span<const EdgeId> cycle, EdgeId f1);

/// Queries non-trivial end vertices of the T_L \ T_U edge of the associated
/// instance until T_L = T_U. Returns the queries made.
VertexTranscript v_preprocess(VertexQuerier& querier);

/// Two deterministic endpoint-pair iterations, a half-coin on the third
/// edge's endpoints, then deterministic pairs by decreasing upper limit.
/// The caller is expected to have queried f1's endpoints already.
VertexTranscript rand3(VertexQuerier& querier, std::span<const EdgeId> cycle,
                       ChoiceSource& choices);

/// Case a = 1: queries a uniformly random permutation of the candidate
/// vertices ((g cap h) union f1, or e union f1) prefix-wise; falls back to
/// the remaining non-trivial X(f1) vertices if exhausted.
VertexTranscript rand1(VertexQuerier& querier, std::span<const EdgeId> cycle, EdgeId f1,
                       ChoiceSource& choices);

/// Case a = 2 with w_{f1} in A_g: queries a uniformly random minimum cover,
/// starting with its vertex on the current largest-upper-limit edge, then
/// endpoint pairs by decreasing upper limit. Covers are recomputed on the
/// post-f1-query view.
VertexTranscript rand2(VertexQuerier& querier, std::span<const EdgeId> cycle, EdgeId f1,
                       ChoiceSource& choices);

enum class CycleRoute { Skip, Rand1, Rand3, Rand2 };

struct CycleDispatch {
  EdgeId f;
  std::size_t cover_size;
  CycleRoute route;
};

struct VRandomCResult {
  VertexTranscript transcript;
  std::vector<CycleDispatch> dispatches;
};

/// The 2.5-competitive dispatcher for cactus-like instances with uniform
/// query costs: per cycle, skip if an edge is always maximal; run rand1 when
/// a = 1; otherwise query f_i's endpoints and continue with rand3 when a >= 3
/// or w_{f_i} <= L_g, with rand2 otherwise.
VRandomCResult v_random_c(VertexQuerier& querier, ChoiceSource& choices);

/// Exact expected number of queries of v_random_c, enumerating every random
/// branch per cycle (cycles are independent).
double v_exact_expectation(const VertexEnvironment& env);

/// The plain deterministic procedure: endpoint pairs by decreasing upper
/// limit, no preprocessing. Makes at most 2 OPT + 2 queries per cycle.
VertexTranscript det_procedure(VertexQuerier& querier);

}  // namespace mstu
