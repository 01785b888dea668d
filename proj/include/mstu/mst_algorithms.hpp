#pragma once

#include <span>
#include <vector>

#include "mstu/core.hpp"
#include "mstu/graph.hpp"
#include "mstu/rng.hpp"

namespace mstu {

enum class LimitMode { Lower, Upper };

/// MST under weights L_e (Lower) or U_e (Upper). Ties break in favour of
/// edges in `prefer`, then by ascending edge index.
std::vector<EdgeId> limit_tree(const EdgeInstanceView& view, LimitMode mode,
                               std::span<const EdgeId> prefer = {});

/// Repeatedly queries the non-trivial edges of T_L \ T_U (computing T_L with
/// prefer = T_U) until the two limit trees coincide; every such edge lies in
/// any feasible query set. Returns the cycle decomposition on the common tree.
CycleDecomposition preprocess(EdgeQuerier& querier);

/// X(f): the cycle edges other than f that could still outweigh f,
/// i.e. those with U_e > L_f (strict, exact).
std::vector<EdgeId> neighbor_set(const EdgeInstanceView& view, std::span<const EdgeId> cycle,
                                 EdgeId f);

struct RandomCOptions {
  /// Reuse one uniform draw for every cycle's coin instead of drawing per
  /// cycle. Expected cost is identical; only the joint law differs.
  bool shared_coin = false;
};

/// The randomized 1.5-competitive algorithm for cactus instances. Per cycle,
/// queries X(f_i) with probability q_f^2/(q_f^2+q_X^2) and f_i otherwise,
/// then queries by decreasing upper limit until an always-maximal edge
/// appears. Throws std::invalid_argument on non-cactus input.
EdgeTranscript random_c(EdgeQuerier& querier, ChoiceSource& choices, RandomCOptions options = {});

/// Exact expected total cost of random_c, by enumerating both branches of
/// every cycle coin (cycles are edge-disjoint, so branches are independent).
Rational random_c_exact_expectation(const EdgeEnvironment& env);

}  // namespace mstu
