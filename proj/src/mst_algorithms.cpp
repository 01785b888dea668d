#include "mstu/mst_algorithms.hpp"

#include <algorithm>
#include <optional>
#include <stdexcept>

namespace mstu {

namespace {

std::vector<bool> member_mask(std::size_t size, std::span<const EdgeId> ids) {
  std::vector<bool> mask(size, false);
  for (EdgeId e : ids) mask[e] = true;
  return mask;
}

void run_cycle_tail(EdgeQuerier& querier, std::span<const EdgeId> cycle) {
  // Query unqueried non-trivial cycle edges by decreasing U (lowest index on
  // ties) until some cycle edge is always maximal.
  while (true) {
    const EdgeInstanceView& view = querier.view();
    bool solved = false;
    for (EdgeId e : cycle) {
      if (always_maximal(view, cycle, e)) {
        solved = true;
        break;
      }
    }
    if (solved) break;
    std::optional<EdgeId> pick;
    for (EdgeId e : cycle) {
      if (view.sets[e].trivial()) continue;
      if (!pick || view.sets[e].upper() > view.sets[*pick].upper()) pick = e;
    }
    if (!pick) {
      throw std::logic_error("cycle has no always-maximal edge and nothing left to query");
    }
    querier.query(*pick);
  }
}

struct CycleCoin {
  Rational p_query_x;  // probability of starting with X(f)
  std::vector<EdgeId> x;
};

CycleCoin cycle_coin(const EdgeInstanceView& view, std::span<const EdgeId> cycle, EdgeId f) {
  CycleCoin coin;
  coin.x = neighbor_set(view, cycle, f);
  Rational qx = 0;
  for (EdgeId e : coin.x) qx += view.costs[e];
  const Rational& qf = view.costs[f];
  coin.p_query_x = (qf * qf) / (qf * qf + qx * qx);
  return coin;
}

void run_cycle_branch(EdgeQuerier& querier, std::span<const EdgeId> cycle, EdgeId f,
                      const std::vector<EdgeId>& x, bool start_with_x) {
  if (start_with_x) {
    for (EdgeId e : x) querier.query(e);
  } else {
    querier.query(f);
  }
  run_cycle_tail(querier, cycle);
}

}  // namespace

std::vector<EdgeId> limit_tree(const EdgeInstanceView& view, LimitMode mode,
                               std::span<const EdgeId> prefer) {
  const std::vector<bool> preferred = member_mask(view.edges.size(), prefer);
  auto key = [&](EdgeId e) -> const Rational& {
    return mode == LimitMode::Lower ? view.sets[e].lower() : view.sets[e].upper();
  };
  return kruskal(view.vertex_count, view.edges, [&](EdgeId a, EdgeId b) {
    if (key(a) != key(b)) return key(a) < key(b);
    if (preferred[a] != preferred[b]) return preferred[a];
    return a < b;
  });
}

CycleDecomposition preprocess(EdgeQuerier& querier) {
  while (true) {
    const EdgeInstanceView& view = querier.view();
    const std::vector<EdgeId> upper = limit_tree(view, LimitMode::Upper);
    const std::vector<EdgeId> lower = limit_tree(view, LimitMode::Lower, upper);
    const std::vector<bool> in_upper = member_mask(view.edges.size(), upper);

    std::size_t queried = 0;
    for (EdgeId e : lower) {
      if (!in_upper[e] && !view.sets[e].trivial()) {
        querier.query(e);
        ++queried;
      }
    }
    if (lower == upper) {
      return decompose_cycles(view.vertex_count, view.edges, lower);
    }
    if (queried == 0) {
      throw std::logic_error("limit trees differ on trivial edges only");
    }
  }
}

std::vector<EdgeId> neighbor_set(const EdgeInstanceView& view, std::span<const EdgeId> cycle,
                                 EdgeId f) {
  if (std::find(cycle.begin(), cycle.end(), f) == cycle.end()) {
    throw std::invalid_argument("edge is not on the given cycle");
  }
  const Rational& lf = view.sets[f].lower();
  std::vector<EdgeId> x;
  for (EdgeId e : cycle) {
    if (e != f && view.sets[e].upper() > lf) x.push_back(e);
  }
  std::sort(x.begin(), x.end());
  return x;
}

EdgeTranscript random_c(EdgeQuerier& querier, ChoiceSource& choices, RandomCOptions options) {
  if (!is_cactus(querier.view().vertex_count, querier.view().edges)) {
    throw std::invalid_argument("random_c requires a cactus graph");
  }
  std::optional<std::uint64_t> shared_word;
  if (options.shared_coin) shared_word = choices.raw64();

  const CycleDecomposition decomposition = preprocess(querier);
  for (std::size_t i = 0; i < decomposition.nontree.size(); ++i) {
    const EdgeId f = decomposition.nontree[i];
    const auto& cycle = decomposition.cycles[i];
    const CycleCoin coin = cycle_coin(querier.view(), cycle, f);
    if (coin.x.empty()) continue;

    bool start_with_x;
    if (shared_word) {
      // b <= p with b = word/2^64, compared exactly.
      boost::multiprecision::cpp_int lhs =
          boost::multiprecision::cpp_int(*shared_word) * denominator(coin.p_query_x);
      start_with_x = lhs <= (numerator(coin.p_query_x) << 64);
    } else {
      start_with_x = choices.bernoulli(coin.p_query_x);
    }
    run_cycle_branch(querier, cycle, f, coin.x, start_with_x);
  }
  return querier.transcript();
}

Rational random_c_exact_expectation(const EdgeEnvironment& env) {
  if (!is_cactus(env.view().vertex_count, env.view().edges)) {
    throw std::invalid_argument("random_c requires a cactus graph");
  }
  EdgeEnvironment preprocessed = env;
  EdgeQuerier querier(preprocessed);
  const CycleDecomposition decomposition = preprocess(querier);
  Rational expectation = preprocessed.transcript().total_cost;

  for (std::size_t i = 0; i < decomposition.nontree.size(); ++i) {
    const EdgeId f = decomposition.nontree[i];
    const auto& cycle = decomposition.cycles[i];
    const CycleCoin coin = cycle_coin(preprocessed.view(), cycle, f);
    if (coin.x.empty()) continue;

    for (const bool start_with_x : {true, false}) {
      EdgeEnvironment branch_env = preprocessed;
      EdgeQuerier branch(branch_env);
      const Rational before = branch_env.transcript().total_cost;
      run_cycle_branch(branch, cycle, f, coin.x, start_with_x);
      const Rational branch_cost = branch_env.transcript().total_cost - before;
      expectation +=
          (start_with_x ? coin.p_query_x : Rational(1) - coin.p_query_x) * branch_cost;
    }
  }
  return expectation;
}

}  // namespace mstu
