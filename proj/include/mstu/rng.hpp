#pragma once

#include <cstdint>
#include <vector>

#include "mstu/rational.hpp"

namespace mstu {

/// Source of the random decisions made by the algorithms. Algorithms draw
/// only through this interface so that a run can be replayed (Monte Carlo)
/// or exhaustively enumerated (exact expectation) with the same code path.
class ChoiceSource {
 public:
  virtual ~ChoiceSource() = default;

  /// Uniform draw from {0, ..., arity-1}.
  virtual std::size_t uniform(std::size_t arity) = 0;

  /// True with exactly the given probability (0 <= p <= 1).
  virtual bool bernoulli(const Rational& p) = 0;

  /// Raw 64-bit word; used by the shared-coin variant.
  virtual std::uint64_t raw64() = 0;
};

/// Counter-based generator in the SplitMix64 family: output i is a fixed
/// 64-bit mix of (key, i), so independent streams are derived by key and
/// replay is position-independent. Streams for Monte Carlo trials use
/// key = mix(seed, trial).
class CounterRng final : public ChoiceSource {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next();

  std::size_t uniform(std::size_t arity) override;
  bool bernoulli(const Rational& p) override;
  std::uint64_t raw64() override { return next(); }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Replays a prescribed sequence of decisions. Requesting a decision past
/// the end of the script throws BranchOverrun carrying the arity of the
/// pending decision; enumeration drivers catch it and fork the script.
struct BranchOverrun {
  std::size_t arity;
};

class ScriptedChoices final : public ChoiceSource {
 public:
  explicit ScriptedChoices(std::vector<std::size_t> script);

  std::size_t uniform(std::size_t arity) override;
  bool bernoulli(const Rational& p) override;
  std::uint64_t raw64() override;

  /// Probability of the path taken so far (product over consumed decisions).
  const Rational& path_probability() const { return path_probability_; }

 private:
  std::size_t take(std::size_t arity, const Rational& prob_of_first);

  std::vector<std::size_t> script_;
  std::size_t position_ = 0;
  Rational path_probability_ = 1;
};

/// Runs `run` once per decision path of the randomized procedure and calls
/// `emit(path_probability, result)` for each completed path. `run` must be
/// deterministic given its ChoiceSource.
template <typename Run, typename Emit>
void enumerate_choice_paths(Run&& run, Emit&& emit) {
  std::vector<std::vector<std::size_t>> pending;
  pending.push_back({});
  while (!pending.empty()) {
    std::vector<std::size_t> script = std::move(pending.back());
    pending.pop_back();
    ScriptedChoices choices(script);
    try {
      auto result = run(choices);
      emit(choices.path_probability(), std::move(result));
    } catch (const BranchOverrun& overrun) {
      for (std::size_t option = 0; option < overrun.arity; ++option) {
        std::vector<std::size_t> extended = script;
        extended.push_back(option);
        pending.push_back(std::move(extended));
      }
    }
  }
}

}  // namespace mstu
