#include "mstu/rng.hpp"

#include <stdexcept>

namespace mstu {

namespace {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed + kGolden) ^ mix64(stream * kGolden + 0x1234567899abcdefULL)) {}

std::uint64_t CounterRng::next() {
  ++counter_;
  return mix64(key_ + counter_ * kGolden);
}

std::size_t CounterRng::uniform(std::size_t arity) {
  if (arity == 0) {
    throw std::invalid_argument("uniform draw with arity 0");
  }
  const unsigned __int128 wide = static_cast<unsigned __int128>(next()) * arity;
  return static_cast<std::size_t>(wide >> 64);
}

bool CounterRng::bernoulli(const Rational& p) {
  if (p < 0 || p > 1) {
    throw std::invalid_argument("bernoulli probability outside [0,1]");
  }
  const std::uint64_t word = next();
  // word/2^64 < p, compared exactly.
  boost::multiprecision::cpp_int lhs = boost::multiprecision::cpp_int(word) * denominator(p);
  boost::multiprecision::cpp_int rhs = numerator(p) << 64;
  return lhs < rhs;
}

ScriptedChoices::ScriptedChoices(std::vector<std::size_t> script) : script_(std::move(script)) {}

std::size_t ScriptedChoices::take(std::size_t arity, const Rational& prob_of_choice) {
  if (position_ >= script_.size()) {
    throw BranchOverrun{arity};
  }
  const std::size_t choice = script_[position_++];
  if (choice >= arity) {
    throw std::logic_error("scripted choice out of range");
  }
  path_probability_ *= prob_of_choice;
  return choice;
}

std::size_t ScriptedChoices::uniform(std::size_t arity) {
  if (arity == 0) {
    throw std::invalid_argument("uniform draw with arity 0");
  }
  return take(arity, Rational(1, static_cast<unsigned long>(arity)));
}

bool ScriptedChoices::bernoulli(const Rational& p) {
  if (position_ >= script_.size()) {
    throw BranchOverrun{2};
  }
  const std::size_t choice = script_[position_];
  take(2, choice == 0 ? p : Rational(1) - p);
  return choice == 0;
}

std::uint64_t ScriptedChoices::raw64() {
  throw std::logic_error("raw 64-bit draws cannot be enumerated; use per-cycle coins");
}

}  // namespace mstu
