#include "mstu/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace mstu {

Rational rational_from_string(const std::string& text) {
  if (text.empty()) {
    throw std::invalid_argument("empty rational literal");
  }
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(boost::multiprecision::cpp_int(text));
    }
    boost::multiprecision::cpp_int num(text.substr(0, slash));
    boost::multiprecision::cpp_int den(text.substr(slash + 1));
    if (den == 0) {
      throw std::invalid_argument("zero denominator in rational literal");
    }
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    throw std::invalid_argument(std::string("malformed rational literal '") + text + "': " + e.what());
  }
}

std::string rational_to_string(const Rational& value) {
  if (denominator(value) == 1) {
    return numerator(value).str();
  }
  return numerator(value).str() + "/" + denominator(value).str();
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) {
    throw std::invalid_argument("non-finite value has no rational representation");
  }
  return Rational(value);
}

double rational_to_double(const Rational& value) { return static_cast<double>(value); }

}  // namespace mstu
