#include "burgess/precise.hpp"

#include <sstream>

#include "burgess/constants.hpp"

namespace burgess::precise {

Precise euler_gamma() {
  static const Precise v{std::string(constants::kEulerGammaDigits)};
  return v;
}

Precise ln10() {
  static const Precise v{std::string(constants::kLn10Digits)};
  return v;
}

Precise sqrt10() {
  static const Precise v{std::string(constants::kSqrt10Digits)};
  return v;
}

std::string to_string(const Precise& x, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << x;
  return os.str();
}

}  // namespace burgess::precise
