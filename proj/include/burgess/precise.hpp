#pragma once

// 50-digit binary floating point for constant and threshold checks.

#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

namespace burgess {

using Precise = boost::multiprecision::cpp_bin_float_50;

namespace precise {

Precise euler_gamma();
Precise ln10();
Precise sqrt10();

/// Decimal rendering with the given number of significant digits.
std::string to_string(const Precise& x, int digits = 32);

}  // namespace precise
}  // namespace burgess
