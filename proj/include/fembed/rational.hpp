#ifndef FEMBED_RATIONAL_HPP_
#define FEMBED_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

namespace fembed {

// Exact arbitrary-precision rational. All source distances live here.
using Rational = mpq_class;

// Accepts "p/q", "p", and plain decimals such as "0.125" (converted exactly).
Rational parse_rational(std::string_view text);

// Canonical "p/q" form ("p" when the denominator is 1).
std::string to_string(const Rational& value);

inline double to_double(const Rational& value) { return value.get_d(); }

// base^exponent for any integer exponent; base must be nonzero when exponent < 0.
Rational pow_int(const Rational& base, int exponent);

// Largest integer e with base^e <= value, for base > 1 and value > 0.
int floor_log(const Rational& value, const Rational& base);

using Rng = std::mt19937_64;

// Portable draws: std distributions are implementation-defined, these are not.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t uniform_index(Rng& rng, std::size_t bound) {
  return static_cast<std::size_t>(rng() % bound);
}

}  // namespace fembed

#endif  // FEMBED_RATIONAL_HPP_
