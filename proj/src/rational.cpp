#include "fembed/rational.hpp"

#include <cctype>

#include "fembed/errors.hpp"

namespace fembed {

namespace {

bool is_integer_literal(std::string_view s) {
  if (s.empty()) return false;
  std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (start == s.size()) return false;
  for (std::size_t i = start; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

mpz_class parse_integer(std::string_view s) {
  if (!is_integer_literal(s)) {
    throw InvalidArgument("not an integer literal: '" + std::string(s) + "'");
  }
  std::string digits(s[0] == '+' ? s.substr(1) : s);
  return mpz_class(digits, 10);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw InvalidArgument("empty rational literal");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    mpz_class num = parse_integer(text.substr(0, slash));
    mpz_class den = parse_integer(text.substr(slash + 1));
    if (den == 0) throw InvalidArgument("zero denominator in '" + std::string(text) + "'");
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole[0] == '-';
    std::string digits(whole);
    if (digits.empty() || digits == "-" || digits == "+") digits += "0";
    if (!frac.empty() && !is_integer_literal(frac)) {
      throw InvalidArgument("bad decimal literal '" + std::string(text) + "'");
    }
    mpz_class int_part = parse_integer(digits);
    mpz_class scale = 1;
    mpz_class frac_part = 0;
    if (!frac.empty()) {
      mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
      frac_part = mpz_class(std::string(frac), 10);
    }
    mpz_class magnitude = abs(int_part) * scale + frac_part;
    Rational r(negative ? -magnitude : magnitude, scale);
    r.canonicalize();
    return r;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& value) {
  Rational canonical = value;
  canonical.canonicalize();
  return canonical.get_str();
}

Rational pow_int(const Rational& base, int exponent) {
  if (exponent < 0) {
    if (base == 0) throw InvalidArgument("zero to a negative power");
    Rational inv = 1 / base;
    return pow_int(inv, -exponent);
  }
  Rational result = 1;
  Rational b = base;
  unsigned e = static_cast<unsigned>(exponent);
  while (e != 0) {
    if (e & 1u) result *= b;
    e >>= 1;
    if (e != 0) b *= b;
  }
  return result;
}

int floor_log(const Rational& value, const Rational& base) {
  if (base <= 1) throw InvalidArgument("floor_log needs base > 1");
  if (value <= 0) throw InvalidArgument("floor_log needs a positive value");
  int e = 0;
  Rational power = 1;
  if (value >= 1) {
    while (power * base <= value) {
      power *= base;
      ++e;
    }
  } else {
    while (power > value) {
      power /= base;
      --e;
    }
  }
  return e;
}

}  // namespace fembed
