#include "grainsched/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "grainsched/errors.hpp"

namespace grainsched {

namespace {

BigInt pow10(int n) {
  BigInt r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// GMP reads a leading '0' as an octal prefix; digit strings from user input
// must always be taken as base 10.
BigInt from_digits(const std::string& s) {
  const size_t first = s.find_first_not_of('0');
  if (first == std::string::npos) return BigInt(0);
  return BigInt(s.substr(first));
}

}  // namespace

Rational parse_decimal(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw ConfigError("empty numeric value");

  bool negative = false;
  if (s[0] == '+' || s[0] == '-') {
    negative = s[0] == '-';
    s.erase(0, 1);
  }
  if (s.empty()) throw ConfigError("invalid numeric value '" + text + "'");

  // num/den form.
  if (auto slash = s.find('/'); slash != std::string::npos) {
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) {
      throw ConfigError("invalid rational value '" + text + "'");
    }
    BigInt d = from_digits(den);
    if (d == 0) throw ConfigError("zero denominator in '" + text + "'");
    Rational r(from_digits(num), d);
    return negative ? Rational(-r) : r;
  }

  // Optional exponent.
  int exponent = 0;
  if (auto epos = s.find_first_of("eE"); epos != std::string::npos) {
    std::string exp_part = s.substr(epos + 1);
    s = s.substr(0, epos);
    bool exp_neg = false;
    if (!exp_part.empty() && (exp_part[0] == '+' || exp_part[0] == '-')) {
      exp_neg = exp_part[0] == '-';
      exp_part.erase(0, 1);
    }
    if (!all_digits(exp_part) || exp_part.size() > 6) {
      throw ConfigError("invalid exponent in '" + text + "'");
    }
    exponent = std::atoi(exp_part.c_str());
    if (exp_neg) exponent = -exponent;
  }

  std::string int_part = s;
  std::string frac_part;
  if (auto dot = s.find('.'); dot != std::string::npos) {
    int_part = s.substr(0, dot);
    frac_part = s.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty()) {
    throw ConfigError("invalid numeric value '" + text + "'");
  }
  if (int_part.empty()) int_part = "0";
  if (!all_digits(int_part) || (!frac_part.empty() && !all_digits(frac_part))) {
    throw ConfigError("invalid numeric value '" + text + "'");
  }

  BigInt scaled = from_digits(int_part + frac_part);
  Rational r(scaled, pow10(static_cast<int>(frac_part.size())));
  if (exponent > 0) {
    r *= Rational(pow10(exponent));
  } else if (exponent < 0) {
    r /= Rational(pow10(-exponent));
  }
  return negative ? Rational(-r) : r;
}

BigInt floor_rational(const Rational& value) {
  BigInt num = numerator(value);
  BigInt den = denominator(value);  // canonical: den > 0
  BigInt q = num / den;             // truncates toward zero
  if (num < 0 && q * den != num) q -= 1;
  return q;
}

std::string format_decimal(const Rational& value, int digits) {
  bool negative = value < 0;
  Rational a = negative ? Rational(-value) : value;
  BigInt scale = pow10(digits);
  // round half up on |value|
  BigInt scaled = floor_rational(a * Rational(scale) + Rational(1, 2));
  BigInt int_part = scaled / scale;
  BigInt frac = scaled % scale;
  std::string out = negative && scaled != 0 ? "-" : "";
  out += int_part.str();
  if (digits > 0) {
    std::string f = frac.str();
    out += '.';
    out += std::string(static_cast<size_t>(digits) - f.size(), '0');
    out += f;
  }
  return out;
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

}  // namespace grainsched
