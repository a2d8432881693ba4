#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>

namespace grainsched {

// Exact rational arithmetic for simulated time and rate bookkeeping.
// Every quantity the simulator compares or accumulates is a Rational, so
// event ordering and emitted reports are bit-reproducible across runs.
using Rational = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

// Parses a plain decimal string: [+-]digits[.digits], or [+-]num/den.
// Scientific notation ("1e-3") is accepted. Throws ConfigError on anything
// else; this is the only path by which external numeric text becomes exact.
Rational parse_decimal(const std::string& text);

// Fixed-point rendering with exactly `digits` fractional digits, round half
// up on the absolute value. No exponent form, no digit trimming, so column
// widths and byte content are stable across platforms.
std::string format_decimal(const Rational& value, int digits);

// floor(value) as a BigInt; exact for negatives too.
BigInt floor_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace grainsched
