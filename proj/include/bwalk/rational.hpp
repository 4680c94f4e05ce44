// Exact integer / rational scalars used by the lattice and DP code.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace bwalk {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt big_pow(const BigInt& base, unsigned exp) {
  BigInt out = 1, b = base;
  while (exp) {
    if (exp & 1u) out *= b;
    b *= b;
    exp >>= 1u;
  }
  return out;
}

// Natural log of a positive big integer; exact-ish for any bit length
// (top 64 bits + exponent), unlike convert_to<double> which overflows.
inline double log_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log_big: nonpositive argument");
  const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(v)) + 1u;
  if (bits <= 63) return std::log(v.convert_to<double>());
  const unsigned shift = bits - 63;
  const BigInt top = v >> shift;
  return std::log(top.convert_to<double>()) + shift * std::log(2.0);
}

inline double log_rational(const Rational& v) {
  if (v <= 0) throw std::domain_error("log_rational: nonpositive argument");
  return log_big(boost::multiprecision::numerator(v)) -
         log_big(boost::multiprecision::denominator(v));
}

inline double to_double(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  const auto big = [](const BigInt& x) {
    return x > std::numeric_limits<int64_t>::max() || x < std::numeric_limits<int64_t>::min();
  };
  if (!big(num) && !big(den)) return num.convert_to<double>() / den.convert_to<double>();
  if (v > 0) return std::exp(log_rational(v));
  return -std::exp(log_rational(-v));
}

// Parses "p", "p/q" or a plain decimal ("0.25") into an exact rational.
inline Rational parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("parse_rational: zero denominator");
    return Rational(num, den);
  }
  const auto dot = text.find('.');
  if (dot == std::string::npos) return Rational(BigInt(text));
  std::string digits = text.substr(0, dot) + text.substr(dot + 1);
  const size_t frac_len = text.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("parse_rational: bad literal '" + text + "'");
  return Rational(BigInt(digits), big_pow(10, static_cast<unsigned>(frac_len)));
}

inline std::string rational_string(const Rational& v) {
  const BigInt num = boost::multiprecision::numerator(v);
  const BigInt den = boost::multiprecision::denominator(v);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace bwalk
