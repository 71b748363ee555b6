#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <numeric>
#include <string>

#include "polarium/error.hpp"

namespace polarium {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer den(const Rational& r) { return boost::multiprecision::denominator(r); }

inline bool is_integral(const Rational& r) { return den(r) == 1; }

inline Rational floor(const Rational& r) {
  Integer n = num(r), d = den(r);
  Integer q = n / d;
  if (n < 0 && q * d != n) q -= 1;
  return Rational(q);
}

/// "p/q" or "p"; denominators are always positive and reduced.
inline std::string to_string(const Rational& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

inline Rational parse_rational(const std::string& s) {
  try {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer p(s.substr(0, slash)), q(s.substr(slash + 1));
    if (q == 0) fail(ErrorCode::InvalidArgument, "exactfield", "zero denominator in '" + s + "'");
    return Rational(p, q);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "exactfield", "malformed rational '" + s + "'");
  }
}

inline std::int64_t to_int64(const Rational& r) {
  if (!is_integral(r)) fail(ErrorCode::InvalidArgument, "exactfield", "expected integer, got " + to_string(r));
  return num(r).convert_to<std::int64_t>();
}

inline std::int64_t lcm64(std::int64_t a, std::int64_t b) { return std::lcm(a, b); }

}  // namespace polarium
