#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace vertexlab {

using BigInt   = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct DomainError : std::runtime_error {
  explicit DomainError(const std::string& m) : std::runtime_error("domain error: " + m) {}
};
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& m) : std::runtime_error("pole error: " + m) {}
};
struct DirectionError : std::runtime_error {
  explicit DirectionError(const std::string& m) : std::runtime_error("direction error: " + m) {}
};
struct LatticeError : std::runtime_error {
  explicit LatticeError(const std::string& m) : std::runtime_error("lattice error: " + m) {}
};
struct RegimeError : std::runtime_error {
  explicit RegimeError(const std::string& m) : std::runtime_error("regime error: " + m) {}
};
struct TruncationError : std::runtime_error {
  explicit TruncationError(const std::string& m) : std::runtime_error("truncation error: " + m) {}
};

inline Rational ratPow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  if (base == 0) {
    if (e < 0) throw DomainError("0 raised to a negative power");
    return Rational(0);
  }
  unsigned long n = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational acc(1), b = base;
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  if (e < 0) acc = Rational(1) / acc;
  return acc;
}

inline BigInt factorialBig(long n) {
  BigInt r = 1;
  for (long i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Generalized binomial C(top, k) with integer top (possibly negative), k >= 0.
inline Rational binomialRat(long top, long k) {
  if (k < 0) return Rational(0);
  Rational num(1);
  for (long i = 0; i < k; ++i) num *= Rational(top - i);
  return num / Rational(factorialBig(k));
}

inline bool isIntegerRat(const Rational& r) { return denominator(r) == 1; }

inline long toLong(const Rational& r) {
  if (!isIntegerRat(r)) throw DomainError("expected an integer rational");
  return static_cast<long>(numerator(r));
}

inline std::string ratStr(const Rational& r) { return r.str(); }

}  // namespace vertexlab
