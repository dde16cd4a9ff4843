#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include "rotsys/errors.hpp"

namespace rotsys {

// Counts are exact arbitrary-precision integers ((d-1)! overflows 64 bits at
// d = 21); probabilities and bounds are exact rationals. No floating point
// anywhere in the counting paths.
using BigCount = boost::multiprecision::cpp_int;
using BigRatio = boost::multiprecision::cpp_rational;

inline BigCount factorial(int n) {
  BigCount r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

// C(n, k) for n >= 0; zero outside the triangle.
inline BigCount binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  BigCount num = 1;
  for (long long i = 0; i < k; ++i) num *= (n - i);
  return num / factorial(static_cast<int>(k));
}

// Generalized binomial via the falling factorial: C(x, r) = x(x-1)...(x-r+1)/r!.
// Defined for any integer x; C(-1, r) = (-1)^r.
inline BigCount generalized_binomial(long long x, long long r) {
  if (r < 0) return 0;
  BigCount num = 1;
  for (long long i = 0; i < r; ++i) num *= (x - i);
  BigCount den = factorial(static_cast<int>(r));
  if (num % den != 0) throw invariant_error("generalized_binomial: non-integer result");
  return num / den;
}

// Exact division with a divisibility check; the recurrences must divide evenly.
inline BigCount exact_div(const BigCount& num, const BigCount& den, const char* what) {
  if (den == 0 || num % den != 0)
    throw invariant_error(std::string("exact division failed in ") + what);
  return num / den;
}

}  // namespace rotsys
