#pragma once

// Brute-force references that share no code with the engines.

#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

namespace oracle {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long i = 2; i * i <= n; ++i)
    if (n % i == 0) return false;
  return true;
}

inline long mod(long a, long n) { return ((a % n) + n) % n; }

// Exhaustive squares mod an odd prime.
inline bool is_square_mod(long a, long p) {
  a = mod(a, p);
  for (long x = 0; x < p; ++x)
    if (x * x % p == a) return true;
  return false;
}

// (d / p) for a prime p.
inline int kronecker_prime(long d, long p) {
  if (p == 2) {
    if (d % 2 == 0) return 0;
    long r = mod(d, 8);
    return r == 1 || r == 7 ? 1 : -1;
  }
  if (mod(d, p) == 0) return 0;
  return is_square_mod(d, p) ? 1 : -1;
}

// (d / n) by trial factoring n.
inline int kronecker(long d, long n) {
  int s = 1;
  for (long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      s *= kronecker_prime(d, p);
      n /= p;
    }
  if (n > 1) s *= kronecker_prime(d, n);
  return s;
}

inline bool squarefree(long m) {
  for (long p = 2; p * p <= m; ++p)
    if (m % (p * p) == 0) return false;
  return true;
}

inline bool fundamental(long d) {
  if (d <= 1) return false;
  if (d % 4 == 1) return squarefree(d);
  if (d % 4 != 0) return false;
  long m = d / 4;
  return (m % 4 == 2 || m % 4 == 3) && squarefree(m);
}

// sum_{r=1}^{d} r^2 (d/r), whose quotient by d is B_{2,kappa}
inline long b2_times_d(long d) {
  long s = 0;
  for (long r = 1; r <= d; ++r) s += r * r * kronecker(d, r);
  return s;
}

// h * R from the analytic class number formula.
inline double class_number_times_regulator(long d) {
  double s = 0;
  for (long a = 1; a < d; ++a) {
    int k = kronecker(d, a);
    if (k) s += k * std::log(std::sin(std::numbers::pi * a / d));
  }
  return -0.5 * s;
}

// Squares in F_p[w]/(w^2 - t w - n) for odd p, as pairs (x, y) meaning x + y w.
inline bool is_square_in_quadratic_residue_field(long x, long y, long t, long n, long p) {
  x = mod(x, p);
  y = mod(y, p);
  for (long a = 0; a < p; ++a)
    for (long b = 0; b < p; ++b) {
      // (a + b w)^2 = a^2 + 2ab w + b^2 w^2, w^2 = t w + n
      long cx = mod(a * a + b * b % p * n, p);
      long cy = mod(2 * a * b + b * b % p * t, p);
      if (cx == x && cy == y) return true;
    }
  return false;
}

}  // namespace oracle
