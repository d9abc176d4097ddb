#pragma once

#include <mpfr.h>

#include <string>

namespace fqlat {

// Closed interval [lo, hi] with outward rounding on every operation.
class Interval {
 public:
  explicit Interval(mpfr_prec_t prec = 128);
  Interval(const Interval& o);
  Interval& operator=(const Interval& o);
  ~Interval();

  static Interval point(double x, mpfr_prec_t prec = 128);
  static Interval point(long x, mpfr_prec_t prec = 128);
  // Decimal literal, e.g. "0.0221"; encloses the exact decimal value.
  static Interval decimal(const std::string& s, mpfr_prec_t prec = 128);
  static Interval pi(mpfr_prec_t prec = 128);
  // Riemann zeta at an integer >= 2.
  static Interval zeta(unsigned long n, mpfr_prec_t prec = 128);
  // Gamma at a point argument.
  static Interval gamma(double x, mpfr_prec_t prec = 128);

  double lower() const;  // rounded down
  double upper() const;  // rounded up
  double mid() const;
  mpfr_prec_t precision() const { return prec_; }

  bool certainly_less(double c) const { return mpfr_cmp_d(hi_, c) < 0; }
  bool certainly_greater(double c) const { return mpfr_cmp_d(lo_, c) > 0; }
  bool certainly_less(const Interval& o) const { return mpfr_less_p(hi_, o.lo_); }

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);
  friend Interval exp(const Interval& a);
  friend Interval log(const Interval& a);          // a > 0
  friend Interval pow(const Interval& a, const Interval& b);  // a > 0
  friend Interval pow(const Interval& a, long k);

  std::string to_string(int digits = 12) const;

 private:
  mpfr_t lo_, hi_;
  mpfr_prec_t prec_;
};

}  // namespace fqlat
