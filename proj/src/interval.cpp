#include "fqlat/interval.hpp"

#include <algorithm>
#include <stdexcept>

namespace fqlat {

Interval::Interval(mpfr_prec_t prec) : prec_(prec) {
  mpfr_init2(lo_, prec);
  mpfr_init2(hi_, prec);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Interval::Interval(const Interval& o) : prec_(o.prec_) {
  mpfr_init2(lo_, prec_);
  mpfr_init2(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

Interval& Interval::operator=(const Interval& o) {
  if (this == &o) return *this;
  prec_ = o.prec_;
  mpfr_set_prec(lo_, prec_);
  mpfr_set_prec(hi_, prec_);
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
  return *this;
}

Interval::~Interval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

Interval Interval::point(double x, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_d(r.lo_, x, MPFR_RNDD);
  mpfr_set_d(r.hi_, x, MPFR_RNDU);
  return r;
}

Interval Interval::point(long x, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_set_si(r.lo_, x, MPFR_RNDD);
  mpfr_set_si(r.hi_, x, MPFR_RNDU);
  return r;
}

Interval Interval::decimal(const std::string& s, mpfr_prec_t prec) {
  Interval r(prec);
  if (mpfr_set_str(r.lo_, s.c_str(), 10, MPFR_RNDD) != 0 || mpfr_set_str(r.hi_, s.c_str(), 10, MPFR_RNDU) != 0)
    throw std::invalid_argument("bad decimal " + s);
  return r;
}

Interval Interval::pi(mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_const_pi(r.lo_, MPFR_RNDD);
  mpfr_const_pi(r.hi_, MPFR_RNDU);
  return r;
}

Interval Interval::zeta(unsigned long n, mpfr_prec_t prec) {
  if (n < 2) throw std::domain_error("zeta pole");
  Interval r(prec);
  mpfr_zeta_ui(r.lo_, n, MPFR_RNDD);
  mpfr_zeta_ui(r.hi_, n, MPFR_RNDU);
  return r;
}

Interval Interval::gamma(double x, mpfr_prec_t prec) {
  Interval r(prec);
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_d(t, x, MPFR_RNDN);  // exact: doubles fit in 64 bits
  mpfr_gamma(r.lo_, t, MPFR_RNDD);
  mpfr_gamma(r.hi_, t, MPFR_RNDU);
  mpfr_clear(t);
  return r;
}

double Interval::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Interval::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Interval::mid() const {
  mpfr_t m;
  mpfr_init2(m, prec_ + 1);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

Interval operator+(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return r;
}

using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// min and max over the four endpoint combinations
static void corners(mpfr_ptr lo, mpfr_ptr hi, mpfr_srcptr alo, mpfr_srcptr ahi, mpfr_srcptr blo,
                    mpfr_srcptr bhi, BinOp op) {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(lo));
  bool first = true;
  for (mpfr_srcptr x : {alo, ahi})
    for (mpfr_srcptr y : {blo, bhi}) {
      op(t, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t, lo)) mpfr_set(lo, t, MPFR_RNDD);
      op(t, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t, hi)) mpfr_set(hi, t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r(std::max(a.prec_, b.prec_));
  corners(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_, mpfr_mul);
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (mpfr_sgn(b.lo_) <= 0 && mpfr_sgn(b.hi_) >= 0) throw std::domain_error("interval division by zero");
  Interval r(std::max(a.prec_, b.prec_));
  corners(r.lo_, r.hi_, a.lo_, a.hi_, b.lo_, b.hi_, mpfr_div);
  return r;
}

Interval exp(const Interval& a) {
  Interval r(a.prec_);
  mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval log(const Interval& a) {
  if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("log of a non-positive interval");
  Interval r(a.prec_);
  mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
  return r;
}

Interval pow(const Interval& a, const Interval& b) { return exp(b * log(a)); }

Interval pow(const Interval& a, long k) {
  if (mpfr_sgn(a.lo_) <= 0) throw std::domain_error("pow of a non-positive interval");
  Interval r(a.prec_);
  mpfr_pow_si(r.lo_, k >= 0 ? a.lo_ : a.hi_, k, MPFR_RNDD);
  mpfr_pow_si(r.hi_, k >= 0 ? a.hi_ : a.lo_, k, MPFR_RNDU);
  return r;
}

std::string Interval::to_string(int digits) const {
  char buf[128];
  mpfr_snprintf(buf, sizeof buf, "[%.*RDg, %.*RUg]", digits, lo_, digits, hi_);
  return buf;
}

}  // namespace fqlat
