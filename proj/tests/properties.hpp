#pragma once

// Property checks shared by the unit tests and the acceptance binary. Each
// returns an empty string on success, otherwise the first counterexample.

#include <random>
#include <string>

#include "fqlat/classifier.hpp"
#include "fqlat/report.hpp"
#include "oracles.hpp"

namespace props {

using namespace fqlat;

inline const std::vector<long>& screened() {
  static const std::vector<long> ds = {5,  8,  12, 13,  17,  21,  24,  28,  29,  33,  41, 60,
                                       65, 69, 77, 137, 145, 161, 221, 285, 353, 429, 712};
  return ds;
}

inline std::string kappa_multiplicative() {
  for (long d : screened()) {
    Field k = field_from_discriminant(d);
    for (long a = 1; a <= 60; ++a)
      for (long b = 1; b <= 60; ++b)
        if (k.kappa(a * b) != k.kappa(a) * k.kappa(b))
          return "d=" + std::to_string(d) + " a=" + std::to_string(a) + " b=" + std::to_string(b);
    for (long r = 1; r <= 200; ++r)
      if (k.kappa(r) != oracle::kronecker(d, r)) return "kappa(" + std::to_string(r) + ") at d=" + std::to_string(d);
  }
  return "";
}

// Places over p have norms multiplying to p^2 (ramified places counted twice)
// and their kind matches the brute-force Kronecker symbol.
inline std::string norm_products(long pmax = 1000) {
  for (long d : screened()) {
    Field k = field_from_discriminant(d);
    for (long p = 2; p <= pmax; ++p) {
      if (!oracle::is_prime(p)) continue;
      std::vector<Place> over = k.places_over(p);
      long prod = 1;
      for (const Place& v : over) prod *= k.norm(v);
      int kr = oracle::kronecker_prime(d, p);
      bool ok = kr == 1 ? over.size() == 2 && prod == p * p
                : kr == -1 ? over.size() == 1 && prod == p * p
                           : over.size() == 1 && prod == p;
      if (!ok) return "d=" + std::to_string(d) + " p=" + std::to_string(p);
    }
  }
  return "";
}

inline std::string class_numbers(long max_d = 1285) {
  for (long d = 5; d <= max_d; ++d) {
    if (!oracle::fundamental(d)) continue;
    Field k = field_from_discriminant(d);
    double reg = std::log(std::fabs(k.to_double(k.unit.eps, 0)));
    double h = oracle::class_number_times_regulator(d) / reg;
    if (std::fabs(h - k.cl.h) > 1e-6 * h) return "d=" + std::to_string(d) + " analytic " + std::to_string(h) +
                                                  " vs " + std::to_string(k.cl.h);
    if (k.norm(k.unit.eps) * k.norm(k.unit.eps) != 1) return "unit norm at d=" + std::to_string(d);
  }
  return "";
}

// Splitting of v in k(sqrt(a)) against squares in the residue field.
inline std::string residue_splitting(int pairs = 200, unsigned seed = 20240601) {
  std::mt19937 rng(seed);
  const std::vector<long>& ds = screened();
  std::vector<long> primes;
  for (long p = 3; p < 60; ++p)
    if (oracle::is_prime(p)) primes.push_back(p);
  int done = 0;
  while (done < pairs) {
    long d = ds[rng() % ds.size()];
    long p = primes[rng() % primes.size()];
    Field k = field_from_discriminant(d);
    std::vector<Place> over = k.places_over(p);
    Place v = over[rng() % over.size()];
    long x = static_cast<long>(rng() % 199) - 99, y = static_cast<long>(rng() % 199) - 99;
    // omega = sqrt(m) or (1 + sqrt(m))/2; minimal polynomial w^2 - t w - n
    bool half = k.m % 4 == 1;
    long t = half ? 1 : 0, n = half ? (k.m - 1) / 4 : k.m;
    bool square;
    long rx;
    if (over.size() == 1 && k.norm(v) == p * p) {
      if (oracle::mod(x, p) == 0 && oracle::mod(y, p) == 0) continue;
      square = oracle::is_square_in_quadratic_residue_field(x, y, t, n, p);
    } else {
      // root of w^2 - t w - n mod p: sqrt(m) = r with 0 <= r <= (p-1)/2 for the + place
      long r = -1;
      for (long c = 0; c <= (p - 1) / 2; ++c)
        if (c * c % p == oracle::mod(k.m, p)) r = c;
      if (v.conj == Conj::Minus) r = oracle::mod(-r, p);
      long w = half ? oracle::mod((1 + r) * ((p + 1) / 2), p) : r;
      rx = oracle::mod(x + y * w, p);
      if (rx == 0) continue;
      square = oracle::is_square_mod(rx, p);
    }
    Elem a = k.from_basis(Int(x), Int(y));
    Splitting s = splitting_in_sqrt(k, v, a);
    if ((s == Splitting::Split) != square)
      return "d=" + std::to_string(d) + " v=" + to_string(v) + " a=" + k.format(a);
    ++done;
  }
  return "";
}

// Whenever an odd order m > 1 occurs, so does 2m.
inline std::string torsion_linkage(const std::vector<CandidateClass>& classes) {
  for (const CandidateClass& c : classes)
    for (int m : c.torsion.orders)
      if (m % 2 == 1 && m > 1 && !c.torsion.orders.count(2 * m))
        return class_label(c.d, c.ramified, c.s, c.index) + " has " + std::to_string(m) + " without " + std::to_string(2 * m);
  return "";
}

// Conjugate classes agree on every invariant; certificates are conjugate.
inline std::string conjugation_equivariance(const Classification& cl) {
  int pairs = 0;
  for (const CandidateClass& c : cl.classes) {
    PlaceSet rc = conjugate(c.ramified), sc = conjugate(c.s);
    if (rc == c.ramified && sc == c.s) continue;
    if (!c.conjugate_of) return class_label(c.d, c.ramified, c.s, c.index) + " has no conjugate";
    const CandidateClass& o = cl.classes[*c.conjugate_of];
    std::string label = class_label(c.d, c.ramified, c.s, c.index);
    if (o.chi != c.chi || o.chi_normalizer != c.chi_normalizer || o.index != c.index) return label + ": chi differs";
    if (o.torsion.orders != c.torsion.orders) return label + ": torsion differs";
    if (o.status != c.status || o.h_order != c.h_order) return label + ": status differs";
    if (c.certificate.has_value() != o.certificate.has_value()) return label + ": certificate presence differs";
    if (c.certificate) {
      Field k = field_from_discriminant(c.d);
      if (!(k.conj(*c.certificate) == *o.certificate)) return label + ": certificates not conjugate";
    }
    ++pairs;
  }
  return pairs > 0 ? "" : "no conjugate pairs";
}

}  // namespace props
