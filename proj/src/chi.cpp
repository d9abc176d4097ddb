#include "fqlat/chi.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <tuple>

namespace fqlat {

void check_ramification(const Field& k, const PlaceSet& ramified) {
  if (ramified.empty() || ramified.size() % 2 != 0)
    throw InvalidRamification("R_f must have even, nonzero cardinality (got " + std::to_string(ramified.size()) + ")");
  for (size_t i = 0; i < ramified.size(); ++i) {
    k.check_place(ramified[i]);
    for (size_t j = 0; j < i; ++j)
      if (ramified[i] == ramified[j]) throw InvalidRamification("repeated place " + to_string(ramified[i]));
  }
}

void check_s(const Field& k, const PlaceSet& ramified, const PlaceSet& s) {
  for (size_t i = 0; i < s.size(); ++i) {
    k.check_place(s[i]);
    if (std::find(ramified.begin(), ramified.end(), s[i]) != ramified.end())
      throw InvalidRamification("place " + to_string(s[i]) + " lies in both R_f and S");
    for (size_t j = 0; j < i; ++j)
      if (s[i] == s[j]) throw InvalidRamification("repeated place " + to_string(s[i]));
  }
}

int t_prime(const Field& k, const PlaceSet& ramified) {
  return static_cast<int>(std::count_if(ramified.begin(), ramified.end(), [&](const Place& v) { return k.norm(v) == 2; }));
}

Rat e_prime_product(const Field& k, const PlaceSet& ramified) {
  Rat e = 1;
  for (const Place& v : ramified)
    if (k.norm(v) != 2) e *= k.e_prime(v);
  return e;
}

Int sigma_product(const Field& k, const PlaceSet& s) {
  Int e = 1;
  for (const Place& v : s) e *= k.sigma(v);
  return e;
}

Rat chi_norm_one(const Field& k, const PlaceSet& ramified) {
  check_ramification(k, ramified);
  Rat chi = k.b2 / 48;
  for (const Place& v : ramified) chi *= k.norm(v) - 1;
  return chi;
}

int kprime_degree(const Field& k, const PlaceSet& ramified) {
  std::vector<int> cls;
  for (const Place& v : ramified) cls.push_back(k.wide_class(v));
  return k.cl.quotient_by_squares_and(cls, false);
}

long index_norm_one_in_normalizer(const Field& k, const PlaceSet& ramified) {
  check_ramification(k, ramified);
  if (k.cl.h == 1) return s_unit_tp_index(k, ramified);
  long two_rf = 1L << ramified.size();
  return two_rf * 4 * kprime_degree(k, ramified) / k.unit.tp_unit_index();
}

Rat chi_normalizer(const Field& k, const PlaceSet& ramified) {
  Rat chi = chi_norm_one(k, ramified) / index_norm_one_in_normalizer(k, ramified);
  chi.canonicalize();
  return chi;
}

IndexDiagnostic index_diagnostic(const Field& k, const PlaceSet& ramified) {
  check_ramification(k, ramified);
  IndexDiagnostic d;
  d.generic = (1L << ramified.size()) * 4 * kprime_degree(k, ramified) / k.unit.tp_unit_index();
  d.exact = h_group(k, ramified, {}).order();
  std::vector<int> cls;
  for (const Place& v : ramified) cls.push_back(k.narrow_class(v));
  d.narrow_quotient = (1L << ramified.size()) * k.cl.quotient_by_squares_and(cls, true);
  return d;
}

namespace {

double size(const Field& k, const Elem& x) { return std::fabs(k.to_double(x, 0)) + std::fabs(k.to_double(x, 1)); }

// Generator moved by units towards |x| = |x'|, positive in the first embedding.
Elem balanced(const Field& k, Elem x) {
  Elem e = k.unit.eps, ei = k.inv(k.unit.eps);
  for (bool moved = true; moved;) {
    moved = false;
    for (const Elem& f : {e, ei}) {
      Elem y = k.mul(x, f);
      if (size(k, y) < size(k, x) * (1 - 1e-12)) {
        x = y;
        moved = true;
      }
    }
  }
  if (k.sign(x, 0) < 0) x = Elem(-x.a, -x.b);
  // ties between x and x*eps^-1: keep the larger first embedding
  Elem y = k.mul(x, ei);
  if (k.sign(y, 0) < 0) y = Elem(-y.a, -y.b);
  if (std::fabs(size(k, y) - size(k, x)) < 1e-9 * size(k, x) && k.to_double(y, 0) > k.to_double(x, 0)) x = y;
  return x;
}

// Class number one: c = u * pi_v * prod pi_w over a subset of R_f, u in {1, -1, eps, -eps}.
std::optional<Elem> certificate_from_generators(const Field& k, const PlaceSet& ramified, const Place& v) {
  auto pv = principal_generator(k, {{v, 1}});
  if (!pv) return std::nullopt;
  std::vector<Elem> pis;
  for (const Place& w : ramified) {
    auto g = principal_generator(k, {{w, 1}});
    if (!g) return std::nullopt;
    pis.push_back(balanced(k, *g));
  }
  Elem base = balanced(k, *pv);
  Elem ei = k.inv(k.unit.eps);
  std::vector<Elem> units{Elem(1), Elem(-1), k.unit.eps, Elem(-k.unit.eps.a, -k.unit.eps.b), ei, Elem(-ei.a, -ei.b)};
  std::optional<Elem> best;
  std::tuple<int, Rat, int, double> best_key;
  for (unsigned mask = 0; mask < (1u << pis.size()); ++mask) {
    Elem x = base;
    for (size_t j = 0; j < pis.size(); ++j)
      if (mask >> j & 1) x = k.mul(x, pis[j]);
    for (size_t u = 0; u < units.size(); ++u) {
      Elem c = k.mul(x, units[u]);
      if (!k.totally_positive(c)) continue;
      auto key = std::make_tuple(std::popcount(mask), Rat(abs(k.norm(c))), static_cast<int>(u >= 2), size(k, c));
      if (!best || key < best_key) {
        best = c;
        best_key = key;
      }
    }
  }
  return best;
}

}  // namespace

std::optional<Elem> maximality_certificate(const Field& k, const PlaceSet& ramified, const Place& v) {
  check_s(k, ramified, {v});
  // computed on one representative of each conjugate pair so that conj commutes
  PlaceSet rc;
  for (const Place& w : ramified) rc.push_back(conjugate(w));
  std::sort(rc.begin(), rc.end());
  PlaceSet rs = ramified;
  std::sort(rs.begin(), rs.end());
  if (v.conj == Conj::Minus || (v.conj == Conj::None && rc < rs)) {
    auto c = maximality_certificate(k, rc, conjugate(v));
    if (c) return k.conj(*c);
    return c;
  }
  if (k.cl.h_plus == 1 || k.cl.h == 1) {
    if (auto c = certificate_from_generators(k, ramified, v)) return c;
    if (k.cl.h == 1) return std::nullopt;
  }
  SquareClassGroup h = h_group(k, ramified, {v});
  std::optional<Elem> best;
  auto key = [&](const Elem& x) { return std::make_pair(Rat(abs(k.norm(x))), size(k, x)); };
  for (const Elem& x : h.elements) {
    if (k.ord(x, v) % 2 == 0) continue;
    Elem c = reduce_square_class(k, x);
    if (!best || key(c) < key(*best)) best = c;
  }
  return best;
}

MaximalChi chi_maximal(const Field& k, const PlaceSet& ramified, const PlaceSet& s) {
  check_s(k, ramified, s);
  MaximalChi out;
  Rat base = chi_normalizer(k, ramified) * Rat(sigma_product(k, s));
  if (s.empty()) {
    out.value = base;
    return out;
  }
  if (s.size() == 1) {
    out.certificate = maximality_certificate(k, ramified, s.front());
    out.maximal = out.certificate.has_value();
    out.m = out.maximal ? 1 : 0;
    out.value = out.maximal ? Rat(base / 2) : base;
    return out;
  }
  for (size_t m = 0; m <= s.size(); ++m) {
    Rat c = base / Rat(Int(1) << static_cast<unsigned>(m));
    c.canonicalize();
    out.candidates.push_back(c);
  }
  out.value = out.candidates.back();
  out.m = -1;
  return out;
}

Rat chi_maximal_exact(const Field& k, const PlaceSet& ramified, const PlaceSet& s) {
  MaximalChi c = chi_maximal(k, ramified, s);
  if (c.ambiguous()) throw AmbiguousM("exponent m undetermined for |S| = " + std::to_string(s.size()));
  return c.value;
}

long riehm_index(const Field& k, const PlaceSet& ramified, const Place& v) {
  if (std::find(ramified.begin(), ramified.end(), v) == ramified.end())
    throw NotRamifiedInB("place " + to_string(v) + " is not in R_f");
  long q = k.norm(v);
  return v.p == 2 ? q + 1 : (q + 1) / 2;
}

}  // namespace fqlat
