#include <sstream>

#include "fqlat/torsion.hpp"

namespace fqlat {
namespace {

// zeta + zeta^{-1} for the primitive m-th roots; two conjugate choices when irrational.
std::vector<Elem> cos_values(int m) {
  switch (m) {
    case 3: return {Elem(-1)};
    case 4: return {Elem(0)};
    case 6: return {Elem(1)};
    case 5: return {Elem(frac(-1, 2), frac(1, 2)), Elem(frac(-1, 2), frac(-1, 2))};
    case 10: return {Elem(frac(1, 2), frac(1, 2)), Elem(frac(1, 2), frac(-1, 2))};
    case 8:
    case 12: return {Elem(0, 1), Elem(0, -1)};
    default: throw DomainError("unsupported torsion order " + std::to_string(m));
  }
}

// k(zeta_m) = k(sqrt(delta)) with delta = lambda^2 - 4.
Elem cyclotomic_radicand(const Field& k, int m) {
  Elem lambda = cos_values(m).front();
  Elem sq = k.mul(lambda, lambda);
  return Elem(sq.a - 4, sq.b);
}

bool contains(const PlaceSet& set, const Place& v) {
  for (const Place& w : set)
    if (w == v) return true;
  return false;
}

std::vector<long> prime_support(const Field& k, const Elem& x) {
  Rat n = k.norm(x);
  Int num = abs(n.get_num()), den = n.get_den();
  std::vector<long> out;
  for (Int* z : {&num, &den}) {
    Int r = *z;
    for (long p = 2; r > 1; ++p) {
      if (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        while (mpz_divisible_ui_p(r.get_mpz_t(), p)) r /= p;
      }
    }
  }
  // primes dividing the coordinates' denominators also matter
  Rat u, w;
  k.basis_coords(x, u, w);
  for (Int r : {Int(u.get_den()), Int(w.get_den())})
    for (long p = 2; r > 1; ++p)
      if (mpz_divisible_ui_p(r.get_mpz_t(), p)) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        while (mpz_divisible_ui_p(r.get_mpz_t(), p)) r /= p;
      }
  return out;
}

// (x) in I(S) I(R_f) I^2: every prime outside T occurs to an even power.
bool ideal_in_t_times_squares(const Field& k, const Elem& x, const PlaceSet& t) {
  for (long p : prime_support(k, x))
    for (const Place& v : k.places_over(p))
      if (!contains(t, v) && k.ord(x, v) % 2 != 0) return false;
  return true;
}

}  // namespace

std::set<int> possible_orders(const Field& k) {
  std::set<int> out{2, 3, 4, 6};
  if (k.d == 5) out.insert({5, 10});
  if (k.d == 8) out.insert(8);
  if (k.d == 12) out.insert(12);
  return out;
}

bool splits_in_cyclotomic(const Field& k, const Place& v, int m) {
  if (m % v.p != 0) return k.norm(v) % m == 1;
  return splitting_in_sqrt(k, v, cyclotomic_radicand(k, m)) == Splitting::Split;
}

bool class_gives_torsion(const Field& k, const PlaceSet& ramified, const PlaceSet& s, const Elem& a) {
  for (const Place& v : ramified)
    if (splits_in_sqrt_minus_a(k, v, a) == Splitting::Split) return false;
  for (const Place& v : s) {
    if (k.ord(a, v) % 2 != 0) continue;
    if (v.p == 2) continue;
    if (splits_in_sqrt_minus_a(k, v, a) == Splitting::Split) continue;
    return false;
  }
  return true;
}

TorsionCheck has_torsion(const Field& k, const PlaceSet& ramified, const PlaceSet& s, int m) {
  if (m == 2) return has_torsion(k, ramified, s, m, h_group(k, ramified, s));
  return has_torsion(k, ramified, s, m, SquareClassGroup{});
}

TorsionCheck has_torsion(const Field& k, const PlaceSet& ramified, const PlaceSet& s, int m,
                         const SquareClassGroup& h) {
  TorsionCheck out;
  std::ostringstream cert;
  if (!possible_orders(k).count(m)) {
    out.certificate = "a) fails";
    return out;
  }
  if (m == 2) {
    for (const Elem& a : h.elements)
      if (class_gives_torsion(k, ramified, s, a)) out.classes.push_back(a);
    out.present = !out.classes.empty();
    if (out.present) {
      cert << "[" << k.format(out.classes.front()) << "]";
      for (size_t i = 1; i < out.classes.size(); ++i) cert << ", [" << k.format(out.classes[i]) << "]";
    } else {
      cert << "no class of H satisfies alpha and beta (|H|=" << h.order() << ")";
    }
    out.certificate = cert.str();
    return out;
  }
  for (const Place& v : ramified)
    if (splits_in_cyclotomic(k, v, m)) {
      out.certificate = "b) fails: " + to_string(v) + " splits in k(zeta_" + std::to_string(m) + ")";
      return out;
    }
  PlaceSet t = ramified;
  t.insert(t.end(), s.begin(), s.end());
  std::string last_failure;
  for (const Elem& lambda : cos_values(m)) {
    Elem plus(lambda.a + 2, lambda.b);
    Elem minus(2 - lambda.a, -lambda.b);
    if (!ideal_in_t_times_squares(k, plus, t)) {
      last_failure = "c) fails for 2+lambda=" + k.format(plus);
      continue;
    }
    bool d_ok = true;
    for (const Place& v : s) {
      bool ok = splits_in_cyclotomic(k, v, m) || k.ord(plus, v) % 2 != 0 || (!minus.is_zero() && k.ord(minus, v) > 0);
      if (!ok) {
        d_ok = false;
        last_failure = "d) fails at " + to_string(v);
        break;
      }
    }
    if (!d_ok) continue;
    out.present = true;
    out.certificate = "a)-d) hold with 2+lambda=" + k.format(plus);
    return out;
  }
  out.certificate = last_failure;
  return out;
}

TorsionReport torsion_spectrum(const Field& k, const PlaceSet& ramified, const PlaceSet& s) {
  return torsion_spectrum(k, ramified, s, h_group(k, ramified, s));
}

TorsionReport torsion_spectrum(const Field& k, const PlaceSet& ramified, const PlaceSet& s,
                               const SquareClassGroup& h) {
  TorsionReport r;
  std::set<int> orders = possible_orders(k);
  for (int m : orders) {
    TorsionCheck c = has_torsion(k, ramified, s, m, h);
    if (c.present) r.orders.insert(m);
    r.witnesses[m] = c.certificate;
  }
  for (int m : orders) {
    if (m % 2 == 0 || !orders.count(2 * m)) continue;
    bool odd = r.orders.count(m), even = r.orders.count(2 * m);
    if (odd == even) continue;
    int added = odd ? 2 * m : m;
    r.orders.insert(added);
    r.linked.insert(added);
    r.witnesses[added] += " (present via order " + std::to_string(odd ? m : 2 * m) + ")";
  }
  return r;
}

bool index_admissible(const TorsionReport& report, long index) {
  for (int m : report.orders)
    if (index % m != 0) return false;
  return true;
}

}  // namespace fqlat
