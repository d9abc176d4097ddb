// Square-class groups and local splitting in quadratic extensions of k.
#include <algorithm>
#include <array>
#include <optional>
#include <cmath>
#include <functional>

#include "fqlat/torsion.hpp"

namespace fqlat {
namespace {

long mod(const Int& x, long p) {
  Int r;
  mpz_fdiv_r_ui(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
  return r.get_si();
}

long pow_mod(long b, long e, long p) {
  Int r;
  mpz_powm_ui(r.get_mpz_t(), Int(b).get_mpz_t(), static_cast<unsigned long>(e), Int(p).get_mpz_t());
  return r.get_si();
}

long inv_mod(long a, long p) { return pow_mod(((a % p) + p) % p, p - 2, p); }

Elem power(const Field& k, const Elem& x, int e) {
  Elem base = e >= 0 ? x : k.inv(x);
  Elem r(1);
  for (int i = 0; i < std::abs(e); ++i) r = k.mul(r, base);
  return r;
}

// Element with valuation exactly one at v and, for split p, zero at the conjugate.
Elem uniformizer(const Field& k, const Place& v) {
  switch (k.splitting(v.p)) {
    case Splitting::Inert:
      return Elem(v.p);
    case Splitting::Ramified:
      if (k.ord(Elem(0, 1), v) == 1) return Elem(0, 1);
      return Elem(1, 1);
    case Splitting::Split:
      break;
  }
  long rho = k.omega_residue(v);
  for (long shift : {0L, v.p}) {
    Elem pi = k.from_basis(Int(-(rho + shift)), Int(1));
    if (k.ord(pi, v) == 1 && k.ord(pi, conjugate(v)) == 0) return pi;
  }
  throw std::logic_error("no uniformizer found");
}

// Residue-field element for odd p: value u + w*omega modulo p.
struct Residue {
  long u = 0, w = 0;
};

struct ResidueField {
  const Field& k;
  long p;
  bool degree_one;
  long rho = 0;
  ResidueField(const Field& kk, const Place& v) : k(kk), p(v.p) {
    degree_one = k.splitting(p) != Splitting::Inert;
    if (degree_one) rho = k.omega_residue(v);
  }
  Residue reduce(const Elem& x) const {
    Rat u, w;
    k.basis_coords(x, u, w);
    auto red = [&](const Rat& r) {
      long den = mod(r.get_den(), p);
      if (den == 0) throw std::logic_error("reduction of non-integral element");
      return (mod(r.get_num(), p) * inv_mod(den, p)) % p;
    };
    Residue r{red(u), red(w)};
    if (degree_one) r = Residue{(r.u + r.w * rho) % p, 0};
    return r;
  }
  Residue mul(const Residue& x, const Residue& y) const {
    if (degree_one) return Residue{(x.u * y.u) % p, 0};
    // omega^2 = omega + c (half basis) or m
    long c = k.omega_half() ? mod(Int((k.m - 1) / 4), p) : mod(Int(k.m), p);
    long uu = x.u * y.u % p, ww = x.w * y.w % p, uw = (x.u * y.w + x.w * y.u) % p;
    if (k.omega_half()) return Residue{(uu + ww * c) % p, (uw + ww) % p};
    return Residue{(uu + ww * c) % p, uw};
  }
  bool is_one(const Residue& x) const { return x.u == 1 && x.w == 0; }
  long size() const { return degree_one ? p : p * p; }
  Residue pow(Residue x, long e) const {
    Residue r{1, 0};
    while (e > 0) {
      if (e & 1) r = mul(r, x);
      x = mul(x, x);
      e >>= 1;
    }
    return r;
  }
};

}  // namespace

Splitting splitting_in_sqrt(const Field& k, const Place& v, const Elem& delta, int precision_extra) {
  if (delta.is_zero()) throw DomainError("zero radicand");
  int n = k.ord(delta, v);
  if (n % 2 != 0) return Splitting::Ramified;
  Elem pi = uniformizer(k, v);
  Elem unit = k.mul(delta, power(k, pi, -n));
  if (v.p != 2) {
    if (k.splitting(v.p) == Splitting::Split) {
      Elem pibar = k.conj(pi);
      int below = k.ord(unit, conjugate(v));
      if (below < 0) {
        int shift = (-below + 1) / 2 * 2;
        unit = k.mul(unit, power(k, pibar, shift));
      }
    }
    ResidueField F(k, v);
    Residue r = F.reduce(unit);
    return F.is_one(F.pow(r, (F.size() - 1) / 2)) ? Splitting::Split : Splitting::Inert;
  }
  // Dyadic place: exhaustive search for x with x^2 = unit modulo v^N.
  const int e = k.ord(Elem(2), v);
  const int n_split = 2 * k.ord(Elem(4), v) + 1 + precision_extra;
  const int n_unram = k.ord(Elem(4), v);
  const int K = (n_split + e - 1) / e;
  const long modulus = 1L << K;
  bool unram = false;
  for (long u = 0; u < modulus; ++u)
    for (long w = 0; w < modulus; ++w) {
      Elem x = k.from_basis(Int(u), Int(w));
      Elem diff = k.mul(x, x);
      diff = Elem(diff.a - unit.a, diff.b - unit.b);
      int val = diff.is_zero() ? n_split : k.ord(diff, v);
      if (val >= n_split) return Splitting::Split;
      if (val >= n_unram) unram = true;
    }
  return unram ? Splitting::Inert : Splitting::Ramified;
}

Splitting splits_in_sqrt_minus_a(const Field& k, const Place& v, const Elem& a) {
  return splitting_in_sqrt(k, v, Elem(-a.a, -a.b));
}

namespace {

// Sign bits, valuation parities on T, and quadratic characters at auxiliary places.
std::vector<int> signature(const Field& k, const Elem& x, const PlaceSet& t, const std::vector<Place>& aux) {
  std::vector<int> bits;
  bits.push_back(k.sign(x, 0) < 0);
  bits.push_back(k.sign(x, 1) < 0);
  for (const Place& v : t) bits.push_back(std::abs(k.ord(x, v)) % 2);
  for (const Place& v : aux) bits.push_back(splitting_in_sqrt(k, v, x) == Splitting::Split ? 0 : 1);
  return bits;
}

bool unit_at_all(const Field& k, const std::vector<Elem>& pool, const Place& v) {
  for (const Elem& x : pool)
    if (k.ord(x, v) != 0) return false;
  return true;
}

// Reduced row echelon over F2 keeping track of which pool elements combine.
struct Basis {
  std::vector<std::vector<int>> rows;
  std::vector<std::vector<int>> combos;  // pool membership bits
  std::vector<int> pivots;
};

bool insert(Basis& b, std::vector<int> row, std::vector<int> combo) {
  for (size_t i = 0; i < b.rows.size(); ++i) {
    if (row[b.pivots[i]]) {
      for (size_t j = 0; j < row.size(); ++j) row[j] ^= b.rows[i][j];
      for (size_t j = 0; j < combo.size(); ++j) combo[j] ^= b.combos[i][j];
    }
  }
  auto it = std::find(row.begin(), row.end(), 1);
  if (it == row.end()) return false;
  b.pivots.push_back(static_cast<int>(it - row.begin()));
  b.rows.push_back(std::move(row));
  b.combos.push_back(std::move(combo));
  return true;
}

std::vector<Place> class_representatives(const Field& k) {
  std::vector<Place> reps(k.cl.h);
  std::vector<bool> have(k.cl.h, false);
  int found = 0;
  for (long p : primes_up_to(20000)) {
    for (const Place& v : k.places_over(p)) {
      int c = k.wide_class(v);
      if (!have[c]) {
        have[c] = true;
        reps[c] = v;
        ++found;
      }
    }
    if (found == k.cl.h) return reps;
  }
  throw std::logic_error("class representatives not found");
}

std::vector<Elem> selmer_pool(const Field& k, const PlaceSet& t, int& expected_dim) {
  const ClassGroup& cl = k.cl;
  const int h = cl.h;
  const int id = cl.wide_of(cl.identity);
  std::vector<Elem> pool{Elem(-1), k.unit.eps};
  std::vector<int> tcls;
  for (const Place& v : t) tcls.push_back(k.wide_class(v));

  // Exponent vectors in [0, h)^T whose ideal is principal.
  std::vector<std::vector<int>> vecs;
  std::vector<int> x(t.size(), 0);
  std::function<void(size_t)> walk = [&](size_t i) {
    if (i == t.size()) {
      if (std::all_of(x.begin(), x.end(), [](int e) { return e == 0; })) return;
      vecs.push_back(x);
      return;
    }
    for (int e = 0; e <= std::max(h, 1); ++e) {
      x[i] = e;
      walk(i + 1);
    }
    x[i] = 0;
  };
  walk(0);
  auto class_of_vec = [&](const std::vector<int>& vec) {
    int c = id;
    for (size_t i = 0; i < vec.size(); ++i)
      for (int j = 0; j < vec[i]; ++j) c = cl.wide_mul(c, tcls[i]);
    return c;
  };
  auto ideal_of_vec = [&](const std::vector<int>& vec) {
    IdealSpec I;
    for (size_t i = 0; i < vec.size(); ++i)
      if (vec[i] > 0) I.push_back({t[i], vec[i]});
    return I;
  };
  std::sort(vecs.begin(), vecs.end(), [&](const auto& a, const auto& b) {
    return ideal_norm(k, ideal_of_vec(a)) < ideal_norm(k, ideal_of_vec(b));
  });
  for (const auto& vec : vecs) {
    if (class_of_vec(vec) != id) continue;
    IdealSpec I = ideal_of_vec(vec);
    auto g = tp_principal_generator(k, I);
    if (!g) g = principal_generator(k, I);
    pool.push_back(*g);
  }

  // Classes of order two modulo <T>.
  std::vector<int> tsub = cl.subgroup(tcls, false);
  auto in_tsub = [&](int c) { return std::find(tsub.begin(), tsub.end(), c) != tsub.end(); };
  std::vector<int> quotient_rep;  // one class per coset of <T>
  std::vector<bool> covered(h, false);
  for (int c = 0; c < h; ++c) {
    if (covered[c]) continue;
    quotient_rep.push_back(c);
    for (int s : tsub) covered[cl.wide_mul(c, s)] = true;
  }
  int two_torsion = 0;
  std::vector<Place> reps;
  if (h > 1) reps = class_representatives(k);
  for (int c : quotient_rep) {
    if (!in_tsub(cl.wide_mul(c, c))) continue;
    ++two_torsion;
    if (c == id || in_tsub(c)) continue;
    // find y with c^2 * prod v^y principal
    std::vector<int> target_vec;
    for (const auto& vec : vecs) {
      if (cl.wide_mul(cl.wide_mul(c, c), class_of_vec(vec)) == id) {
        target_vec = vec;
        break;
      }
    }
    if (target_vec.empty() && cl.wide_mul(c, c) == id) target_vec.assign(t.size(), 0);
    IdealSpec I = ideal_of_vec(target_vec);
    I.push_back({reps[c], 2});
    auto g = tp_principal_generator(k, I);
    if (!g) g = principal_generator(k, I);
    if (!g) throw std::logic_error("lift of a 2-torsion class is not principal");
    pool.push_back(*g);
  }
  int log2_tt = 0;
  while ((1 << log2_tt) < two_torsion) ++log2_tt;
  expected_dim = 2 + static_cast<int>(t.size()) + log2_tt;
  return pool;
}

// Basis of the Selmer group with sign bits in front, then the kernel of the sign map.
std::vector<Elem> tp_kernel_basis(const Field& k, const PlaceSet& t) {
  int expected = 0;
  std::vector<Elem> pool = selmer_pool(k, t, expected);
  std::vector<Place> aux;
  Basis basis;
  auto rebuild = [&]() {
    basis = Basis{};
    for (size_t i = 0; i < pool.size(); ++i) {
      std::vector<int> combo(pool.size(), 0);
      combo[i] = 1;
      insert(basis, signature(k, pool[i], t, aux), combo);
    }
  };
  rebuild();
  for (long p : primes_up_to(5000)) {
    if (static_cast<int>(basis.rows.size()) >= expected) break;
    if (p == 2) continue;
    bool in_t = std::any_of(t.begin(), t.end(), [&](const Place& v) { return v.p == p; });
    if (in_t) continue;
    Place v = k.places_over(p).front();
    if (!unit_at_all(k, pool, v)) continue;
    aux.push_back(v);
    rebuild();
  }
  if (static_cast<int>(basis.rows.size()) != expected)
    throw std::logic_error("square class group rank mismatch");

  // Kernel of the sign map on the span, eliminating on the two sign coordinates.
  std::vector<std::vector<int>> kernel;
  std::array<std::optional<std::pair<std::array<int, 2>, std::vector<int>>>, 2> pivot;
  std::vector<size_t> order(basis.rows.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  auto signless = [&](size_t i) { return basis.rows[i][0] == 0 && basis.rows[i][1] == 0; };
  std::stable_partition(order.begin(), order.end(), signless);
  for (size_t idx : order) {
    std::array<int, 2> s{basis.rows[idx][0], basis.rows[idx][1]};
    std::vector<int> c = basis.combos[idx];
    for (int col = 0; col < 2; ++col) {
      if (!s[col] || !pivot[col]) continue;
      s[0] ^= pivot[col]->first[0];
      s[1] ^= pivot[col]->first[1];
      for (size_t j = 0; j < c.size(); ++j) c[j] ^= pivot[col]->second[j];
    }
    if (!s[0] && !s[1]) {
      kernel.push_back(c);
    } else {
      pivot[s[0] ? 0 : 1] = std::make_pair(s, c);
    }
  }
  std::vector<Elem> out;
  for (const auto& c : kernel) {
    Elem x(1);
    for (size_t j = 0; j < c.size(); ++j)
      if (c[j]) x = k.mul(x, pool[j]);
    if (!k.totally_positive(x)) throw std::logic_error("kernel element not totally positive");
    out.push_back(x);
  }
  return out;
}

}  // namespace

Elem reduce_square_class(const Field& k, const Elem& x) {
  Rat u, w;
  k.basis_coords(x, u, w);
  Int den;
  mpz_lcm(den.get_mpz_t(), u.get_den_mpz_t(), w.get_den_mpz_t());
  Int U = u.get_num() * (den / u.get_den()) * den, W = w.get_num() * (den / w.get_den()) * den;
  Int g;
  mpz_gcd(g.get_mpz_t(), U.get_mpz_t(), W.get_mpz_t());
  for (Int q = 2; q * q <= g; ++q) {
    while (mpz_divisible_p(g.get_mpz_t(), Int(q * q).get_mpz_t())) {
      g /= q * q;
      U /= q * q;
      W /= q * q;
    }
  }
  Elem y = k.from_basis(U, W);
  // squares of principal prime generators, e.g. sqrt(3)^2 = 3 in Q(sqrt3)
  Int n = abs(k.norm(y).get_num());
  for (long p = 2; n > 1; ++p) {
    if (!mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      if (Int(p) * p > n) p = n.get_si() - 1;
      continue;
    }
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) n /= p;
    for (const Place& v : k.places_over(p)) {
      if (k.ord(y, v) < 2) continue;
      auto pi = principal_generator(k, {{v, 1}});
      if (!pi) continue;
      Elem inv2 = k.inv(k.mul(*pi, *pi));
      while (k.ord(y, v) >= 2) y = k.mul(y, inv2);
    }
  }
  Elem e2 = k.mul(k.unit.eps, k.unit.eps);
  Elem e2inv = k.inv(e2);
  auto size = [&](const Elem& z) { return std::fabs(k.to_double(z, 0)) + std::fabs(k.to_double(z, 1)); };
  for (bool moved = true; moved;) {
    moved = false;
    for (const Elem& f : {e2, e2inv}) {
      Elem z = k.mul(y, f);
      if (size(z) < size(y) * (1 - 1e-12)) {
        y = z;
        moved = true;
      }
    }
  }
  return y;
}

namespace {

std::optional<Rat> rational_sqrt(const Rat& q) {
  if (q < 0) return std::nullopt;
  Rat c = q;
  c.canonicalize();
  if (!mpz_perfect_square_p(c.get_num_mpz_t()) || !mpz_perfect_square_p(c.get_den_mpz_t())) return std::nullopt;
  Int n, d;
  mpz_sqrt(n.get_mpz_t(), c.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), c.get_den_mpz_t());
  return frac(n, d);
}

}  // namespace

// (c + e sqrt m)^2 = a + b sqrt m forces c^2 = (a +- sqrt(N))/2.
bool is_square(const Field& k, const Elem& x) {
  if (x.is_zero()) return true;
  auto r = rational_sqrt(k.norm(x));
  if (!r) return false;
  for (const Rat& n : {*r, Rat(-*r)}) {
    Rat c2 = (x.a + n) / 2;
    auto c = rational_sqrt(c2);
    if (!c) continue;
    if (*c == 0) {
      Rat e2 = x.a / k.m;
      e2.canonicalize();
      if (x.b == 0 && rational_sqrt(e2)) return true;
      continue;
    }
    Rat e = x.b / (2 * *c);
    if (*c * *c + k.m * e * e == x.a) return true;
  }
  return false;
}

bool same_square_class(const Field& k, const Elem& x, const Elem& y) { return is_square(k, k.mul(x, k.inv(y))); }

SquareClassGroup h_group(const Field& k, const PlaceSet& ramified, const PlaceSet& s) {
  PlaceSet t = ramified;
  for (const Place& v : s) {
    k.check_place(v);
    t.push_back(v);
  }
  for (const Place& v : ramified) k.check_place(v);
  SquareClassGroup g;
  g.generators = tp_kernel_basis(k, t);
  for (Elem& x : g.generators) x = reduce_square_class(k, x);
  const size_t r = g.generators.size();
  for (size_t mask = 0; mask < (size_t{1} << r); ++mask) {
    Elem x(1);
    for (size_t j = 0; j < r; ++j)
      if (mask >> j & 1) x = k.mul(x, g.generators[j]);
    g.elements.push_back(reduce_square_class(k, x));
  }
  return g;
}

int s_unit_tp_index(const Field& k, const PlaceSet& ramified) {
  std::vector<Elem> gens{Elem(-1), k.unit.eps};
  for (const Place& v : ramified) {
    auto g = principal_generator(k, {{v, 1}});
    if (!g) throw NonPrincipalGenerator("no generator for " + to_string(v));
    gens.push_back(*g);
  }
  std::set<std::pair<int, int>> image{{0, 0}};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::pair<int, int>> cur(image.begin(), image.end());
    for (auto [a, b] : cur)
      for (const Elem& x : gens) {
        auto next = std::make_pair(a ^ (k.sign(x, 0) < 0), b ^ (k.sign(x, 1) < 0));
        if (image.insert(next).second) grew = true;
      }
  }
  const int g = static_cast<int>(gens.size()) - 1;
  return (1 << (g + 1)) / static_cast<int>(image.size());
}

}  // namespace fqlat
