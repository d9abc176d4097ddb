#include "fqlat/field.hpp"

#include <cmath>
#include <map>
#include <sstream>

namespace fqlat {

std::string to_string(const Place& v) {
  std::string s = std::to_string(v.p);
  if (v.conj == Conj::Plus) s += "+";
  if (v.conj == Conj::Minus) s += "-";
  return s;
}

Place parse_place(const std::string& s) {
  if (s.empty()) throw DomainError("empty place");
  Place v;
  std::string digits = s;
  char last = s.back();
  if (last == '+' || last == '-') {
    v.conj = last == '+' ? Conj::Plus : Conj::Minus;
    digits = s.substr(0, s.size() - 1);
  }
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
    throw DomainError("bad place '" + s + "'");
  v.p = std::stol(digits);
  if (!is_prime(v.p)) throw DomainError("place over non-prime '" + s + "'");
  return v;
}

Place conjugate(const Place& v) {
  Place w = v;
  if (v.conj == Conj::Plus) w.conj = Conj::Minus;
  if (v.conj == Conj::Minus) w.conj = Conj::Plus;
  return w;
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long q = 2; q * q <= p; ++q)
    if (p % q == 0) return false;
  return true;
}

bool is_squarefree(long m) {
  if (m == 0) return false;
  m = std::labs(m);
  for (long q = 2; q * q <= m; ++q)
    if (m % (q * q) == 0) return false;
  return true;
}

std::vector<long> primes_up_to(long n) {
  std::vector<char> sieve(n + 1, 1);
  std::vector<long> out;
  for (long i = 2; i <= n; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (long j = i * i; j <= n; j += i) sieve[j] = 0;
  }
  return out;
}

long ord_p(Int n, long p) {
  if (n == 0) throw std::logic_error("ord of zero");
  long e = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), static_cast<unsigned long>(p))) {
    n /= p;
    ++e;
  }
  return e;
}

int kronecker(long a, long n) {
  Int A(a);
  return mpz_kronecker_si(A.get_mpz_t(), n);
}

long discriminant_of(long m) { return m % 4 == 1 ? m : 4 * m; }

bool is_fundamental_discriminant(long d) {
  if (d <= 1) return false;
  if (d % 4 == 1) return is_squarefree(d);
  if (d % 4 != 0) return false;
  long m = d / 4;
  return (m % 4 == 2 || m % 4 == 3) && is_squarefree(m);
}

Rat bernoulli_b2(long d) {
  Int sum = 0;
  for (long r = 1; r < d; ++r) {
    int k = kronecker(d, r);
    if (k != 0) sum += Int(r) * r * k;
  }
  Rat out(sum, d);
  out.canonicalize();
  return out;
}

UnitData fundamental_unit_data(long m) {
  UnitData u;
  long s = static_cast<long>(std::sqrt(static_cast<double>(m)));
  while (s * s > m) --s;
  while ((s + 1) * (s + 1) <= m) ++s;
  const bool half = m % 4 == 1;
  Int P = half ? 1 : 0, Q = half ? 2 : 1;
  Int p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  std::optional<std::pair<Int, Int>> first_state;
  bool unit_found = false;
  for (int k = 0;; ++k) {
    Int a;
    mpz_fdiv_q(a.get_mpz_t(), Int(P + s).get_mpz_t(), Q.get_mpz_t());
    Int p = a * p_prev + p_prev2, q = a * q_prev + q_prev2;
    p_prev2 = p_prev;
    p_prev = p;
    q_prev2 = q_prev;
    q_prev = q;
    if (!unit_found) {
      Elem x = half ? Elem(frac(2 * p - q, 2), frac(q, 2)) : Elem(Rat(p), Rat(q));
      Rat n = x.a * x.a - Rat(m) * x.b * x.b;
      if (n == 1 || n == -1) {
        u.eps = x;
        u.norm_sign = n == 1 ? 1 : -1;
        unit_found = true;
      }
    }
    P = a * Q - P;
    Q = (Int(m) - P * P) / Q;
    if (k == 0) {
      first_state = std::make_pair(P, Q);
    } else if (first_state && P == first_state->first && Q == first_state->second) {
      u.period = k;
      if (unit_found) break;
      first_state.reset();  // not expected; keep scanning for the unit
    }
    if (k > 1000000) throw std::logic_error("continued fraction did not close");
  }
  u.totally_positive = u.norm_sign == 1;
  return u;
}

Field make_field(long m) {
  if (m <= 1) throw DomainError("MTooSmall: m must exceed 1");
  if (!is_squarefree(m)) throw DomainError("NotSquarefree: " + std::to_string(m));
  Field k;
  k.m = m;
  k.d = discriminant_of(m);
  k.t = (k.d % 8 == 1) ? 2 : 1;
  k.b2 = bernoulli_b2(k.d);
  k.unit = fundamental_unit_data(m);
  k.cl = ClassGroup::compute(k.d);
  return k;
}

Field field_from_discriminant(long d) {
  if (!is_fundamental_discriminant(d))
    throw DomainError("not a real quadratic fundamental discriminant: " + std::to_string(d));
  return make_field(d % 4 == 1 ? d : d / 4);
}

int Field::kappa(long r) const { return kronecker(d, r); }

Splitting Field::splitting(long p) const {
  if (d % p == 0) return Splitting::Ramified;
  return kappa(p) == 1 ? Splitting::Split : Splitting::Inert;
}

std::vector<Place> Field::places_over(long p) const {
  if (splitting(p) == Splitting::Split) return {Place{p, Conj::Plus}, Place{p, Conj::Minus}};
  return {Place{p, Conj::None}};
}

void Field::check_place(const Place& v) const {
  if (!is_prime(v.p)) throw DomainError("place over non-prime " + std::to_string(v.p));
  bool split = splitting(v.p) == Splitting::Split;
  if (split != (v.conj != Conj::None))
    throw DomainError("place " + to_string(v) + " does not match splitting of " + std::to_string(v.p) +
                      " in Q(sqrt " + std::to_string(m) + ")");
}

long Field::norm(const Place& v) const {
  return splitting(v.p) == Splitting::Inert ? v.p * v.p : v.p;
}

long Field::omega_residue(const Place& v) const {
  const long p = v.p;
  const long mm = ((m % p) + p) % p;
  switch (splitting(p)) {
    case Splitting::Inert:
      throw std::logic_error("inert place has no degree-one residue");
    case Splitting::Ramified:
      if (p == 2) return m % 2;
      return omega_half() ? (p + 1) / 2 : 0;
    case Splitting::Split:
      break;
  }
  if (p == 2) return v.conj == Conj::Plus ? 0 : 1;
  long r = 1;
  while (r <= (p - 1) / 2 && (r * r) % p != mm) ++r;
  if (r > (p - 1) / 2) throw std::logic_error("no square root for split prime");
  long root = v.conj == Conj::Plus ? r : p - r;
  if (!omega_half()) return root;
  return ((1 + root) * ((p + 1) / 2)) % p;
}

Elem Field::mul(const Elem& x, const Elem& y) const {
  return Elem(x.a * y.a + Rat(m) * x.b * y.b, x.a * y.b + x.b * y.a);
}

Elem Field::inv(const Elem& x) const {
  Rat n = norm(x);
  if (n == 0) throw DomainError("inverse of zero");
  return Elem(x.a / n, -x.b / n);
}

void Field::basis_coords(const Elem& x, Rat& u, Rat& w) const {
  if (omega_half()) {
    u = x.a - x.b;
    w = 2 * x.b;
  } else {
    u = x.a;
    w = x.b;
  }
}

Elem Field::from_basis(const Int& u, const Int& w) const {
  if (omega_half()) return Elem(Rat(u) + frac(w, 2), frac(w, 2));
  return Elem(Rat(u), Rat(w));
}

bool Field::is_integer(const Elem& x) const {
  Rat u, w;
  basis_coords(x, u, w);
  return u.get_den() == 1 && w.get_den() == 1;
}

int Field::sign(const Elem& x, int embedding) const {
  Rat B = embedding == 0 ? x.b : Rat(-x.b);
  int sa = sgn(x.a), sb = sgn(B);
  if (sa >= 0 && sb >= 0) return (sa == 0 && sb == 0) ? 0 : 1;
  if (sa <= 0 && sb <= 0) return -1;
  Rat lhs = x.a * x.a, rhs = B * B * Rat(m);
  if (sa > 0) return lhs > rhs ? 1 : -1;
  return rhs > lhs ? 1 : -1;
}

double Field::to_double(const Elem& x, int embedding) const {
  double r = std::sqrt(static_cast<double>(m));
  return x.a.get_d() + (embedding == 0 ? 1.0 : -1.0) * x.b.get_d() * r;
}

Int Field::norm_of_integral(const Int& u, const Int& w) const {
  if (omega_half()) return u * u + u * w + w * w * ((1 - m) / 4);
  return u * u - Int(m) * w * w;
}

int Field::ord(const Elem& x, const Place& v) const {
  if (x.is_zero()) throw DomainError("valuation of zero");
  Rat u, w;
  basis_coords(x, u, w);
  Int den;
  mpz_lcm(den.get_mpz_t(), u.get_den_mpz_t(), w.get_den_mpz_t());
  Int U = u.get_num() * (den / u.get_den());
  Int W = w.get_num() * (den / w.get_den());
  const long p = v.p;
  const Splitting kind = splitting(p);
  const int e = kind == Splitting::Ramified ? 2 : 1;
  int denom_part = static_cast<int>(ord_p(den, p)) * e;
  Int N = norm_of_integral(U, W);
  int val = 0;
  switch (kind) {
    case Splitting::Ramified:
      val = static_cast<int>(ord_p(N, p));
      break;
    case Splitting::Inert:
      val = static_cast<int>(ord_p(N, p)) / 2;
      break;
    case Splitting::Split: {
      Int g;
      mpz_gcd(g.get_mpz_t(), U.get_mpz_t(), W.get_mpz_t());
      int c = static_cast<int>(ord_p(g, p));
      Int pc;
      mpz_ui_pow_ui(pc.get_mpz_t(), p, c);
      Int U1 = U / pc, W1 = W / pc;
      int rest = static_cast<int>(ord_p(norm_of_integral(U1, W1), p));
      val = c;
      if (rest > 0) {
        Int r = U1 + W1 * omega_residue(v);
        if (mpz_divisible_ui_p(r.get_mpz_t(), static_cast<unsigned long>(p))) val += rest;
      }
      break;
    }
  }
  return val - denom_part;
}

std::string Field::format(const Elem& x) const {
  std::ostringstream os;
  if (x.a != 0 || x.b == 0) os << x.a.get_str();
  if (x.b != 0) {
    if (x.b > 0 && x.a != 0) os << "+";
    if (x.b == -1) os << "-";
    else if (x.b != 1) os << x.b.get_str();
    os << "√" << m;
  }
  return os.str();
}

int Field::narrow_class(const Place& v) const {
  check_place(v);
  if (splitting(v.p) == Splitting::Inert) return cl.identity;
  long rho = omega_residue(v);
  long b0 = omega_half() ? 1 - 2 * rho : -2 * rho;
  long c = (b0 * b0 - d) / (4 * v.p);
  return cl.class_of(Form{v.p, -b0, c});
}

long ideal_norm(const Field& k, const IdealSpec& ideal) {
  long n = 1;
  for (const auto& f : ideal) {
    if (f.e < 0) throw DomainError("negative exponent in integral ideal");
    for (int i = 0; i < f.e; ++i) n *= k.norm(f.v);
  }
  return n;
}

namespace {

bool matches_ideal(const Field& k, const Elem& x, const IdealSpec& ideal) {
  std::map<Place, int> want;
  for (const auto& f : ideal) want[f.v] += f.e;
  std::map<long, bool> primes;
  for (const auto& [v, e] : want) primes[v.p] = true;
  for (const auto& [p, unused] : primes)
    for (const Place& v : k.places_over(p)) {
      int e = want.count(v) ? want[v] : 0;
      if (k.ord(x, v) != e) return false;
    }
  return true;
}

int wide_class_of(const Field& k, const IdealSpec& ideal) {
  int c = k.cl.identity;
  for (const auto& f : ideal) c = k.cl.mul(c, k.cl.pow(k.narrow_class(f.v), f.e));
  return k.cl.wide_of(c);
}

}  // namespace

std::optional<Elem> principal_generator(const Field& k, const IdealSpec& ideal) {
  for (const auto& f : ideal) k.check_place(f.v);
  if (wide_class_of(k, ideal) != k.cl.wide_of(k.cl.identity)) return std::nullopt;
  const long N = ideal_norm(k, ideal);
  if (N == 1) return Elem(1);
  double eps = std::fabs(k.to_double(k.unit.eps));
  long bound = static_cast<long>(std::ceil(std::sqrt(4.0 * N * eps / k.m))) + 1;
  for (int attempt = 0; attempt <= 3; ++attempt, bound *= 2) {
    for (long w = 0; w <= bound; ++w) {
      for (int s : {1, -1}) {
        Int u2 = Int(k.m) * w * w + Int(4) * N * s;
        if (u2 < 0 || !mpz_perfect_square_p(u2.get_mpz_t())) continue;
        Int u = sqrt(u2);
        for (int su : {1, -1}) {
          Elem x(frac(u * su, 2), frac(w, 2));
          if (!k.is_integer(x)) continue;
          if (matches_ideal(k, x, ideal)) return x;
        }
      }
    }
  }
  throw SearchBoundExceeded("no generator found for a principal ideal of norm " + std::to_string(N));
}

std::optional<Elem> tp_principal_generator(const Field& k, const IdealSpec& ideal) {
  auto x = principal_generator(k, ideal);
  if (!x) return std::nullopt;
  Elem g = *x;
  int s0 = k.sign(g, 0), s1 = k.sign(g, 1);
  if (s0 != s1) {
    if (k.unit.norm_sign != -1) return std::nullopt;
    g = k.mul(g, k.unit.eps);
  }
  if (k.sign(g, 0) < 0) g = Elem(-g.a, -g.b);
  return g;
}

}  // namespace fqlat
