#pragma once

#include <gmpxx.h>

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fqlat/classgroup.hpp"

namespace fqlat {

using Int = mpz_class;
using Rat = mpq_class;

// Canonical n/d; mpq_class(n, d) alone does not reduce.
inline Rat frac(const Int& n, const Int& d) {
  Rat r(n, d);
  r.canonicalize();
  return r;
}

class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonPrincipalGenerator : public DomainError {
 public:
  using DomainError::DomainError;
};

class SearchBoundExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Splitting { Split, Inert, Ramified };
enum class Conj { None, Plus, Minus };

// A finite place of a fixed quadratic field. Only p and the conjugate label are
// stored; norm and kind are looked up on the field.
struct Place {
  long p = 0;
  Conj conj = Conj::None;
  auto operator<=>(const Place&) const = default;
};

std::string to_string(const Place& v);
Place parse_place(const std::string& s);  // "p", "p+", "p-"
Place conjugate(const Place& v);

// a + b*sqrt(m)
struct Elem {
  Rat a, b;
  Elem() = default;
  Elem(Rat a_, Rat b_) : a(std::move(a_)), b(std::move(b_)) {
    a.canonicalize();
    b.canonicalize();
  }
  explicit Elem(long a_) : a(a_), b(0) {}
  bool is_zero() const { return a == 0 && b == 0; }
  bool operator==(const Elem&) const = default;
};

struct UnitData {
  int norm_sign = 0;
  bool totally_positive = false;
  Elem eps;  // fundamental unit > 1
  int period = 0;
  int tp_unit_index() const { return totally_positive ? 2 : 4; }
};

class Field {
 public:
  long m = 0;
  long d = 0;
  int t = 0;
  Rat b2;
  UnitData unit;
  ClassGroup cl;

  bool omega_half() const { return m % 4 == 1; }

  int kappa(long r) const;
  Splitting splitting(long p) const;
  std::vector<Place> places_over(long p) const;
  long norm(const Place& v) const;
  Rat e_prime(const Place& v) const { return frac(norm(v) - 1, 2); }
  long sigma(const Place& v) const { return norm(v) + 1; }
  // Residue of omega modulo v for degree-one places (split or ramified).
  long omega_residue(const Place& v) const;
  void check_place(const Place& v) const;

  Elem mul(const Elem& x, const Elem& y) const;
  Elem inv(const Elem& x) const;
  Elem conj(const Elem& x) const { return Elem(x.a, -x.b); }
  Rat norm(const Elem& x) const { return x.a * x.a - Rat(m) * x.b * x.b; }
  Rat trace(const Elem& x) const { return 2 * x.a; }
  bool is_integer(const Elem& x) const;
  // Sign of x under sqrt(m) > 0 (embedding 0) or sqrt(m) < 0 (embedding 1).
  int sign(const Elem& x, int embedding) const;
  bool totally_positive(const Elem& x) const { return sign(x, 0) > 0 && sign(x, 1) > 0; }
  double to_double(const Elem& x, int embedding = 0) const;
  // Coordinates in the integral basis {1, omega}.
  void basis_coords(const Elem& x, Rat& u, Rat& w) const;
  Elem from_basis(const Int& u, const Int& w) const;
  int ord(const Elem& x, const Place& v) const;
  Int norm_of_integral(const Int& u, const Int& w) const;

  std::string format(const Elem& x) const;  // "a+b√m"
  int narrow_class(const Place& v) const;
  int wide_class(const Place& v) const { return cl.wide_of(narrow_class(v)); }
};

bool is_squarefree(long m);
bool is_prime(long p);
std::vector<long> primes_up_to(long n);
long ord_p(Int n, long p);
int kronecker(long a, long n);

Field make_field(long m);
Field field_from_discriminant(long d);
long discriminant_of(long m);
bool is_fundamental_discriminant(long d);
Rat bernoulli_b2(long d);
UnitData fundamental_unit_data(long m);

// An ideal as a product of prime places with exponents.
struct Factor {
  Place v;
  int e = 1;
};
using IdealSpec = std::vector<Factor>;

std::optional<Elem> principal_generator(const Field& k, const IdealSpec& ideal);
std::optional<Elem> tp_principal_generator(const Field& k, const IdealSpec& ideal);
long ideal_norm(const Field& k, const IdealSpec& ideal);

}  // namespace fqlat
