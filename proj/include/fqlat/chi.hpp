#pragma once

#include <optional>
#include <vector>

#include "fqlat/torsion.hpp"

namespace fqlat {

class InvalidRamification : public DomainError {
 public:
  using DomainError::DomainError;
};

class AmbiguousM : public DomainError {
 public:
  using DomainError::DomainError;
};

class NotRamifiedInB : public DomainError {
 public:
  using DomainError::DomainError;
};

void check_ramification(const Field& k, const PlaceSet& ramified);
void check_s(const Field& k, const PlaceSet& ramified, const PlaceSet& s);

int t_prime(const Field& k, const PlaceSet& ramified);
Rat e_prime_product(const Field& k, const PlaceSet& ramified);  // over Nv != 2
Int sigma_product(const Field& k, const PlaceSet& s);

Rat chi_norm_one(const Field& k, const PlaceSet& ramified);
// 2^beta: order of Cl / (Cl^2 <classes of R_f>).
int kprime_degree(const Field& k, const PlaceSet& ramified);
// [N Gamma : Gamma^1]. With h = 1 this is the totally positive S-unit index;
// otherwise 2^{r_f} * 4 * 2^beta / [o* : o*_+].
long index_norm_one_in_normalizer(const Field& k, const PlaceSet& ramified);
Rat chi_normalizer(const Field& k, const PlaceSet& ramified);

// Index diagnostics for class number > 1: |H(empty)| and the narrow-group
// quotient |Cl+ / (Cl+^2 <R_f>)|, which agree with each other and may differ from
// the generic index above.
struct IndexDiagnostic {
  long generic = 0;
  long exact = 0;
  long narrow_quotient = 0;
};
IndexDiagnostic index_diagnostic(const Field& k, const PlaceSet& ramified);

// Totally positive c with odd valuation at v and even valuation at every place
// outside R_f and v; absent when none exists.
std::optional<Elem> maximality_certificate(const Field& k, const PlaceSet& ramified, const Place& v);

struct MaximalChi {
  Rat value;                  // exact when |S| <= 1
  int m = 0;
  bool maximal = true;        // false: the group sits inside N Gamma
  std::optional<Elem> certificate;
  std::vector<Rat> candidates;  // |S| >= 2: value for m = 0..|S|
  bool ambiguous() const { return !candidates.empty(); }
};
// Does not throw AmbiguousM; callers needing a single value use chi_maximal_exact.
MaximalChi chi_maximal(const Field& k, const PlaceSet& ramified, const PlaceSet& s);
Rat chi_maximal_exact(const Field& k, const PlaceSet& ramified, const PlaceSet& s);

long riehm_index(const Field& k, const PlaceSet& ramified, const Place& v);

}  // namespace fqlat
