#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fqlat/chi.hpp"
#include "fqlat/witness.hpp"

namespace fqlat {

struct DiscriminantBound {
  long coarse = 0;
  long refined = 0;
  int q_max = 0;                              // max |Cl/Cl^2| over d <= coarse
  int q_cap = 0;                              // largest power of two <= max h, exceptions aside
  std::vector<std::pair<long, int>> large_h;  // (d, h) with h > 9, d <= coarse
};
DiscriminantBound discriminant_bound();

// Fundamental d <= max_d whose B_2 numerator has odd part dividing 3.
std::vector<long> integrality_screen(long max_d);

struct Table1Row {
  long d = 0;
  int h = 0;
  int t = 0;
  Rat g;  // 2^alpha g(k,B) = B_2 / (6 * 2^{3+t})
};
Table1Row table1(long d);

struct FactorEntry {
  Place v;
  long norm = 0;
  Rat e_prime;  // (Nv - 1)/2, or 1 for Nv = 2
};

struct RamificationResult {
  std::vector<FactorEntry> factors;  // places allowed in a raw candidate
  Rat cap0;                          // E'_B bound with no Nv = 2 place in R_f
  std::vector<PlaceSet> raw;
  std::vector<PlaceSet> refined;  // chi(N Gamma) <= 1 with 2-power numerator
};
Rat ramification_cap(const Field& k, int tprime);
RamificationResult enumerate_ramification(const Field& k);

struct SCandidate {
  PlaceSet s;
  MaximalChi chi;
  // values of chi that are reciprocal integers <= 1; for S nonempty also
  // compatible with the torsion orders of the group
  std::vector<Rat> admissible;
};
std::vector<SCandidate> enumerate_s(const Field& k, const PlaceSet& ramified);

enum class Status { Candidate, Excluded, Confirmed, PaperDiscrepant };
std::string to_string(Status s);

struct CandidateClass {
  long d = 0;
  PlaceSet ramified;
  PlaceSet s;
  long index = 0;
  int m = 0;  // -1 when chosen among several candidates for |S| >= 2
  Rat chi;
  Rat chi_normalizer;
  Rat chi_norm_one;
  std::optional<Rat> exact_chi;  // set when |H(empty)| differs from the generic index
  std::optional<Elem> certificate;
  TorsionReport torsion;
  int h_order = 0;
  Status status = Status::Candidate;
  std::string reason;  // exclusion reason or discrepancy note
  std::string witness;
  std::optional<size_t> conjugate_of;

  Signature signature() const;
  bool counted() const { return status == Status::Confirmed || status == Status::Candidate; }
};

bool class_less(const CandidateClass& a, const CandidateClass& b);

// Classes for the given discriminants (all screened ones when empty), unclassified.
std::vector<CandidateClass> candidate_classes(const std::vector<long>& ds = {});

struct Classification {
  std::vector<CandidateClass> classes;
  int counted = 0;
};
Classification classify(const std::vector<long>& ds, const std::map<Signature, Witness>& witnesses,
                        const ReferenceData& ref);
Classification classify();

// Exclusion check for one class; empty when nothing rules it out.
std::string exclusion_reason(const Field& k, const CandidateClass& c, const SquareClassGroup& h);

PlaceSet conjugate(const PlaceSet& set);
PlaceSet sorted(PlaceSet set);
std::vector<long> signature_of(const PlaceSet& set);

}  // namespace fqlat
