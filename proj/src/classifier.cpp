#include "fqlat/classifier.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace fqlat {
namespace {

bool is_natural(const Rat& x) { return x > 0 && x.get_den() == 1; }

bool is_power_of_two(const Int& n) { return n > 0 && mpz_popcount(n.get_mpz_t()) == 1; }

Rat pow2(int e) { return e >= 0 ? Rat(Int(1) << e) : Rat(1, Int(1) << -e); }

int two_rank_quotient(const Field& k) { return k.cl.quotient_by_squares_and({}, false); }

// Largest n with n^3 <= x^2.
long floor_two_thirds(long x) {
  Int sq = Int(x) * x;
  long n = 0;
  while (Int(n + 1) * (n + 1) * (n + 1) <= sq) ++n;
  return n;
}

std::vector<Place> places_sorted_by_norm(const Field& k, long max_norm, const PlaceSet& skip) {
  std::vector<Place> out;
  for (long p : primes_up_to(max_norm))
    for (const Place& v : k.places_over(p)) {
      if (k.norm(v) > max_norm) continue;
      if (std::find(skip.begin(), skip.end(), v) != skip.end()) continue;
      out.push_back(v);
    }
  return out;
}

void subsets(const std::vector<FactorEntry>& f, size_t start, PlaceSet& cur, Rat e, int tprime,
             const Field& k, const Rat& capmax, std::vector<PlaceSet>& out) {
  if (cur.size() >= 2 && cur.size() % 2 == 0 && is_natural(ramification_cap(k, tprime) / e)) out.push_back(cur);
  for (size_t i = start; i < f.size(); ++i) {
    Rat e2 = f[i].norm == 2 ? e : Rat(e * f[i].e_prime);
    if (e2 > capmax) continue;
    cur.push_back(f[i].v);
    subsets(f, i + 1, cur, e2, tprime + (f[i].norm == 2), k, capmax, out);
    cur.pop_back();
  }
}

std::string orders_text(const std::set<int>& s) {
  std::ostringstream o;
  bool first = true;
  for (int m : s) {
    o << (first ? "" : ",") << m;
    first = false;
  }
  return o.str();
}

}  // namespace

PlaceSet sorted(PlaceSet set) {
  std::sort(set.begin(), set.end());
  return set;
}

PlaceSet conjugate(const PlaceSet& set) {
  PlaceSet out;
  for (const Place& v : set) out.push_back(conjugate(v));
  return sorted(out);
}

std::vector<long> signature_of(const PlaceSet& set) {
  std::vector<long> out;
  for (const Place& v : set) out.push_back(v.p);
  std::sort(out.begin(), out.end());
  return out;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Candidate: return "Candidate";
    case Status::Excluded: return "Excluded";
    case Status::Confirmed: return "Confirmed";
    case Status::PaperDiscrepant: return "PaperDiscrepant";
  }
  return "?";
}

Signature CandidateClass::signature() const { return Signature{d, signature_of(ramified), signature_of(s)}; }

bool class_less(const CandidateClass& a, const CandidateClass& b) {
  return std::tie(a.d, a.ramified, a.s, a.index) < std::tie(b.d, b.ramified, b.s, b.index);
}

DiscriminantBound discriminant_bound() {
  DiscriminantBound out;
  // d < 2^6 pi^4 / (sqrt3 zeta(4)) = 5760/sqrt3
  long c = 0;
  while (3 * (c + 1) * (c + 1) < 5760L * 5760L) ++c;
  out.coarse = c;
  out.q_max = 1;
  int h_max = 1;
  std::vector<std::pair<long, int>> quotients;
  for (long d = 5; d <= out.coarse; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    ClassGroup cl = ClassGroup::compute(d);
    int q = cl.quotient_by_squares_and({}, false);
    out.q_max = std::max(out.q_max, q);
    if (cl.h > 9) {
      out.large_h.emplace_back(d, cl.h);
      quotients.emplace_back(d, q);
    } else {
      h_max = std::max(h_max, cl.h);
    }
  }
  // [k_B:k] divides |Cl/Cl^2|, a power of two bounded by h
  out.q_cap = 1;
  while (2 * out.q_cap <= h_max) out.q_cap *= 2;
  out.refined = floor_two_thirds(5760L * out.q_cap);
  // the exceptional fields must fall outside their own bound
  for (auto [d, q] : quotients)
    if (d <= floor_two_thirds(5760L * q)) out.refined = std::max(out.refined, d);
  return out;
}

std::vector<long> integrality_screen(long max_d) {
  std::vector<long> out;
  for (long d = 5; d <= max_d; ++d) {
    if (!is_fundamental_discriminant(d)) continue;
    Int n = abs(bernoulli_b2(d).get_num());
    while (n % 2 == 0) n /= 2;
    if (n == 1 || n == 3) out.push_back(d);
  }
  return out;
}

Table1Row table1(long d) {
  Field k = field_from_discriminant(d);
  Table1Row r;
  r.d = d;
  r.h = k.cl.h;
  r.t = k.t;
  r.g = k.b2 / (6 * pow2(3 + k.t));
  r.g.canonicalize();
  return r;
}

Rat ramification_cap(const Field& k, int tprime) {
  Rat two_alpha(4 * two_rank_quotient(k), k.unit.tp_unit_index());
  Rat cap = 48 * pow2(tprime) * two_alpha / k.b2;
  cap.canonicalize();
  return cap;
}

RamificationResult enumerate_ramification(const Field& k) {
  RamificationResult out;
  int tmax = 0;
  for (const Place& v : k.places_over(2))
    if (k.norm(v) == 2) ++tmax;
  out.cap0 = ramification_cap(k, 0);
  Rat capmax = ramification_cap(k, tmax);
  Int bound = capmax.get_num() / capmax.get_den();
  long max_norm = 2 * bound.get_si() + 1;
  // an inert 2 contributes e' = 3/2, so a partner only needs to divide 2/3 of the cap
  std::optional<Rat> half_factor;
  for (const Place& v : k.places_over(2))
    if (k.norm(v) == 4) half_factor = k.e_prime(v);
  for (const Place& v : places_sorted_by_norm(k, max_norm, {})) {
    long n = k.norm(v);
    if (n == 2) {
      out.factors.push_back({v, n, Rat(1)});
      continue;
    }
    Rat e = k.e_prime(v);
    bool fits = is_natural(capmax / e) || (half_factor && v.p != 2 && is_natural(capmax / (e * *half_factor)));
    if (fits) out.factors.push_back({v, n, e});
  }
  std::sort(out.factors.begin(), out.factors.end(), [](const FactorEntry& a, const FactorEntry& b) { return a.v < b.v; });
  PlaceSet cur;
  subsets(out.factors, 0, cur, Rat(1), 0, k, capmax, out.raw);
  for (PlaceSet& r : out.raw) r = sorted(r);
  std::sort(out.raw.begin(), out.raw.end());
  for (const PlaceSet& r : out.raw) {
    Rat chi = chi_normalizer(k, r);
    if (chi <= 1 && is_power_of_two(chi.get_num())) out.refined.push_back(r);
  }
  return out;
}

std::vector<SCandidate> enumerate_s(const Field& k, const PlaceSet& ramified) {
  std::vector<SCandidate> out;
  Rat chin = chi_normalizer(k, ramified);
  if (chin > 1) return out;
  if (is_natural(1 / chin)) {
    SCandidate c;
    c.chi = chi_maximal(k, ramified, {});
    c.admissible.push_back(c.chi.value);
    out.push_back(c);
  }
  // each place contributes sigma_v / 2 >= 3/2
  int smax = 0;
  for (Rat x = chin * Rat(3, 2); x <= 1; x *= Rat(3, 2)) ++smax;
  if (smax == 0) return out;
  Rat top = pow2(smax) / chin;
  Int sigma_bound = top.get_num() / top.get_den();
  std::vector<Place> cands;
  for (const Place& v : places_sorted_by_norm(k, sigma_bound.get_si() - 1, ramified))
    if (is_natural(top / k.sigma(v))) cands.push_back(v);

  std::vector<PlaceSet> sets;
  PlaceSet cur;
  auto rec = [&](auto&& self, size_t start, const Int& e) -> void {
    if (!cur.empty() && is_natural(pow2(static_cast<int>(cur.size())) / chin / Rat(e))) sets.push_back(cur);
    if (static_cast<int>(cur.size()) == smax) return;
    for (size_t i = start; i < cands.size(); ++i) {
      Int e2 = e * k.sigma(cands[i]);
      if (Rat(e2) > top) continue;
      cur.push_back(cands[i]);
      self(self, i + 1, e2);
      cur.pop_back();
    }
  };
  rec(rec, 0, Int(1));

  for (const PlaceSet& s : sets) {
    SCandidate c;
    c.s = sorted(s);
    c.chi = chi_maximal(k, ramified, c.s);
    if (c.s.size() == 1) {
      if (!c.chi.maximal) continue;
      if (c.chi.value <= 1 && is_natural(1 / c.chi.value)) c.admissible.push_back(c.chi.value);
    } else {
      for (const Rat& x : c.chi.candidates)
        if (x <= 1 && is_natural(1 / x)) c.admissible.push_back(x);
    }
    if (c.admissible.empty()) continue;
    // a torsion-free subgroup of index I needs every torsion order to divide I
    TorsionReport tr = torsion_spectrum(k, ramified, c.s);
    std::erase_if(c.admissible, [&](const Rat& x) { return !index_admissible(tr, Rat(1 / x).get_num().get_si()); });
    if (!c.admissible.empty()) out.push_back(c);
  }
  std::sort(out.begin(), out.end(), [](const SCandidate& a, const SCandidate& b) { return a.s < b.s; });
  return out;
}

std::vector<CandidateClass> candidate_classes(const std::vector<long>& ds_in) {
  std::vector<long> ds = ds_in.empty() ? integrality_screen(1285) : ds_in;
  std::vector<CandidateClass> out;
  for (long d : ds) {
    Field k = field_from_discriminant(d);
    for (const PlaceSet& r : enumerate_ramification(k).refined) {
      Rat chi1 = chi_norm_one(k, r);
      Rat chin = chi_normalizer(k, r);
      for (const SCandidate& sc : enumerate_s(k, r)) {
        for (const Rat& x : sc.admissible) {
          CandidateClass c;
          c.d = d;
          c.ramified = r;
          c.s = sc.s;
          c.chi = x;
          c.index = Rat(1 / x).get_num().get_si();
          c.m = sc.chi.ambiguous() ? -1 : sc.chi.m;
          c.chi_normalizer = chin;
          c.chi_norm_one = chi1;
          c.certificate = sc.chi.certificate;
          out.push_back(c);
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), class_less);
  return out;
}

std::string exclusion_reason(const Field& k, const CandidateClass& c, const SquareClassGroup& h) {
  std::set<int> bad;
  for (int m : c.torsion.orders)
    if (c.index % m != 0) bad.insert(m);
  if (!bad.empty()) return "torsion of order " + orders_text(bad) + " does not divide I=" + std::to_string(c.index);
  if (c.index != 2 || !c.torsion.orders.count(2)) return "";
  int r = static_cast<int>(h.generators.size());
  if (r == 0) return "";
  TorsionCheck t2 = has_torsion(k, c.ramified, c.s, 2, h);
  std::vector<unsigned> yielding;
  for (const Elem& a : t2.classes)
    for (size_t i = 0; i < h.elements.size(); ++i)
      if (h.elements[i] == a) yielding.push_back(static_cast<unsigned>(i));
  for (unsigned f = 1; f < (1u << r); ++f) {
    bool clean = true;
    for (unsigned i : yielding)
      if (std::popcount(i & f) % 2 == 0) {
        clean = false;
        break;
      }
    if (clean) return "";
  }
  return "every index-two subgroup above Gamma^1 contains 2-torsion (|H|=" + std::to_string(h.order()) + ")";
}

Classification classify(const std::vector<long>& ds, const std::map<Signature, Witness>& witnesses,
                        const ReferenceData& ref) {
  Classification out;
  out.classes = candidate_classes(ds);
  std::map<long, Field> fields;
  // listed multiplicity and index per (d, d_B, S) signature
  std::map<Signature, std::pair<int, long>> listed;
  for (const auto& t : ref.theorems)
    for (const auto& lc : t.classes) listed[lc.key] = {lc.count, lc.index};
  std::vector<std::string> why(out.classes.size());
  std::map<Signature, int> surviving;
  for (size_t i = 0; i < out.classes.size(); ++i) {
    CandidateClass& c = out.classes[i];
    auto it = fields.find(c.d);
    if (it == fields.end()) it = fields.emplace(c.d, field_from_discriminant(c.d)).first;
    const Field& k = it->second;
    SquareClassGroup h = h_group(k, c.ramified, c.s);
    c.h_order = h.order();
    c.torsion = torsion_spectrum(k, c.ramified, c.s, h);
    IndexDiagnostic diag = index_diagnostic(k, c.ramified);
    long used = index_norm_one_in_normalizer(k, c.ramified);
    if (diag.exact != used) {
      Rat exact = c.chi * frac(used, diag.exact);
      exact.canonicalize();
      c.exact_chi = exact;
      if (exact > 1) why[i] = "chi=" + exact.get_str() + " > 1 with the exact index |H(empty)|=" + std::to_string(diag.exact);
      else if (!is_natural(1 / exact)) why[i] = "chi=" + exact.get_str() + " is not a reciprocal integer with the exact index";
    }
    if (why[i].empty()) why[i] = exclusion_reason(k, c, h);
    if (why[i].empty()) ++surviving[c.signature()];
  }
  for (size_t i = 0; i < out.classes.size(); ++i) {
    CandidateClass& c = out.classes[i];
    Signature sig = c.signature();
    auto l = listed.find(sig);
    bool is_listed = l != listed.end();
    std::string note;
    if (is_listed && l->second.second != c.index) note = "listed with I=" + std::to_string(l->second.second);
    if (c.exact_chi) {
      note += std::string(note.empty() ? "" : "; ") + "exact index gives chi=" + c.exact_chi->get_str();
    }
    if (!why[i].empty()) {
      bool short_of_list = is_listed && surviving[sig] < l->second.first;
      c.status = short_of_list ? Status::PaperDiscrepant : Status::Excluded;
      c.reason = short_of_list ? "listed in the published classification but " + why[i] : why[i];
      continue;
    }
    auto w = witnesses.find(sig);
    if (w != witnesses.end()) {
      c.status = Status::Confirmed;
      c.witness = w->second.construction + (w->second.source.empty() ? "" : " [" + w->second.source + "]");
      if (!is_listed) note += std::string(note.empty() ? "" : "; ") + "no listed class with this signature";
      else if (surviving[sig] > l->second.first)
        note += std::string(note.empty() ? "" : "; ") + "listed " + std::to_string(l->second.first) + " time(s), " +
                std::to_string(surviving[sig]) + " survive";
      c.reason = note;
      continue;
    }
    if (is_listed) {
      c.status = Status::Candidate;
      c.reason = note;
      continue;
    }
    c.status = Status::PaperDiscrepant;
    c.reason = "no obstruction from the torsion criteria, absent from the published list";
    if (!note.empty()) c.reason += "; " + note;
  }
  for (size_t i = 0; i < out.classes.size(); ++i) {
    const CandidateClass& c = out.classes[i];
    PlaceSet rc = conjugate(c.ramified), sc = conjugate(c.s);
    if (rc == c.ramified && sc == c.s) continue;
    for (size_t j = 0; j < out.classes.size(); ++j) {
      const CandidateClass& o = out.classes[j];
      if (o.d == c.d && o.ramified == rc && o.s == sc && o.index == c.index) {
        out.classes[i].conjugate_of = j;
        break;
      }
    }
  }
  out.counted = static_cast<int>(std::count_if(out.classes.begin(), out.classes.end(),
                                               [](const CandidateClass& c) { return c.counted(); }));
  return out;
}

Classification classify() { return classify({}, load_witnesses(), load_reference()); }

}  // namespace fqlat
