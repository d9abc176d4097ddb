#include "doctest.h"
#include "fqlat/chi.hpp"
#include "fqlat/classifier.hpp"

using namespace fqlat;

namespace {

PlaceSet places(std::initializer_list<const char*> xs) {
  PlaceSet out;
  for (const char* x : xs) out.push_back(parse_place(x));
  return sorted(out);
}

}  // namespace

TEST_CASE("chi of the norm-one group") {
  Field k5 = field_from_discriminant(5);
  CHECK(chi_norm_one(k5, places({"2", "41+"})) == 2);
  CHECK(chi_norm_one(k5, places({"2", "11+"})) == Rat(1, 2));
  CHECK(chi_norm_one(k5, places({"2", "5"})) == Rat(1, 5));
  CHECK(chi_norm_one(field_from_discriminant(8), places({"2", "3"})) == Rat(1, 3));
}

TEST_CASE("chi of the normalizer") {
  Field k5 = field_from_discriminant(5);
  CHECK(chi_normalizer(k5, places({"2", "41+"})) == Rat(1, 2));
  CHECK(chi_normalizer(k5, places({"2", "11+"})) == Rat(1, 8));
  CHECK(chi_normalizer(k5, places({"2", "5"})) == Rat(1, 20));
  Field k12 = field_from_discriminant(12);
  CHECK(chi_normalizer(k12, places({"2", "97+"})) == 2);
}

TEST_CASE("index of the norm-one group") {
  CHECK(index_norm_one_in_normalizer(field_from_discriminant(8), places({"2", "3"})) == 4);
  CHECK(index_norm_one_in_normalizer(field_from_discriminant(12), places({"2", "3"})) == 4);
  CHECK(index_norm_one_in_normalizer(field_from_discriminant(5), places({"2", "5"})) == 4);
  CHECK(s_unit_tp_index(field_from_discriminant(12), places({"2", "97+"})) == 4);
  CHECK(s_unit_tp_index(field_from_discriminant(5), places({"2", "41+"})) == 4);
  CHECK(s_unit_tp_index(field_from_discriminant(5), {}) == 1);
}

TEST_CASE("k'_B degree") {
  CHECK(kprime_degree(field_from_discriminant(5), places({"2", "41+"})) == 1);
  Field k60 = field_from_discriminant(60);
  CHECK(kprime_degree(k60, places({"2", "5"})) == 1);
  Field k65 = field_from_discriminant(65);
  CHECK(kprime_degree(k65, places({"2+", "2-"})) == 1);
}

TEST_CASE("index diagnostic for class number two") {
  Field k60 = field_from_discriminant(60);
  IndexDiagnostic a = index_diagnostic(k60, places({"2", "3"}));
  CHECK(a.generic == 8);
  CHECK(a.exact == 4);
  CHECK(a.exact == a.narrow_quotient);
  IndexDiagnostic b = index_diagnostic(k60, places({"2", "5"}));
  CHECK(b.exact == 8);
}

TEST_CASE("chi of maximal lattices with level") {
  Field k5 = field_from_discriminant(5);
  CHECK(chi_maximal_exact(k5, places({"2", "5"}), places({"3"})) == Rat(1, 4));
  CHECK(chi_maximal_exact(k5, places({"2", "5"}), places({"19+"})) == Rat(1, 2));
  CHECK(chi_maximal_exact(k5, places({"2", "5"}), places({"19-"})) == Rat(1, 2));
  Field k12 = field_from_discriminant(12);
  CHECK(chi_maximal_exact(k12, places({"2", "3"}), places({"11+"})) == Rat(1, 4));
  CHECK(chi_maximal_exact(k5, places({"2", "41+"}), {}) == chi_normalizer(k5, places({"2", "41+"})));
  CHECK_THROWS_AS(chi_maximal_exact(k5, places({"2", "5"}), places({"3", "19+"})), AmbiguousM);
}

TEST_CASE("maximality certificates") {
  Field k5 = field_from_discriminant(5);
  auto c3 = maximality_certificate(k5, places({"2", "5"}), parse_place("3"));
  REQUIRE(c3);
  CHECK(*c3 == Elem(3));
  // the listed (9+sqrt5)/2 lies at the other place over 19
  auto c19m = maximality_certificate(k5, places({"2", "5"}), parse_place("19-"));
  auto c19p = maximality_certificate(k5, places({"2", "5"}), parse_place("19+"));
  REQUIRE(c19m);
  REQUIRE(c19p);
  CHECK(*c19m == Elem(Rat(9, 2), Rat(1, 2)));
  CHECK(*c19p == k5.conj(*c19m));
  Field k12 = field_from_discriminant(12);
  auto c11 = maximality_certificate(k12, places({"2", "3"}), parse_place("11+"));
  REQUIRE(c11);
  CHECK(k12.totally_positive(*c11));
  CHECK(k12.norm(*c11) == 22);
}

TEST_CASE("Riehm indices") {
  Field k5 = field_from_discriminant(5);
  CHECK(riehm_index(k5, places({"2", "11+"}), parse_place("11+")) == 6);
  CHECK(riehm_index(k5, places({"2", "5"}), parse_place("2")) == 5);
  Field k8 = field_from_discriminant(8);
  CHECK(riehm_index(k8, places({"2", "3"}), parse_place("2")) == 3);
  Field k12 = field_from_discriminant(12);
  PlaceSet r = places({"2", "3"});
  CHECK(riehm_index(k12, r, parse_place("2")) * riehm_index(k12, r, parse_place("3")) == 6);
  CHECK_THROWS_AS(riehm_index(k5, places({"2", "5"}), parse_place("3")), NotRamifiedInB);
}

TEST_CASE("ramification checks") {
  Field k5 = field_from_discriminant(5);
  CHECK_THROWS_AS(chi_normalizer(k5, places({"2"})), InvalidRamification);
  CHECK_THROWS_AS(chi_normalizer(k5, {}), InvalidRamification);
  CHECK_THROWS(chi_maximal(k5, places({"2", "5"}), places({"5"})));
}

TEST_CASE("chi(norm one) = index * chi(normalizer) on every candidate ramification") {
  for (long d : integrality_screen(1285)) {
    Field k = field_from_discriminant(d);
    for (const PlaceSet& r : enumerate_ramification(k).raw) {
      CAPTURE(d);
      Rat lhs = chi_norm_one(k, r);
      CHECK(lhs == Rat(index_norm_one_in_normalizer(k, r)) * chi_normalizer(k, r));
      CHECK(lhs > 0);
      CHECK(lhs.get_den() > 0);
    }
  }
}

TEST_CASE("level places scale chi by integral multiples of 2^-e") {
  Field k = field_from_discriminant(12);
  PlaceSet r = places({"2", "3"});
  Rat base = chi_normalizer(k, r);
  for (const char* s : {"11+", "11-", "23+", "13+", "5"}) {
    MaximalChi c = chi_maximal(k, r, places({s}));
    Rat q = c.value / base;
    q.canonicalize();
    CAPTURE(s);
    CHECK(q > 0);
    CHECK(q.get_den() == 1);  // no place over 2 outside R_f
  }
}
