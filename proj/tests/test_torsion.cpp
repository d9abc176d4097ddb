#include <algorithm>

#include "doctest.h"
#include "fqlat/torsion.hpp"
#include "properties.hpp"

using namespace fqlat;

namespace {

PlaceSet places(std::initializer_list<const char*> xs) {
  PlaceSet out;
  for (const char* x : xs) out.push_back(parse_place(x));
  return sorted(out);
}

bool contains(const SquareClassGroup& h, const Field& k, const Elem& x) {
  return std::any_of(h.elements.begin(), h.elements.end(), [&](const Elem& e) { return same_square_class(k, e, x); });
}

}  // namespace

TEST_CASE("possible torsion orders") {
  CHECK(possible_orders(field_from_discriminant(5)) == std::set<int>{2, 3, 4, 5, 6, 10});
  CHECK(possible_orders(field_from_discriminant(8)) == std::set<int>{2, 3, 4, 6, 8});
  CHECK(possible_orders(field_from_discriminant(13)) == std::set<int>{2, 3, 4, 6});
  CHECK(possible_orders(field_from_discriminant(12)) == std::set<int>{2, 3, 4, 6, 12});
}

TEST_CASE("splitting in cyclotomic and Kummer extensions") {
  Field k5 = field_from_discriminant(5);
  CHECK(splits_in_cyclotomic(k5, parse_place("2"), 3));
  CHECK(splits_in_cyclotomic(k5, parse_place("41+"), 4));
  CHECK(splits_in_cyclotomic(k5, parse_place("41+"), 5));
  CHECK(splits_in_sqrt_minus_a(k5, parse_place("41+"), Elem(2)) == Splitting::Split);
  Field k8 = field_from_discriminant(8);
  CHECK(splits_in_sqrt_minus_a(k8, parse_place("2"), Elem(5, 2)) == Splitting::Split);
  Field k60 = field_from_discriminant(60);
  // Q_2(sqrt15) = Q_2(i) and -3 is a unit of class 5 there: unramified quadratic
  CHECK(splits_in_sqrt_minus_a(k60, parse_place("2"), Elem(3)) == Splitting::Inert);
}

TEST_CASE("splitting against residue-field squares on 200 random pairs") { CHECK(props::residue_splitting() == ""); }

TEST_CASE("square class groups") {
  Field k5 = field_from_discriminant(5);
  SquareClassGroup h = h_group(k5, places({"2", "41+"}), {});
  CHECK(h.order() == 4);
  CHECK(contains(h, k5, Elem(1)));
  CHECK(contains(h, k5, Elem(2)));
  for (const Elem& e : h.elements) CHECK(k5.totally_positive(e));

  Field k12 = field_from_discriminant(12);
  SquareClassGroup h11 = h_group(k12, places({"2", "3"}), places({"11+"}));
  CHECK(h11.order() == 8);
  Elem pi2(1, 1), pi3(0, 1);
  Elem pi11 = *principal_generator(k12, {{parse_place("11+"), 1}});
  CHECK(contains(h11, k12, k12.mul(pi11, pi2)));
  CHECK(contains(h11, k12, k12.mul(pi2, pi3)));

  SquareClassGroup h13 = h_group(k12, places({"2", "13+"}), places({"3"}));
  CHECK(h13.order() == 8);
  CHECK(contains(h13, k12, k12.mul(pi2, pi3)));
  CHECK(contains(h13, k12, Elem(2)));  // = eps modulo squares

  CHECK(h_group(k5, {}, {}).order() == 1);
}

TEST_CASE("torsion criteria") {
  Field k5 = field_from_discriminant(5);
  CHECK(has_torsion(k5, places({"2", "3", "5", "11+"}), {}, 2).present);
  CHECK_FALSE(has_torsion(k5, places({"2", "41+"}), {}, 3).present);
  CHECK(has_torsion(k5, places({"2", "5"}), {}, 5).present);
  TorsionReport r = torsion_spectrum(k5, places({"2", "5"}), {});
  CHECK(r.orders.count(5));
  CHECK(r.orders.count(10));
  Field k8 = field_from_discriminant(8);
  TorsionReport r17 = torsion_spectrum(k8, places({"2", "17+"}), {});
  CHECK(r17.orders.count(3));
  Field k13 = field_from_discriminant(13);
  TorsionReport r13 = torsion_spectrum(k13, places({"3+", "13"}), {});
  CHECK(index_admissible(r13, 2));
}

TEST_CASE("index admissibility") {
  TorsionReport a;
  a.orders = {3};
  CHECK_FALSE(index_admissible(a, 10));
  a.orders = {5, 10};
  CHECK(index_admissible(a, 20));
  a.orders = {2};
  CHECK(index_admissible(a, 2));
  a.orders = {};
  CHECK(index_admissible(a, 1));
}

TEST_CASE("square tests") {
  Field k = field_from_discriminant(12);
  CHECK(is_square(k, Elem(4)));
  CHECK(is_square(k, Elem(3)));
  CHECK(is_square(k, Elem(12)));
  CHECK_FALSE(is_square(k, Elem(2)));
  CHECK_FALSE(is_square(k, Elem(6)));
  CHECK_FALSE(is_square(k, Elem(-1)));
  CHECK(is_square(k, k.mul(Elem(3, 1), Elem(3, 1))));
  CHECK(same_square_class(k, k.unit.eps, Elem(2)));  // 2 + sqrt3 = (1 + sqrt3)^2 / 2
  CHECK_FALSE(same_square_class(k, k.unit.eps, Elem(1)));
  CHECK(is_square(field_from_discriminant(5), Elem(5)));
}

TEST_CASE("square class reduction preserves the class") {
  Field k = field_from_discriminant(12);
  Elem sq = k.mul(Elem(3, 1), Elem(3, 1));
  for (long a = -20; a <= 20; ++a)
    for (long b = -20; b <= 20; ++b) {
      Elem x(a, b);
      if (x.is_zero()) continue;
      Elem r = reduce_square_class(k, x);
      CHECK(same_square_class(k, r, x));
      CHECK(same_square_class(k, reduce_square_class(k, k.mul(x, sq)), r));
      CHECK(k.is_integer(r));
    }
}
