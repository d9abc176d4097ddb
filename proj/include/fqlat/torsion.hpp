#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "fqlat/field.hpp"

namespace fqlat {

using PlaceSet = std::vector<Place>;

// Square classes of totally positive elements whose ideal is supported on
// S and R_f up to squares.
struct SquareClassGroup {
  std::vector<Elem> generators;  // independent modulo squares
  std::vector<Elem> elements;    // element i = product of generators in the bits of i
  int order() const { return static_cast<int>(elements.size()); }
};

// Small integral representative of the square class of x (x != 0).
Elem reduce_square_class(const Field& k, const Elem& x);
bool is_square(const Field& k, const Elem& x);
bool same_square_class(const Field& k, const Elem& x, const Elem& y);

SquareClassGroup h_group(const Field& k, const PlaceSet& ramified, const PlaceSet& s);
int s_unit_tp_index(const Field& k, const PlaceSet& ramified);

// Behaviour of the place v in k(sqrt(delta)).
Splitting splitting_in_sqrt(const Field& k, const Place& v, const Elem& delta, int precision_extra = 0);
Splitting splits_in_sqrt_minus_a(const Field& k, const Place& v, const Elem& a);
bool splits_in_cyclotomic(const Field& k, const Place& v, int m);

std::set<int> possible_orders(const Field& k);

struct TorsionCheck {
  bool present = false;
  std::string certificate;
  std::vector<Elem> classes;  // order 2: torsion-yielding square classes
};

TorsionCheck has_torsion(const Field& k, const PlaceSet& ramified, const PlaceSet& s, int m);
// Same, with a precomputed square class group.
TorsionCheck has_torsion(const Field& k, const PlaceSet& ramified, const PlaceSet& s, int m,
                         const SquareClassGroup& h);

struct TorsionReport {
  std::set<int> orders;
  std::map<int, std::string> witnesses;
  std::set<int> linked;  // orders added only through the odd/even relation
};

TorsionReport torsion_spectrum(const Field& k, const PlaceSet& ramified, const PlaceSet& s);
TorsionReport torsion_spectrum(const Field& k, const PlaceSet& ramified, const PlaceSet& s,
                               const SquareClassGroup& h);
bool index_admissible(const TorsionReport& report, long index);

// Whether the class [a] yields an element of order two (conditions alpha, beta).
bool class_gives_torsion(const Field& k, const PlaceSet& ramified, const PlaceSet& s, const Elem& a);

}  // namespace fqlat
