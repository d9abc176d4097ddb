#pragma once

#include <compare>
#include <map>
#include <vector>

namespace fqlat {

// Binary quadratic form a x^2 + b x y + c y^2.
struct Form {
  long a = 0, b = 0, c = 0;
  auto operator<=>(const Form&) const = default;
};

// Narrow and wide class groups of a real quadratic discriminant, computed from
// cycles of reduced indefinite forms. Classes are small integers; the narrow
// group is stored as a full multiplication table.
class ClassGroup {
 public:
  long D = 0;
  int h_plus = 0;  // number of cycles
  int h = 0;       // wide class number
  int identity = 0;
  int neg_principal = 0;  // class of the form (-1, b, c)
  std::vector<std::vector<Form>> cycles;
  std::vector<std::vector<int>> table;  // narrow multiplication
  std::vector<int> wide_index;          // narrow class -> wide class
  std::vector<std::vector<int>> wide_table;
  std::vector<int> wide_identity_rep;   // per wide class: one narrow class

  static ClassGroup compute(long D);

  int class_of(Form f) const;
  int mul(int x, int y) const { return table[x][y]; }
  int inverse(int x) const;
  int pow(int x, long e) const;
  int wide_of(int narrow) const { return wide_index[narrow]; }
  int wide_mul(int x, int y) const { return wide_table[x][y]; }

  std::vector<long> elementary_divisors(bool narrow = false) const;
  std::vector<Form> representatives() const;

  // Size of G / (G^2 <gens>), for the narrow or the wide group.
  int quotient_by_squares_and(const std::vector<int>& gens, bool narrow) const;
  // Subgroup generated by a list of elements (narrow or wide indices).
  std::vector<int> subgroup(const std::vector<int>& gens, bool narrow) const;

  static Form rho(const Form& f, long D);
  static bool is_reduced(const Form& f, long D);
  static Form reduce(Form f, long D);
  static Form compose(const Form& f, const Form& g, long D);

 private:
  std::map<Form, int> index_;
  std::vector<Form> positive_rep_;
};

}  // namespace fqlat
