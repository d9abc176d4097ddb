#include "fqlat/classgroup.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fqlat {
namespace {

long isqrt(long n) {
  long r = static_cast<long>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

long floor_mod(long a, long n) {
  long r = a % n;
  return r < 0 ? r + n : r;
}

// Representative of b modulo 2a as used by the reduction operator.
long normalize_b(long b, long a, long D) {
  long two_a = 2 * std::labs(a);
  if (a * a > D) {
    long r = floor_mod(b, two_a);
    if (r > std::labs(a)) r -= two_a;
    return r;
  }
  long s = isqrt(D);
  return s - floor_mod(s - b, two_a);
}

}  // namespace

bool ClassGroup::is_reduced(const Form& f, long D) {
  if (f.b <= 0) return false;
  if (f.b * f.b >= D) return false;
  long two_a = 2 * std::labs(f.a);
  // sqrt(D) - b < 2|a| < sqrt(D) + b
  long lhs = two_a + f.b;
  if (lhs * lhs <= D) return false;
  long rhs = two_a - f.b;
  return rhs < 0 || rhs * rhs < D;
}

Form ClassGroup::rho(const Form& f, long D) {
  long b = normalize_b(-f.b, f.c, D);
  long num = b * b - D;
  return Form{f.c, b, num / (4 * f.c)};
}

Form ClassGroup::reduce(Form f, long D) {
  for (int guard = 0; !is_reduced(f, D); ++guard) {
    if (guard > 100000) throw std::logic_error("form reduction did not terminate");
    f = rho(f, D);
  }
  return f;
}

Form ClassGroup::compose(const Form& f, const Form& g, long D) {
  if (f.a <= 0 || g.a <= 0) throw std::logic_error("compose expects positive leading coefficients");
  long e = std::gcd(std::gcd(f.a, g.a), (f.b + g.b) / 2);
  long A = f.a * g.a / (e * e);
  long m1 = 2 * f.a / e, m2 = 2 * g.a / e;
  for (long B = 0; B < 2 * A; ++B) {
    if (floor_mod(B - f.b, m1) != 0 || floor_mod(B - g.b, m2) != 0) continue;
    if (floor_mod(B * B - D, 4 * A) != 0) continue;
    return Form{A, B, (B * B - D) / (4 * A)};
  }
  throw std::logic_error("Dirichlet composition failed");
}

ClassGroup ClassGroup::compute(long D) {
  ClassGroup g;
  g.D = D;
  long s = isqrt(D);
  std::vector<Form> reduced;
  for (long b = 1; b <= s; ++b) {
    if ((b - D) % 2 != 0) continue;
    long n = (D - b * b) / 4;
    for (long x = 1; x <= n; ++x) {
      if (n % x != 0) continue;
      for (long sgn : {1L, -1L}) {
        Form f{sgn * x, b, -sgn * (n / x)};
        if (is_reduced(f, D)) reduced.push_back(f);
      }
    }
  }
  std::sort(reduced.begin(), reduced.end());
  std::set<Form> seen;
  for (const Form& f0 : reduced) {
    if (seen.count(f0)) continue;
    std::vector<Form> cyc;
    Form f = f0;
    do {
      cyc.push_back(f);
      seen.insert(f);
      f = rho(f, D);
    } while (f != f0);
    int id = static_cast<int>(g.cycles.size());
    for (const Form& x : cyc) g.index_[x] = id;
    g.cycles.push_back(std::move(cyc));
  }
  g.h_plus = static_cast<int>(g.cycles.size());
  for (const auto& cyc : g.cycles) {
    auto it = std::find_if(cyc.begin(), cyc.end(), [](const Form& f) { return f.a > 0; });
    if (it == cyc.end()) throw std::logic_error("cycle without positive form");
    g.positive_rep_.push_back(*it);
  }
  long b0 = D % 2;
  g.identity = g.class_of(Form{1, b0, (b0 * b0 - D) / 4});
  g.neg_principal = g.class_of(Form{-1, b0, -(b0 * b0 - D) / 4});

  int n = g.h_plus;
  g.table.assign(n, std::vector<int>(n, 0));
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      int z = g.class_of(compose(g.positive_rep_[x], g.positive_rep_[y], D));
      g.table[x][y] = g.table[y][x] = z;
    }

  g.wide_index.assign(n, -1);
  int w = 0;
  for (int x = 0; x < n; ++x) {
    if (g.wide_index[x] >= 0) continue;
    g.wide_index[x] = w;
    g.wide_index[g.table[x][g.neg_principal]] = w;
    g.wide_identity_rep.push_back(x);
    ++w;
  }
  g.h = w;
  g.wide_table.assign(w, std::vector<int>(w, 0));
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < w; ++y)
      g.wide_table[x][y] = g.wide_index[g.table[g.wide_identity_rep[x]][g.wide_identity_rep[y]]];
  return g;
}

int ClassGroup::class_of(Form f) const {
  Form r = reduce(f, D);
  auto it = index_.find(r);
  if (it == index_.end()) throw std::logic_error("reduced form missing from cycle index");
  return it->second;
}

int ClassGroup::inverse(int x) const {
  for (int y = 0; y < h_plus; ++y)
    if (table[x][y] == identity) return y;
  throw std::logic_error("no inverse");
}

int ClassGroup::pow(int x, long e) const {
  int r = identity;
  if (e < 0) {
    x = inverse(x);
    e = -e;
  }
  for (long i = 0; i < e; ++i) r = table[r][x];
  return r;
}

std::vector<int> ClassGroup::subgroup(const std::vector<int>& gens, bool narrow) const {
  int id = narrow ? identity : wide_of(identity);
  auto op = [&](int x, int y) { return narrow ? table[x][y] : wide_table[x][y]; };
  std::set<int> sub{id};
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<int> cur(sub.begin(), sub.end());
    for (int x : cur)
      for (int gen : gens) {
        if (sub.insert(op(x, gen)).second) grew = true;
      }
  }
  return {sub.begin(), sub.end()};
}

int ClassGroup::quotient_by_squares_and(const std::vector<int>& gens, bool narrow) const {
  int order = narrow ? h_plus : h;
  std::vector<int> all = gens;
  for (int x = 0; x < order; ++x) all.push_back(narrow ? table[x][x] : wide_table[x][x]);
  return order / static_cast<int>(subgroup(all, narrow).size());
}

std::vector<long> ClassGroup::elementary_divisors(bool narrow) const {
  int order = narrow ? h_plus : h;
  int id = narrow ? identity : wide_of(identity);
  auto op = [&](int x, int y) { return narrow ? table[x][y] : wide_table[x][y]; };
  auto power = [&](int x, long e) {
    int r = id;
    for (long i = 0; i < e; ++i) r = op(r, x);
    return r;
  };
  std::vector<std::vector<int>> partitions;  // per prime, exponents
  std::vector<long> primes;
  long rem = order;
  for (long p = 2; p <= rem; ++p) {
    if (rem % p != 0) continue;
    while (rem % p == 0) rem /= p;
    primes.push_back(p);
    std::vector<int> ranks;  // r_k = number of factors with exponent >= k
    long prev = 1;
    for (long pk = p;; pk *= p) {
      long count = 0;
      for (int x = 0; x < order; ++x)
        if (power(x, pk) == id) ++count;
      long ratio = count / prev;
      int r = 0;
      while (ratio > 1) {
        ratio /= p;
        ++r;
      }
      if (r == 0) break;
      ranks.push_back(r);
      prev = count;
    }
    std::vector<int> lambda(ranks.empty() ? 0 : ranks[0], 0);
    for (int r : ranks)
      for (int i = 0; i < r; ++i) ++lambda[i];
    partitions.push_back(lambda);
  }
  size_t len = 0;
  for (const auto& l : partitions) len = std::max(len, l.size());
  std::vector<long> divs(len, 1);
  for (size_t i = 0; i < primes.size(); ++i)
    for (size_t j = 0; j < partitions[i].size(); ++j)
      for (int k = 0; k < partitions[i][j]; ++k) divs[j] *= primes[i];
  std::sort(divs.begin(), divs.end());
  return divs;
}

std::vector<Form> ClassGroup::representatives() const {
  std::vector<Form> out;
  for (const auto& cyc : cycles) out.push_back(*std::min_element(cyc.begin(), cyc.end()));
  return out;
}

}  // namespace fqlat
