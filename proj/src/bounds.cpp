#include "fqlat/bounds.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fqlat/witness.hpp"

namespace fqlat {
namespace {

void check_degree(int n) {
  if (n < 2) throw DomainError("degree must be at least 2");
}

void check_s(double s) {
  if (!(s > 1 && s < 3)) throw DomainError("s must lie in (1, 3)");
}

double zeta_series(int s) {
  double sum = 0;
  for (int k = 1;; ++k) {
    double term = std::pow(k, -s);
    sum += term;
    if (term < 1e-18 * sum) break;
  }
  return sum;
}

constexpr long kQLimit = 1L << 30;

}  // namespace

double regulator_lower(int n, RegulatorVariant v) {
  check_degree(n);
  return v == RegulatorVariant::Friedman ? 0.0062 * std::exp(0.738 * n) : 0.003 * std::exp(0.75 * n);
}

double brauer_siegel_upper(int n, double s, double d, double zeta_k_s) {
  check_degree(n);
  check_s(s);
  return std::pow(2.0, 1 - n) * s * (s - 1) * std::pow(std::tgamma(s / 2), n) *
         std::pow(d / std::pow(std::numbers::pi, n), s / 2) * zeta_k_s;
}

double psi_lower(int n, double q) {
  check_degree(n);
  if (q < 1) throw DomainError("q must be at least 1");
  return 0.0221 * std::exp(0.4307 * n - 19.0744 / q);
}

Interval psi_lower_interval(int n, long q, mpfr_prec_t prec) {
  check_degree(n);
  if (q < 1) throw DomainError("q must be at least 1");
  Interval e = Interval::decimal("0.4307", prec) * Interval::point(static_cast<long>(n), prec) -
               Interval::decimal("19.0744", prec) / Interval::point(q, prec);
  return Interval::decimal("0.0221", prec) * exp(e);
}

double root_disc_upper(int n, double q) {
  check_degree(n);
  double pi = std::numbers::pi;
  double logv = (4.0 * n - 2) * std::log(2.0) + 2.0 * n * std::log(pi) + std::log(q) - std::log(zeta_series(2 * n));
  return std::exp(logv * 2.0 / (3.0 * n));
}

Interval root_disc_upper_interval(int n, long q, mpfr_prec_t prec) {
  check_degree(n);
  Interval base = pow(Interval::point(2L, prec), 4L * n - 2) * pow(Interval::pi(prec), 2L * n) *
                  Interval::point(q, prec) / Interval::zeta(2 * n, prec);
  return pow(base, Interval::point(2L, prec) / Interval::point(3L * n, prec));
}

double g_lower_chfr(int n, double s, double d, int t, double zeta_k_2, double zeta_k_s) {
  check_degree(n);
  check_s(s);
  if (d <= 0 || zeta_k_2 <= 0 || zeta_k_s <= 0) throw DomainError("discriminant and zeta values must be positive");
  double pi = std::numbers::pi;
  double num = regulator_lower(n, RegulatorVariant::Friedman) * zeta_k_2 * std::pow(pi, n * (s - 4) / 2) *
               std::pow(d, (3 - s) / 2);
  double den = s * (s - 1) * zeta_k_s * std::pow(std::tgamma(s / 2), n) * std::pow(2.0, 2 * n + t - 1);
  return num / den;
}

double OdlyzkoTable::at(int n) const {
  auto it = bound.find(n);
  if (it == bound.end()) throw TableGap("no root discriminant bound for degree " + std::to_string(n) + " in " + path);
  return it->second;
}

OdlyzkoTable load_odlyzko(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IOError("cannot open " + path);
  OdlyzkoTable t;
  t.path = path;
  std::string line;
  std::getline(in, line);  // header
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream row(line);
    int n;
    double b;
    std::string src;
    if (!(row >> n >> b)) throw IOError(path + ":" + std::to_string(lineno) + ": malformed row");
    row >> src;
    if (src.empty()) throw IOError(path + ":" + std::to_string(lineno) + ": missing source tag");
    t.bound[n] = b;
    t.source[n] = src;
  }
  double prev = 0;
  for (auto [n, b] : t.bound) {
    if (b < prev) throw IOError(path + ": bounds decrease at degree " + std::to_string(n));
    prev = b;
  }
  return t;
}

OdlyzkoTable load_odlyzko() { return load_odlyzko(data_dir() + "/odlyzko_totally_real.tsv"); }

BoundsReport degree_bound_report(const OdlyzkoTable& table, int max_n) {
  BoundsReport r;
  r.table_path = table.path;
  for (int n = 2; n <= max_n; ++n) {
    DegreeRow row;
    row.n = n;
    row.psi_at_1 = psi_lower(n, 1);
    // Psi_f(n, q) increases to 0.0221 exp(0.4307 n) as q grows
    Interval limit = Interval::decimal("0.0221") * exp(Interval::decimal("0.4307") * Interval::point(static_cast<long>(n)));
    if (!limit.certainly_greater(1)) {
      row.q_max = -1;
    } else {
      for (long q = 1; q <= kQLimit; q *= 2)
        if (!psi_lower_interval(n, q).certainly_greater(1)) row.q_max = q;
    }
    if (row.q_max == 0) {
      row.excluded = true;
      row.reason = "Psi_f(n,1) > 1";
    } else if (row.q_max > 0) {
      row.m_r = table.at(n);
      Interval p = root_disc_upper_interval(n, row.q_max);
      row.p_value = p.mid();
      if (p.certainly_less(row.m_r)) {
        row.excluded = true;
        row.reason = "P(n,q) < m_r(n)";
      }
    }
    if (row.q_max != 0) r.psi_cap = n;
    if (!row.excluded) r.degree_cap = n;
    r.rows.push_back(row);
  }
  for (auto it = r.rows.rbegin(); it != r.rows.rend(); ++it) {
    if (it->n > r.degree_cap || it->q_max <= 0) continue;
    if (!r.bands.empty() && r.bands.back().q == it->q_max && r.bands.back().lo == it->n + 1)
      r.bands.back().lo = it->n;
    else
      r.bands.push_back({it->n, it->n, it->q_max});
  }
  if (max_n >= 34) r.slack_34 = table.at(34) - root_disc_upper_interval(34, 1).upper();
  return r;
}

bool bands_imply(const BoundsReport& r, const std::vector<QBand>& bands) {
  for (const QBand& b : bands)
    for (const DegreeRow& row : r.rows)
      if (row.n >= b.lo && row.n <= b.hi && (row.q_max < 0 || row.q_max > b.q)) return false;
  return true;
}

}  // namespace fqlat
