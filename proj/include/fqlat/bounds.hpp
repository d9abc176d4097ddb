#pragma once

#include <map>
#include <string>
#include <vector>

#include "fqlat/field.hpp"
#include "fqlat/interval.hpp"

namespace fqlat {

class TableGap : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class RegulatorVariant { Friedman, Slavutskii };

// Lower bounds for the regulator of a totally real field of degree n.
double regulator_lower(int n, RegulatorVariant v);

// Upper bound for h*R from the Brauer-Siegel inequality, 1 < s < 3.
double brauer_siegel_upper(int n, double s, double d, double zeta_k_s);

// Psi_f(n, q); q = [k'_B : k].
double psi_lower(int n, double q);
Interval psi_lower_interval(int n, long q, mpfr_prec_t prec = 128);

// P(n, q): upper bound for the root discriminant when g(k, B) <= 1.
double root_disc_upper(int n, double q);
Interval root_disc_upper_interval(int n, long q, mpfr_prec_t prec = 128);

double g_lower_chfr(int n, double s, double d, int t, double zeta_k_2, double zeta_k_s);

// T(1.4, 0.1) > T_OFFSET - T_SLOPE / (n q), evaluated by Chinburg and Friedman.
inline constexpr double T_OFFSET = -0.0464;
inline constexpr double T_SLOPE = 19.0744;

struct OdlyzkoTable {
  std::map<int, double> bound;  // n -> m_r(n) lower bound
  std::map<int, std::string> source;
  std::string path;
  double at(int n) const;  // throws TableGap
};
OdlyzkoTable load_odlyzko(const std::string& path);
OdlyzkoTable load_odlyzko();

struct DegreeRow {
  int n = 0;
  long q_max = 0;  // largest power of two with Psi_f(n, q) <= 1; -1 unbounded, 0 none
  double psi_at_1 = 0;
  double p_value = 0;  // P(n, q_max), finite q_max only
  double m_r = 0;
  bool excluded = false;  // by Psi_f or by P(n, q_max) < m_r(n)
  std::string reason;
};

struct QBand {
  int lo = 0, hi = 0;
  long q = 0;
  auto operator<=>(const QBand&) const = default;
};

struct BoundsReport {
  int psi_cap = 0;     // largest n with Psi_f(n, 1) <= 1
  int degree_cap = 0;  // after the root discriminant comparison
  std::vector<DegreeRow> rows;
  std::vector<QBand> bands;  // consecutive degrees with equal finite q_max, highest first
  double slack_34 = 0;       // m_r(34) - P(34, 1)
  std::string table_path;
};

BoundsReport degree_bound_report(const OdlyzkoTable& table, int max_n = 60);

// Whether each band's q bounds q_max(n) for every degree in it.
bool bands_imply(const BoundsReport& r, const std::vector<QBand>& bands);

}  // namespace fqlat
