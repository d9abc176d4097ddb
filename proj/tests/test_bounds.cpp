#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "doctest.h"
#include "fqlat/bounds.hpp"
#include "fqlat/witness.hpp"

using namespace fqlat;

TEST_CASE("regulator bounds") {
  CHECK(regulator_lower(2, RegulatorVariant::Friedman) == doctest::Approx(0.0062 * std::exp(1.476)));
  for (int n = 2; n <= 60; ++n)
    CHECK(regulator_lower(n, RegulatorVariant::Friedman) > regulator_lower(n, RegulatorVariant::Slavutskii));
  CHECK(regulator_lower(61, RegulatorVariant::Slavutskii) > regulator_lower(61, RegulatorVariant::Friedman));
  CHECK_THROWS_AS(regulator_lower(1, RegulatorVariant::Friedman), DomainError);
}

TEST_CASE("Brauer-Siegel bound") {
  double pi = std::numbers::pi;
  double zeta5 = 2 * std::pow(pi, 4) / (75 * std::sqrt(5.0));
  double reg = std::log((1 + std::sqrt(5.0)) / 2);
  CHECK(brauer_siegel_upper(2, 2, 5, zeta5) >= reg);
  CHECK(brauer_siegel_upper(2, 1.4, 9, 1.5) > brauer_siegel_upper(2, 1.4, 8, 1.5));
  CHECK_THROWS_AS(brauer_siegel_upper(2, 3.0, 5, 1), DomainError);
  CHECK_THROWS_AS(brauer_siegel_upper(2, 1.0, 5, 1), DomainError);
}

TEST_CASE("Psi_f checkpoints") {
  CHECK(psi_lower_interval(54, 1).certainly_greater(1.44));
  CHECK(psi_lower_interval(32, 2).certainly_greater(1.5));
  CHECK(psi_lower_interval(2, 1).certainly_less(1.0));
  CHECK(psi_lower(54, 1) == doctest::Approx(psi_lower_interval(54, 1).mid()).epsilon(1e-12));
}

TEST_CASE("Psi_f increases in n and q") {
  for (int n = 2; n < 60; ++n)
    for (long q = 1; q <= 256; q *= 2) {
      CHECK(psi_lower(n + 1, q) > psi_lower(n, q));
      CHECK(psi_lower(n, 2 * q) > psi_lower(n, q));
    }
}

TEST_CASE("root discriminant bound") {
  Interval p34 = root_disc_upper_interval(34, 1);
  CHECK(p34.certainly_greater(28.43));  // 28.43204..., just above the two-decimal figure
  CHECK(p34.certainly_less(28.4321));
  CHECK(root_disc_upper(34, 1) == doctest::Approx(p34.mid()).epsilon(1e-10));
  for (int n = 2; n < 50; ++n) CHECK(root_disc_upper(n, 2) > root_disc_upper(n, 1));
}

TEST_CASE("g lower bound") {
  double pi = std::numbers::pi;
  double zeta5 = 2 * std::pow(pi, 4) / (75 * std::sqrt(5.0));
  double g = g_lower_chfr(2, 2, 5, 1, zeta5, zeta5);
  CHECK(g > 0);
  CHECK(g < 1.0 / 120);
  CHECK(g_lower_chfr(2, 1.4, 13, 1, 1.2, 3.0) > g_lower_chfr(2, 1.4, 12, 1, 1.2, 3.0));
  CHECK_THROWS_AS(g_lower_chfr(2, 0.5, 5, 1, 1, 1), DomainError);
}

TEST_CASE("interval arithmetic encloses") {
  Interval x = Interval::decimal("0.1");
  CHECK(x.lower() <= 0.1);
  CHECK(x.upper() >= 0.1);
  Interval z = Interval::zeta(4);
  double z4 = std::pow(std::numbers::pi, 4) / 90;
  // the double z4 is itself rounded
  CHECK(z.lower() <= z4 * (1 + 1e-15));
  CHECK(z.upper() >= z4 * (1 - 1e-15));
  CHECK(z.upper() - z.lower() < 1e-15);
  Interval g = Interval::gamma(0.7);
  CHECK(g.lower() <= std::tgamma(0.7) * (1 + 1e-15));
  CHECK(g.upper() >= std::tgamma(0.7) * (1 - 1e-15));
  CHECK_THROWS(Interval::point(1L) / (Interval::point(1L) - Interval::point(1L)));
  Interval e = exp(log(Interval::point(3.0)));
  CHECK(e.lower() <= 3.0);
  CHECK(e.upper() >= 3.0);
}

TEST_CASE("root discriminant table") {
  OdlyzkoTable t = load_odlyzko();
  CHECK(t.at(34) > 28.82 - 1e-12);
  CHECK(t.source.at(34) == "quoted");
  CHECK_THROWS_AS(t.at(500), TableGap);
  CHECK_THROWS_AS(load_odlyzko("/nonexistent/table.tsv"), IOError);
  auto tmp = std::filesystem::temp_directory_path() / "fqlat_bad_table.tsv";
  std::ofstream(tmp) << "n\tbound\tsource\n2\t3.0\tx\n3\t2.0\tx\n";
  CHECK_THROWS_AS(load_odlyzko(tmp.string()), IOError);
  std::filesystem::remove(tmp);
}

TEST_CASE("degree bound report") {
  BoundsReport r = degree_bound_report(load_odlyzko());
  CHECK(r.psi_cap == 53);
  CHECK(r.degree_cap == 33);
  REQUIRE(r.bands.size() == 7);
  CHECK(r.bands.back() == QBand{9, 9, 256});
  CHECK(r.bands[r.bands.size() - 2] == QBand{10, 10, 32});
  CHECK(r.bands[r.bands.size() - 3] == QBand{11, 11, 16});
  // the published bands are implied by the computed ones
  std::vector<QBand> published = {{21, 33, 2}, {15, 20, 4}, {12, 14, 8}, {11, 11, 16}, {10, 10, 32}, {9, 9, 256}};
  CHECK(bands_imply(r, published));
  CHECK(r.slack_34 > 0.38);
}

TEST_CASE("cap is stable under perturbations below the slack at n = 34") {
  OdlyzkoTable t = load_odlyzko();
  BoundsReport base = degree_bound_report(t);
  for (double delta : {-0.3, -0.1, 0.1, 0.3}) {
    OdlyzkoTable p = t;
    p.bound[34] += delta;
    CHECK(degree_bound_report(p).degree_cap == base.degree_cap);
  }
}

TEST_CASE("missing degrees are reported") {
  OdlyzkoTable t = load_odlyzko();
  t.bound.erase(40);
  CHECK_THROWS_AS(degree_bound_report(t), TableGap);
}
