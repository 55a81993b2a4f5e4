#include <doctest.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "qinvar/errors.hpp"
#include "qinvar/sweep.hpp"

using namespace qinvar;

TEST_CASE("n = 3 grid") {
  const std::vector<SweepRow> rows = sweep(3);
  REQUIRE(rows.size() == 27);
  CHECK(rows[0].p == 0.25);
  CHECK(rows[1].r == 0.5);
  CHECK(rows[3].q == 0.5);
  CHECK(rows[9].p == 0.5);

  const SweepRow& mid = rows[13];
  CHECK(mid.p == 0.5);
  CHECK(mid.q == 0.5);
  CHECK(mid.r == 0.5);
  CHECK(mid.K == 0.25);
  CHECK(mid.kind == ModelKind::StrictlyComplexQuantum);
}

TEST_CASE("invalid grid size") {
  CHECK_THROWS_AS(sweep(1), InvalidArgument);
  CHECK_THROWS_AS(sweep(-4), InvalidArgument);
}

TEST_CASE("row order does not depend on the worker count") {
  const std::vector<SweepRow> a = sweep(17, kDefaultEpsK, 1);
  const std::vector<SweepRow> b = sweep(17, kDefaultEpsK, 4);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].p == b[i].p);
    REQUIRE(a[i].q == b[i].q);
    REQUIRE(a[i].r == b[i].r);
    REQUIRE(a[i].K == b[i].K);
  }
  for (std::size_t i = 1; i < a.size(); ++i) {
    const auto key = [](const SweepRow& s) { return std::array<double, 3>{s.p, s.q, s.r}; };
    REQUIRE(key(a[i - 1]) < key(a[i]));
  }
}

TEST_CASE("csv output") {
  std::ostringstream out;
  write_sweep_csv(sweep(2), out);
  const std::string text = out.str();
  CHECK(text.rfind("p,q,r,K,class,normalized_form\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 9);
  CHECK(text.find('\r') == std::string::npos);
}

namespace {

double complex_fraction(int n) {
  const std::vector<SweepRow> rows = sweep(n);
  std::size_t complex_cells = 0;
  for (const SweepRow& s : rows) {
    if (s.kind == ModelKind::StrictlyComplexQuantum) ++complex_cells;
  }
  return static_cast<double>(complex_cells) / rows.size();
}

double monte_carlo_fraction() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int samples = 1000000;
  int hits = 0;
  for (int i = 0; i < samples; ++i) {
    const double p = u(rng), q = u(rng), r = u(rng);
    const double s = p + q + r - 1.0;
    if (4.0 * p * q * r - s * s > 0.0) ++hits;
  }
  return static_cast<double>(hits) / samples;
}

}  // namespace

TEST_CASE("volume: n = 99 complex fraction within 1% of Monte Carlo") {
  const double grid = complex_fraction(99);
  const double mc = monte_carlo_fraction();
  MESSAGE("grid fraction " << grid << ", Monte Carlo " << mc);
  CHECK(std::abs(grid - mc) <= 0.01 * mc);
}

TEST_CASE("volume: grid fraction converges to the Monte Carlo estimate") {
  const double mc = monte_carlo_fraction();
  // With cos alpha = 2p - 1 the region is the elliptope, volume pi^2/16.
  CHECK(std::abs(mc - std::numbers::pi * std::numbers::pi / 16.0) <= 2e-3);
  const double e50 = std::abs(complex_fraction(50) - mc);
  const double e99 = std::abs(complex_fraction(99) - mc);
  const double e199 = std::abs(complex_fraction(199) - mc);
  // The excluded boundary slabs shrink like 1/(n+1).
  CHECK(e99 < e50);
  CHECK(e199 < 0.6 * e99);
}

TEST_CASE("real rows lie on a real branch") {
  // Off-grid band wide enough to catch grid points near K = 0.
  const double eps = 1e-4;
  const std::vector<SweepRow> rows = sweep(60, eps);
  int real_rows = 0;
  for (const SweepRow& s : rows) {
    if (s.kind != ModelKind::RealQuantum) continue;
    ++real_rows;
    const double a = std::sqrt(s.p * s.q);
    const double b = std::sqrt((1 - s.p) * (1 - s.q));
    const double sr = std::sqrt(s.r);
    const double d = std::min(std::abs(sr - (a + b)), std::abs(sr - std::abs(a - b)));
    // |K| <= eps moves sqrt(r) by at most about eps / (4 sqrt(pq r (1-p)(1-q))).
    const double slack = eps / (4.0 * a * b * sr);
    CHECK(d <= slack);
  }
  CHECK(real_rows > 0);
}
