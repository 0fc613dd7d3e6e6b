#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "oracles.hpp"
#include "tracelab/intervals.hpp"
#include "tracelab/measure.hpp"
#include "tracelab/scaled.hpp"
#include "tracelab/tridiag.hpp"

using namespace tracelab;
using std::complex;

TEST_CASE("scaled complex: construction and examples") {
  auto x = ScaledComplex::make({1.5, 0.0}, 10);
  auto y = ScaledComplex::make({1.5, 0.0}, 20);
  auto p = x * y;
  CHECK(p.mantissa().real() == doctest::Approx(1.125).epsilon(1e-15));
  CHECK(p.exp2() == 31);

  auto z = ScaledComplex();
  CHECK(z.is_zero());
  CHECK((x + z).mantissa() == x.mantissa());
  CHECK((x + z).exp2() == x.exp2());

  // mantissa always lands in [1,2)
  auto w = ScaledComplex::from(complex<double>(3.0, 4.0));
  CHECK(std::abs(w.mantissa()) >= 1.0);
  CHECK(std::abs(w.mantissa()) < 2.0);
  CHECK(std::abs(w.to_complex() - complex<double>(3.0, 4.0)) < 1e-14);
}

TEST_CASE("scaled complex: log round trip over the full double range") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> mag(-300.0, 300.0);
  std::uniform_real_distribution<double> ang(0.0, 6.28318530717958648);
  for (int i = 0; i < 10000; ++i) {
    double lg = mag(rng) * 2.302585092994045684;  // ln(10^mag)
    double a = ang(rng);
    // build the value from its log directly; compare log_abs against it
    double rem = std::fmod(lg, 0.693147180559945309);
    auto e = std::llround((lg - rem) / 0.693147180559945309);
    auto v = ScaledComplex::make(
        {std::exp(rem) * std::cos(a), std::exp(rem) * std::sin(a)}, e);
    double back = v.log_abs();
    CHECK(std::fabs(back - lg) <= 1e-12 * std::max(1.0, std::fabs(lg)));
  }
  // double round trip as well
  std::uniform_real_distribution<double> expo(-299.0, 299.0);
  for (int i = 0; i < 10000; ++i) {
    double d = std::pow(10.0, expo(rng));
    auto v = ScaledComplex::from(d);
    CHECK(std::fabs(v.log_abs() - std::log(d)) <=
          1e-12 * std::max(1.0, std::fabs(std::log(d))));
  }
}

TEST_CASE("scaled complex: e^1000 by repeated squaring") {
  // e^1000 = (e^8)^125: build e^8 exactly in doubles, then power up scaled
  auto e8 = ScaledComplex::from(std::exp(8.0));
  auto acc = ScaledComplex::from(1.0);
  for (int i = 0; i < 125; ++i) acc = acc * e8;
  CHECK(std::fabs(acc.log_abs() - 1000.0) <= 1e-9 * 1000.0);
}

TEST_CASE("scaled complex: multiplication adds logs") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    auto a = ScaledComplex::make({u(rng) + 1.1, u(rng)}, std::int64_t(u(rng) * 1e6));
    auto b = ScaledComplex::make({u(rng) + 1.1, u(rng)}, std::int64_t(u(rng) * 1e6));
    double expect = a.log_abs() + b.log_abs();
    CHECK(std::fabs((a * b).log_abs() - expect) <=
          1e-10 * std::max(1.0, std::fabs(expect)));
  }
}

TEST_CASE("scaled complex: addition drops far-smaller term") {
  auto big = ScaledComplex::make({1.25, 0.0}, 1000);
  auto small = ScaledComplex::make({1.9, 0.3}, 1000 - 129);
  auto s = big + small;
  CHECK(s.mantissa() == big.mantissa());
  CHECK(s.exp2() == big.exp2());
  // within the gap the term is kept
  auto near = ScaledComplex::make({1.0, 0.0}, 1000 - 30);
  auto t = big + near;
  CHECK(std::fabs(t.mantissa().real() - (1.25 + std::ldexp(1.0, -30))) < 1e-15);
}

TEST_CASE("scaled complex: errors") {
  CHECK_THROWS_AS(ScaledComplex().log_abs(), LogOfZero);
  auto huge = ScaledComplex::make({1.5, 0.0}, std::int64_t(1) << 61);
  CHECK_THROWS_AS(huge * huge * huge, ExponentOverflow);
}

TEST_CASE("scaled complex: sqrt and recip") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 500; ++i) {
    auto a = ScaledComplex::make({u(rng) + 1.2, u(rng)},
                                 std::int64_t(u(rng) * 1e5) * 2 + (i % 2));
    auto s = a.sqrt();
    CHECK(std::fabs((s * s).log_abs() - a.log_abs()) <= 1e-10);
    auto r = a.recip();
    CHECK(std::fabs((a * r).log_abs()) <= 1e-12);
  }
}

TEST_CASE("scaled mat2: det of products stays 1") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  auto mat = [&](double e) {
    ScaledMat2 m;
    m.a = ScaledComplex::from(e);
    m.b = ScaledComplex::from(-1.0);
    m.c = ScaledComplex::from(1.0);
    m.d = ScaledComplex();
    return m;
  };
  // short product: determinant recoverable to full precision
  ScaledMat2 p = ScaledMat2::identity();
  for (int i = 0; i < 6; ++i) p = mat(u(rng) + 3.0) * p;
  CHECK(std::fabs(p.det().log_abs()) < 1e-8);  // |det| == 1 up to rounding
  // adjugate inverts
  ScaledMat2 q = p * p.adjugate();
  CHECK(std::fabs(q.a.to_complex().real() - 1.0) < 1e-8);
  CHECK(std::fabs(q.d.to_complex().real() - 1.0) < 1e-8);
  CHECK(std::fabs(q.b.to_complex().real()) < 1e-8);

  // long product: det extraction is hopeless in 53-bit mantissas (the two
  // cofactor products agree to ~2^-53 relative, their difference is noise),
  // but the leading orders must match exactly
  for (int i = 0; i < 200; ++i) p = mat(u(rng) + 3.0) * p;
  double lad = (p.a * p.d).log_abs();
  double lbc = (p.b * p.c).log_abs();
  CHECK(std::fabs(lad - lbc) < 1e-10 * std::fabs(lad));
}

TEST_CASE("tridiag: 1x1 and closed forms") {
  CHECK(tridiag_eigenvalues({5.0}, {})[0] == doctest::Approx(5.0));

  // L=3 free Laplacian: -sqrt2, 0, sqrt2
  auto e3 = tridiag_eigenvalues({0, 0, 0}, {1, 1});
  REQUIRE(e3.size() == 3);
  CHECK(e3[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-9));
  CHECK(e3[1] == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(e3[2] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-9));

  // L=50 free Laplacian against 2 cos(j pi / 51)
  int L = 50;
  auto eigs = tridiag_eigenvalues(std::vector<double>(L, 0.0),
                                  std::vector<double>(L - 1, 1.0));
  auto expect = oracle::free_dirichlet(L);
  REQUIRE(eigs.size() == std::size_t(L));
  for (int j = 0; j < L; ++j)
    CHECK(std::fabs(eigs[j] - expect[j]) < 1e-9);
}

TEST_CASE("tridiag: against brute-force characteristic polynomial, L<=8") {
  std::mt19937_64 rng(2026);
  std::uniform_real_distribution<double> ud(-2.0, 2.0);
  std::uniform_real_distribution<double> uo(0.2, 2.0);
  for (int trial = 0; trial < 30; ++trial) {
    int L = 2 + int(rng() % 7);  // 2..8
    std::vector<double> d(L), o(L - 1);
    for (auto& x : d) x = ud(rng);
    for (auto& x : o) x = uo(rng);
    auto fast = tridiag_eigenvalues(d, o);
    auto slow = oracle::brute_tridiag(d, o);
    REQUIRE(fast.size() == slow.size());
    for (std::size_t j = 0; j < fast.size(); ++j)
      CHECK(std::fabs(fast[j] - slow[j]) < 1e-8);
  }
}

TEST_CASE("tridiag: diagonal matrix and degenerate off-diagonal") {
  auto eigs = tridiag_eigenvalues({3.0, -1.0, 2.0}, {0.0, 0.0});
  REQUIRE(eigs.size() == 3);
  CHECK(eigs[0] == doctest::Approx(-1.0).epsilon(1e-9));
  CHECK(eigs[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(eigs[2] == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("tridiag: sturm counts are monotone in x") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> d(40), o(39);
  for (auto& x : d) x = u(rng);
  for (auto& x : o) x = u(rng);
  std::vector<double> o2(39);
  for (int i = 0; i < 39; ++i) o2[i] = o[i] * o[i];
  int prev = -1;
  for (double x = -8.0; x <= 8.0; x += 0.05) {
    int c = sturm_count_below(d, o2, x);
    CHECK(c >= prev);
    prev = c;
  }
  CHECK(prev == 40);
}

TEST_CASE("spectral measure: cdf basics") {
  auto m = SpectralMeasure::uniform_on({1.0, 2.0, 3.0, 4.0});
  CHECK(m.cdf(0.5) == 0.0);
  CHECK(m.cdf(2.5) == doctest::Approx(0.5));
  CHECK(m.cdf(2.0) == doctest::Approx(0.5));   // right continuity: atom included
  CHECK(m.cdf_left(2.0) == doctest::Approx(0.25));
  CHECK(m.cdf(9.0) == doctest::Approx(1.0));
  CHECK(m.total_mass() == doctest::Approx(1.0));
  // monotone on a sweep
  double prev = -1;
  for (double x = 0; x < 5; x += 0.01) {
    double c = m.cdf(x);
    CHECK(c >= prev);
    prev = c;
  }
}

TEST_CASE("kolmogorov distance: examples") {
  auto m = SpectralMeasure::uniform_on({0.0, 1.0, 2.0});
  CHECK(kolmogorov_distance(m, m) == 0.0);

  auto d0 = SpectralMeasure::uniform_on({0.0});
  auto d1 = SpectralMeasure::uniform_on({1.0});
  CHECK(kolmogorov_distance(d0, d1) == doctest::Approx(1.0));

  auto u01 = SpectralMeasure::uniform_on({0.0, 1.0});
  CHECK(kolmogorov_distance(u01, d0) == doctest::Approx(0.5));

  auto bad = SpectralMeasure({0.0}, {0.5});
  CHECK_THROWS_AS(kolmogorov_distance(bad, d0), NotProbability);
}

TEST_CASE("kolmogorov vs continuous cdf: discretized arcsine law") {
  auto m = SpectralMeasure::uniform_on(oracle::arcsine_atoms(2000));
  double k = kolmogorov_vs_cdf(m, oracle::arcsine_cdf);
  CHECK(k < 1e-3);  // quantile atoms: deviation ~ 1/(2n)
  CHECK(k > 0);
}

TEST_CASE("log potential: examples") {
  auto d0 = SpectralMeasure::uniform_on({0.0});
  CHECK(log_potential(d0, {std::exp(1.0), 0.0}) == doctest::Approx(1.0));

  auto pm1 = SpectralMeasure::uniform_on({-1.0, 1.0});
  CHECK(log_potential(pm1, {0.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-12));

  // arcsine discretization reproduces the free Lyapunov exponent at E=3
  auto m = SpectralMeasure::uniform_on(oracle::arcsine_atoms(2000));
  CHECK(std::fabs(log_potential(m, {3.0, 0.0}) - oracle::GAMMA0_AT_3) < 2e-3);

  // AtAtom sentinel
  CHECK(std::isinf(log_potential(d0, {0.0, 0.0})));
  CHECK(std::isinf(log_potential(pm1, {1.0, 1e-15})));
  CHECK(!std::isinf(log_potential(pm1, {1.0, 1e-3})));
}

TEST_CASE("spectral measure: condensed keeps mass and potential far away") {
  auto m = SpectralMeasure::uniform_on(oracle::arcsine_atoms(4000));
  auto c = m.condensed(512);
  CHECK(c.size() == 512);
  CHECK(c.total_mass() == doctest::Approx(1.0).epsilon(1e-12));
  for (double x : {3.0, -4.0, 10.0}) {
    CHECK(std::fabs(log_potential(c, {x, 0.5}) - log_potential(m, {x, 0.5})) <
          1e-5);
  }
}

TEST_CASE("interval set: from_samples and measures") {
  auto s = IntervalSet::from_samples({0.0, 0.1, 0.2, 0.9, 1.0}, 0.1);
  REQUIRE(s.size() == 2);
  CHECK(s.parts()[0].lo == doctest::Approx(0.0));
  CHECK(s.parts()[0].hi == doctest::Approx(0.2));
  CHECK(s.parts()[1].lo == doctest::Approx(0.9));
  CHECK(s.total_length() == doctest::Approx(0.3));
  CHECK(s.contains(0.15));
  CHECK(!s.contains(0.5));
  CHECK(s.distance_to(0.55) == doctest::Approx(0.35));

  IntervalSet merged(std::vector<Interval>{{0.0, 1.0}, {0.5, 2.0}, {3.0, 4.0}});
  CHECK(merged.size() == 2);
  CHECK(merged.total_length() == doctest::Approx(3.0));
}

TEST_CASE("interval set: hausdorff distance") {
  IntervalSet a(std::vector<Interval>{{0.0, 1.0}});
  IntervalSet b(std::vector<Interval>{{0.0, 3.0}});
  CHECK(hausdorff_distance(a, b) == doctest::Approx(2.0));
  CHECK(hausdorff_distance(a, a) == 0.0);

  // gap midpoint matters: A covers the gap of B
  IntervalSet c(std::vector<Interval>{{0.0, 4.0}});
  IntervalSet d(std::vector<Interval>{{0.0, 1.0}, {3.0, 4.0}});
  CHECK(hausdorff_distance(c, d) == doctest::Approx(1.0));

  CHECK_THROWS_AS(hausdorff_distance(a, IntervalSet()), EmptySet);
}

TEST_CASE("interval set: subset queries") {
  IntervalSet inner(std::vector<Interval>{{0.1, 0.4}, {0.6, 0.9}});
  IntervalSet outer(std::vector<Interval>{{0.0, 1.0}});
  CHECK(inner.subset_of(outer));
  CHECK(!outer.subset_of(inner));
}

TEST_CASE("box count: documented boundary convention") {
  IntervalSet u(std::vector<Interval>{{0.0, 1.0}});
  CHECK(u.box_count(0.1) == 10);   // right endpoint on a grid line: no new box
  CHECK(u.box_count(0.3) == 4);    // 0.9..1.0 needs a fourth box
  IntervalSet p(std::vector<Interval>{{0.5, 0.5}});
  CHECK(p.box_count(0.25) == 1);
  IntervalSet neg(std::vector<Interval>{{-0.25, 0.25}});
  CHECK(neg.box_count(0.25) == 2);
}

TEST_CASE("box dimension: unit interval and cantor set") {
  IntervalSet u(std::vector<Interval>{{0.0, 1.0}});
  std::vector<double> eps;
  for (int k = 2; k <= 7; ++k) eps.push_back(std::pow(2.0, -k));
  CHECK(box_dimension(u, eps) == doctest::Approx(1.0).epsilon(0.02));

  std::vector<Interval> cs;
  for (auto [a, b] : oracle::cantor(8)) cs.push_back({a, b});
  IntervalSet cantor(std::move(cs));
  std::vector<double> eps3;
  for (int k = 1; k <= 6; ++k) eps3.push_back(std::pow(3.0, -k));
  double dim = box_dimension(cantor, eps3);
  CHECK(dim == doctest::Approx(std::log(2.0) / std::log(3.0)).epsilon(0.02));

  CHECK_THROWS_AS(box_dimension(u, {0.1}), InvalidArgument);
}
