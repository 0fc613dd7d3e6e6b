#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <complex>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tracelab/errors.hpp"
#include "tracelab/surface.hpp"

using namespace tracelab;
using std::complex;

static const Substitution FIB = Substitution::parse("a>ab;b>a");

// (2cos u, 2cos v, 2cos(u+v)) lies on the D = 4 surface for any complex u, v
static SurfacePoint random_d4_point(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Complex cu(u(rng), u(rng)), cv(u(rng), u(rng));
  Complex x = 2.0 * std::cos(cu), y = 2.0 * std::cos(cv),
          z = 2.0 * std::cos(cu + cv);
  return surface_point(x, y, z, 4.0);
}

TEST_CASE("fricke invariant and checked construction") {
  CHECK(fricke_invariant(2.0, 2.0, 2.0) == Complex(4.0));
  CHECK(fricke_invariant(3.0, 3.0, 7.0) == Complex(4.0));  // s(3) at kappa=0
  CHECK(fricke_invariant(0.0, 0.0, 0.0) == Complex(0.0));

  SurfacePoint p = surface_point(3.0, 3.0, 7.0, 4.0);
  CHECK(p.x.to_complex().real() == doctest::Approx(3.0));
  CHECK(log_norm(p) == doctest::Approx(std::log(7.0)).epsilon(1e-14));
  CHECK(fricke_residual(p) < 1e-12);
  CHECK_THROWS_AS(surface_point(3.0, 3.0, 7.0, 5.0), FrickeMismatch);
  CHECK_THROWS_AS(surface_point(3.0, 3.1, 7.0, 4.0), FrickeMismatch);

  // large coordinates: relative tolerance admits honest on-surface points
  double x = 2.0 * std::cosh(3.0), y = 2.0 * std::cosh(4.0),
         z = 2.0 * std::cosh(7.0);
  CHECK_NOTHROW(surface_point(x, y, z, 4.0));

  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    SurfacePoint q = random_d4_point(rng);
    CHECK(fricke_residual(q) < 1e-10);
  }
}

TEST_CASE("larger quadratic root of t^2 - z t + 1") {
  // z = 3: roots (3 +- sqrt5)/2, larger is phi^2
  auto t = larger_quadratic_root(ScaledComplex::from(3.0));
  CHECK(t.to_complex().real() ==
        doctest::Approx(oracle::PHI * oracle::PHI).epsilon(1e-14));

  // z = 0: roots +-i, tie resolved to +i
  t = larger_quadratic_root(ScaledComplex::from(0.0));
  CHECK(t.to_complex().imag() == doctest::Approx(1.0));
  CHECK(t.to_complex().real() == doctest::Approx(0.0));

  // z = 2: double root 1
  t = larger_quadratic_root(ScaledComplex::from(2.0));
  CHECK(t.to_complex().real() == doctest::Approx(1.0));

  // z = 5i: both roots imaginary, larger has modulus (5+sqrt29)/2
  t = larger_quadratic_root(ScaledComplex::from(Complex(0.0, 5.0)));
  CHECK(std::abs(t.to_complex()) ==
        doctest::Approx((5.0 + std::sqrt(29.0)) / 2.0).epsilon(1e-14));

  // t + 1/t = z and |t| >= 1 across random complex z
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int i = 0; i < 300; ++i) {
    Complex z(u(rng), u(rng));
    auto tt = larger_quadratic_root(ScaledComplex::from(z));
    Complex s = tt.to_complex() + 1.0 / tt.to_complex();
    CHECK(std::abs(s - z) < 1e-12 * std::max(1.0, std::abs(z)));
    CHECK(std::abs(tt.to_complex()) >= 1.0 - 1e-12);
  }
}

TEST_CASE("lifts realize the coordinates as traces") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    SurfacePoint p = random_d4_point(rng);
    Mat2c A = lift_a(p), B = lift_b(p);
    Complex x = p.x.to_complex(), y = p.y.to_complex(), z = p.z.to_complex();
    CHECK(std::abs(A.det() - 1.0) < 1e-12);
    CHECK(std::abs(B.det() - 1.0) < 1e-12);
    CHECK(std::abs(A.trace() - x) < 1e-12);
    CHECK(std::abs(B.trace() - y) < 1e-12);
    CHECK(std::abs((A * B).trace() - z) < 1e-11);
  }
}

TEST_CASE("word traces: Fricke identities and root independence") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 100; ++i) {
    SurfacePoint p = random_d4_point(rng);
    Complex x = p.x.to_complex(), y = p.y.to_complex(), z = p.z.to_complex();
    auto wt = [&](const Word& w) { return word_trace(p, w).to_complex(); };

    CHECK(std::abs(wt("a") - x) < 1e-12);
    CHECK(std::abs(wt("b") - y) < 1e-12);
    CHECK(std::abs(wt("ab") - z) < 1e-11);
    CHECK(std::abs(wt("aba") - (x * z - y)) < 1e-10);
    CHECK(std::abs(wt("Ab") - (x * y - z)) < 1e-10);
    CHECK(std::abs(wt("aA") - 2.0) < 1e-12);  // empty after reduction

    // traces are a class function: cyclic permutations agree
    CHECK(std::abs(wt("aab") - wt("aba")) < 1e-10);
    CHECK(std::abs(wt("abb") - wt("bab")) < 1e-10);

    // the reciprocal root gives a conjugate representation: same traces
    Mat2c A = lift_a(p), B2 = lift_b(p, true);
    Mat2c prod = Mat2c::identity();
    for (char c : Word("abab"))  // M(abab) = B A B A reversed accumulation
      prod = (c == 'a' ? A : B2) * prod;
    CHECK(std::abs(prod.trace() - wt("abab")) < 1e-9);
    prod = Mat2c::identity();
    for (char c : Word("aabb")) prod = (c == 'a' ? A : B2) * prod;
    CHECK(std::abs(prod.trace() - wt("aabb")) < 1e-9);
  }
}

TEST_CASE("word trace equals reversed product of explicit transfer matrices") {
  // at s(E) the letter lifts are trace-equivalent to the transfer matrices
  // [[E-kappa,-1],[1,0]], [[E,-1],[1,0]]; any word trace must agree
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int i = 0; i < 50; ++i) {
    double kappa = u(rng);
    Complex E(u(rng) * 2.0, u(rng));
    Complex x = E - kappa, y = E, z = E * (E - kappa) - 2.0;
    SurfacePoint p = surface_point(x, y, z, 4.0 + kappa * kappa);
    Mat2c Ma{E - kappa, -1.0, 1.0, 0.0}, Mb{E, -1.0, 1.0, 0.0};
    const Word words[] = {"a",    "b",    "ab",   "ba",    "aab",
                          "abab", "abba", "babb", "aabab", "ababa"};
    for (const Word& w : words) {
      Mat2c prod = Mat2c::identity();
      for (char c : w) prod = (c == 'a' ? Ma : Mb) * prod;
      CHECK(std::abs(word_trace(p, w).to_complex() - prod.trace()) < 1e-9);
    }
  }
}

TEST_CASE("trace map: Fibonacci canonical form (z, x, xz - y)") {
  TraceMap tm = trace_map(FIB, 4.0);
  CHECK(tm.abelian.has_value());
  CHECK(tm.abelian->lambda == doctest::Approx(oracle::PHI).epsilon(1e-14));
  CHECK(tm.inverse.has_value());  // recognized automatically

  std::mt19937_64 rng(51);
  for (int i = 0; i < 100; ++i) {
    SurfacePoint p = random_d4_point(rng);
    Complex x = p.x.to_complex(), y = p.y.to_complex(), z = p.z.to_complex();
    SurfacePoint q = trace_map_apply(tm, p);
    CHECK(std::abs(q.x.to_complex() - z) < 1e-11);
    CHECK(std::abs(q.y.to_complex() - x) < 1e-11);
    CHECK(std::abs(q.z.to_complex() - (x * z - y)) < 1e-10);
    CHECK(q.D == p.D);
    CHECK(fricke_residual(q) < 1e-9);

    SurfacePoint r = trace_map_apply_inverse(tm, p);
    CHECK(std::abs(r.x.to_complex() - y) < 1e-11);
    CHECK(std::abs(r.y.to_complex() - (x * y - z)) < 1e-10);
    CHECK(std::abs(r.z.to_complex() - x) < 1e-11);

    // roundtrip
    SurfacePoint rt = trace_map_apply_inverse(tm, q);
    CHECK(std::abs(rt.x.to_complex() - x) < 1e-9);
    CHECK(std::abs(rt.y.to_complex() - y) < 1e-9);
    CHECK(std::abs(rt.z.to_complex() - z) < 1e-9);
  }
}

TEST_CASE("trace map: explicit inverse for a>ab;b>aab") {
  Substitution sub = Substitution::parse("a>ab;b>aab");
  Substitution inv{"bA", "aBa"};
  TraceMap tm = trace_map(sub, 4.0, inv);
  std::mt19937_64 rng(61);
  for (int i = 0; i < 50; ++i) {
    SurfacePoint p = random_d4_point(rng);
    SurfacePoint q = trace_map_apply(tm, p);
    SurfacePoint rt = trace_map_apply_inverse(tm, q);
    CHECK(std::abs(rt.x.to_complex() - p.x.to_complex()) < 1e-9);
    CHECK(std::abs(rt.y.to_complex() - p.y.to_complex()) < 1e-9);
    CHECK(std::abs(rt.z.to_complex() - p.z.to_complex()) < 1e-9);
    CHECK(fricke_residual(q) < 1e-8);
  }
  CHECK_THROWS_AS(trace_map(sub, 4.0, Substitution{"b", "Ba"}),
                  InvalidInverse);
}

TEST_CASE("trace map: invariant drift stays tiny while coordinates grow") {
  TraceMap tm = trace_map(FIB, 4.0);
  // E = 2.5 escapes at kappa = 0
  SurfacePoint p = surface_point(2.5, 2.5, 2.5 * 2.5 - 2.0, 4.0);
  int steps = 0;
  while (log_norm(p) <= std::log(1e3) && steps < 100) {
    p = trace_map_apply(tm, p);
    ++steps;
    double scale = std::exp(2.0 * log_norm(p));
    CHECK(fricke_residual(p) <= 1e-6 * std::max(1.0, scale));
  }
  CHECK(log_norm(p) > std::log(1e3));  // it did escape
}

TEST_CASE("infinity vertex") {
  TraceMap tm = trace_map(FIB, 4.0);
  CHECK(infinity_vertex(tm, Direction::Forward) == Vertex::Z);
  CHECK(infinity_vertex(tm, Direction::Inverse) == Vertex::Y);

  TraceMap tm5 = trace_map(FIB, 5.0);  // kappa = 1
  CHECK(infinity_vertex(tm5, Direction::Forward) == Vertex::Z);
  CHECK(infinity_vertex(tm5, Direction::Inverse) == Vertex::Y);

  CHECK(std::string(vertex_name(Vertex::Z)) == "[0:0:1:0]");

  // a finite-order automorphism never escapes
  TraceMap swap_ab = trace_map(Substitution::parse("a>b;b>a"), 4.0);
  CHECK_THROWS_AS(infinity_vertex(swap_ab, Direction::Forward),
                  NoEscapeDetected);
}

TEST_CASE("trace map errors") {
  CHECK_THROWS_AS(trace_map(Substitution::parse("a>ab;b>aa"), 4.0),
                  InvalidArgument);  // det -2
  TraceMap tm = trace_map(Substitution::parse("a>ab;b>aab"), 4.0);  // no inverse
  SurfacePoint p = surface_point(3.0, 3.0, 7.0, 4.0);
  CHECK_THROWS_AS(trace_map_apply_inverse(tm, p), InverseWordsUnavailable);
  CHECK_THROWS_AS(word_trace(p, "abc"), InvalidArgument);
}
