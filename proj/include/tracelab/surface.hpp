#pragma once
#include <complex>
#include <optional>

#include "tracelab/scaled.hpp"
#include "tracelab/substitution.hpp"

namespace tracelab {

using Complex = std::complex<double>;

// plain complex 2x2, row-major [[a,b],[c,d]]; fine while entries fit doubles
struct Mat2c {
  Complex a, b, c, d;

  static Mat2c identity() { return {1.0, 0.0, 0.0, 1.0}; }
  friend Mat2c operator*(const Mat2c& x, const Mat2c& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  Complex trace() const { return a + d; }
  Complex det() const { return a * d - b * c; }
  Mat2c adjugate() const { return {d, -b, -c, a}; }
};

// x^2 + y^2 + z^2 - xyz
Complex fricke_invariant(Complex x, Complex y, Complex z);

// Point of the cubic surface x^2+y^2+z^2-xyz = D.  Aggregate construction is
// the trusted path (used by the dynamics, which preserves the invariant
// algebraically); surface_point() checks the invariant first.
struct SurfacePoint {
  ScaledComplex x, y, z;
  Complex D;
};

// checked factory; throws FrickeMismatch when
// |fricke(x,y,z) - D| > tol * max(1, |x|^2+|y|^2+|z|^2)
SurfacePoint surface_point(Complex x, Complex y, Complex z, Complex D,
                           double tol = 1e-8);

// log of the sup-norm of the coordinates (-inf for the origin)
double log_norm(const SurfacePoint& p);
// |fricke(p) - D|; meaningful for moderate points only (double range)
double fricke_residual(const SurfacePoint& p);

// larger-modulus root of t^2 - z t + 1 = 0; modulus ties broken toward
// positive real part, then positive imaginary part
ScaledComplex larger_quadratic_root(const ScaledComplex& z);

// SL2 lifts realizing the coordinates as traces: tr A = x, tr B = y,
// tr(AB) = z.  lift_b(other_root) picks the reciprocal root of the
// z-quadratic; word traces do not depend on the choice.
Mat2c lift_a(const SurfacePoint& p);
Mat2c lift_b(const SurfacePoint& p, bool other_root = false);

// trace of M(w) where M maps letters to lifts and reverses products,
// M(uv) = M(v) M(u); inverse letters use the adjugate
ScaledComplex word_trace(const SurfacePoint& p, const Word& w);

// Polynomial self-map of the surface induced by a substitution: the image
// point is (tr M(iota(a)), tr M(iota(b)), tr M(iota(ab))).
struct TraceMap {
  Substitution sub;
  Complex D;
  Word wa, wb, wab;                 // images of a, b, ab under iota
  std::optional<AbelianData> abelian;  // present when sub is hyperbolic
  std::optional<Substitution> inverse;
};

// throws InvalidArgument unless |det| of the abelianization is 1
TraceMap trace_map(const Substitution& sub, Complex D);
// with an explicit inverse automorphism, verified by free reduction
TraceMap trace_map(const Substitution& sub, Complex D,
                   const Substitution& inverse);

SurfacePoint trace_map_apply(const TraceMap& tm, const SurfacePoint& p);
// throws InverseWordsUnavailable when no inverse is attached
SurfacePoint trace_map_apply_inverse(const TraceMap& tm, const SurfacePoint& p);

enum class Direction { Forward, Inverse };
enum class Vertex { X, Y, Z };
const char* vertex_name(Vertex v);

// Which coordinate hyperplane at infinity attracts escaping orbits: iterates
// a generic probe, requires genuine escape with a monotonically sharpening
// dominant coordinate, else throws NoEscapeDetected.
Vertex infinity_vertex(const TraceMap& tm, Direction dir);

}  // namespace tracelab
