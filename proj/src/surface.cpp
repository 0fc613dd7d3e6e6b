#include "tracelab/surface.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "tracelab/errors.hpp"

namespace tracelab {

Complex fricke_invariant(Complex x, Complex y, Complex z) {
  return x * x + y * y + z * z - x * y * z;
}

SurfacePoint surface_point(Complex x, Complex y, Complex z, Complex D,
                           double tol) {
  double scale = std::norm(x) + std::norm(y) + std::norm(z);
  double resid = std::abs(fricke_invariant(x, y, z) - D);
  if (resid > tol * std::max(1.0, scale))
    throw FrickeMismatch("point is off the surface: residual " +
                         std::to_string(resid));
  return {ScaledComplex::from(x), ScaledComplex::from(y),
          ScaledComplex::from(z), D};
}

namespace {
double coord_log(const ScaledComplex& c) {
  return c.is_zero() ? -std::numeric_limits<double>::infinity() : c.log_abs();
}
}  // namespace

double log_norm(const SurfacePoint& p) {
  return std::max({coord_log(p.x), coord_log(p.y), coord_log(p.z)});
}

double fricke_residual(const SurfacePoint& p) {
  return std::abs(fricke_invariant(p.x.to_complex(), p.y.to_complex(),
                                   p.z.to_complex()) -
                  p.D);
}

ScaledComplex larger_quadratic_root(const ScaledComplex& z) {
  ScaledComplex q = z * ScaledComplex::from(0.5);
  ScaledComplex r = (q * q - ScaledComplex::from(1.0)).sqrt();
  if (r.is_zero()) return q;  // double root
  if (q.is_zero()) {
    // roots +-r of equal modulus; tie rule on r's direction
    Complex m = r.mantissa();
    if (std::fabs(m.real()) > 1e-12 * std::abs(m))
      return m.real() > 0.0 ? r : -r;
    return m.imag() > 0.0 ? r : -r;
  }
  // |q+r| vs |q-r| is decided by the sign of Re(q conj(r))
  ScaledComplex w = q * r.conj();
  Complex wm = w.mantissa();
  if (std::fabs(wm.real()) > 1e-12 * std::abs(wm))
    return wm.real() > 0.0 ? q + r : q - r;
  // modulus tie: candidates differ by 2r, prefer the more positive one
  Complex rm = r.mantissa();
  if (std::fabs(rm.real()) > 1e-12 * std::abs(rm))
    return rm.real() > 0.0 ? q + r : q - r;
  return rm.imag() > 0.0 ? q + r : q - r;
}

Mat2c lift_a(const SurfacePoint& p) {
  return {p.x.to_complex(), -1.0, 1.0, 0.0};
}

Mat2c lift_b(const SurfacePoint& p, bool other_root) {
  ScaledComplex t = larger_quadratic_root(p.z);
  if (other_root) t = t.recip();
  Complex tc = t.to_complex();
  return {0.0, tc, -1.0 / tc, p.y.to_complex()};
}

namespace {

struct ScaledLifts {
  ScaledMat2 A, B, Ainv, Binv;
  bool have_inv = false;
};

ScaledLifts make_lifts(const SurfacePoint& p, bool need_inverse) {
  ScaledLifts L;
  ScaledComplex one = ScaledComplex::from(1.0);
  L.A = {p.x, -one, one, ScaledComplex()};
  ScaledComplex t = larger_quadratic_root(p.z);
  L.B = {ScaledComplex(), t, -t.recip(), p.y};
  if (need_inverse) {
    L.Ainv = L.A.adjugate();  // det 1 throughout
    L.Binv = L.B.adjugate();
    L.have_inv = true;
  }
  return L;
}

}  // namespace

ScaledComplex word_trace(const SurfacePoint& p, const Word& w) {
  if (w.empty()) return ScaledComplex::from(2.0);  // trace of the identity
  if (w.size() > WORD_CAP)
    throw WordTooLong("word of length " + std::to_string(w.size()));
  bool need_inv = !is_positive_word(w);
  ScaledLifts L = make_lifts(p, need_inv);
  ScaledMat2 P = ScaledMat2::identity();
  for (char c : w) {
    const ScaledMat2* m = nullptr;
    switch (c) {
      case 'a': m = &L.A; break;
      case 'b': m = &L.B; break;
      case 'A': m = &L.Ainv; break;
      case 'B': m = &L.Binv; break;
      default:
        throw InvalidArgument(std::string("word_trace: bad letter '") + c + "'");
    }
    P = *m * P;  // products reverse: M(uv) = M(v) M(u)
  }
  return P.trace();
}

namespace {

TraceMap build_trace_map(const Substitution& sub, Complex D,
                         std::optional<Substitution> inverse) {
  Classification cls = classify(sub);
  if (!cls.unimodular)
    throw InvalidArgument("trace map needs |det| = 1 abelianization, got det " +
                          std::to_string(cls.M.det()));
  TraceMap tm;
  tm.sub = sub;
  tm.D = D;
  tm.wa = sub.image_a;
  tm.wb = sub.image_b;
  tm.wab = sub.image_a + sub.image_b;
  try {
    tm.abelian = abelian_data(sub);
  } catch (const NotHyperbolic&) {
    tm.abelian.reset();
  }
  if (!inverse && sub.image_a == "ab" && sub.image_b == "a")
    inverse = Substitution{"b", "Ba"};
  if (inverse) {
    Substitution lr = compose(sub, *inverse);
    Substitution rl = compose(*inverse, sub);
    if (free_reduce(lr.image_a) != "a" || free_reduce(lr.image_b) != "b" ||
        free_reduce(rl.image_a) != "a" || free_reduce(rl.image_b) != "b")
      throw InvalidInverse("supplied substitution does not invert " +
                           sub.str());
    tm.inverse = *inverse;
  }
  return tm;
}

}  // namespace

TraceMap trace_map(const Substitution& sub, Complex D) {
  return build_trace_map(sub, D, std::nullopt);
}

TraceMap trace_map(const Substitution& sub, Complex D,
                   const Substitution& inverse) {
  return build_trace_map(sub, D, inverse);
}

SurfacePoint trace_map_apply(const TraceMap& tm, const SurfacePoint& p) {
  return {word_trace(p, tm.wa), word_trace(p, tm.wb), word_trace(p, tm.wab),
          p.D};
}

SurfacePoint trace_map_apply_inverse(const TraceMap& tm,
                                     const SurfacePoint& p) {
  if (!tm.inverse)
    throw InverseWordsUnavailable("no inverse attached to this trace map");
  const Substitution& inv = *tm.inverse;
  return {word_trace(p, inv.image_a), word_trace(p, inv.image_b),
          word_trace(p, inv.image_a + inv.image_b), p.D};
}

const char* vertex_name(Vertex v) {
  switch (v) {
    case Vertex::X: return "[1:0:0:0]";
    case Vertex::Y: return "[0:1:0:0]";
    default: return "[0:0:1:0]";
  }
}

Vertex infinity_vertex(const TraceMap& tm, Direction dir) {
  // generic on-surface probe: x = y = 4 forces z^2 - 16 z + (32 - D) = 0
  Complex z0 = 8.0 + std::sqrt(Complex(32.0, 0.0) + tm.D);
  SurfacePoint p{ScaledComplex::from(4.0), ScaledComplex::from(4.0),
                 ScaledComplex::from(z0), tm.D};
  constexpr int STEPS = 25;
  constexpr int TAIL = 10;
  int last_argmax[TAIL];
  double last_gap[TAIL];
  for (int k = 0; k < STEPS; ++k) {
    p = dir == Direction::Forward ? trace_map_apply(tm, p)
                                  : trace_map_apply_inverse(tm, p);
    std::array<double, 3> lg = {coord_log(p.x), coord_log(p.y),
                                coord_log(p.z)};
    int arg = int(std::max_element(lg.begin(), lg.end()) - lg.begin());
    double top = lg[arg];
    lg[arg] = -std::numeric_limits<double>::infinity();
    double second = *std::max_element(lg.begin(), lg.end());
    if (k >= STEPS - TAIL) {
      last_argmax[k - (STEPS - TAIL)] = arg;
      last_gap[k - (STEPS - TAIL)] = top - second;
    }
  }
  if (log_norm(p) < std::log(1e8))
    throw NoEscapeDetected("probe stayed bounded after " +
                           std::to_string(STEPS) + " steps");
  for (int i = 1; i < TAIL; ++i) {
    if (last_argmax[i] != last_argmax[0] ||
        !(last_gap[i] > last_gap[i - 1] - 1e-9))
      throw NoEscapeDetected("dominant coordinate did not stabilize");
  }
  switch (last_argmax[0]) {
    case 0: return Vertex::X;
    case 1: return Vertex::Y;
    default: return Vertex::Z;
  }
}

}  // namespace tracelab
