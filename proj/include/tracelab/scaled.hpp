#pragma once
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>

#include "tracelab/errors.hpp"

namespace tracelab {

// Complex number stored as mantissa * 2^exp2 with |mantissa| in [1,2).
// Orbits of trace maps grow doubly exponentially, so the exponent must be a
// wide integer rather than the 11 bits of a double.  Zero is mantissa 0,
// exponent 0.  Additions drop the smaller term when the exponent gap exceeds
// ADD_GAP (it could not affect the 53-bit mantissa anyway).
class ScaledComplex {
 public:
  static constexpr std::int64_t ADD_GAP = 128;
  // Leave headroom so intermediate exponent sums cannot wrap.
  static constexpr std::int64_t EXP_LIMIT = std::int64_t(1) << 62;

  ScaledComplex() : m_(0.0, 0.0), e_(0) {}

  static ScaledComplex from(std::complex<double> v) {
    return normalized(v, 0);
  }
  static ScaledComplex from(double v) { return from(std::complex<double>(v, 0.0)); }
  // value = m * 2^e, normalized on entry
  static ScaledComplex make(std::complex<double> m, std::int64_t e) {
    return normalized(m, e);
  }

  std::complex<double> mantissa() const { return m_; }
  std::int64_t exp2() const { return e_; }
  bool is_zero() const { return m_ == std::complex<double>(0.0, 0.0); }

  // natural log of the modulus
  double log_abs() const {
    if (is_zero()) throw LogOfZero("log_abs of zero scaled value");
    return std::log(std::abs(m_)) + double(e_) * LN2;
  }

  // Exact only while 2^e fits in a double; used for moderate values and tests.
  std::complex<double> to_complex() const {
    if (is_zero()) return {0.0, 0.0};
    if (e_ > 1020 || e_ < -1020) {
      double s = (e_ > 0) ? std::numeric_limits<double>::infinity() : 0.0;
      return {m_.real() * s, m_.imag() * s};
    }
    double s = std::ldexp(1.0, int(e_));
    return {m_.real() * s, m_.imag() * s};
  }

  friend ScaledComplex operator+(const ScaledComplex& x, const ScaledComplex& y) {
    if (x.is_zero()) return y;
    if (y.is_zero()) return x;
    const ScaledComplex* big = &x;
    const ScaledComplex* small = &y;
    if (y.e_ > x.e_) { big = &y; small = &x; }
    std::int64_t gap = big->e_ - small->e_;
    if (gap > ADD_GAP) return *big;
    double s = std::ldexp(1.0, -int(gap));
    std::complex<double> m(big->m_.real() + small->m_.real() * s,
                           big->m_.imag() + small->m_.imag() * s);
    return normalized(m, big->e_);
  }
  friend ScaledComplex operator-(const ScaledComplex& x, const ScaledComplex& y) {
    return x + (-y);
  }
  ScaledComplex operator-() const {
    ScaledComplex r;
    r.m_ = -m_;
    r.e_ = e_;
    return r;
  }
  friend ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y) {
    if (x.is_zero() || y.is_zero()) return ScaledComplex();
    return normalized(x.m_ * y.m_, checked_add(x.e_, y.e_));
  }

  ScaledComplex conj() const {
    ScaledComplex r;
    r.m_ = std::conj(m_);
    r.e_ = e_;
    return r;
  }

  ScaledComplex recip() const {
    if (is_zero()) throw LogOfZero("reciprocal of zero scaled value");
    return normalized(1.0 / m_, -e_);
  }

  // principal square root (mantissa branch), exponent halved
  ScaledComplex sqrt() const {
    if (is_zero()) return ScaledComplex();
    std::complex<double> m = m_;
    std::int64_t e = e_;
    if (e & 1) {  // make the exponent even; works for negative e too
      e -= 1;
      m *= 2.0;
    }
    return normalized(std::sqrt(m), e / 2);
  }

 private:
  static constexpr double LN2 = 0.6931471805599453094172321214581766;

  static std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r) || r > EXP_LIMIT || r < -EXP_LIMIT)
      throw ExponentOverflow("scaled exponent overflow in multiply");
    return r;
  }

  static ScaledComplex normalized(std::complex<double> m, std::int64_t e) {
    ScaledComplex r;
    if (m == std::complex<double>(0.0, 0.0)) return r;
    double a = std::abs(m);
    if (!std::isfinite(a))
      throw NumericalError("non-finite mantissa in scaled normalization");
    int k = 0;
    std::frexp(a, &k);  // a = f * 2^k with f in [0.5, 1)
    // scale so the modulus lands in [1, 2)
    int shift = k - 1;
    if (shift != 0) {
      double s = std::ldexp(1.0, -shift);
      m = {m.real() * s, m.imag() * s};
      std::int64_t e2;
      if (__builtin_add_overflow(e, std::int64_t(shift), &e2) ||
          e2 > EXP_LIMIT || e2 < -EXP_LIMIT)
        throw ExponentOverflow("scaled exponent overflow in normalization");
      e = e2;
    }
    r.m_ = m;
    r.e_ = e;
    return r;
  }

  std::complex<double> m_;
  std::int64_t e_;
};

inline double log_abs(const ScaledComplex& z) { return z.log_abs(); }

// 2x2 matrix of scaled entries, row-major [[a,b],[c,d]].  Used for transfer
// matrix products and long word traces where entries overflow doubles.
struct ScaledMat2 {
  ScaledComplex a, b, c, d;

  static ScaledMat2 identity() {
    return {ScaledComplex::from(1.0), ScaledComplex(), ScaledComplex(),
            ScaledComplex::from(1.0)};
  }
  friend ScaledMat2 operator*(const ScaledMat2& x, const ScaledMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  ScaledComplex trace() const { return a + d; }
  ScaledComplex det() const { return a * d - b * c; }
  // inverse of a determinant-1 matrix
  ScaledMat2 adjugate() const { return {d, -b, -c, a}; }
};

}  // namespace tracelab
