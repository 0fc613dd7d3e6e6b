#pragma once
#include <cstdint>
#include <string>
#include <vector>

namespace tracelab {

// Words over the free group on {a, b}: lowercase letters are generators,
// uppercase their inverses ('A' = a^-1).  This matches the CLI rule syntax
// "a>ab;b>a".
using Word = std::string;

bool is_positive_word(const Word& w);
Word word_inverse(const Word& w);
// cancel adjacent x x^-1 pairs
Word free_reduce(const Word& w);

// Endomorphism of the free group, given by the images of the two generators.
struct Substitution {
  Word image_a;
  Word image_b;

  // parse "a>ab;b>a" (whitespace around tokens ignored)
  static Substitution parse(const std::string& text);
  std::string str() const;
  bool positive() const;
  bool operator==(const Substitution& o) const = default;
};

inline constexpr std::size_t WORD_CAP = 1000000;  // materialized-word limit

// homomorphic image of w; throws WordTooLong when the image exceeds cap
Word substitute(const Substitution& sub, const Word& w,
           std::size_t cap = WORD_CAP);
// s after t: image of x is s(t(x))
Substitution compose(const Substitution& s, const Substitution& t,
                     std::size_t cap = WORD_CAP);

// Integer 2x2 matrix, row-major [[a,b],[c,d]].
struct IntMat2 {
  std::int64_t a, b, c, d;

  static IntMat2 identity() { return {1, 0, 0, 1}; }
  friend IntMat2 operator*(const IntMat2& x, const IntMat2& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
            x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  IntMat2 neg() const { return {-a, -b, -c, -d}; }
  std::int64_t det() const { return a * d - b * c; }
  std::int64_t tr() const { return a + d; }
  // inverse times det (adjugate); for det = +-1 the inverse is +-adjugate
  IntMat2 adjugate() const { return {d, -b, -c, a}; }
  bool nonnegative() const { return a >= 0 && b >= 0 && c >= 0 && d >= 0; }
  bool nonpositive() const { return a <= 0 && b <= 0 && c <= 0 && d <= 0; }
  bool operator==(const IntMat2& o) const = default;
  std::string str() const;
};

// column k holds the (net a-count, net b-count) of the image of letter k
IntMat2 abelianization(const Substitution& sub);

struct Classification {
  IntMat2 M;
  bool positive;
  bool unimodular;  // |det M| == 1
  bool hyperbolic;  // (det 1 and tr > 2) or (det -1 and tr != 0)
};
Classification classify(const Substitution& sub);

// Spectral data of the abelianization of a hyperbolic substitution:
//  lambda      spectral radius of M,
//  N           non-negative matrix PGL2(Z)-conjugate to M (normal form),
//  conjugator  C with N = +-C M C^-1,
//  alpha,beta  coordinates of the projection of (1,1) onto the Perron
//              eigenline of N along the other eigenline.
struct AbelianData {
  double lambda;
  IntMat2 N;
  IntMat2 conjugator;
  double alpha;
  double beta;
};
// throws NotHyperbolic / NormalFormNotFound
AbelianData abelian_data(const Substitution& sub);

// First n letters of the substitution-invariant one-sided infinite word:
// a seed letter x with iota^k(x) beginning with x is searched for k <= 4, and
// the fixed word of iota^k is grown from it.  A seed with iota^k(x) = x yields
// the constant word x^infinity.  Requires a positive substitution.
Word invariant_word_prefix(const Substitution& sub, std::size_t n,
                           std::size_t cap = WORD_CAP);

// v(i) = 1 where the invariant word has letter a, else 0
std::vector<int> potential(const Substitution& sub, std::size_t n,
                           std::size_t cap = WORD_CAP);

}  // namespace tracelab
