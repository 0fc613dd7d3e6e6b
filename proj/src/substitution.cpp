#include "tracelab/substitution.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <deque>
#include <set>
#include <tuple>

#include "tracelab/errors.hpp"

namespace tracelab {

namespace {

bool is_letter(char c) { return c == 'a' || c == 'b' || c == 'A' || c == 'B'; }

char invert_letter(char c) {
  return static_cast<char>(std::isupper(static_cast<unsigned char>(c))
                               ? std::tolower(static_cast<unsigned char>(c))
                               : std::toupper(static_cast<unsigned char>(c)));
}

void check_word(const Word& w, const char* what) {
  for (char c : w)
    if (!is_letter(c))
      throw InvalidArgument(std::string(what) + ": bad letter '" + c + "'");
}

}  // namespace

bool is_positive_word(const Word& w) {
  return std::none_of(w.begin(), w.end(), [](char c) {
    return std::isupper(static_cast<unsigned char>(c));
  });
}

Word word_inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(invert_letter(*it));
  return out;
}

Word free_reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (char c : w) {
    if (!out.empty() && out.back() == invert_letter(c))
      out.pop_back();
    else
      out.push_back(c);
  }
  return out;
}

Substitution Substitution::parse(const std::string& text) {
  Word images[2];
  bool seen[2] = {false, false};
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("rule syntax, column " + std::to_string(i + 1) + ": " + msg);
  };
  for (int rule = 0; rule < 2; ++rule) {
    skip_ws();
    if (i >= text.size()) fail("expected rule");
    char lhs = text[i];
    if (lhs != 'a' && lhs != 'b') fail("rule must start with 'a' or 'b'");
    ++i;
    skip_ws();
    if (i >= text.size() || text[i] != '>') fail("expected '>'");
    ++i;
    skip_ws();
    Word img;
    while (i < text.size() && is_letter(text[i])) img.push_back(text[i++]);
    if (img.empty()) fail("empty image");
    int slot = lhs == 'a' ? 0 : 1;
    if (seen[slot]) fail(std::string("duplicate rule for '") + lhs + "'");
    seen[slot] = true;
    images[slot] = img;
    skip_ws();
    if (rule == 0) {
      if (i >= text.size() || text[i] != ';') fail("expected ';'");
      ++i;
    }
  }
  skip_ws();
  if (i < text.size()) fail("trailing input");
  if (!seen[0] || !seen[1]) throw ParseError("need rules for both 'a' and 'b'");
  return {images[0], images[1]};
}

std::string Substitution::str() const {
  return "a>" + image_a + ";b>" + image_b;
}

bool Substitution::positive() const {
  return !image_a.empty() && !image_b.empty() && is_positive_word(image_a) &&
         is_positive_word(image_b);
}

Word substitute(const Substitution& sub, const Word& w, std::size_t cap) {
  check_word(w, "substitute");
  Word inv_a, inv_b;  // built lazily, most substitutions are positive
  Word out;
  for (char c : w) {
    const Word* img = nullptr;
    switch (c) {
      case 'a': img = &sub.image_a; break;
      case 'b': img = &sub.image_b; break;
      case 'A':
        if (inv_a.empty()) inv_a = word_inverse(sub.image_a);
        img = &inv_a;
        break;
      default:
        if (inv_b.empty()) inv_b = word_inverse(sub.image_b);
        img = &inv_b;
        break;
    }
    if (out.size() + img->size() > cap)
      throw WordTooLong("image exceeds " + std::to_string(cap) + " letters");
    out += *img;
  }
  return out;
}

Substitution compose(const Substitution& s, const Substitution& t,
                     std::size_t cap) {
  return {substitute(s, t.image_a, cap), substitute(s, t.image_b, cap)};
}

std::string IntMat2::str() const {
  return "[[" + std::to_string(a) + "," + std::to_string(b) + "],[" +
         std::to_string(c) + "," + std::to_string(d) + "]]";
}

IntMat2 abelianization(const Substitution& sub) {
  auto count = [](const Word& w, char lower) {
    std::int64_t n = 0;
    char upper = invert_letter(lower);
    for (char c : w) n += c == lower ? 1 : c == upper ? -1 : 0;
    return n;
  };
  check_word(sub.image_a, "abelianization");
  check_word(sub.image_b, "abelianization");
  return {count(sub.image_a, 'a'), count(sub.image_b, 'a'),
          count(sub.image_a, 'b'), count(sub.image_b, 'b')};
}

Classification classify(const Substitution& sub) {
  Classification c;
  c.M = abelianization(sub);
  c.positive = sub.positive();
  std::int64_t det = c.M.det(), tr = c.M.tr();
  c.unimodular = det == 1 || det == -1;
  c.hyperbolic = (det == 1 && tr > 2) || (det == -1 && tr != 0);
  return c;
}

namespace {

double spectral_radius(const IntMat2& M) {
  double t = static_cast<double>(M.tr());
  double d = static_cast<double>(M.det());
  double disc = t * t - 4.0 * d;
  if (disc <= 0.0) throw NotHyperbolic("complex or repeated eigenvalues");
  double r = (std::fabs(t) + std::sqrt(disc)) / 2.0;
  return r;
}

using MatKey = std::tuple<std::int64_t, std::int64_t, std::int64_t, std::int64_t>;

MatKey mat_key(const IntMat2& m) {
  // sign-normalized (C and -C conjugate alike)
  IntMat2 n = m;
  std::int64_t lead = n.a != 0 ? n.a : n.b != 0 ? n.b : n.c != 0 ? n.c : n.d;
  if (lead < 0) n = n.neg();
  return {n.a, n.b, n.c, n.d};
}

}  // namespace

AbelianData abelian_data(const Substitution& sub) {
  Classification cls = classify(sub);
  if (!cls.hyperbolic)
    throw NotHyperbolic("abelianization " + cls.M.str() + " (det " +
                        std::to_string(cls.M.det()) + ", tr " +
                        std::to_string(cls.M.tr()) + ") is not hyperbolic");
  const IntMat2 M = cls.M;

  // breadth-first search over PGL2(Z) conjugators built from the swap and
  // the two shears; the shallowest conjugator making C M C^-1 sign-definite
  // wins, with generator order breaking ties deterministically
  const IntMat2 gens[3] = {{0, 1, 1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};
  constexpr int MAX_DEPTH = 20;
  constexpr std::int64_t ENTRY_CAP = 100000;  // keeps C M C^-1 inside int64

  IntMat2 N{}, conj{};
  bool found = false;
  std::deque<std::pair<IntMat2, int>> queue;
  std::set<MatKey> visited;
  queue.emplace_back(IntMat2::identity(), 0);
  visited.insert(mat_key(IntMat2::identity()));
  while (!queue.empty() && !found) {
    auto [C, depth] = queue.front();
    queue.pop_front();
    IntMat2 Cinv = C.det() == 1 ? C.adjugate() : C.adjugate().neg();
    IntMat2 P = C * M * Cinv;
    if (P.nonnegative()) {
      N = P;
      conj = C;
      found = true;
    } else if (P.nonpositive()) {
      N = P.neg();
      conj = C;
      found = true;
    } else if (depth < MAX_DEPTH) {
      for (const IntMat2& g : gens) {
        IntMat2 C2 = g * C;
        if (std::abs(C2.a) > ENTRY_CAP || std::abs(C2.b) > ENTRY_CAP ||
            std::abs(C2.c) > ENTRY_CAP || std::abs(C2.d) > ENTRY_CAP)
          continue;
        if (visited.insert(mat_key(C2)).second) queue.emplace_back(C2, depth + 1);
      }
    }
  }
  if (!found)
    throw NormalFormNotFound("no non-negative conjugate of " + cls.M.str() +
                             " within depth " + std::to_string(MAX_DEPTH));

  AbelianData out;
  out.lambda = spectral_radius(M);
  out.N = N;
  out.conjugator = conj;

  // eigenvectors of N = [[p,q],[r,s]]; split (1,1) over the eigenbasis and
  // keep the component along the dominant line
  double p = static_cast<double>(N.a), q = static_cast<double>(N.b);
  double r = static_cast<double>(N.c), s = static_cast<double>(N.d);
  double lam = spectral_radius(N);  // equals out.lambda up to rounding
  double mu = (p + s) - lam;
  auto eigvec = [&](double ev, double& vx, double& vy) {
    // rows of N - ev I are proportional; take the better-conditioned kernel
    double n1 = std::hypot(ev - s, r), n2 = std::hypot(q, ev - p);
    if (n1 >= n2) {
      vx = (ev - s) / n1;
      vy = r / n1;
    } else {
      vx = q / n2;
      vy = (ev - p) / n2;
    }
  };
  double vx, vy, wx, wy;
  eigvec(lam, vx, vy);
  eigvec(mu, wx, wy);
  double det = vx * wy - vy * wx;
  if (std::fabs(det) < 1e-12)
    throw NumericalError("degenerate eigenbasis for " + N.str());
  double c1 = (wy - wx) / det;  // [v w] (c1,c2)^T = (1,1)^T
  out.alpha = c1 * vx;
  out.beta = c1 * vy;
  return out;
}

Word invariant_word_prefix(const Substitution& sub, std::size_t n,
                           std::size_t cap) {
  if (!sub.positive())
    throw InvalidArgument("invariant word needs a positive substitution");
  if (n > cap)
    throw WordTooLong("requested prefix exceeds cap " + std::to_string(cap));

  // find k <= 4 and a seed letter x with iota^k(x) beginning with x
  Substitution power = sub;
  for (int k = 1; k <= 4; ++k) {
    for (char x : {'a', 'b'}) {
      const Word& img = x == 'a' ? power.image_a : power.image_b;
      if (img.front() != x) continue;
      if (img.size() == 1) return Word(n, x);  // iota^k(x) = x
      // grow the fixed word; each pass maps a prefix of the invariant word
      // to a longer prefix, so truncating to n letters is sound
      Word w(1, x);
      while (w.size() < n) {
        Word next;
        next.reserve(std::min<std::size_t>(n + 8, cap));
        for (char c : w) {
          next += c == 'a' ? power.image_a : power.image_b;
          if (next.size() >= n) break;
        }
        w = std::move(next);
      }
      return w.substr(0, n);
    }
    if (k < 4) power = compose(power, sub, cap);
  }
  throw NoFixedSeed("no power <= 4 fixes the first letter of a seed");
}

std::vector<int> potential(const Substitution& sub, std::size_t n,
                           std::size_t cap) {
  Word w = invariant_word_prefix(sub, n, cap);
  std::vector<int> v(w.size());
  for (std::size_t i = 0; i < w.size(); ++i) v[i] = w[i] == 'a' ? 1 : 0;
  return v;
}

}  // namespace tracelab
