#include <algorithm>
#include <vector>

#include "pnf/errors.hpp"
#include "pnf/nf.hpp"

namespace pnf {

namespace {

// Integer roots of the monic cubic s^3 + b s^2 + c s + d. The derivative
// splits the line into at most three monotone stretches; each is searched
// by bisection with exact evaluation.
std::vector<mpz_class> monic_cubic_integer_roots(const mpz_class& b, const mpz_class& c,
                                                 const mpz_class& d) {
  auto eval = [&](const mpz_class& s) -> mpz_class { return ((s + b) * s + c) * s + d; };
  const mpz_class bound = 1 + std::max({abs(b), abs(c), abs(d)});

  std::vector<mpz_class> roots;
  auto check = [&](const mpz_class& s) {
    if (eval(s) == 0 && std::find(roots.begin(), roots.end(), s) == roots.end())
      roots.push_back(s);
  };
  auto search = [&](mpz_class lo, mpz_class hi) {
    if (lo > hi) return;
    int slo = sgn(eval(lo));
    const int shi = sgn(eval(hi));
    if (slo == 0) check(lo);
    if (shi == 0) check(hi);
    if (slo == 0 || shi == 0 || slo == shi) return;
    while (hi - lo > 1) {
      mpz_class mid = lo + (hi - lo) / 2;
      const int sm = sgn(eval(mid));
      if (sm == 0) {
        check(mid);
        return;
      }
      if (sm == slo) lo = mid; else hi = mid;
    }
  };
  auto fdiv = [](const mpz_class& a, int q) {
    mpz_class r;
    mpz_fdiv_q_ui(r.get_mpz_t(), a.get_mpz_t(), q);
    return r;
  };
  auto cdiv = [](const mpz_class& a, int q) {
    mpz_class r;
    mpz_cdiv_q_ui(r.get_mpz_t(), a.get_mpz_t(), q);
    return r;
  };

  // Critical points (-b -+ sqrt(b^2 - 3c)) / 3.
  const mpz_class disc = b * b - 3 * c;
  if (disc < 0) {
    search(-bound, bound);
  } else {
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
    const mpz_class l1 = fdiv(-b - r - 1, 3), r1 = cdiv(-b - r, 3);
    const mpz_class l2 = fdiv(-b + r, 3), r2 = cdiv(-b + r + 1, 3);
    search(-bound, std::min(l1, bound));
    for (mpz_class s = l1; s <= r1; ++s) check(s);
    search(r1, l2);
    for (mpz_class s = l2; s <= r2; ++s) check(s);
    search(std::max(r2, mpz_class(-bound)), bound);
  }
  return roots;
}

mpz_class lcm_of_denominators(const std::vector<Rational>& coeffs) {
  mpz_class l = 1;
  for (const Rational& q : coeffs) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den().get_mpz_t());
  return l;
}

// Rational roots of c[0] t^n + ... + c[n], n <= 3, without multiplicity.
std::vector<Rational> rational_roots(std::vector<Rational> c) {
  while (!c.empty() && sgn(c.front()) == 0) c.erase(c.begin());
  std::vector<Rational> roots;
  if (c.size() <= 1) return roots;
  if (sgn(c.back()) == 0) {
    roots.push_back(0);
    c.pop_back();
    for (const Rational& r : rational_roots(c))
      if (sgn(r) != 0) roots.push_back(r);
    return roots;
  }
  if (c.size() == 2) {
    roots.push_back(-c[1] / c[0]);
    return roots;
  }
  if (c.size() == 3) {
    const Rational disc = c[1] * c[1] - 4 * c[0] * c[2];
    if (sgn(disc) < 0) return roots;
    const mpz_class& num = disc.get_num();
    const mpz_class& den = disc.get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
      return roots;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    Rational sq(rn, rd);
    sq.canonicalize();
    roots.push_back((-c[1] + sq) / (2 * c[0]));
    if (sgn(sq) != 0) roots.push_back((-c[1] - sq) / (2 * c[0]));
    return roots;
  }
  // Integer coefficients, then s = a t turns a t^3 + p t^2 + q t + r into
  // the monic s^3 + p s^2 + a q s + a^2 r.
  const mpz_class l = lcm_of_denominators(c);
  std::vector<mpz_class> z;
  for (const Rational& q : c) {
    Rational scaled = q * l;
    z.push_back(scaled.get_num());
  }
  const mpz_class& a = z[0];
  for (const mpz_class& s : monic_cubic_integer_roots(z[1], a * z[2], a * a * z[3])) {
    Rational t(s, a);
    t.canonicalize();
    roots.push_back(t);
  }
  return roots;
}

// Binary cubic c0 x^3 + c1 x^2 y + c2 x y^2 + c3 y^3.
struct Cubic {
  Rational c0, c1, c2, c3;
};

Cubic read_cubic(const Series& h3) {
  Cubic q;
  for (const auto& [e, c] : h3.terms()) {
    if (e.m != 0 || e.k + e.l != 3)
      throw ShapeError("normalize_cubic: " + to_string(e) + " is not a cubic monomial");
    (e.l == 0 ? q.c0 : e.l == 1 ? q.c1 : e.l == 2 ? q.c2 : q.c3) = c;
  }
  return q;
}

// h(a x + b y, c x + d y) for a cubic h.
Cubic substitute(const Cubic& h, const LinearMap& t) {
  // Expand (a x + b y)^i (c x + d y)^(3-i) into coefficients of x^(3-j) y^j.
  const Rational coeffs[4] = {h.c0, h.c1, h.c2, h.c3};
  Rational out[4];
  for (int i = 0; i < 4; ++i) {
    // term coeffs[i] * X^(3-i) * Y^i with X = a x + b y, Y = c x + d y
    std::vector<Rational> poly{1};  // in powers of y
    auto mul = [&](const Rational& px, const Rational& py) {
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t j = 0; j < poly.size(); ++j) {
        next[j] += poly[j] * px;
        next[j + 1] += poly[j] * py;
      }
      poly = std::move(next);
    };
    for (int r = 0; r < 3 - i; ++r) mul(t.a, t.b);
    for (int r = 0; r < i; ++r) mul(t.c, t.d);
    for (int j = 0; j < 4; ++j) out[j] += coeffs[i] * poly[j];
  }
  return {out[0], out[1], out[2], out[3]};
}

struct Candidate {
  LinearMap map;
  Rational a;
};

// With y^3 already absent: h = x (q0 x^2 + q1 x y + q2 y^2). Shear y -> y + d x
// removes x^2 y, then (lambda x, y / lambda) scales x y^2 to one.
std::optional<Candidate> finish(const Cubic& h, const LinearMap& so_far) {
  if (sgn(h.c2) == 0) return std::nullopt;
  LinearMap map = so_far;
  Cubic cur = h;
  if (sgn(cur.c1) != 0) {
    const LinearMap shear{1, 0, -cur.c1 / (2 * cur.c2), 1};
    map = map.after(shear);
    cur = substitute(cur, shear);
  }
  const Rational lambda = cur.c2;
  const LinearMap scale{lambda, 0, 0, 1 / lambda};
  map = map.after(scale);
  cur = substitute(cur, scale);
  return Candidate{map, cur.c0};
}

bool smaller(const Rational& p, const Rational& q) {
  const Rational ap = abs(p), aq = abs(q);
  if (ap != aq) return ap < aq;
  return p > q;
}

}  // namespace

CubicNormalization normalize_cubic(const Series& h3, bool x_parity_only) {
  const Cubic h = read_cubic(h3);
  if (x_parity_only) {
    if (sgn(h.c1) != 0 || sgn(h.c3) != 0)
      throw ShapeError("normalize_cubic: cubic is not odd in x");
    if (sgn(h.c2) == 0) throw DegeneracyError("degenerate leading order: b = 0");
    const auto c = finish(h, LinearMap{});
    return {c->a, c->map};
  }

  if (h3.is_zero()) throw DegeneracyError("degenerate cubic: the cubic part vanishes");
  bool any_root = false;
  const LinearMap swap{0, 1, -1, 0};
  for (const LinearMap& base : {LinearMap{}, swap}) {
    const Cubic hb = substitute(h, base);
    // x -> x + t y kills y^3 iff t is a root of c0 t^3 + c1 t^2 + c2 t + c3.
    std::vector<Rational> roots = rational_roots({hb.c0, hb.c1, hb.c2, hb.c3});
    any_root = any_root || !roots.empty();
    std::sort(roots.begin(), roots.end(), smaller);
    for (const Rational& t : roots) {
      const LinearMap shear{1, t, 0, 1};
      const LinearMap map = sgn(t) == 0 ? base : base.after(shear);
      if (auto c = finish(substitute(h, map), map)) return {c->a, c->map};
    }
  }
  if (!any_root)
    throw DegeneracyError("irrational normalization: the cubic has no rational linear factor");
  throw DegeneracyError("degenerate cubic: no linear factor with a simple complement");
}

}  // namespace pnf
