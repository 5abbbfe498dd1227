#include "pnf/series.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "pnf/errors.hpp"
#include "pnf/kernels.hpp"

namespace pnf {

std::string to_string(const Monomial& e) {
  std::ostringstream os;
  os << "x^" << e.k << " y^" << e.l << " eps^" << e.m;
  return os.str();
}

std::string to_string(const Grading& g) {
  std::ostringstream os;
  os << "(" << g.k0 << "," << g.l0 << "," << g.m0 << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Series

Series::Series(Grading grading, int order) : grading_(grading), order_(order) {}

Series::Series(Grading grading, int order, Terms terms) : grading_(grading), order_(order) {
  for (auto& [e, c] : terms) {
    if (sgn(c) != 0 && grading_.weight(e) <= order_) terms_.emplace(e, std::move(c));
  }
}

Series Series::monomial(Grading grading, int order, Monomial e, const Rational& c) {
  Series s(grading, order);
  s.add_term(e, c);
  return s;
}

Rational Series::coeff(const Monomial& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::optional<int> Series::lowest_weight() const {
  std::optional<int> w;
  for (const auto& [e, c] : terms_) {
    const int we = grading_.weight(e);
    if (!w || we < *w) w = we;
  }
  return w;
}

std::optional<int> Series::highest_weight() const {
  std::optional<int> w;
  for (const auto& [e, c] : terms_) {
    const int we = grading_.weight(e);
    if (!w || we > *w) w = we;
  }
  return w;
}

void Series::add_term(const Monomial& e, const Rational& c) {
  if (e.k < 0 || e.l < 0 || e.m < 0) throw ParameterError("negative exponent in " + to_string(e));
  if (sgn(c) == 0 || grading_.weight(e) > order_) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

Series Series::truncated(int order) const {
  Series out(grading_, std::min(order, order_));
  for (const auto& [e, c] : terms_)
    if (grading_.weight(e) <= out.order_) out.terms_.emplace_hint(out.terms_.end(), e, c);
  return out;
}

Series Series::widened(int order) const {
  Series out = *this;
  out.order_ = std::max(order, order_);
  return out;
}

Series Series::operator-() const {
  Series out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Series& Series::operator+=(const Series& other) {
  require_same_context(*this, other);
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

Series& Series::operator-=(const Series& other) {
  require_same_context(*this, other);
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

Series& Series::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

MapPair MapPair::identity(Grading grading, int order) {
  return {Series::x(grading, order), Series::y(grading, order)};
}

// ---------------------------------------------------------------------------
// Ring operations

void require_same_context(const Series& f, const Series& g) {
  if (!(f.grading() == g.grading()) || f.order() != g.order())
    throw IncompatibleContext("operands differ in context: grading " + to_string(f.grading()) +
                              " order " + std::to_string(f.order()) + " vs grading " +
                              to_string(g.grading()) + " order " + std::to_string(g.order()));
}

Series operator+(const Series& f, const Series& g) {
  Series out = f;
  out += g;
  return out;
}

Series operator-(const Series& f, const Series& g) {
  Series out = f;
  out -= g;
  return out;
}

Series operator*(const Series& f, const Series& g) {
  require_same_context(f, g);
  return Series(f.grading(), f.order(),
                kernels::mul(f.terms(), g.terms(), f.grading(), f.order()));
}

Series operator*(const Rational& c, const Series& f) {
  Series out = f;
  out *= c;
  return out;
}

Series operator*(const Series& f, const Rational& c) { return c * f; }

Series derivative(const Series& f, Var var) {
  Series out(f.grading(), f.order());
  for (const auto& [e, c] : f.terms()) {
    if (var == Var::x && e.k > 0) out.add_term({e.k - 1, e.l, e.m}, c * e.k);
    if (var == Var::y && e.l > 0) out.add_term({e.k, e.l - 1, e.m}, c * e.l);
  }
  return out;
}

Series integrate(const Series& f, Var var) {
  Series out(f.grading(), f.order());
  for (const auto& [e, c] : f.terms()) {
    if (var == Var::x) out.add_term({e.k + 1, e.l, e.m}, c / (e.k + 1));
    if (var == Var::y) out.add_term({e.k, e.l + 1, e.m}, c / (e.l + 1));
  }
  return out;
}

Series poisson_bracket_to(const Series& f, const Series& g, int order) {
  if (!(f.grading() == g.grading()))
    throw IncompatibleContext("poisson bracket across gradings " + to_string(f.grading()) +
                              " and " + to_string(g.grading()));
  const Grading& gr = f.grading();
  const int wide = std::max(f.order(), g.order());
  const Series fx = derivative(f, Var::x).widened(wide);
  const Series fy = derivative(f, Var::y).widened(wide);
  const Series gx = derivative(g, Var::x).widened(wide);
  const Series gy = derivative(g, Var::y).widened(wide);
  Series out(gr, order, kernels::mul(fx.terms(), gy.terms(), gr, order));
  for (const auto& [e, c] : kernels::mul(fy.terms(), gx.terms(), gr, order)) out.add_term(e, -c);
  return out;
}

Series poisson_bracket(const Series& f, const Series& g) {
  require_same_context(f, g);
  return poisson_bracket_to(f, g, f.order());
}

Series qh_project(const Series& f, int p) {
  Series out(f.grading(), f.order());
  for (const auto& [e, c] : f.terms())
    if (f.weight(e) == p) out.add_term(e, c);
  return out;
}

Series divergence(const Series& f, const Series& g) {
  require_same_context(f, g);
  return derivative(f, Var::x) + derivative(g, Var::y);
}

namespace {

bool matches(const Monomial& e, Parity mode) {
  switch (mode) {
    case Parity::even_xy: return (e.k + e.l) % 2 == 0;
    case Parity::odd_xy: return (e.k + e.l) % 2 == 1;
    case Parity::even_x: return e.k % 2 == 0;
    case Parity::odd_x: return e.k % 2 == 1;
  }
  return false;
}

}  // namespace

Series parity_project(const Series& f, Parity mode) {
  Series out(f.grading(), f.order());
  for (const auto& [e, c] : f.terms())
    if (matches(e, mode)) out.add_term(e, c);
  return out;
}

bool has_parity(const Series& f, Parity mode) {
  return std::all_of(f.terms().begin(), f.terms().end(),
                     [mode](const auto& kv) { return matches(kv.first, mode); });
}

std::optional<int> lowest_difference(const Series& f, const Series& g) {
  require_same_context(f, g);
  std::optional<int> low;
  auto consider = [&](const Monomial& e) {
    const int w = f.weight(e);
    if (!low || w < *low) low = w;
  };
  auto it = f.terms().begin();
  auto jt = g.terms().begin();
  while (it != f.terms().end() || jt != g.terms().end()) {
    if (jt == g.terms().end() || (it != f.terms().end() && it->first < jt->first)) {
      consider(it->first);
      ++it;
    } else if (it == f.terms().end() || jt->first < it->first) {
      consider(jt->first);
      ++jt;
    } else {
      if (it->second != jt->second) consider(it->first);
      ++it;
      ++jt;
    }
  }
  return low;
}

bool equal_to_order(const Series& f, const Series& g, int p) {
  const auto low = lowest_difference(f, g);
  return !low || *low > p;
}

Rational metric_distance(const Series& f, const Series& g) {
  const auto low = lowest_difference(f, g);
  return low ? dyadic(*low) : Rational(0);
}

Series drop_pure_eps(const Series& f) {
  Series out(f.grading(), f.order());
  for (const auto& [e, c] : f.terms())
    if (e.k != 0 || e.l != 0) out.add_term(e, c);
  return out;
}

// ---------------------------------------------------------------------------
// Composition

Series compose(const Series& f, const MapPair& g) {
  if (!(g.comp_x.grading() == f.grading()) || !(g.comp_y.grading() == f.grading()))
    throw IncompatibleContext("composition across gradings");
  const Monomial zero{0, 0, 0};
  if (sgn(g.comp_x.coeff(zero)) != 0 || sgn(g.comp_y.coeff(zero)) != 0)
    throw CompositionDomainError("inner map has a nonzero constant term");

  const Grading& gr = f.grading();
  const int order = f.order();
  int max_k = 0;
  int max_l = 0;
  for (const auto& [e, c] : f.terms()) {
    max_k = std::max(max_k, e.k);
    max_l = std::max(max_l, e.l);
  }
  const Series gx = g.comp_x.order() >= order ? g.comp_x.truncated(order) : g.comp_x.widened(order);
  const Series gy = g.comp_y.order() >= order ? g.comp_y.truncated(order) : g.comp_y.widened(order);

  auto powers = [&](const Series& base, int count) {
    std::vector<Series> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    out.push_back(Series::monomial(gr, order, zero));
    for (int i = 1; i <= count; ++i) out.push_back(out.back() * base);
    return out;
  };
  const auto px = powers(gx, max_k);
  const auto py = powers(gy, max_l);

  // Group f's terms by (k, l) so each product gx^k gy^l is formed once.
  std::map<std::pair<int, int>, std::vector<std::pair<int, const Rational*>>> groups;
  for (const auto& [e, c] : f.terms()) groups[{e.k, e.l}].emplace_back(e.m, &c);

  Series out(gr, order);
  for (const auto& [kl, eps_terms] : groups) {
    const Series prod = px[static_cast<std::size_t>(kl.first)] * py[static_cast<std::size_t>(kl.second)];
    for (const auto& [m, c] : eps_terms) {
      for (const auto& [e, v] : prod.terms()) out.add_term({e.k, e.l, e.m + m}, *c * v);
    }
  }
  return out;
}

MapPair compose_pair(const MapPair& f, const MapPair& g) {
  return {compose(f.comp_x, g), compose(f.comp_y, g)};
}

MapPair truncated(const MapPair& f, int order) {
  return {f.comp_x.truncated(order), f.comp_y.truncated(order)};
}

bool equal_to_order(const MapPair& f, const MapPair& g, int p) {
  return equal_to_order(f.comp_x, g.comp_x, p) && equal_to_order(f.comp_y, g.comp_y, p);
}

MapPair operator-(const MapPair& f) { return {-f.comp_x, -f.comp_y}; }

Series jacobian_det(const MapPair& f) {
  const Series xx = derivative(f.comp_x, Var::x);
  const Series xy = derivative(f.comp_x, Var::y);
  const Series yx = derivative(f.comp_y, Var::x);
  const Series yy = derivative(f.comp_y, Var::y);
  return xx * yy - xy * yx;
}

std::vector<Monomial> monomials_of_weight(const Grading& g, int w) {
  std::vector<Monomial> out;
  for (int k = 0; k * g.k0 <= w; ++k)
    for (int l = 0; k * g.k0 + l * g.l0 <= w; ++l) {
      const int rest = w - k * g.k0 - l * g.l0;
      if (rest % g.m0 == 0) out.push_back({k, l, rest / g.m0});
    }
  return out;
}

// ---------------------------------------------------------------------------
// Regrading

int complete_order(const Grading& from, int order, const Grading& to) {
  // Minimal unknown monomials have old weight in (order, order + max weight].
  const int span = std::max({from.k0, from.l0, from.m0});
  const int hi = order + span;
  int best = std::numeric_limits<int>::max();
  for (int k = 0; k * from.k0 <= hi; ++k)
    for (int l = 0; k * from.k0 + l * from.l0 <= hi; ++l)
      for (int m = 0; k * from.k0 + l * from.l0 + m * from.m0 <= hi; ++m) {
        const Monomial e{k, l, m};
        if (from.weight(e) > order) best = std::min(best, to.weight(e));
      }
  return best - 1;
}

Series regrade(const Series& f, const Grading& to) {
  return regrade(f, to, complete_order(f.grading(), f.order(), to));
}

Series regrade(const Series& f, const Grading& to, int order) {
  Series out(to, order);
  for (const auto& [e, c] : f.terms()) out.add_term(e, c);
  return out;
}

MapPair regrade(const MapPair& f, const Grading& to) {
  return {regrade(f.comp_x, to), regrade(f.comp_y, to)};
}

std::string to_string(const Series& f) {
  if (f.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : f.terms()) {
    Rational v = c;
    if (!first) {
      os << (sgn(v) < 0 ? " - " : " + ");
      v = abs(v);
    }
    first = false;
    const bool bare = e.k == 0 && e.l == 0 && e.m == 0;
    if (bare || v != 1) {
      if (v == -1 && !bare) os << "-";
      else os << to_string(v) << (bare ? "" : "*");
    }
    bool sep = false;
    auto factor = [&](const char* name, int p) {
      if (p == 0) return;
      os << (sep ? "*" : "") << name;
      if (p > 1) os << "^" << p;
      sep = true;
    };
    factor("x", e.k);
    factor("y", e.l);
    factor("eps", e.m);
  }
  return os.str();
}

}  // namespace pnf
