#pragma once

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "pnf/rational.hpp"

namespace pnf {

/// Exponents of x^k y^l eps^m.
struct Monomial {
  int k = 0;
  int l = 0;
  int m = 0;

  auto operator<=>(const Monomial&) const = default;
};

std::string to_string(const Monomial& e);

/// Weights of x, y and eps. A monomial x^k y^l eps^m has order k*k0 + l*l0 + m*m0.
struct Grading {
  int k0 = 1;
  int l0 = 1;
  int m0 = 1;

  constexpr int weight(const Monomial& e) const { return e.k * k0 + e.l * l0 + e.m * m0; }
  // Lowest admissible weight of a Lie generator.
  constexpr int min_generator_weight() const { return k0 + l0 + 1; }

  static constexpr Grading nondiag() { return {2, 3, 6}; }
  static constexpr Grading diag() { return {1, 1, 3}; }
  static constexpr Grading potential(int n) { return {2, n, 2 * n}; }

  bool operator==(const Grading&) const = default;
};

std::string to_string(const Grading& g);

/// Every monomial of weight exactly w, in lexicographic order.
std::vector<Monomial> monomials_of_weight(const Grading& g, int w);

enum class Var { x, y };

// *_xy count the parity of k + l, *_x the parity of k. eps is parity-neutral.
enum class Parity { even_xy, odd_xy, even_x, odd_x };

/// Sparse truncated formal power series in (x, y, eps) with exact rational
/// coefficients. Monomials of weight above the truncation order are never
/// stored, and neither are zero coefficients. Iteration is lexicographic in
/// (k, l, m).
class Series {
 public:
  using Terms = std::map<Monomial, Rational>;

  Series() = default;
  Series(Grading grading, int order);
  Series(Grading grading, int order, Terms terms);

  static Series monomial(Grading grading, int order, Monomial e, const Rational& c = 1);
  static Series x(Grading grading, int order) { return monomial(grading, order, {1, 0, 0}); }
  static Series y(Grading grading, int order) { return monomial(grading, order, {0, 1, 0}); }

  const Grading& grading() const { return grading_; }
  int order() const { return order_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coeff(const Monomial& e) const;
  int weight(const Monomial& e) const { return grading_.weight(e); }
  std::optional<int> lowest_weight() const;
  std::optional<int> highest_weight() const;

  // Builder access; drops zero sums and monomials above the order.
  void add_term(const Monomial& e, const Rational& c);

  /// Same coefficients, lower (or equal) truncation order.
  Series truncated(int order) const;
  /// Same coefficients, larger container order. Only meaningful for
  /// polynomials whose every term is known.
  Series widened(int order) const;

  Series operator-() const;
  Series& operator+=(const Series& other);
  Series& operator-=(const Series& other);
  Series& operator*=(const Rational& c);

  bool operator==(const Series& other) const = default;

 private:
  Grading grading_{};
  int order_ = 0;
  Terms terms_;
};

/// Both components of a planar map (x, y) -> (comp_x, comp_y).
struct MapPair {
  Series comp_x;
  Series comp_y;

  static MapPair identity(Grading grading, int order);
  const Grading& grading() const { return comp_x.grading(); }
  int order() const { return comp_x.order(); }
  bool operator==(const MapPair&) const = default;
};

// Ring operations. Operands must share grading and order.
Series operator+(const Series& f, const Series& g);
Series operator-(const Series& f, const Series& g);
Series operator*(const Series& f, const Series& g);
Series operator*(const Rational& c, const Series& f);
Series operator*(const Series& f, const Rational& c);

void require_same_context(const Series& f, const Series& g);

Series derivative(const Series& f, Var var);
Series integrate(const Series& f, Var var);  // antiderivative with zero constant

/// {f, g} = f_x g_y - f_y g_x.
Series poisson_bracket(const Series& f, const Series& g);
/// Bracket truncated at an explicit order; operands may carry different
/// orders (used with generators stored at a larger container order).
Series poisson_bracket_to(const Series& f, const Series& g, int order);

Series qh_project(const Series& f, int p);
Series divergence(const Series& f, const Series& g);
Series parity_project(const Series& f, Parity mode);
bool has_parity(const Series& f, Parity mode);

/// True iff all quasi-homogeneous parts of order <= p agree.
bool equal_to_order(const Series& f, const Series& g, int p);
/// Lowest order at which f and g differ, if any (up to the common order).
std::optional<int> lowest_difference(const Series& f, const Series& g);
/// 2^(-lowest differing order), or 0.
Rational metric_distance(const Series& f, const Series& g);

/// Drops every pure-eps monomial eps^m (the gauge h_{00m} = 0).
Series drop_pure_eps(const Series& f);

/// f(comp_x(x,y), comp_y(x,y)), eps untouched, truncated at f's order.
Series compose(const Series& f, const MapPair& g);
/// F o G. G must have no constant term.
MapPair compose_pair(const MapPair& f, const MapPair& g);

MapPair truncated(const MapPair& f, int order);
bool equal_to_order(const MapPair& f, const MapPair& g, int p);
MapPair operator-(const MapPair& f);

/// det of the Jacobian in (x, y).
Series jacobian_det(const MapPair& f);

/// Largest order N' for which every monomial of weight <= N' under `to` has
/// weight <= order under `from`.
int complete_order(const Grading& from, int order, const Grading& to);
/// Re-wraps the coefficient table under a new grading at its complete order.
Series regrade(const Series& f, const Grading& to);
/// Re-wraps at an explicit order; the caller vouches that the result is
/// complete (true for polynomials such as generators).
Series regrade(const Series& f, const Grading& to, int order);
MapPair regrade(const MapPair& f, const Grading& to);

std::string to_string(const Series& f);

}  // namespace pnf
