#pragma once

#include <optional>

#include "pnf/series.hpp"

namespace pnf {

/// Hamiltonian generator chi of a canonical change of variables. Every
/// monomial has weight >= k0 + l0 + 1, so each Lie derivative raises the
/// lowest order by at least one and Lie series terminate at any truncation.
class Generator {
 public:
  /// Throws GeneratorOrderError when chi has a monomial of weight < k0 + l0 + 1.
  explicit Generator(Series chi);

  const Series& chi() const { return chi_; }
  const Grading& grading() const { return chi_.grading(); }
  /// Lowest weight present; empty for chi = 0.
  std::optional<int> min_weight() const { return min_weight_; }
  bool is_zero() const { return chi_.is_zero(); }

  Generator negated() const { return Generator(-chi_); }
  bool operator==(const Generator& other) const { return chi_ == other.chi_; }

 private:
  Series chi_;
  std::optional<int> min_weight_;
};

/// L_chi g = {g, chi}, truncated at g's order.
Series lie_derivative(const Series& g, const Generator& chi);

/// exp(L_chi) g = sum_k L_chi^k g / k!, stopped once a term vanishes at g's order.
Series exp_lie(const Series& g, const Generator& chi);

/// Phi^1_chi = (exp(L_chi) x, exp(L_chi) y) at the given order.
MapPair time_one_map(const Generator& chi, int order);
/// Phi^{-1}_chi = (exp(-L_chi) x, exp(-L_chi) y).
MapPair inverse_time_one_map(const Generator& chi, int order);

/// g o Phi^1_chi, computed as exp(L_chi) g.
Series pullback(const Series& g, const Generator& chi);

/// Phi^{-1}_chi o F o Phi^1_chi at F's order.
MapPair conjugate(const MapPair& f, const Generator& chi);

}  // namespace pnf
