#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pnf/interp.hpp"
#include "pnf/log.hpp"
#include "pnf/series.hpp"

namespace pnf {

/// (k, m) -> coefficient. Potential tables key x^k eps^m; the A table of the
/// diagonal forms keys x^k eps^m and the B table keys y (x y^2)^k eps^m.
using CoeffTable = std::map<std::pair<int, int>, Rational>;

struct NormalFormResult {
  CaseTag case_tag = CaseTag::jordan_plus;
  Series h_normal;
  CoeffTable potential_table;
  std::optional<Rational> a;
  CoeffTable a_table;
  CoeffTable b_table;
  std::optional<int> n;
  std::optional<Rational> b;
  bool unique = false;
  GeneratorLog log;
  std::string note;  // why uniqueness is not asserted, or adopted conditions

  bool is_potential() const {
    return case_tag == CaseTag::jordan_plus || case_tag == CaseTag::jordan_minus;
  }
  /// Invariant data compared by the uniqueness experiments.
  bool same_invariants(const NormalFormResult& other) const;
};

struct ReducedHamiltonian {
  Series h;
  GeneratorLog log;
};

// ---------------------------------------------------------------------------
// Potential forms (Jordan blocks)

/// h = y^2/2 + b x^3 + ... (NONDIAG) -> y^2/2 + b x^3 + U(x, eps). One generator
/// per order; the y-dependence of each order is removed by the recurrence
/// obtained from {y^2/2 + b x^3, chi} = 3 b x^2 chi_y - y chi_x.
ReducedHamiltonian to_potential_form(const Series& h);

/// Leading x-power of a potential-form Hamiltonian: smallest k with u_{k0} != 0.
std::optional<std::pair<int, Rational>> detect_leading_power(const Series& h);

/// From potential form, detects (n, b) and removes every x^k eps^m with
/// k = -1 mod n above the leading order, working under POTENTIAL(n).
NormalFormResult unique_nf_potential(const Series& h);

// ---------------------------------------------------------------------------
// Diagonal forms

struct CubicNormalization {
  Rational a;
  LinearMap map;  // h3 o map = a x^3 + x y^2
};

/// Brings a binary cubic to a x^3 + x y^2 with a rational unit-determinant
/// map. With `x_parity_only` only diagonal maps are tried.
CubicNormalization normalize_cubic(const Series& h3, bool x_parity_only = false);

/// h = x y^2 + a x^3 + ... (DIAG) -> x y^2 + a x^3 + A(x, eps) + y B(x y^2, eps).
NormalFormResult unique_nf_diag(const Series& h);

// ---------------------------------------------------------------------------
// Generic homological solver (independent route)

using MonomialPredicate = std::function<bool(const Monomial&)>;

struct HomologicalSolution {
  Series chi;       // weight target - lead + k0 + l0
  Series residual;  // target + {lead, chi}, supported on allowed monomials
};

/// Solves target + {lead, chi} in span(allowed) by exact row reduction over
/// the monomial basis. Kernel directions are set to zero; columns matching
/// `gauge_last` are ordered last so they are the first to be left free.
/// Throws InconsistencyError naming the obstructing monomials when infeasible.
HomologicalSolution generic_homological_solve(const Series& lead, const Series& target,
                                              const MonomialPredicate& allowed,
                                              const MonomialPredicate& gauge_last = {});

/// Whole-series reductions driven by generic_homological_solve, used to
/// cross-check the recurrences.
Series generic_potential_form(const Series& h);
Series generic_unique_potential(const Series& h);
Series generic_unique_diag(const Series& h);

// Shape predicates for the normal forms.
bool potential_shape(const Monomial& e);  // y-free, or exactly y^2
bool unique_potential_shape(const Monomial& e, int n);
bool diag_shape(const Monomial& e);
/// Monomials of h outside the case's normal-form shape.
std::vector<Monomial> shape_violations(const NormalFormResult& r);

// ---------------------------------------------------------------------------
// Pipelines

/// Orientation-preserving families: classify, interpolate and reduce.
/// `forced` fails loudly when the classified case differs.
NormalFormResult pipeline_orient_preserving(const MapPair& f, int order,
                                            std::optional<CaseTag> forced = std::nullopt);
/// Orientation-reversing families with linear part diag(-1, 1).
NormalFormResult pipeline_orient_reversing(const MapPair& f, int order);
/// Dispatches on the classified case.
NormalFormResult run_pipeline(const MapPair& f, int order,
                              std::optional<CaseTag> forced = std::nullopt);

/// Brings a classified family to the case grading at the requested order.
MapFamily prepare_family(const MapPair& f, int order, std::optional<CaseTag> forced);

struct InterpolationOutcome {
  MapFamily family;
  Series h;            // Phi^1_h equals the peeled family
  GeneratorLog log;    // classification maps and parity generators
  bool central = false;    // F = -Phi^1_h after the log
  bool reversing = false;  // F = diag(-1, 1) Phi^1_h after the log
};

/// Classification, parity normalization and interpolation; the common prefix
/// of every pipeline.
InterpolationOutcome interpolate_family(const MapPair& f, int order,
                                        std::optional<CaseTag> forced = std::nullopt);

/// Replays the log on F and compares with the claimed factorization
/// (+-Phi^1_h or diag(-1, 1) Phi^1_h). Returns the order checked, or empty on mismatch.
std::optional<int> verify_factorization(const MapPair& f, const NormalFormResult& r);

}  // namespace pnf
