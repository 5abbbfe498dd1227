#pragma once

#include <optional>
#include <string>

#include "pnf/log.hpp"
#include "pnf/series.hpp"

namespace pnf {

/// Linear part of F_0 at the origin after normalization.
enum class CaseTag {
  jordan_plus,   // [[1, 1], [0, 1]]
  jordan_minus,  // [[-1, -1], [0, -1]]
  diag_plus,     // I
  diag_minus,    // -I
  reversing,     // diag(-1, 1)
};

std::string to_string(CaseTag tag);
std::optional<CaseTag> parse_case_tag(std::string_view text);
/// Grading in which the family is normalized: NONDIAG for Jordan blocks, DIAG otherwise.
Grading case_grading(CaseTag tag);

struct MapFamily {
  MapPair pair;
  CaseTag case_tag = CaseTag::jordan_plus;
  Rational c_quad;             // coefficient of x^2 in comp_y (Jordan cases)
  GeneratorLog provenance;     // linear maps applied during classification
  LinearMap original_linear;   // linear part of the input at eps = 0
};

/// Detects the standard linear part. Applies, when needed, a rational
/// scaling (x, y) -> (s x, y / s), the reflection (x, y) -> (-x, y), a shear
/// diagonalizing diag(-1, 1) with an off-diagonal entry, or the swap
/// (x, y) -> (y, -x) for diag(1, -1) under gradings with k0 = l0.
MapFamily classify_linear_part(const MapPair& f);

struct AreaReport {
  bool ok = true;
  int checked_order = 0;
  int expected_det = 1;
  std::optional<Monomial> first_violation;
  Rational violation_coeff;

  std::string describe() const;
};

/// Compares det DF with +1 (or -1 for orientation-reversing linear parts)
/// through order `order`.
AreaReport check_area_preserving(const MapPair& f, int order);
/// Highest order through which det DF is determined by F truncated at its order.
int reliable_det_order(const MapPair& f);

/// Unique quasi-homogeneous h with dh/dy = f and -dh/dx = g, pure-eps terms
/// zero. Throws UnsolvableFieldError when div(f, g) != 0.
Series solve_hamiltonian_from_field(const Series& f, const Series& g);
/// Variant used at the top order where g is unavailable: h = integral of f dy.
Series solve_hamiltonian_from_x_field(const Series& f);

/// Formal interpolation F = Phi^1_h. Requires the JordanPlus linear part and
/// NONDIAG grading; h carries weights 6..order.
Series interpolate_nondiag(const MapPair& f, int order);
/// Same for DF_0(0) = I under DIAG grading; h carries weights 3..order.
Series interpolate_diag(const MapPair& f, int order);

/// Case-agnostic interpolation under F's grading; F must equal Phi^1_h for
/// some h with weights >= k0 + l0 + 1.
Series interpolate(const MapPair& f, int order);

}  // namespace pnf
