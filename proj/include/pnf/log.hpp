#pragma once

#include <variant>
#include <vector>

#include "pnf/lie.hpp"
#include "pnf/series.hpp"

namespace pnf {

/// Unit-determinant linear substitution (x, y) -> (a x + b y, c x + d y).
struct LinearMap {
  Rational a = 1, b = 0, c = 0, d = 1;

  Rational det() const { return a * d - b * c; }
  LinearMap inverse() const;
  /// The map as a pair of series.
  MapPair as_map(Grading grading, int order) const;
  /// this o other (apply `other` first).
  LinearMap after(const LinearMap& other) const;
  bool operator==(const LinearMap&) const = default;
};

/// The reflection (x, y) -> (-x, y).
struct Reflection {
  bool operator==(const Reflection&) const = default;
};

/// Marks that the final map is the central reflection composed with the
/// time-one map: F = -Phi^1_h.
struct CentralMarker {
  bool operator==(const CentralMarker&) const = default;
};

using LogStep = std::variant<LinearMap, Reflection, Generator, CentralMarker>;

/// Ordered record of the coordinate changes applied to a family. Each
/// LinearMap/Reflection/Generator step psi replaces F by psi^{-1} o F o psi.
struct GeneratorLog {
  std::vector<LogStep> steps;

  void append(LogStep step) { steps.push_back(std::move(step)); }
  void append(const GeneratorLog& other) {
    steps.insert(steps.end(), other.steps.begin(), other.steps.end());
  }
  bool empty() const { return steps.empty(); }
  std::size_t generator_count() const;
  bool operator==(const GeneratorLog&) const = default;
};

/// T^{-1} o F o T.
MapPair conjugate(const MapPair& f, const LinearMap& t);
/// R o F o R with R = (-x, y).
MapPair conjugate_reflection(const MapPair& f);
/// h o T.
Series substitute(const Series& h, const LinearMap& t);

/// Applies every conjugation step of the log, in order, to F. Generators
/// logged under another grading are re-expressed in F's grading.
MapPair replay(const MapPair& f, const GeneratorLog& log);

}  // namespace pnf
