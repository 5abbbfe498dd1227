#include "pnf/birkhoff.hpp"

#include "pnf/errors.hpp"
#include "pnf/lie.hpp"

namespace pnf {

namespace {

enum class Symmetry { central, reversing };

// Part of (comp_x, comp_y) that violates the symmetry.
MapPair defect(const MapPair& f, Symmetry sym) {
  if (sym == Symmetry::central)
    return {parity_project(f.comp_x, Parity::even_xy), parity_project(f.comp_y, Parity::even_xy)};
  return {parity_project(f.comp_x, Parity::even_x), parity_project(f.comp_y, Parity::odd_x)};
}

void require(const MapPair& f, const Grading& g, const LinearMap& lin, const char* what) {
  if (!(f.grading() == g))
    throw IncompatibleContext(std::string(what) + " expects grading " + to_string(g));
  const LinearMap got{f.comp_x.coeff({1, 0, 0}), f.comp_x.coeff({0, 1, 0}),
                      f.comp_y.coeff({1, 0, 0}), f.comp_y.coeff({0, 1, 0})};
  if (!(got == lin)) throw UnsupportedLinearPartError(std::string(what) + ": unexpected linear part");
}

// Order by order, kill the symmetry defect of comp_x at weight w - l0 and
// comp_y at weight w - k0 with a generator of weight w. Conjugation by
// Phi^1_chi changes these orders by -(d chi + d chi o S), S the symmetry,
// which doubles the defect part of d chi and cancels the rest.
OddifyResult normalize_symmetry(const MapPair& f, Symmetry sym) {
  const Grading& g = f.grading();
  const int order = f.order();
  const int top = order + std::max(g.k0, g.l0);
  OddifyResult out{f, {}};
  const Rational half(1, 2);
  // Sign with which the y-component defect enters -d chi/dx.
  const Rational g_sign = sym == Symmetry::central ? half : -half;

  for (int w = g.min_generator_weight(); w <= top; ++w) {
    const int px = w - g.l0;
    const int py = w - g.k0;
    const MapPair bad = defect(out.family, sym);
    Series fe = px <= order ? qh_project(bad.comp_x, px) : Series(g, order);
    Series ge = py <= order ? qh_project(bad.comp_y, py) : Series(g, order);
    if (fe.is_zero() && ge.is_zero()) continue;

    Series chi(g, top);
    try {
      if (py <= order) {
        chi = solve_hamiltonian_from_field((half * fe).widened(top), (g_sign * ge).widened(top));
      } else {
        chi = solve_hamiltonian_from_x_field((half * fe).widened(top));
      }
    } catch (const UnsolvableFieldError& err) {
      throw InconsistencyError("parity normalization obstructed at generator order " +
                               std::to_string(w) + ": " + err.what());
    }
    if (chi.is_zero()) continue;
    const Generator gen(std::move(chi));
    out.family = conjugate(out.family, gen);
    out.log.append(gen);

    const MapPair after = defect(out.family, sym);
    const bool x_clean = px > order || qh_project(after.comp_x, px).is_zero();
    const bool y_clean = py > order || qh_project(after.comp_y, py).is_zero();
    if (!x_clean || !y_clean)
      throw InconsistencyError("parity defect survived at generator order " + std::to_string(w));
  }
  return out;
}

}  // namespace

MapPair even_part(const MapPair& f) { return defect(f, Symmetry::central); }
MapPair reversing_defect(const MapPair& f) { return defect(f, Symmetry::reversing); }

OddifyResult oddify_nondiag(const MapPair& f) {
  require(f, Grading::nondiag(), LinearMap{-1, -1, 0, -1}, "oddify_nondiag");
  return normalize_symmetry(f, Symmetry::central);
}

OddifyResult oddify_diag_minus(const MapPair& f) {
  require(f, Grading::diag(), LinearMap{-1, 0, 0, -1}, "oddify_diag_minus");
  return normalize_symmetry(f, Symmetry::central);
}

OddifyResult reversing_oddify(const MapPair& f) {
  require(f, Grading::diag(), LinearMap{-1, 0, 0, 1}, "reversing_oddify");
  return normalize_symmetry(f, Symmetry::reversing);
}

}  // namespace pnf
