#include "pnf/lie.hpp"

#include "pnf/errors.hpp"

namespace pnf {

Generator::Generator(Series chi) : chi_(std::move(chi)), min_weight_(chi_.lowest_weight()) {
  const int bound = chi_.grading().min_generator_weight();
  if (min_weight_ && *min_weight_ < bound)
    throw GeneratorOrderError("generator has weight " + std::to_string(*min_weight_) +
                              " below k0 + l0 + 1 = " + std::to_string(bound) + " under grading " +
                              to_string(chi_.grading()));
}

Series lie_derivative(const Series& g, const Generator& chi) {
  return poisson_bracket_to(g, chi.chi(), g.order());
}

Series exp_lie(const Series& g, const Generator& chi) {
  if (chi.is_zero()) return g;
  Series sum = g;
  Series term = g;
  // Each pass raises the lowest weight by >= 1, so at most order+1 passes.
  for (int k = 1; !term.is_zero(); ++k) {
    term = lie_derivative(term, chi);
    term *= Rational(1, k);
    sum += term;
  }
  return sum;
}

MapPair time_one_map(const Generator& chi, int order) {
  const Grading& g = chi.grading();
  return {exp_lie(Series::x(g, order), chi), exp_lie(Series::y(g, order), chi)};
}

MapPair inverse_time_one_map(const Generator& chi, int order) {
  return time_one_map(chi.negated(), order);
}

Series pullback(const Series& g, const Generator& chi) { return exp_lie(g, chi); }

MapPair conjugate(const MapPair& f, const Generator& chi) {
  if (chi.is_zero()) return f;
  const int order = f.order();
  const MapPair forward = time_one_map(chi, order);
  const MapPair backward = inverse_time_one_map(chi, order);
  return compose_pair(backward, compose_pair(f, forward));
}

}  // namespace pnf
