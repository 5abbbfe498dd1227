#include "pnf/log.hpp"

#include <algorithm>

#include "pnf/errors.hpp"

namespace pnf {

LinearMap LinearMap::inverse() const {
  const Rational det_value = det();
  if (sgn(det_value) == 0) throw InconsistencyError("singular linear map");
  return {d / det_value, -b / det_value, -c / det_value, a / det_value};
}

MapPair LinearMap::as_map(Grading grading, int order) const {
  MapPair out{Series(grading, order), Series(grading, order)};
  out.comp_x.add_term({1, 0, 0}, a);
  out.comp_x.add_term({0, 1, 0}, b);
  out.comp_y.add_term({1, 0, 0}, c);
  out.comp_y.add_term({0, 1, 0}, d);
  return out;
}

LinearMap LinearMap::after(const LinearMap& o) const {
  return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
}

std::size_t GeneratorLog::generator_count() const {
  return static_cast<std::size_t>(std::count_if(steps.begin(), steps.end(), [](const LogStep& s) {
    return std::holds_alternative<Generator>(s);
  }));
}

MapPair conjugate(const MapPair& f, const LinearMap& t) {
  const MapPair fwd = t.as_map(f.grading(), f.order());
  const MapPair back = t.inverse().as_map(f.grading(), f.order());
  return compose_pair(back, compose_pair(f, fwd));
}

MapPair conjugate_reflection(const MapPair& f) {
  const LinearMap r{-1, 0, 0, 1};
  return compose_pair(r.as_map(f.grading(), f.order()),
                      compose_pair(f, r.as_map(f.grading(), f.order())));
}

Series substitute(const Series& h, const LinearMap& t) {
  return compose(h, t.as_map(h.grading(), h.order()));
}

MapPair replay(const MapPair& f, const GeneratorLog& log) {
  MapPair cur = f;
  for (const LogStep& step : log.steps) {
    if (const auto* lin = std::get_if<LinearMap>(&step)) {
      cur = conjugate(cur, *lin);
    } else if (std::holds_alternative<Reflection>(step)) {
      cur = conjugate_reflection(cur);
    } else if (const auto* gen = std::get_if<Generator>(&step)) {
      if (gen->grading() == cur.grading()) {
        cur = conjugate(cur, *gen);
      } else {
        // Generators are polynomials: re-wrap at a container order large
        // enough to hold every term.
        const Series& chi = gen->chi();
        int order = cur.order();
        for (const auto& [e, c] : chi.terms()) order = std::max(order, cur.grading().weight(e));
        cur = conjugate(cur, Generator(regrade(chi, cur.grading(), order)));
      }
    }
  }
  return cur;
}

}  // namespace pnf
