#pragma once

#include <initializer_list>
#include <ostream>
#include <string>

#include "pnf/series.hpp"

namespace pnf {

// Readable gtest failure output.
inline void PrintTo(const Series& s, std::ostream* os) { *os << to_string(s); }
inline void PrintTo(const MapPair& f, std::ostream* os) {
  *os << "(" << to_string(f.comp_x) << ", " << to_string(f.comp_y) << ")";
}

}  // namespace pnf

namespace pnf::test {

struct Term {
  int k, l, m;
  const char* c;
};

inline Series poly(Grading g, int order, std::initializer_list<Term> terms) {
  Series s(g, order);
  for (const Term& t : terms) s.add_term({t.k, t.l, t.m}, parse_rational(t.c));
  return s;
}

inline MapPair pair(Grading g, int order, std::initializer_list<Term> x, std::initializer_list<Term> y) {
  return {poly(g, order, x), poly(g, order, y)};
}

// Schoolbook product over every pair of terms, no early exits: the oracle for
// the weight-sorted kernels.
inline Series naive_product(const Series& a, const Series& b) {
  Series out(a.grading(), a.order());
  for (const auto& [e, c] : a.terms())
    for (const auto& [f, d] : b.terms()) out.add_term({e.k + f.k, e.l + f.l, e.m + f.m}, c * d);
  return out;
}

// Substitution oracle: f(gx, gy) by repeated naive products.
inline Series naive_compose(const Series& f, const Series& gx, const Series& gy) {
  Series out(f.grading(), f.order());
  for (const auto& [e, c] : f.terms()) {
    Series term = Series::monomial(f.grading(), f.order(), {0, 0, e.m}, c);
    for (int i = 0; i < e.k; ++i) term = naive_product(term, gx);
    for (int i = 0; i < e.l; ++i) term = naive_product(term, gy);
    out += term;
  }
  return out;
}

}  // namespace pnf::test
