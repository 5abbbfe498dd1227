#include "pnf/interp.hpp"

#include <sstream>

#include "pnf/errors.hpp"
#include "pnf/lie.hpp"

namespace pnf {

std::string to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::jordan_plus: return "jordan+";
    case CaseTag::jordan_minus: return "jordan-";
    case CaseTag::diag_plus: return "diag+";
    case CaseTag::diag_minus: return "diag-";
    case CaseTag::reversing: return "reversing";
  }
  return "?";
}

std::optional<CaseTag> parse_case_tag(std::string_view text) {
  for (CaseTag t : {CaseTag::jordan_plus, CaseTag::jordan_minus, CaseTag::diag_plus,
                    CaseTag::diag_minus, CaseTag::reversing})
    if (to_string(t) == text) return t;
  return std::nullopt;
}

Grading case_grading(CaseTag tag) {
  return (tag == CaseTag::jordan_plus || tag == CaseTag::jordan_minus) ? Grading::nondiag()
                                                                        : Grading::diag();
}

namespace {

constexpr Monomial kX{1, 0, 0};
constexpr Monomial kY{0, 1, 0};

LinearMap linear_part(const MapPair& f) {
  return {f.comp_x.coeff(kX), f.comp_x.coeff(kY), f.comp_y.coeff(kX), f.comp_y.coeff(kY)};
}

std::string describe(const LinearMap& m) {
  std::ostringstream os;
  os << "[[" << to_string(m.a) << ", " << to_string(m.b) << "], [" << to_string(m.c) << ", "
     << to_string(m.d) << "]]";
  return os.str();
}

std::optional<Rational> rational_sqrt(const Rational& q) {
  if (sgn(q) <= 0) return std::nullopt;
  const mpz_class& num = q.get_num();
  const mpz_class& den = q.get_den();
  if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t()))
    return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
  Rational r(rn, rd);
  r.canonicalize();
  return r;
}

bool is(const LinearMap& m, int a, int b, int c, int d) {
  return m.a == a && m.b == b && m.c == c && m.d == d;
}

void apply(MapFamily& fam, const LinearMap& t) {
  fam.pair = conjugate(fam.pair, t);
  fam.provenance.append(t);
}

void apply_reflection(MapFamily& fam) {
  fam.pair = conjugate_reflection(fam.pair);
  fam.provenance.append(Reflection{});
}

}  // namespace

MapFamily classify_linear_part(const MapPair& f) {
  const Monomial zero{0, 0, 0};
  if (sgn(f.comp_x.coeff(zero)) != 0 || sgn(f.comp_y.coeff(zero)) != 0)
    throw UnsupportedLinearPartError("origin is not a fixed point at eps = 0");

  MapFamily fam;
  fam.pair = f;
  fam.original_linear = linear_part(f);
  const Grading& g = f.grading();
  LinearMap m = fam.original_linear;

  const bool upper_shear_ok = g.l0 >= g.k0;  // x -> x + c y keeps weights
  const bool lower_shear_ok = g.k0 >= g.l0;

  // Equal eigenvalues +-1 with an upper Jordan block.
  if (m.a == m.d && abs(m.a) == 1 && sgn(m.c) == 0) {
    const int mu = m.a > 0 ? 1 : -1;
    if (sgn(m.b) == 0) {
      fam.case_tag = mu > 0 ? CaseTag::diag_plus : CaseTag::diag_minus;
      return fam;
    }
    const Rational t = m.b / mu;
    const auto s = rational_sqrt(abs(t));
    if (!s)
      throw UnsupportedLinearPartError("Jordan block " + describe(m) +
                                       " needs an irrational scaling to reach a = +-1");
    if (*s != 1) apply(fam, LinearMap{*s, 0, 0, 1 / *s});
    if (sgn(t) < 0) apply_reflection(fam);
    fam.case_tag = mu > 0 ? CaseTag::jordan_plus : CaseTag::jordan_minus;
    fam.c_quad = fam.pair.comp_y.coeff({2, 0, 0});
    return fam;
  }

  // Eigenvalues -1 and 1 in triangular form: diagonalize with a shear.
  const bool triangular = sgn(m.b) == 0 || sgn(m.c) == 0;
  if (triangular && ((m.a == -1 && m.d == 1) || (m.a == 1 && m.d == -1))) {
    if (sgn(m.b) != 0) {
      if (!upper_shear_ok) throw UnsupportedLinearPartError("cannot diagonalize " + describe(m));
      // Eigenvector for m.a sits on the x-axis; shear the other one into place.
      apply(fam, LinearMap{1, m.b / (m.d - m.a), 0, 1});
    } else if (sgn(m.c) != 0) {
      if (!lower_shear_ok) throw UnsupportedLinearPartError("cannot diagonalize " + describe(m));
      apply(fam, LinearMap{1, 0, m.c / (m.a - m.d), 1});
    }
    m = linear_part(fam.pair);
    if (m.a == 1) {
      if (g.k0 != g.l0)
        throw UnsupportedLinearPartError("swapping axes of " + describe(m) +
                                         " needs a grading with k0 = l0");
      apply(fam, LinearMap{0, 1, -1, 0});
    }
    if (!is(linear_part(fam.pair), -1, 0, 0, 1))
      throw InconsistencyError("diagonalization of " + describe(fam.original_linear) + " failed");
    fam.case_tag = CaseTag::reversing;
    return fam;
  }

  throw UnsupportedLinearPartError("linear part " + describe(m) +
                                   " is not a supported parabolic form");
}

// ---------------------------------------------------------------------------

std::string AreaReport::describe() const {
  if (ok) return "area-preserving through order " + std::to_string(checked_order);
  return "det DF differs from " + std::to_string(expected_det) + " at " +
         to_string(*first_violation) + " (coefficient " + to_string(violation_coeff) + ")";
}

int reliable_det_order(const MapPair& f) {
  const Grading& g = f.grading();
  return f.order() - std::max(g.k0, g.l0);
}

AreaReport check_area_preserving(const MapPair& f, int order) {
  AreaReport report;
  report.checked_order = order;
  const LinearMap lin = linear_part(f);
  report.expected_det = sgn(lin.det()) < 0 ? -1 : 1;

  Series diff = jacobian_det(f);
  diff.add_term({0, 0, 0}, Rational(-report.expected_det));
  std::optional<int> best_w;
  for (const auto& [e, c] : diff.terms()) {
    const int w = diff.weight(e);
    if (w > order) continue;
    if (!best_w || w < *best_w) {
      best_w = w;
      report.first_violation = e;
      report.violation_coeff = c;
    }
  }
  report.ok = !best_w.has_value();
  return report;
}

// ---------------------------------------------------------------------------

Series solve_hamiltonian_from_x_field(const Series& f) { return integrate(f, Var::y); }

Series solve_hamiltonian_from_field(const Series& f, const Series& g) {
  // Coefficients with l > 0 come from f; the y-free part from g.
  Series h = integrate(f, Var::y);
  Series g_free(g.grading(), g.order());
  for (const auto& [e, c] : g.terms())
    if (e.l == 0) g_free.add_term(e, c);
  h -= integrate(g_free, Var::x);

  const Series mismatch = -derivative(h, Var::x) - g;
  if (!mismatch.is_zero()) {
    const auto& [e, c] = *mismatch.terms().begin();
    // k a_{k,l-1,m} + l b_{k-1,l,m} = 0 fails at the monomial of h one step up.
    throw UnsolvableFieldError("field has nonzero divergence: k a_{k,l-1,m} + l b_{k-1,l,m} != 0 at k=" +
                               std::to_string(e.k + 1) + " l=" + std::to_string(e.l) +
                               " m=" + std::to_string(e.m));
  }
  return h;
}

Series interpolate(const MapPair& f, int order) {
  const Grading& g = f.grading();
  if (order > f.order())
    throw ParameterError("interpolation order " + std::to_string(order) +
                         " exceeds the map's order " + std::to_string(f.order()));
  Series h(g, order);
  const Series fx = f.comp_x.truncated(order);
  const Series fy = f.comp_y.truncated(order);
  for (int w = g.min_generator_weight(); w <= order; ++w) {
    // Order w of h is fixed by order w - l0 of comp_x and w - k0 of comp_y.
    const int px = w - g.l0;
    const int py = w - g.k0;
    const Generator partial(h);
    const int need = std::max(px, py);
    const Series x = Series::x(g, need);
    const Series y = Series::y(g, need);
    const Series phi_x = qh_project(exp_lie(x, partial), px).widened(order);
    const Series phi_y = qh_project(exp_lie(y, partial), py).widened(order);
    const Series rf = qh_project(fx, px) - phi_x;
    const Series rg = qh_project(fy, py) - phi_y;
    try {
      h += solve_hamiltonian_from_field(rf, rg);
    } catch (const UnsolvableFieldError& err) {
      throw InconsistencyError("interpolation obstructed at order " + std::to_string(w) + ": " +
                               err.what());
    }
  }
  return h;
}

namespace {

void require_linear(const MapPair& f, const LinearMap& want, const Grading& grading,
                    const char* what) {
  if (!(f.grading() == grading))
    throw IncompatibleContext(std::string(what) + " expects grading " + to_string(grading));
  const LinearMap lin = linear_part(f);
  if (!(lin == want))
    throw UnsupportedLinearPartError(std::string(what) + " expects linear part " + describe(want) +
                                     ", got " + describe(lin));
}

}  // namespace

Series interpolate_nondiag(const MapPair& f, int order) {
  require_linear(f, LinearMap{1, 1, 0, 1}, Grading::nondiag(), "interpolate_nondiag");
  return interpolate(f, order);
}

Series interpolate_diag(const MapPair& f, int order) {
  require_linear(f, LinearMap{1, 0, 0, 1}, Grading::diag(), "interpolate_diag");
  return interpolate(f, order);
}

}  // namespace pnf
