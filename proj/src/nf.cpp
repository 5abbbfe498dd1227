#include "pnf/nf.hpp"

#include <algorithm>

#include "pnf/errors.hpp"
#include "pnf/lie.hpp"

namespace pnf {

namespace {

// Coefficients of y^j, each a series in (x, eps).
using YParts = std::map<int, Series>;

YParts split_by_y(const Series& f) {
  YParts parts;
  for (const auto& [e, c] : f.terms()) {
    auto it = parts.try_emplace(e.l, f.grading(), f.order()).first;
    it->second.add_term({e.k, 0, e.m}, c);
  }
  return parts;
}

Series part(const YParts& parts, int j, const Series& like) {
  const auto it = parts.find(j);
  return it == parts.end() ? Series(like.grading(), like.order()) : it->second;
}

// c x^dk y^dl v; dk may be negative when v is divisible by x^-dk.
Series shift(const Series& v, int dk, int dl, const Rational& c = 1) {
  Series out(v.grading(), v.order());
  for (const auto& [e, coef] : v.terms()) {
    if (e.k + dk < 0) throw InconsistencyError("shift: monomial not divisible by x^" + std::to_string(-dk));
    out.add_term({e.k + dk, e.l + dl, e.m}, c * coef);
  }
  return out;
}

Series assemble(const std::map<int, Series>& v, const Series& like) {
  Series chi(like.grading(), like.order());
  for (const auto& [j, vj] : v) chi += shift(vj, 0, j);
  return chi;
}

void require_grading(const Series& h, const Grading& g, const char* what) {
  if (!(h.grading() == g))
    throw IncompatibleContext(std::string(what) + " expects grading " + to_string(g) + ", got " +
                              to_string(h.grading()));
}

// Everything below weight `lead` must vanish and the weight-`lead` part must
// be supported on `allowed`.
void require_leading(const Series& h, int lead, const std::vector<Monomial>& allowed,
                     const char* what) {
  for (const auto& [e, c] : h.terms()) {
    const int w = h.weight(e);
    if (w > lead || (e.k == 0 && e.l == 0)) continue;
    if (w < lead || std::find(allowed.begin(), allowed.end(), e) == allowed.end())
      throw ShapeError(std::string(what) + ": unexpected leading monomial " + to_string(e));
  }
}

void require_shape(const Series& h, int t, const MonomialPredicate& allowed, const char* what) {
  const Series ht = qh_project(h, t);
  for (const auto& [e, c] : ht.terms())
    if (!allowed(e) && !(e.k == 0 && e.l == 0))
      throw InconsistencyError(std::string(what) + ": monomial " + to_string(e) +
                               " survived at order " + std::to_string(t));
}

CoeffTable y_free_table(const Series& h, const Monomial& skip = {0, 0, 0}) {
  CoeffTable table;
  for (const auto& [e, c] : h.terms())
    if (e.l == 0 && e.k > 0 && !(e == skip)) table[{e.k, e.m}] = c;
  return table;
}

// One Lie step h -> exp(L_chi) h; pure-eps monomials are central and dropped.
void apply_generator(Series& h, GeneratorLog& log, Series chi) {
  chi = drop_pure_eps(chi);
  if (chi.is_zero()) return;
  const Generator gen(std::move(chi));
  h = drop_pure_eps(exp_lie(h, gen));
  log.append(gen);
}

// V_{j-1} = integral of (U_j + c (j+1) x^(n-1) V_{j+1}) dx from the top
// y-power down: the particular solution keeping y^j (j >= 1) out of the
// transformed order for a lead y^2/2 + (c/n) x^n.
std::map<int, Series> potential_particular(const YParts& u, const Rational& c, int n,
                                           const Series& like) {
  std::map<int, Series> v;
  if (u.empty()) return v;
  const int top = u.rbegin()->first;
  for (int j = top; j >= 1; --j) {
    Series rhs = part(u, j, like);
    if (const auto it = v.find(j + 1); it != v.end()) rhs += shift(it->second, n - 1, 0, c * (j + 1));
    if (!rhs.is_zero()) v[j - 1] = integrate(rhs, Var::x);
  }
  return v;
}

}  // namespace

bool potential_shape(const Monomial& e) { return e.l == 0 || (e.k == 0 && e.l == 2 && e.m == 0); }

bool unique_potential_shape(const Monomial& e, int n) {
  if (!potential_shape(e)) return false;
  if (e.l != 0 || e.k == 0) return true;
  return !(e.k % n == n - 1 && e.k + n * e.m > n);
}

bool diag_shape(const Monomial& e) {
  return e.l == 0 || (e.l == 2 * e.k + 1) || (e.k == 1 && e.l == 2 && e.m == 0);
}

std::vector<Monomial> shape_violations(const NormalFormResult& r) {
  std::vector<Monomial> bad;
  for (const auto& [e, c] : r.h_normal.terms()) {
    bool ok;
    if (r.is_potential())
      ok = r.n ? unique_potential_shape(e, *r.n) : potential_shape(e);
    else
      ok = diag_shape(e);
    // Parity of the symmetric cases: even powers of x for jordan-, h odd in x
    // for the reversing case.
    if (r.case_tag == CaseTag::jordan_minus && e.l == 0) ok = ok && e.k % 2 == 0;
    if (r.case_tag == CaseTag::reversing) ok = ok && e.k % 2 == 1;
    if (!ok) bad.push_back(e);
  }
  return bad;
}

bool NormalFormResult::same_invariants(const NormalFormResult& o) const {
  return case_tag == o.case_tag && potential_table == o.potential_table && a == o.a &&
         a_table == o.a_table && b_table == o.b_table && n == o.n && b == o.b;
}

// ---------------------------------------------------------------------------
// Potential forms

ReducedHamiltonian to_potential_form(const Series& h) {
  const Grading g = Grading::nondiag();
  require_grading(h, g, "to_potential_form");
  require_leading(h, 6, {{0, 2, 0}, {3, 0, 0}}, "to_potential_form");
  if (h.coeff({0, 2, 0}) != Rational(1, 2))
    throw ShapeError("to_potential_form: leading part must contain y^2/2");
  const Rational b = h.coeff({3, 0, 0});

  ReducedHamiltonian out{drop_pure_eps(h), {}};
  for (int t = 7; t <= h.order(); ++t) {
    const YParts u = split_by_y(qh_project(out.h, t));
    auto higher = u.upper_bound(0);
    if (higher == u.end()) continue;
    const auto v = potential_particular(u, 3 * b, 3, out.h);
    apply_generator(out.h, out.log, assemble(v, out.h));
    require_shape(out.h, t, potential_shape, "to_potential_form");
  }
  return out;
}

std::optional<std::pair<int, Rational>> detect_leading_power(const Series& h) {
  for (const auto& [e, c] : h.terms())
    if (e.l == 0 && e.m == 0 && e.k > 0) return std::make_pair(e.k, c);
  return std::nullopt;
}

NormalFormResult unique_nf_potential(const Series& h_in) {
  NormalFormResult r;
  r.case_tag = CaseTag::jordan_plus;
  for (const auto& [e, c] : h_in.terms())
    if (!potential_shape(e) && !(e.k == 0 && e.l == 0))
      throw ShapeError("unique_nf_potential: input is not in potential form (" + to_string(e) + ")");

  const auto lead = detect_leading_power(h_in);
  if (!lead) {
    r.h_normal = drop_pure_eps(h_in);
    r.potential_table = y_free_table(r.h_normal);
    r.unique = false;
    r.note = "no leading power x^n through order " + std::to_string(h_in.order());
    return r;
  }
  const int n = lead->first;
  const Rational b = lead->second;
  if (n < 3) throw ShapeError("unique_nf_potential: leading power x^" + std::to_string(n) + " below x^3");

  Series h = drop_pure_eps(regrade(h_in, Grading::potential(n)));
  const Grading g = h.grading();
  const Rational nb = n * b;
  for (int t = 2 * n + 1; t <= h.order(); ++t) {
    const YParts u = split_by_y(qh_project(h, t));
    std::map<int, Series> v = potential_particular(u, nb, n, h);

    // U~_0 = U_0 + n b x^(n-1) V_1; its x^(n(s+1)-1) eps^m are removable by
    // adding alpha x^(ns) eps^m to V_1 and propagating through V_3, V_5, ...
    Series u0 = part(u, 0, h);
    if (const auto it = v.find(1); it != v.end()) u0 += shift(it->second, n - 1, 0, nb);
    Series delta(g, h.order());
    for (const auto& [e, c] : u0.terms())
      if (e.k % n == n - 1 && !unique_potential_shape(e, n)) delta.add_term({e.k - (n - 1), 0, e.m}, -c / nb);
    for (int j = 1; !delta.is_zero(); j += 2) {
      auto [it, fresh] = v.try_emplace(j, g, h.order());
      it->second += delta;
      // Keeps U~_{j+1} = 0: (j+2) n b x^(n-1) dV_{j+2} = d/dx dV_j.
      delta = shift(derivative(delta, Var::x), -(n - 1), 0, 1 / (nb * (j + 2)));
    }
    apply_generator(h, r.log, assemble(v, h));
    require_shape(h, t, [n](const Monomial& e) { return unique_potential_shape(e, n); },
                  "unique_nf_potential");
  }
  r.h_normal = h;
  r.potential_table = y_free_table(h);
  r.n = n;
  r.b = b;
  r.unique = true;
  return r;
}

// ---------------------------------------------------------------------------
// Diagonal forms

NormalFormResult unique_nf_diag(const Series& h_in) {
  const Grading g = Grading::diag();
  require_grading(h_in, g, "unique_nf_diag");
  require_leading(h_in, 3, {{1, 2, 0}, {3, 0, 0}}, "unique_nf_diag");
  if (h_in.coeff({1, 2, 0}) != 1) throw ShapeError("unique_nf_diag: leading part must contain x y^2");
  const Rational a = h_in.coeff({3, 0, 0});

  NormalFormResult r;
  r.case_tag = CaseTag::diag_plus;
  Series h = drop_pure_eps(h_in);
  for (int t = 4; t <= h.order(); ++t) {
    const YParts u = split_by_y(qh_project(h, t));
    std::map<int, Series> v;
    // U~_j = U_j + 3a (j+1) x^2 V_{j+1} + (j-1) V_{j-1} - 2x V'_{j-1}; on
    // x^k eps^m the last two act as (j-1-2k), which vanishes on y (x y^2)^k.
    for (int j = t; j >= 1; --j) {
      Series rhs = part(u, j, h);
      if (const auto it = v.find(j + 1); it != v.end()) rhs += shift(it->second, 2, 0, 3 * a * (j + 1));
      Series vj(g, h.order());
      for (const auto& [e, c] : rhs.terms()) {
        const int factor = j - 1 - 2 * e.k;
        if (factor != 0) vj.add_term(e, -c / factor);
      }
      if (!vj.is_zero()) v[j - 1] = vj;
    }
    apply_generator(h, r.log, assemble(v, h));
    require_shape(h, t, diag_shape, "unique_nf_diag");
  }

  r.h_normal = h;
  r.a = a;
  r.a_table = y_free_table(h, {3, 0, 0});
  for (const auto& [e, c] : h.terms())
    if (e.l == 2 * e.k + 1) r.b_table[{e.k, e.m}] = c;
  r.unique = sgn(a) >= 0;
  if (!r.unique) r.note = "a < 0: the sign choices of the cubic leave up to three normal forms";
  return r;
}

// ---------------------------------------------------------------------------
// Generic solver

HomologicalSolution generic_homological_solve(const Series& lead, const Series& target,
                                              const MonomialPredicate& allowed,
                                              const MonomialPredicate& gauge_last) {
  const Grading& g = target.grading();
  HomologicalSolution sol{Series(g, target.order()), target};
  const auto t = target.lowest_weight();
  if (!t) return sol;
  if (*target.highest_weight() != *t) throw ShapeError("generic_homological_solve: target is not homogeneous");
  const auto wl = lead.lowest_weight();
  if (!wl || *lead.highest_weight() != *wl)
    throw ShapeError("generic_homological_solve: lead is not homogeneous");
  const int p = *t - *wl + g.k0 + g.l0;

  std::vector<Monomial> cols;
  std::vector<Monomial> tail;
  for (const Monomial& e : monomials_of_weight(g, p)) {
    if (e.k == 0 && e.l == 0) continue;
    (gauge_last && gauge_last(e) ? tail : cols).push_back(e);
  }
  cols.insert(cols.end(), tail.begin(), tail.end());

  // Row per forbidden monomial of weight t.
  std::vector<Monomial> rows;
  for (const Monomial& e : monomials_of_weight(g, *t))
    if (!allowed(e) && !(e.k == 0 && e.l == 0)) rows.push_back(e);
  const std::size_t nr = rows.size(), nc = cols.size();
  std::vector<std::vector<Rational>> mat(nr, std::vector<Rational>(nc + 1));
  const Series lead_wide = lead.widened(std::max(lead.order(), target.order()));
  for (std::size_t c = 0; c < nc; ++c) {
    const Series img = poisson_bracket_to(lead_wide, Series::monomial(g, target.order(), cols[c]), *t);
    for (std::size_t i = 0; i < nr; ++i) mat[i][c] = img.coeff(rows[i]);
  }
  for (std::size_t i = 0; i < nr; ++i) mat[i][nc] = -target.coeff(rows[i]);

  // Reduced row echelon form; free columns stay zero.
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < nc && rank < nr; ++c) {
    std::size_t piv = rank;
    while (piv < nr && sgn(mat[piv][c]) == 0) ++piv;
    if (piv == nr) continue;
    std::swap(mat[piv], mat[rank]);
    const Rational inv = 1 / mat[rank][c];
    for (auto& x : mat[rank]) x *= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == rank || sgn(mat[i][c]) == 0) continue;
      const Rational f = mat[i][c];
      for (std::size_t k = c; k <= nc; ++k) mat[i][k] -= f * mat[rank][k];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  std::string obstruction;
  for (std::size_t i = rank; i < nr; ++i)
    if (sgn(mat[i][nc]) != 0) obstruction += (obstruction.empty() ? "" : ", ") + to_string(rows[i]);
  if (!obstruction.empty())
    throw InconsistencyError("homological equation unsolvable at order " + std::to_string(*t) +
                             "; obstructed rows after elimination: " + obstruction);

  for (std::size_t i = 0; i < rank; ++i) sol.chi.add_term(cols[pivot_col[i]], mat[i][nc]);
  sol.residual = target + poisson_bracket_to(lead_wide, sol.chi, target.order());
  sol.residual = qh_project(sol.residual, *t);
  return sol;
}

namespace {

Series generic_reduce(Series h, int lead_weight, int first, const MonomialPredicate& allowed,
                      const MonomialPredicate& gauge) {
  const Series lead = qh_project(h, lead_weight);
  GeneratorLog unused;
  for (int t = first; t <= h.order(); ++t) {
    const Series target = qh_project(h, t);
    bool clean = true;
    for (const auto& [e, c] : target.terms()) clean = clean && (allowed(e) || (e.k == 0 && e.l == 0));
    if (clean) continue;
    const HomologicalSolution sol = generic_homological_solve(lead, target, allowed, gauge);
    apply_generator(h, unused, sol.chi);
    require_shape(h, t, allowed, "generic reduction");
  }
  return h;
}

}  // namespace

Series generic_potential_form(const Series& h) {
  require_grading(h, Grading::nondiag(), "generic_potential_form");
  return generic_reduce(drop_pure_eps(h), 6, 7, potential_shape,
                        [](const Monomial& e) { return e.k == 0; });
}

Series generic_unique_potential(const Series& h_in) {
  const auto lead = detect_leading_power(h_in);
  if (!lead) return drop_pure_eps(h_in);
  const int n = lead->first;
  Series h = drop_pure_eps(regrade(h_in, Grading::potential(n)));
  return generic_reduce(h, 2 * n, 2 * n + 1,
                        [n](const Monomial& e) { return unique_potential_shape(e, n); },
                        [](const Monomial& e) { return e.k == 0; });
}

Series generic_unique_diag(const Series& h) {
  require_grading(h, Grading::diag(), "generic_unique_diag");
  return generic_reduce(drop_pure_eps(h), 3, 4, diag_shape,
                        [](const Monomial& e) { return e.l == 2 * e.k; });
}

}  // namespace pnf
