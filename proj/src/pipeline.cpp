#include "pnf/birkhoff.hpp"
#include "pnf/errors.hpp"
#include "pnf/lie.hpp"
#include "pnf/nf.hpp"

namespace pnf {

namespace {

template <class Fn>
auto stage(const char* name, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (Error& e) {
    e.add_stage(name);
    throw;
  }
}

MapPair reflect_x(const MapPair& f) { return {-f.comp_x, f.comp_y}; }

// Cubic normalization followed by the diagonal reduction.
NormalFormResult reduce_diag(const Series& h, bool x_parity_only, GeneratorLog log) {
  const CubicNormalization cubic =
      stage("normalize_cubic", [&] { return normalize_cubic(qh_project(h, 3), x_parity_only); });
  const Series ht = substitute(h, cubic.map);
  log.append(cubic.map);
  NormalFormResult r = stage("unique_nf_diag", [&] { return unique_nf_diag(ht); });
  log.append(r.log);
  r.log = std::move(log);
  return r;
}

}  // namespace

MapFamily prepare_family(const MapPair& f, int order, std::optional<CaseTag> forced) {
  MapFamily fam = stage("classify", [&] { return classify_linear_part(f); });
  if (forced && *forced != fam.case_tag)
    throw UnsupportedLinearPartError("requested case " + to_string(*forced) +
                                     " but the linear part classifies as " +
                                     to_string(fam.case_tag));
  const Grading g = case_grading(fam.case_tag);
  if (!(fam.pair.grading() == g)) fam.pair = regrade(fam.pair, g);
  if (order > fam.pair.order())
    throw ParameterError("order " + std::to_string(order) + " exceeds the " +
                         std::to_string(fam.pair.order()) + " available under grading " +
                         to_string(g));
  fam.pair = truncated(fam.pair, order);
  const AreaReport area = check_area_preserving(fam.pair, reliable_det_order(fam.pair));
  if (!area.ok) throw NotAreaPreservingError(area.describe());
  return fam;
}

InterpolationOutcome interpolate_family(const MapPair& f, int order, std::optional<CaseTag> forced) {
  InterpolationOutcome out;
  out.family = prepare_family(f, order, forced);
  out.log = out.family.provenance;
  const MapPair& pair = out.family.pair;

  switch (out.family.case_tag) {
    case CaseTag::jordan_plus:
      out.h = stage("interpolate", [&] { return interpolate_nondiag(pair, order); });
      break;
    case CaseTag::diag_plus:
      out.h = stage("interpolate", [&] { return interpolate_diag(pair, order); });
      break;
    case CaseTag::jordan_minus: {
      const OddifyResult odd = stage("oddify", [&] { return oddify_nondiag(pair); });
      out.log.append(odd.log);
      out.h = stage("interpolate", [&] { return interpolate_nondiag(-odd.family, order); });
      out.central = true;
      break;
    }
    case CaseTag::diag_minus: {
      const OddifyResult odd = stage("oddify", [&] { return oddify_diag_minus(pair); });
      out.log.append(odd.log);
      out.h = stage("interpolate", [&] { return interpolate_diag(-odd.family, order); });
      out.central = true;
      break;
    }
    case CaseTag::reversing: {
      const OddifyResult odd = stage("reversing_oddify", [&] { return reversing_oddify(pair); });
      out.log.append(odd.log);
      out.h = stage("interpolate", [&] { return interpolate_diag(reflect_x(odd.family), order); });
      out.reversing = true;
      break;
    }
  }
  return out;
}

NormalFormResult pipeline_orient_preserving(const MapPair& f, int order, std::optional<CaseTag> forced) {
  InterpolationOutcome io = interpolate_family(f, order, forced);
  if (io.reversing)
    throw UnsupportedLinearPartError("orientation-reversing linear part; use the reversing pipeline");
  NormalFormResult r;
  const CaseTag tag = io.family.case_tag;

  if (tag == CaseTag::jordan_plus || tag == CaseTag::jordan_minus) {
    const ReducedHamiltonian pot = stage("to_potential_form", [&] { return to_potential_form(io.h); });
    r = stage("unique_nf_potential", [&] { return unique_nf_potential(pot.h); });
    GeneratorLog log = std::move(io.log);
    log.append(pot.log);
    log.append(r.log);
    r.log = std::move(log);
    if (tag == CaseTag::jordan_minus) {
      // h is even, so the x^3 term vanishes; uniqueness needs no leading power.
      r.unique = true;
      r.note = "even Hamiltonian: unique without a non-degeneracy condition";
    }
  } else {
    r = reduce_diag(io.h, false, std::move(io.log));
    if (r.unique) r.note = "non-degeneracy adopted: x y^2 coefficient of the cubic nonzero";
  }
  r.case_tag = tag;
  if (io.central) r.log.append(CentralMarker{});
  return r;
}

NormalFormResult pipeline_orient_reversing(const MapPair& f, int order) {
  InterpolationOutcome io = interpolate_family(f, order, CaseTag::reversing);
  const Series h3 = qh_project(io.h, 3);
  if (sgn(h3.coeff({1, 2, 0})) == 0)
    throw DegeneracyError("normalize_cubic: degenerate leading order: b = 0");
  NormalFormResult r = reduce_diag(io.h, true, std::move(io.log));
  r.case_tag = CaseTag::reversing;
  r.unique = true;
  r.note.clear();
  return r;
}

NormalFormResult run_pipeline(const MapPair& f, int order, std::optional<CaseTag> forced) {
  const CaseTag tag = forced ? *forced : classify_linear_part(f).case_tag;
  // A forced tag that disagrees with the classification fails in prepare_family.
  if (tag == CaseTag::reversing) return pipeline_orient_reversing(f, order);
  return pipeline_orient_preserving(f, order, forced);
}

std::optional<int> verify_factorization(const MapPair& f, const NormalFormResult& r) {
  const Grading g = case_grading(r.case_tag);
  MapPair cur = f.grading() == g ? f : regrade(f, g);
  // The working order: the Hamiltonian carries weights up to it.
  const Series h = r.h_normal.grading() == g ? r.h_normal : regrade(r.h_normal, g);
  const int work = std::min(cur.order(), h.order());
  cur = replay(truncated(cur, work), r.log);

  const int cmp = std::min(cur.order(), h.order() - std::max(g.k0, g.l0));
  if (cmp < 1) return std::nullopt;
  MapPair phi = time_one_map(Generator(h), cmp);
  bool central = false;
  for (const LogStep& s : r.log.steps) central = central || std::holds_alternative<CentralMarker>(s);
  if (central) phi = -phi;
  if (r.case_tag == CaseTag::reversing) phi = reflect_x(phi);
  if (!equal_to_order(truncated(cur, cmp), phi, cmp)) return std::nullopt;
  return cmp;
}

}  // namespace pnf
