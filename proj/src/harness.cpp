#include "pnf/harness.hpp"

#include "pnf/errors.hpp"
#include "pnf/log.hpp"

namespace pnf {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool SplitMix64::chance(double p) {
  constexpr double two53 = 9007199254740992.0;
  return static_cast<double>(next() >> 11) < p * two53;
}

Rational SplitMix64::small_rational() {
  const int r = static_cast<int>(next() % 18);
  const int p = r < 9 ? r - 9 : r - 8;  // -9..-1, 1..9
  const int q = static_cast<int>(next() % 4) + 1;
  Rational out(p, q);
  out.canonicalize();
  return out;
}

Series random_series(std::uint64_t seed, const Grading& g, int min_w, int max_w, double density,
                     int order, const std::function<bool(const Monomial&)>& keep) {
  SplitMix64 rng(seed);
  Series out(g, std::max(order, max_w));
  for (int w = std::max(min_w, 1); w <= max_w; ++w)
    for (const Monomial& e : monomials_of_weight(g, w)) {
      if ((e.k == 0 && e.l == 0) || (keep && !keep(e))) continue;
      if (rng.chance(density)) out.add_term(e, rng.small_rational());
    }
  return out;
}

Generator random_generator(std::uint64_t seed, const Grading& g, int min_w, int max_w, double density) {
  if (min_w < g.min_generator_weight())
    throw ParameterError("generator window starts at " + std::to_string(min_w) + ", below k0 + l0 + 1 = " +
                         std::to_string(g.min_generator_weight()));
  if (max_w < min_w) throw ParameterError("empty generator weight window");
  return Generator(random_series(seed, g, min_w, max_w, density));
}

namespace {

constexpr double kFamilyDensity = 0.3;

bool even_xy(const Monomial& e) { return (e.k + e.l) % 2 == 0; }
bool odd_x(const Monomial& e) { return e.k % 2 == 1; }

}  // namespace

Series random_case_hamiltonian(CaseTag tag, std::uint64_t seed, int order, int n) {
  SplitMix64 rng(seed);
  const Grading g = case_grading(tag);
  const int top = order + std::max(g.k0, g.l0);
  Series h(g, top);
  switch (tag) {
    case CaseTag::jordan_plus: {
      if (n < 3) throw ParameterError("leading power must be at least 3");
      h.add_term({0, 2, 0}, Rational(1, 2));
      h.add_term({n, 0, 0}, rng.small_rational());
      h += random_series(rng.next(), g, 2 * n + 1, top, kFamilyDensity, top);
      break;
    }
    case CaseTag::jordan_minus:
      h.add_term({0, 2, 0}, Rational(1, 2));
      h += random_series(rng.next(), g, 7, top, kFamilyDensity, top, even_xy);
      break;
    case CaseTag::diag_plus: {
      Series cubic(g, top);
      cubic.add_term({1, 2, 0}, 1);
      cubic.add_term({3, 0, 0}, rng.small_rational());
      const LinearMap shear_x{1, rng.chance(0.5) ? rng.small_rational() : Rational(0), 0, 1};
      const LinearMap shear_y{1, 0, rng.chance(0.5) ? rng.small_rational() : Rational(0), 1};
      const Rational s = rng.small_rational();
      h = substitute(cubic, shear_x.after(shear_y).after(LinearMap{s, 0, 0, 1 / s}));
      h += random_series(rng.next(), g, 4, top, kFamilyDensity, top);
      break;
    }
    case CaseTag::diag_minus:
      h += random_series(rng.next(), g, 4, top, kFamilyDensity, top, even_xy);
      break;
    case CaseTag::reversing:
      h.add_term({1, 2, 0}, rng.small_rational());
      h.add_term({3, 0, 0}, rng.small_rational());
      h += random_series(rng.next(), g, 4, top, kFamilyDensity, top, odd_x);
      break;
  }
  return h;
}

MapPair random_case_family(CaseTag tag, std::uint64_t seed, int order, int n) {
  SplitMix64 rng(seed);
  const Series h = random_case_hamiltonian(tag, rng.next(), order, n);
  MapPair f = time_one_map(Generator(h), order);
  if (tag == CaseTag::jordan_minus || tag == CaseTag::diag_minus) f = -f;
  if (tag == CaseTag::reversing) f.comp_x = -f.comp_x;
  const Grading& g = f.grading();
  const int lo = g.min_generator_weight();
  const Generator chi(random_series(rng.next(), g, lo, lo + 3, 0.5, order));
  return conjugate(f, chi);
}

// ---------------------------------------------------------------------------

int InvarianceReport::passed() const {
  int count = 0;
  for (const TrialOutcome& t : trials) count += t.passed ? 1 : 0;
  return count;
}

bool InvarianceReport::ok() const {
  return !uniqueness_asserted || passed() == static_cast<int>(trials.size());
}

std::string InvarianceReport::summary() const {
  std::string s = std::to_string(passed()) + "/" + std::to_string(trials.size()) +
                  " invariance trials passed";
  if (!uniqueness_asserted) s += " (uniqueness not asserted: " + note + ")";
  return s;
}

namespace {

std::optional<std::string> table_difference(const char* name, const CoeffTable& a, const CoeffTable& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    std::pair<int, int> key;
    if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) key = ia->first;
    else key = ib->first;
    const Rational va = (ia != a.end() && ia->first == key) ? ia->second : Rational(0);
    const Rational vb = (ib != b.end() && ib->first == key) ? ib->second : Rational(0);
    if (va != vb)
      return std::string("table ") + name + " differs at (k, m) = (" + std::to_string(key.first) + ", " +
             std::to_string(key.second) + "): " + to_string(va) + " vs " + to_string(vb);
    if (ia != a.end() && ia->first == key) ++ia;
    if (ib != b.end() && ib->first == key) ++ib;
  }
  return std::nullopt;
}

std::string optional_text(const std::optional<Rational>& q) { return q ? to_string(*q) : "none"; }

}  // namespace

std::optional<std::string> first_difference(const NormalFormResult& a, const NormalFormResult& b) {
  if (a.case_tag != b.case_tag) return "case " + to_string(a.case_tag) + " vs " + to_string(b.case_tag);
  if (a.n != b.n)
    return "n " + (a.n ? std::to_string(*a.n) : "none") + " vs " + (b.n ? std::to_string(*b.n) : "none");
  if (a.b != b.b) return "b " + optional_text(a.b) + " vs " + optional_text(b.b);
  if (a.a != b.a) return "a " + optional_text(a.a) + " vs " + optional_text(b.a);
  if (auto d = table_difference("U", a.potential_table, b.potential_table)) return d;
  if (auto d = table_difference("A", a.a_table, b.a_table)) return d;
  if (auto d = table_difference("B", a.b_table, b.b_table)) return d;
  return std::nullopt;
}

InvarianceReport invariance_check(const MapPair& f, int order, int trials, std::uint64_t seed) {
  InvarianceReport report;
  if (trials <= 0) return report;
  const NormalFormResult base = run_pipeline(f, order);
  const MapFamily fam = prepare_family(f, order, std::nullopt);
  report.uniqueness_asserted = base.unique;
  report.note = base.note;

  SplitMix64 rng(seed);
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(trials));
  for (auto& s : seeds) s = rng.next();
  report.trials.resize(seeds.size());

  const Grading& g = fam.pair.grading();
  const int lo = g.min_generator_weight();
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < trials; ++i) {
    TrialOutcome& out = report.trials[static_cast<std::size_t>(i)];
    out.index = i;
    try {
      const Generator chi(random_series(seeds[static_cast<std::size_t>(i)], g, lo, lo + 5, 0.5, order));
      const NormalFormResult r = run_pipeline(conjugate(fam.pair, chi), order, fam.case_tag);
      const auto diff = first_difference(base, r);
      out.passed = !diff;
      if (diff) out.detail = *diff;
    } catch (const Error& e) {
      out.passed = false;
      out.detail = e.what();
    }
  }
  return report;
}

RoundtripReport roundtrip_check(const Series& h_in, int order) {
  const Grading& g = h_in.grading();
  RoundtripReport report;
  report.order = order;
  if (auto lw = h_in.lowest_weight(); lw && *lw < g.min_generator_weight()) {
    const Series rest = drop_pure_eps(h_in);
    if (auto lr = rest.lowest_weight(); lr && *lr < g.min_generator_weight())
      throw ParameterError("Hamiltonian has weight below k0 + l0 + 1");
  }
  const Series h = drop_pure_eps(h_in);
  if (!(h == h_in)) report.note = "pure-eps gauge terms dropped before comparison";

  const int wide = std::max(h.order(), order + std::max(g.k0, g.l0));
  const Generator gen(h.widened(wide));
  const MapPair f = time_one_map(gen, order);
  const Series back = interpolate(f, order);
  const Series want = h.truncated(order);
  report.first_difference = lowest_difference(back, want);
  report.ok = !report.first_difference;

  // h o F - h through the order.
  const Series ht = h.widened(std::max(h.order(), order)).truncated(order);
  report.integral_ok = (compose(ht, f) - ht).is_zero();
  return report;
}

}  // namespace pnf
