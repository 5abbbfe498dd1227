// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "pnf/birkhoff.hpp"
#include "pnf/errors.hpp"
#include "pnf/harness.hpp"
#include "pnf/psf.hpp"

namespace fs = std::filesystem;
using namespace pnf;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

Outcome fail(std::string why) { return {false, std::move(why)}; }

const Grading kDiag = Grading::diag();
const Grading kNondiag = Grading::nondiag();

constexpr int kNondiagOrder = 24;
constexpr int kDiagOrder = 12;

std::string seed_text(const char* what, std::uint64_t seed) { return std::string(what) + " seed " + std::to_string(seed); }

// --- 1 ----------------------------------------------------------------------

Outcome leading_order() {
  for (const char* c_text : {"1", "-2", "7/3"}) {
    const Rational c = parse_rational(c_text);
    // (x + y + c x^2, y + c x^2): area-preserving, y-component y + c x^2.
    MapPair f = MapPair::identity(kNondiag, 12);
    f.comp_x.add_term({0, 1, 0}, 1);
    f.comp_x.add_term({2, 0, 0}, c);
    f.comp_y.add_term({2, 0, 0}, c);
    const Series h = interpolate_nondiag(f, 12);
    Series want(kNondiag, 12);
    want.add_term({0, 2, 0}, Rational(1, 2));
    want.add_term({3, 0, 0}, -c / 3);
    if (!(qh_project(h, 6) == want)) return fail("c = " + std::string(c_text) + ": got " + to_string(qh_project(h, 6)));
  }
  return {true, "h_6 = y^2/2 - c x^3/3 for c in {1, -2, 7/3}"};
}

// --- 2, 3 -------------------------------------------------------------------

const std::vector<CaseTag> kAllCases = {CaseTag::jordan_plus, CaseTag::jordan_minus, CaseTag::diag_plus,
                                        CaseTag::diag_minus, CaseTag::reversing};

int roundtrip_order(CaseTag tag) { return case_grading(tag) == kNondiag ? kNondiagOrder : kDiagOrder; }

struct RoundtripRun {
  int instances = 0;
  std::string first_interp_failure;
  std::string first_integral_failure;
};

const RoundtripRun& roundtrip_run() {
  static const RoundtripRun run = [] {
    RoundtripRun r;
    for (CaseTag tag : kAllCases)
      for (std::uint64_t s = 1; s <= 20; ++s) {
        const int n = roundtrip_order(tag);
        const Series h = random_case_hamiltonian(tag, 1000 + s, n, tag == CaseTag::jordan_plus ? 3 + s % 2 : 3);
        const RoundtripReport rep = roundtrip_check(h, n);
        ++r.instances;
        const std::string where = to_string(tag) + " seed " + std::to_string(1000 + s);
        if (!rep.ok && r.first_interp_failure.empty())
          r.first_interp_failure = where + " differs at order " + std::to_string(rep.first_difference.value_or(-1));
        if (!rep.integral_ok && r.first_integral_failure.empty()) r.first_integral_failure = where;
      }
    return r;
  }();
  return run;
}

Outcome interpolation_roundtrip() {
  const RoundtripRun& r = roundtrip_run();
  if (!r.first_interp_failure.empty()) return fail(r.first_interp_failure);
  return {true, std::to_string(r.instances) + " Hamiltonians (20 per case), NONDIAG N=" + std::to_string(kNondiagOrder) +
                    ", DIAG N=" + std::to_string(kDiagOrder)};
}

Outcome formal_integral() {
  const RoundtripRun& r = roundtrip_run();
  if (!r.first_integral_failure.empty()) return fail("h o F != h for " + r.first_integral_failure);
  return {true, "h o F - h = 0 on all " + std::to_string(r.instances) + " instances"};
}

// --- 4, 5 -------------------------------------------------------------------

struct UniquenessCase {
  const char* label;
  CaseTag tag;
  int n;
  int order;
};

const std::vector<UniquenessCase> kUniquenessCases = {
    {"jordan+ n=3", CaseTag::jordan_plus, 3, 16},
    {"jordan+ n=4", CaseTag::jordan_plus, 4, 16},
    {"jordan-", CaseTag::jordan_minus, 3, 16},
    {"reversing", CaseTag::reversing, 3, 10},
};

Outcome uniqueness() {
  std::ostringstream os;
  for (const UniquenessCase& c : kUniquenessCases) {
    const MapPair f = random_case_family(c.tag, 77, c.order, c.n);
    const InvarianceReport rep = invariance_check(f, c.order, 10, 2024);
    if (!rep.uniqueness_asserted) return fail(std::string(c.label) + ": uniqueness not asserted (" + rep.note + ")");
    for (const TrialOutcome& t : rep.trials)
      if (!t.passed) return fail(std::string(c.label) + " trial " + std::to_string(t.index) + ": " + t.detail);
    os << c.label << " 10/10; ";
  }
  std::string s = os.str();
  return {true, s.substr(0, s.size() - 2)};
}

// Forbidden monomials, written out independently of the library predicates.
bool forbidden(const NormalFormResult& r, const Monomial& e) {
  if (e.k == 0 && e.l == 0) return true;
  switch (r.case_tag) {
    case CaseTag::jordan_plus:
    case CaseTag::jordan_minus: {
      if (e.l > 0) return !(e.k == 0 && e.l == 2 && e.m == 0);
      if (r.case_tag == CaseTag::jordan_minus && e.k % 2 == 1) return true;
      if (!r.n) return false;
      const int n = *r.n;
      return e.k % n == n - 1 && Grading::potential(n).weight(e) > 2 * n;
    }
    default: {
      const bool lead = (e.k == 1 && e.l == 2 && e.m == 0) || (e.k == 3 && e.l == 0 && e.m == 0);
      const bool allowed = lead || e.l == 0 || e.l == 2 * e.k + 1;
      if (!allowed) return true;
      return r.case_tag == CaseTag::reversing && e.k % 2 == 0;
    }
  }
}

Outcome shape_exactness() {
  struct Probe {
    CaseTag tag;
    int n;
    int order;
  };
  const std::vector<Probe> probes = {{CaseTag::jordan_plus, 3, 16},
                                     {CaseTag::jordan_plus, 4, 16},
                                     {CaseTag::jordan_minus, 3, 16},
                                     {CaseTag::diag_plus, 3, 10},
                                     {CaseTag::reversing, 3, 10}};
  int checked = 0;
  for (const Probe& p : probes)
    for (std::uint64_t s = 1; s <= 3; ++s) {
      const NormalFormResult r = run_pipeline(random_case_family(p.tag, 300 + s, p.order, p.n), p.order);
      const Series& h = r.h_normal;
      if (!h.is_zero() && r.h_normal.coeff({0, 2, 0}) == 0 && r.is_potential())
        return fail(seed_text(to_string(p.tag).c_str(), 300 + s) + ": y^2/2 missing");
      for (int w = 0; w <= h.order(); ++w)
        for (const Monomial& e : monomials_of_weight(h.grading(), w)) {
          ++checked;
          if (forbidden(r, e) && h.coeff(e) != 0)
            return fail(seed_text(to_string(p.tag).c_str(), 300 + s) + ": forbidden " + to_string(e) + " = " +
                        to_string(h.coeff(e)));
        }
    }
  return {true, std::to_string(checked) + " monomials checked over 15 normal forms"};
}

// --- 6 ----------------------------------------------------------------------

Outcome parity_normalization() {
  struct Route {
    CaseTag tag;
    int order;
    std::function<OddifyResult(const MapPair&)> run;
    std::function<MapPair(const MapPair&)> defect;
  };
  const std::vector<Route> routes = {
      {CaseTag::jordan_minus, 16, oddify_nondiag, even_part},
      {CaseTag::diag_minus, 10, oddify_diag_minus, even_part},
      {CaseTag::reversing, 10, reversing_oddify, reversing_defect},
  };
  for (const Route& rt : routes)
    for (std::uint64_t s = 1; s <= 10; ++s) {
      const MapPair f = random_case_family(rt.tag, 500 + s, rt.order);
      const std::string where = seed_text(to_string(rt.tag).c_str(), 500 + s);
      const MapPair before = rt.defect(f);
      if (before.comp_x.is_zero() && before.comp_y.is_zero()) return fail(where + ": input not contaminated");
      const OddifyResult out = rt.run(f);
      const MapPair after = rt.defect(out.family);
      if (!after.comp_x.is_zero() || !after.comp_y.is_zero()) return fail(where + ": parity defect remains");
      const int p = reliable_det_order(f);
      if (!equal_to_order(jacobian_det(f), jacobian_det(out.family), p)) return fail(where + ": determinant changed");
    }
  return {true, "30 contaminated families (jordan-, diag-, reversing): defect zero, det preserved"};
}

// --- 7 ----------------------------------------------------------------------

Outcome kernel_law() {
  int checked = 0;
  for (int n : {3, 4}) {
    const Grading g = Grading::potential(n);
    const int order = 8 * n + 2 * n * 3;
    Series lead(g, order);
    lead.add_term({0, 2, 0}, Rational(1, 2));
    lead.add_term({n, 0, 0}, Rational(5, 7));
    for (int k = 1; k <= 3; ++k)
      for (int j = 1; j <= k; ++j) {
        Series w = Series::monomial(g, order, {0, 0, k - j});
        for (int i = 0; i < j; ++i) w = w * lead;
        if (!poisson_bracket(lead, w).is_zero())
          return fail("n=" + std::to_string(n) + " k=" + std::to_string(k) + " j=" + std::to_string(j));
        ++checked;
      }
  }
  return {true, std::to_string(checked) + " kernel elements annihilated"};
}

// --- 8 ----------------------------------------------------------------------

Series normalized_diag_input(std::uint64_t seed, int order) {
  const Series h = random_case_hamiltonian(CaseTag::diag_plus, seed, order);
  return substitute(h, normalize_cubic(qh_project(h, 3)).map).truncated(order);
}

Outcome recurrence_vs_solver() {
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const Series h = random_case_hamiltonian(CaseTag::jordan_plus, 700 + s, 18, 3 + s % 2);
    const Series pot = to_potential_form(h).h;
    if (!(generic_potential_form(h) == pot)) return fail(seed_text("potential form", 700 + s));
    if (!(generic_unique_potential(pot) == unique_nf_potential(pot).h_normal))
      return fail(seed_text("unique potential", 700 + s));
    const Series hd = normalized_diag_input(700 + s, 10);
    if (!(generic_unique_diag(hd) == unique_nf_diag(hd).h_normal)) return fail(seed_text("diagonal", 700 + s));
  }
  return {true, "10 inputs per reduction (potential form, unique potential, diagonal) identical"};
}

// --- 9 ----------------------------------------------------------------------

Outcome resonant_stability() {
  const int order = 10;
  int stable = 0;
  std::string first_change;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    const Series h = normalized_diag_input(900 + s, order);
    const NormalFormResult r = unique_nf_diag(h);
    bool same = true;
    for (int k = 1; kDiag.weight({k, 2 * k + 1, 0}) <= order; ++k)
      for (int m = 0; kDiag.weight({k, 2 * k + 1, m}) <= order; ++m) {
        const Monomial e{k, 2 * k + 1, m};
        if (h.coeff(e) == r.h_normal.coeff(e)) continue;
        same = false;
        if (first_change.empty())
          first_change = "seed " + std::to_string(900 + s) + ", a = " + to_string(*r.a) + ": " + to_string(e) + " " +
                         to_string(h.coeff(e)) + " -> " + to_string(r.h_normal.coeff(e));
      }
    stable += same ? 1 : 0;
  }
  const std::string summary = std::to_string(stable) + "/10 inputs keep every resonant coefficient";
  if (stable != 10) return fail(summary + "; first change at " + first_change);
  return {true, summary};
}

// --- 10 ---------------------------------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cli_exit(const std::string& args) {
  const std::string cmd = std::string(PNF_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

Outcome cli() {
  const fs::path golden(PNF_GOLDEN_DIR);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(golden)) {
    const std::string text = slurp(entry.path());
    const std::string ext = entry.path().extension().string();
    std::string again;
    try {
      if (ext == ".psf" || ext == ".interp") again = emit_psf(parse_psf(text));
      else if (ext == ".result") again = emit_result(parse_result(text));
      else continue;
    } catch (const Error& e) {
      return fail(entry.path().filename().string() + ": " + e.what());
    }
    if (again != text) return fail(entry.path().filename().string() + " does not round-trip");
    ++files;
  }

  const fs::path tmp = fs::temp_directory_path() / "pnf_acceptance";
  fs::create_directories(tmp);
  auto write = [&](const char* name, const std::string& text) {
    std::ofstream(tmp / name, std::ios::binary) << text;
    return (tmp / name).string();
  };
  const std::string map_head = "psf 1\ngrading 1 1 3\norder 8\ncomponent x\n";
  struct Expect {
    const char* what;
    std::string args;
    int code;
  };
  const std::vector<Expect> cases = {
      {"ok", "normalize --order 12 " + (golden / "shear.psf").string(), 0},
      {"parse", "normalize " + write("zero_den.psf", "psf 1\ngrading 2 3 6\norder 4\ncomponent x\n0 0 0 1/0\nend\n"), 2},
      {"area", "normalize " + write("area.psf", map_head + "1 0 0 1\n2 0 0 1\ncomponent y\n0 1 0 1\nend\n"), 3},
      {"linear part", "normalize " + write("rot.psf", map_head + "0 1 0 -1\ncomponent y\n1 0 0 1\nend\n"), 4},
      {"degeneracy", "normalize " + write("flip.psf", map_head + "1 0 0 -1\ncomponent y\n0 1 0 1\nend\n"), 5},
      {"inconsistency", "flow " + write("low.psf", "psf 1\ngrading 2 3 6\norder 12\ncomponent h\n2 0 0 1\nend\n"), 6},
  };
  for (const Expect& c : cases) {
    const int got = cli_exit(c.args);
    if (got != c.code)
      return fail(std::string(c.what) + ": exit " + std::to_string(got) + ", expected " + std::to_string(c.code));
  }
  fs::remove_all(tmp);
  return {true, std::to_string(files) + " golden files byte-exact; exit codes 0, 2, 3, 4, 5, 6 asserted"};
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;  // 0: no limit
  Outcome (*run)();
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "leading-order interpolation", 1, leading_order},
      {2, "interpolation round-trip", 60, interpolation_roundtrip},
      {3, "formal integral", 0, formal_integral},
      {4, "uniqueness under conjugation", 120, uniqueness},
      {5, "shape exactness", 0, shape_exactness},
      {6, "parity normalization", 0, parity_normalization},
      {7, "kernel law", 0, kernel_law},
      {8, "recurrence vs generic solver", 0, recurrence_vs_solver},
      {9, "resonant stability", 0, resonant_stability},
      {10, "CLI golden corpus and exit codes", 0, cli},
  };
  int failed = 0;
  for (const Criterion& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.pass && c.limit_s > 0 && secs > c.limit_s) {
      o.pass = false;
      o.detail += "; over the time limit";
    }
    failed += o.pass ? 0 : 1;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << c.id << ". " << c.name << " (" << timing << "): " << o.detail
              << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
