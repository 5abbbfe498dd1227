// pnf: command-line front end for the normal-form pipelines.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "pnf/errors.hpp"
#include "pnf/harness.hpp"
#include "pnf/nf.hpp"
#include "pnf/psf.hpp"

namespace {

using namespace pnf;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParameterError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

MapPair read_map(const std::string& path) { return map_from_psf(parse_psf(read_input(path))); }

std::optional<CaseTag> case_option(const std::string& text) {
  if (text == "auto") return std::nullopt;
  const auto tag = parse_case_tag(text);
  if (!tag) throw ParameterError("unknown case '" + text + "'");
  return tag;
}

// Default order: everything the file determines under the case grading.
int resolve_order(const MapPair& f, int order) {
  if (order > 0) return order;
  const MapFamily fam = classify_linear_part(f);
  const Grading g = case_grading(fam.case_tag);
  return g == f.grading() ? f.order() : complete_order(f.grading(), f.order(), g);
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParameterError("cannot write " + path);
  out << text;
}

std::string linear_text(const LinearMap& m) {
  return to_string(m.a) + " " + to_string(m.b) + " " + to_string(m.c) + " " + to_string(m.d);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal forms of area-preserving parabolic map families"};
  app.require_subcommand(1);

  std::string input;
  std::string output;
  int order = 0;
  std::string case_text = "auto";
  int trials = 5;
  std::uint64_t seed = 1;

  auto add_io = [&](CLI::App* cmd) {
    cmd->add_option("input", input, "PSF file with components x and y, or - for stdin")->required();
    cmd->add_option("-o,--output", output, "write to a file instead of stdout");
  };
  auto add_order = [&](CLI::App* cmd) {
    cmd->add_option("--order", order, "truncation order (default: all the input determines)")
        ->check(CLI::PositiveNumber);
  };

  CLI::App* classify = app.add_subcommand("classify", "print the case tag and the linear part");
  add_io(classify);
  CLI::App* interpolate = app.add_subcommand("interpolate", "write the interpolating Hamiltonian as PSF");
  add_io(interpolate);
  add_order(interpolate);
  CLI::App* normalize = app.add_subcommand("normalize", "write the normal-form result file");
  add_io(normalize);
  add_order(normalize);
  normalize->add_option("--case", case_text, "auto|jordan+|jordan-|diag+|diag-|reversing");
  CLI::App* invariants = app.add_subcommand("invariants", "print the invariant tables only");
  add_io(invariants);
  add_order(invariants);
  invariants->add_option("--case", case_text, "auto|jordan+|jordan-|diag+|diag-|reversing");
  CLI::App* flow = app.add_subcommand("flow", "write the time-one map of a Hamiltonian as PSF");
  add_io(flow);
  add_order(flow);
  CLI::App* verify = app.add_subcommand("verify", "round-trip, factorization and invariance checks");
  add_io(verify);
  add_order(verify);
  verify->add_option("--trials", trials, "random conjugations")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", seed, "seed of the random conjugations");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(ExitCode::parse);
  }

  try {
    if (flow->parsed()) {
      const Series h = series_from_psf(parse_psf(read_input(input)));
      const Grading& g = h.grading();
      const int n = order > 0 ? order : h.order() - std::max(g.k0, g.l0);
      if (n < 1) throw ParameterError("the Hamiltonian's order leaves no complete map order");
      write_output(output, emit_psf(psf_from_map(time_one_map(Generator(h), n))));
      return 0;
    }

    const MapPair f = read_map(input);

    if (classify->parsed()) {
      const MapFamily fam = classify_linear_part(f);
      std::ostringstream os;
      os << "case=" << to_string(fam.case_tag) << '\n';
      os << "linear=" << linear_text(fam.original_linear) << '\n';
      write_output(output, os.str());
      return 0;
    }

    const int n = resolve_order(f, order);

    if (interpolate->parsed()) {
      const InterpolationOutcome io = interpolate_family(f, n);
      std::string text;
      if (io.central) text += "# F = -Phi^1_h after the logged coordinate changes\n";
      if (io.reversing) text += "# F = diag(-1, 1) Phi^1_h after the logged coordinate changes\n";
      text += emit_psf(psf_from_series(io.h));
      write_output(output, text);
      return 0;
    }

    if (normalize->parsed() || invariants->parsed()) {
      const NormalFormResult r = run_pipeline(f, n, case_option(case_text));
      write_output(output, normalize->parsed() ? emit_result(r) : emit_invariants(r));
      return 0;
    }

    if (verify->parsed()) {
      std::ostringstream os;
      bool ok = true;
      const InterpolationOutcome io = interpolate_family(f, n);
      const RoundtripReport rt = roundtrip_check(io.h, n);
      os << "roundtrip: " << (rt.ok ? "pass" : "FAIL") << " through order " << n << '\n';
      os << "formal integral: " << (rt.integral_ok ? "pass" : "FAIL") << '\n';
      ok = ok && rt.ok && rt.integral_ok;

      const NormalFormResult r = run_pipeline(f, n);
      const auto checked = verify_factorization(f, r);
      if (checked) os << "factorization: pass through order " << *checked << '\n';
      else os << "factorization: FAIL\n";
      ok = ok && checked.has_value();

      const InvarianceReport inv = invariance_check(f, n, trials, seed);
      for (const TrialOutcome& t : inv.trials)
        if (!t.passed) os << "trial " << t.index << ": " << t.detail << '\n';
      os << inv.summary() << '\n';
      ok = ok && inv.ok();
      write_output(output, os.str());
      return ok ? 0 : static_cast<int>(ExitCode::inconsistency);
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  }
  return 0;
}
