#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pnf/lie.hpp"
#include "pnf/nf.hpp"

namespace pnf {

/// splitmix64; the only randomness source, so artifacts are reproducible
/// everywhere from the seed alone.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// True with probability `p` (53-bit resolution).
  bool chance(double p);
  /// p/q with p in [-9, 9] \ {0}, q in [1, 4].
  Rational small_rational();

 private:
  std::uint64_t state_;
};

/// Random series over the monomials with min_w <= weight <= max_w (pure-eps
/// monomials excluded), each kept with probability `density`. The container
/// order is max(order, max_w).
Series random_series(std::uint64_t seed, const Grading& g, int min_w, int max_w, double density,
                     int order = 0, const std::function<bool(const Monomial&)>& keep = {});

/// Throws ParameterError when min_w < k0 + l0 + 1 or the window is empty.
Generator random_generator(std::uint64_t seed, const Grading& g, int min_w, int max_w,
                           double density);

/// Hamiltonian of the given case with random higher-order terms; for
/// jordan+ the leading x-power is n.
Series random_case_hamiltonian(CaseTag tag, std::uint64_t seed, int order, int n = 3);

/// +-Phi^1_h or diag(-1, 1) Phi^1_h for h = random_case_hamiltonian, then
/// conjugated by a random canonical change so every coefficient is
/// contaminated. Returned at `order` in the case grading.
MapPair random_case_family(CaseTag tag, std::uint64_t seed, int order, int n = 3);

struct TrialOutcome {
  int index = 0;
  bool passed = false;
  std::string detail;  // first differing (k, m) or the error raised
};

struct InvarianceReport {
  std::vector<TrialOutcome> trials;
  bool uniqueness_asserted = true;
  std::string note;

  int passed() const;
  bool ok() const;
  std::string summary() const;  // "5/5 invariance trials passed"
};

/// Description of the first differing invariant, or empty when identical.
std::optional<std::string> first_difference(const NormalFormResult& a, const NormalFormResult& b);

/// Conjugates the classified family by `trials` random canonical changes,
/// reruns the pipeline and compares the invariant tables bit-exactly.
InvarianceReport invariance_check(const MapPair& f, int order, int trials, std::uint64_t seed);

struct RoundtripReport {
  bool ok = false;
  bool integral_ok = false;  // h o F - h = 0 through the order
  int order = 0;
  std::optional<int> first_difference;
  std::string note;
};

/// interpolate(time_one_map(h)) == h through `order` (pure-eps terms of h
/// dropped first), plus the formal-integral identity h o F = h.
RoundtripReport roundtrip_check(const Series& h, int order);

}  // namespace pnf
