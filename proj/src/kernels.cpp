#include "pnf/kernels.hpp"

#include <algorithm>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pnf::kernels {

namespace {

struct WeightedTerm {
  int weight;
  Monomial mono;
  const Rational* coeff;
};

std::vector<WeightedTerm> by_weight(const Series::Terms& t, const Grading& g) {
  std::vector<WeightedTerm> out;
  out.reserve(t.size());
  for (const auto& [e, c] : t) out.push_back({g.weight(e), e, &c});
  std::stable_sort(out.begin(), out.end(),
                   [](const WeightedTerm& a, const WeightedTerm& b) { return a.weight < b.weight; });
  return out;
}

void accumulate(Series::Terms& acc, const WeightedTerm& a, const std::vector<WeightedTerm>& b,
                int order, Rational& scratch) {
  for (const auto& tb : b) {
    if (a.weight + tb.weight > order) break;
    const Monomial e{a.mono.k + tb.mono.k, a.mono.l + tb.mono.l, a.mono.m + tb.mono.m};
    scratch = *a.coeff * *tb.coeff;
    auto [it, inserted] = acc.try_emplace(e, scratch);
    if (!inserted) it->second += scratch;
  }
}

void drop_zeros(Series::Terms& t) {
  std::erase_if(t, [](const auto& kv) { return sgn(kv.second) == 0; });
}

}  // namespace

Series::Terms mul_serial(const Series::Terms& a, const Series::Terms& b,
                         const Grading& grading, int order) {
  Series::Terms acc;
  const auto wa = by_weight(a, grading);
  const auto wb = by_weight(b, grading);
  Rational scratch;
  for (const auto& ta : wa) {
    if (wb.empty() || ta.weight + wb.front().weight > order) break;
    accumulate(acc, ta, wb, order, scratch);
  }
  drop_zeros(acc);
  return acc;
}

Series::Terms mul_parallel(const Series::Terms& a, const Series::Terms& b,
                           const Grading& grading, int order) {
#ifdef _OPENMP
  const auto wa = by_weight(a, grading);
  const auto wb = by_weight(b, grading);
  const int nthreads = std::max(1, omp_get_max_threads());
  std::vector<Series::Terms> partial(static_cast<std::size_t>(nthreads));
  const auto n = static_cast<long>(wa.size());

#pragma omp parallel num_threads(nthreads)
  {
    const int tid = omp_get_thread_num();
    Series::Terms& acc = partial[static_cast<std::size_t>(tid)];
    Rational scratch;
#pragma omp for schedule(dynamic, 4)
    for (long i = 0; i < n; ++i) {
      const auto& ta = wa[static_cast<std::size_t>(i)];
      if (wb.empty() || ta.weight + wb.front().weight > order) continue;
      accumulate(acc, ta, wb, order, scratch);
    }
  }

  Series::Terms out = std::move(partial.front());
  for (std::size_t t = 1; t < partial.size(); ++t) {
    for (auto& [e, c] : partial[t]) {
      auto [it, inserted] = out.try_emplace(e, c);
      if (!inserted) it->second += c;
    }
  }
  drop_zeros(out);
  return out;
#else
  return mul_serial(a, b, grading, order);
#endif
}

Series::Terms mul(const Series::Terms& a, const Series::Terms& b, const Grading& grading,
                  int order) {
#ifdef _OPENMP
  if (a.size() * b.size() >= parallel_threshold && omp_get_max_threads() > 1)
    return mul_parallel(a, b, grading, order);
#endif
  return mul_serial(a, b, grading, order);
}

}  // namespace pnf::kernels
