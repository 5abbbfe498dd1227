#pragma once

#include <cstddef>

#include "pnf/series.hpp"

namespace pnf::kernels {

// Truncated product of two coefficient tables. The serial routine is the
// reference; the OpenMP routine splits the left operand across threads and
// merges thread-local tables afterwards. Rational addition is exact, so
// both return identical tables.
Series::Terms mul_serial(const Series::Terms& a, const Series::Terms& b,
                         const Grading& grading, int order);
Series::Terms mul_parallel(const Series::Terms& a, const Series::Terms& b,
                           const Grading& grading, int order);

// Work (|a| * |b| term pairs) above which multiplication goes parallel.
inline constexpr std::size_t parallel_threshold = 4096;

Series::Terms mul(const Series::Terms& a, const Series::Terms& b,
                  const Grading& grading, int order);

}  // namespace pnf::kernels
