#pragma once

#include "pnf/interp.hpp"
#include "pnf/log.hpp"

namespace pnf {

struct OddifyResult {
  MapPair family;
  GeneratorLog log;
};

/// Removes every even-in-(x, y) term of a JordanMinus family (NONDIAG
/// grading) by conjugating with odd generators chi_p, p = 6, 7, ...
OddifyResult oddify_nondiag(const MapPair& f);

/// Same for the linear part -I (DIAG grading): the output commutes with the
/// central reflection (x, y) -> (-x, -y).
OddifyResult oddify_diag_minus(const MapPair& f);

/// For the linear part diag(-1, 1) (DIAG grading): conjugates until comp_x is
/// odd in x and comp_y is even in x.
OddifyResult reversing_oddify(const MapPair& f);

/// Parity defects: the part of F that violates the symmetry each routine enforces.
MapPair even_part(const MapPair& f);
MapPair reversing_defect(const MapPair& f);

}  // namespace pnf
