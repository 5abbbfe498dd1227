#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pnf/nf.hpp"
#include "pnf/series.hpp"

namespace pnf {

// Text exchange format for series:
//
//   psf 1
//   grading 2 3 6
//   order 16
//   component x
//   0 1 0 1          # k l m coefficient
//   1 0 0 1
//   component y
//   0 1 0 1
//   end
//
// `#` starts a comment. Emission sorts monomials by (k, l, m) and writes
// coefficients as integers or reduced p/q, so emit(parse(t)) == t for
// canonical t.

struct PsfComponent {
  std::string name;
  Series::Terms terms;
};

struct PsfDocument {
  Grading grading;
  int order = 0;
  std::vector<PsfComponent> components;
};

PsfDocument parse_psf(std::string_view text);
std::string emit_psf(const PsfDocument& doc);

PsfDocument psf_from_series(const Series& h, const std::string& name = "h");
PsfDocument psf_from_map(const MapPair& f);
/// The single component of a Hamiltonian document.
Series series_from_psf(const PsfDocument& doc);
/// Components named x and y.
MapPair map_from_psf(const PsfDocument& doc);

// Result files: sections [hamiltonian], [invariants], [meta] and [log].
std::string emit_result(const NormalFormResult& r);
NormalFormResult parse_result(std::string_view text);
/// The [invariants] section alone.
std::string emit_invariants(const NormalFormResult& r);

}  // namespace pnf
