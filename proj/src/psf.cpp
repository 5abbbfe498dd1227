#include "pnf/psf.hpp"

#include <charconv>
#include <set>
#include <sstream>

#include "pnf/errors.hpp"

namespace pnf {

namespace {

struct Token {
  std::string text;
  int column = 1;
};

struct Line {
  int number = 0;
  std::string text;  // comment stripped, trailing blanks removed
  std::vector<Token> tokens;
};

std::vector<Line> split_lines(std::string_view text) {
  std::vector<Line> lines;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t' || raw.back() == '\r'))
      raw.remove_suffix(1);
    Line line{number, std::string(raw), {}};
    for (std::size_t i = 0; i < raw.size();) {
      if (raw[i] == ' ' || raw[i] == '\t') {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < raw.size() && raw[j] != ' ' && raw[j] != '\t') ++j;
      line.tokens.push_back({std::string(raw.substr(i, j - i)), static_cast<int>(i) + 1});
      i = j;
    }
    if (!line.tokens.empty()) lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

[[noreturn]] void fail(const std::string& what, const Line& line, int column) {
  throw ParseError("line " + std::to_string(line.number) + ", column " + std::to_string(column) +
                       ": " + what,
                   line.number, column);
}

int parse_int(const Token& tok, const Line& line, int min_value) {
  int value = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) fail("expected an integer, got '" + tok.text + "'", line, tok.column);
  if (value < min_value)
    fail("value " + tok.text + " below " + std::to_string(min_value), line, tok.column);
  return value;
}

Rational parse_coeff(const Token& tok, const Line& line) {
  try {
    return parse_rational(tok.text);
  } catch (const ParseError& e) {
    fail(e.what(), line, tok.column + e.column() - 1);
  }
}

void expect_arity(const Line& line, std::size_t n) {
  if (line.tokens.size() != n)
    fail("'" + line.tokens[0].text + "' takes " + std::to_string(n - 1) + " argument(s)", line,
         line.tokens[0].column);
}

class Cursor {
 public:
  explicit Cursor(std::vector<Line> lines) : lines_(std::move(lines)) {}
  bool done() const { return i_ >= lines_.size(); }
  const Line& peek() const { return lines_[i_]; }
  const Line& next() {
    if (done()) throw ParseError("unexpected end of input", last_line(), 1);
    return lines_[i_++];
  }
  int last_line() const { return lines_.empty() ? 1 : lines_.back().number; }

 private:
  std::vector<Line> lines_;
  std::size_t i_ = 0;
};

PsfDocument parse_document(Cursor& cur) {
  PsfDocument doc;
  const Line& head = cur.next();
  if (head.tokens[0].text != "psf") fail("expected 'psf 1'", head, head.tokens[0].column);
  expect_arity(head, 2);
  if (head.tokens[1].text != "1") fail("unsupported version '" + head.tokens[1].text + "'", head, head.tokens[1].column);

  const Line& gl = cur.next();
  if (gl.tokens[0].text != "grading") fail("expected 'grading k0 l0 m0'", gl, gl.tokens[0].column);
  expect_arity(gl, 4);
  doc.grading = {parse_int(gl.tokens[1], gl, 1), parse_int(gl.tokens[2], gl, 1),
                 parse_int(gl.tokens[3], gl, 1)};

  const Line& ol = cur.next();
  if (ol.tokens[0].text != "order") fail("expected 'order N'", ol, ol.tokens[0].column);
  expect_arity(ol, 2);
  doc.order = parse_int(ol.tokens[1], ol, 0);

  std::set<std::string> names;
  while (true) {
    const Line& line = cur.next();
    const std::string& word = line.tokens[0].text;
    if (word == "end") {
      expect_arity(line, 1);
      return doc;
    }
    if (word == "component") {
      expect_arity(line, 2);
      if (!names.insert(line.tokens[1].text).second)
        fail("duplicate component '" + line.tokens[1].text + "'", line, line.tokens[1].column);
      doc.components.push_back({line.tokens[1].text, {}});
      continue;
    }
    const char c0 = word[0];
    const bool numeric = (c0 >= '0' && c0 <= '9') || c0 == '-' || c0 == '+';
    if (!numeric) fail("unknown directive '" + word + "'", line, line.tokens[0].column);
    if (doc.components.empty()) fail("coefficient line before any component", line, line.tokens[0].column);
    if (line.tokens.size() != 4) fail("expected 'k l m coefficient'", line, line.tokens[0].column);
    const Monomial e{parse_int(line.tokens[0], line, 0), parse_int(line.tokens[1], line, 0),
                     parse_int(line.tokens[2], line, 0)};
    const Rational c = parse_coeff(line.tokens[3], line);
    if (doc.grading.weight(e) > doc.order)
      fail("monomial " + to_string(e) + " has weight above the order", line, line.tokens[0].column);
    auto& terms = doc.components.back().terms;
    if (terms.count(e)) fail("duplicate monomial " + to_string(e), line, line.tokens[0].column);
    if (sgn(c) != 0) terms.emplace(e, c);
  }
}

void emit_document(std::ostringstream& os, const PsfDocument& doc) {
  os << "psf 1\n";
  os << "grading " << doc.grading.k0 << ' ' << doc.grading.l0 << ' ' << doc.grading.m0 << '\n';
  os << "order " << doc.order << '\n';
  for (const PsfComponent& comp : doc.components) {
    os << "component " << comp.name << '\n';
    for (const auto& [e, c] : comp.terms)
      os << e.k << ' ' << e.l << ' ' << e.m << ' ' << to_string(c) << '\n';
  }
  os << "end\n";
}

}  // namespace

PsfDocument parse_psf(std::string_view text) {
  Cursor cur(split_lines(text));
  if (cur.done()) throw ParseError("empty document", 1, 1);
  PsfDocument doc = parse_document(cur);
  if (!cur.done()) fail("content after 'end'", cur.peek(), cur.peek().tokens[0].column);
  return doc;
}

std::string emit_psf(const PsfDocument& doc) {
  std::ostringstream os;
  emit_document(os, doc);
  return os.str();
}

PsfDocument psf_from_series(const Series& h, const std::string& name) {
  return {h.grading(), h.order(), {{name, h.terms()}}};
}

PsfDocument psf_from_map(const MapPair& f) {
  return {f.grading(), f.order(), {{"x", f.comp_x.terms()}, {"y", f.comp_y.terms()}}};
}

Series series_from_psf(const PsfDocument& doc) {
  if (doc.components.size() != 1)
    throw ParseError("expected exactly one component, found " + std::to_string(doc.components.size()), 1, 1);
  return Series(doc.grading, doc.order, doc.components[0].terms);
}

MapPair map_from_psf(const PsfDocument& doc) {
  const PsfComponent* cx = nullptr;
  const PsfComponent* cy = nullptr;
  for (const PsfComponent& c : doc.components) {
    if (c.name == "x") cx = &c;
    else if (c.name == "y") cy = &c;
  }
  if (!cx || !cy || doc.components.size() != 2)
    throw ParseError("a map needs exactly the components x and y", 1, 1);
  return {Series(doc.grading, doc.order, cx->terms), Series(doc.grading, doc.order, cy->terms)};
}

// ---------------------------------------------------------------------------
// Result files

namespace {

std::string optional_text(const std::optional<Rational>& q) { return q ? to_string(*q) : "none"; }

void emit_table(std::ostringstream& os, const char* name, const CoeffTable& t) {
  os << "table " << name << '\n';
  for (const auto& [km, c] : t) os << km.first << ' ' << km.second << ' ' << to_string(c) << '\n';
}

void emit_tables(std::ostringstream& os, const NormalFormResult& r) {
  os << "[invariants]\n";
  if (r.is_potential()) {
    emit_table(os, "U", r.potential_table);
  } else {
    emit_table(os, "A", r.a_table);
    emit_table(os, "B", r.b_table);
  }
}

bool is_section(const Line& line) { return line.text.size() > 2 && line.text.front() == '[' && line.text.back() == ']'; }

void expect_section(Cursor& cur, const std::string& name) {
  const Line& line = cur.next();
  if (line.text != "[" + name + "]") fail("expected section [" + name + "]", line, 1);
}

}  // namespace

std::string emit_invariants(const NormalFormResult& r) {
  std::ostringstream os;
  emit_tables(os, r);
  return os.str();
}

std::string emit_result(const NormalFormResult& r) {
  std::ostringstream os;
  os << "[hamiltonian]\n";
  emit_document(os, psf_from_series(r.h_normal));
  emit_tables(os, r);
  os << "[meta]\n";
  os << "case=" << to_string(r.case_tag) << '\n';
  os << "n=" << (r.n ? std::to_string(*r.n) : "none") << '\n';
  os << "b=" << optional_text(r.b) << '\n';
  os << "a=" << optional_text(r.a) << '\n';
  os << "unique=" << (r.unique ? "true" : "false") << '\n';
  if (!r.note.empty()) os << "note=" << r.note << '\n';
  os << "[log]\n";
  for (const LogStep& step : r.log.steps) {
    if (const auto* lin = std::get_if<LinearMap>(&step)) {
      os << "linear " << to_string(lin->a) << ' ' << to_string(lin->b) << ' ' << to_string(lin->c)
         << ' ' << to_string(lin->d) << '\n';
    } else if (std::holds_alternative<Reflection>(step)) {
      os << "reflect\n";
    } else if (const auto* gen = std::get_if<Generator>(&step)) {
      os << "generator\n";
      emit_document(os, psf_from_series(gen->chi(), "chi"));
    } else {
      os << "central\n";
    }
  }
  return os.str();
}

NormalFormResult parse_result(std::string_view text) {
  Cursor cur(split_lines(text));
  NormalFormResult r;
  expect_section(cur, "hamiltonian");
  r.h_normal = series_from_psf(parse_document(cur));

  expect_section(cur, "invariants");
  CoeffTable* table = nullptr;
  std::set<std::string> seen;
  while (!cur.done() && !is_section(cur.peek())) {
    const Line& line = cur.next();
    if (line.tokens[0].text == "table") {
      expect_arity(line, 2);
      const std::string& name = line.tokens[1].text;
      if (!seen.insert(name).second) fail("duplicate table " + name, line, line.tokens[1].column);
      if (name == "U") table = &r.potential_table;
      else if (name == "A") table = &r.a_table;
      else if (name == "B") table = &r.b_table;
      else fail("unknown table '" + name + "'", line, line.tokens[1].column);
      continue;
    }
    if (!table) fail("table entry before a table header", line, 1);
    if (line.tokens.size() != 3) fail("expected 'k m value'", line, 1);
    const std::pair<int, int> km{parse_int(line.tokens[0], line, 0), parse_int(line.tokens[1], line, 0)};
    if (table->count(km)) fail("duplicate entry", line, 1);
    (*table)[km] = parse_coeff(line.tokens[2], line);
  }

  expect_section(cur, "meta");
  while (!cur.done() && !is_section(cur.peek())) {
    const Line& line = cur.next();
    const auto eq = line.text.find('=');
    if (eq == std::string::npos) fail("expected key=value", line, 1);
    const std::string key = line.text.substr(0, eq);
    const std::string value = line.text.substr(eq + 1);
    const Token tok{value, static_cast<int>(eq) + 2};
    if (key == "case") {
      const auto tag = parse_case_tag(value);
      if (!tag) fail("unknown case '" + value + "'", line, tok.column);
      r.case_tag = *tag;
    } else if (key == "n") {
      if (value != "none") r.n = parse_int(tok, line, 1);
    } else if (key == "b") {
      if (value != "none") r.b = parse_coeff(tok, line);
    } else if (key == "a") {
      if (value != "none") r.a = parse_coeff(tok, line);
    } else if (key == "unique") {
      if (value != "true" && value != "false") fail("unique must be true or false", line, tok.column);
      r.unique = value == "true";
    } else if (key == "note") {
      r.note = value;
    } else {
      fail("unknown key '" + key + "'", line, 1);
    }
  }

  expect_section(cur, "log");
  while (!cur.done()) {
    const Line& line = cur.next();
    const std::string& word = line.tokens[0].text;
    if (word == "linear") {
      expect_arity(line, 5);
      r.log.append(LinearMap{parse_coeff(line.tokens[1], line), parse_coeff(line.tokens[2], line),
                             parse_coeff(line.tokens[3], line), parse_coeff(line.tokens[4], line)});
    } else if (word == "reflect") {
      expect_arity(line, 1);
      r.log.append(Reflection{});
    } else if (word == "central") {
      expect_arity(line, 1);
      r.log.append(CentralMarker{});
    } else if (word == "generator") {
      expect_arity(line, 1);
      const int at = cur.done() ? line.number : cur.peek().number;
      try {
        r.log.append(Generator(series_from_psf(parse_document(cur))));
      } catch (const GeneratorOrderError& e) {
        throw ParseError(std::string("generator: ") + e.what(), at, 1);
      }
    } else {
      fail("unknown log step '" + word + "'", line, line.tokens[0].column);
    }
  }
  return r;
}

}  // namespace pnf
