#include "pnf/rational.hpp"

#include <cctype>
#include <string>

#include "pnf/errors.hpp"

namespace pnf {

std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

namespace {

// Optional sign followed by at least one digit; returns the end position.
std::size_t scan_integer(std::string_view s, std::size_t pos, bool allow_sign) {
  if (allow_sign && pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
  const std::size_t start = pos;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
  if (pos == start) throw ParseError("malformed rational '" + std::string(s) + "'", 0,
                                     static_cast<int>(pos) + 1);
  return pos;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::size_t num_end = scan_integer(text, 0, true);
  std::string num(text.substr(0, num_end));
  if (!num.empty() && num.front() == '+') num.erase(0, 1);
  if (num_end == text.size()) return Rational(mpz_class(num));
  if (text[num_end] != '/')
    throw ParseError("malformed rational '" + std::string(text) + "'", 0,
                     static_cast<int>(num_end) + 1);
  const std::size_t den_end = scan_integer(text, num_end + 1, false);
  if (den_end != text.size())
    throw ParseError("malformed rational '" + std::string(text) + "'", 0,
                     static_cast<int>(den_end) + 1);
  mpz_class den(std::string(text.substr(num_end + 1)));
  if (den == 0)
    throw ParseError("zero denominator in '" + std::string(text) + "'", 0,
                     static_cast<int>(num_end) + 2);
  Rational q(mpz_class(num), den);
  q.canonicalize();
  return q;
}

Rational dyadic(int p) {
  mpz_class pow2 = 1;
  mpz_mul_2exp(pow2.get_mpz_t(), pow2.get_mpz_t(), static_cast<unsigned long>(p < 0 ? -p : p));
  if (p >= 0) return Rational(mpz_class(1), pow2);
  return Rational(pow2);
}

}  // namespace pnf
