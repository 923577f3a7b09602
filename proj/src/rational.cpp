#include "indmatch/rational.hpp"

#include "indmatch/error.hpp"

#include <cctype>
#include <limits>

namespace indmatch {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::parse: return "parse";
    case ErrorKind::validation: return "validation";
    case ErrorKind::domain: return "domain";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

namespace {

std::int64_t read_digits(std::string_view text, std::size_t& pos, std::size_t& count) {
  std::int64_t value = 0;
  count = 0;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
    const int digit = text[pos] - '0';
    if (value > (std::numeric_limits<std::int64_t>::max() - digit) / 10) {
      throw ParseError("rational literal overflows 64 bits", 0, pos + 1);
    }
    value = value * 10 + digit;
    ++pos;
    ++count;
  }
  return value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::size_t count = 0;
  const std::int64_t whole = read_digits(text, pos, count);
  if (count == 0) {
    throw ParseError("expected digits in rational '" + std::string(text) + "'", 0, pos + 1);
  }
  Rational result(whole);
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    const std::int64_t den = read_digits(text, pos, count);
    if (count == 0) throw ParseError("expected denominator", 0, pos + 1);
    if (den == 0) throw ParseError("zero denominator", 0, pos);
    result = Rational(whole, den);
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    const std::size_t start = pos;
    const std::int64_t frac = read_digits(text, pos, count);
    if (count == 0) throw ParseError("expected digits after '.'", 0, start + 1);
    if (count > 18) throw ParseError("too many decimal digits", 0, start + 1);
    std::int64_t scale = 1;
    for (std::size_t i = 0; i < count; ++i) scale *= 10;
    result = Rational(whole) + Rational(frac, scale);
  }
  if (pos != text.size()) {
    throw ParseError("unexpected character '" + std::string(1, text[pos]) + "' in rational", 0,
                     pos + 1);
  }
  return negative ? -result : result;
}

std::string format_rational(const Rational& value) {
  if (value.denominator() == 1) return std::to_string(value.numerator());
  return std::to_string(value.numerator()) + "/" + std::to_string(value.denominator());
}

double to_double(const Rational& value) {
  return static_cast<double>(value.numerator()) / static_cast<double>(value.denominator());
}

}  // namespace indmatch
