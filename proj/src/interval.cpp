#include "indmatch/interval.hpp"

#include "indmatch/error.hpp"

#include <algorithm>

namespace indmatch {

std::strong_ordering operator<=>(const DecoratedEndpoint& a, const DecoratedEndpoint& b) {
  if (a.kind_ != b.kind_ || !a.is_finite()) return a.kind_ <=> b.kind_;
  if (a.value_ < b.value_) return std::strong_ordering::less;
  if (b.value_ < a.value_) return std::strong_ordering::greater;
  return a.decoration_ <=> b.decoration_;
}

DecoratedEndpoint DecoratedEndpoint::operator+(const Rational& t) const {
  if (!is_finite()) return *this;
  return DecoratedEndpoint(value_ + t, decoration_);
}

DecoratedEndpoint DecoratedEndpoint::reflected() const {
  switch (kind_) {
    case Kind::neg_infinity: return pos_infinity();
    case Kind::pos_infinity: return neg_infinity();
    case Kind::finite: break;
  }
  return DecoratedEndpoint(-value_,
                           decoration_ == Decoration::minus ? Decoration::plus : Decoration::minus);
}

std::string DecoratedEndpoint::to_string() const {
  switch (kind_) {
    case Kind::neg_infinity: return "-inf";
    case Kind::pos_infinity: return "inf";
    case Kind::finite: break;
  }
  return format_rational(value_) + (decoration_ == Decoration::minus ? "-" : "+");
}

Interval::Interval(const DecoratedEndpoint& birth, const DecoratedEndpoint& death)
    : birth_(birth), death_(death) {
  if (!(birth < death)) {
    throw ValidationError("interval endpoints out of order: " + birth.to_string() +
                          " >= " + death.to_string());
  }
}

Interval Interval::closed_open(const Rational& a, const Rational& b) {
  return Interval(DecoratedEndpoint::minus(a), DecoratedEndpoint::minus(b));
}
Interval Interval::open_closed(const Rational& a, const Rational& b) {
  return Interval(DecoratedEndpoint::plus(a), DecoratedEndpoint::plus(b));
}
Interval Interval::closed(const Rational& a, const Rational& b) {
  return Interval(DecoratedEndpoint::minus(a), DecoratedEndpoint::plus(b));
}
Interval Interval::open(const Rational& a, const Rational& b) {
  return Interval(DecoratedEndpoint::plus(a), DecoratedEndpoint::minus(b));
}
Interval Interval::closed_ray(const Rational& a) {
  return Interval(DecoratedEndpoint::minus(a), DecoratedEndpoint::pos_infinity());
}
Interval Interval::closed_left_ray(const Rational& b) {
  return Interval(DecoratedEndpoint::neg_infinity(), DecoratedEndpoint::plus(b));
}

bool Interval::contains(const Interval& inner) const {
  return birth_ <= inner.birth_ && inner.death_ <= death_;
}

bool Interval::contains_point(const Rational& t) const {
  return birth_ <= DecoratedEndpoint::minus(t) && DecoratedEndpoint::plus(t) <= death_;
}

std::optional<Interval> Interval::intersect(const Interval& other) const {
  const auto b = std::max(birth_, other.birth_);
  const auto d = std::min(death_, other.death_);
  if (!(b < d)) return std::nullopt;
  return Interval(b, d);
}

std::string Interval::to_string() const {
  std::string out;
  if (!birth_.is_finite()) {
    out = "(-inf";
  } else {
    out = birth_.decoration() == Decoration::minus ? "[" : "(";
    out += format_rational(birth_.value());
  }
  out += ",";
  if (!death_.is_finite()) {
    out += "inf)";
  } else {
    out += format_rational(death_.value());
    out += death_.decoration() == Decoration::plus ? "]" : ")";
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s, std::size_t& offset) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
    ++offset;
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

Rational parse_value(std::string_view text, std::size_t column) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), 0, column + (e.column() > 0 ? e.column() - 1 : 0));
  }
}

}  // namespace

Interval parse_interval(std::string_view text, std::size_t column) {
  std::size_t offset = 0;
  text = trim(text, offset);
  column += offset;
  if (text.size() < 5) throw ParseError("interval too short: '" + std::string(text) + "'", 0, column);
  const char lb = text.front();
  const char rb = text.back();
  if (lb != '[' && lb != '(') throw ParseError("expected '[' or '('", 0, column);
  if (rb != ']' && rb != ')') throw ParseError("expected ']' or ')'", 0, column + text.size() - 1);
  const auto comma = text.find(',');
  if (comma == std::string_view::npos) throw ParseError("expected ',' in interval", 0, column);

  std::size_t left_col = column + 1;
  std::string_view left = trim(text.substr(1, comma - 1), left_col);
  std::size_t right_col = column + comma + 1;
  std::string_view right = trim(text.substr(comma + 1, text.size() - comma - 2), right_col);

  DecoratedEndpoint birth = DecoratedEndpoint::neg_infinity();
  if (left == "-inf") {
    if (lb != '(') throw ParseError("-inf requires '('", 0, column);
  } else {
    const Rational v = parse_value(left, left_col);
    birth = lb == '[' ? DecoratedEndpoint::minus(v) : DecoratedEndpoint::plus(v);
  }
  DecoratedEndpoint death = DecoratedEndpoint::pos_infinity();
  if (right == "inf" || right == "+inf") {
    if (rb != ')') throw ParseError("inf requires ')'", 0, column + text.size() - 1);
  } else {
    const Rational v = parse_value(right, right_col);
    death = rb == ')' ? DecoratedEndpoint::minus(v) : DecoratedEndpoint::plus(v);
  }
  if (!(birth < death)) throw ParseError("empty interval '" + std::string(text) + "'", 0, column);
  return Interval(birth, death);
}

}  // namespace indmatch
