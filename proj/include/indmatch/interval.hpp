#pragma once

#include "indmatch/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace indmatch {

enum class Decoration : std::uint8_t { minus, plus };

/// An element of R x {-,+} together with -inf and +inf.
///
/// Ordered lexicographically on (value, decoration) with - < +, and with the
/// two infinities as the extreme elements. t^- is the left endpoint of [t,..)
/// and the right endpoint of (..,t); t^+ is the left endpoint of (t,..) and the
/// right endpoint of (..,t].
class DecoratedEndpoint {
 public:
  enum class Kind : std::uint8_t { neg_infinity, finite, pos_infinity };

  static DecoratedEndpoint neg_infinity() { return DecoratedEndpoint(Kind::neg_infinity); }
  static DecoratedEndpoint pos_infinity() { return DecoratedEndpoint(Kind::pos_infinity); }
  static DecoratedEndpoint minus(const Rational& t) { return {t, Decoration::minus}; }
  static DecoratedEndpoint plus(const Rational& t) { return {t, Decoration::plus}; }

  DecoratedEndpoint(const Rational& value, Decoration decoration)
      : kind_(Kind::finite), value_(value), decoration_(decoration) {}

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::finite; }
  /// Zero for the infinities.
  const Rational& value() const noexcept { return value_; }
  Decoration decoration() const noexcept { return decoration_; }

  /// (s^±) + t = (s+t)^±, ±inf + t = ±inf.
  DecoratedEndpoint operator+(const Rational& t) const;
  DecoratedEndpoint operator-(const Rational& t) const { return *this + (-t); }

  /// Image under t -> -t: s^- -> (-s)^+, s^+ -> (-s)^-, ±inf -> ∓inf.
  DecoratedEndpoint reflected() const;

  friend std::strong_ordering operator<=>(const DecoratedEndpoint& a, const DecoratedEndpoint& b);
  friend bool operator==(const DecoratedEndpoint& a, const DecoratedEndpoint& b) {
    return (a <=> b) == 0;
  }

  /// "3-", "1/2+", "-inf", "inf".
  std::string to_string() const;

 private:
  explicit DecoratedEndpoint(Kind kind) : kind_(kind), value_(0), decoration_(Decoration::minus) {}

  Kind kind_;
  Rational value_;
  Decoration decoration_;
};

std::strong_ordering operator<=>(const DecoratedEndpoint& a, const DecoratedEndpoint& b);

/// Three-way comparison in the decorated total order.
inline std::strong_ordering endpoint_compare(const DecoratedEndpoint& a,
                                             const DecoratedEndpoint& b) {
  return a <=> b;
}

inline DecoratedEndpoint endpoint_shift(const DecoratedEndpoint& e, const Rational& t) {
  return e + t;
}

/// The interval <b,d> for decorated endpoints b < d.
class Interval {
 public:
  /// Throws ValidationError unless birth < death.
  Interval(const DecoratedEndpoint& birth, const DecoratedEndpoint& death);

  /// [a,b)
  static Interval closed_open(const Rational& a, const Rational& b);
  /// (a,b]
  static Interval open_closed(const Rational& a, const Rational& b);
  /// [a,b]
  static Interval closed(const Rational& a, const Rational& b);
  /// (a,b)
  static Interval open(const Rational& a, const Rational& b);
  /// [a,inf)
  static Interval closed_ray(const Rational& a);
  /// (-inf,b]
  static Interval closed_left_ray(const Rational& b);

  const DecoratedEndpoint& birth() const noexcept { return birth_; }
  const DecoratedEndpoint& death() const noexcept { return death_; }

  /// outer.birth <= inner.birth and inner.death <= outer.death.
  bool contains(const Interval& inner) const;
  bool contains_point(const Rational& t) const;

  /// <b+t, d+t>
  Interval operator+(const Rational& t) const { return Interval(birth_ + t, death_ + t); }
  Interval operator-(const Rational& t) const { return Interval(birth_ - t, death_ - t); }

  /// {t | -t in I}
  Interval negated() const { return Interval(death_.reflected(), birth_.reflected()); }

  std::optional<Interval> intersect(const Interval& other) const;

  /// Bracket notation, e.g. "[0,2)", "(-inf,1/2]".
  std::string to_string() const;

  friend auto operator<=>(const Interval& a, const Interval& b) = default;
  friend bool operator==(const Interval& a, const Interval& b) = default;

 private:
  DecoratedEndpoint birth_;
  DecoratedEndpoint death_;
};

/// Parses bracket notation; `column` offsets reported parse errors.
Interval parse_interval(std::string_view text, std::size_t column = 1);

inline bool interval_contains(const Interval& outer, const Interval& inner) {
  return outer.contains(inner);
}

}  // namespace indmatch
