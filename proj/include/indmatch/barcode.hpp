#pragma once

#include "indmatch/interval.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace indmatch {

/// Identity of one bar: the interval together with its copy index (1-based).
struct BarRef {
  Interval interval;
  std::uint32_t copy = 1;

  friend auto operator<=>(const BarRef&, const BarRef&) = default;
  friend bool operator==(const BarRef&, const BarRef&) = default;

  /// "[0,2)#1"
  std::string to_string() const;
};

/// A finite multiset of intervals, stored as its representation
/// {(I, k) | 1 <= k <= multiplicity(I)} in sorted order.
class Barcode {
 public:
  Barcode() = default;
  /// Copy indices are assigned 1..m for each repeated interval.
  explicit Barcode(const std::vector<Interval>& intervals);
  static Barcode from_multiplicities(const std::vector<std::pair<Interval, std::size_t>>& items);

  const std::vector<BarRef>& elements() const noexcept { return elements_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }

  bool contains(const BarRef& bar) const;
  std::size_t multiplicity(const Interval& interval) const;
  /// Distinct intervals with their multiplicities, in sorted order.
  std::vector<std::pair<Interval, std::size_t>> multiplicities() const;
  std::vector<Interval> intervals() const;

  friend bool operator==(const Barcode&, const Barcode&) = default;

 private:
  std::vector<BarRef> elements_;
};

/// Element-wise image of `bar` under a relabeling of intervals that keeps copy indices.
inline BarRef map_bar(const BarRef& bar, const Interval& image) { return {image, bar.copy}; }

/// Every <b,d> becomes <b-delta, d-delta>: the barcode of M(delta).
Barcode barcode_shift(const Barcode& barcode, const Rational& delta);
BarRef bar_shift(const BarRef& bar, const Rational& delta);

/// {-I | I in B}.
Barcode barcode_dual(const Barcode& barcode);
BarRef bar_dual(const BarRef& bar);

/// Bars with b + eps < d. Throws DomainError for negative eps.
Barcode barcode_persistent(const Barcode& barcode, const Rational& eps);
bool is_persistent(const Interval& interval, const Rational& eps);

/// Multiset union; copies of the second operand are renumbered after those of the first.
Barcode barcode_union(const Barcode& a, const Barcode& b);

/// An open interval with optional (infinite) ends.
struct UndecoratedInterval {
  std::optional<Rational> lower;
  std::optional<Rational> upper;

  friend bool operator==(const UndecoratedInterval&, const UndecoratedInterval&) = default;
  std::string to_string() const;
};

/// Drops every [t,t] and forgets decorations; result is sorted.
std::vector<UndecoratedInterval> barcode_undecorate(const Barcode& barcode);

/// Text format: one interval per line, optional " xM" multiplicity, '#' comments.
Barcode parse_barcode(std::string_view text);
/// Canonical text: sorted, one line per distinct interval, " xM" when M > 1.
std::string format_barcode(const Barcode& barcode);

}  // namespace indmatch
