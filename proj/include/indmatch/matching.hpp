#pragma once

#include "indmatch/barcode.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace indmatch {

using BarPair = std::pair<BarRef, BarRef>;

/// A partial bijection between the elements of a source and a target barcode.
class Matching {
 public:
  Matching() = default;
  /// Throws ValidationError if a pair references a missing bar or if an
  /// element is used twice on either side.
  Matching(Barcode source, Barcode target, std::vector<BarPair> pairs);

  static Matching identity(const Barcode& barcode);
  static Matching empty(Barcode source, Barcode target) {
    return Matching(std::move(source), std::move(target), {});
  }

  const Barcode& source() const noexcept { return source_; }
  const Barcode& target() const noexcept { return target_; }
  /// Sorted by source element.
  const std::vector<BarPair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  std::optional<BarRef> image_of(const BarRef& source_bar) const;
  std::optional<BarRef> preimage_of(const BarRef& target_bar) const;
  std::vector<BarRef> domain() const;
  std::vector<BarRef> image() const;

  friend bool operator==(const Matching&, const Matching&) = default;

 private:
  Barcode source_;
  Barcode target_;
  std::vector<BarPair> pairs_;
};

/// tau ∘ sigma. Throws DomainError unless sigma.target() == tau.source().
Matching matching_compose(const Matching& sigma, const Matching& tau);

Matching matching_reverse(const Matching& sigma);

/// sigma: C -> D becomes D* -> C* with (I,J) mapped to (-J,-I).
Matching matching_dual(const Matching& sigma);

/// Disjoint union of two matchings between unions of the respective barcodes.
/// Copies of the second operand are renumbered after those of the first.
Matching matching_coproduct(const Matching& sigma, const Matching& tau);

/// Outcome of checking the three clauses of a delta-matching.
struct DeltaMatchingReport {
  enum class Clause { none, source_coverage, target_coverage, endpoint_proximity };

  bool ok = true;
  Clause clause = Clause::none;
  std::optional<BarRef> source_bar;
  std::optional<BarRef> target_bar;
  std::string message;
};

std::string_view to_string(DeltaMatchingReport::Clause clause);

/// Pairs (I, J) admissible at delta: I ⊆ J widened by delta and J ⊆ I widened by delta.
bool delta_admissible(const Interval& a, const Interval& b, const Rational& delta);

/// Throws DomainError for negative delta.
DeltaMatchingReport check_delta_matching(const Matching& sigma, const Rational& delta);

inline bool is_delta_matching(const Matching& sigma, const Rational& delta) {
  return check_delta_matching(sigma, delta).ok;
}

/// Lines "<interval>#<copy> -> <interval>#<copy>", sorted.
std::string format_matching(const Matching& sigma);
std::vector<BarPair> parse_matching_pairs(std::string_view text);
/// Parses pairs and validates them against the given barcodes.
Matching parse_matching(std::string_view text, const Barcode& source, const Barcode& target);

}  // namespace indmatch
