#pragma once

#include "indmatch/induced_matching.hpp"
#include "indmatch/matching.hpp"
#include "indmatch/morphism.hpp"

namespace indmatch {

/// fwd : M -> N(delta), bwd : N -> M(delta).
struct InterleavingPair {
  Rational delta;
  Morphism fwd;
  Morphism bwd;
};

struct InterleavingReport {
  enum class Failure { none, shape, source_side, target_side };
  bool ok = true;
  Failure failure = Failure::none;
  /// Grid value of the first cell where a composite differs from the transition morphism.
  std::optional<Rational> point;
  std::string message;
};

std::string_view to_string(InterleavingReport::Failure failure);

/// Checks bwd(delta) o fwd = phi_M^{2 delta} and fwd(delta) o bwd = phi_N^{2 delta} exactly.
InterleavingReport check_interleaving(const InterleavingPair& pair);

/// r_delta: relabels the target bars of a matching into B(N(delta)) as bars of B(N).
Matching reindex_r_delta(const Matching& sigma, const Rational& delta);
/// Same, checking that the target barcode is the delta-shift of `expected`.
Matching reindex_r_delta(const Matching& sigma, const Rational& delta, const Barcode& expected);

/// r_delta o barc(f) for f : M -> N(delta).
Matching stability_matching(const Morphism& f, const Rational& delta,
                            BlockOrder order = BlockOrder::largest_first);

/// Whether ker f and coker f are both 2 delta-trivial.
bool single_morphism_check(const Morphism& f, const Rational& delta);

/// Some delta-matching between `a` and `b`, or nullopt when none exists.
std::optional<Matching> find_delta_matching(const Barcode& a, const Barcode& b, const Rational& delta);

/// Critical values where delta-matchings between a and b can appear: 0, differences of
/// corresponding finite endpoints and finite half-lengths. Sorted, unique.
std::vector<Rational> bottleneck_candidates(const Barcode& a, const Barcode& b);

struct BottleneckResult {
  std::optional<Rational> value;  ///< nullopt: no delta-matching for any finite delta
  bool attained = true;
  /// A delta-matching at `witness_delta`; equal to `value` when attained, slightly above otherwise.
  std::optional<Matching> witness;
  std::optional<Rational> witness_delta;
};

BottleneckResult bottleneck_distance(const Barcode& a, const Barcode& b);

/// Interval-module interleaving built from a delta-matching, scalar 1 on every overlap.
/// The modules live on `base` refined by the bar endpoints (and their shifts).
InterleavingPair interleaving_from_matching(const Matching& sigma, const Rational& delta,
                                            const std::optional<Grid>& base = std::nullopt,
                                            std::uint32_t p = 2);

bool eps_trivial_check(const GridModule& module, const Rational& eps);

}  // namespace indmatch
