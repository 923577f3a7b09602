#pragma once

#include "indmatch/matching.hpp"
#include "indmatch/morphism.hpp"

namespace indmatch {

/// Bars sharing one endpoint, largest interval first, copies ascending.
struct EnumeratedBlock {
  DecoratedEndpoint key;
  std::vector<BarRef> items;
};

/// Blocks keyed by right endpoint; within a block, smaller birth means larger interval.
std::vector<EnumeratedBlock> right_endpoint_blocks(const Barcode& barcode);
/// Blocks keyed by left endpoint; within a block, larger death means larger interval.
std::vector<EnumeratedBlock> left_endpoint_blocks(const Barcode& barcode);

/// Order in which block items are paired. Only `largest_first` is canonical;
/// the other exists to check that the verification suite notices a wrong rule.
enum class BlockOrder { largest_first, smallest_first };

/// Canonical injection of the bars of a submodule into those of the ambient module.
/// Throws DomainError naming the right endpoint whose block is too small.
Matching mono_injection(const Barcode& sub, const Barcode& sup, BlockOrder order = BlockOrder::largest_first);

/// Matching from the bars of a module onto those of its quotient (source is `src`).
/// Throws DomainError naming the left endpoint whose block is too small.
Matching epi_injection(const Barcode& quotient, const Barcode& src, BlockOrder order = BlockOrder::largest_first);

/// barc(f): the matching induced through the image factorization.
Matching induced_matching(const Morphism& f, BlockOrder order = BlockOrder::largest_first);

/// Intersections of matched bars. Throws DomainError if a pair does not overlap.
Barcode image_barcode_of(const Matching& matching);

}  // namespace indmatch
