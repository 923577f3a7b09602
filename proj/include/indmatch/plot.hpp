#pragma once

#include "indmatch/matching.hpp"

#include <optional>
#include <string>
#include <vector>

namespace indmatch {

struct PlotRow {
  std::string label;
  Barcode barcode;
};

/// Barcodes drawn top to bottom, one horizontal segment per bar. links[k] matches
/// rows[k] to rows[k+1]; matched bars are joined, bars matched to nothing are grey.
/// Infinite ends are clipped at `horizon` (and -horizon), by default one unit past
/// the finite endpoints. Output is byte-for-byte deterministic.
std::string plot_svg(const std::vector<PlotRow>& rows, const std::vector<Matching>& links = {},
                     const std::optional<Rational>& horizon = std::nullopt);

}  // namespace indmatch
