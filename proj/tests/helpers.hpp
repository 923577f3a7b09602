#pragma once

#include "indmatch/barcode.hpp"
#include "indmatch/grid_module.hpp"
#include "indmatch/interval.hpp"
#include "indmatch/matching.hpp"
#include "indmatch/matrix.hpp"

#include <initializer_list>
#include <string>

namespace testing {

using namespace indmatch;

inline Interval iv(const std::string& text) { return parse_interval(text); }

/// Bars separated by ';', e.g. "[0,2); [1,inf) x2".
inline Barcode bars(std::string text) {
  for (auto& c : text) {
    if (c == ';') c = '\n';
  }
  return parse_barcode(text);
}

inline BarRef bar(const std::string& text, std::uint32_t copy = 1) { return BarRef{iv(text), copy}; }

inline Matrix mat(const std::vector<std::vector<std::int64_t>>& rows, std::uint32_t p = 2) {
  return Matrix::from_rows(rows, p);
}

inline Grid grid(std::initializer_list<Rational> values) { return Grid(std::vector<Rational>(values)); }

inline Rational q(const std::string& text) { return parse_rational(text); }

}  // namespace testing
