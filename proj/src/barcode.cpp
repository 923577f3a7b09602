#include "indmatch/barcode.hpp"

#include "indmatch/error.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>

namespace indmatch {

std::string BarRef::to_string() const {
  return interval.to_string() + "#" + std::to_string(copy);
}

Barcode Barcode::from_multiplicities(const std::vector<std::pair<Interval, std::size_t>>& items) {
  std::map<Interval, std::size_t> counts;
  for (const auto& [interval, m] : items) counts[interval] += m;
  Barcode out;
  for (const auto& [interval, m] : counts) {
    for (std::size_t k = 1; k <= m; ++k) {
      out.elements_.push_back({interval, static_cast<std::uint32_t>(k)});
    }
  }
  return out;
}

Barcode::Barcode(const std::vector<Interval>& intervals) {
  std::vector<std::pair<Interval, std::size_t>> items;
  items.reserve(intervals.size());
  for (const auto& i : intervals) items.emplace_back(i, 1);
  *this = from_multiplicities(items);
}

bool Barcode::contains(const BarRef& bar) const {
  return std::binary_search(elements_.begin(), elements_.end(), bar);
}

std::size_t Barcode::multiplicity(const Interval& interval) const {
  const auto lo = std::lower_bound(elements_.begin(), elements_.end(), BarRef{interval, 0});
  const auto hi = std::upper_bound(elements_.begin(), elements_.end(),
                                   BarRef{interval, std::numeric_limits<std::uint32_t>::max()});
  return static_cast<std::size_t>(hi - lo);
}

std::vector<std::pair<Interval, std::size_t>> Barcode::multiplicities() const {
  std::vector<std::pair<Interval, std::size_t>> out;
  for (const auto& bar : elements_) {
    if (!out.empty() && out.back().first == bar.interval) {
      ++out.back().second;
    } else {
      out.emplace_back(bar.interval, 1);
    }
  }
  return out;
}

std::vector<Interval> Barcode::intervals() const {
  std::vector<Interval> out;
  out.reserve(elements_.size());
  for (const auto& bar : elements_) out.push_back(bar.interval);
  return out;
}

BarRef bar_shift(const BarRef& bar, const Rational& delta) {
  return map_bar(bar, bar.interval - delta);
}

Barcode barcode_shift(const Barcode& barcode, const Rational& delta) {
  std::vector<std::pair<Interval, std::size_t>> items;
  for (const auto& [interval, m] : barcode.multiplicities()) items.emplace_back(interval - delta, m);
  return Barcode::from_multiplicities(items);
}

BarRef bar_dual(const BarRef& bar) { return map_bar(bar, bar.interval.negated()); }

Barcode barcode_dual(const Barcode& barcode) {
  std::vector<std::pair<Interval, std::size_t>> items;
  for (const auto& [interval, m] : barcode.multiplicities()) items.emplace_back(interval.negated(), m);
  return Barcode::from_multiplicities(items);
}

bool is_persistent(const Interval& interval, const Rational& eps) {
  return interval.birth() + eps < interval.death();
}

Barcode barcode_persistent(const Barcode& barcode, const Rational& eps) {
  if (eps < 0) throw DomainError("persistence threshold must be nonnegative, got " + format_rational(eps));
  std::vector<std::pair<Interval, std::size_t>> items;
  for (const auto& [interval, m] : barcode.multiplicities()) {
    if (is_persistent(interval, eps)) items.emplace_back(interval, m);
  }
  return Barcode::from_multiplicities(items);
}

Barcode barcode_union(const Barcode& a, const Barcode& b) {
  auto items = a.multiplicities();
  const auto more = b.multiplicities();
  items.insert(items.end(), more.begin(), more.end());
  return Barcode::from_multiplicities(items);
}

std::string UndecoratedInterval::to_string() const {
  return "(" + (lower ? format_rational(*lower) : std::string("-inf")) + "," +
         (upper ? format_rational(*upper) : std::string("inf")) + ")";
}

std::vector<UndecoratedInterval> barcode_undecorate(const Barcode& barcode) {
  std::vector<UndecoratedInterval> out;
  for (const auto& bar : barcode.elements()) {
    const auto& b = bar.interval.birth();
    const auto& d = bar.interval.death();
    if (b.is_finite() && d.is_finite() && b.value() == d.value()) continue;
    UndecoratedInterval u;
    if (b.is_finite()) u.lower = b.value();
    if (d.is_finite()) u.upper = d.value();
    out.push_back(u);
  }
  return out;
}

Barcode parse_barcode(std::string_view text) {
  std::vector<std::pair<Interval, std::size_t>> items;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

    std::size_t multiplicity = 1;
    std::string_view interval_text = line;
    const auto close = line.find_last_of(")]");
    if (close == std::string_view::npos) throw ParseError("missing closing bracket", line_no, 1);
    std::string_view rest = line.substr(close + 1);
    interval_text = line.substr(0, close + 1);
    const auto first = rest.find_first_not_of(" \t");
    if (first != std::string_view::npos) {
      const std::size_t col = close + 2 + first;
      rest = rest.substr(first);
      while (!rest.empty() && (rest.back() == ' ' || rest.back() == '\t')) rest.remove_suffix(1);
      if (rest.size() < 2 || rest[0] != 'x') {
        throw ParseError("expected multiplicity 'xM' after interval", line_no, col);
      }
      std::size_t m = 0;
      for (std::size_t i = 1; i < rest.size(); ++i) {
        if (rest[i] < '0' || rest[i] > '9') throw ParseError("malformed multiplicity", line_no, col + i);
        m = m * 10 + static_cast<std::size_t>(rest[i] - '0');
        if (m > 1000000) throw ParseError("multiplicity too large", line_no, col);
      }
      if (m == 0) {
        throw ValidationError("line " + std::to_string(line_no) + ": multiplicity must be positive",
                              line_no - 1);
      }
      multiplicity = m;
    }
    try {
      items.emplace_back(parse_interval(interval_text, 1), multiplicity);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), line_no, e.column());
    }
    if (end == text.size()) break;
  }
  return Barcode::from_multiplicities(items);
}

std::string format_barcode(const Barcode& barcode) {
  std::ostringstream out;
  for (const auto& [interval, m] : barcode.multiplicities()) {
    out << interval.to_string();
    if (m > 1) out << " x" << m;
    out << '\n';
  }
  return out.str();
}

}  // namespace indmatch
