#include "indmatch/matching.hpp"

#include "indmatch/error.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace indmatch {

Matching::Matching(Barcode source, Barcode target, std::vector<BarPair> pairs)
    : source_(std::move(source)), target_(std::move(target)), pairs_(std::move(pairs)) {
  std::sort(pairs_.begin(), pairs_.end());
  std::set<BarRef> seen_target;
  for (std::size_t i = 0; i < pairs_.size(); ++i) {
    const auto& [s, t] = pairs_[i];
    if (!source_.contains(s)) throw ValidationError("matched bar " + s.to_string() + " is not in the source barcode", i);
    if (!target_.contains(t)) throw ValidationError("matched bar " + t.to_string() + " is not in the target barcode", i);
    if (i > 0 && pairs_[i - 1].first == s) throw ValidationError("source bar " + s.to_string() + " matched twice", i);
    if (!seen_target.insert(t).second) throw ValidationError("target bar " + t.to_string() + " matched twice", i);
  }
}

Matching Matching::identity(const Barcode& barcode) {
  std::vector<BarPair> pairs;
  for (const auto& bar : barcode.elements()) pairs.emplace_back(bar, bar);
  return Matching(barcode, barcode, std::move(pairs));
}

std::optional<BarRef> Matching::image_of(const BarRef& source_bar) const {
  const auto it = std::lower_bound(pairs_.begin(), pairs_.end(), source_bar,
                                   [](const BarPair& p, const BarRef& b) { return p.first < b; });
  if (it == pairs_.end() || it->first != source_bar) return std::nullopt;
  return it->second;
}

std::optional<BarRef> Matching::preimage_of(const BarRef& target_bar) const {
  for (const auto& [s, t] : pairs_) {
    if (t == target_bar) return s;
  }
  return std::nullopt;
}

std::vector<BarRef> Matching::domain() const {
  std::vector<BarRef> out;
  for (const auto& p : pairs_) out.push_back(p.first);
  return out;
}

std::vector<BarRef> Matching::image() const {
  std::vector<BarRef> out;
  for (const auto& p : pairs_) out.push_back(p.second);
  std::sort(out.begin(), out.end());
  return out;
}

Matching matching_compose(const Matching& sigma, const Matching& tau) {
  if (!(sigma.target() == tau.source())) {
    throw DomainError("cannot compose matchings: intermediate barcodes differ");
  }
  std::vector<BarPair> pairs;
  for (const auto& [s, t] : sigma.pairs()) {
    if (auto u = tau.image_of(t)) pairs.emplace_back(s, *u);
  }
  return Matching(sigma.source(), tau.target(), std::move(pairs));
}

Matching matching_reverse(const Matching& sigma) {
  std::vector<BarPair> pairs;
  for (const auto& [s, t] : sigma.pairs()) pairs.emplace_back(t, s);
  return Matching(sigma.target(), sigma.source(), std::move(pairs));
}

Matching matching_dual(const Matching& sigma) {
  std::vector<BarPair> pairs;
  for (const auto& [s, t] : sigma.pairs()) pairs.emplace_back(bar_dual(t), bar_dual(s));
  return Matching(barcode_dual(sigma.target()), barcode_dual(sigma.source()), std::move(pairs));
}

namespace {

// Renumbers copies of `bar` from `second` so they follow the copies in `first`.
BarRef renumber(const BarRef& bar, const Barcode& first) {
  return {bar.interval, static_cast<std::uint32_t>(bar.copy + first.multiplicity(bar.interval))};
}

}  // namespace

Matching matching_coproduct(const Matching& sigma, const Matching& tau) {
  std::vector<BarPair> pairs = sigma.pairs();
  for (const auto& [s, t] : tau.pairs()) {
    pairs.emplace_back(renumber(s, sigma.source()), renumber(t, sigma.target()));
  }
  return Matching(barcode_union(sigma.source(), tau.source()),
                  barcode_union(sigma.target(), tau.target()), std::move(pairs));
}

std::string_view to_string(DeltaMatchingReport::Clause clause) {
  switch (clause) {
    case DeltaMatchingReport::Clause::none: return "none";
    case DeltaMatchingReport::Clause::source_coverage: return "source_coverage";
    case DeltaMatchingReport::Clause::target_coverage: return "target_coverage";
    case DeltaMatchingReport::Clause::endpoint_proximity: return "endpoint_proximity";
  }
  return "unknown";
}

bool delta_admissible(const Interval& a, const Interval& b, const Rational& delta) {
  // a ⊆ <b.birth - delta, b.death + delta> and b ⊆ <a.birth - delta, a.death + delta>
  return b.birth() - delta <= a.birth() && a.death() <= b.death() + delta &&
         a.birth() - delta <= b.birth() && b.death() <= a.death() + delta;
}

DeltaMatchingReport check_delta_matching(const Matching& sigma, const Rational& delta) {
  if (delta < 0) throw DomainError("delta must be nonnegative, got " + format_rational(delta));
  using Clause = DeltaMatchingReport::Clause;
  DeltaMatchingReport report;
  const Rational two_delta = 2 * delta;
  for (const auto& bar : sigma.source().elements()) {
    if (is_persistent(bar.interval, two_delta) && !sigma.image_of(bar)) {
      report.ok = false;
      report.clause = Clause::source_coverage;
      report.source_bar = bar;
      report.message = "source bar " + bar.to_string() + " outlives 2*delta but is unmatched";
      return report;
    }
  }
  const auto image = sigma.image();
  for (const auto& bar : sigma.target().elements()) {
    if (is_persistent(bar.interval, two_delta) &&
        !std::binary_search(image.begin(), image.end(), bar)) {
      report.ok = false;
      report.clause = Clause::target_coverage;
      report.target_bar = bar;
      report.message = "target bar " + bar.to_string() + " outlives 2*delta but is unmatched";
      return report;
    }
  }
  for (const auto& [s, t] : sigma.pairs()) {
    if (!delta_admissible(s.interval, t.interval, delta)) {
      report.ok = false;
      report.clause = Clause::endpoint_proximity;
      report.source_bar = s;
      report.target_bar = t;
      report.message = "pair " + s.to_string() + " -> " + t.to_string() +
                       " moves an endpoint by more than delta";
      return report;
    }
  }
  return report;
}

std::string format_matching(const Matching& sigma) {
  std::ostringstream out;
  for (const auto& [s, t] : sigma.pairs()) out << s.to_string() << " -> " << t.to_string() << '\n';
  return out.str();
}

namespace {

BarRef parse_bar(std::string_view text, std::size_t line, std::size_t column) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) {
    text.remove_prefix(1);
    ++column;
  }
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t')) text.remove_suffix(1);
  const auto hash = text.rfind('#');
  if (hash == std::string_view::npos) throw ParseError("expected '#<copy>' after interval", line, column);
  BarRef bar{Interval::closed_open(0, 1), 1};
  try {
    bar.interval = parse_interval(text.substr(0, hash), column);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line, e.column());
  }
  const auto digits = text.substr(hash + 1);
  if (digits.empty()) throw ParseError("missing copy index", line, column + hash + 1);
  std::uint32_t copy = 0;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '9') throw ParseError("malformed copy index", line, column + hash + 1 + i);
    copy = copy * 10 + static_cast<std::uint32_t>(digits[i] - '0');
  }
  if (copy == 0) throw ParseError("copy index must be positive", line, column + hash + 1);
  bar.copy = copy;
  return bar;
}

}  // namespace

std::vector<BarPair> parse_matching_pairs(std::string_view text) {
  std::vector<BarPair> pairs;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    ++line_no;
    start = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
    const auto arrow = line.find("->");
    if (arrow == std::string_view::npos) throw ParseError("expected '->'", line_no, 1);
    pairs.emplace_back(parse_bar(line.substr(0, arrow), line_no, 1),
                       parse_bar(line.substr(arrow + 2), line_no, arrow + 3));
  }
  return pairs;
}

Matching parse_matching(std::string_view text, const Barcode& source, const Barcode& target) {
  return Matching(source, target, parse_matching_pairs(text));
}

}  // namespace indmatch
