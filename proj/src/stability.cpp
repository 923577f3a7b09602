#include "indmatch/stability.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace indmatch {

std::string_view to_string(InterleavingReport::Failure failure) {
  switch (failure) {
    case InterleavingReport::Failure::none: return "none";
    case InterleavingReport::Failure::shape: return "shape";
    case InterleavingReport::Failure::source_side: return "bwd(delta) o fwd != phi_M^(2 delta)";
    case InterleavingReport::Failure::target_side: return "fwd(delta) o bwd != phi_N^(2 delta)";
  }
  return "unknown";
}

namespace {

InterleavingReport compare_side(const Morphism& first, const Morphism& second, const Rational& delta,
                                InterleavingReport::Failure side) {
  InterleavingReport report;
  const Morphism shifted = morphism_shift(second, delta);
  const auto [a, b] = align(first, shifted);
  if (!equal_after_refinement(a.target(), b.source())) {
    report.ok = false;
    report.failure = InterleavingReport::Failure::shape;
    report.message = "the shifted morphisms are not composable";
    return report;
  }
  const Morphism composite = morphism_compose(a, b);
  const Morphism transition = transition_endomorphism(first.source(), 2 * delta);
  const auto [c, t] = align(composite, transition);
  if (c.source() != t.source() || c.target() != t.target()) {
    report.ok = false;
    report.failure = InterleavingReport::Failure::shape;
    report.message = "composite and transition morphism have different modules";
    return report;
  }
  for (std::size_t i = 0; i < c.mats().size(); ++i) {
    if (c.mats()[i] != t.mats()[i]) {
      report.ok = false;
      report.failure = side;
      report.point = c.grid()[i];
      report.message = std::string(to_string(side)) + " at the cell of " + format_rational(c.grid()[i]);
      return report;
    }
  }
  return report;
}

}  // namespace

InterleavingReport check_interleaving(const InterleavingPair& pair) {
  if (pair.delta < 0) throw DomainError("interleaving parameter must be nonnegative");
  InterleavingReport report;
  if (!equal_after_refinement(pair.fwd.target(), module_shift(pair.bwd.source(), pair.delta)) ||
      !equal_after_refinement(pair.bwd.target(), module_shift(pair.fwd.source(), pair.delta))) {
    report.ok = false;
    report.failure = InterleavingReport::Failure::shape;
    report.message = "targets are not the delta-shifts of the sources";
    return report;
  }
  report = compare_side(pair.fwd, pair.bwd, pair.delta, InterleavingReport::Failure::source_side);
  if (!report.ok) return report;
  return compare_side(pair.bwd, pair.fwd, pair.delta, InterleavingReport::Failure::target_side);
}

Matching reindex_r_delta(const Matching& sigma, const Rational& delta) {
  std::vector<BarPair> pairs;
  for (const auto& [s, t] : sigma.pairs()) pairs.emplace_back(s, bar_shift(t, -delta));
  return Matching(sigma.source(), barcode_shift(sigma.target(), -delta), std::move(pairs));
}

Matching reindex_r_delta(const Matching& sigma, const Rational& delta, const Barcode& expected) {
  if (barcode_shift(expected, delta) != sigma.target()) {
    throw DomainError("target barcode is not the " + format_rational(delta) + "-shift of the expected barcode");
  }
  return reindex_r_delta(sigma, delta);
}

Matching stability_matching(const Morphism& f, const Rational& delta, BlockOrder order) {
  if (delta < 0) throw DomainError("delta must be nonnegative");
  return reindex_r_delta(induced_matching(f, order), delta);
}

bool single_morphism_check(const Morphism& f, const Rational& delta) {
  if (delta < 0) throw DomainError("delta must be nonnegative");
  const Rational two_delta = 2 * delta;
  return min_trivial_eps(kernel_of(f).module).allows(two_delta) &&
         min_trivial_eps(cokernel_of(f).module).allows(two_delta);
}

namespace {

// Hopcroft-Karp on a bipartite graph with equally many vertices on each side.
class BipartiteMatcher {
 public:
  explicit BipartiteMatcher(std::size_t n) : adj_(n), match_left_(n, npos), match_right_(n, npos), dist_(n) {}

  void add_edge(std::size_t left, std::size_t right) { adj_[left].push_back(right); }

  std::size_t solve() {
    std::size_t size = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < adj_.size(); ++u) {
        if (match_left_[u] == npos && dfs(u)) ++size;
      }
    }
    return size;
  }

  std::size_t partner(std::size_t left) const { return match_left_[left]; }

 private:
  static constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> queue;
    bool found = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_left_[u] == npos) {
        dist_[u] = 0;
        queue.push(u);
      } else {
        dist_[u] = npos;
      }
    }
    while (!queue.empty()) {
      const auto u = queue.front();
      queue.pop();
      for (const auto v : adj_[u]) {
        const auto w = match_right_[v];
        if (w == npos) {
          found = true;
        } else if (dist_[w] == npos) {
          dist_[w] = dist_[u] + 1;
          queue.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (const auto v : adj_[u]) {
      const auto w = match_right_[v];
      if (w == npos || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_left_[u] = v;
        match_right_[v] = u;
        return true;
      }
    }
    dist_[u] = npos;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::vector<std::size_t> match_left_;
  std::vector<std::size_t> match_right_;
  std::vector<std::size_t> dist_;
};

}  // namespace

std::optional<Matching> find_delta_matching(const Barcode& a, const Barcode& b, const Rational& delta) {
  if (delta < 0) throw DomainError("delta must be nonnegative");
  const auto& left = a.elements();
  const auto& right = b.elements();
  const std::size_t m = left.size();
  const std::size_t n = right.size();
  const Rational two_delta = 2 * delta;
  // Left vertices: bars of a, then one slot per bar of b. Right vertices: bars of b,
  // then one slot per bar of a. A bar may use its own slot only when it is short.
  BipartiteMatcher graph(m + n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (delta_admissible(left[i].interval, right[j].interval, delta)) graph.add_edge(i, j);
    }
    if (!is_persistent(left[i].interval, two_delta)) graph.add_edge(i, n + i);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_persistent(right[j].interval, two_delta)) graph.add_edge(m + j, j);
    for (std::size_t i = 0; i < m; ++i) graph.add_edge(m + j, n + i);
  }
  if (graph.solve() != m + n) return std::nullopt;
  std::vector<BarPair> pairs;
  for (std::size_t i = 0; i < m; ++i) {
    const auto j = graph.partner(i);
    if (j < n) pairs.emplace_back(left[i], right[j]);
  }
  return Matching(a, b, std::move(pairs));
}

std::vector<Rational> bottleneck_candidates(const Barcode& a, const Barcode& b) {
  std::vector<Rational> out{Rational(0)};
  const auto abs = [](const Rational& x) { return x < 0 ? -x : x; };
  for (const auto& x : a.elements()) {
    for (const auto& y : b.elements()) {
      const auto& bx = x.interval.birth();
      const auto& by = y.interval.birth();
      const auto& dx = x.interval.death();
      const auto& dy = y.interval.death();
      if (bx.is_finite() && by.is_finite()) out.push_back(abs(bx.value() - by.value()));
      if (dx.is_finite() && dy.is_finite()) out.push_back(abs(dx.value() - dy.value()));
    }
  }
  for (const auto* barcode : {&a, &b}) {
    for (const auto& x : barcode->elements()) {
      const auto& bx = x.interval.birth();
      const auto& dx = x.interval.death();
      if (bx.is_finite() && dx.is_finite()) out.push_back((dx.value() - bx.value()) / 2);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

BottleneckResult bottleneck_distance(const Barcode& a, const Barcode& b) {
  // Feasibility only changes at candidates; between two candidates it is constant.
  const auto candidates = bottleneck_candidates(a, b);
  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const Rational& c = candidates[k];
    if (auto witness = find_delta_matching(a, b, c)) {
      return BottleneckResult{c, true, std::move(witness), c};
    }
    const Rational probe = k + 1 < candidates.size() ? (c + candidates[k + 1]) / 2 : c + 1;
    if (auto witness = find_delta_matching(a, b, probe)) {
      return BottleneckResult{c, false, std::move(witness), probe};
    }
  }
  return BottleneckResult{std::nullopt, false, std::nullopt, std::nullopt};
}

namespace {

std::vector<Rational> finite_endpoints(const Barcode& barcode, const Rational& offset) {
  std::vector<Rational> out;
  for (const auto& bar : barcode.elements()) {
    for (const auto* e : {&bar.interval.birth(), &bar.interval.death()}) {
      if (e->is_finite()) out.push_back(e->value() - offset);
    }
  }
  return out;
}

std::optional<bool> layout_of(const Barcode& a, const Barcode& b) {
  for (const auto* barcode : {&a, &b}) {
    if (!barcode->empty()) {
      const auto& first = barcode->elements().front().interval.birth();
      return first.kind() == DecoratedEndpoint::Kind::neg_infinity || first.decoration() == Decoration::plus;
    }
  }
  return std::nullopt;
}

Grid interleaving_grid(const Barcode& own, const Barcode& other, const Rational& delta, const std::optional<Grid>& base) {
  std::vector<Rational> points = finite_endpoints(own, 0);
  const auto shifted = finite_endpoints(other, delta);
  points.insert(points.end(), shifted.begin(), shifted.end());
  if (base) return grid_union(*base, points);
  if (points.empty()) return Grid({Rational(0)});
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return Grid(std::move(points));
}

Morphism one_way(const Barcode& from, const Barcode& to, const std::vector<BarPair>& pairs, const Rational& delta,
                 const std::optional<Grid>& base, std::uint32_t p, std::optional<bool> layout) {
  const Barcode shifted = barcode_shift(to, delta);
  std::vector<BarCoefficient> coefficients;
  for (const auto& [x, y] : pairs) {
    const BarRef target = bar_shift(y, delta);
    if (interval_hom_nonzero(x.interval, target.interval)) coefficients.emplace_back(x, target, 1);
  }
  return morphism_from_bar_pairs(from, shifted, interleaving_grid(from, to, delta, base), p, coefficients, layout);
}

}  // namespace

InterleavingPair interleaving_from_matching(const Matching& sigma, const Rational& delta,
                                            const std::optional<Grid>& base, std::uint32_t p) {
  const auto report = check_delta_matching(sigma, delta);
  if (!report.ok) throw DomainError("not a " + format_rational(delta) + "-matching: " + report.message);
  const auto layout = layout_of(sigma.source(), sigma.target());
  std::vector<BarPair> reversed;
  for (const auto& [x, y] : sigma.pairs()) reversed.emplace_back(y, x);
  Morphism fwd = one_way(sigma.source(), sigma.target(), sigma.pairs(), delta, base, p, layout);
  Morphism bwd = one_way(sigma.target(), sigma.source(), reversed, delta, base, p, layout);
  return InterleavingPair{delta, std::move(fwd), std::move(bwd)};
}

bool eps_trivial_check(const GridModule& module, const Rational& eps) {
  if (eps < 0) throw DomainError("eps must be nonnegative");
  return transition_endomorphism(module, eps).is_zero();
}

}  // namespace indmatch
