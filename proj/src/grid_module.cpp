#include "indmatch/grid_module.hpp"

#include <algorithm>

namespace indmatch {

Grid::Grid(std::vector<Rational> values) : values_(std::move(values)) {
  if (values_.empty()) throw ValidationError("grid must be nonempty");
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (!(values_[i - 1] < values_[i])) {
      throw ValidationError("grid values must be strictly increasing at index " + std::to_string(i), i);
    }
  }
}

bool Grid::contains(const Rational& t) const { return index_of(t).has_value(); }

std::optional<std::size_t> Grid::index_of(const Rational& t) const {
  const auto it = std::lower_bound(values_.begin(), values_.end(), t);
  if (it == values_.end() || *it != t) return std::nullopt;
  return static_cast<std::size_t>(it - values_.begin());
}

Grid Grid::shifted(const Rational& delta) const {
  std::vector<Rational> out;
  out.reserve(values_.size());
  for (const auto& v : values_) out.push_back(v - delta);
  return Grid(std::move(out));
}

Grid Grid::negated() const {
  std::vector<Rational> out;
  out.reserve(values_.size());
  for (auto it = values_.rbegin(); it != values_.rend(); ++it) out.push_back(-*it);
  return Grid(std::move(out));
}

bool Grid::is_refined_by(const Grid& finer) const {
  return std::includes(finer.values_.begin(), finer.values_.end(), values_.begin(), values_.end());
}

Grid grid_union(const Grid& a, const Grid& b) { return grid_union(a, b.values()); }

Grid grid_union(const Grid& a, const std::vector<Rational>& extra) {
  std::vector<Rational> all = a.values();
  all.insert(all.end(), extra.begin(), extra.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  return Grid(std::move(all));
}

std::optional<ValidationError> module_validate(const Grid& grid, const std::vector<std::size_t>& dims,
                                               const std::vector<Matrix>& maps, std::uint32_t p) {
  if (!is_prime(p) || p >= 65536) {
    return ValidationError("field characteristic must be a prime below 65536, got " + std::to_string(p));
  }
  if (dims.size() != grid.size()) {
    return ValidationError("expected " + std::to_string(grid.size()) + " dims, got " +
                           std::to_string(dims.size()));
  }
  if (maps.size() + 1 != dims.size()) {
    return ValidationError("expected " + std::to_string(dims.size() - 1) + " maps, got " +
                           std::to_string(maps.size()));
  }
  for (std::size_t i = 0; i < maps.size(); ++i) {
    const auto& m = maps[i];
    if (m.cols() != dims[i] || m.rows() != dims[i + 1]) {
      return ValidationError("map " + std::to_string(i) + " is " + std::to_string(m.rows()) + "x" +
                                 std::to_string(m.cols()) + ", expected " +
                                 std::to_string(dims[i + 1]) + "x" + std::to_string(dims[i]),
                             i);
    }
    if (m.characteristic() != p) {
      return ValidationError("map " + std::to_string(i) + " is over the wrong field", i);
    }
  }
  return std::nullopt;
}

GridModule::GridModule(Grid grid, std::vector<std::size_t> dims, std::vector<Matrix> maps,
                       std::uint32_t p, bool left_open)
    : grid_(std::move(grid)), dims_(std::move(dims)), maps_(std::move(maps)), p_(p),
      left_open_(left_open) {
  if (auto problem = module_validate(grid_, dims_, maps_, p_)) throw *problem;
}

GridModule GridModule::zero(Grid grid, std::uint32_t p, bool left_open) {
  const std::size_t n = grid.size();
  return GridModule(std::move(grid), std::vector<std::size_t>(n, 0),
                    std::vector<Matrix>(n - 1, Matrix(0, 0, p)), p, left_open);
}

std::size_t GridModule::total_dimension() const {
  std::size_t sum = 0;
  for (auto d : dims_) sum += d;
  return sum;
}

std::optional<std::size_t> GridModule::cell_of(const Rational& t) const {
  const auto& v = grid_.values();
  if (!left_open_) {
    // largest i with t_i <= t
    const auto it = std::upper_bound(v.begin(), v.end(), t);
    if (it == v.begin()) return std::nullopt;
    return static_cast<std::size_t>(it - v.begin()) - 1;
  }
  // smallest i with t <= t_i
  const auto it = std::lower_bound(v.begin(), v.end(), t);
  if (it == v.end()) return std::nullopt;
  return static_cast<std::size_t>(it - v.begin());
}

std::size_t GridModule::dim_at(const Rational& t) const {
  const auto cell = cell_of(t);
  return cell ? dims_[*cell] : 0;
}

Matrix GridModule::cell_transition(std::size_t from, std::size_t to) const {
  Matrix result = Matrix::identity(dims_[from], p_);
  for (std::size_t i = from; i < to; ++i) result = maps_[i] * result;
  return result;
}

Matrix GridModule::transition(const Rational& s, const Rational& t) const {
  if (t < s) throw DomainError("transition requires s <= t");
  const auto from = cell_of(s);
  const auto to = cell_of(t);
  if (!from || !to) return Matrix(dim_at(t), dim_at(s), p_);
  return cell_transition(*from, *to);
}

Barcode module_barcode(const GridModule& module) {
  const std::size_t n = module.cell_count();
  // ranks[i][j] = rank of the transition from cell i to cell j, i <= j
  std::vector<std::vector<std::size_t>> ranks(n, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Matrix composite = Matrix::identity(module.dims()[i], module.characteristic());
    for (std::size_t j = i; j < n; ++j) {
      if (j > i) composite = module.maps()[j - 1] * composite;
      ranks[i][j] = rank(composite);
    }
  }
  auto r = [&](std::ptrdiff_t i, std::ptrdiff_t j) -> std::ptrdiff_t {
    if (i < 0 || j >= static_cast<std::ptrdiff_t>(n)) return 0;
    return static_cast<std::ptrdiff_t>(ranks[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  };
  const auto& g = module.grid();
  std::vector<std::pair<Interval, std::size_t>> items;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      const auto si = static_cast<std::ptrdiff_t>(i);
      const auto sj = static_cast<std::ptrdiff_t>(j);
      const std::ptrdiff_t m = r(si, sj) - r(si - 1, sj) - r(si, sj + 1) + r(si - 1, sj + 1);
      if (m < 0) throw DomainError("negative barcode multiplicity; the module is inconsistent");
      if (m == 0) continue;
      if (!module.left_open()) {
        const auto birth = DecoratedEndpoint::minus(g[i]);
        const auto death = j + 1 < n ? DecoratedEndpoint::minus(g[j + 1]) : DecoratedEndpoint::pos_infinity();
        items.emplace_back(Interval(birth, death), static_cast<std::size_t>(m));
      } else {
        const auto birth = i > 0 ? DecoratedEndpoint::plus(g[i - 1]) : DecoratedEndpoint::neg_infinity();
        const auto death = DecoratedEndpoint::plus(g[j]);
        items.emplace_back(Interval(birth, death), static_cast<std::size_t>(m));
      }
    }
  }
  return Barcode::from_multiplicities(items);
}

std::vector<std::size_t> bars_at(const Barcode& barcode, const Rational& t) {
  std::vector<std::size_t> out;
  const auto& elements = barcode.elements();
  for (std::size_t k = 0; k < elements.size(); ++k) {
    if (elements[k].interval.contains_point(t)) out.push_back(k);
  }
  return out;
}

namespace {

bool endpoint_on_grid(const DecoratedEndpoint& e, Decoration expected, const Grid& grid) {
  return e.is_finite() && e.decoration() == expected && grid.contains(e.value());
}

std::optional<std::string> realizability_problem(const Interval& bar, const Grid& grid, bool left_open) {
  const auto& b = bar.birth();
  const auto& d = bar.death();
  if (!left_open) {
    if (!endpoint_on_grid(b, Decoration::minus, grid)) {
      return "bar " + bar.to_string() + " must start with '[' at a grid value";
    }
    if (d.kind() != DecoratedEndpoint::Kind::pos_infinity && !endpoint_on_grid(d, Decoration::minus, grid)) {
      return "bar " + bar.to_string() + " must end with ')' at a grid value or at inf";
    }
  } else {
    if (b.kind() != DecoratedEndpoint::Kind::neg_infinity && !endpoint_on_grid(b, Decoration::plus, grid)) {
      return "bar " + bar.to_string() + " must start with '(' at a grid value or at -inf";
    }
    if (!endpoint_on_grid(d, Decoration::plus, grid)) {
      return "bar " + bar.to_string() + " must end with ']' at a grid value";
    }
  }
  return std::nullopt;
}

}  // namespace

bool is_realizable(const Barcode& barcode, const Grid& grid, bool left_open) {
  for (const auto& bar : barcode.elements()) {
    if (realizability_problem(bar.interval, grid, left_open)) return false;
  }
  return true;
}

GridModule module_from_barcode(const Barcode& barcode, const Grid& grid, std::uint32_t p,
                               std::optional<bool> left_open) {
  PrimeField{p};
  bool layout = false;
  if (left_open) {
    layout = *left_open;
  } else if (!barcode.empty()) {
    const auto& first = barcode.elements().front().interval;
    layout = first.birth().kind() == DecoratedEndpoint::Kind::neg_infinity ||
             first.birth().decoration() == Decoration::plus;
  }
  for (const auto& bar : barcode.elements()) {
    if (auto problem = realizability_problem(bar.interval, grid, layout)) {
      throw DomainError(*problem + (layout ? " (open-closed layout)" : " (closed-open layout)"));
    }
  }
  const std::size_t n = grid.size();
  std::vector<std::vector<std::size_t>> active(n);
  std::vector<std::size_t> dims(n);
  for (std::size_t c = 0; c < n; ++c) {
    active[c] = bars_at(barcode, grid[c]);
    dims[c] = active[c].size();
  }
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c + 1 < n; ++c) {
    Matrix m(dims[c + 1], dims[c], p);
    for (std::size_t a = 0; a < active[c].size(); ++a) {
      const auto it = std::lower_bound(active[c + 1].begin(), active[c + 1].end(), active[c][a]);
      if (it != active[c + 1].end() && *it == active[c][a]) {
        m(static_cast<std::size_t>(it - active[c + 1].begin()), a) = 1;
      }
    }
    maps.push_back(std::move(m));
  }
  return GridModule(grid, std::move(dims), std::move(maps), p, layout);
}

GridModule module_shift(const GridModule& module, const Rational& delta) {
  return GridModule(module.grid().shifted(delta), module.dims(), module.maps(),
                    module.characteristic(), module.left_open());
}

GridModule module_refine(const GridModule& module, const Grid& finer) {
  if (!module.grid().is_refined_by(finer)) {
    throw DomainError("refinement grid must contain every value of the module's grid");
  }
  if (finer == module.grid()) return module;
  const std::size_t n = finer.size();
  std::vector<std::size_t> dims(n);
  for (std::size_t c = 0; c < n; ++c) dims[c] = module.dim_at(finer[c]);
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c + 1 < n; ++c) maps.push_back(module.transition(finer[c], finer[c + 1]));
  return GridModule(finer, std::move(dims), std::move(maps), module.characteristic(), module.left_open());
}

std::pair<GridModule, GridModule> align(const GridModule& a, const GridModule& b) {
  if (a.characteristic() != b.characteristic()) throw DomainError("modules are over different fields");
  if (a.left_open() != b.left_open()) throw DomainError("modules have different cell layouts");
  const Grid common = grid_union(a.grid(), b.grid());
  return {module_refine(a, common), module_refine(b, common)};
}

bool equal_after_refinement(const GridModule& a, const GridModule& b) {
  if (a.characteristic() != b.characteristic() || a.left_open() != b.left_open()) return false;
  const auto [ra, rb] = align(a, b);
  return ra == rb;
}

GridModule module_direct_sum(const GridModule& a, const GridModule& b) {
  const auto [ra, rb] = align(a, b);
  std::vector<std::size_t> dims(ra.cell_count());
  for (std::size_t c = 0; c < dims.size(); ++c) dims[c] = ra.dims()[c] + rb.dims()[c];
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c < ra.maps().size(); ++c) maps.push_back(block_diagonal(ra.maps()[c], rb.maps()[c]));
  return GridModule(ra.grid(), std::move(dims), std::move(maps), ra.characteristic(), ra.left_open());
}

GridModule module_dual(const GridModule& module) {
  const std::size_t n = module.cell_count();
  std::vector<std::size_t> dims(module.dims().rbegin(), module.dims().rend());
  std::vector<Matrix> maps;
  for (std::size_t k = 0; k + 1 < n; ++k) maps.push_back(module.maps()[n - 2 - k].transpose());
  return GridModule(module.grid().negated(), std::move(dims), std::move(maps), module.characteristic(),
                    !module.left_open());
}

bool TrivialityBound::allows(const Rational& eps) const {
  if (!value) return false;
  return open ? *value < eps : *value <= eps;
}

std::string TrivialityBound::to_string() const {
  if (!value) return "inf";
  return format_rational(*value) + (open ? " (open)" : "");
}

TrivialityBound min_trivial_eps(const Barcode& barcode) {
  TrivialityBound bound{Rational(0), false};
  for (const auto& bar : barcode.elements()) {
    const auto& b = bar.interval.birth();
    const auto& d = bar.interval.death();
    if (!b.is_finite() || !d.is_finite()) return TrivialityBound{std::nullopt, false};
    const Rational length = d.value() - b.value();
    // b + length >= d holds unless b = x^- and d = y^+ (a closed bar).
    const bool open = b.decoration() == Decoration::minus && d.decoration() == Decoration::plus;
    if (*bound.value < length || (*bound.value == length && open)) bound = TrivialityBound{length, open};
  }
  return bound;
}

TrivialityBound min_trivial_eps(const GridModule& module) { return min_trivial_eps(module_barcode(module)); }

}  // namespace indmatch
