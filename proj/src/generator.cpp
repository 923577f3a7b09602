#include "indmatch/generator.hpp"

#include <algorithm>

namespace indmatch {

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (const unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::uint64_t Rng::mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng Rng::substream(std::string_view tag) const { return Rng(mix(key_ ^ fnv1a(tag)), 0); }

Rng Rng::substream(std::uint64_t index) const { return Rng(mix(key_ ^ mix(index ^ 0x5bd1e995ULL)), 0); }

std::uint64_t Rng::next() { return mix(key_ + 0x9e3779b97f4a7c15ULL * ++counter_); }

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw DomainError("empty range");
  const std::uint64_t threshold = (0 - n) % n;
  for (;;) {
    const std::uint64_t x = next();
    if (x >= threshold) return x % n;
  }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw DomainError("empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

void GenConfig::validate() const {
  if (!is_prime(field_char) || field_char >= 65536) {
    throw ValidationError("field characteristic must be a prime below 65536");
  }
  if (max_grid_points == 0) throw ValidationError("max_grid_points must be positive");
  if (max_multiplicity == 0) throw ValidationError("max_multiplicity must be positive");
  if (delta_min < 0 || delta_max < delta_min) throw ValidationError("delta range must satisfy 0 <= min <= max");
}

Matrix CellBasis::at(const Rational& t) const {
  const auto& v = grid.values();
  std::optional<std::size_t> cell;
  if (!left_open) {
    const auto it = std::upper_bound(v.begin(), v.end(), t);
    if (it != v.begin()) cell = static_cast<std::size_t>(it - v.begin()) - 1;
  } else {
    const auto it = std::lower_bound(v.begin(), v.end(), t);
    if (it != v.end()) cell = static_cast<std::size_t>(it - v.begin());
  }
  return cell ? mats[*cell] : Matrix(0, 0, p);
}

namespace {

Matrix basis_for(const CellBasis& basis, const Rational& t, std::size_t dim) {
  Matrix m = basis.at(t);
  if (m.rows() != dim) {
    throw DomainError("basis at " + format_rational(t) + " has size " + std::to_string(m.rows()) +
                      " but the module has dimension " + std::to_string(dim));
  }
  return m;
}

}  // namespace

GridModule change_basis(const GridModule& module, const CellBasis& basis, const Rational& offset) {
  const auto& g = module.grid();
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c + 1 < module.cell_count(); ++c) {
    const Matrix from = basis_for(basis, g[c] + offset, module.dims()[c]);
    const Matrix to = basis_for(basis, g[c + 1] + offset, module.dims()[c + 1]);
    maps.push_back(to * module.maps()[c] * inverse(from));
  }
  return GridModule(g, module.dims(), std::move(maps), module.characteristic(), module.left_open());
}

Morphism change_basis(const Morphism& f, const CellBasis& source_basis, const CellBasis& target_basis,
                      const Rational& source_offset, const Rational& target_offset) {
  const auto& g = f.grid();
  std::vector<Matrix> mats;
  for (std::size_t c = 0; c < g.size(); ++c) {
    const Matrix s = basis_for(source_basis, g[c] + source_offset, f.source().dims()[c]);
    const Matrix t = basis_for(target_basis, g[c] + target_offset, f.target().dims()[c]);
    mats.push_back(t * f.mats()[c] * inverse(s));
  }
  return Morphism(change_basis(f.source(), source_basis, source_offset),
                  change_basis(f.target(), target_basis, target_offset), std::move(mats));
}

Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t p, Rng& rng) {
  Matrix m(rows, cols, p);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = static_cast<std::uint32_t>(rng.below(p));
  }
  return m;
}

Matrix random_invertible(std::size_t n, std::uint32_t p, Rng& rng) {
  for (;;) {
    Matrix m = random_matrix(n, n, p, rng);
    if (rank(m) == n) return m;
  }
}

CellBasis random_basis(const GridModule& module, Rng& rng) {
  CellBasis basis{module.grid(), module.left_open(), module.characteristic(), {}};
  for (auto d : module.dims()) basis.mats.push_back(random_invertible(d, module.characteristic(), rng));
  return basis;
}

Grid gen_grid(const GenConfig& cfg, Rng& rng) {
  const auto n = static_cast<std::size_t>(rng.between(1, static_cast<std::int64_t>(cfg.max_grid_points)));
  std::vector<Rational> values{Rational(rng.between(-4, 4), 2)};
  while (values.size() < n) values.push_back(values.back() + Rational(rng.between(1, 4), 2));
  return Grid(std::move(values));
}

Barcode gen_barcode(const Grid& grid, const GenConfig& cfg, Rng& rng) {
  const std::size_t n = grid.size();
  std::vector<std::size_t> load(n, 0);
  std::vector<std::pair<Interval, std::size_t>> items;
  const auto attempts = rng.between(0, 2 * static_cast<std::int64_t>(cfg.max_dim));
  for (std::int64_t a = 0; a < attempts; ++a) {
    const auto i = static_cast<std::size_t>(rng.below(n));
    const auto j = static_cast<std::size_t>(rng.between(static_cast<std::int64_t>(i) + 1, static_cast<std::int64_t>(n)));
    std::size_t room = cfg.max_dim;
    for (std::size_t c = i; c < j; ++c) room = std::min(room, cfg.max_dim - load[c]);
    if (room == 0) continue;
    const auto m = static_cast<std::size_t>(
        rng.between(1, static_cast<std::int64_t>(std::min(room, cfg.max_multiplicity))));
    for (std::size_t c = i; c < j; ++c) load[c] += m;
    const auto death = j < n ? DecoratedEndpoint::minus(grid[j]) : DecoratedEndpoint::pos_infinity();
    items.emplace_back(Interval(DecoratedEndpoint::minus(grid[i]), death), m);
  }
  return Barcode::from_multiplicities(items);
}

GeneratedModule gen_module_with_barcode(const Barcode& barcode, const Grid& grid, std::uint32_t p, Rng& rng) {
  const GridModule intervals = module_from_barcode(barcode, grid, p);
  CellBasis basis = random_basis(intervals, rng);
  GridModule module = change_basis(intervals, basis);
  return GeneratedModule{std::move(module), barcode, std::move(basis)};
}

GeneratedModule gen_module(const GenConfig& cfg, Rng& rng) {
  cfg.validate();
  Rng grid_rng = rng.substream("grid");
  Rng bar_rng = rng.substream("bars");
  Rng basis_rng = rng.substream("basis");
  const Grid grid = gen_grid(cfg, grid_rng);
  const Barcode barcode = gen_barcode(grid, cfg, bar_rng);
  return gen_module_with_barcode(barcode, grid, cfg.field_char, basis_rng);
}

GeneratedModule gen_module(const GenConfig& cfg) {
  Rng rng = Rng(cfg.seed).substream("module");
  return gen_module(cfg, rng);
}

Morphism gen_morphism(const GeneratedModule& source, const GeneratedModule& target, const GenConfig& cfg, Rng& rng,
                      bool force_identity) {
  const std::uint32_t p = source.module.characteristic();
  if (target.module.characteristic() != p) throw DomainError("modules are over different fields");
  const Grid grid = grid_union(source.module.grid(), target.module.grid());
  std::vector<BarCoefficient> coefficients;
  for (const auto& from : source.barcode.elements()) {
    for (const auto& to : target.barcode.elements()) {
      if (!interval_hom_nonzero(from.interval, to.interval)) continue;
      std::uint32_t value = 0;
      if (force_identity) {
        value = from == to ? 1 : 0;
      } else {
        value = static_cast<std::uint32_t>(rng.below(p));
      }
      if (value != 0) coefficients.emplace_back(from, to, value);
    }
  }
  const Morphism plain =
      morphism_from_bar_pairs(source.barcode, target.barcode, grid, p, coefficients, source.module.left_open());
  return change_basis(plain, source.basis, target.basis);
}

Rational gen_delta(const GenConfig& cfg, Rng& rng) {
  const Rational steps = (cfg.delta_max - cfg.delta_min) * 4;
  const auto count = steps.numerator() / steps.denominator();
  return cfg.delta_min + Rational(rng.between(0, count), 4);
}

namespace {

Grid endpoint_grid(const Barcode& barcode) {
  std::vector<Rational> points;
  for (const auto& bar : barcode.elements()) {
    for (const auto* e : {&bar.interval.birth(), &bar.interval.death()}) {
      if (e->is_finite()) points.push_back(e->value());
    }
  }
  if (points.empty()) return Grid({Rational(0)});
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  return Grid(std::move(points));
}

}  // namespace

GeneratedInterleaving gen_interleaving(const GenConfig& cfg, Rng& rng) {
  cfg.validate();
  Rng shape_rng = rng.substream("shape");
  Rng basis_rng = rng.substream("basis");
  const Rational delta = gen_delta(cfg, shape_rng);
  const Grid grid = gen_grid(cfg, shape_rng);
  const Barcode source = gen_barcode(grid, cfg, shape_rng);
  const Rational half = delta / 2;

  // Each entry: perturbed interval and the source bar it is matched with, if any.
  std::vector<std::pair<Interval, std::optional<BarRef>>> drafts;
  for (const auto& bar : source.elements()) {
    const auto& b = bar.interval.birth();
    const auto& d = bar.interval.death();
    if (!is_persistent(bar.interval, 2 * delta) && shape_rng.chance(1, 3)) continue;
    const Rational nb = b.value() + half * shape_rng.between(-2, 2);
    Interval moved = bar.interval;
    if (!d.is_finite()) {
      moved = Interval(DecoratedEndpoint::minus(nb), d);
    } else {
      const Rational nd = d.value() + half * shape_rng.between(-2, 2);
      if (nb < nd) moved = Interval::closed_open(nb, nd);
    }
    drafts.emplace_back(moved, bar);
  }
  if (delta > 0) {
    const auto extra = shape_rng.between(0, 2);
    for (std::int64_t k = 0; k < extra; ++k) {
      const Rational start = grid[static_cast<std::size_t>(shape_rng.below(grid.size()))] +
                             Rational(shape_rng.between(-2, 2), 2);
      drafts.emplace_back(Interval::closed_open(start, start + half * shape_rng.between(1, 4)), std::nullopt);
    }
  }
  std::vector<Interval> intervals;
  for (const auto& [interval, from] : drafts) intervals.push_back(interval);
  const Barcode target(intervals);
  std::vector<BarPair> pairs;
  std::vector<std::pair<Interval, std::uint32_t>> used;
  for (const auto& [interval, from] : drafts) {
    std::uint32_t copy = 1;
    for (const auto& [seen, count] : used) {
      if (seen == interval) copy = count + 1;
    }
    used.emplace_back(interval, copy);
    if (from) pairs.emplace_back(*from, BarRef{interval, copy});
  }
  Matching matching(source, target, std::move(pairs));
  InterleavingPair plain = interleaving_from_matching(matching, delta, std::nullopt, cfg.field_char);

  const CellBasis p_basis =
      random_basis(module_from_barcode(source, endpoint_grid(source), cfg.field_char, false), basis_rng);
  const CellBasis q_basis =
      random_basis(module_from_barcode(target, endpoint_grid(target), cfg.field_char, false), basis_rng);
  InterleavingPair pair{delta, change_basis(plain.fwd, p_basis, q_basis, 0, delta),
                        change_basis(plain.bwd, q_basis, p_basis, 0, delta)};
  return GeneratedInterleaving{std::move(pair), std::move(matching)};
}

GeneratedInterleaving gen_interleaving(const GenConfig& cfg) {
  Rng rng = Rng(cfg.seed).substream("interleaving");
  return gen_interleaving(cfg, rng);
}

Morphism gen_submodule_inclusion(const GridModule& module, Rng& rng) {
  if (module.left_open()) throw DomainError("random submodules are generated for closed-open layouts only");
  const auto& g = module.grid();
  const std::uint32_t p = module.characteristic();
  // generators[i] holds the chosen elements of the cell i space
  std::vector<std::vector<Matrix>> generators(module.cell_count());
  std::vector<Interval> rays;
  for (std::size_t i = 0; i < module.cell_count(); ++i) {
    if (module.dims()[i] == 0) continue;
    const auto k = rng.between(0, 2);
    for (std::int64_t n = 0; n < k; ++n) {
      generators[i].push_back(random_matrix(module.dims()[i], 1, p, rng));
      rays.push_back(Interval::closed_ray(g[i]));
    }
  }
  const Barcode free_bars(rays);
  const GridModule free_module = module_from_barcode(free_bars, g, p, false);
  std::vector<Matrix> mats;
  for (std::size_t c = 0; c < g.size(); ++c) {
    const auto active = bars_at(free_bars, g[c]);
    Matrix mat(module.dims()[c], active.size(), p);
    for (std::size_t col = 0; col < active.size(); ++col) {
      const BarRef& bar = free_bars.elements()[active[col]];
      const std::size_t start = *g.index_of(bar.interval.birth().value());
      const Matrix image = module.cell_transition(start, c) * generators[start][bar.copy - 1];
      for (std::size_t r = 0; r < image.rows(); ++r) mat(r, col) = image(r, 0);
    }
    mats.push_back(std::move(mat));
  }
  return factorize(Morphism(free_module, module, std::move(mats))).mono_part;
}

Morphism gen_quotient_projection(const GridModule& module, Rng& rng) {
  return cokernel_of(gen_submodule_inclusion(module, rng)).structural_map;
}

}  // namespace indmatch
