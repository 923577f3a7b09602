#include "indmatch/morphism.hpp"

#include <algorithm>
#include <map>

namespace indmatch {

std::optional<ValidationError> morphism_validate(const GridModule& source, const GridModule& target,
                                                 const std::vector<Matrix>& mats) {
  if (source.grid() != target.grid()) return ValidationError("source and target grids differ");
  if (source.left_open() != target.left_open()) return ValidationError("source and target cell layouts differ");
  if (source.characteristic() != target.characteristic()) return ValidationError("source and target fields differ");
  if (mats.size() != source.cell_count()) {
    return ValidationError("expected " + std::to_string(source.cell_count()) + " matrices, got " +
                           std::to_string(mats.size()));
  }
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != target.dims()[i] || mats[i].cols() != source.dims()[i] ||
        mats[i].characteristic() != source.characteristic()) {
      return ValidationError("matrix " + std::to_string(i) + " is " + std::to_string(mats[i].rows()) + "x" +
                                 std::to_string(mats[i].cols()) + ", expected " +
                                 std::to_string(target.dims()[i]) + "x" + std::to_string(source.dims()[i]),
                             i);
    }
  }
  for (std::size_t i = 0; i + 1 < mats.size(); ++i) {
    if (target.maps()[i] * mats[i] != mats[i + 1] * source.maps()[i]) {
      return ValidationError("square " + std::to_string(i) + " does not commute", i);
    }
  }
  return std::nullopt;
}

Morphism::Morphism(GridModule source, GridModule target, std::vector<Matrix> mats)
    : source_(std::move(source)), target_(std::move(target)), mats_(std::move(mats)) {
  if (auto problem = morphism_validate(source_, target_, mats_)) throw *problem;
}

Morphism Morphism::identity(const GridModule& module) {
  std::vector<Matrix> mats;
  for (auto d : module.dims()) mats.push_back(Matrix::identity(d, module.characteristic()));
  return Morphism(module, module, std::move(mats));
}

Morphism Morphism::zero(const GridModule& source, const GridModule& target) {
  auto [s, t] = align(source, target);
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < s.cell_count(); ++i) {
    mats.emplace_back(t.dims()[i], s.dims()[i], s.characteristic());
  }
  return Morphism(std::move(s), std::move(t), std::move(mats));
}

bool Morphism::is_zero() const {
  return std::all_of(mats_.begin(), mats_.end(), [](const Matrix& m) { return m.is_zero(); });
}

bool Morphism::is_mono() const {
  return std::all_of(mats_.begin(), mats_.end(), [](const Matrix& m) { return rank(m) == m.cols(); });
}

bool Morphism::is_epi() const {
  return std::all_of(mats_.begin(), mats_.end(), [](const Matrix& m) { return rank(m) == m.rows(); });
}

Morphism morphism_refine(const Morphism& f, const Grid& finer) {
  if (finer == f.grid()) return f;
  GridModule source = module_refine(f.source(), finer);
  GridModule target = module_refine(f.target(), finer);
  std::vector<Matrix> mats;
  for (std::size_t c = 0; c < finer.size(); ++c) {
    const auto old = f.source().cell_of(finer[c]);
    if (old) {
      mats.push_back(f.mats()[*old]);
    } else {
      mats.emplace_back(target.dims()[c], source.dims()[c], f.characteristic());
    }
  }
  return Morphism(std::move(source), std::move(target), std::move(mats));
}

std::pair<Morphism, Morphism> align(const Morphism& f, const Morphism& g) {
  if (f.characteristic() != g.characteristic()) throw DomainError("morphisms are over different fields");
  if (f.source().left_open() != g.source().left_open()) throw DomainError("morphisms have different cell layouts");
  const Grid common = grid_union(f.grid(), g.grid());
  return {morphism_refine(f, common), morphism_refine(g, common)};
}

bool equal_after_refinement(const Morphism& f, const Morphism& g) {
  if (f.characteristic() != g.characteristic() || f.source().left_open() != g.source().left_open()) return false;
  const auto [a, b] = align(f, g);
  return a == b;
}

Morphism morphism_compose(const Morphism& f, const Morphism& g) {
  const auto [a, b] = align(f, g);
  if (a.target() != b.source()) throw DomainError("cannot compose: target of f differs from source of g");
  std::vector<Matrix> mats;
  for (std::size_t c = 0; c < a.mats().size(); ++c) mats.push_back(b.mats()[c] * a.mats()[c]);
  return Morphism(a.source(), b.target(), std::move(mats));
}

Morphism morphism_dual(const Morphism& f) {
  std::vector<Matrix> mats;
  for (auto it = f.mats().rbegin(); it != f.mats().rend(); ++it) mats.push_back(it->transpose());
  return Morphism(module_dual(f.target()), module_dual(f.source()), std::move(mats));
}

Morphism morphism_direct_sum(const Morphism& f, const Morphism& g) {
  const auto [a, b] = align(f, g);
  std::vector<Matrix> mats;
  for (std::size_t c = 0; c < a.mats().size(); ++c) mats.push_back(block_diagonal(a.mats()[c], b.mats()[c]));
  return Morphism(module_direct_sum(a.source(), b.source()), module_direct_sum(a.target(), b.target()),
                  std::move(mats));
}

Morphism morphism_shift(const Morphism& f, const Rational& delta) {
  return Morphism(module_shift(f.source(), delta), module_shift(f.target(), delta), f.mats());
}

namespace {

Matrix induced_map(const Matrix& new_basis, const Matrix& image_of_old_basis) {
  auto x = solve_factor(new_basis, image_of_old_basis);
  if (!x) throw DomainError("induced structure map does not exist; the morphism does not commute");
  return *x;
}

}  // namespace

Factorization factorize(const Morphism& f) {
  const auto& m = f.source();
  const auto& n = f.target();
  const std::size_t cells = m.cell_count();
  const auto p = f.characteristic();
  std::vector<Matrix> bases;
  std::vector<std::size_t> dims;
  for (const auto& fi : f.mats()) {
    bases.push_back(image_basis(fi));
    dims.push_back(bases.back().cols());
  }
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c + 1 < cells; ++c) {
    maps.push_back(induced_map(bases[c + 1], n.maps()[c] * bases[c]));
  }
  GridModule image(m.grid(), dims, std::move(maps), p, m.left_open());
  std::vector<Matrix> q;
  for (std::size_t c = 0; c < cells; ++c) q.push_back(induced_map(bases[c], f.mats()[c]));
  return Factorization{image, Morphism(m, image, std::move(q)), Morphism(image, n, std::move(bases))};
}

SubquotientResult kernel_of(const Morphism& f) {
  const auto& m = f.source();
  const std::size_t cells = m.cell_count();
  std::vector<Matrix> bases;
  std::vector<std::size_t> dims;
  for (const auto& fi : f.mats()) {
    bases.push_back(kernel_basis(fi));
    dims.push_back(bases.back().cols());
  }
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c + 1 < cells; ++c) {
    maps.push_back(induced_map(bases[c + 1], m.maps()[c] * bases[c]));
  }
  GridModule kernel(m.grid(), dims, std::move(maps), m.characteristic(), m.left_open());
  return SubquotientResult{kernel, Morphism(kernel, m, std::move(bases))};
}

SubquotientResult cokernel_of(const Morphism& f) {
  const auto& n = f.target();
  const std::size_t cells = n.cell_count();
  const auto p = f.characteristic();
  std::vector<Matrix> complements;
  std::vector<Matrix> projections;
  std::vector<std::size_t> dims;
  for (const auto& fi : f.mats()) {
    const Matrix image = image_basis(fi);
    Matrix complement = complement_basis(image);
    const Matrix full = inverse(hstack(image, complement));
    projections.push_back(full.row_block(image.cols(), complement.cols()));
    dims.push_back(complement.cols());
    complements.push_back(std::move(complement));
  }
  std::vector<Matrix> maps;
  for (std::size_t c = 0; c + 1 < cells; ++c) {
    maps.push_back(projections[c + 1] * n.maps()[c] * complements[c]);
  }
  GridModule cokernel(n.grid(), dims, std::move(maps), p, n.left_open());
  return SubquotientResult{cokernel, Morphism(n, cokernel, std::move(projections))};
}

Morphism transition_endomorphism(const GridModule& module, const Rational& delta) {
  if (delta < 0) throw DomainError("transition morphism needs a nonnegative shift");
  const Grid grid = grid_union(module.grid(), module.grid().shifted(delta));
  GridModule source = module_refine(module, grid);
  GridModule target = module_refine(module_shift(module, delta), grid);
  std::vector<Matrix> mats;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const Rational& t = grid[c];
    mats.push_back(module.transition(t, t + delta));
  }
  return Morphism(std::move(source), std::move(target), std::move(mats));
}

bool interval_hom_nonzero(const Interval& from, const Interval& to) {
  return to.birth() <= from.birth() && to.death() <= from.death() && from.birth() < to.death();
}

Morphism morphism_from_bar_pairs(const Barcode& source, const Barcode& target, const Grid& grid,
                                 std::uint32_t p, const std::vector<BarCoefficient>& coefficients,
                                 std::optional<bool> left_open) {
  if (!left_open) {
    for (const auto* b : {&source, &target}) {
      if (!b->empty()) {
        const auto& first = b->elements().front().interval.birth();
        left_open = first.kind() == DecoratedEndpoint::Kind::neg_infinity || first.decoration() == Decoration::plus;
        break;
      }
    }
  }
  GridModule m = module_from_barcode(source, grid, p, left_open);
  GridModule n = module_from_barcode(target, grid, p, m.left_open());
  const PrimeField field(p);
  const auto index_in = [](const Barcode& b, const BarRef& bar) -> std::size_t {
    const auto& e = b.elements();
    const auto it = std::lower_bound(e.begin(), e.end(), bar);
    if (it == e.end() || *it != bar) throw DomainError("bar " + bar.to_string() + " is not in the barcode");
    return static_cast<std::size_t>(it - e.begin());
  };
  std::vector<std::tuple<std::size_t, std::size_t, std::uint32_t>> entries;
  for (const auto& [from, to, value] : coefficients) {
    if (!interval_hom_nonzero(from.interval, to.interval)) {
      throw DomainError("no nonzero morphism from " + from.interval.to_string() + " to " + to.interval.to_string());
    }
    entries.emplace_back(index_in(source, from), index_in(target, to), field.reduce(value));
  }
  std::vector<Matrix> mats;
  for (std::size_t c = 0; c < grid.size(); ++c) {
    const auto rows = bars_at(target, grid[c]);
    const auto cols = bars_at(source, grid[c]);
    Matrix mat(rows.size(), cols.size(), p);
    for (const auto& [i, j, value] : entries) {
      const auto col = std::lower_bound(cols.begin(), cols.end(), i);
      const auto row = std::lower_bound(rows.begin(), rows.end(), j);
      if (col == cols.end() || *col != i || row == rows.end() || *row != j) continue;
      auto& slot = mat(static_cast<std::size_t>(row - rows.begin()), static_cast<std::size_t>(col - cols.begin()));
      slot = field.add(slot, value);
    }
    mats.push_back(std::move(mat));
  }
  return Morphism(std::move(m), std::move(n), std::move(mats));
}

}  // namespace indmatch
