#pragma once

#include "indmatch/barcode.hpp"
#include "indmatch/error.hpp"
#include "indmatch/matrix.hpp"
#include "indmatch/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace indmatch {

/// Strictly increasing, nonempty list of grid values.
class Grid {
 public:
  explicit Grid(std::vector<Rational> values);

  const std::vector<Rational>& values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const Rational& operator[](std::size_t i) const { return values_[i]; }
  const Rational& front() const { return values_.front(); }
  const Rational& back() const { return values_.back(); }

  bool contains(const Rational& t) const;
  std::optional<std::size_t> index_of(const Rational& t) const;
  /// values - delta
  Grid shifted(const Rational& delta) const;
  /// {-t}, reversed.
  Grid negated() const;
  bool is_refined_by(const Grid& finer) const;

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  std::vector<Rational> values_;
};

Grid grid_union(const Grid& a, const Grid& b);
Grid grid_union(const Grid& a, const std::vector<Rational>& extra);

/// A pointwise finite dimensional persistence module that is constant on the
/// cells of a finite grid t_0 < ... < t_{n-1}.
///
/// Closed-open layout (default): cell i is [t_i, t_{i+1}), the last cell is
/// [t_{n-1}, inf), and the module is zero before t_0. Bars look like [x,y) or [x,inf).
///
/// Open-closed layout (`left_open`, produced by dualizing): cell i is
/// (t_{i-1}, t_i], the first cell is (-inf, t_0], and the module is zero after
/// t_{n-1}. Bars look like (x,y] or (-inf,y].
///
/// maps[i] : cell i -> cell i+1 has dims[i+1] rows and dims[i] columns.
class GridModule {
 public:
  /// Throws ValidationError (with the offending map index) on shape mismatch.
  GridModule(Grid grid, std::vector<std::size_t> dims, std::vector<Matrix> maps, std::uint32_t p,
             bool left_open = false);

  static GridModule zero(Grid grid, std::uint32_t p, bool left_open = false);

  const Grid& grid() const noexcept { return grid_; }
  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  const std::vector<Matrix>& maps() const noexcept { return maps_; }
  std::uint32_t characteristic() const noexcept { return p_; }
  bool left_open() const noexcept { return left_open_; }
  std::size_t cell_count() const noexcept { return dims_.size(); }
  std::size_t total_dimension() const;

  /// The grid value lying in cell i (its closed end).
  const Rational& representative(std::size_t cell) const { return grid_[cell]; }
  /// Cell containing t, or nullopt where the module vanishes.
  std::optional<std::size_t> cell_of(const Rational& t) const;
  std::size_t dim_at(const Rational& t) const;
  /// Composite of maps from cell `from` to cell `to`, from <= to.
  Matrix cell_transition(std::size_t from, std::size_t to) const;
  /// The transition map M_s -> M_t for s <= t.
  Matrix transition(const Rational& s, const Rational& t) const;

  friend bool operator==(const GridModule&, const GridModule&) = default;

 private:
  Grid grid_;
  std::vector<std::size_t> dims_;
  std::vector<Matrix> maps_;
  std::uint32_t p_;
  bool left_open_;
};

/// Shape check without constructing. Returns the first problem found.
std::optional<ValidationError> module_validate(const Grid& grid, const std::vector<std::size_t>& dims,
                                               const std::vector<Matrix>& maps, std::uint32_t p);

/// Barcode by inclusion-exclusion on the ranks of cell-to-cell transitions.
Barcode module_barcode(const GridModule& module);

/// Indices into `barcode.elements()` of the bars containing t, in order.
std::vector<std::size_t> bars_at(const Barcode& barcode, const Rational& t);

/// Whether every bar of `barcode` is a union of cells of `grid` in the given layout.
bool is_realizable(const Barcode& barcode, const Grid& grid, bool left_open);

/// Direct sum of interval modules. The layout is inferred from the bars when
/// `left_open` is not given (closed-open for an empty barcode). Throws
/// DomainError if a bar does not fit the grid.
GridModule module_from_barcode(const Barcode& barcode, const Grid& grid, std::uint32_t p,
                               std::optional<bool> left_open = std::nullopt);

/// M(delta): grid values decreased by delta.
GridModule module_shift(const GridModule& module, const Rational& delta);

/// Same module on a finer grid; identity maps inside old cells.
GridModule module_refine(const GridModule& module, const Grid& finer);

GridModule module_direct_sum(const GridModule& a, const GridModule& b);

/// Pointwise dual on the negated grid, with the opposite cell layout.
GridModule module_dual(const GridModule& module);

/// Both modules refined to their common grid. Throws DomainError on layout or field mismatch.
std::pair<GridModule, GridModule> align(const GridModule& a, const GridModule& b);

bool equal_after_refinement(const GridModule& a, const GridModule& b);

/// The least eps with the eps-transition morphism zero, as an infimum.
struct TrivialityBound {
  std::optional<Rational> value;  ///< nullopt: no finite eps works
  bool open = false;              ///< infimum not attained

  bool is_infinite() const noexcept { return !value.has_value(); }
  /// Whether a module with this bound is eps-trivial.
  bool allows(const Rational& eps) const;
  std::string to_string() const;

  friend bool operator==(const TrivialityBound&, const TrivialityBound&) = default;
};

TrivialityBound min_trivial_eps(const Barcode& barcode);
TrivialityBound min_trivial_eps(const GridModule& module);

}  // namespace indmatch
