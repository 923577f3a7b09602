#pragma once

#include "indmatch/grid_module.hpp"

#include <tuple>

namespace indmatch {

/// A natural transformation between two modules on the same grid and cell layout.
/// mats[i] : source cell i -> target cell i.
class Morphism {
 public:
  /// Throws ValidationError naming the first bad matrix or non-commuting square.
  Morphism(GridModule source, GridModule target, std::vector<Matrix> mats);

  static Morphism identity(const GridModule& module);
  /// Zero morphism; the modules are refined to a common grid first.
  static Morphism zero(const GridModule& source, const GridModule& target);

  const GridModule& source() const noexcept { return source_; }
  const GridModule& target() const noexcept { return target_; }
  const std::vector<Matrix>& mats() const noexcept { return mats_; }
  const Grid& grid() const noexcept { return source_.grid(); }
  std::uint32_t characteristic() const noexcept { return source_.characteristic(); }

  bool is_zero() const;
  bool is_mono() const;
  bool is_epi() const;
  bool is_iso() const { return is_mono() && is_epi(); }

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  GridModule source_;
  GridModule target_;
  std::vector<Matrix> mats_;
};

std::optional<ValidationError> morphism_validate(const GridModule& source, const GridModule& target,
                                                 const std::vector<Matrix>& mats);

/// g after f. The intermediate modules must agree after refinement.
Morphism morphism_compose(const Morphism& f, const Morphism& g);

/// f* : N* -> M*.
Morphism morphism_dual(const Morphism& f);

Morphism morphism_direct_sum(const Morphism& f, const Morphism& g);

/// f(delta) : M(delta) -> N(delta).
Morphism morphism_shift(const Morphism& f, const Rational& delta);

Morphism morphism_refine(const Morphism& f, const Grid& finer);

/// Both morphisms refined to the union of their grids.
std::pair<Morphism, Morphism> align(const Morphism& f, const Morphism& g);

bool equal_after_refinement(const Morphism& f, const Morphism& g);

struct Factorization {
  GridModule image;
  Morphism epi_part;   ///< M ->> im f
  Morphism mono_part;  ///< im f >-> N
};

Factorization factorize(const Morphism& f);

struct SubquotientResult {
  GridModule module;
  /// Inclusion ker f >-> M, or projection N ->> coker f.
  Morphism structural_map;
};

SubquotientResult kernel_of(const Morphism& f);
SubquotientResult cokernel_of(const Morphism& f);

/// phi_M^delta : M -> M(delta), on the union of the grid and its shift.
Morphism transition_endomorphism(const GridModule& module, const Rational& delta);

/// Coefficient attached to a pair of bars (source bar, target bar).
using BarCoefficient = std::tuple<BarRef, BarRef, std::uint32_t>;

/// Morphism between direct sums of interval modules, written in interval bases:
/// the entry for (I, J) at a cell is the coefficient when both bars contain the
/// cell's representative point. Each pair must admit a nonzero morphism
/// C(I) -> C(J), otherwise DomainError. Modules are built with module_from_barcode.
Morphism morphism_from_bar_pairs(const Barcode& source, const Barcode& target, const Grid& grid,
                                 std::uint32_t p, const std::vector<BarCoefficient>& coefficients,
                                 std::optional<bool> left_open = std::nullopt);

/// Whether C(I) -> C(J) has a nonzero morphism: J starts no later than I,
/// J ends no later than I, and they overlap.
bool interval_hom_nonzero(const Interval& from, const Interval& to);

}  // namespace indmatch
