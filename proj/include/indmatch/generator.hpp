#pragma once

#include "indmatch/morphism.hpp"
#include "indmatch/stability.hpp"

#include <cstdint>
#include <string_view>

namespace indmatch {

/// Counter-based SplitMix64 stream. Sub-streams are keyed by a tag, so the draws
/// of one sub-stream do not depend on how many draws another one made.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : key_(mix(seed)) {}

  Rng substream(std::string_view tag) const;
  Rng substream(std::uint64_t index) const;

  std::uint64_t next();
  /// Uniform in [0, n), n > 0. Rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

  static std::uint64_t mix(std::uint64_t x);

 private:
  Rng(std::uint64_t key, int) : key_(key) {}
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t fnv1a(std::string_view text);

struct GenConfig {
  std::uint64_t seed = 0;
  std::size_t max_grid_points = 6;
  std::size_t max_dim = 4;
  std::uint32_t field_char = 2;
  std::size_t max_multiplicity = 2;
  Rational delta_min{0};
  Rational delta_max{2};

  /// Throws ValidationError on a non-prime field or inverted delta range.
  void validate() const;
};

/// Cellwise change of basis: mats[c] takes interval coordinates to module coordinates.
struct CellBasis {
  Grid grid;
  bool left_open = false;
  std::uint32_t p = 2;
  std::vector<Matrix> mats;

  /// The matrix on the cell containing t; empty where the basis has no cell.
  Matrix at(const Rational& t) const;
};

/// The module with maps B(t') A B(t)^-1, where B is read at points shifted by `offset`.
GridModule change_basis(const GridModule& module, const CellBasis& basis, const Rational& offset = 0);
Morphism change_basis(const Morphism& f, const CellBasis& source_basis, const CellBasis& target_basis,
                      const Rational& source_offset = 0, const Rational& target_offset = 0);

Matrix random_invertible(std::size_t n, std::uint32_t p, Rng& rng);
Matrix random_matrix(std::size_t rows, std::size_t cols, std::uint32_t p, Rng& rng);
CellBasis random_basis(const GridModule& module, Rng& rng);

Grid gen_grid(const GenConfig& cfg, Rng& rng);
/// Closed-open bars on `grid`, at most cfg.max_dim of them over any point.
Barcode gen_barcode(const Grid& grid, const GenConfig& cfg, Rng& rng);

struct GeneratedModule {
  GridModule module;
  Barcode barcode;
  /// Basis in which `module` is a direct sum of interval modules.
  CellBasis basis;
};

GeneratedModule gen_module(const GenConfig& cfg, Rng& rng);
GeneratedModule gen_module(const GenConfig& cfg);
/// A module with a prescribed barcode, in a random basis.
GeneratedModule gen_module_with_barcode(const Barcode& barcode, const Grid& grid, std::uint32_t p, Rng& rng);

/// Random scalar for every pair of bars admitting a nonzero morphism, expressed in
/// the module bases. `force_identity` puts 1 on matching pairs of equal bars and 0 elsewhere.
Morphism gen_morphism(const GeneratedModule& source, const GeneratedModule& target, const GenConfig& cfg, Rng& rng,
                      bool force_identity = false);

struct GeneratedInterleaving {
  InterleavingPair pair;
  Matching matching;  ///< the delta-matching the pair was built from
};

/// A random barcode, a perturbation of it within delta and the interleaving of the
/// matched interval modules, both sides in random bases.
GeneratedInterleaving gen_interleaving(const GenConfig& cfg, Rng& rng);
GeneratedInterleaving gen_interleaving(const GenConfig& cfg);

/// Inclusion of the submodule generated by a few random elements.
Morphism gen_submodule_inclusion(const GridModule& module, Rng& rng);
/// Projection onto the quotient by a random submodule.
Morphism gen_quotient_projection(const GridModule& module, Rng& rng);

Rational gen_delta(const GenConfig& cfg, Rng& rng);

}  // namespace indmatch
