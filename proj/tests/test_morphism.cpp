#include "doctest.h"
#include "helpers.hpp"

#include "indmatch/generator.hpp"
#include "indmatch/morphism.hpp"

using namespace testing;

namespace {

// The summand C[1,2) of M goes into C[0,2) of N; C[1,3) goes to zero.
Morphism example_morphism() {
  const Barcode m = bars("[1,2); [1,3)");
  const Barcode n = bars("[0,2); [3,4)");
  return morphism_from_bar_pairs(m, n, grid({0, 1, 2, 3, 4}), 2, {{bar("[1,2)"), bar("[0,2)"), 1}});
}

Morphism random_morphism(std::uint64_t seed, std::uint32_t p = 2) {
  GenConfig cfg;
  cfg.field_char = p;
  Rng rng(seed);
  Rng a = rng.substream("source"), b = rng.substream("target"), c = rng.substream("maps");
  return gen_morphism(gen_module(cfg, a), gen_module(cfg, b), cfg, c);
}

}  // namespace

TEST_CASE("validation reports the failing square") {
  const GridModule m = module_from_barcode(bars("[0,inf)"), grid({0, 1, 2}), 2);
  CHECK_FALSE(morphism_validate(m, m, Morphism::identity(m).mats()).has_value());
  CHECK(Morphism::zero(m, m).is_zero());
  const auto bad = morphism_validate(m, m, {mat({{1}}), mat({{1}}), mat({{0}})});
  REQUIRE(bad.has_value());
  CHECK(bad->index() == 1);
  CHECK_THROWS_AS(Morphism(m, m, {mat({{1}})}), ValidationError);
}

TEST_CASE("composition") {
  const Morphism f = example_morphism();
  CHECK(morphism_compose(f, Morphism::identity(f.target())) == f);
  CHECK(morphism_compose(Morphism::zero(f.source(), f.source()), f).is_zero());
  CHECK_THROWS_AS(morphism_compose(f, f), DomainError);

  const Grid g = grid({0, 1, 2, 3, 4});
  const Morphism into_m = morphism_from_bar_pairs(bars("[3,inf); [4,inf)"), bars("[2,inf); [1,inf)"), g, 2,
                                                  {{bar("[3,inf)"), bar("[2,inf)"), 1}});
  const Morphism onto_n =
      morphism_from_bar_pairs(bars("[2,inf); [1,inf)"), bars("[0,inf)"), g, 2, {{bar("[1,inf)"), bar("[0,inf)"), 1}});
  CHECK(morphism_compose(into_m, onto_n).is_zero());
}

TEST_CASE("image factorization of the example") {
  const Morphism f = example_morphism();
  const Factorization factors = factorize(f);
  CHECK(module_barcode(factors.image) == bars("[1,2)"));
  CHECK(morphism_compose(factors.epi_part, factors.mono_part) == f);
  CHECK(factors.epi_part.is_epi());
  CHECK(factors.mono_part.is_mono());

  const Morphism id = Morphism::identity(f.source());
  const Factorization same = factorize(id);
  CHECK(same.image == f.source());
  CHECK(same.epi_part == id);
  CHECK(same.mono_part == id);
  CHECK(module_barcode(factorize(Morphism::zero(f.source(), f.target())).image).empty());
}

TEST_CASE("kernels and cokernels") {
  const GridModule m = module_from_barcode(bars("[0,2)"), grid({-1, 0, 1, 2}), 2);
  CHECK(module_barcode(kernel_of(Morphism::identity(m)).module).empty());
  CHECK(module_barcode(cokernel_of(Morphism::identity(m)).module).empty());
  const SubquotientResult all = kernel_of(Morphism::zero(m, m));
  CHECK(all.module == m);
  CHECK(all.structural_map == Morphism::identity(m));
  CHECK(cokernel_of(Morphism::zero(m, m)).module == m);

  // C[0,2) -> C[-1,1), generator to generator
  const Morphism f = morphism_from_bar_pairs(bars("[0,2)"), bars("[-1,1)"), grid({-1, 0, 1, 2}), 2,
                                             {{bar("[0,2)"), bar("[-1,1)"), 1}});
  const SubquotientResult ker = kernel_of(f);
  const SubquotientResult coker = cokernel_of(f);
  CHECK(module_barcode(ker.module) == bars("[1,2)"));
  CHECK(module_barcode(coker.module) == bars("[-1,0)"));
  CHECK(ker.structural_map.is_mono());
  CHECK(coker.structural_map.is_epi());
  CHECK(morphism_compose(ker.structural_map, f).is_zero());
  CHECK(morphism_compose(f, coker.structural_map).is_zero());
}

TEST_CASE("interval morphisms need the right overlap pattern") {
  CHECK(interval_hom_nonzero(iv("[1,3)"), iv("[0,2)")));
  CHECK_FALSE(interval_hom_nonzero(iv("[0,2)"), iv("[1,3)")));
  CHECK_FALSE(interval_hom_nonzero(iv("[2,3)"), iv("[0,2)")));
  CHECK_THROWS_AS(morphism_from_bar_pairs(bars("[0,1)"), bars("[1,2)"), grid({0, 1, 2}), 2,
                                          {{bar("[0,1)"), bar("[1,2)"), 1}}),
                  DomainError);
}

TEST_CASE("duals and direct sums") {
  const Morphism f = example_morphism();
  CHECK(morphism_dual(morphism_dual(f)) == f);
  CHECK(morphism_dual(Morphism::identity(f.source())) == Morphism::identity(module_dual(f.source())));
  CHECK(morphism_dual(Morphism::zero(f.source(), f.target())).is_zero());

  const Morphism id = Morphism::identity(module_from_barcode(bars("[1,2)"), grid({1, 2}), 2));
  const Morphism into_q = Morphism::zero(GridModule::zero(grid({0}), 2),
                                         module_from_barcode(bars("[0,2)"), grid({0, 2}), 2));
  const Morphism sum = morphism_direct_sum(id, into_q);
  CHECK(sum.is_mono());
  CHECK(module_barcode(sum.target()) == bars("[1,2); [0,2)"));
  CHECK(morphism_direct_sum(id, id) == Morphism::identity(module_direct_sum(id.source(), id.source())));
}

TEST_CASE("random morphisms: rank-nullity, factorization, duality") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::uint32_t p = seed % 3 == 0 ? 3 : 2;
    const Morphism f = random_morphism(seed, p);
    const Factorization factors = factorize(f);
    const SubquotientResult ker = kernel_of(f);
    const SubquotientResult coker = cokernel_of(f);
    for (std::size_t c = 0; c < f.mats().size(); ++c) {
      CHECK(ker.module.dims()[c] + factors.image.dims()[c] == f.source().dims()[c]);
      CHECK(factors.image.dims()[c] + coker.module.dims()[c] == f.target().dims()[c]);
    }
    CHECK(morphism_compose(factors.epi_part, factors.mono_part) == f);
    CHECK(morphism_compose(ker.structural_map, f).is_zero());
    CHECK(morphism_compose(f, coker.structural_map).is_zero());

    const Morphism dual = morphism_dual(f);
    CHECK(morphism_dual(dual) == f);
    CHECK(min_trivial_eps(ker.module) == min_trivial_eps(cokernel_of(dual).module));
    CHECK(module_barcode(kernel_of(dual).module) == barcode_dual(module_barcode(coker.module)));

    const Morphism g = random_morphism(seed + 1000, p);
    if (equal_after_refinement(f.target(), g.source())) {
      CHECK(morphism_dual(morphism_compose(f, g)) == morphism_compose(morphism_dual(g), morphism_dual(f)));
    }
    const Morphism endo = morphism_compose(f, Morphism::identity(f.target()));
    CHECK(morphism_dual(endo) == morphism_compose(Morphism::identity(module_dual(f.target())), dual));
  }
}
