#include "doctest.h"
#include "helpers.hpp"

#include "indmatch/generator.hpp"
#include "indmatch/morphism.hpp"

using namespace testing;

TEST_CASE("module validation") {
  const Grid g2 = grid({0, 1});
  CHECK_FALSE(module_validate(g2, {1, 1}, {mat({{1}})}, 2).has_value());
  const auto bad = module_validate(g2, {1, 2}, {mat({{1}})}, 2);
  REQUIRE(bad.has_value());
  CHECK(bad->index() == 0);
  CHECK_FALSE(module_validate(g2, {0, 0}, {Matrix(0, 0, 2)}, 2).has_value());
  CHECK_THROWS_AS(GridModule(g2, {1, 2}, {mat({{1}})}, 2), ValidationError);
  CHECK_THROWS_AS(Grid({Rational(1), Rational(1)}), ValidationError);
}

TEST_CASE("barcode extraction") {
  const Grid g = grid({0, 1, 2});
  const GridModule dies(g, {1, 1, 0}, {mat({{1}}), Matrix(0, 1, 2)}, 2);
  CHECK(module_barcode(dies) == bars("[0,2)"));

  const GridModule two(g, {1, 2, 1}, {mat({{1}, {0}}), mat({{0, 1}})}, 2);
  CHECK(module_barcode(two) == bars("[0,2); [1,inf)"));
  CHECK(module_barcode(GridModule::zero(g, 3)).empty());
}

TEST_CASE("construction from a barcode") {
  const Grid g = grid({0, 1, 2});
  const GridModule m = module_from_barcode(bars("[0,2)"), g, 2);
  CHECK(m.dims() == std::vector<std::size_t>{1, 1, 0});
  CHECK(m.maps()[0] == mat({{1}}));
  CHECK(m.maps()[1] == Matrix(0, 1, 2));
  CHECK(module_from_barcode(Barcode{}, g, 2) == GridModule::zero(g, 2));
  CHECK(module_from_barcode(bars("[0,inf) x2"), grid({0}), 2).dims() == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(module_from_barcode(bars("[0,3/2)"), g, 2), DomainError);
  CHECK_THROWS_AS(module_from_barcode(bars("[0,2]"), g, 2), DomainError);
  CHECK_THROWS_AS(module_from_barcode(bars("[0,1); (0,1]"), g, 2), DomainError);
}

TEST_CASE("shift, direct sum, refinement") {
  const GridModule m = module_from_barcode(bars("[0,2)"), grid({0, 1, 2}), 2);
  const GridModule s = module_shift(m, 1);
  CHECK(s.grid() == grid({-1, 0, 1}));
  CHECK(module_barcode(s) == bars("[-1,1)"));
  CHECK(module_shift(m, 0) == m);

  const auto a = module_from_barcode(bars("[0,1)"), grid({0, 1}), 2);
  CHECK(module_barcode(module_direct_sum(a, a)) == bars("[0,1) x2"));
  const auto b = module_from_barcode(bars("[1,2)"), grid({1, 2}), 2);
  const auto c = module_from_barcode(bars("[0,2)"), grid({0, 2}), 2);
  CHECK(module_barcode(module_direct_sum(b, c)) == bars("[1,2); [0,2)"));
  CHECK(equal_after_refinement(module_direct_sum(c, GridModule::zero(grid({5}), 2)), c));

  const GridModule fine = module_refine(c, grid({-1, 0, 1, 2, 3}));
  CHECK(fine.dims() == std::vector<std::size_t>{0, 1, 1, 0, 0});
  CHECK(module_barcode(fine) == module_barcode(c));
  CHECK_THROWS_AS(module_refine(c, grid({0, 1})), DomainError);
}

TEST_CASE("duals") {
  const GridModule m = module_from_barcode(bars("[0,2)"), grid({0, 2}), 2);
  const GridModule d = module_dual(m);
  CHECK(d.left_open());
  CHECK(module_barcode(d) == bars("(-2,0]"));
  CHECK(module_dual(d) == m);
  CHECK(module_barcode(module_dual(GridModule::zero(grid({0, 1}), 2))).empty());
  const GridModule two(grid({0, 1, 2}), {1, 2, 1}, {mat({{1}, {0}}), mat({{0, 1}})}, 2);
  CHECK(module_barcode(module_dual(two)) == barcode_dual(module_barcode(two)));
  // open-closed bars are realizable in the dual layout
  const GridModule rays = module_from_barcode(bars("(-inf,0]; (-1,1]"), grid({-1, 0, 1}), 3);
  CHECK(rays.left_open());
  CHECK(module_barcode(rays) == bars("(-inf,0]; (-1,1]"));
  CHECK(rays.dim_at(5) == 0);
  CHECK(rays.dim_at(-7) == 1);
}

TEST_CASE("trivially bounded modules") {
  const auto one = module_from_barcode(bars("[0,1)"), grid({0, 1}), 2);
  CHECK(min_trivial_eps(one) == TrivialityBound{Rational(1), false});
  CHECK(min_trivial_eps(GridModule::zero(grid({0}), 2)) == TrivialityBound{Rational(0), false});
  CHECK(min_trivial_eps(module_from_barcode(bars("[0,inf)"), grid({0}), 2)).is_infinite());
  const auto closed = min_trivial_eps(bars("[0,1]"));
  CHECK(closed.open);
  CHECK_FALSE(closed.allows(1));
  CHECK(closed.allows(Rational(101, 100)));
  CHECK(min_trivial_eps(bars("(0,1]")) == TrivialityBound{Rational(1), false});
}

TEST_CASE("transition morphisms") {
  const auto m = module_from_barcode(bars("[0,3)"), grid({0, 3}), 2);
  CHECK(transition_endomorphism(m, 0) == Morphism::identity(m));
  const Morphism one = transition_endomorphism(m, 1);
  CHECK(one.target().grid() == one.source().grid());
  std::size_t nonzero = 0;
  for (const auto& x : one.mats()) nonzero += rank(x);
  CHECK(nonzero == 1);  // only on [0,2), where t+1 is still inside
  CHECK(module_barcode(factorize(one).image) == bars("[0,2)"));
  const auto short_bar = module_from_barcode(bars("[0,1)"), grid({0, 1}), 2);
  CHECK(transition_endomorphism(short_bar, 2).is_zero());
  CHECK_THROWS_AS(transition_endomorphism(m, -1), DomainError);
}

TEST_CASE("random barcode round trips") {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    GenConfig cfg;
    cfg.field_char = p;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng = Rng(seed).substream(p);
      const GeneratedModule gm = gen_module(cfg, rng);
      CHECK(module_barcode(gm.module) == gm.barcode);
      // bars over each grid point add up to the dimension
      for (std::size_t c = 0; c < gm.module.cell_count(); ++c) {
        CHECK(bars_at(gm.barcode, gm.module.grid()[c]).size() == gm.module.dims()[c]);
      }
      const Rational delta(static_cast<std::int64_t>(seed % 5), 2);
      CHECK(module_barcode(module_shift(gm.module, delta)) == barcode_shift(gm.barcode, delta));
      CHECK(module_barcode(module_dual(gm.module)) == barcode_dual(gm.barcode));
      const auto bound = min_trivial_eps(gm.module);
      if (!bound.is_infinite()) {
        CHECK(eps_trivial_check(gm.module, *bound.value));
        if (*bound.value > 0) CHECK_FALSE(eps_trivial_check(gm.module, *bound.value - Rational(1, 4)));
      }
    }
  }
}
