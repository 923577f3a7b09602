// Acceptance run: one PASS/FAIL line per criterion, with wall time.
// Usage: acceptance <path-to-indmatch-cli> <corpus-dir>

#include "indmatch/generator.hpp"
#include "indmatch/induced_matching.hpp"
#include "indmatch/io.hpp"
#include "indmatch/stability.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include <unistd.h>

using namespace indmatch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
};

Outcome failed(std::string detail) { return {false, std::move(detail)}; }

Matrix mx(const std::vector<std::vector<std::int64_t>>& rows, std::size_t cols, std::uint32_t p = 2) {
  return Matrix::from_rows(rows, cols, p);
}

Interval co(std::int64_t a, std::int64_t b) { return Interval::closed_open(a, b); }
Interval ray(std::int64_t a) { return Interval::closed_ray(a); }
BarRef one(const Interval& i) { return BarRef{i, 1}; }

// ---- criterion 1 ---------------------------------------------------------

Outcome worked_example() {
  // cells [0,1) [1,2) [2,3) [3,4) [4,inf); M = C[1,2) + C[1,3), N = C[0,2) + C[3,4)
  const Grid g({0, 1, 2, 3, 4});
  const GridModule m(g, {0, 2, 1, 0, 0}, {mx({{}, {}}, 0), mx({{0, 1}}, 2), mx({}, 1), mx({}, 0)}, 2);
  const GridModule n(g, {1, 1, 0, 1, 0}, {mx({{1}}, 1), mx({}, 1), mx({{}}, 0), mx({}, 1)}, 2);
  // C[1,2) injectively into C[0,2), C[1,3) to zero
  const Morphism f(m, n, {mx({{}}, 0), mx({{1, 0}}, 2), mx({}, 1), mx({{}}, 0), mx({}, 0)});
  const Barcode bm(std::vector<Interval>{co(1, 2), co(1, 3)});
  const Barcode bn(std::vector<Interval>{co(0, 2), co(3, 4)});
  const Matching expected(bm, bn, {{one(co(1, 3)), one(co(0, 2))}});
  const Matching got = induced_matching(f);
  if (got != expected) return failed("barc f = " + format_matching(got));
  if (image_barcode_of(got) != Barcode(std::vector<Interval>{co(1, 2)})) return failed("image barcode differs");
  if (module_barcode(factorize(f).image) != Barcode(std::vector<Interval>{co(1, 2)})) return failed("im f differs");
  return {true, "barc f = {([1,3),[0,2))}, image {[1,2)}"};
}

// ---- criterion 2 ---------------------------------------------------------

Outcome non_functoriality() {
  const Grid g({0, 1, 2, 3, 4});
  // L = C[3,inf) + C[4,inf), coordinates (s,t)
  const GridModule l(g, {0, 0, 0, 1, 2}, {mx({}, 0), mx({}, 0), mx({{}}, 0), mx({{1}, {0}}, 1)}, 2);
  // M = C[2,inf) + C[1,inf), coordinates (s,t)
  const GridModule m(g, {0, 1, 2, 2, 2}, {mx({{}}, 0), mx({{0}, {1}}, 1), mx({{1, 0}, {0, 1}}, 2),
                                          mx({{1, 0}, {0, 1}}, 2)}, 2);
  const GridModule n(g, {1, 1, 1, 1, 1}, {mx({{1}}, 1), mx({{1}}, 1), mx({{1}}, 1), mx({{1}}, 1)}, 2);
  // f(s,t) = (s,0), g(s,t) = t
  const Morphism f(l, m, {mx({}, 0), mx({{}}, 0), mx({{}, {}}, 0), mx({{1}, {0}}, 1), mx({{1, 0}, {0, 0}}, 2)});
  const Morphism h(m, n, {mx({{}}, 0), mx({{1}}, 1), mx({{0, 1}}, 2), mx({{0, 1}}, 2), mx({{0, 1}}, 2)});
  const Barcode bl(std::vector<Interval>{ray(3), ray(4)});
  const Barcode bm(std::vector<Interval>{ray(2), ray(1)});
  const Barcode bn(std::vector<Interval>{ray(0)});
  const Matching bf = induced_matching(f), bg = induced_matching(h);
  if (bf != Matching(bl, bm, {{one(ray(3)), one(ray(1))}})) return failed("barc f = " + format_matching(bf));
  if (bg != Matching(bm, bn, {{one(ray(1)), one(ray(0))}})) return failed("barc g = " + format_matching(bg));
  const Matching composed = matching_compose(bf, bg);
  if (composed != Matching(bl, bn, {{one(ray(3)), one(ray(0))}})) return failed("composite matching differs");
  const Morphism gf = morphism_compose(f, h);
  if (!gf.is_zero()) return failed("g o f is not zero");
  if (!induced_matching(gf).empty()) return failed("barc(g o f) is not empty");
  return {true, "four equalities hold"};
}

// ---- criterion 3 ---------------------------------------------------------

Outcome direct_sum() {
  const Grid g({0, 1, 2});
  const GridModule m(g, {0, 1, 0}, {mx({{}}, 0), mx({}, 1)}, 2);  // C[1,2)
  const GridModule zero(g, {0, 0, 0}, {mx({}, 0), mx({}, 0)}, 2);
  const GridModule q(g, {1, 1, 0}, {mx({{1}}, 1), mx({}, 1)}, 2);  // C[0,2)
  const Morphism f = Morphism::identity(m);
  const Morphism h(zero, q, {mx({{}}, 0), mx({{}}, 0), mx({}, 0)});
  const Matching sum = induced_matching(morphism_direct_sum(f, h));
  const Matching coproduct = matching_coproduct(induced_matching(f), induced_matching(h));
  const Barcode b12(std::vector<Interval>{co(1, 2)});
  const Barcode both(std::vector<Interval>{co(0, 2), co(1, 2)});
  if (sum != Matching(b12, both, {{one(co(1, 2)), one(co(0, 2))}})) return failed("barc(f+g) = " + format_matching(sum));
  if (coproduct != Matching(b12, both, {{one(co(1, 2)), one(co(1, 2))}})) {
    return failed("barc f u barc g = " + format_matching(coproduct));
  }
  return {true, "barc(f+g) = {([1,2),[0,2))} but barc f u barc g = {([1,2),[1,2))}"};
}

// ---- random instances shared by several criteria --------------------------

struct RandomMorphism {
  GeneratedModule source, target;
  Morphism f;
};

RandomMorphism random_morphism(std::uint64_t seed, std::string_view tag, std::uint32_t p = 2) {
  GenConfig cfg;
  cfg.seed = seed;
  cfg.field_char = p;
  Rng rng = Rng(seed).substream(tag);
  GeneratedModule a = gen_module(cfg, rng);
  GeneratedModule b = gen_module(cfg, rng);
  Morphism f = gen_morphism(a, b, cfg, rng);
  return {std::move(a), std::move(b), std::move(f)};
}

// ---- criterion 4 ---------------------------------------------------------

Outcome matching_theorem() {
  std::size_t nontrivial = 0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const Morphism f = random_morphism(seed, "theorem").f;
    if (f.grid().size() > 6) return failed("generator exceeded the grid bound");
    for (std::size_t d : f.source().dims()) {
      if (d > 4) return failed("generator exceeded the dimension bound");
    }
    const GridModule ker = kernel_of(f).module, coker = cokernel_of(f).module;
    const TrivialityBound ek = min_trivial_eps(ker), ec = min_trivial_eps(coker);
    // the bound really is attained and tight
    for (const auto* b : {&ek, &ec}) {
      const GridModule& k = b == &ek ? ker : coker;
      if (b->value && !b->open && !eps_trivial_check(k, *b->value)) return failed("min_trivial_eps is not trivial");
      if (b->value && *b->value > Rational(0) && eps_trivial_check(k, *b->value - Rational(1, 64)) &&
          !b->open) {
        return failed("min_trivial_eps is not minimal at seed " + std::to_string(seed));
      }
    }
    const Matching m = induced_matching(f);
    std::set<BarRef> dom, img;
    for (const auto& [x, y] : m.pairs()) {
      dom.insert(x);
      img.insert(y);
      const auto &b = x.interval.birth(), &d = x.interval.death();
      const auto &b2 = y.interval.birth(), &d2 = y.interval.death();
      if (!(b2 <= b && b < d2 && d2 <= d)) return failed("(i) at seed " + std::to_string(seed));
      if (ec.value && !(b <= b2 + *ec.value)) return failed("(ii) endpoint bound at seed " + std::to_string(seed));
      if (ek.value && !(d - *ek.value <= d2)) return failed("(iii) endpoint bound at seed " + std::to_string(seed));
    }
    if (ec.value) {
      for (const auto& bar : m.target().elements()) {
        if (is_persistent(bar.interval, *ec.value) && !img.count(bar)) {
          return failed("(ii) coverage at seed " + std::to_string(seed));
        }
      }
    }
    if (ek.value) {
      for (const auto& bar : m.source().elements()) {
        if (is_persistent(bar.interval, *ek.value) && !dom.count(bar)) {
          return failed("(iii) coverage at seed " + std::to_string(seed));
        }
      }
    }
    if (!m.empty()) ++nontrivial;
  }
  return {true, "1000 morphisms, " + std::to_string(nontrivial) + " with nonempty matchings"};
}

// ---- criterion 5 ---------------------------------------------------------

Outcome stability_suite() {
  std::size_t positive = 0;
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    Rng rng = Rng(seed).substream("acceptance-interleaving");
    const GeneratedInterleaving g = gen_interleaving(cfg, rng);
    const InterleavingPair& pair = g.pair;
    const std::string at = " at seed " + std::to_string(seed);
    if (!check_interleaving(pair).ok) return failed("generated pair is not an interleaving" + at);
    const Rational two = 2 * pair.delta;
    for (const Morphism* f : {&pair.fwd, &pair.bwd}) {
      for (const GridModule& k : {kernel_of(*f).module, cokernel_of(*f).module}) {
        if (!eps_trivial_check(k, two)) return failed("kernel or cokernel not 2 delta-trivial" + at);
        // independent check through the transition endomorphism
        if (!transition_endomorphism(k, two).is_zero()) return failed("2 delta transition not zero" + at);
      }
      if (!is_delta_matching(stability_matching(*f, pair.delta), pair.delta)) {
        return failed("stability matching is not a delta-matching" + at);
      }
    }
    const auto r = bottleneck_distance(module_barcode(pair.fwd.source()), module_barcode(pair.bwd.source()));
    if (!r.value || *r.value > pair.delta) return failed("bottleneck distance exceeds delta" + at);
    if (pair.delta > Rational(0)) ++positive;
  }
  return {true, "500 interleavings, " + std::to_string(positive) + " with delta > 0"};
}

// ---- criterion 6 ---------------------------------------------------------

// Is there a delta-matching? Depth-first over the bars of a, pruned by
// admissibility; every complete assignment is confirmed with is_delta_matching.
bool brute_force_matching(const Barcode& a, const Barcode& b, const Rational& delta) {
  const auto& xs = a.elements();
  const auto& ys = b.elements();
  const Rational two = 2 * delta;
  std::vector<int> used(ys.size(), 0);
  std::vector<BarPair> pairs;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == xs.size()) {
      for (std::size_t j = 0; j < ys.size(); ++j) {
        if (!used[j] && is_persistent(ys[j].interval, two)) return false;
      }
      return is_delta_matching(Matching(a, b, pairs), delta);
    }
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (used[j] || !delta_admissible(xs[i].interval, ys[j].interval, delta)) continue;
      used[j] = 1;
      pairs.emplace_back(xs[i], ys[j]);
      if (go(i + 1)) return true;
      pairs.pop_back();
      used[j] = 0;
    }
    return !is_persistent(xs[i].interval, two) && go(i + 1);
  };
  return go(0);
}

// Every difference of finite endpoint values and every half-length: a superset
// of the values where feasibility can change.
std::vector<Rational> all_candidates(const Barcode& a, const Barcode& b) {
  std::set<Rational> values, out{Rational(0)};
  for (const Barcode* c : {&a, &b}) {
    for (const auto& bar : c->elements()) {
      const auto& x = bar.interval.birth();
      const auto& y = bar.interval.death();
      if (x.is_finite()) values.insert(x.value());
      if (y.is_finite()) values.insert(y.value());
      if (x.is_finite() && y.is_finite()) out.insert((y.value() - x.value()) / 2);
    }
  }
  for (const auto& u : values) {
    for (const auto& v : values) {
      if (u < v) out.insert(v - u);
    }
  }
  return {out.begin(), out.end()};
}

struct Infimum {
  std::optional<Rational> value;
  bool attained = true;
};

Infimum brute_force_bottleneck(const Barcode& a, const Barcode& b) {
  const std::vector<Rational> c = all_candidates(a, b);
  std::vector<bool> feasible;
  for (const auto& d : c) feasible.push_back(brute_force_matching(a, b, d));
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i > 0 && brute_force_matching(a, b, (c[i - 1] + c[i]) / 2)) return {c[i - 1], false};
    if (feasible[i]) return {c[i], true};
  }
  if (brute_force_matching(a, b, c.back() + 1)) return {c.back(), false};
  return {std::nullopt, false};
}

Barcode random_closed_open(Rng& rng) {
  std::vector<Interval> bars;
  const auto count = rng.below(7);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::int64_t b = static_cast<std::int64_t>(rng.below(9)) - 2;
    if (rng.chance(1, 30)) {
      bars.push_back(Interval::closed_ray(Rational(b, 2)));
    } else {
      const std::int64_t len = 1 + static_cast<std::int64_t>(rng.below(8));
      bars.push_back(Interval::closed_open(Rational(b, 2), Rational(b + len, 2)));
    }
  }
  return Barcode(bars);
}

Barcode random_decorated(Rng& rng) {
  std::vector<Interval> bars;
  const auto count = rng.below(7);
  for (std::uint64_t i = 0; i < count; ++i) {
    const std::int64_t b = static_cast<std::int64_t>(rng.below(9)) - 2;
    const std::int64_t len = static_cast<std::int64_t>(rng.below(7));
    const Rational x(b, 2), y(b + len, 2);
    const auto kind = rng.below(60);
    if (kind == 59) {
      bars.push_back(Interval(DecoratedEndpoint::neg_infinity(),
                              rng.chance(1, 2) ? DecoratedEndpoint::pos_infinity() : DecoratedEndpoint::plus(y)));
    } else if (kind == 58) {
      bars.push_back(Interval(DecoratedEndpoint::plus(x), DecoratedEndpoint::pos_infinity()));
    } else if (len == 0 || kind % 4 == 3) {
      bars.push_back(Interval::closed(x, y));
    } else if (kind % 4 == 0) {
      bars.push_back(Interval::closed_open(x, y));
    } else if (kind % 4 == 1) {
      bars.push_back(Interval::open_closed(x, y));
    } else {
      bars.push_back(Interval::open(x, y));
    }
  }
  return Barcode(bars);
}

std::string pair_text(const Barcode& a, const Barcode& b) {
  return "{" + format_barcode(a) + "} vs {" + format_barcode(b) + "}";
}

Outcome isometry_suite() {
  std::size_t unattained = 0, infinite = 0, interleavings = 0;
  Rng rng = Rng(2024).substream("acceptance-isometry");
  for (int trial = 0; trial < 400; ++trial) {
    // the first 200 pairs are realizable as grid modules; the rest use every decoration
    const bool modules = trial < 200;
    const Barcode a = modules ? random_closed_open(rng) : random_decorated(rng);
    const Barcode b = modules ? random_closed_open(rng) : random_decorated(rng);
    const BottleneckResult r = bottleneck_distance(a, b);
    const Infimum oracle = brute_force_bottleneck(a, b);
    if (r.value != oracle.value || (oracle.value && r.attained != oracle.attained)) {
      return failed("bottleneck disagrees with the scan for " + pair_text(a, b));
    }
    if (!r.value) {
      ++infinite;
      continue;
    }
    std::vector<Rational> deltas;
    if (r.attained) {
      deltas.push_back(*r.value);
    } else {
      ++unattained;
      if (brute_force_matching(a, b, *r.value)) return failed("matching exists at an unattained infimum");
      for (int k = 0; k <= 10; ++k) deltas.push_back(*r.value + Rational(1, std::int64_t{1} << k));
    }
    for (const auto& delta : deltas) {
      const auto sigma = delta == *r.value && r.witness ? r.witness : find_delta_matching(a, b, delta);
      if (!sigma || !is_delta_matching(*sigma, delta)) return failed("no witness at delta for " + pair_text(a, b));
      if (!modules) continue;
      const InterleavingPair pair = interleaving_from_matching(*sigma, delta);
      const InterleavingReport report = check_interleaving(pair);
      if (!report.ok) return failed("interleaving fails for " + pair_text(a, b) + ": " + report.message);
      if (module_barcode(pair.fwd.source()) != a || module_barcode(pair.bwd.source()) != b) {
        return failed("interleaved modules have the wrong barcodes");
      }
      ++interleavings;
    }
  }
  return {true, "400 pairs (200 as modules), " + std::to_string(interleavings) + " interleavings checked, " +
                    std::to_string(unattained) + " unattained, " + std::to_string(infinite) + " infinite"};
}

// ---- criterion 7 ---------------------------------------------------------

Outcome duality_suite() {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    const Morphism f = random_morphism(seed, "duality").f;
    const Morphism dual = morphism_dual(f);
    if (induced_matching(dual) != matching_dual(induced_matching(f))) {
      return failed("barc(f*) differs at seed " + std::to_string(seed));
    }
    if (min_trivial_eps(kernel_of(f).module) != min_trivial_eps(cokernel_of(dual).module)) {
      return failed("triviality bounds differ at seed " + std::to_string(seed));
    }
  }
  return {true, "500 morphisms"};
}

// ---- criterion 8 ---------------------------------------------------------

Outcome extraction_suite() {
  std::size_t left_open = 0;
  const std::uint32_t fields[] = {2, 3, 5};
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    cfg.field_char = fields[seed % 3];
    Rng rng = Rng(seed).substream("acceptance-extraction");
    Grid grid = gen_grid(cfg, rng);
    Barcode bars = gen_barcode(grid, cfg, rng);
    if (seed % 4 == 3) {  // the other layout
      grid = grid.negated();
      bars = barcode_dual(bars);
      ++left_open;
    }
    const GridModule plain = module_from_barcode(bars, grid, cfg.field_char);
    const GridModule m = change_basis(plain, random_basis(plain, rng));
    if (module_barcode(m) != bars) return failed("round trip fails at seed " + std::to_string(seed));
  }
  return {true, "1000 round trips over GF(2), GF(3), GF(5), " + std::to_string(left_open) + " left-open"};
}

// ---- criterion 9 ---------------------------------------------------------

Outcome functoriality_suite() {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    Rng rng = Rng(seed).substream("acceptance-monos");
    const GeneratedModule x = gen_module(cfg, rng);
    const Morphism j2 = gen_submodule_inclusion(x.module, rng);
    const Morphism j1 = gen_submodule_inclusion(j2.source(), rng);
    const Morphism composite = morphism_compose(j1, j2);
    if (!j1.is_mono() || !j2.is_mono() || !composite.is_mono()) return failed("inclusion is not mono");
    if (induced_matching(composite) != matching_compose(induced_matching(j1), induced_matching(j2))) {
      return failed("monos at seed " + std::to_string(seed));
    }
  }
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    GenConfig cfg;
    cfg.seed = seed;
    Rng rng = Rng(seed).substream("acceptance-epis");
    const GeneratedModule x = gen_module(cfg, rng);
    const Morphism q1 = gen_quotient_projection(x.module, rng);
    const Morphism q2 = gen_quotient_projection(q1.target(), rng);
    const Morphism composite = morphism_compose(q1, q2);
    if (!q1.is_epi() || !q2.is_epi()) return failed("projection is not epi");
    if (induced_matching(composite) != matching_compose(induced_matching(q1), induced_matching(q2))) {
      return failed("epis at seed " + std::to_string(seed));
    }
  }
  return {true, "300 mono pairs, 300 epi pairs"};
}

// ---- criterion 10 --------------------------------------------------------

std::string quote(const std::string& s) { return "'" + s + "'"; }

struct Captured {
  int status;
  std::string out;
};

Captured capture(const std::string& command) {
  Captured c{-1, {}};
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (!pipe) return c;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) c.out.append(buf, n);
  c.status = pclose(pipe);
  return c;
}

Outcome determinism(const fs::path& cli, const fs::path& corpus) {
  if (!fs::exists(cli)) return failed("CLI not found at " + cli.string());
  const fs::path scratch = fs::temp_directory_path() / ("indmatch_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(scratch);
  std::vector<fs::path> modules, morphisms, barcodes, certificates;
  for (const auto& e : fs::recursive_directory_iterator(corpus)) {
    if (!e.is_regular_file()) continue;
    const auto p = e.path();
    if (p.extension() == ".bc") {
      barcodes.push_back(p);
    } else if (p.extension() == ".json") {
      const Json j = parse_json(read_file(p));
      (j.contains("kind") ? certificates : j.contains("mats") ? morphisms : modules).push_back(p);
    }
  }
  for (auto* v : {&modules, &morphisms, &barcodes, &certificates}) std::sort(v->begin(), v->end());

  // commands writing files use {out}; each run gets its own file
  std::vector<std::string> commands;
  for (const auto& m : modules) {
    commands.push_back("barcode -i " + quote(m.string()));
    commands.push_back("--format structured barcode -i " + quote(m.string()));
    commands.push_back("dualize -i " + quote(m.string()) + " -o {out}");
  }
  for (const auto& f : morphisms) {
    commands.push_back("match -f " + quote(f.string()));
    commands.push_back("--format structured match -f " + quote(f.string()));
    commands.push_back("stability -f " + quote(f.string()) + " --delta 1 -o {out}");
    commands.push_back("dualize -i " + quote(f.string()));
    commands.push_back("plot -f " + quote(f.string()) + " -o {out}");
    commands.push_back("plot -f " + quote(f.string()) + " --horizon 6");
  }
  for (const auto& a : barcodes) {
    commands.push_back("dualize -i " + quote(a.string()));
    for (const auto& b : barcodes) {
      commands.push_back("bottleneck -a " + quote(a.string()) + " -b " + quote(b.string()));
      commands.push_back("--format structured bottleneck -a " + quote(a.string()) + " -b " + quote(b.string()));
    }
    commands.push_back("plot -a " + quote(a.string()) + " -o {out}");
  }
  commands.push_back("plot -a " + quote((corpus / "barcodes/E.bc").string()) + " -b " +
                     quote((corpus / "barcodes/F.bc").string()) + " -m " +
                     quote((corpus / "barcodes/E_F.txt").string()) + " -o {out}");
  commands.push_back("plot -o {out}");
  for (const auto& c : certificates) commands.push_back("verify -c " + quote(c.string()));
  for (const char* kind : {"module", "morphism", "interleaving", "barcode"}) {
    for (int seed : {0, 1, 42}) {
      commands.push_back(std::string("gen --kind ") + kind + " --seed " + std::to_string(seed));
    }
  }
  commands.push_back("--field-char 3 gen --kind morphism --seed 9");
  commands.push_back("verify --trials 20 --seed 3");
  commands.push_back("--format structured verify --trials 5");
  commands.push_back("verify --trials 30 --mutate-tie-break --property induced_matching_theorem --out {out}");

  std::size_t files = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outputs[2];
    int status[2];
    for (int run = 0; run < 2; ++run) {
      std::string cmd = commands[i];
      // same path on both runs, since some commands echo it
      const fs::path out = scratch / ("out_" + std::to_string(i));
      fs::remove_all(out);
      const auto slot = cmd.find("{out}");
      if (slot != std::string::npos) cmd.replace(slot, 5, quote(out.string()));
      const Captured c = capture(quote(cli.string()) + " " + cmd);
      status[run] = c.status;
      outputs[run] = c.out;
      if (slot != std::string::npos) {
        if (fs::is_directory(out)) {
          for (const auto& e : fs::directory_iterator(out)) outputs[run] += "\n--\n" + read_file(e.path());
        } else if (fs::exists(out)) {
          outputs[run] += "\n--\n" + read_file(out);
        } else {
          return failed("no output file for: " + commands[i]);
        }
        ++files;
      }
    }
    if (status[0] != status[1] || outputs[0] != outputs[1]) return failed("output differs for: " + commands[i]);
    const bool expect_failure = commands[i].find("mutate") != std::string::npos;
    if ((status[0] != 0) != expect_failure) return failed("unexpected exit status for: " + commands[i]);
  }
  fs::remove_all(scratch);
  return {true, std::to_string(commands.size()) + " commands run twice, " + std::to_string(files) +
                    " written files compared"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::cerr << "usage: acceptance <indmatch-cli> <corpus-dir>\n";
    return 2;
  }
  const fs::path cli = argv[1], corpus = argv[2];
  struct Criterion {
    int id;
    const char* name;
    double limit;  // seconds
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "worked example", 1, worked_example},
      {2, "non-functoriality", 1, non_functoriality},
      {3, "direct sum", 1, direct_sum},
      {4, "induced matching theorem", 60, matching_theorem},
      {5, "stability", 60, stability_suite},
      {6, "isometry", 120, isometry_suite},
      {7, "duality", 60, duality_suite},
      {8, "barcode extraction", 60, extraction_suite},
      {9, "functoriality on monos and epis", 30, functoriality_suite},
      {10, "CLI determinism", 600, [&] { return determinism(cli, corpus); }},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = failed(std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && seconds > c.limit) o = failed("took longer than " + std::to_string(static_cast<int>(c.limit)) + " s");
    if (!o.ok) ++failures;
    char time[32];
    std::snprintf(time, sizeof time, "%.3f s", seconds);
    std::cout << (o.ok ? "PASS" : "FAIL") << " criterion " << c.id << " (" << c.name << "): " << o.detail << " ["
              << time << "]\n"
              << std::flush;
  }
  return failures == 0 ? 0 : 1;
}
