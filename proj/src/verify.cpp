#include "indmatch/verify.hpp"

#include <algorithm>

namespace indmatch {

namespace {

using Outcome = std::optional<PropertyFailure>;

Outcome fail(std::string message, Json witness = Json::object()) {
  return PropertyFailure{std::move(message), std::move(witness)};
}

struct Pair {
  GeneratedModule source;
  GeneratedModule target;
  Morphism f;
};

Pair random_pair(const GenConfig& cfg, std::string_view tag) {
  Rng rng = Rng(cfg.seed).substream(tag);
  Rng a = rng.substream("source"), b = rng.substream("target"), c = rng.substream("maps");
  GeneratedModule source = gen_module(cfg, a);
  GeneratedModule target = gen_module(cfg, b);
  Morphism f = gen_morphism(source, target, cfg, c);
  return Pair{std::move(source), std::move(target), std::move(f)};
}

Json morphism_witness(const Morphism& f) {
  Json w;
  w["morphism"] = morphism_to_json(f);
  return w;
}

Outcome barcode_extraction(const GenConfig& cfg, BlockOrder) {
  for (std::uint32_t p : {2u, 3u, 5u}) {
    GenConfig c = cfg;
    c.field_char = p;
    Rng rng = Rng(cfg.seed).substream("extraction").substream(p);
    const GeneratedModule m = gen_module(c, rng);
    if (module_barcode(m.module) != m.barcode) {
      Json w;
      w["module"] = module_to_json(m.module);
      w["expected"] = barcode_to_json(m.barcode);
      return fail("extracted barcode differs over GF(" + std::to_string(p) + ")", w);
    }
  }
  return std::nullopt;
}

Outcome shift_and_dual(const GenConfig& cfg, BlockOrder) {
  Rng rng = Rng(cfg.seed).substream("shift");
  const GeneratedModule m = gen_module(cfg, rng);
  const Rational delta = gen_delta(cfg, rng);
  Json w;
  w["module"] = module_to_json(m.module);
  if (module_barcode(module_shift(m.module, delta)) != barcode_shift(m.barcode, delta)) {
    return fail("shift does not commute with barcodes", w);
  }
  if (module_barcode(module_dual(m.module)) != barcode_dual(m.barcode)) return fail("dual barcode is wrong", w);
  return std::nullopt;
}

Outcome rank_nullity(const GenConfig& cfg, BlockOrder) {
  const Pair pr = random_pair(cfg, "rank");
  const auto& f = pr.f;
  const auto ker = kernel_of(f);
  const auto coker = cokernel_of(f);
  const auto factors = factorize(f);
  for (std::size_t c = 0; c < f.mats().size(); ++c) {
    if (ker.module.dims()[c] + factors.image.dims()[c] != f.source().dims()[c] ||
        factors.image.dims()[c] + coker.module.dims()[c] != f.target().dims()[c]) {
      return fail("rank-nullity fails at cell " + std::to_string(c), morphism_witness(f));
    }
  }
  if (morphism_compose(factors.epi_part, factors.mono_part) != f) {
    return fail("image factorization does not compose back to f", morphism_witness(f));
  }
  return std::nullopt;
}

Outcome induced_matching_theorem(const GenConfig& cfg, BlockOrder order) {
  const Pair pr = random_pair(cfg, "theorem");
  const Morphism& f = pr.f;
  const Matching barc = induced_matching(f, order);
  const TrivialityBound ek = min_trivial_eps(kernel_of(f).module);
  const TrivialityBound ec = min_trivial_eps(cokernel_of(f).module);
  for (const auto& [x, y] : barc.pairs()) {
    const auto& b = x.interval.birth();
    const auto& d = x.interval.death();
    const auto& b2 = y.interval.birth();
    const auto& d2 = y.interval.death();
    if (!(b2 <= b && b < d2 && d2 <= d)) {
      return fail("(i) fails for " + x.to_string() + " -> " + y.to_string(), morphism_witness(f));
    }
    if (ec.value && !(b <= b2 + *ec.value)) {
      return fail("(ii) left endpoints too far apart for " + x.to_string() + " -> " + y.to_string(),
                  morphism_witness(f));
    }
    if (ek.value && !(d - *ek.value <= d2)) {
      return fail("(iii) right endpoints too far apart for " + x.to_string() + " -> " + y.to_string(),
                  morphism_witness(f));
    }
  }
  if (ec.value) {
    const Barcode persistent = barcode_persistent(barc.target(), *ec.value);
    for (const auto& bar : persistent.elements()) {
      if (!barc.preimage_of(bar)) return fail("(ii) " + bar.to_string() + " is not in the image", morphism_witness(f));
    }
  }
  if (ek.value) {
    const Barcode persistent = barcode_persistent(barc.source(), *ek.value);
    for (const auto& bar : persistent.elements()) {
      if (!barc.image_of(bar)) return fail("(iii) " + bar.to_string() + " is not in the domain", morphism_witness(f));
    }
  }
  return std::nullopt;
}

Outcome duality(const GenConfig& cfg, BlockOrder order) {
  const Pair pr = random_pair(cfg, "duality");
  const Morphism& f = pr.f;
  const Morphism dual = morphism_dual(f);
  if (induced_matching(dual, order) != matching_dual(induced_matching(f, order))) {
    return fail("barc(f*) differs from the dual of barc(f)", morphism_witness(f));
  }
  if (min_trivial_eps(kernel_of(f).module) != min_trivial_eps(cokernel_of(dual).module)) {
    return fail("ker f and coker f* have different triviality bounds", morphism_witness(f));
  }
  if (morphism_dual(dual) != f) return fail("double dual differs", morphism_witness(f));
  return std::nullopt;
}

Outcome conjugation_invariance(const GenConfig& cfg, BlockOrder order) {
  const Pair pr = random_pair(cfg, "conjugation");
  Rng rng = Rng(cfg.seed).substream("conjugation-basis");
  const CellBasis s = random_basis(pr.f.source(), rng);
  const CellBasis t = random_basis(pr.f.target(), rng);
  if (induced_matching(change_basis(pr.f, s, t), order) != induced_matching(pr.f, order)) {
    return fail("induced matching changes under a change of basis", morphism_witness(pr.f));
  }
  return std::nullopt;
}

Outcome mono_functoriality(const GenConfig& cfg, BlockOrder order) {
  Rng rng = Rng(cfg.seed).substream("monos");
  const GeneratedModule x = gen_module(cfg, rng);
  const Morphism j2 = gen_submodule_inclusion(x.module, rng);
  const Morphism j1 = gen_submodule_inclusion(j2.source(), rng);
  const Matching lhs = induced_matching(morphism_compose(j1, j2), order);
  const Matching rhs = matching_compose(induced_matching(j1, order), induced_matching(j2, order));
  if (lhs != rhs) {
    Json w;
    w["first"] = morphism_to_json(j1);
    w["second"] = morphism_to_json(j2);
    return fail("barc does not respect composition of monomorphisms", w);
  }
  return std::nullopt;
}

Outcome epi_functoriality(const GenConfig& cfg, BlockOrder order) {
  Rng rng = Rng(cfg.seed).substream("epis");
  const GeneratedModule x = gen_module(cfg, rng);
  const Morphism q1 = gen_quotient_projection(x.module, rng);
  const Morphism q2 = gen_quotient_projection(q1.target(), rng);
  const Matching lhs = induced_matching(morphism_compose(q1, q2), order);
  const Matching rhs = matching_compose(induced_matching(q1, order), induced_matching(q2, order));
  if (lhs != rhs) {
    Json w;
    w["first"] = morphism_to_json(q1);
    w["second"] = morphism_to_json(q2);
    return fail("barc does not respect composition of epimorphisms", w);
  }
  return std::nullopt;
}

Outcome structure_theorem(const GenConfig& cfg, BlockOrder order) {
  Rng rng = Rng(cfg.seed).substream("structure");
  const GeneratedModule x = gen_module(cfg, rng);
  const Morphism j = gen_submodule_inclusion(x.module, rng);
  const Morphism q = gen_quotient_projection(x.module, rng);
  try {
    if (induced_matching(j, order) != mono_injection(module_barcode(j.source()), x.barcode, order)) {
      return fail("barc of an inclusion is not the canonical injection", morphism_witness(j));
    }
    if (induced_matching(q, order) != epi_injection(module_barcode(q.target()), x.barcode, order)) {
      return fail("barc of a projection is not the canonical injection", morphism_witness(q));
    }
  } catch (const DomainError& e) {
    return fail(std::string("canonical injection rejected a genuine submodule: ") + e.what(), morphism_witness(j));
  }
  return std::nullopt;
}

Outcome stability(const GenConfig& cfg, BlockOrder order) {
  Rng rng = Rng(cfg.seed).substream("stability");
  const GeneratedInterleaving g = gen_interleaving(cfg, rng);
  const auto& pair = g.pair;
  Json w;
  w["certificate"] = interleaving_certificate(pair, g.matching);
  if (!check_interleaving(pair).ok) return fail("generated pair is not an interleaving", w);
  const Rational two_delta = 2 * pair.delta;
  for (const Morphism* f : {&pair.fwd, &pair.bwd}) {
    if (!eps_trivial_check(kernel_of(*f).module, two_delta) || !eps_trivial_check(cokernel_of(*f).module, two_delta)) {
      return fail("kernel or cokernel of an interleaving morphism is not 2 delta-trivial", w);
    }
    const Matching s = stability_matching(*f, pair.delta, order);
    const auto report = check_delta_matching(s, pair.delta);
    if (!report.ok) return fail("stability matching is not a delta-matching: " + report.message, w);
  }
  const auto r = bottleneck_distance(module_barcode(pair.fwd.source()), module_barcode(pair.bwd.source()));
  if (!r.value || pair.delta < *r.value) return fail("bottleneck distance exceeds delta", w);
  return std::nullopt;
}

Outcome converse_stability(const GenConfig& cfg, BlockOrder) {
  Rng rng = Rng(cfg.seed).substream("converse");
  const Barcode a = gen_barcode(gen_grid(cfg, rng), cfg, rng);
  const Barcode b = gen_barcode(gen_grid(cfg, rng), cfg, rng);
  const BottleneckResult r = bottleneck_distance(a, b);
  Json w;
  w["a"] = barcode_to_json(a);
  w["b"] = barcode_to_json(b);
  if (!r.value) return std::nullopt;  // infinite distance: nothing to interleave
  std::vector<Rational> deltas;
  if (r.attained) {
    deltas.push_back(*r.value);
  } else {
    for (int k = 0; k <= 10; ++k) deltas.push_back(*r.value + Rational(1, std::int64_t{1} << k));
  }
  for (const auto& delta : deltas) {
    const auto sigma = find_delta_matching(a, b, delta);
    if (!sigma) return fail("no delta-matching at " + format_rational(delta), w);
    const auto report = check_interleaving(interleaving_from_matching(*sigma, delta, std::nullopt, cfg.field_char));
    if (!report.ok) return fail("interleaving from the witness fails: " + report.message, w);
  }
  return std::nullopt;
}

GeneratedModule shifted(const GeneratedModule& m, const Rational& delta) {
  CellBasis basis = m.basis;
  basis.grid = basis.grid.shifted(delta);
  return GeneratedModule{module_shift(m.module, delta), barcode_shift(m.barcode, delta), std::move(basis)};
}

Outcome single_morphism(const GenConfig& cfg, BlockOrder) {
  Rng rng = Rng(cfg.seed).substream("single");
  const GeneratedModule m = gen_module(cfg, rng);
  const GeneratedModule n = gen_module(cfg, rng);
  const Rational delta = gen_delta(cfg, rng);
  const Morphism f = gen_morphism(m, shifted(n, delta), cfg, rng);
  const bool single = single_morphism_check(f, delta);
  const auto r = bottleneck_distance(m.barcode, n.barcode);
  const bool interleaved = r.value && (*r.value < delta || (*r.value == delta && r.attained));
  if (single && !interleaved) return fail("ker and coker are 2 delta-trivial but no delta-interleaving exists",
                                          morphism_witness(f));
  if (single) {
    const auto sigma = find_delta_matching(m.barcode, n.barcode, delta);
    if (!sigma || !check_interleaving(interleaving_from_matching(*sigma, delta, std::nullopt, cfg.field_char)).ok) {
      return fail("interleaving could not be certified", morphism_witness(f));
    }
  }
  // the other direction, on an interleaving built to exist
  const GeneratedInterleaving g = gen_interleaving(cfg, rng);
  if (!single_morphism_check(g.pair.fwd, g.pair.delta) || !single_morphism_check(g.pair.bwd, g.pair.delta)) {
    return fail("an interleaving morphism fails the single-morphism criterion", morphism_witness(g.pair.fwd));
  }
  return std::nullopt;
}

}  // namespace

const std::vector<NamedProperty>& property_registry() {
  static const std::vector<NamedProperty> registry{
      {"barcode_extraction", barcode_extraction},
      {"shift_and_dual_barcodes", shift_and_dual},
      {"rank_nullity", rank_nullity},
      {"induced_matching_theorem", induced_matching_theorem},
      {"induced_matching_duality", duality},
      {"conjugation_invariance", conjugation_invariance},
      {"mono_functoriality", mono_functoriality},
      {"epi_functoriality", epi_functoriality},
      {"structure_theorem", structure_theorem},
      {"stability", stability},
      {"converse_stability", converse_stability},
      {"single_morphism_criterion", single_morphism},
  };
  return registry;
}

bool SuiteReport::ok() const {
  return std::all_of(results.begin(), results.end(), [](const PropertyResult& r) { return r.failures == 0; });
}

namespace {

Outcome run_guarded(const NamedProperty& property, const GenConfig& cfg, BlockOrder order) {
  try {
    return property.check(cfg, order);
  } catch (const std::exception& e) {
    return fail(std::string("exception: ") + e.what());
  }
}

// Smallest bounds (then smallest seed) that still fail.
std::pair<GenConfig, PropertyFailure> minimize(const NamedProperty& property, const GenConfig& failing,
                                               PropertyFailure failure, BlockOrder order) {
  std::vector<std::pair<std::size_t, std::size_t>> bounds;
  for (std::size_t g = 1; g <= failing.max_grid_points; ++g) {
    for (std::size_t d = 1; d <= failing.max_dim; ++d) bounds.emplace_back(g, d);
  }
  std::stable_sort(bounds.begin(), bounds.end(),
                   [](const auto& x, const auto& y) { return x.first + x.second < y.first + y.second; });
  for (const auto& [g, d] : bounds) {
    if (g == failing.max_grid_points && d == failing.max_dim) break;
    GenConfig cfg = failing;
    cfg.max_grid_points = g;
    cfg.max_dim = d;
    for (std::uint64_t seed = 0; seed < 64; ++seed) {
      cfg.seed = seed;
      if (auto smaller = run_guarded(property, cfg, order)) return {cfg, std::move(*smaller)};
    }
  }
  return {failing, std::move(failure)};
}

Json config_to_json(const GenConfig& cfg) {
  Json out;
  out["seed"] = cfg.seed;
  out["max_grid_points"] = cfg.max_grid_points;
  out["max_dim"] = cfg.max_dim;
  out["field_char"] = cfg.field_char;
  out["max_multiplicity"] = cfg.max_multiplicity;
  out["delta_min"] = format_rational(cfg.delta_min);
  out["delta_max"] = format_rational(cfg.delta_max);
  return out;
}

}  // namespace

SuiteReport verify_suite(const SuiteOptions& options) {
  options.base.validate();
  SuiteReport report;
  if (options.trials == 0) return report;
  for (const auto& property : property_registry()) {
    if (!options.only.empty() &&
        std::find(options.only.begin(), options.only.end(), property.name) == options.only.end()) {
      continue;
    }
    PropertyResult result;
    result.name = property.name;
    std::optional<std::pair<GenConfig, PropertyFailure>> first;
    for (std::size_t t = 0; t < options.trials; ++t) {
      GenConfig cfg = options.base;
      cfg.seed = options.base.seed + t;
      ++result.trials;
      if (auto failure = run_guarded(property, cfg, options.order)) {
        ++result.failures;
        if (!first) {
          result.first_failing_seed = cfg.seed;
          result.message = failure->message;
          first.emplace(cfg, std::move(*failure));
        }
      }
    }
    if (first) {
      auto [cfg, failure] = minimize(property, first->first, first->second, options.order);
      result.minimized = cfg;
      if (options.counterexample_dir) {
        Json record;
        record["property"] = property.name;
        record["first_failing_seed"] = *result.first_failing_seed;
        record["first_message"] = result.message;
        record["minimized_config"] = config_to_json(cfg);
        record["message"] = failure.message;
        record["witness"] = failure.witness;
        const auto path = *options.counterexample_dir / (property.name + ".json");
        write_file(path, format_json(record));
        result.counterexample = path;
      }
    }
    report.results.push_back(std::move(result));
  }
  return report;
}

std::string format_report(const SuiteReport& report) {
  std::string out;
  for (const auto& r : report.results) {
    if (r.failures == 0) {
      out += "PASS " + r.name + " trials=" + std::to_string(r.trials) + "\n";
    } else {
      out += "FAIL " + r.name + " failures=" + std::to_string(r.failures) + "/" + std::to_string(r.trials) +
             " seed=" + std::to_string(*r.first_failing_seed) + " " + r.message;
      if (r.counterexample) out += " counterexample=" + r.counterexample->string();
      out += "\n";
    }
  }
  return out;
}

Json report_to_json(const SuiteReport& report) {
  Json out;
  out["ok"] = report.ok();
  Json results = Json::array();
  for (const auto& r : report.results) {
    Json item;
    item["property"] = r.name;
    item["trials"] = r.trials;
    item["failures"] = r.failures;
    if (r.first_failing_seed) item["first_failing_seed"] = *r.first_failing_seed;
    if (!r.message.empty()) item["message"] = r.message;
    if (r.minimized) item["minimized_config"] = config_to_json(*r.minimized);
    if (r.counterexample) item["counterexample"] = r.counterexample->string();
    results.push_back(item);
  }
  out["results"] = results;
  return out;
}

}  // namespace indmatch
