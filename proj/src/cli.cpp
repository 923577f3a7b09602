#include "indmatch/cli.hpp"

#include "indmatch/error.hpp"
#include "indmatch/io.hpp"
#include "indmatch/plot.hpp"
#include "indmatch/verify.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <ostream>

namespace indmatch::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
  std::string format = "text";
  std::string field_char;
  std::string delta;
  std::uint64_t seed = 0;
  std::size_t trials = 50;
  std::string horizon;

  std::string input, morphism, a, b, matching, output, certificate, kind = "module";
  bool mutate = false;
  std::vector<std::string> properties;
};

/// Bad flag values are usage errors, not input errors.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational flag_rational(const std::string& text, const char* flag) {
  try {
    return parse_rational(text);
  } catch (const ParseError&) {
    throw UsageError(std::string(flag) + ": not a rational: " + text);
  }
}

bool structured(const Options& o) { return o.format == "structured"; }

void emit(std::ostream& out, const Options& o, const std::string& text) {
  if (o.output.empty()) {
    out << text;
  } else {
    write_file(o.output, text);
  }
}

GridModule load_module(const std::string& path, const Options& o) {
  GridModule m = parse_module(read_file(path), path);
  if (!o.field_char.empty() && std::to_string(m.characteristic()) != o.field_char) {
    throw DomainError(path + ": module is over GF(" + std::to_string(m.characteristic()) + "), not GF(" +
                      o.field_char + ")");
  }
  return m;
}

Morphism load_morphism(const std::string& path, const Options& o) {
  Morphism f = parse_morphism(read_file(path), fs::path(path).parent_path(), path);
  if (!o.field_char.empty() && std::to_string(f.characteristic()) != o.field_char) {
    throw DomainError(path + ": morphism is over GF(" + std::to_string(f.characteristic()) + "), not GF(" +
                      o.field_char + ")");
  }
  return f;
}

Barcode load_barcode(const std::string& path) { return parse_barcode(read_file(path)); }

std::uint32_t field_char(const Options& o) {
  if (o.field_char.empty()) return 2;
  try {
    return static_cast<std::uint32_t>(std::stoul(o.field_char));
  } catch (const std::exception&) {
    throw UsageError("--field-char: not a number: " + o.field_char);
  }
}

std::string matching_text(const Matching& sigma, const Options& o) {
  if (!structured(o)) return format_matching(sigma);
  Json j;
  j["source"] = barcode_to_json(sigma.source());
  j["target"] = barcode_to_json(sigma.target());
  j["matching"] = matching_to_json(sigma);
  return format_json(j);
}

int cmd_barcode(const Options& o, std::ostream& out) {
  const Barcode b = module_barcode(load_module(o.input, o));
  if (structured(o)) {
    Json j;
    j["barcode"] = barcode_to_json(b);
    emit(out, o, format_json(j));
  } else {
    emit(out, o, format_barcode(b));
  }
  return 0;
}

int cmd_match(const Options& o, std::ostream& out) {
  emit(out, o, matching_text(induced_matching(load_morphism(o.morphism, o)), o));
  return 0;
}

int cmd_bottleneck(const Options& o, std::ostream& out) {
  const Barcode a = load_barcode(o.a), b = load_barcode(o.b);
  const BottleneckResult r = bottleneck_distance(a, b);
  const std::string value = r.value ? format_rational(*r.value) : "inf";
  if (!structured(o)) {
    emit(out, o, value + " attained=" + (r.attained && r.value ? "true" : "false") + "\n");
    return 0;
  }
  Json j;
  j["distance"] = value;
  j["attained"] = r.attained && r.value.has_value();
  if (r.witness) {
    j["witness_delta"] = format_rational(*r.witness_delta);
    j["witness"] = matching_to_json(*r.witness);
  }
  emit(out, o, format_json(j));
  return 0;
}

int cmd_stability(const Options& o, std::ostream& out) {
  if (o.delta.empty()) throw UsageError("stability: --delta is required");
  const Rational delta = flag_rational(o.delta, "--delta");
  const Morphism f = load_morphism(o.morphism, o);
  const Matching sigma = stability_matching(f, delta);
  const DeltaMatchingReport report = check_delta_matching(sigma, delta);
  const bool single = single_morphism_check(f, delta);
  if (!o.certificate.empty()) write_file(o.certificate, format_json(delta_matching_certificate(sigma, delta)));
  if (structured(o)) {
    Json j;
    j["delta"] = format_rational(delta);
    j["matching"] = matching_to_json(sigma);
    j["delta_matching"] = report.ok;
    if (!report.ok) j["failed_clause"] = std::string(to_string(report.clause));
    j["single_morphism"] = single;
    out << format_json(j);
  } else {
    out << format_matching(sigma) << "delta_matching=" << (report.ok ? "true" : "false");
    if (!report.ok) out << " (" << report.message << ")";
    out << "\nsingle_morphism=" << (single ? "true" : "false") << "\n";
  }
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  if (!o.certificate.empty()) {
    const CertificateCheck c = verify_certificate(parse_json(read_file(o.certificate)),
                                                  fs::path(o.certificate).parent_path());
    if (structured(o)) {
      Json j;
      j["ok"] = c.ok;
      Json checks = Json::object();
      for (const auto& [name, ok] : c.checks) checks[name] = ok;
      j["checks"] = checks;
      if (!c.message.empty()) j["message"] = c.message;
      out << format_json(j);
    } else {
      for (const auto& [name, ok] : c.checks) out << name << "=" << (ok ? "true" : "false") << "\n";
      out << (c.ok ? "certificate ok" : "certificate FAILED: " + c.message) << "\n";
    }
    return c.ok ? 0 : 1;
  }
  SuiteOptions s;
  s.base.seed = o.seed;
  s.base.field_char = field_char(o);
  s.trials = o.trials;
  s.order = o.mutate ? BlockOrder::smallest_first : BlockOrder::largest_first;
  if (!o.output.empty()) {
    fs::create_directories(o.output);
    s.counterexample_dir = fs::path(o.output);
  }
  s.only = o.properties;
  for (const auto& name : s.only) {
    const auto& reg = property_registry();
    if (std::none_of(reg.begin(), reg.end(), [&](const NamedProperty& p) { return p.name == name; })) {
      throw UsageError("--property: unknown property " + name);
    }
  }
  const SuiteReport report = verify_suite(s);
  out << (structured(o) ? format_json(report_to_json(report)) : format_report(report));
  return report.ok() ? 0 : 1;
}

int cmd_gen(const Options& o, std::ostream& out) {
  GenConfig cfg;
  cfg.seed = o.seed;
  cfg.field_char = field_char(o);
  Rng rng = Rng(cfg.seed).substream(o.kind);
  std::string text;
  if (o.kind == "module") {
    text = serialize_module(gen_module(cfg, rng).module);
  } else if (o.kind == "barcode") {
    text = format_barcode(gen_barcode(gen_grid(cfg, rng), cfg, rng));
  } else if (o.kind == "morphism") {
    Rng a = rng.substream("source"), b = rng.substream("target"), c = rng.substream("maps");
    const GeneratedModule m = gen_module(cfg, a), n = gen_module(cfg, b);
    text = serialize_morphism(gen_morphism(m, n, cfg, c));
  } else if (o.kind == "interleaving") {
    const GeneratedInterleaving g = gen_interleaving(cfg, rng);
    text = format_json(interleaving_certificate(g.pair, g.matching));
  } else {
    throw UsageError("--kind must be module, morphism, interleaving or barcode");
  }
  emit(out, o, text);
  return 0;
}

int cmd_dualize(const Options& o, std::ostream& out) {
  if (fs::path(o.input).extension() == ".bc") {
    emit(out, o, format_barcode(barcode_dual(load_barcode(o.input))));
    return 0;
  }
  const std::string text = read_file(o.input);
  const Json j = parse_json(text);
  if (j.is_object() && j.contains("mats")) {
    emit(out, o, serialize_morphism(morphism_dual(load_morphism(o.input, o))));
  } else {
    emit(out, o, serialize_module(module_dual(load_module(o.input, o))));
  }
  return 0;
}

int cmd_plot(const Options& o, std::ostream& out) {
  std::optional<Rational> horizon;
  if (!o.horizon.empty()) horizon = flag_rational(o.horizon, "--horizon");
  std::vector<PlotRow> rows;
  std::vector<Matching> links;
  if (!o.morphism.empty()) {
    const Morphism f = load_morphism(o.morphism, o);
    const Barcode bm = module_barcode(f.source());
    const Barcode bn = module_barcode(f.target());
    const Barcode bim = module_barcode(factorize(f).image);
    rows = {{"B(M)", bm}, {"B(im f)", bim}, {"B(N)", bn}};
    links = {epi_injection(bim, bm), mono_injection(bim, bn)};
  } else if (!o.a.empty()) {
    const Barcode a = load_barcode(o.a);
    rows.push_back({fs::path(o.a).filename().string(), a});
    if (!o.b.empty()) {
      const Barcode b = load_barcode(o.b);
      rows.push_back({fs::path(o.b).filename().string(), b});
      if (!o.matching.empty()) {
        links.push_back(parse_matching(read_file(o.matching), a, b));
      } else if (const auto r = bottleneck_distance(a, b); r.witness) {
        links.push_back(*r.witness);
      }
    }
  }
  emit(out, o, plot_svg(rows, links, horizon));
  return 0;
}

void error_record(std::ostream& err, std::string_view kind, const std::string& message, std::size_t line = 0,
                  std::size_t column = 0) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  if (line > 0) {
    j["line"] = line;
    j["column"] = column;
  }
  err << j.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Induced matchings, bottleneck distances and interleavings of persistence modules on finite grids",
               "indmatch"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--format", o.format, "Output style")
      ->check(CLI::IsMember({"text", "structured"}))
      ->capture_default_str();
  app.add_option("--field-char", o.field_char, "Prime field characteristic (default 2)");
  app.add_option("--seed", o.seed, "Random seed")->capture_default_str();

  auto* barcode = app.add_subcommand("barcode", "Print the barcode of a module");
  barcode->add_option("-i,--input", o.input, "Module file")->required();
  barcode->add_option("-o,--output", o.output, "Output file");

  auto* match = app.add_subcommand("match", "Print the induced matching of a morphism");
  match->add_option("-f,--morphism", o.morphism, "Morphism file")->required();
  match->add_option("-o,--output", o.output, "Output file");

  auto* bottleneck = app.add_subcommand("bottleneck", "Bottleneck distance of two barcode files");
  bottleneck->add_option("-a", o.a, "First barcode file")->required();
  bottleneck->add_option("-b", o.b, "Second barcode file")->required();
  bottleneck->add_option("-o,--output", o.output, "Output file");

  auto* stability = app.add_subcommand("stability", "Matching r_delta o barc(f) for f : M -> N(delta)");
  stability->add_option("-f,--morphism", o.morphism, "Morphism file")->required();
  stability->add_option("--delta", o.delta, "Shift delta")->required();
  stability->add_option("-o,--certificate", o.certificate, "Write a delta-matching certificate");

  auto* verify = app.add_subcommand("verify", "Run the property suite, or re-check a certificate with -c");
  verify->add_option("-c,--certificate", o.certificate, "Certificate file");
  verify->add_option("--trials", o.trials, "Seeds per property")->capture_default_str();
  verify->add_option("--out", o.output, "Directory for counterexample files");
  verify->add_option("--property", o.properties, "Only run these properties");
  verify->add_flag("--mutate-tie-break", o.mutate, "Pair endpoint blocks from the small end (fault injection)");

  auto* gen = app.add_subcommand("gen", "Generate a random object");
  gen->add_option("--kind", o.kind, "module, morphism, interleaving or barcode")->capture_default_str();
  gen->add_option("-o,--output", o.output, "Output file");

  auto* dualize = app.add_subcommand("dualize", "Dual of a module, morphism or barcode (.bc) file");
  dualize->add_option("-i,--input", o.input, "Input file")->required();
  dualize->add_option("-o,--output", o.output, "Output file");

  auto* plot = app.add_subcommand("plot", "SVG barcode diagram");
  plot->add_option("-f,--morphism", o.morphism, "Morphism: draws B(M), B(im f), B(N)");
  plot->add_option("-a", o.a, "Barcode file");
  plot->add_option("-b", o.b, "Second barcode file");
  plot->add_option("-m,--matching", o.matching, "Matching between -a and -b (default: a bottleneck witness)");
  plot->add_option("--horizon", o.horizon, "Clip infinite ends at +-horizon");
  plot->add_option("-o,--output", o.output, "Output file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << app.get_name() << ": " << e.what() << "\n";
    return 2;
  }

  try {
    if (*barcode) return cmd_barcode(o, out);
    if (*match) return cmd_match(o, out);
    if (*bottleneck) return cmd_bottleneck(o, out);
    if (*stability) return cmd_stability(o, out);
    if (*verify) return cmd_verify(o, out);
    if (*gen) return cmd_gen(o, out);
    if (*dualize) return cmd_dualize(o, out);
    if (*plot) return cmd_plot(o, out);
  } catch (const UsageError& e) {
    err << app.get_name() << ": " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    error_record(err, to_string(e.kind()), e.what(), e.line(), e.column());
    return 1;
  } catch (const Error& e) {
    error_record(err, to_string(e.kind()), e.what());
    return 1;
  } catch (const fs::filesystem_error& e) {
    error_record(err, "io", e.what());
    return 1;
  } catch (const std::exception& e) {
    error_record(err, "internal", e.what());
    return 1;
  }
  return 2;
}

}  // namespace indmatch::cli
