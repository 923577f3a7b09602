#include "indmatch/io.hpp"

#include <fstream>
#include <sstream>

namespace indmatch {

namespace {

bool is_flat(const Json& value) {
  if (!value.is_array()) return !value.is_object();
  for (const auto& item : value) {
    if (item.is_object()) return false;
    if (item.is_array()) {
      for (const auto& inner : item) {
        if (inner.is_array() || inner.is_object()) return false;
      }
    }
  }
  return true;
}

void emit(const Json& value, std::size_t indent, std::ostringstream& out) {
  if (is_flat(value)) {
    out << value.dump();
    return;
  }
  const std::string pad(indent + 2, ' ');
  if (value.is_object()) {
    if (value.empty()) {
      out << "{}";
      return;
    }
    out << "{\n";
    std::size_t i = 0;
    for (auto it = value.begin(); it != value.end(); ++it, ++i) {
      out << pad << Json(it.key()).dump() << ": ";
      emit(it.value(), indent + 2, out);
      out << (i + 1 < value.size() ? ",\n" : "\n");
    }
    out << std::string(indent, ' ') << '}';
    return;
  }
  out << "[\n";
  for (std::size_t i = 0; i < value.size(); ++i) {
    out << pad;
    emit(value[i], indent + 2, out);
    out << (i + 1 < value.size() ? ",\n" : "\n");
  }
  out << std::string(indent, ' ') << ']';
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (const auto& row : m.to_rows()) rows.push_back(row);
  return rows;
}

// A bad rational inside a JSON string; parse_module and parse_morphism
// translate it into a position in the original text.
struct LiteralError : ParseError {
  LiteralError(const std::string& message, std::string literal_, std::size_t column)
      : ParseError(message, 0, column), literal(std::move(literal_)) {}
  std::string literal;
};

Rational rational_literal(const std::string& text, const std::string& path) {
  try {
    return parse_rational(text);
  } catch (const ParseError& e) {
    throw LiteralError(path + ": " + e.what(), text, e.column());
  }
}

template <class Parse>
auto located(const std::string& text, Parse parse) {
  try {
    return parse();
  } catch (const LiteralError& e) {
    const auto at = text.find('"' + e.literal + '"');
    if (at == std::string::npos) throw ParseError(e.what(), 0, 0);
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i < at; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    // column of the offending character, counting the opening quote
    throw ParseError(e.what(), line, column + e.column());
  }
}

[[noreturn]] void bad(const std::string& path, const std::string& what) {
  throw ValidationError(path + ": " + what);
}

Matrix matrix_from_json(const Json& value, std::size_t rows, std::size_t cols, std::uint32_t p,
                        const std::string& path, const std::string& label) {
  if (!value.is_array() || value.size() != rows) {
    bad(path, label + " must have " + std::to_string(rows) + " rows");
  }
  std::vector<std::vector<std::int64_t>> data;
  for (const auto& row : value) {
    if (!row.is_array() || row.size() != cols) bad(path, label + " rows must have " + std::to_string(cols) + " entries");
    std::vector<std::int64_t> entries;
    for (const auto& x : row) {
      if (!x.is_number_integer()) bad(path, label + " entries must be integers");
      entries.push_back(x.get<std::int64_t>());
    }
    data.push_back(std::move(entries));
  }
  return Matrix::from_rows(data, cols, p);
}

std::uint32_t read_p(const Json& value, const std::string& path) {
  if (!value.contains("p") || !value["p"].is_number_unsigned()) bad(path, "missing field characteristic 'p'");
  const auto p = value["p"].get<std::uint64_t>();
  if (p >= 65536 || !is_prime(static_cast<std::uint32_t>(p))) bad(path, "'p' must be a prime below 65536");
  return static_cast<std::uint32_t>(p);
}

}  // namespace

std::string format_json(const Json& value) {
  std::ostringstream out;
  emit(value, 0, out);
  out << '\n';
  return out.str();
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    // locate the byte offset
    std::size_t line = 1, column = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("malformed JSON", line, column);
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << content)) throw Error(ErrorKind::io, "cannot write " + path.string());
}

Json module_to_json(const GridModule& module) {
  Json out;
  out["p"] = module.characteristic();
  Json grid = Json::array();
  for (const auto& t : module.grid().values()) grid.push_back(format_rational(t));
  out["grid"] = grid;
  out["dims"] = module.dims();
  Json maps = Json::array();
  for (const auto& m : module.maps()) maps.push_back(matrix_to_json(m));
  out["maps"] = maps;
  if (module.left_open()) out["left_open"] = true;
  return out;
}

GridModule module_from_json(const Json& value, const std::string& path) {
  if (!value.is_object()) bad(path, "a module must be an object");
  const std::uint32_t p = read_p(value, path);
  if (!value.contains("grid") || !value["grid"].is_array()) bad(path, "missing 'grid'");
  std::vector<Rational> grid;
  for (const auto& t : value["grid"]) {
    if (!t.is_string()) bad(path, "grid values must be strings such as \"3/2\"");
    grid.push_back(rational_literal(t.get<std::string>(), path));
  }
  if (!value.contains("dims") || !value["dims"].is_array()) bad(path, "missing 'dims'");
  std::vector<std::size_t> dims;
  for (const auto& d : value["dims"]) {
    if (!d.is_number_unsigned()) bad(path, "dims must be nonnegative integers");
    dims.push_back(d.get<std::size_t>());
  }
  if (dims.size() != grid.size()) bad(path, "'dims' and 'grid' differ in length");
  if (!value.contains("maps") || !value["maps"].is_array() || value["maps"].size() + 1 != dims.size()) {
    bad(path, "'maps' must hold one matrix per pair of consecutive cells");
  }
  std::vector<Matrix> maps;
  for (std::size_t i = 0; i < value["maps"].size(); ++i) {
    maps.push_back(matrix_from_json(value["maps"][i], dims[i + 1], dims[i], p, path, "map " + std::to_string(i)));
  }
  bool left_open = false;
  if (value.contains("left_open")) {
    if (!value["left_open"].is_boolean()) bad(path, "'left_open' must be a boolean");
    left_open = value["left_open"].get<bool>();
  }
  return GridModule(Grid(std::move(grid)), std::move(dims), std::move(maps), p, left_open);
}

Json morphism_to_json(const Morphism& f) {
  Json out;
  out["source"] = module_to_json(f.source());
  out["target"] = module_to_json(f.target());
  Json mats = Json::array();
  for (const auto& m : f.mats()) mats.push_back(matrix_to_json(m));
  out["mats"] = mats;
  return out;
}

Morphism morphism_from_json(const Json& value, const std::filesystem::path& base_dir, const std::string& path) {
  if (!value.is_object()) bad(path, "a morphism must be an object");
  auto side = [&](const char* key) {
    if (!value.contains(key)) bad(path, std::string("missing '") + key + "'");
    const Json& v = value[key];
    if (v.is_string()) {
      const auto file = base_dir / v.get<std::string>();
      return module_from_json(parse_json(read_file(file)), file.string());
    }
    return module_from_json(v, path + "." + key);
  };
  GridModule source = side("source");
  GridModule target = side("target");
  if (!value.contains("mats") || !value["mats"].is_array() || value["mats"].size() != source.cell_count()) {
    bad(path, "'mats' must hold one matrix per cell");
  }
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < source.cell_count(); ++i) {
    const std::size_t rows = i < target.cell_count() ? target.dims()[i] : 0;
    mats.push_back(matrix_from_json(value["mats"][i], rows, source.dims()[i], source.characteristic(), path,
                                    "matrix " + std::to_string(i)));
  }
  return Morphism(std::move(source), std::move(target), std::move(mats));
}

Json barcode_to_json(const Barcode& barcode) {
  Json out = Json::array();
  for (const auto& [interval, m] : barcode.multiplicities()) {
    out.push_back(m == 1 ? interval.to_string() : interval.to_string() + " x" + std::to_string(m));
  }
  return out;
}

Json matching_to_json(const Matching& sigma) {
  Json out = Json::array();
  for (const auto& [s, t] : sigma.pairs()) out.push_back(s.to_string() + " -> " + t.to_string());
  return out;
}

GridModule parse_module(const std::string& text, const std::string& path) {
  return located(text, [&] { return module_from_json(parse_json(text), path); });
}

Morphism parse_morphism(const std::string& text, const std::filesystem::path& base_dir, const std::string& path) {
  return located(text, [&] { return morphism_from_json(parse_json(text), base_dir, path); });
}

std::string serialize_module(const GridModule& module) { return format_json(module_to_json(module)); }
std::string serialize_morphism(const Morphism& f) { return format_json(morphism_to_json(f)); }

namespace {

Json clause_checks(const Matching& sigma, const Rational& delta) {
  using Clause = DeltaMatchingReport::Clause;
  const Rational two_delta = 2 * delta;
  bool source_ok = true, target_ok = true, pairs_ok = true;
  for (const auto& bar : sigma.source().elements()) {
    if (is_persistent(bar.interval, two_delta) && !sigma.image_of(bar)) source_ok = false;
  }
  for (const auto& bar : sigma.target().elements()) {
    if (is_persistent(bar.interval, two_delta) && !sigma.preimage_of(bar)) target_ok = false;
  }
  for (const auto& [s, t] : sigma.pairs()) {
    if (!delta_admissible(s.interval, t.interval, delta)) pairs_ok = false;
  }
  Json out;
  out[std::string(to_string(Clause::source_coverage))] = source_ok;
  out[std::string(to_string(Clause::target_coverage))] = target_ok;
  out[std::string(to_string(Clause::endpoint_proximity))] = pairs_ok;
  return out;
}

Barcode barcode_from_json(const Json& value, const std::string& what) {
  if (!value.is_array()) throw ValidationError(what + " must be a list of bars");
  std::string text;
  for (const auto& line : value) {
    if (!line.is_string()) throw ValidationError(what + " entries must be strings");
    text += line.get<std::string>() + "\n";
  }
  return parse_barcode(text);
}

}  // namespace

Json delta_matching_certificate(const Matching& sigma, const Rational& delta) {
  Json out;
  out["kind"] = "delta_matching";
  out["delta"] = format_rational(delta);
  out["source"] = barcode_to_json(sigma.source());
  out["target"] = barcode_to_json(sigma.target());
  out["matching"] = matching_to_json(sigma);
  out["checks"] = clause_checks(sigma, delta);
  return out;
}

Json interleaving_certificate(const InterleavingPair& pair, const Matching& sigma) {
  Json out = delta_matching_certificate(sigma, pair.delta);
  out["kind"] = "interleaving";
  out["checks"]["interleaving"] = check_interleaving(pair).ok;
  out["fwd"] = morphism_to_json(pair.fwd);
  out["bwd"] = morphism_to_json(pair.bwd);
  return out;
}

CertificateCheck verify_certificate(const Json& certificate, const std::filesystem::path& base_dir) {
  if (!certificate.is_object() || !certificate.contains("kind") || !certificate.contains("delta")) {
    throw ValidationError("a certificate needs 'kind' and 'delta'");
  }
  const std::string kind = certificate["kind"].get<std::string>();
  if (kind != "delta_matching" && kind != "interleaving") throw ValidationError("unknown certificate kind " + kind);
  const Rational delta = parse_rational(certificate["delta"].get<std::string>());
  if (delta < 0) throw DomainError("delta must be nonnegative");
  const Barcode source = barcode_from_json(certificate.value("source", Json::array()), "source");
  const Barcode target = barcode_from_json(certificate.value("target", Json::array()), "target");
  std::string lines;
  for (const auto& line : certificate.value("matching", Json::array())) lines += line.get<std::string>() + "\n";
  const Matching sigma = parse_matching(lines, source, target);

  CertificateCheck result;
  Json recomputed = clause_checks(sigma, delta);
  if (kind == "interleaving") {
    if (!certificate.contains("fwd") || !certificate.contains("bwd")) {
      throw ValidationError("an interleaving certificate needs 'fwd' and 'bwd'");
    }
    const InterleavingPair pair{delta, morphism_from_json(certificate["fwd"], base_dir, "fwd"),
                                morphism_from_json(certificate["bwd"], base_dir, "bwd")};
    const bool bars_agree = module_barcode(pair.fwd.source()) == source && module_barcode(pair.bwd.source()) == target;
    recomputed["modules_match_barcodes"] = bars_agree;
    const auto report = check_interleaving(pair);
    recomputed["interleaving"] = report.ok;
    if (!report.ok) result.message = report.message;
  }
  const Json recorded = certificate.value("checks", Json::object());
  for (auto it = recomputed.begin(); it != recomputed.end(); ++it) {
    const bool passed = it.value().get<bool>();
    result.checks.emplace_back(it.key(), passed);
    if (!passed) result.ok = false;
    if (recorded.contains(it.key()) && recorded[it.key()].get<bool>() != passed) {
      result.ok = false;
      result.message = "recorded outcome of '" + it.key() + "' disagrees with recomputation";
    }
  }
  if (!result.ok && result.message.empty()) result.message = "certificate does not hold";
  return result;
}

}  // namespace indmatch
