#pragma once

#include "indmatch/morphism.hpp"
#include "indmatch/stability.hpp"

#include "json.hpp"

#include <filesystem>
#include <string>

namespace indmatch {

using Json = nlohmann::ordered_json;

/// Multi-line layout with short arrays (numbers, strings, rows of numbers) kept inline.
/// Ends with a newline. Deterministic.
std::string format_json(const Json& value);

Json module_to_json(const GridModule& module);
/// `path` is only used in error messages.
GridModule module_from_json(const Json& value, const std::string& path = "<module>");

Json morphism_to_json(const Morphism& f);
/// Modules given as strings are read as files relative to `base_dir`.
Morphism morphism_from_json(const Json& value, const std::filesystem::path& base_dir = {},
                            const std::string& path = "<morphism>");

Json barcode_to_json(const Barcode& barcode);
Json matching_to_json(const Matching& sigma);

/// Parse JSON text, turning syntax errors into ParseError with line and column.
Json parse_json(const std::string& text);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

/// Like module_from_json, but malformed rationals are reported with their line and
/// column in `text`.
GridModule parse_module(const std::string& text, const std::string& path = "<module>");
Morphism parse_morphism(const std::string& text, const std::filesystem::path& base_dir = {},
                        const std::string& path = "<morphism>");
std::string serialize_module(const GridModule& module);
std::string serialize_morphism(const Morphism& f);

/// Self-contained record that `verify -c` can re-check: delta, both barcodes, the
/// matching, the outcome of each matching clause and optionally an interleaving.
Json delta_matching_certificate(const Matching& sigma, const Rational& delta);
Json interleaving_certificate(const InterleavingPair& pair, const Matching& sigma);

struct CertificateCheck {
  bool ok = true;
  std::vector<std::pair<std::string, bool>> checks;  ///< name, passed
  std::string message;
};

/// Recomputes every check from the data in the certificate. Recorded outcomes that
/// disagree with the recomputation make the certificate fail.
CertificateCheck verify_certificate(const Json& certificate, const std::filesystem::path& base_dir = {});

}  // namespace indmatch
