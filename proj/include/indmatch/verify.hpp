#pragma once

#include "indmatch/generator.hpp"
#include "indmatch/induced_matching.hpp"
#include "indmatch/io.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace indmatch {

struct PropertyFailure {
  std::string message;
  Json witness;  ///< objects needed to reproduce, e.g. the morphism
};

/// A property checked on one random instance; cfg.seed selects the instance.
using Property = std::function<std::optional<PropertyFailure>(const GenConfig& cfg, BlockOrder order)>;

struct NamedProperty {
  std::string name;
  Property check;
};

const std::vector<NamedProperty>& property_registry();

struct SuiteOptions {
  GenConfig base;  ///< seeds base.seed, base.seed + 1, ...
  std::size_t trials = 100;
  BlockOrder order = BlockOrder::largest_first;
  std::optional<std::filesystem::path> counterexample_dir;
  std::vector<std::string> only;  ///< property names; empty means all
};

struct PropertyResult {
  std::string name;
  std::size_t trials = 0;
  std::size_t failures = 0;
  std::optional<std::uint64_t> first_failing_seed;
  std::string message;
  /// Smallest bounds and seed found that still fail.
  std::optional<GenConfig> minimized;
  std::optional<std::filesystem::path> counterexample;
};

struct SuiteReport {
  std::vector<PropertyResult> results;
  bool ok() const;
};

SuiteReport verify_suite(const SuiteOptions& options);

std::string format_report(const SuiteReport& report);
Json report_to_json(const SuiteReport& report);

}  // namespace indmatch
