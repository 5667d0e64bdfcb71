#pragma once

#include <optional>
#include <random>
#include <string>

#include <nlohmann/json.hpp>

#include "qcli/scenario.hpp"

namespace qcli {

inline constexpr int kReportSchemaVersion = 1;

enum class ReportFormat { text, json };

struct RunOptions {
  std::optional<int> truncation;
  std::optional<int> max_degree;
};

struct RunResult {
  nlohmann::json report;
  bool passed = true;
};

/// Runs the scenario's tasks in the fixed task order.
RunResult run_scenario(const Scenario& scenario, const RunOptions& options = {});

/// Deterministic serialization; keys sorted, trailing newline.
std::string emit_report(const nlohmann::json& report, ReportFormat format);

/// Random polynomial with up to `terms` terms of degree <= max_degree and
/// coefficients a/b, |a| <= 5, 1 <= b <= 3.
Poly random_poly(std::size_t nvars, int max_degree, int terms, std::mt19937_64& rng);
/// Nonzero weight-homogeneous random polynomial (for the given weights).
Poly random_weight_homogeneous(std::size_t nvars, int max_degree, int terms, std::span<const int> weights,
                               std::mt19937_64& rng);

}  // namespace qcli
