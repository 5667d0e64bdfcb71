#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qcenter/envalg.hpp"
#include "qcenter/henselift.hpp"

namespace qcli {

using qcenter::HSeries;
using qcenter::Poly;

inline constexpr int kScenarioSchemaVersion = 1;

/// Task names in execution order.
const std::vector<std::string>& task_order();

struct CheckParams {
  std::uint64_t seed = 1;
  int axiom_samples = 20;
  int axiom_degree = 4;
  int homogeneity_samples = 20;
  int homogeneity_degree = 4;
  int eq25_samples = 20;
  int eq25_degree = 6;
  int symmetrize_samples = 10;
  int symmetrize_degree = 3;
  /// The quantum hamiltonian identity is validated at load time on every monomial up to this degree.
  int validate_degree = 3;
  /// Weyl centrality is tested against invariants up to this degree.
  int weyl_test_degree = 2;
};

struct LiftSpec {
  std::string name;
  std::string f;
  std::vector<std::string> coefficients;  // elements of S(g), a_0 first
  std::vector<std::string> corrections;   // hbar-series, empty or one per coefficient
};

/// A scenario file after parsing and structural validation. Expressions that
/// depend on the truncation order are kept as text and built by `action()`.
struct Scenario {
  std::string name;
  std::string description;
  qcenter::SymplecticSpace space = qcenter::SymplecticSpace::standard(1);
  qcenter::LieAlgebraData lie = qcenter::LieAlgebraData::abelian(0);
  std::vector<Poly> hamiltonians;
  std::vector<std::string> quantum_hamiltonians;  // empty means Hhat = H
  int truncation = 8;
  int max_degree = 8;
  std::optional<int> test_degree;
  CheckParams checks;
  std::vector<LiftSpec> lifts;
  std::vector<std::string> generator_relations;
  std::vector<std::string> center_generators;
  std::vector<std::string> tasks;

  /// Dtest: explicit value (raised to at least D) or D + 2.
  int effective_test_degree() const;
  qcenter::HamiltonianAction action(int order) const;
  std::vector<qcenter::LiftRequest> lift_requests(const qcenter::HamiltonianAction& act) const;
  std::vector<Poly> relations() const;
  std::vector<std::string> lift_names() const;
};

/// Throws ParseError for malformed documents or expressions, ValidationError for
/// structurally invalid data (Jacobi, antisymmetry, equivariance, the quantum hamiltonian identity).
Scenario parse_scenario(const nlohmann::json& doc);
Scenario parse_scenario_text(const std::string& text);
/// A path on disk, or the name of a shipped preset when no such file exists.
Scenario load_scenario(const std::string& path_or_preset);

/// Shipped scenarios, sorted by name.
const std::map<std::string, std::string>& presets();

}  // namespace qcli
