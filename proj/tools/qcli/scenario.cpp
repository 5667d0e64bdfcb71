#include "qcli/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "qcenter/errors.hpp"

namespace qcli {

using nlohmann::json;
using qcenter::ParseError;
using qcenter::Scalar;
using qcenter::ValidationError;

const std::vector<std::string>& task_order() {
  static const std::vector<std::string> order{"axioms", "eq25", "diagram1", "invariants",
                                              "centers", "lift", "iso", "weyl"};
  return order;
}

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

void expect(bool ok, const std::string& what) {
  if (!ok) throw ParseError(what);
}

void only_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& where) {
  expect(obj.is_object(), where + " must be an object");
  for (const auto& [k, v] : obj.items())
    if (std::none_of(keys.begin(), keys.end(), [&](const char* x) { return k == x; }))
      throw ParseError(where + ": unknown field '" + k + "'");
}

int integer(const json& v, const std::string& where) {
  expect(v.is_number_integer(), where + " must be an integer");
  return v.get<int>();
}

int nonneg(const json& v, const std::string& where) {
  const int x = integer(v, where);
  if (x < 0) throw ValidationError(where + " must be nonnegative");
  return x;
}

std::string text(const json& v, const std::string& where) {
  expect(v.is_string(), where + " must be a string");
  return v.get<std::string>();
}

std::vector<std::string> strings(const json& v, const std::string& where) {
  expect(v.is_array(), where + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : v) out.push_back(text(x, where + " entry"));
  return out;
}

Scalar scalar(const json& v, const std::string& where) {
  if (v.is_number_integer()) return Scalar(v.get<long>());
  expect(v.is_string(), where + " must be a rational string \"num/den\" or an integer");
  return qcenter::parse_scalar(v.get<std::string>());
}

qcenter::SymplecticSpace parse_space(const json& s) {
  only_keys(s, {"n", "poisson", "weights", "hbar_weight"}, "space");
  const int n = integer(field(s, "n", "space"), "space.n");
  if (n < 1 || 2 * n > static_cast<int>(qcenter::kMaxVariables))
    throw ValidationError("space.n must be between 1 and " + std::to_string(qcenter::kMaxVariables / 2));
  const auto dim = static_cast<std::size_t>(2 * n);
  auto standard = qcenter::SymplecticSpace::standard(static_cast<std::size_t>(n));
  auto bivector = standard.bivector();
  if (auto it = s.find("poisson"); it != s.end()) {
    expect(it->is_array() && it->size() == dim, "space.poisson must be a 2n x 2n array");
    for (std::size_t i = 0; i < dim; ++i) {
      expect((*it)[i].is_array() && (*it)[i].size() == dim, "space.poisson must be a 2n x 2n array");
      for (std::size_t j = 0; j < dim; ++j) bivector[i][j] = scalar((*it)[i][j], "space.poisson entry");
    }
  }
  std::vector<int> weights = standard.weights();
  if (auto it = s.find("weights"); it != s.end()) {
    expect(it->is_array() && it->size() == dim, "space.weights must have 2n entries");
    for (std::size_t i = 0; i < dim; ++i) weights[i] = integer((*it)[i], "space.weights entry");
  }
  int k = standard.hbar_weight();
  if (auto it = s.find("hbar_weight"); it != s.end()) k = integer(*it, "space.hbar_weight");
  return qcenter::SymplecticSpace(static_cast<std::size_t>(n), std::move(bivector), std::move(weights), k);
}

qcenter::LieAlgebraData parse_lie(const json& g) {
  only_keys(g, {"preset", "basis", "brackets", "invariant_generators"}, "lie_algebra");
  if (auto it = g.find("preset"); it != g.end()) {
    const std::string name = text(*it, "lie_algebra.preset");
    if (g.size() != 1) throw ParseError("lie_algebra.preset excludes the other fields");
    if (name == "sl2") return qcenter::LieAlgebraData::sl2();
    throw ValidationError("unknown Lie algebra preset '" + name + "'");
  }
  const auto labels = strings(field(g, "basis", "lie_algebra"), "lie_algebra.basis");
  const std::size_t d = labels.size();
  if (d > qcenter::kMaxVariables) throw ValidationError("Lie algebra dimension exceeds " + std::to_string(qcenter::kMaxVariables));
  if (std::set<std::string>(labels.begin(), labels.end()).size() != d)
    throw ValidationError("lie_algebra.basis labels must be distinct");
  auto index = [&](const std::string& label) {
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw ValidationError("unknown basis element '" + label + "' in bracket");
    return static_cast<std::size_t>(it - labels.begin());
  };
  qcenter::LieAlgebraData::Constants c(d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d)));
  std::set<std::pair<std::size_t, std::size_t>> given;
  if (auto it = g.find("brackets"); it != g.end()) {
    expect(it->is_array(), "lie_algebra.brackets must be an array");
    for (const auto& b : *it) {
      only_keys(b, {"left", "right", "value"}, "bracket");
      const std::size_t i = index(text(field(b, "left", "bracket"), "bracket.left"));
      const std::size_t j = index(text(field(b, "right", "bracket"), "bracket.right"));
      const Poly value = qcenter::parse_poly(text(field(b, "value", "bracket"), "bracket.value"), labels);
      if (!value.is_zero() && (value.degree() != 1 || !value.is_homogeneous()))
        throw ValidationError("bracket [" + labels[i] + ", " + labels[j] + "] must be a linear combination of the basis");
      if (!given.insert({i, j}).second)
        throw ValidationError("bracket [" + labels[i] + ", " + labels[j] + "] given twice");
      for (std::size_t k = 0; k < d; ++k) {
        const Scalar v = value.coefficient(qcenter::Monomial::variable(k));
        c[i][j][k] = v;
        if (!given.count({j, i})) c[j][i][k] = -v;
      }
    }
  }
  std::vector<Poly> gens;
  if (auto it = g.find("invariant_generators"); it != g.end())
    for (const auto& z : strings(*it, "lie_algebra.invariant_generators")) gens.push_back(qcenter::parse_poly(z, labels));
  return qcenter::LieAlgebraData(labels, std::move(c), std::move(gens));
}

std::vector<std::string> labelled(const json& obj, const std::vector<std::string>& labels, const std::string& where) {
  expect(obj.is_object(), where + " must be an object keyed by basis label");
  std::vector<std::string> out;
  for (const auto& l : labels) {
    auto it = obj.find(l);
    if (it == obj.end()) throw ValidationError(where + ": missing entry for '" + l + "'");
    out.push_back(text(*it, where + "." + l));
  }
  for (const auto& [k, v] : obj.items())
    if (std::find(labels.begin(), labels.end(), k) == labels.end())
      throw ValidationError(where + ": '" + k + "' is not a basis element");
  return out;
}

CheckParams parse_checks(const json& c) {
  only_keys(c,
            {"seed", "axiom_samples", "axiom_degree", "homogeneity_samples", "homogeneity_degree", "eq25_samples",
             "eq25_degree", "symmetrize_samples", "symmetrize_degree", "validate_degree", "weyl_test_degree"},
            "checks");
  CheckParams p;
  auto get = [&](const char* key, int& out) {
    if (auto it = c.find(key); it != c.end()) out = nonneg(*it, std::string("checks.") + key);
  };
  if (auto it = c.find("seed"); it != c.end()) {
    expect(it->is_number_unsigned(), "checks.seed must be a nonnegative integer");
    p.seed = it->get<std::uint64_t>();
  }
  get("axiom_samples", p.axiom_samples);
  get("axiom_degree", p.axiom_degree);
  get("homogeneity_samples", p.homogeneity_samples);
  get("homogeneity_degree", p.homogeneity_degree);
  get("eq25_samples", p.eq25_samples);
  get("eq25_degree", p.eq25_degree);
  get("symmetrize_samples", p.symmetrize_samples);
  get("symmetrize_degree", p.symmetrize_degree);
  get("validate_degree", p.validate_degree);
  get("weyl_test_degree", p.weyl_test_degree);
  return p;
}

bool identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
}

}  // namespace

int Scenario::effective_test_degree() const { return test_degree ? std::max(*test_degree, max_degree) : max_degree + 2; }

qcenter::HamiltonianAction Scenario::action(int order) const {
  qcenter::StarProduct star(space, order);
  std::optional<std::vector<HSeries>> quantum;
  if (!quantum_hamiltonians.empty()) {
    quantum.emplace();
    for (const auto& h : quantum_hamiltonians) quantum->push_back(qcenter::parse_hseries(h, space.variable_names(), order));
  }
  return qcenter::HamiltonianAction(lie, std::move(star), hamiltonians, std::move(quantum));
}

std::vector<qcenter::LiftRequest> Scenario::lift_requests(const qcenter::HamiltonianAction& act) const {
  std::vector<qcenter::LiftRequest> out;
  for (const auto& l : lifts) {
    std::vector<Poly> coeffs;
    for (const auto& c : l.coefficients) coeffs.push_back(lie.parse(c));
    std::vector<HSeries> corr;
    for (const auto& c : l.corrections) corr.push_back(qcenter::parse_hseries(c, space.variable_names(), act.order()));
    out.push_back({l.name, space.parse(l.f), qcenter::make_relation(act, coeffs, corr)});
  }
  return out;
}

std::vector<std::string> Scenario::lift_names() const {
  std::vector<std::string> names;
  for (const auto& l : lifts) names.push_back(l.name);
  return names;
}

std::vector<Poly> Scenario::relations() const {
  std::vector<Poly> out;
  const auto names = lift_names();
  for (const auto& r : generator_relations) out.push_back(qcenter::parse_poly(r, names));
  return out;
}

Scenario parse_scenario(const json& doc) {
  only_keys(doc,
            {"schema_version", "name", "description", "space", "lie_algebra", "hamiltonians", "quantum_hamiltonians",
             "truncation", "max_degree", "test_degree", "checks", "lifts", "generator_relations", "center_generators",
             "tasks"},
            "scenario");
  const int version = integer(field(doc, "schema_version", "scenario"), "schema_version");
  if (version != kScenarioSchemaVersion)
    throw ValidationError("unsupported schema_version " + std::to_string(version) + " (expected " +
                          std::to_string(kScenarioSchemaVersion) + ")");
  Scenario s;
  s.name = text(field(doc, "name", "scenario"), "name");
  if (auto it = doc.find("description"); it != doc.end()) s.description = text(*it, "description");
  s.space = parse_space(field(doc, "space", "scenario"));
  s.lie = parse_lie(field(doc, "lie_algebra", "scenario"));

  for (const auto& h : labelled(field(doc, "hamiltonians", "scenario"), s.lie.labels(), "hamiltonians"))
    s.hamiltonians.push_back(s.space.parse(h));
  if (auto it = doc.find("quantum_hamiltonians"); it != doc.end())
    s.quantum_hamiltonians = labelled(*it, s.lie.labels(), "quantum_hamiltonians");

  if (auto it = doc.find("truncation"); it != doc.end()) s.truncation = nonneg(*it, "truncation");
  if (auto it = doc.find("max_degree"); it != doc.end()) s.max_degree = nonneg(*it, "max_degree");
  if (auto it = doc.find("test_degree"); it != doc.end()) {
    s.test_degree = nonneg(*it, "test_degree");
    if (*s.test_degree < s.max_degree) throw ValidationError("test_degree must be at least max_degree");
  }
  if (auto it = doc.find("checks"); it != doc.end()) s.checks = parse_checks(*it);

  if (auto it = doc.find("lifts"); it != doc.end()) {
    expect(it->is_array(), "lifts must be an array");
    std::set<std::string> seen;
    for (const auto& l : *it) {
      only_keys(l, {"name", "f", "relation"}, "lift");
      LiftSpec lift;
      lift.name = text(field(l, "name", "lift"), "lift.name");
      if (!identifier(lift.name) || lift.name == "hbar")
        throw ValidationError("lift name '" + lift.name + "' is not a valid identifier");
      if (!seen.insert(lift.name).second) throw ValidationError("duplicate lift name '" + lift.name + "'");
      lift.f = text(field(l, "f", "lift"), "lift.f");
      (void)s.space.parse(lift.f);
      const json& rel = field(l, "relation", "lift " + lift.name);
      only_keys(rel, {"coefficients", "corrections"}, "relation");
      lift.coefficients = strings(field(rel, "coefficients", "relation"), "relation.coefficients");
      if (lift.coefficients.empty()) throw ValidationError("lift " + lift.name + ": monic relation of degree 0");
      for (const auto& c : lift.coefficients) (void)s.lie.parse(c);
      if (auto c = rel.find("corrections"); c != rel.end()) {
        lift.corrections = strings(*c, "relation.corrections");
        if (lift.corrections.size() != lift.coefficients.size())
          throw ValidationError("lift " + lift.name + ": need one correction per coefficient");
        for (const auto& x : lift.corrections) {
          const HSeries h = qcenter::parse_hseries(x, s.space.variable_names(), s.truncation);
          if (!h[0].is_zero()) throw ValidationError("lift " + lift.name + ": corrections must be divisible by hbar");
        }
      }
      s.lifts.push_back(std::move(lift));
    }
  }
  if (auto it = doc.find("generator_relations"); it != doc.end()) {
    s.generator_relations = strings(*it, "generator_relations");
    (void)s.relations();
  }
  if (auto it = doc.find("center_generators"); it != doc.end()) {
    s.center_generators = strings(*it, "center_generators");
    const auto names = s.lift_names();
    for (const auto& g : s.center_generators)
      if (std::find(names.begin(), names.end(), g) == names.end())
        throw ValidationError("center generator '" + g + "' is not a lift");
  }
  std::set<std::string> requested;
  if (auto it = doc.find("tasks"); it != doc.end()) {
    for (const auto& t : strings(*it, "tasks")) {
      if (std::find(task_order().begin(), task_order().end(), t) == task_order().end())
        throw ValidationError("unknown task '" + t + "'");
      requested.insert(t);
    }
  } else {
    requested.insert(task_order().begin(), task_order().end());
  }
  for (const auto& t : task_order())
    if (requested.count(t)) s.tasks.push_back(t);

  const auto act = s.action(s.truncation);
  const auto issues = qcenter::validate_action(act, s.checks.validate_degree);
  if (!issues.empty()) {
    std::string msg = "invalid hamiltonian action: " + issues.front();
    if (issues.size() > 1) msg += " (and " + std::to_string(issues.size() - 1) + " more)";
    throw ValidationError(msg);
  }
  return s;
}

Scenario parse_scenario_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("scenario is not valid JSON: ") + e.what());
  }
  return parse_scenario(doc);
}

Scenario load_scenario(const std::string& path_or_preset) {
  std::ifstream in(path_or_preset, std::ios::binary);
  if (!in) {
    const auto& p = presets();
    if (auto it = p.find(path_or_preset); it != p.end()) return parse_scenario_text(it->second);
    throw ParseError("cannot open scenario '" + path_or_preset + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

}  // namespace qcli
