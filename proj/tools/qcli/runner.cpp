#include "qcli/runner.hpp"

#include <iomanip>
#include <sstream>

#include "qcenter/invcenter.hpp"
#include "qcenter/weyl.hpp"

namespace qcli {

using nlohmann::json;
using qcenter::HamiltonianAction;
using qcenter::Scalar;

namespace {

json poly_list(const std::vector<Poly>& polys, const qcenter::SymplecticSpace& space) {
  json out = json::array();
  for (const auto& p : polys) out.push_back(space.format(p));
  return out;
}

std::string series(const HSeries& f, const qcenter::SymplecticSpace& space) {
  return qcenter::to_string(f, space.variable_names());
}

json optional_int(const std::optional<int>& v) { return v ? json(*v) : json(nullptr); }

/// Span of all products of `gens` (homogeneous, positive degree) by degree.
qcenter::GradedSubspace generated_subalgebra(const std::vector<Poly>& gens, std::size_t nvars, int D) {
  std::map<int, std::vector<Poly>> raw;
  auto visit = [&](auto&& self, std::size_t idx, const Poly& prod, int deg) -> void {
    if (idx == gens.size()) {
      raw[deg].push_back(prod);
      return;
    }
    Poly p = prod;
    for (int e = deg; e <= D; e += gens[idx].degree()) {
      self(self, idx + 1, p, e);
      p = p * gens[idx];
    }
  };
  visit(visit, 0, Poly::constant(nvars, Scalar(1)), 0);
  qcenter::GradedSubspace out;
  for (int d = 0; d <= D; ++d) out.slices[d] = qcenter::reduce_basis(raw[d]);
  return out;
}

std::vector<Poly> nonconstant(const std::vector<Poly>& basis) {
  std::vector<Poly> out;
  for (const auto& u : basis)
    if (u.degree() > 0) out.push_back(u);
  return out;
}

struct Context {
  const Scenario& s;
  int N;
  int D;
  int Dtest;
  HamiltonianAction act;
};

json task_axioms(const Context& c) {
  const auto& space = c.s.space;
  qcenter::StarProduct star(space, c.N);
  std::mt19937_64 rng(c.s.checks.seed);
  std::vector<qcenter::PolyTriple> triples;
  for (int i = 0; i < c.s.checks.axiom_samples; ++i) {
    Poly f = random_poly(space.dim(), c.s.checks.axiom_degree, 3, rng);
    Poly g = random_poly(space.dim(), c.s.checks.axiom_degree, 3, rng);
    Poly h = random_poly(space.dim(), c.s.checks.axiom_degree, 3, rng);
    triples.push_back({std::move(f), std::move(g), std::move(h)});
  }
  const auto axioms = qcenter::check_axioms(star, triples);
  std::vector<std::pair<Poly, Poly>> pairs;
  for (int i = 0; i < c.s.checks.homogeneity_samples; ++i) {
    Poly f = random_weight_homogeneous(space.dim(), c.s.checks.homogeneity_degree, 3, space.weights(), rng);
    Poly g = random_weight_homogeneous(space.dim(), c.s.checks.homogeneity_degree, 3, space.weights(), rng);
    pairs.emplace_back(std::move(f), std::move(g));
  }
  const auto homog = qcenter::check_homogeneity(star, pairs);

  json failures = json::array();
  for (const auto& a : axioms.samples)
    if (!a.passed())
      failures.push_back({{"sample", a.index},
                          {"check", a.failure.value_or("unknown")},
                          {"order", a.residual ? optional_int(a.residual->lowest_order()) : json(nullptr)}});
  json violations = json::array();
  for (const auto& v : homog.violations)
    violations.push_back({{"sample", v.sample}, {"order", v.order}, {"expected_weight", v.expected_weight}});
  return {{"order", c.N},
          {"samples", triples.size()},
          {"failures", failures},
          {"homogeneity", {{"samples", pairs.size()}, {"violations", violations}}},
          {"passed", axioms.passed() && homog.passed()}};
}

json task_eq25(const Context& c) {
  std::mt19937_64 rng(c.s.checks.seed + 1);
  std::vector<Poly> samples;
  for (int i = 0; i < c.s.checks.eq25_samples; ++i)
    samples.push_back(random_poly(c.s.space.dim(), c.s.checks.eq25_degree, 4, rng));
  const auto rep = qcenter::check_eq25(c.act, samples);
  json failures = json::array();
  for (const auto& r : rep.rows)
    if (!r.passed)
      failures.push_back({{"generator", c.s.lie.labels()[r.generator]},
                          {"sample", r.sample},
                          {"order", optional_int(r.residual_order)}});
  return {{"samples", samples.size()}, {"checks", rep.rows.size()}, {"failures", failures}, {"passed", rep.passed()}};
}

json task_diagram1(const Context& c) {
  const auto& lie = c.s.lie;
  qcenter::EnvelopingAlgebra U(lie, c.N);
  std::mt19937_64 rng(c.s.checks.seed + 2);
  json section_failures = json::array();
  int samples = 0;
  if (lie.dim() > 0) {
    for (int i = 0; i < c.s.checks.symmetrize_samples; ++i, ++samples) {
      const Poly z = random_poly(lie.dim(), c.s.checks.symmetrize_degree, 3, rng);
      if (qcenter::classical_limit(U.symmetrize(z)) != z) section_failures.push_back(lie.format(z));
    }
  }
  bool passed = section_failures.empty();
  json gens = json::array();
  for (const auto& z : lie.invariant_generators()) {
    const auto r = qcenter::check_diagram1(z, c.act);
    gens.push_back({{"z", lie.format(z)},
                    {"section", r.section},
                    {"pullback", r.pullback},
                    {"pullback_residual", c.s.space.format(r.pullback_residual)}});
    passed = passed && r.passed();
  }
  return {{"section_samples", samples}, {"section_failures", section_failures}, {"generators", gens}, {"passed", passed}};
}

json task_invariants(const Context& c) {
  const auto inv = qcenter::invariants_up_to(c.act, c.D);
  const auto mi = qcenter::moment_image_basis(c.act, c.D);
  bool passed = true;
  json slices = json::array();
  for (int d = 0; d <= c.D; ++d) {
    bool annihilated = true;
    for (const auto& f : inv.slice(d))
      for (std::size_t i = 0; i < c.s.lie.dim(); ++i)
        if (!c.act.velocity(i, f).is_zero()) annihilated = false;
    bool contains = true;
    for (const auto& m : mi.slice(d))
      if (!qcenter::in_span(m, inv.slice(d))) contains = false;
    passed = passed && annihilated && contains;
    slices.push_back({{"degree", d},
                      {"dimension", inv.dimension(d)},
                      {"basis", poly_list(inv.slice(d), c.s.space)},
                      {"moment_image_dimension", mi.dimension(d)},
                      {"annihilated", annihilated},
                      {"moment_image_invariant", contains}});
  }
  return {{"max_degree", c.D}, {"slices", slices}, {"passed", passed}};
}

json task_centers(const Context& c) {
  const auto rep = qcenter::compare_centers(c.act, c.D, c.Dtest, c.N);
  const auto mi = qcenter::moment_image_basis(c.act, c.D);
  json rows = json::array();
  bool moment_central = true;
  for (const auto& r : rep.rows) {
    json gens = json::array();
    for (const auto& g : r.quantum_generators) gens.push_back(series(g, c.s.space));
    bool mc = true;
    for (const auto& m : mi.slice(r.degree))
      if (!qcenter::in_span(m, r.poisson_basis)) mc = false;
    moment_central = moment_central && mc;
    rows.push_back({{"degree", r.degree},
                    {"invariant_dim", r.invariant_dim},
                    {"poisson_dim", r.poisson_dim},
                    {"quantum_rank", r.quantum_rank},
                    {"quantum_raw_dim", r.quantum_raw_dim},
                    {"poisson_basis", poly_list(r.poisson_basis, c.s.space)},
                    {"quantum_generators", gens},
                    {"triangle", r.triangle},
                    {"moment_image_central", mc},
                    {"equal", r.equal()}});
  }
  return {{"max_degree", c.D},
          {"test_degree", c.Dtest},
          {"order", c.N},
          {"rows", rows},
          {"mismatches", rep.mismatches()},
          {"passed", rep.passed() && moment_central}};
}

json task_lift(const Context& c) {
  const auto& space = c.s.space;
  json lifts = json::array();
  bool passed = true;
  for (const auto& req : c.s.lift_requests(c.act)) {
    json entry{{"name", req.name}, {"f", space.format(req.f)}, {"degree", req.relation.degree()}};
    const auto issues = qcenter::validate_relation(req.f, req.relation, c.act, c.Dtest);
    entry["relation_issues"] = issues;
    bool ok = issues.empty();
    try {
      const auto r = qcenter::hensel_lift(req.f, req.relation, c.act, c.N);
      json steps = json::array();
      for (const auto& st : r.steps)
        steps.push_back({{"order", st.order}, {"target", space.format(st.target)}, {"correction", space.format(st.correction)}});
      const auto v = qcenter::verify_lift(r.lift, req.relation, c.act, c.N, c.Dtest);
      entry["lift"] = series(r.lift, space);
      entry["derivative"] = space.format(r.derivative);
      entry["steps"] = steps;
      entry["verification"] = {{"relation_order", optional_int(v.relation_order)},
                               {"centrality_order", optional_int(v.centrality_order)},
                               {"centrality_witness", v.centrality_witness ? json(space.format(*v.centrality_witness))
                                                                           : json(nullptr)}};
      ok = ok && v.passed();
    } catch (const qcenter::LiftObstruction& e) {
      entry["obstruction"] = {{"order", e.order()}, {"remainder", space.format(e.remainder())}, {"message", e.what()}};
      ok = false;
    } catch (const qcenter::NonSimpleRootError& e) {
      entry["error"] = e.what();
      ok = false;
    }
    entry["passed"] = ok;
    passed = passed && ok;
    lifts.push_back(std::move(entry));
  }
  return {{"order", c.N}, {"lifts", lifts}, {"passed", passed}};
}

json task_iso(const Context& c) {
  const auto& space = c.s.space;
  const auto reqs = c.s.lift_requests(c.act);
  const auto rels = c.s.relations();
  try {
    const auto table = qcenter::build_center_iso(reqs, rels, c.act, c.N);
    json entries = json::array();
    for (const auto& e : table.entries)
      entries.push_back({{"name", e.name},
                         {"f", space.format(e.f)},
                         {"lift", series(e.lift, space)},
                         {"weight", e.weight},
                         {"equivariant", e.equivariant},
                         {"triangle", e.triangle}});
    return {{"order", c.N}, {"entries", entries}, {"relations", table.relations}, {"passed", table.passed()}};
  } catch (const qcenter::RelationViolation& e) {
    return {{"order", c.N}, {"violation", {{"relation", e.relation()}, {"order", e.order()}}}, {"passed", false}};
  } catch (const qcenter::LiftObstruction& e) {
    return {{"order", c.N}, {"obstruction", {{"order", e.order()}, {"message", e.what()}}}, {"passed", false}};
  }
}

json task_weyl(const Context& c) {
  const auto& space = c.s.space;
  const auto reqs = c.s.lift_requests(c.act);
  const auto tests = nonconstant(qcenter::invariants_up_to(c.act, c.s.checks.weyl_test_degree)
                                     .flatten(c.s.checks.weyl_test_degree));
  json gens = json::array();
  std::vector<Poly> classical;
  bool passed = true;
  for (const auto& name : c.s.center_generators) {
    const auto it = std::find_if(reqs.begin(), reqs.end(), [&](const auto& r) { return r.name == name; });
    json entry{{"name", name}};
    try {
      const auto lift = qcenter::hensel_lift(it->f, it->relation, c.act, c.N).lift;
      const Poly w = qcenter::weyl_specialize(lift, space);
      const auto bad = qcenter::weyl_noncentral(space, w, tests);
      entry["weyl"] = space.format(w);
      entry["noncentral_against"] = poly_list(bad, space);
      entry["central"] = bad.empty();
      passed = passed && bad.empty();
    } catch (const qcenter::Error& e) {
      entry["error"] = e.what();
      entry["central"] = false;
      passed = false;
    }
    classical.push_back(it->f);
    gens.push_back(std::move(entry));
  }
  const std::size_t rank = qcenter::jacobian_rank(classical, c.s.checks.seed);
  const bool independent = rank == classical.size();
  const auto pc = qcenter::poisson_center_up_to(c.act, c.D, c.Dtest);
  const auto gen = generated_subalgebra(classical, space.dim(), c.D);
  json hilbert = json::array();
  bool generates = true;
  for (int d = 0; d <= c.D; ++d) {
    bool contained = true;
    for (const auto& m : gen.slice(d))
      if (!qcenter::in_span(m, pc.slice(d))) contained = false;
    const bool eq = contained && gen.dimension(d) == pc.dimension(d);
    generates = generates && eq;
    hilbert.push_back({{"degree", d}, {"generated_dim", gen.dimension(d)}, {"poisson_dim", pc.dimension(d)}});
  }
  return {{"test_degree", c.s.checks.weyl_test_degree},
          {"generators", gens},
          {"jacobian_rank", rank},
          {"independent", independent},
          {"hilbert", hilbert},
          {"generates_center", generates},
          {"passed", passed && independent && generates}};
}

}  // namespace

Poly random_poly(std::size_t nvars, int max_degree, int terms, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> deg(0, std::max(max_degree, 0));
  std::uniform_int_distribution<std::size_t> var(0, nvars - 1);
  std::uniform_int_distribution<int> num(-5, 4), den(1, 3);
  qcenter::PolyBuilder b(nvars);
  for (int t = 0; t < terms; ++t) {
    qcenter::Monomial m;
    const int d = deg(rng);
    for (int i = 0; i < d && nvars > 0; ++i) m = m * qcenter::Monomial::variable(var(rng));
    int a = num(rng);
    if (a >= 0) ++a;  // skip zero
    Scalar c(a, den(rng));
    c.canonicalize();
    b.add(m, c);
  }
  return b.build();
}

Poly random_weight_homogeneous(std::size_t nvars, int max_degree, int terms, std::span<const int> weights,
                               std::mt19937_64& rng) {
  for (;;) {
    const Poly f = random_poly(nvars, max_degree, terms, rng);
    if (f.is_zero()) continue;
    const long w = qcenter::weighted_degree(f.leading_term().first, weights);
    return qcenter::grade_decompose(f, weights).at(w);
  }
}

RunResult run_scenario(const Scenario& s, const RunOptions& options) {
  const int N = options.truncation.value_or(s.truncation);
  Scenario local = s;
  if (options.max_degree) local.max_degree = *options.max_degree;
  const int D = local.max_degree;
  const int Dtest = local.effective_test_degree();
  Context c{s, N, D, Dtest, s.action(N)};

  RunResult result;
  json tasks = json::array();
  for (const auto& name : s.tasks) {
    json t;
    try {
      if (name == "axioms") t = task_axioms(c);
      else if (name == "eq25") t = task_eq25(c);
      else if (name == "diagram1") t = task_diagram1(c);
      else if (name == "invariants") t = task_invariants(c);
      else if (name == "centers") t = task_centers(c);
      else if (name == "lift") t = task_lift(c);
      else if (name == "iso") t = task_iso(c);
      else if (name == "weyl") t = task_weyl(c);
    } catch (const qcenter::Error& e) {
      t = {{"error", e.what()}, {"passed", false}};
    }
    t["task"] = name;
    result.passed = result.passed && t["passed"].get<bool>();
    tasks.push_back(std::move(t));
  }
  result.report = {{"schema_version", kReportSchemaVersion},
                   {"scenario", s.name},
                   {"parameters",
                    {{"truncation", N}, {"max_degree", D}, {"test_degree", Dtest}, {"seed", s.checks.seed}}},
                   {"tasks", tasks},
                   {"passed", result.passed}};
  return result;
}

namespace {

const char* mark(const json& t) { return t.value("passed", false) ? "PASS" : "FAIL"; }

void render_task(std::ostream& os, const json& t) {
  const std::string name = t.at("task");
  os << "[" << mark(t) << "] " << name;
  if (t.contains("error")) {
    os << ": error: " << t["error"].get<std::string>() << "\n";
    return;
  }
  if (name == "axioms") {
    os << ": " << t["samples"] << " triples at order " << t["order"] << ", " << t["failures"].size()
       << " failures; homogeneity " << t["homogeneity"]["samples"] << " pairs, "
       << t["homogeneity"]["violations"].size() << " violations\n";
  } else if (name == "eq25") {
    os << ": " << t["checks"] << " commutator checks on " << t["samples"] << " samples, " << t["failures"].size()
       << " failures\n";
    for (const auto& f : t["failures"])
      os << "    generator " << f["generator"].get<std::string>() << " sample " << f["sample"] << " at hbar^"
         << f["order"] << "\n";
  } else if (name == "diagram1") {
    os << ": " << t["section_samples"] << " section samples, " << t["section_failures"].size() << " failures\n";
    for (const auto& g : t["generators"])
      os << "    " << g["z"].get<std::string>() << ": section " << (g["section"].get<bool>() ? "ok" : "FAIL")
         << ", pullback " << (g["pullback"].get<bool>() ? "ok" : "FAIL") << "\n";
  } else if (name == "invariants") {
    os << " up to degree " << t["max_degree"] << "\n";
    for (const auto& s : t["slices"]) {
      if (s["dimension"].get<std::size_t>() == 0) continue;
      os << "    degree " << s["degree"] << ": dim " << s["dimension"] << ", moment image dim "
         << s["moment_image_dimension"] << "\n";
    }
  } else if (name == "centers") {
    os << " (Dtest " << t["test_degree"] << ", N " << t["order"] << ")\n";
    os << "    " << std::setw(6) << "degree" << std::setw(9) << "inv-dim" << std::setw(13) << "poisson-dim"
       << std::setw(14) << "quantum-rank" << "\n";
    for (const auto& r : t["rows"])
      os << "    " << std::setw(6) << r["degree"].dump() << std::setw(9) << r["invariant_dim"].dump() << std::setw(13)
         << r["poisson_dim"].dump() << std::setw(14) << r["quantum_rank"].dump()
         << (r["equal"].get<bool>() ? "" : "  MISMATCH") << "\n";
  } else if (name == "lift") {
    os << " (N " << t["order"] << ")\n";
    for (const auto& l : t["lifts"]) {
      os << "    " << l["name"].get<std::string>() << " = " << l["f"].get<std::string>() << ": ";
      if (l.contains("obstruction"))
        os << "obstructed at hbar^" << l["obstruction"]["order"] << ", remainder "
           << l["obstruction"]["remainder"].get<std::string>() << "\n";
      else if (l.contains("error"))
        os << l["error"].get<std::string>() << "\n";
      else
        os << (l["passed"].get<bool>() ? "lift " : "FAILED lift ") << l["lift"].get<std::string>() << "\n";
      for (const auto& issue : l["relation_issues"]) os << "      " << issue.get<std::string>() << "\n";
    }
  } else if (name == "iso") {
    if (t.contains("violation"))
      os << ": relation " << t["violation"]["relation"].get<std::string>() << " fails at hbar^"
         << t["violation"]["order"] << "\n";
    else if (t.contains("obstruction"))
      os << ": " << t["obstruction"]["message"].get<std::string>() << "\n";
    else {
      os << ": generators " << t["entries"].size() << ", relations " << t["relations"].size() << "\n";
      for (const auto& e : t["entries"])
        os << "    " << e["name"].get<std::string>() << " -> " << e["lift"].get<std::string>() << " (weight "
           << e["weight"] << ")\n";
      for (const auto& r : t["relations"]) os << "    relation " << r.get<std::string>() << " = 0 holds\n";
    }
  } else if (name == "weyl") {
    os << ": jacobian rank " << t["jacobian_rank"] << "/" << t["generators"].size() << ", generates center "
       << (t["generates_center"].get<bool>() ? "yes" : "no") << "\n";
    for (const auto& g : t["generators"]) {
      os << "    " << g["name"].get<std::string>() << " -> ";
      if (g.contains("error"))
        os << g["error"].get<std::string>() << "\n";
      else
        os << g["weyl"].get<std::string>() << (g["central"].get<bool>() ? " (central)" : " (NOT central)") << "\n";
    }
  } else {
    os << "\n";
  }
}

}  // namespace

std::string emit_report(const json& report, ReportFormat format) {
  if (format == ReportFormat::json) return report.dump(2) + "\n";
  std::ostringstream os;
  os << "scenario " << report.value("scenario", std::string()) << "\n";
  if (report.contains("parameters")) {
    const auto& p = report["parameters"];
    os << "truncation " << p["truncation"] << ", max degree " << p["max_degree"] << ", test degree "
       << p["test_degree"] << ", seed " << p["seed"] << "\n";
  }
  for (const auto& t : report.value("tasks", json::array())) render_task(os, t);
  os << (report.value("passed", true) ? "PASS" : "FAIL") << "\n";
  return os.str();
}

}  // namespace qcli
