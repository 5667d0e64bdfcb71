// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
// All identities are exact over Q; the tolerance is zero everywhere.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "oracle.hpp"
#include "qcenter/envalg.hpp"
#include "qcenter/henselift.hpp"
#include "qcenter/invcenter.hpp"
#include "qcenter/weyl.hpp"
#include "qcli/runner.hpp"

using namespace qcenter;

namespace {

constexpr long kTolerance = 0;  // exact arithmetic: residuals must vanish identically

struct Outcome {
  bool passed = true;
  std::string detail;
};

qcli::Scenario preset(const std::string& name) { return qcli::parse_scenario_text(qcli::presets().at(name)); }

// 1. axioms on 100 triples, n = 2, degree <= 6, N = 10
Outcome star_axioms() {
  const auto space = SymplecticSpace::standard(2);
  const int N = 10;
  StarProduct star(space, N);
  oracle::Rng rng(101);
  std::vector<PolyTriple> triples;
  for (int i = 0; i < 100; ++i)
    triples.push_back({oracle::random_poly(4, 6, 4, rng), oracle::random_poly(4, 6, 4, rng),
                       oracle::random_poly(4, 6, 4, rng)});
  const auto report = check_axioms(star, triples);
  std::size_t failures = 0;
  for (const auto& s : report.samples) failures += s.passed() ? 0 : 1;
  // independent Moyal expansion on the same pairs
  std::size_t oracle_mismatch = 0;
  for (const auto& t : triples) {
    const auto ref = oracle::moyal(oracle::from(t.f), oracle::from(t.g), 2, N);
    const auto mine = star.moyal(t.f, t.g);
    for (int m = 0; m <= N; ++m)
      if (oracle::to(ref[static_cast<std::size_t>(m)], 4) != mine[m]) {
        ++oracle_mismatch;
        break;
      }
  }
  std::ostringstream os;
  os << report.samples.size() << " triples, " << failures << " failing, " << oracle_mismatch
     << " oracle mismatches";
  return {report.samples.size() == 100 && failures == 0 && oracle_mismatch == 0 && report.passed(), os.str()};
}

// 2. D_l degree law on 50 homogeneous pairs, default weights, k = 2
Outcome homogeneity() {
  const auto space = SymplecticSpace::standard(2);
  StarProduct star(space, 8);
  oracle::Rng rng(202);
  std::vector<std::pair<Poly, Poly>> pairs;
  while (pairs.size() < 50) {
    Poly f = oracle::random_homogeneous(4, rng.range(0, 5), 3, rng);
    Poly g = oracle::random_homogeneous(4, rng.range(0, 5), 3, rng);
    if (f.is_zero() || g.is_zero()) continue;
    pairs.emplace_back(std::move(f), std::move(g));
  }
  const auto report = check_homogeneity(star, pairs);
  // by total degree: D_l(f, g) must be homogeneous of degree deg f + deg g - 2l
  std::size_t degree_law = 0;
  for (const auto& [f, g] : pairs) {
    const auto ref = oracle::moyal(oracle::from(f), oracle::from(g), 2, 8);
    for (int l = 0; l <= 8; ++l)
      for (const auto& [e, c] : ref[static_cast<std::size_t>(l)]) {
        int d = 0;
        for (int x : e) d += x;
        if (d != static_cast<int>(f.degree() + g.degree()) - 2 * l) ++degree_law;
      }
  }
  std::ostringstream os;
  os << report.samples << " pairs, " << report.violations.size() << " violations, " << degree_law
     << " oracle degree-law violations";
  return {report.samples == 50 && report.passed() && degree_law == 0, os.str()};
}

// 3. [Hhat, f] - hbar {H, f} = 0 on 50 random f of degree <= 6 per scenario
Outcome quantum_hamiltonians() {
  std::ostringstream os;
  bool ok = true;
  for (const char* name : {"torus_k2", "torus_k4_stress", "sl2_tstar_k2"}) {
    const auto s = preset(name);
    const auto act = s.action(8);
    oracle::Rng rng(303);
    std::vector<Poly> samples;
    for (int i = 0; i < 50; ++i) samples.push_back(oracle::random_poly(act.space().dim(), 6, 4, rng));
    const auto report = check_eq25(act, samples);
    std::size_t failures = 0;
    for (const auto& r : report.rows) failures += r.passed ? 0 : 1;
    // independent: odd Moyal terms against the oracle bracket
    std::size_t oracle_failures = 0;
    for (std::size_t i = 0; i < act.classical().size(); ++i)
      for (const auto& f : samples) {
        const auto H = oracle::from(act.classical()[i]);
        const auto a = oracle::moyal(H, oracle::from(f), act.space().pairs(), 8);
        const auto b = oracle::moyal(oracle::from(f), H, act.space().pairs(), 8);
        for (int m = 0; m <= 8; ++m) {
          auto diff = oracle::add(a[static_cast<std::size_t>(m)], b[static_cast<std::size_t>(m)], -1);
          if (m == 1) diff = oracle::add(diff, oracle::bracket(H, oracle::from(f), act.space().pairs()), -1);
          if (!diff.empty()) {
            ++oracle_failures;
            break;
          }
        }
      }
    ok = ok && report.passed() && failures == 0 && oracle_failures == 0 && samples.size() == 50;
    os << name << ": " << report.rows.size() << " rows, " << failures + oracle_failures << " failing; ";
  }
  return {ok, os.str()};
}

// 4. classical_limit o symmetrize = id, and the pullback square for designated invariants
Outcome diagram_one() {
  std::ostringstream os;
  bool ok = true;
  oracle::Rng rng(404);
  for (const auto& [label, lie] : {std::pair{"sl2", LieAlgebraData::sl2()}, std::pair{"abelian", LieAlgebraData::abelian(3)}}) {
    EnvelopingAlgebra U(lie, 6);
    std::size_t failures = 0;
    for (int i = 0; i < 30; ++i) {
      const Poly z = oracle::random_poly(lie.dim(), 3, 3, rng);
      if (classical_limit(symmetrize(U, z)) != z) ++failures;
    }
    ok = ok && failures == 0;
    os << label << " sections 30, " << failures
       << " failing; ";
  }
  for (const auto& [name, text] : qcli::presets()) {
    const auto s = qcli::parse_scenario_text(text);
    const auto act = s.action(6);
    std::size_t failures = 0;
    for (const auto& z : act.lie().invariant_generators())
      if (!check_diagram1(z, act).passed()) ++failures;
    ok = ok && failures == 0;
    os << name << " generators " << act.lie().invariant_generators().size() << ", " << failures << " failing; ";
  }
  return {ok, os.str()};
}

// 5. PBW confluence and associativity, sl2 commutator, Casimir invariance
Outcome enveloping() {
  const auto lie = LieAlgebraData::sl2();
  EnvelopingAlgebra U(lie, 6);
  oracle::Rng rng(505);
  std::size_t confluence = 0, assoc = 0;
  auto random_word = [&](int max_len) {
    std::vector<std::size_t> w;
    const int len = rng.range(0, max_len);
    for (int i = 0; i < len; ++i) w.push_back(static_cast<std::size_t>(rng.range(0, 2)));
    return w;
  };
  for (int i = 0; i < 40; ++i) {
    const auto w = random_word(6);
    const auto left = U.normalize(w, {Scalar(1)}, RewriteOrder::leftmost);
    if (U.normalize(w, {Scalar(1)}, RewriteOrder::rightmost) != left ||
        U.normalize(w, {Scalar(1)}, RewriteOrder::random, rng.next()) != left)
      ++confluence;
  }
  for (int i = 0; i < 20; ++i) {
    const auto a = U.normalize(random_word(3), {oracle::random_coeff(rng)});
    const auto b = U.normalize(random_word(3), {oracle::random_coeff(rng)});
    const auto c = U.normalize(random_word(3), {oracle::random_coeff(rng)});
    if (U.mul(U.mul(a, b), c) != U.mul(a, U.mul(b, c))) ++assoc;
  }
  const auto e = U.generator(0), h = U.generator(1), f = U.generator(2);
  const bool ef = U.mul(e, f) - U.mul(f, e) == h.hbar_shifted(1);
  const bool casimir = adjoint_invariant_check(U, symmetrize(U, lie.parse("h^2 + 4*e*f")));
  std::ostringstream os;
  os << "confluence failures " << confluence << "/40, associativity failures " << assoc << "/20, ef - fe = hbar h "
     << (ef ? "yes" : "no") << ", Casimir central " << (casimir ? "yes" : "no");
  return {confluence == 0 && assoc == 0 && ef && casimir, os.str()};
}

// 6. torus invariants against weight-zero monomial enumeration, degree <= 8
Outcome torus_oracle() {
  std::ostringstream os;
  bool ok = true;
  for (const char* name : {"torus_k2", "torus_k4_stress"}) {
    const auto s = preset(name);
    const auto act = s.action(0);
    const std::size_t n = act.space().pairs(), nv = 2 * n;
    const auto inv = invariants_up_to(act, 8);
    std::size_t bad = 0;
    for (int d = 0; d <= 8; ++d) {
      std::vector<Poly> expected;
      for (const auto& ex : oracle::exponent_vectors(nv, d)) {
        int w = 0;
        for (std::size_t i = 0; i < n; ++i) w += ex[i] - ex[n + i];
        if (w == 0) expected.push_back(oracle::to({{ex, 1}}, nv));
      }
      if (inv.slice(d) != reduce_basis(expected)) ++bad;
    }
    ok = ok && bad == 0;
    os << name << ": " << bad << " mismatching degrees; ";
  }
  return {ok, os.str()};
}

// 7. sl2 lift of q1p1 + q2p2 through N = 8
Outcome sl2_lift() {
  const int N = 8;
  const auto s = preset("sl2_tstar_k2");
  const auto act = s.action(N);
  const auto reqs = s.lift_requests(act);
  const auto& req = reqs.front();
  const Poly E = act.space().parse("q1*p1 + q2*p2");
  const bool classical_P = req.f == E && req.relation.a.size() == 2 &&
                           req.relation.a[0] == act.pullback(act.lie().parse("-(h^2 + 4*e*f)")) &&
                           req.relation.a[1].is_zero();
  const auto r = hensel_lift(req.f, req.relation, act, N);
  const int Dtest = s.effective_test_degree();
  const auto v = verify_lift(r.lift, req.relation, act, N, Dtest);
  // centrality mod hbar^9 against the invariant generators, by the oracle Moyal product
  std::size_t noncentral = 0;
  const auto gens = moment_image_basis(act, 2).flatten(2);
  for (const auto& g : gens) {
    oracle::OPoly total;
    std::vector<oracle::OPoly> comm(static_cast<std::size_t>(N) + 1);
    for (int m = 0; m <= N; ++m) {
      const auto fm = oracle::from(r.lift[m]);
      const auto a = oracle::moyal(fm, oracle::from(g), 2, N);
      const auto b = oracle::moyal(oracle::from(g), fm, 2, N);
      for (int l = 0; m + l <= N; ++l) {
        auto& slot = comm[static_cast<std::size_t>(m + l)];
        slot = oracle::add(slot, oracle::add(a[static_cast<std::size_t>(l)], b[static_cast<std::size_t>(l)], -1));
      }
    }
    for (const auto& c : comm)
      if (!c.empty()) {
        ++noncentral;
        break;
      }
  }
  std::ostringstream os;
  os << "lift " << act.space().format(r.lift[0]) << " + O(hbar), " << r.steps.size() << " steps, verify_lift "
     << (v.passed() ? "passed" : "failed") << ", invariant generators " << gens.size() << ", non-central "
     << noncentral << ", a-hat_0 = -(E*E)";
  return {classical_P && v.passed() && noncentral == 0 && r.lift[0] == E && r.lift.order() == N, os.str()};
}

// 8. Poisson-center dimension == quantum-center rank, degree <= 8, and the mod-hbar triangle
Outcome centers() {
  std::ostringstream os;
  bool ok = true;
  for (const auto& [name, text] : qcli::presets()) {
    const auto s = qcli::parse_scenario_text(text);
    const int N = s.truncation;
    const auto act = s.action(N);
    const auto report = compare_centers(act, 8, s.effective_test_degree(), N);
    const auto table = build_center_iso(s.lift_requests(act), s.relations(), act, N);
    bool triangle = true;
    for (const auto& e : table.entries) triangle = triangle && e.triangle && e.equivariant;
    ok = ok && report.passed() && report.rows.size() == 9 && table.passed() && triangle;
    os << name << ": mismatches " << report.mismatches().size() << ", lifted " << table.entries.size()
       << (triangle ? " triangle ok; " : " triangle broken; ");
  }
  return {ok, os.str()};
}

// 9. Weyl specialization: central, independent, matching the classical generators
Outcome weyl() {
  std::ostringstream os;
  bool ok = true;
  for (const auto& [name, text] : qcli::presets()) {
    const auto s = qcli::parse_scenario_text(text);
    const int N = s.truncation;
    const auto act = s.action(N);
    const auto& space = act.space();
    const auto invariants = invariants_up_to(act, 2);
    const std::vector<Poly> quadratic = invariants.slice(2);
    std::vector<Poly> specialized, classical;
    std::size_t noncentral = 0;
    const auto reqs = s.lift_requests(act);
    for (const auto& gen : s.center_generators) {
      const auto it = std::find_if(reqs.begin(), reqs.end(), [&](const auto& r) { return r.name == gen; });
      if (it == reqs.end()) return {false, "no lift for " + gen};
      const auto lift = hensel_lift(it->f, it->relation, act, N).lift;
      const Poly w = weyl_specialize(lift, space);
      noncentral += weyl_noncentral(space, w, quadratic).size();
      specialized.push_back(w);
      classical.push_back(it->f);
    }
    // generators of the classical center: independent with the same count
    std::vector<Poly> center;
    const auto pc = poisson_center_up_to(act, 4, s.effective_test_degree());
    for (int d = 1; d <= 4; ++d)
      for (const auto& z : pc.slice(d)) center.push_back(z);
    const auto expected = jacobian_rank(center, 9);
    const auto rank_w = jacobian_rank(specialized, 9);
    const auto rank_c = jacobian_rank(classical, 9);
    const bool good = noncentral == 0 && rank_w == specialized.size() && rank_c == rank_w &&
                      specialized.size() == expected;
    ok = ok && good;
    os << name << ": " << specialized.size() << " generators, Jacobian rank " << rank_w << ", non-central "
       << noncentral << "; ";
  }
  return {ok, os.str()};
}

// 10. two full runs, byte-identical JSON
Outcome determinism() {
  std::string first, second;
  for (std::string* out : {&first, &second})
    for (const auto& [name, text] : qcli::presets())
      *out += qcli::emit_report(qcli::run_scenario(qcli::parse_scenario_text(text)).report, qcli::ReportFormat::json);
  std::ostringstream os;
  os << first.size() << " bytes per run";
  return {!first.empty() && first == second, os.str()};
}

}  // namespace

int main() {
  static_assert(kTolerance == 0);
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"star-product axioms", star_axioms},
      {"homogeneity", homogeneity},
      {"quantum hamiltonian identity", quantum_hamiltonians},
      {"symmetrization section and pullback", diagram_one},
      {"enveloping algebra", enveloping},
      {"torus invariants vs enumeration", torus_oracle},
      {"sl2 lift", sl2_lift},
      {"center comparison", centers},
      {"Weyl specialization", weyl},
      {"determinism", determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += o.passed ? 0 : 1;
    std::printf("criterion %zu: %s  %s (%.2fs) %s\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first.c_str(),
                secs, o.detail.c_str());
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
