#include "qcenter/invcenter.hpp"

#include <algorithm>
#include <map>

#include "qcenter/errors.hpp"

namespace qcenter {

namespace {

std::vector<Poly> kernel_to_polys(const std::vector<std::vector<Scalar>>& kernel, std::span<const Poly> basis,
                                  std::size_t nvars) {
  std::vector<Poly> out;
  for (const auto& v : kernel) out.push_back(combine(basis, v, nvars));
  return reduce_basis(out);
}

void require_degrees(int D, int Dtest) {
  if (D < 0) throw PreconditionError("degree bound must be nonnegative");
  if (Dtest < D) throw PreconditionError("test degree must be at least the degree bound");
}

}  // namespace

GradedSubspace invariants_up_to(const HamiltonianAction& act, int D) {
  if (D < 0) throw PreconditionError("degree bound must be nonnegative");
  const std::size_t n = act.space().dim();
  const std::size_t d = act.lie().dim();
  GradedSubspace out;
  for (int deg = 0; deg <= D; ++deg) {
    std::vector<Poly> monos;
    for (const auto& m : monomials_of_degree(n, static_cast<unsigned>(deg))) monos.push_back(Poly::term(n, m, Scalar(1)));
    KernelBuilder kb(monos.size());
    for (std::size_t j = 0; j < monos.size(); ++j)
      for (std::size_t i = 0; i < d; ++i) kb.add(j, i, act.velocity(i, monos[j]));
    out.slices[deg] = kernel_to_polys(kb.kernel(), monos, n);
  }
  return out;
}

GradedSubspace moment_image_basis(const HamiltonianAction& act, int D) {
  if (D < 0) throw PreconditionError("degree bound must be nonnegative");
  const std::size_t n = act.space().dim();
  std::vector<Poly> gens;
  for (const auto& z : act.lie().invariant_generators()) {
    Poly g = act.pullback(z);
    if (g.is_zero() || g.degree() == 0) continue;
    if (!g.is_homogeneous()) throw PreconditionError("pullback of a designated generator is not homogeneous");
    gens.push_back(std::move(g));
  }
  std::map<int, std::vector<Poly>> raw;
  // depth-first over exponent vectors of the generators
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
  visit(visit, 0, Poly::constant(n, Scalar(1)), 0);
  GradedSubspace out;
  for (int deg = 0; deg <= D; ++deg) out.slices[deg] = reduce_basis(raw[deg]);
  return out;
}

GradedSubspace poisson_center_up_to(const HamiltonianAction& act, int D, int Dtest) {
  require_degrees(D, Dtest);
  const std::size_t n = act.space().dim();
  const GradedSubspace inv = invariants_up_to(act, Dtest);
  std::vector<Poly> tests;
  for (const auto& u : inv.flatten(Dtest))
    if (u.degree() > 0) tests.push_back(u);
  GradedSubspace out;
  for (int deg = 0; deg <= D; ++deg) {
    const auto& basis = inv.slice(deg);
    KernelBuilder kb(basis.size());
    for (std::size_t j = 0; j < basis.size(); ++j)
      for (std::size_t t = 0; t < tests.size(); ++t) kb.add(j, t, act.star().poisson(basis[j], tests[t]));
    out.slices[deg] = kernel_to_polys(kb.kernel(), basis, n);
  }
  return out;
}

const QuantumSlice& QuantumCenter::slice(int degree) const {
  for (const auto& s : slices)
    if (s.degree == degree) return s;
  throw PreconditionError("no quantum slice of degree " + std::to_string(degree));
}

QuantumCenter quantum_center_up_to(const HamiltonianAction& act, int D, int Dtest, int N) {
  require_degrees(D, Dtest);
  if (N < 0) throw PreconditionError("negative truncation order");
  const std::size_t n = act.space().dim();
  const StarProduct star = act.star().with_order(N);
  const GradedSubspace inv = invariants_up_to(act, Dtest);
  std::vector<Poly> tests;
  for (const auto& u : inv.flatten(Dtest))
    if (u.degree() > 0) tests.push_back(u);

  // commutator table keyed by (degree, basis index, test index)
  std::map<std::tuple<int, std::size_t, std::size_t>, HSeries> table;
  auto bracket = [&](int deg, std::size_t b, std::size_t t) -> const HSeries& {
    auto key = std::make_tuple(deg, b, t);
    auto it = table.find(key);
    if (it == table.end()) it = table.emplace(key, star.commutator(inv.slice(deg)[b], tests[t])).first;
    return it->second;
  };

  QuantumCenter out;
  out.order = N;
  const std::size_t slots = static_cast<std::size_t>(N) + 1;
  for (int deg = 0; deg <= D; ++deg) {
    struct Unknown {
      int m;
      int basis_degree;
      std::size_t b;
    };
    std::vector<Unknown> unknowns;
    std::size_t order0 = 0;
    for (int m = 0; m <= N && deg - 2 * m >= 0; ++m)
      for (std::size_t b = 0; b < inv.slice(deg - 2 * m).size(); ++b) {
        unknowns.push_back({m, deg - 2 * m, b});
        if (m == 0) ++order0;
      }
    KernelBuilder kb(unknowns.size());
    for (std::size_t j = 0; j < unknowns.size(); ++j) {
      const auto& u = unknowns[j];
      for (std::size_t t = 0; t < tests.size(); ++t) {
        const HSeries& c = bracket(u.basis_degree, u.b, t);
        for (int l = 0; u.m + l <= N; ++l)
          if (!c[l].is_zero()) kb.add(j, t * slots + static_cast<std::size_t>(u.m + l), c[l]);
      }
    }
    const auto kernel = kb.kernel();
    RowEchelon rref(unknowns.size());
    for (const auto& v : kernel) rref.add(v);

    QuantumSlice slice;
    slice.degree = deg;
    slice.raw_dimension = kernel.size();
    for (std::size_t r = 0; r < rref.rank(); ++r) {
      if (rref.pivots()[r] >= order0) break;
      HSeries F(n, N);
      const auto& row = rref.rows()[r];
      for (std::size_t j = 0; j < unknowns.size(); ++j)
        if (!is_zero(row[j])) F[unknowns[j].m] += inv.slice(unknowns[j].basis_degree)[unknowns[j].b] * row[j];
      slice.generators.push_back(std::move(F));
    }
    slice.rank = slice.generators.size();
    out.slices.push_back(std::move(slice));
  }
  return out;
}

std::vector<int> CenterReport::mismatches() const {
  std::vector<int> bad;
  for (const auto& r : rows)
    if (!r.equal()) bad.push_back(r.degree);
  return bad;
}

CenterReport compare_centers(const HamiltonianAction& act, int D, int Dtest, int N) {
  require_degrees(D, Dtest);
  const GradedSubspace inv = invariants_up_to(act, D);
  const GradedSubspace pc = poisson_center_up_to(act, D, Dtest);
  const QuantumCenter qc = quantum_center_up_to(act, D, Dtest, N);
  CenterReport report;
  report.max_degree = D;
  report.test_degree = Dtest;
  report.order = N;
  for (int deg = 0; deg <= D; ++deg) {
    CenterRow row;
    row.degree = deg;
    row.invariant_dim = inv.dimension(deg);
    row.poisson_dim = pc.dimension(deg);
    row.poisson_basis = pc.slice(deg);
    const auto& qs = qc.slice(deg);
    row.quantum_rank = qs.rank;
    row.quantum_raw_dim = qs.raw_dimension;
    row.quantum_generators = qs.generators;
    for (const auto& g : qs.generators)
      if (!in_span(g[0], row.poisson_basis)) row.triangle = false;
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace qcenter
