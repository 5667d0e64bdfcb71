#include "qcenter/henselift.hpp"

#include "qcenter/invcenter.hpp"

namespace qcenter {

namespace {

// Product assembled term by term from the bidifferential operators, kept
// separate from StarProduct::star for the verification path.
HSeries expanded_product(const StarProduct& star, const HSeries& F, const HSeries& G, int N) {
  HSeries out(F.nvars(), N);
  for (int a = 0; a <= std::min(N, F.order()); ++a) {
    if (F[a].is_zero()) continue;
    for (int b = 0; a + b <= N && b <= G.order(); ++b) {
      if (G[b].is_zero()) continue;
      for (int l = 0; a + b + l <= N; ++l) out[a + b + l] += star.bidifferential(l, F[a], G[b]);
    }
  }
  return out;
}

Poly classical_value(const MonicRelation& rel, const Poly& f) {
  Poly power = Poly::constant(f.nvars(), Scalar(1));
  Poly sum(f.nvars());
  for (std::size_t i = 0; i < rel.degree(); ++i) {
    sum += rel.a[i] * power;
    power = power * f;
  }
  return sum + power;
}

Poly classical_derivative(const MonicRelation& rel, const Poly& f) {
  const std::size_t n = rel.degree();
  Poly out = Poly::constant(f.nvars(), Scalar(static_cast<unsigned long>(n))) * f.pow(static_cast<unsigned>(n - 1));
  Poly power = Poly::constant(f.nvars(), Scalar(1));
  for (std::size_t i = 1; i < n; ++i) {
    out += rel.a[i] * power * Scalar(static_cast<unsigned long>(i));
    power = power * f;
  }
  return out;
}

void require_shape(const MonicRelation& rel, const HamiltonianAction& act) {
  if (rel.a.empty()) throw PreconditionError("monic relation of degree 0");
  if (rel.ahat.size() != rel.a.size()) throw DimensionError("relation needs one quantum coefficient per coefficient");
  for (std::size_t i = 0; i < rel.a.size(); ++i)
    if (rel.a[i].nvars() != act.space().dim() || rel.ahat[i].nvars() != act.space().dim())
      throw DimensionError("relation coefficient over the wrong space");
}

std::vector<Poly> nonconstant(const std::vector<Poly>& basis) {
  std::vector<Poly> out;
  for (const auto& u : basis)
    if (u.degree() > 0) out.push_back(u);
  return out;
}

}  // namespace

MonicRelation make_relation(const HamiltonianAction& act, std::span<const Poly> sg_coefficients,
                            std::span<const HSeries> corrections) {
  if (!corrections.empty() && corrections.size() != sg_coefficients.size())
    throw DimensionError("need one correction per relation coefficient");
  EnvelopingAlgebra U(act.lie(), act.order());
  MonicRelation rel;
  for (std::size_t i = 0; i < sg_coefficients.size(); ++i) {
    rel.a.push_back(act.pullback(sg_coefficients[i]));
    HSeries ahat = comoment(U.symmetrize(sg_coefficients[i]), act);
    if (!corrections.empty()) {
      const HSeries& c = corrections[i];
      if (c.nvars() != act.space().dim()) throw DimensionError("correction over the wrong space");
      if (!c[0].is_zero()) throw PreconditionError("relation corrections must be divisible by hbar");
      ahat += c.truncated(act.order());
    }
    rel.ahat.push_back(std::move(ahat));
  }
  return rel;
}

std::vector<std::string> validate_relation(const Poly& f, const MonicRelation& rel, const HamiltonianAction& act,
                                           int Dtest) {
  require_shape(rel, act);
  std::vector<std::string> issues;
  const auto& space = act.space();
  if (!classical_value(rel, f).is_zero()) issues.push_back("P(f) != 0 for f = " + space.format(f));
  for (std::size_t i = 0; i < rel.degree(); ++i)
    if (rel.ahat[i][0] != rel.a[i]) issues.push_back("quantum coefficient " + std::to_string(i) + " != a_i mod hbar");
  if (!f.is_homogeneous()) {
    issues.push_back("f is not homogeneous");
    return issues;
  }
  const int e = f.degree();
  const std::size_t n = rel.degree();
  const GradedSubspace B = moment_image_basis(act, e * static_cast<int>(n));
  for (std::size_t i = 0; i < n; ++i) {
    const Poly& a = rel.a[i];
    for (int deg = 0; deg <= a.degree(); ++deg) {
      Poly part = a.homogeneous_part(deg);
      if (!part.is_zero() && !in_span(part, B.slice(deg)))
        issues.push_back("coefficient a_" + std::to_string(i) + " is not in the moment image");
    }
  }
  // minimality: f^r is not in span{b f^j : j < r, b in B_{e(r-j)}}
  for (std::size_t r = 1; r < n && e > 0; ++r) {
    std::vector<Poly> span_set;
    Poly fj = Poly::constant(f.nvars(), Scalar(1));
    for (std::size_t j = 0; j < r; ++j) {
      for (const auto& b : B.slice(e * static_cast<int>(r - j))) span_set.push_back(b * fj);
      fj = fj * f;
    }
    if (in_span(fj, reduce_basis(span_set)))
      issues.push_back("relation is not minimal: f satisfies a monic relation of degree " + std::to_string(r));
  }
  const auto tests = nonconstant(invariants_up_to(act, Dtest).flatten(Dtest));
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& u : tests)
      if (auto o = act.star().star_commutator(rel.ahat[i], act.star().embed(u)).lowest_order()) {
        issues.push_back("quantum coefficient " + std::to_string(i) + " is not central: fails against " +
                         space.format(u) + " at hbar^" + std::to_string(*o));
        break;
      }
  return issues;
}

HSeries evaluate_relation(const StarProduct& star, const MonicRelation& rel, const HSeries& F) {
  HSeries power = star.unit();
  HSeries sum(F.nvars(), star.order());
  for (std::size_t i = 0; i < rel.degree(); ++i) {
    sum += star.star(rel.ahat[i].truncated(star.order()), power);
    power = star.star(power, F);
  }
  return sum + power;
}

LiftResult hensel_lift(const Poly& f, const MonicRelation& rel, const HamiltonianAction& act, int N) {
  require_shape(rel, act);
  if (N < 0) throw PreconditionError("negative truncation order");
  const auto& space = act.space();
  if (f.nvars() != space.dim()) throw DimensionError("lift target over the wrong space");
  if (!f.is_homogeneous()) throw PreconditionError("lift target must be homogeneous");
  for (std::size_t i = 0; i < act.lie().dim(); ++i)
    if (!act.velocity(i, f).is_zero()) throw PreconditionError("lift target " + space.format(f) + " is not invariant");
  if (!classical_value(rel, f).is_zero()) throw PreconditionError("P(f) != 0 for f = " + space.format(f));
  for (std::size_t i = 0; i < rel.degree(); ++i) {
    if (rel.ahat[i].order() < N) throw DimensionError("quantum coefficients are truncated below the lift order");
    if (rel.ahat[i][0] != rel.a[i]) throw PreconditionError("quantum coefficient does not reduce to a_i mod hbar");
  }

  LiftResult result{HSeries(f, N), classical_derivative(rel, f), {}};
  if (result.derivative.is_zero()) throw NonSimpleRootError("dP/dt(f) = 0 for f = " + space.format(f));
  const StarProduct star = act.star().with_order(N);
  for (int m = 0; m < N; ++m) {
    const HSeries defect = evaluate_relation(star, rel, result.lift);
    if (auto low = defect.lowest_order(); low && *low <= m)
      throw LiftObstruction(*low, defect[*low], defect[*low],
                            "relation defect reappeared at hbar^" + std::to_string(*low));
    const Poly target = -defect[m + 1];
    auto [quotient, remainder] = divide(target, result.derivative);
    if (!remainder.is_zero())
      throw LiftObstruction(m + 1, target, remainder,
                            "lift obstructed at hbar^" + std::to_string(m + 1) + ": " + space.format(target) +
                                " is not divisible by " + space.format(result.derivative) + ", remainder " +
                                space.format(remainder) +
                                "; a localized solution may exist but is not attempted, and another choice of "
                                "quantum coefficients might avoid it");
    result.lift[m + 1] = quotient;
    result.steps.push_back({m + 1, target, std::move(quotient)});
  }
  return result;
}

LiftVerification verify_lift(const HSeries& fhat, const MonicRelation& rel, const HamiltonianAction& act, int N,
                             int Dtest) {
  require_shape(rel, act);
  LiftVerification v;
  v.order = N;
  const StarProduct star = act.star().with_order(N);
  const HSeries F = fhat.truncated(N);

  HSeries power = star.unit();
  HSeries total(F.nvars(), N);
  for (std::size_t i = 0; i < rel.degree(); ++i) {
    total += expanded_product(star, rel.ahat[i].truncated(N), power, N);
    power = expanded_product(star, power, F, N);
  }
  total += power;
  v.relation_order = total.lowest_order();

  for (const auto& u : nonconstant(invariants_up_to(act, Dtest).flatten(Dtest))) {
    const HSeries U = star.embed(u);
    const HSeries c = expanded_product(star, F, U, N) - expanded_product(star, U, F, N);
    if (auto o = c.lowest_order(); o && (!v.centrality_order || *o < *v.centrality_order)) {
      v.centrality_order = o;
      v.centrality_witness = u;
    }
  }
  return v;
}

std::optional<long> kx_weight(const SymplecticSpace& space, const Poly& f, int m) {
  const auto parts = grade_decompose(f, space.weights());
  if (parts.size() != 1) return std::nullopt;
  return parts.begin()->first - static_cast<long>(space.hbar_weight()) * m;
}

bool IsoTable::passed() const {
  for (const auto& e : entries)
    if (!e.equivariant || !e.triangle) return false;
  return true;
}

IsoTable build_center_iso(std::span<const LiftRequest> gens, std::span<const Poly> relations,
                          const HamiltonianAction& act, int N) {
  const auto& space = act.space();
  IsoTable table;
  table.order = N;
  std::vector<std::string> names;
  std::vector<HSeries> lifts;
  for (const auto& g : gens) {
    IsoEntry e;
    e.name = g.name;
    e.f = g.f;
    e.lift = hensel_lift(g.f, g.relation, act, N).lift;
    e.triangle = e.lift[0] == g.f;
    const auto w = kx_weight(space, g.f);
    e.weight = w.value_or(0);
    e.equivariant = w.has_value();
    for (int m = 0; m <= N && e.equivariant; ++m)
      if (!e.lift[m].is_zero() && kx_weight(space, e.lift[m], m) != w) e.equivariant = false;
    names.push_back(g.name);
    lifts.push_back(e.lift);
    table.entries.push_back(std::move(e));
  }
  const StarProduct star = act.star().with_order(N);
  for (const auto& r : relations) {
    if (r.nvars() != gens.size()) throw DimensionError("relation must be a polynomial in the generators");
    const std::string text = to_string(r, names);
    HSeries value(space.dim(), N);
    for (const auto& [m, c] : r.terms()) {
      HSeries prod = star.unit();
      for (std::size_t i = 0; i < gens.size(); ++i)
        if (m.exponent(i) > 0) prod = star.star(prod, star.star_power(lifts[i], m.exponent(i)));
      value += prod * c;
    }
    if (auto o = value.lowest_order())
      throw RelationViolation(text, *o, "relation " + text + " = 0 fails under the star product at hbar^" +
                                            std::to_string(*o));
    table.relations.push_back(text);
  }
  return table;
}

}  // namespace qcenter
