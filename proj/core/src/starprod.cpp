#include "qcenter/starprod.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <unordered_map>

#include "qcenter/errors.hpp"

namespace qcenter {

struct StarProduct::Tables {
  std::mutex mutex;
  std::map<int, std::vector<Stencil>> by_order;
};

StarProduct::StarProduct(SymplecticSpace space, int order)
    : space_(std::move(space)), order_(order), tables_(std::make_shared<Tables>()) {
  if (order_ < 0) throw PreconditionError("negative truncation order");
}

StarProduct StarProduct::with_order(int order) const {
  StarProduct s = *this;
  if (order < 0) throw PreconditionError("negative truncation order");
  s.order_ = order;
  return s;
}

const std::vector<StarProduct::Stencil>& StarProduct::stencils(int l) const {
  std::lock_guard lock(tables_->mutex);
  if (auto it = tables_->by_order.find(l); it != tables_->by_order.end()) return it->second;

  // Expand (sum_e P_e d_i (x) d_j)^l / (2^l l!) by the multinomial theorem:
  // each composition alpha of l over the nonzero entries contributes
  // prod_e P_e^alpha_e / alpha_e! / 2^l.
  const auto& entries = space_.nonzero_entries();
  std::map<std::pair<Monomial, Monomial>, Scalar> merged;
  std::vector<unsigned> alpha(entries.size(), 0);
  const Scalar scale = Scalar(1) / Scalar(mpz_class(1) << static_cast<unsigned>(l));
  std::function<void(std::size_t, int)> rec = [&](std::size_t e, int left) {
    if (e == entries.size()) {
      if (left != 0) return;
      Monomial a, b;
      Scalar w = scale;
      for (std::size_t k = 0; k < entries.size(); ++k) {
        if (alpha[k] == 0) continue;
        a = a * Monomial::variable(entries[k].i, alpha[k]);
        b = b * Monomial::variable(entries[k].j, alpha[k]);
        for (unsigned r = 0; r < alpha[k]; ++r) w *= entries[k].value;
        w /= factorial(alpha[k]);
      }
      merged[{a, b}] += w;
      return;
    }
    for (int k = 0; k <= left; ++k) {
      alpha[e] = static_cast<unsigned>(k);
      rec(e + 1, left - k);
    }
    alpha[e] = 0;
  };
  rec(0, l);
  std::vector<Stencil> out;
  for (auto& [key, w] : merged)
    if (!is_zero(w)) out.push_back({key.first, key.second, w});
  return tables_->by_order.emplace(l, std::move(out)).first->second;
}

void StarProduct::require_space(const Poly& f) const {
  if (f.nvars() != space_.dim())
    throw DimensionError("polynomial over " + std::to_string(f.nvars()) + " variables, space has " +
                         std::to_string(space_.dim()));
}

Poly StarProduct::bidifferential(int l, const Poly& f, const Poly& g) const {
  require_space(f);
  require_space(g);
  if (l < 0) throw PreconditionError("negative bidifferential order");
  if (l == 0) return f * g;
  if (f.is_zero() || g.is_zero() || l > f.degree() || l > g.degree()) return space_.zero();
  const std::size_t nv = space_.dim();
  std::unordered_map<std::uint64_t, Poly> df, dg;
  auto cached = [](std::unordered_map<std::uint64_t, Poly>& cache, const Poly& p, const Monomial& A) -> const Poly& {
    auto it = cache.find(A.bits());
    if (it == cache.end()) it = cache.emplace(A.bits(), derivative(p, A)).first;
    return it->second;
  };
  PolyBuilder acc(nv);
  Scalar tmp;
  for (const auto& s : stencils(l)) {
    const Poly& fa = cached(df, f, s.left);
    if (fa.is_zero()) continue;
    const Poly& gb = cached(dg, g, s.right);
    if (gb.is_zero()) continue;
    for (const auto& [ma, ca] : fa.terms())
      for (const auto& [mb, cb] : gb.terms()) {
        tmp = s.weight * ca;
        tmp *= cb;
        acc.add(ma * mb, tmp);
      }
  }
  return acc.build();
}

std::vector<Poly> StarProduct::moyal_exact(const Poly& f, const Poly& g) const {
  require_space(f);
  require_space(g);
  std::vector<Poly> out;
  const int top = std::max(0, std::min(f.degree(), g.degree()));
  for (int l = 0; l <= top; ++l) out.push_back(bidifferential(l, f, g));
  return out;
}

HSeries StarProduct::moyal(const Poly& f, const Poly& g) const {
  require_space(f);
  require_space(g);
  HSeries out(space_.dim(), order_);
  const int top = std::min(order_, std::max(0, std::min(f.degree(), g.degree())));
  for (int l = 0; l <= top; ++l) out[l] = bidifferential(l, f, g);
  return out;
}

HSeries StarProduct::star(const HSeries& F, const HSeries& G) const {
  if (F.order() != order_ || G.order() != order_)
    throw DimensionError("truncation mismatch: star product of order " + std::to_string(order_) +
                         " applied to series of order " + std::to_string(F.order()) + " and " +
                         std::to_string(G.order()));
  if (F.nvars() != space_.dim() || G.nvars() != space_.dim()) throw DimensionError("series over a different space");
  HSeries out(space_.dim(), order_);
  for (int a = 0; a <= order_; ++a) {
    if (F[a].is_zero()) continue;
    for (int b = 0; a + b <= order_; ++b) {
      if (G[b].is_zero()) continue;
      const int top = std::min(order_ - a - b, std::min(F[a].degree(), G[b].degree()));
      for (int l = 0; l <= top; ++l) out[a + b + l] += bidifferential(l, F[a], G[b]);
    }
  }
  return out;
}

HSeries StarProduct::star_power(const HSeries& F, unsigned e) const {
  HSeries r = unit();
  for (unsigned i = 0; i < e; ++i) r = star(r, F);
  return r;
}

Poly StarProduct::poisson(const Poly& f, const Poly& g) const {
  require_space(f);
  require_space(g);
  Poly out = space_.zero();
  for (const auto& e : space_.nonzero_entries()) {
    const Poly fi = partial_derivative(f, e.i);
    if (fi.is_zero()) continue;
    out += fi * partial_derivative(g, e.j) * e.value;
  }
  return out;
}

HSeries StarProduct::star_commutator(const HSeries& F, const HSeries& G) const { return star(F, G) - star(G, F); }

HSeries StarProduct::commutator(const Poly& f, const Poly& g) const {
  require_space(f);
  require_space(g);
  HSeries out(space_.dim(), order_);
  const int top = std::min(order_, std::max(0, std::min(f.degree(), g.degree())));
  for (int l = 1; l <= top; l += 2) out[l] = bidifferential(l, f, g) * Scalar(2);
  return out;
}

bool AxiomReport::passed() const {
  return std::all_of(samples.begin(), samples.end(), [](const AxiomSample& s) { return s.passed(); });
}

AxiomReport check_axioms(const StarProduct& star, std::span<const PolyTriple> samples) {
  AxiomReport report;
  report.order = star.order();
  const int N = star.order();
  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    const auto& [f, g, h] = samples[idx];
    AxiomSample s;
    s.index = idx;
    auto fail = [&s](const char* what, const HSeries& residual) {
      if (!s.failure) {
        s.failure = what;
        s.residual = residual;
      }
    };

    const int exact = std::max(0, f.degree()) + std::max(0, g.degree()) + std::max(0, h.degree());
    const StarProduct full = star.with_order(exact);
    const HSeries F = full.embed(f), G = full.embed(g), H = full.embed(h);
    const HSeries associator = full.star(full.star(F, G), H) - full.star(F, full.star(G, H));
    if (!associator.is_zero()) {
      s.associativity = false;
      fail("associativity", associator);
    }

    const HSeries one = star.unit();
    const HSeries fN = star.embed(f);
    const HSeries left_unit = star.star(one, fN) - fN;
    const HSeries right_unit = star.star(fN, one) - fN;
    if (!left_unit.is_zero() || !right_unit.is_zero()) {
      s.unit = false;
      fail("unit", left_unit.is_zero() ? right_unit : left_unit);
    }

    const HSeries fg = star.moyal(f, g);
    if (fg[0] != f * g) {
      s.classical_limit = false;
      HSeries r(f.nvars(), N);
      r[0] = fg[0] - f * g;
      fail("classical limit", r);
    }

    HSeries bracket_defect = star.star_commutator(star.embed(f), star.embed(g));
    if (N >= 1) bracket_defect[1] -= star.poisson(f, g);
    if (!bracket_defect[0].is_zero() || (N >= 1 && !bracket_defect[1].is_zero())) {
      s.bracket = false;
      fail("bracket", bracket_defect);
    }

    if (N >= 1) {
      const int m = static_cast<int>(idx % static_cast<std::size_t>(N));
      HSeries Fp = star.embed(f), Gp = star.embed(g);
      Fp[m + 1] += h;
      Gp[m + 1] += f;
      const HSeries perturbed = star.star(Fp, Gp);
      HSeries diff(f.nvars(), N);
      for (int k = 0; k <= m; ++k) diff[k] = perturbed[k] - fg[k];
      if (!diff.is_zero()) {
        s.continuity = false;
        fail("continuity", diff);
      }
    }
    report.samples.push_back(std::move(s));
  }
  return report;
}

HomogeneityReport check_homogeneity(const StarProduct& star, std::span<const std::pair<Poly, Poly>> samples) {
  HomogeneityReport report;
  report.order = star.order();
  report.samples = samples.size();
  const auto& w = star.space().weights();
  const long k = star.space().hbar_weight();
  for (std::size_t idx = 0; idx < samples.size(); ++idx) {
    const auto& [f, g] = samples[idx];
    const auto gf = grade_decompose(f, w);
    const auto gg = grade_decompose(g, w);
    if (gf.size() > 1 || gg.size() > 1)
      throw PreconditionError("homogeneity sample " + std::to_string(idx) + " is not weight-homogeneous");
    if (gf.empty() || gg.empty()) continue;
    const long base = gf.begin()->first + gg.begin()->first;
    for (int l = 0; l <= star.order(); ++l) {
      const Poly D = star.bidifferential(l, f, g);
      if (D.is_zero()) continue;
      const auto parts = grade_decompose(D, w);
      const long expected = base + k * l;
      if (parts.size() == 1 && parts.begin()->first == expected) continue;
      HomogeneityViolation v{idx, l, expected, {}};
      for (const auto& [deg, part] : parts) v.found_weights.push_back(deg);
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

}  // namespace qcenter
