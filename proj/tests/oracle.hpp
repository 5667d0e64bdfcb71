// Independent reference implementations used only by the tests. Polynomials are
// plain maps from exponent vectors to rationals; nothing here calls into the
// library except the two conversion helpers.
#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <gmpxx.h>

#include "qcenter/poly.hpp"

namespace oracle {

using Exps = std::vector<int>;
using OPoly = std::map<Exps, mpq_class>;

inline void clean(OPoly& p) {
  for (auto it = p.begin(); it != p.end();) it = (it->second == 0) ? p.erase(it) : std::next(it);
}

inline OPoly from(const qcenter::Poly& f) {
  OPoly out;
  for (const auto& [m, c] : f.terms()) {
    Exps e;
    for (auto x : m.exponents(f.nvars())) e.push_back(static_cast<int>(x));
    out[e] = c;
  }
  return out;
}

inline qcenter::Poly to(const OPoly& p, std::size_t nvars) {
  qcenter::PolyBuilder b(nvars);
  for (const auto& [e, c] : p) {
    std::vector<unsigned> u(e.begin(), e.end());
    b.add(qcenter::Monomial::from_exponents(u), c);
  }
  return b.build();
}

inline OPoly add(const OPoly& a, const OPoly& b, const mpq_class& sb = 1) {
  OPoly out = a;
  for (const auto& [e, c] : b) out[e] += sb * c;
  clean(out);
  return out;
}

inline OPoly mul(const OPoly& a, const OPoly& b) {
  OPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exps e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  clean(out);
  return out;
}

inline OPoly deriv(const OPoly& f, std::size_t var, int times = 1) {
  OPoly out;
  for (const auto& [e, c] : f) {
    if (e[var] < times) continue;
    Exps d = e;
    mpq_class k = c;
    for (int t = 0; t < times; ++t) k *= d[var] - t;
    d[var] -= times;
    out[d] += k;
  }
  clean(out);
  return out;
}

/// All exponent vectors of length nv and total degree d, by brute force recursion.
inline std::vector<Exps> exponent_vectors(std::size_t nv, int d) {
  std::vector<Exps> out;
  Exps cur(nv, 0);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == nv) {
      cur[i] = left;
      out.push_back(cur);
      return;
    }
    for (int x = 0; x <= left; ++x) {
      cur[i] = x;
      self(self, i + 1, left - x);
    }
  };
  if (nv == 0) {
    if (d == 0) out.push_back({});
    return out;
  }
  rec(rec, 0, d);
  return out;
}

inline mpq_class fact(int n) {
  mpq_class r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

/// Moyal product for the standard form on q_1..q_n, p_1..p_n. Entry l is the
/// coefficient of hbar^l, from the binomial expansion of exp(hbar P / 2) with
/// P = sum_i (d_qi (x) d_pi - d_pi (x) d_qi).
inline std::vector<OPoly> moyal(const OPoly& f, const OPoly& g, std::size_t n, int max_l) {
  std::vector<OPoly> out(static_cast<std::size_t>(max_l) + 1);
  for (int l = 0; l <= max_l; ++l) {
    for (const auto& ab : exponent_vectors(2 * n, l)) {
      mpq_class w = 1;
      OPoly df = f, dg = g;
      for (std::size_t i = 0; i < n; ++i) {
        const int a = ab[i], b = ab[n + i];
        w /= fact(a) * fact(b);
        if (b % 2) w = -w;
        df = deriv(deriv(df, i, a), n + i, b);
        dg = deriv(deriv(dg, n + i, a), i, b);
      }
      for (int t = 0; t < l; ++t) w /= 2;
      if (df.empty() || dg.empty()) continue;
      OPoly term = mul(df, dg);
      out[static_cast<std::size_t>(l)] = add(out[static_cast<std::size_t>(l)], term, w);
    }
  }
  return out;
}

/// {f, g} = sum_i d_qi f d_pi g - d_pi f d_qi g
inline OPoly bracket(const OPoly& f, const OPoly& g, std::size_t n) {
  OPoly out;
  for (std::size_t i = 0; i < n; ++i) {
    out = add(out, mul(deriv(f, i), deriv(g, n + i)));
    out = add(out, mul(deriv(f, n + i), deriv(g, i)), -1);
  }
  return out;
}

/// Rank by plain Gaussian elimination.
inline std::size_t rank(std::vector<std::vector<mpq_class>> m) {
  std::size_t r = 0;
  const std::size_t cols = m.empty() ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      const mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return r;
}

/// Matrix whose columns are the coefficient vectors of `polys` (rows indexed by
/// the union of their monomials).
inline std::vector<std::vector<mpq_class>> coefficient_matrix(const std::vector<OPoly>& polys) {
  std::map<Exps, std::size_t> rows;
  for (const auto& p : polys)
    for (const auto& [e, c] : p) rows.emplace(e, rows.size());
  std::vector<std::vector<mpq_class>> m(rows.size(), std::vector<mpq_class>(polys.size()));
  for (std::size_t j = 0; j < polys.size(); ++j)
    for (const auto& [e, c] : polys[j]) m[rows.at(e)][j] = c;
  return m;
}

/// splitmix64
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  int range(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
};

inline mpq_class random_coeff(Rng& r) {
  int a = r.range(-5, 4);
  if (a >= 0) ++a;
  mpq_class c(a, r.range(1, 3));
  c.canonicalize();
  return c;
}

inline Exps random_exps(std::size_t nv, int degree, Rng& r) {
  Exps e(nv, 0);
  for (int i = 0; i < degree && nv > 0; ++i) ++e[static_cast<std::size_t>(r.range(0, static_cast<int>(nv) - 1))];
  return e;
}

inline qcenter::Poly random_poly(std::size_t nv, int max_degree, int terms, Rng& r) {
  OPoly p;
  for (int t = 0; t < terms; ++t) p[random_exps(nv, r.range(0, max_degree), r)] += random_coeff(r);
  clean(p);
  return to(p, nv);
}

inline qcenter::Poly random_homogeneous(std::size_t nv, int degree, int terms, Rng& r) {
  OPoly p;
  for (int t = 0; t < terms; ++t) p[random_exps(nv, degree, r)] += random_coeff(r);
  clean(p);
  return to(p, nv);
}

}  // namespace oracle
