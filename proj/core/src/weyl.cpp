#include "qcenter/weyl.hpp"

#include <algorithm>
#include <random>

#include "qcenter/errors.hpp"
#include "qcenter/starprod.hpp"

namespace qcenter {

Poly weyl_specialize(const HSeries& fhat, const SymplecticSpace& space) {
  if (fhat.nvars() != space.dim()) throw DimensionError("series over the wrong space");
  std::optional<long> weight;
  for (int m = 0; m <= fhat.order(); ++m) {
    if (fhat[m].is_zero()) continue;
    const auto parts = grade_decompose(fhat[m], space.weights());
    for (const auto& [w, part] : parts) {
      const long total = w - static_cast<long>(space.hbar_weight()) * m;
      if (weight && *weight != total)
        throw PreconditionError("series is not K^x-finite of a single weight; cannot set hbar = 1");
      weight = total;
    }
  }
  return fhat.at_hbar_one();
}

Poly weyl_mul(const SymplecticSpace& space, const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return space.zero();
  const int top = std::min(a.degree(), b.degree());
  const StarProduct star(space, std::max(top, 0));
  Poly out = space.zero();
  for (int l = 0; l <= top; ++l) out += star.bidifferential(l, a, b);
  return out;
}

Poly weyl_commutator(const SymplecticSpace& space, const Poly& a, const Poly& b) {
  return weyl_mul(space, a, b) - weyl_mul(space, b, a);
}

std::vector<Poly> weyl_noncentral(const SymplecticSpace& space, const Poly& element, std::span<const Poly> tests) {
  std::vector<Poly> bad;
  for (const auto& u : tests)
    if (!weyl_commutator(space, element, u).is_zero()) bad.push_back(u);
  return bad;
}

std::size_t jacobian_rank(std::span<const Poly> gens, std::uint64_t seed, int trials) {
  if (gens.empty()) return 0;
  const std::size_t n = gens.front().nvars();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::size_t best = 0;
  for (int t = 0; t < trials && best < gens.size(); ++t) {
    std::vector<Poly> point;
    for (std::size_t i = 0; i < n; ++i) {
      Scalar v(num(rng), den(rng));
      v.canonicalize();
      point.push_back(Poly::constant(n, v));
    }
    std::vector<std::vector<Scalar>> J;
    for (const auto& g : gens) {
      std::vector<Scalar> row;
      for (std::size_t i = 0; i < n; ++i) row.push_back(substitute(partial_derivative(g, i), point).constant_term());
      J.push_back(std::move(row));
    }
    best = std::max(best, matrix_rank(std::move(J)));
  }
  return best;
}

}  // namespace qcenter
