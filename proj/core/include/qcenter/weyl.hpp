#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qcenter/hseries.hpp"
#include "qcenter/symplectic.hpp"

namespace qcenter {

/// Sets hbar = 1. The input must have a single K^x-weight; the result is the
/// Weyl-algebra element written in symmetric-order normal form.
Poly weyl_specialize(const HSeries& fhat, const SymplecticSpace& space);

/// Product in W(V): sum over all l of the bidifferential terms at hbar = 1.
Poly weyl_mul(const SymplecticSpace& space, const Poly& a, const Poly& b);
Poly weyl_commutator(const SymplecticSpace& space, const Poly& a, const Poly& b);

/// Test elements whose Weyl commutator with `element` does not vanish.
std::vector<Poly> weyl_noncentral(const SymplecticSpace& space, const Poly& element, std::span<const Poly> tests);

/// Largest rank of the Jacobian of `gens` seen at `trials` random rational points.
/// Rank equal to gens.size() certifies algebraic independence.
std::size_t jacobian_rank(std::span<const Poly> gens, std::uint64_t seed, int trials = 3);

}  // namespace qcenter
