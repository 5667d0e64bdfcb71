#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcenter/hseries.hpp"
#include "qcenter/symplectic.hpp"

namespace qcenter {

/// Moyal-Weyl product f*g = sum_m hbar^m D_m(f,g) with
/// D_m = (1/(2^m m!)) (sum_ij P^ij d_i (x) d_j)^m followed by multiplication.
/// For polynomials the sum terminates, so every D_m is computed exactly and
/// truncation happens only when the result is stored in an HSeries.
class StarProduct {
 public:
  StarProduct(SymplecticSpace space, int order);

  const SymplecticSpace& space() const { return space_; }
  int order() const { return order_; }

  /// The bidifferential operator D_l applied to (f, g).
  Poly bidifferential(int l, const Poly& f, const Poly& g) const;
  /// D_0 .. D_L with L = min(deg f, deg g) (all remaining terms vanish).
  std::vector<Poly> moyal_exact(const Poly& f, const Poly& g) const;

  HSeries moyal(const Poly& f, const Poly& g) const;
  HSeries star(const HSeries& F, const HSeries& G) const;
  /// F * F * ... * F (e factors); e = 0 gives the unit.
  HSeries star_power(const HSeries& F, unsigned e) const;
  Poly poisson(const Poly& f, const Poly& g) const;
  HSeries star_commutator(const HSeries& F, const HSeries& G) const;
  /// [f, g]_* = 2 sum_{l odd} hbar^l D_l(f, g), truncated at the product's order.
  HSeries commutator(const Poly& f, const Poly& g) const;

  HSeries embed(const Poly& f) const { return HSeries(f, order_); }
  HSeries unit() const { return HSeries(space_.one(), order_); }

  /// Same space at another truncation order (shares the operator tables).
  StarProduct with_order(int order) const;

 private:
  struct Stencil {
    Monomial left;
    Monomial right;
    Scalar weight;
  };
  struct Tables;

  const std::vector<Stencil>& stencils(int l) const;
  void require_space(const Poly& f) const;

  SymplecticSpace space_;
  int order_;
  std::shared_ptr<Tables> tables_;
};

/// Outcome of the star-product axiom checks on one sample triple.
struct AxiomSample {
  std::size_t index = 0;
  bool associativity = true;
  bool unit = true;
  bool classical_limit = true;  // f*g - fg in hbar K[X][[hbar]]
  bool bracket = true;          // f*g - g*f - hbar{f,g} in hbar^2 K[X][[hbar]]
  bool continuity = true;       // order-m coefficient ignores perturbations above m
  /// Name of the first failing check and its residual.
  std::optional<std::string> failure;
  std::optional<HSeries> residual;

  bool passed() const { return associativity && unit && classical_limit && bracket && continuity; }
};

struct AxiomReport {
  int order = 0;
  std::vector<AxiomSample> samples;
  bool passed() const;
};

struct PolyTriple {
  Poly f, g, h;
};

/// Associativity is checked with zero residual on the untruncated product.
AxiomReport check_axioms(const StarProduct& star, std::span<const PolyTriple> samples);

struct HomogeneityViolation {
  std::size_t sample = 0;
  int order = 0;
  long expected_weight = 0;
  std::vector<long> found_weights;
};

struct HomogeneityReport {
  int order = 0;
  std::size_t samples = 0;
  std::vector<HomogeneityViolation> violations;
  bool passed() const { return violations.empty(); }
};

/// Verifies that D_l(f, g) has weight wdeg(f) + wdeg(g) + k*l for l <= N, where
/// wdeg uses the space weights w and k is the hbar weight. Throws
/// PreconditionError when a sample is not weight-homogeneous.
HomogeneityReport check_homogeneity(const StarProduct& star, std::span<const std::pair<Poly, Poly>> samples);

}  // namespace qcenter
