#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "qcenter/envalg.hpp"
#include "qcenter/errors.hpp"
#include "qcenter/hseries.hpp"

namespace qcenter {

/// Division dP/dt(f) * f_{m+1} = Q_{m+1} left a remainder.
class LiftObstruction : public Error {
 public:
  LiftObstruction(int order, Poly quotient_target, Poly remainder, const std::string& what)
      : Error(what), order_(order), target_(std::move(quotient_target)), remainder_(std::move(remainder)) {}
  int order() const { return order_; }
  const Poly& target() const { return target_; }
  const Poly& remainder() const { return remainder_; }

 private:
  int order_;
  Poly target_;
  Poly remainder_;
};

/// dP/dt(f) vanishes.
class NonSimpleRootError : public Error {
 public:
  using Error::Error;
};

/// r(f_1, ..., f_k) does not vanish under the star product.
class RelationViolation : public Error {
 public:
  RelationViolation(std::string relation, int order, const std::string& what)
      : Error(what), relation_(std::move(relation)), order_(order) {}
  const std::string& relation() const { return relation_; }
  int order() const { return order_; }

 private:
  std::string relation_;
  int order_;
};

/// P(t) = t^n + a_{n-1} t^{n-1} + ... + a_0 with quantum coefficients ahat_i.
struct MonicRelation {
  std::vector<Poly> a;
  std::vector<HSeries> ahat;

  std::size_t degree() const { return a.size(); }
};

/// a_i = mu^*(z_i), ahat_i = comoment(symmetrize(z_i)) + corrections[i].
/// Corrections, when given, must be divisible by hbar.
MonicRelation make_relation(const HamiltonianAction& act, std::span<const Poly> sg_coefficients,
                            std::span<const HSeries> corrections = {});

/// Problems with (f, rel): classical relation, reductions mod hbar, membership of
/// a_i in the moment image, minimality of P, centrality of ahat_i against
/// invariants of degree <= Dtest. Empty when all hold.
std::vector<std::string> validate_relation(const Poly& f, const MonicRelation& rel, const HamiltonianAction& act,
                                           int Dtest);

struct LiftStep {
  int order = 0;
  /// Right-hand side Q_{m+1}.
  Poly target;
  /// f_{m+1}
  Poly correction;
};

struct LiftResult {
  HSeries lift{0, 0};
  Poly derivative;  // dP/dt(f)
  std::vector<LiftStep> steps;
};

/// ahat_{n-1} * F^{n-1} + ... + F^n, all products taken with `star`.
HSeries evaluate_relation(const StarProduct& star, const MonicRelation& rel, const HSeries& F);

LiftResult hensel_lift(const Poly& f, const MonicRelation& rel, const HamiltonianAction& act, int N);

struct LiftVerification {
  int order = 0;
  /// Lowest hbar-order where the monic relation fails.
  std::optional<int> relation_order;
  /// Lowest hbar-order where a commutator with an invariant fails, and that invariant.
  std::optional<int> centrality_order;
  std::optional<Poly> centrality_witness;

  bool passed() const { return !relation_order && !centrality_order; }
};

LiftVerification verify_lift(const HSeries& fhat, const MonicRelation& rel, const HamiltonianAction& act, int N,
                             int Dtest);

struct LiftRequest {
  std::string name;
  Poly f;
  MonicRelation relation;
};

struct IsoEntry {
  std::string name;
  Poly f;
  HSeries lift{0, 0};
  long weight = 0;
  bool equivariant = true;
  bool triangle = true;
};

struct IsoTable {
  int order = 0;
  std::vector<IsoEntry> entries;
  /// Relations among the generators that were re-verified under the star product.
  std::vector<std::string> relations;

  bool passed() const;
};

/// K^x-weight of f hbar^m, or nullopt when f is not weight-homogeneous.
std::optional<long> kx_weight(const SymplecticSpace& space, const Poly& f, int m = 0);

/// Lifts every generator, checks weights and reduction mod hbar, and verifies each
/// relation r(f_1, ..., f_k) = 0 (polynomials in the generator names) under the
/// star product. Throws RelationViolation on the first failing relation.
IsoTable build_center_iso(std::span<const LiftRequest> gens, std::span<const Poly> relations,
                          const HamiltonianAction& act, int N);

}  // namespace qcenter
