#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qcenter/starprod.hpp"

namespace qcenter {

/// Structure constants c_ij^k of a Lie algebra with [x_i, x_j] = sum_k c_ij^k x_k,
/// plus designated generators of the invariant algebra S(g)^g written as
/// polynomials in the basis labels.
class LieAlgebraData {
 public:
  using Constants = std::vector<std::vector<std::vector<Scalar>>>;  // [i][j][k]

  /// Throws ValidationError on antisymmetry or Jacobi failure (naming the
  /// offending triple) and on generators not annihilated by every ad x_i.
  LieAlgebraData(std::vector<std::string> labels, Constants constants, std::vector<Poly> invariant_generators);

  /// d-dimensional abelian algebra with the coordinate functions as generators.
  static LieAlgebraData abelian(std::size_t d, std::vector<std::string> labels = {});
  /// sl2 with basis order e < h < f, [h,e] = 2e, [h,f] = -2f, [e,f] = h and Casimir h^2 + 4ef.
  static LieAlgebraData sl2();

  std::size_t dim() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const Scalar& constant(std::size_t i, std::size_t j, std::size_t k) const { return c_[i][j][k]; }
  const Constants& constants() const { return c_; }
  const std::vector<Poly>& invariant_generators() const { return generators_; }

  /// The derivation of S(g) extending x_j -> [x_i, x_j].
  Poly ad(std::size_t i, const Poly& s) const;
  bool is_invariant(const Poly& s) const;

  Poly parse(std::string_view text) const { return parse_poly(text, labels_); }
  std::string format(const Poly& s) const { return to_string(s, labels_); }

  friend bool operator==(const LieAlgebraData&, const LieAlgebraData&) = default;

 private:
  std::vector<std::string> labels_;
  Constants c_;
  std::vector<Poly> generators_;
};

/// Element of U_hbar(g) mod hbar^(N+1) in PBW normal form. A PBW monomial
/// x_{i1} ... x_{im} with i1 <= ... <= im is stored as its exponent vector;
/// each carries a dense polynomial in hbar of degree <= N.
class UEnvElement {
 public:
  using HbarPoly = std::vector<Scalar>;

  UEnvElement(std::size_t dim, int order) : dim_(dim), order_(order) {}

  static UEnvElement one(std::size_t dim, int order);
  static UEnvElement generator(std::size_t dim, int order, std::size_t i);

  std::size_t dim() const { return dim_; }
  int order() const { return order_; }
  const std::map<Monomial, HbarPoly>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds coeff * (PBW monomial m); zero coefficients are dropped.
  void add(const Monomial& m, const HbarPoly& coeff);
  void add(const Monomial& m, const Scalar& c, int hbar_power = 0);

  UEnvElement& operator+=(const UEnvElement& o);
  UEnvElement& operator-=(const UEnvElement& o);
  UEnvElement& operator*=(const Scalar& c);
  friend UEnvElement operator+(UEnvElement a, const UEnvElement& b) { return a += b; }
  friend UEnvElement operator-(UEnvElement a, const UEnvElement& b) { return a -= b; }
  friend UEnvElement operator*(UEnvElement a, const Scalar& c) { return a *= c; }
  /// Multiplication by hbar^j (central), truncated.
  UEnvElement hbar_shifted(int j) const;

  friend bool operator==(const UEnvElement&, const UEnvElement&) = default;

  std::string format(std::span<const std::string> labels) const;

 private:
  std::size_t dim_;
  int order_;
  std::map<Monomial, HbarPoly> terms_;
};

/// Which descent the rewriting system resolves first.
enum class RewriteOrder { leftmost, rightmost, random };

/// PBW rewriting engine for one Lie algebra at a fixed truncation order.
/// Normal forms of words are memoized; instances are safe to share across threads.
class EnvelopingAlgebra {
 public:
  EnvelopingAlgebra(LieAlgebraData lie, int order);

  const LieAlgebraData& lie() const { return lie_; }
  int order() const { return order_; }

  /// Rewrites x_j x_i -> x_i x_j + hbar sum_k c_ji^k x_k (j > i) until sorted.
  UEnvElement normalize(std::span<const std::size_t> word, const UEnvElement::HbarPoly& coeff,
                        RewriteOrder strategy = RewriteOrder::leftmost, std::uint64_t seed = 0) const;
  UEnvElement mul(const UEnvElement& a, const UEnvElement& b) const;
  /// Average over all orderings of each monomial, extended linearly.
  UEnvElement symmetrize(const Poly& s) const;
  UEnvElement generator(std::size_t i) const { return UEnvElement::generator(lie_.dim(), order_, i); }
  UEnvElement one() const { return UEnvElement::one(lie_.dim(), order_); }

 private:
  struct Memo;
  UEnvElement normal_form(const std::vector<std::uint8_t>& word, RewriteOrder strategy, std::uint64_t& state) const;
  void require(const UEnvElement& a) const;

  LieAlgebraData lie_;
  int order_;
  std::shared_ptr<Memo> memo_;
};

UEnvElement pbw_normalize(const EnvelopingAlgebra& U, std::span<const std::size_t> word,
                          const UEnvElement::HbarPoly& coeff);
UEnvElement u_mul(const EnvelopingAlgebra& U, const UEnvElement& a, const UEnvElement& b);
UEnvElement symmetrize(const EnvelopingAlgebra& U, const Poly& s);
/// hbar = 0, PBW monomials read as commutative monomials.
Poly classical_limit(const UEnvElement& a);
/// x_i a - a x_i = 0 for every basis element.
bool adjoint_invariant_check(const EnvelopingAlgebra& U, const UEnvElement& a);

/// Linear action of g on a symplectic space with classical hamiltonians H_i
/// and quantum hamiltonians Hhat_i (series at the star product's order).
class HamiltonianAction {
 public:
  HamiltonianAction(LieAlgebraData lie, StarProduct star, std::vector<Poly> classical,
                    std::optional<std::vector<HSeries>> quantum = std::nullopt);

  const LieAlgebraData& lie() const { return lie_; }
  const StarProduct& star() const { return star_; }
  const SymplecticSpace& space() const { return star_.space(); }
  int order() const { return star_.order(); }
  const std::vector<Poly>& classical() const { return H_; }
  const std::vector<HSeries>& quantum() const { return Hhat_; }

  /// mu^*(z): substitute x_i -> H_i.
  Poly pullback(const Poly& z) const;
  /// Velocity field of x_i applied to f, i.e. {H_i, f}.
  Poly velocity(std::size_t i, const Poly& f) const { return star_.poisson(H_[i], f); }

  /// Empty when [Hhat_i, Hhat_j]_* = hbar sum_k c_ij^k Hhat_k for all i, j.
  const std::optional<std::string>& quantum_bracket_defect() const { return bracket_defect_; }

  /// Same action viewed at another truncation order.
  HamiltonianAction with_order(int order) const;

 private:
  LieAlgebraData lie_;
  StarProduct star_;
  std::vector<Poly> H_;
  std::vector<HSeries> Hhat_;
  std::optional<std::string> bracket_defect_;
};

/// Problems found with equivariance, classical parts of the quantum
/// hamiltonians and the quantum identity on all monomials of degree <= test_degree.
std::vector<std::string> validate_action(const HamiltonianAction& act, int test_degree = 3);

/// xi_i -> Hhat_i, PBW monomials -> left-to-right star products.
/// Throws InvalidActionError when the quantum hamiltonians violate the bracket relations.
HSeries comoment(const UEnvElement& a, const HamiltonianAction& act);

struct Eq25Row {
  std::size_t generator = 0;
  std::size_t sample = 0;
  bool passed = true;
  /// Lowest hbar-order of [Hhat_i, f]_* - hbar{H_i, f} when nonzero.
  std::optional<int> residual_order;
};

struct Eq25Report {
  int order = 0;
  std::vector<Eq25Row> rows;
  bool passed() const;
};

Eq25Report check_eq25(const HamiltonianAction& act, std::span<const Poly> samples);

struct Diagram1Report {
  Poly z;
  bool section = true;   // classical_limit(symmetrize(z)) == z
  bool pullback = true;  // comoment(symmetrize(z)) == mu^*(z) mod hbar
  Poly section_residual;
  Poly pullback_residual;
  bool passed() const { return section && pullback; }
};

/// Throws PreconditionError when z is not ad-invariant.
Diagram1Report check_diagram1(const Poly& z, const HamiltonianAction& act);

}  // namespace qcenter
