#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "qcenter/monomial.hpp"
#include "qcenter/scalar.hpp"

namespace qcenter {

/// Sparse polynomial with rational coefficients over a fixed number of
/// variables. Terms are kept sorted ascending in graded-lex order and never
/// carry a zero coefficient.
class Poly {
 public:
  using Term = std::pair<Monomial, Scalar>;

  explicit Poly(std::size_t nvars = 0) : nvars_(nvars) {}

  static Poly constant(std::size_t nvars, const Scalar& c);
  static Poly variable(std::size_t nvars, std::size_t index);
  static Poly term(std::size_t nvars, const Monomial& m, const Scalar& c);
  /// Takes ownership of terms that are already sorted and nonzero.
  static Poly from_sorted_terms(std::size_t nvars, std::vector<Term> terms);

  std::size_t nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.front().first.is_one()); }

  Scalar coefficient(const Monomial& m) const;
  Scalar constant_term() const;

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.back().first.degree()); }
  int min_degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().first.degree()); }
  bool is_homogeneous() const { return degree() == min_degree(); }
  /// Largest term in graded-lex order. Requires a nonzero polynomial.
  const Term& leading_term() const { return terms_.back(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Scalar& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Scalar& c) { return a *= c; }
  friend Poly operator*(const Scalar& c, Poly a) { return a *= c; }
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly operator-() const;

  friend bool operator==(const Poly&, const Poly&) = default;

  Poly pow(unsigned e) const;
  /// Terms of total degree exactly d.
  Poly homogeneous_part(unsigned d) const;
  /// Multiplies every term by the monomial m.
  Poly shifted(const Monomial& m) const;

 private:
  std::size_t nvars_;
  std::vector<Term> terms_;
};

/// Accumulates terms in arbitrary order; build() sorts and drops zeros.
class PolyBuilder {
 public:
  explicit PolyBuilder(std::size_t nvars) : nvars_(nvars) {}
  void add(const Monomial& m, const Scalar& c);
  void add(const Poly& p, const Scalar& scale = Scalar(1));
  Poly build() const;

 private:
  std::size_t nvars_;
  std::unordered_map<std::uint64_t, Scalar> acc_;
};

enum class ArithOp { add, sub, mul, scale };

/// Dispatcher over the ring operations; `scale` multiplies a by the constant b.
Poly poly_arith(const Poly& a, const Poly& b, ArithOp op);

Poly partial_derivative(const Poly& f, std::size_t var_index);
/// Mixed partial derivative with multiplicities given by the exponents of `multi_index`.
Poly derivative(const Poly& f, const Monomial& multi_index);

/// Coefficients of the monomial-wise derivative d^A(x^a) = c x^(a-A); c = 0 when A does not divide a.
Scalar derivative_factor(const Monomial& a, const Monomial& multi_index, std::size_t nvars);

/// Weighted degree sum_i w_i e_i.
long weighted_degree(const Monomial& m, std::span<const int> weights);

/// Splits f into weight-homogeneous components keyed by weighted degree.
std::map<long, Poly> grade_decompose(const Poly& f, std::span<const int> weights);

/// f(images[0], ..., images[k-1]) with commutative multiplication.
Poly substitute(const Poly& f, std::span<const Poly> images);

struct DivisionResult {
  Poly quotient;
  Poly remainder;
};

/// Multivariate division by a single divisor with respect to graded-lex order.
/// The remainder is zero iff the divisor divides the dividend exactly.
DivisionResult divide(const Poly& dividend, const Poly& divisor);

/// Leading terms first.
std::string to_string(const Poly& f, std::span<const std::string> names);

/// Parses +, -, *, ^ (nonnegative integer exponent), parentheses, integer
/// literals, division by a constant, and the given variable names.
Poly parse_poly(std::string_view text, std::span<const std::string> names);

}  // namespace qcenter
