#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "qcenter/poly.hpp"

namespace qcenter {

/// Entry P^{ij} != 0 of the Poisson bivector.
struct BivectorEntry {
  std::size_t i;
  std::size_t j;
  Scalar value;
};

/// K^2n with coordinates q1..qn, p1..pn, a constant nondegenerate Poisson
/// bivector, and a K^x-grading: coordinate x_i has weight w_i, hbar has
/// weight -k in the same convention (w = -1, k = 2 is the dilation t.v = t^-1 v).
class SymplecticSpace {
 public:
  /// Standard form P[q_i, p_i] = 1, default weights w = (-1, ..., -1), k = 2.
  static SymplecticSpace standard(std::size_t n);

  /// Throws ValidationError unless `bivector` is 2n x 2n, antisymmetric and invertible.
  SymplecticSpace(std::size_t n, std::vector<std::vector<Scalar>> bivector, std::vector<int> weights,
                  int hbar_weight);

  std::size_t pairs() const { return n_; }
  std::size_t dim() const { return 2 * n_; }
  const std::vector<std::vector<Scalar>>& bivector() const { return bivector_; }
  const std::vector<BivectorEntry>& nonzero_entries() const { return entries_; }
  const std::vector<int>& weights() const { return weights_; }
  int hbar_weight() const { return hbar_weight_; }
  const std::vector<std::string>& variable_names() const { return names_; }
  bool is_standard_form() const;

  Poly q(std::size_t i) const { return Poly::variable(dim(), i); }
  Poly p(std::size_t i) const { return Poly::variable(dim(), n_ + i); }
  Poly zero() const { return Poly(dim()); }
  Poly one() const { return Poly::constant(dim(), Scalar(1)); }
  Poly parse(std::string_view text) const { return parse_poly(text, names_); }
  std::string format(const Poly& f) const { return to_string(f, names_); }

  friend bool operator==(const SymplecticSpace&, const SymplecticSpace&) = default;

 private:
  std::size_t n_;
  std::vector<std::vector<Scalar>> bivector_;
  std::vector<int> weights_;
  int hbar_weight_;
  std::vector<std::string> names_;
  std::vector<BivectorEntry> entries_;
};

/// Rank of a rational matrix by exact elimination.
std::size_t matrix_rank(std::vector<std::vector<Scalar>> m);

}  // namespace qcenter
