#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "qcenter/poly.hpp"

namespace qcenter {

/// sum_j coefficients[j] * x_j = rhs
struct LinearConstraint {
  std::vector<Scalar> coefficients;
  Scalar rhs{0};
};

/// Affine solution set particular + span(basis); empty when infeasible.
struct SolutionSpace {
  bool feasible = true;
  std::vector<Scalar> particular;
  /// One vector per free column: 1 there, 0 on the other free columns.
  std::vector<std::vector<Scalar>> basis;
};

/// Incrementally maintained reduced row-echelon form of an augmented system.
/// The pivot of each row is its leftmost nonzero column.
class RowEchelon {
 public:
  explicit RowEchelon(std::size_t columns) : columns_(columns) {}

  /// Returns true when the row increased the rank (or exposed an inconsistency).
  bool add(std::vector<Scalar> row, Scalar rhs = Scalar(0));

  std::size_t columns() const { return columns_; }
  std::size_t rank() const { return rows_.size(); }
  bool feasible() const { return feasible_; }
  /// Every unknown is pinned down.
  bool saturated() const { return rows_.size() == columns_; }
  const std::vector<std::vector<Scalar>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  SolutionSpace solution() const;

 private:
  std::size_t columns_;
  bool feasible_ = true;
  std::vector<std::vector<Scalar>> rows_;
  std::vector<Scalar> rhs_;
  std::vector<std::size_t> pivots_;  // sorted ascending, parallel to rows_
};

SolutionSpace solve_linear(std::size_t unknowns, std::span<const LinearConstraint> rows);

/// Kernel of the linear map sending unknown j to the tuple images[j] (all tuples of equal length).
/// Rows are generated in a deterministic order from the image monomials.
std::vector<std::vector<Scalar>> kernel_of_images(std::size_t unknowns,
                                                  const std::vector<std::vector<Poly>>& images);

/// Incremental variant: feeds the images produced by `emit(j)` for every unknown block.
class KernelBuilder {
 public:
  explicit KernelBuilder(std::size_t unknowns) : unknowns_(unknowns) {}
  /// Records that unknown j contributes `value` to output slot `slot`.
  void add(std::size_t j, std::size_t slot, const Poly& value);
  std::vector<std::vector<Scalar>> kernel() const;

 private:
  std::size_t unknowns_;
  std::map<std::pair<std::size_t, Monomial>, std::vector<std::pair<std::size_t, Scalar>>> rows_;
};

/// Canonical basis of span(polys): leading monomials distinct, leading
/// coefficients 1, and no basis element has a nonzero coefficient on another's
/// leading monomial. Sorted by leading monomial ascending.
std::vector<Poly> reduce_basis(std::span<const Poly> polys);

/// True iff `basis` is already in the canonical form produced by reduce_basis.
bool is_reduced_basis(std::span<const Poly> basis);

/// Membership test f in span(basis) for a reduced basis.
bool in_span(const Poly& f, std::span<const Poly> reduced_basis);

/// sum_j coeffs[j] * basis[j]
Poly combine(std::span<const Poly> basis, std::span<const Scalar> coeffs, std::size_t nvars);

/// Per-degree rational bases of homogeneous polynomials.
struct GradedSubspace {
  std::map<int, std::vector<Poly>> slices;

  std::size_t dimension(int degree) const {
    auto it = slices.find(degree);
    return it == slices.end() ? 0 : it->second.size();
  }
  const std::vector<Poly>& slice(int degree) const;
  /// All basis elements with degree <= max_degree, in degree order.
  std::vector<Poly> flatten(int max_degree) const;
};

}  // namespace qcenter
