#include "qcenter/linalg.hpp"

#include <algorithm>
#include <set>

#include "qcenter/errors.hpp"

namespace qcenter {

bool RowEchelon::add(std::vector<Scalar> row, Scalar rhs) {
  if (row.size() != columns_) throw DimensionError("constraint has the wrong number of unknowns");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (is_zero(row[p])) continue;
    const Scalar factor = row[p];
    const auto& base = rows_[r];
    for (std::size_t c = p; c < columns_; ++c)
      if (!is_zero(base[c])) row[c] -= factor * base[c];
    rhs -= factor * rhs_[r];
  }
  std::size_t pivot = 0;
  while (pivot < columns_ && is_zero(row[pivot])) ++pivot;
  if (pivot == columns_) {
    if (!is_zero(rhs) && feasible_) {
      feasible_ = false;
      return true;
    }
    return false;
  }
  const Scalar lead = row[pivot];
  for (std::size_t c = pivot; c < columns_; ++c)
    if (!is_zero(row[c])) row[c] /= lead;
  rhs /= lead;
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    if (is_zero(rows_[r][pivot])) continue;
    const Scalar factor = rows_[r][pivot];
    for (std::size_t c = pivot; c < columns_; ++c)
      if (!is_zero(row[c])) rows_[r][c] -= factor * row[c];
    rhs_[r] -= factor * rhs;
  }
  const auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot) - pivots_.begin();
  pivots_.insert(pivots_.begin() + pos, pivot);
  rows_.insert(rows_.begin() + pos, std::move(row));
  rhs_.insert(rhs_.begin() + pos, std::move(rhs));
  return true;
}

SolutionSpace RowEchelon::solution() const {
  SolutionSpace out;
  if (!feasible_) {
    out.feasible = false;
    return out;
  }
  out.particular.assign(columns_, Scalar(0));
  for (std::size_t r = 0; r < rows_.size(); ++r) out.particular[pivots_[r]] = rhs_[r];
  std::vector<bool> is_pivot(columns_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  for (std::size_t f = 0; f < columns_; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Scalar> v(columns_);
    v[f] = 1;
    for (std::size_t r = 0; r < rows_.size(); ++r)
      if (!is_zero(rows_[r][f])) v[pivots_[r]] = -rows_[r][f];
    out.basis.push_back(std::move(v));
  }
  return out;
}

SolutionSpace solve_linear(std::size_t unknowns, std::span<const LinearConstraint> rows) {
  RowEchelon ech(unknowns);
  for (const auto& c : rows) ech.add(c.coefficients, c.rhs);
  return ech.solution();
}

void KernelBuilder::add(std::size_t j, std::size_t slot, const Poly& value) {
  if (j >= unknowns_) throw DimensionError("unknown index out of range");
  for (const auto& [m, c] : value.terms()) rows_[{slot, m}].emplace_back(j, c);
}

std::vector<std::vector<Scalar>> KernelBuilder::kernel() const {
  RowEchelon ech(unknowns_);
  for (const auto& [key, entries] : rows_) {
    if (ech.saturated()) break;
    std::vector<Scalar> row(unknowns_);
    for (const auto& [j, c] : entries) row[j] += c;
    ech.add(std::move(row));
  }
  return ech.solution().basis;
}

std::vector<std::vector<Scalar>> kernel_of_images(std::size_t unknowns,
                                                  const std::vector<std::vector<Poly>>& images) {
  if (images.size() != unknowns) throw DimensionError("need one image tuple per unknown");
  KernelBuilder kb(unknowns);
  for (std::size_t j = 0; j < unknowns; ++j)
    for (std::size_t s = 0; s < images[j].size(); ++s) kb.add(j, s, images[j][s]);
  return kb.kernel();
}

std::vector<Poly> reduce_basis(std::span<const Poly> polys) {
  if (polys.empty()) return {};
  const std::size_t nvars = polys.front().nvars();
  std::set<Monomial> support;
  for (const auto& p : polys) {
    if (p.nvars() != nvars) throw DimensionError("basis polynomials over different spaces");
    for (const auto& t : p.terms()) support.insert(t.first);
  }
  // Column 0 is the largest monomial so the leftmost pivot is the leading term.
  std::vector<Monomial> columns(support.rbegin(), support.rend());
  std::map<Monomial, std::size_t> index;
  for (std::size_t c = 0; c < columns.size(); ++c) index[columns[c]] = c;
  RowEchelon ech(columns.size());
  for (const auto& p : polys) {
    std::vector<Scalar> row(columns.size());
    for (const auto& [m, c] : p.terms()) row[index[m]] = c;
    ech.add(std::move(row));
  }
  std::vector<Poly> out;
  for (const auto& row : ech.rows()) {
    PolyBuilder b(nvars);
    for (std::size_t c = 0; c < columns.size(); ++c) b.add(columns[c], row[c]);
    out.push_back(b.build());
  }
  std::sort(out.begin(), out.end(),
            [](const Poly& a, const Poly& b) { return a.leading_term().first < b.leading_term().first; });
  return out;
}

bool is_reduced_basis(std::span<const Poly> basis) {
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (basis[i].is_zero() || basis[i].leading_term().second != 1) return false;
    if (i > 0 && !(basis[i - 1].leading_term().first < basis[i].leading_term().first)) return false;
    for (std::size_t j = 0; j < basis.size(); ++j)
      if (i != j && !is_zero(basis[j].coefficient(basis[i].leading_term().first))) return false;
  }
  return true;
}

bool in_span(const Poly& f, std::span<const Poly> reduced_basis) {
  Poly r = f;
  for (const auto& b : reduced_basis) {
    const Scalar c = f.coefficient(b.leading_term().first);
    if (!is_zero(c)) r -= b * c;
  }
  return r.is_zero();
}

Poly combine(std::span<const Poly> basis, std::span<const Scalar> coeffs, std::size_t nvars) {
  if (basis.size() != coeffs.size()) throw DimensionError("coefficient count does not match basis size");
  PolyBuilder b(nvars);
  for (std::size_t j = 0; j < basis.size(); ++j) b.add(basis[j], coeffs[j]);
  return b.build();
}

const std::vector<Poly>& GradedSubspace::slice(int degree) const {
  static const std::vector<Poly> empty;
  auto it = slices.find(degree);
  return it == slices.end() ? empty : it->second;
}

std::vector<Poly> GradedSubspace::flatten(int max_degree) const {
  std::vector<Poly> out;
  for (const auto& [d, basis] : slices)
    if (d <= max_degree) out.insert(out.end(), basis.begin(), basis.end());
  return out;
}

}  // namespace qcenter
