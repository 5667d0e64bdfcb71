#include "qcenter/symplectic.hpp"

#include "qcenter/errors.hpp"

namespace qcenter {

SymplecticSpace SymplecticSpace::standard(std::size_t n) {
  const std::size_t d = 2 * n;
  std::vector<std::vector<Scalar>> P(d, std::vector<Scalar>(d));
  for (std::size_t i = 0; i < n; ++i) {
    P[i][n + i] = 1;
    P[n + i][i] = -1;
  }
  return SymplecticSpace(n, std::move(P), std::vector<int>(d, -1), 2);
}

SymplecticSpace::SymplecticSpace(std::size_t n, std::vector<std::vector<Scalar>> bivector, std::vector<int> weights,
                                 int hbar_weight)
    : n_(n), bivector_(std::move(bivector)), weights_(std::move(weights)), hbar_weight_(hbar_weight) {
  const std::size_t d = 2 * n_;
  if (d > kMaxVariables) throw ValidationError("at most " + std::to_string(kMaxVariables / 2) + " symplectic pairs");
  if (bivector_.size() != d) throw ValidationError("Poisson bivector must be " + std::to_string(d) + "x" + std::to_string(d));
  for (const auto& row : bivector_)
    if (row.size() != d) throw ValidationError("Poisson bivector must be square");
  if (weights_.size() != d) throw ValidationError("weight vector must have length " + std::to_string(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (bivector_[i][j] != -bivector_[j][i]) throw ValidationError("Poisson bivector is not antisymmetric");
  if (matrix_rank(bivector_) != d) throw ValidationError("Poisson bivector is degenerate");
  for (std::size_t i = 0; i < n_; ++i) names_.push_back("q" + std::to_string(i + 1));
  for (std::size_t i = 0; i < n_; ++i) names_.push_back("p" + std::to_string(i + 1));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (!is_zero(bivector_[i][j])) entries_.push_back({i, j, bivector_[i][j]});
}

bool SymplecticSpace::is_standard_form() const { return bivector_ == standard(n_).bivector_; }

std::size_t matrix_rank(std::vector<std::vector<Scalar>> m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m.front().size();
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && is_zero(m[pivot][c])) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (is_zero(m[r][c])) continue;
      const Scalar factor = m[r][c] / m[rank][c];
      for (std::size_t k = c; k < cols; ++k) m[r][k] -= factor * m[rank][k];
    }
    ++rank;
  }
  return rank;
}

}  // namespace qcenter
