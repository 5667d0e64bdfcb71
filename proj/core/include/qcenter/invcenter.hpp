#pragma once

#include <cstddef>
#include <vector>

#include "qcenter/envalg.hpp"
#include "qcenter/hseries.hpp"
#include "qcenter/linalg.hpp"

namespace qcenter {

/// Homogeneous invariants {f : {H_i, f} = 0 for all i}, one slice per degree <= D.
GradedSubspace invariants_up_to(const HamiltonianAction& act, int D);

/// Slices of the subalgebra generated by the pullbacks of the designated
/// invariant generators of S(g).
GradedSubspace moment_image_basis(const HamiltonianAction& act, int D);

/// Invariants of degree <= D that Poisson-commute with every invariant of degree <= Dtest.
GradedSubspace poisson_center_up_to(const HamiltonianAction& act, int D, int Dtest);

/// One slice of the quantum centralizer. Degree counts hbar as 2, so the
/// coefficient of hbar^m has polynomial degree `degree - 2m`.
struct QuantumSlice {
  int degree = 0;
  /// Dimension over K of the solution space.
  std::size_t raw_dimension = 0;
  /// Number of solutions with independent hbar^0 parts.
  std::size_t rank = 0;
  /// `rank` solutions whose hbar^0 parts are independent.
  std::vector<HSeries> generators;
};

struct QuantumCenter {
  int order = 0;
  std::vector<QuantumSlice> slices;  // ascending degree, 0..D

  const QuantumSlice& slice(int degree) const;
};

/// Series with invariant coefficients commuting with every invariant of degree
/// <= Dtest modulo hbar^{N+1}.
QuantumCenter quantum_center_up_to(const HamiltonianAction& act, int D, int Dtest, int N);

struct CenterRow {
  int degree = 0;
  std::size_t invariant_dim = 0;
  std::size_t poisson_dim = 0;
  std::size_t quantum_rank = 0;
  std::size_t quantum_raw_dim = 0;
  std::vector<Poly> poisson_basis;
  std::vector<HSeries> quantum_generators;
  /// hbar^0 parts of the quantum generators lie in the Poisson slice.
  bool triangle = true;

  bool equal() const { return poisson_dim == quantum_rank && triangle; }
};

struct CenterReport {
  int max_degree = 0;
  int test_degree = 0;
  int order = 0;
  std::vector<CenterRow> rows;

  std::vector<int> mismatches() const;
  bool passed() const { return mismatches().empty(); }
};

CenterReport compare_centers(const HamiltonianAction& act, int D, int Dtest, int N);

}  // namespace qcenter
