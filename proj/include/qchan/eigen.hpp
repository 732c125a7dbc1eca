#pragma once

#include <vector>

#include "qchan/matrix.hpp"

namespace qchan {

/// Eigenvalues ascending; eigenvector k is column k of `eigenvectors`.
///
/// Each eigenvector is phase-fixed so that its first non-negligible entry is
/// real and positive. Within a cluster of (numerically) degenerate
/// eigenvalues the vectors are ordered lexicographically, so the output is a
/// pure function of the input matrix.
struct SpectralDecomposition {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  CVector eigenvector(std::size_t k) const;
  ComplexMatrix reconstruct() const;
};

/// Cyclic Jacobi diagonalisation of a Hermitian matrix.
/// Throws PreconditionError if H is not Hermitian within 1e-9*max(1,|H|_F).
SpectralDecomposition eigh(const ComplexMatrix& h);

/// Threshold of the global PSD convention: 1e-9 * max(1, |M|_F).
double psd_tolerance(const ComplexMatrix& m);

struct EigenPair {
  double value = 0.0;
  CVector vector;
};

EigenPair min_eigenpair(const ComplexMatrix& h);
double min_eigenvalue(const ComplexMatrix& h);

/// λ_min(M) >= -psd_tolerance(M).
bool is_psd(const ComplexMatrix& m);

}  // namespace qchan
