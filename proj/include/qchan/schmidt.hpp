#pragma once

#include <vector>

#include "qchan/matrix.hpp"

namespace qchan {

/// psi = Σ_i sqrt(weights[i]) |left[i]> ⊗ |right[i]>, weights nonincreasing.
/// Only terms with weight above 1e-14 are kept, so weights.size() is the
/// Schmidt rank.
struct SchmidtForm {
  std::vector<double> weights;
  std::vector<CVector> left;
  std::vector<CVector> right;

  std::size_t rank() const { return weights.size(); }
  CVector reassemble() const;
};

/// Throws PreconditionError unless |psi| = 1 within 1e-8.
SchmidtForm schmidt_decompose(std::span<const Complex> psi, BipartiteDims dims);

/// Gram-Schmidt orthonormalisation of `vectors` in order. Vectors that are
/// linearly dependent on earlier ones are replaced by computational basis
/// vectors orthogonalised against the set, so the result always has
/// vectors.size() orthonormal entries (requires vectors.size() <= dimension).
std::vector<CVector> orthonormalize(std::vector<CVector> vectors);

}  // namespace qchan
