#include "qchan/schmidt.hpp"

#include <cmath>
#include <string>

#include "qchan/eigen.hpp"
#include "qchan/errors.hpp"

namespace qchan {

namespace {

constexpr double kWeightCutoff = 1e-14;
constexpr double kDependentCutoff = 1e-10;

// Removes the components of v along the orthonormal set `basis`; two passes
// keep the result orthogonal to working precision.
void project_out(CVector& v, const std::vector<CVector>& basis) {
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : basis) {
      const Complex c = inner(e, v);
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * e[i];
    }
}

}  // namespace

CVector SchmidtForm::reassemble() const {
  if (weights.empty()) return {};
  CVector out(left.front().size() * right.front().size());
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double s = std::sqrt(weights[k]);
    const auto term = kron(left[k], right[k]);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += s * term[i];
  }
  return out;
}

std::vector<CVector> orthonormalize(std::vector<CVector> vectors) {
  if (vectors.empty()) return vectors;
  const std::size_t n = vectors.front().size();
  if (vectors.size() > n) throw DimensionError("orthonormalize: more vectors than dimensions");
  std::vector<CVector> basis;
  basis.reserve(vectors.size());
  std::size_t next_unit = 0;
  for (auto& v : vectors) {
    const double original = norm(v);
    project_out(v, basis);
    while (norm(v) <= kDependentCutoff * std::max(original, 1.0)) {
      if (next_unit >= n) throw NumericalError("orthonormalize: cannot complete basis");
      v.assign(n, 0.0);
      v[next_unit++] = 1.0;
      project_out(v, basis);
    }
    basis.push_back(normalized(v));
  }
  return basis;
}

SchmidtForm schmidt_decompose(std::span<const Complex> psi, BipartiteDims dims) {
  if (psi.size() != dims.total()) {
    throw DimensionError("schmidt_decompose: vector of length " + std::to_string(psi.size()) +
                         " for dimensions " + std::to_string(dims.a) + "x" + std::to_string(dims.b));
  }
  if (std::abs(norm(psi) - 1.0) > 1e-8) throw PreconditionError("schmidt_decompose: state is not normalised");

  const ComplexMatrix c = as_coefficient_matrix(psi, dims);
  const auto sd = eigh(c * c.adjoint());

  SchmidtForm out;
  for (std::size_t k = dims.a; k-- > 0;) {
    const double w = sd.eigenvalues[k];
    if (w <= kWeightCutoff) break;
    CVector phi = sd.eigenvector(k);
    // chi = C^T conj(phi) / sqrt(w)
    CVector chi(dims.b);
    for (std::size_t b = 0; b < dims.b; ++b) {
      Complex s = 0.0;
      for (std::size_t a = 0; a < dims.a; ++a) s += std::conj(phi[a]) * c(a, b);
      chi[b] = s / std::sqrt(w);
    }
    out.weights.push_back(w);
    out.left.push_back(std::move(phi));
    out.right.push_back(std::move(chi));
  }
  // Exact weights from the eigensolver may not sum to one at 1e-16 level;
  // renormalise so the simplex invariant holds.
  double total = 0.0;
  for (double w : out.weights) total += w;
  for (double& w : out.weights) w /= total;
  return out;
}

}  // namespace qchan
