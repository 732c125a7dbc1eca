#include "qchan/random.hpp"

#include "qchan/errors.hpp"
#include "qchan/schmidt.hpp"

namespace qchan {

CVector haar_state(Rng& rng, std::size_t dim) {
  CVector v(dim);
  for (auto& z : v) z = rng.complex_normal();
  return normalized(v);
}

ComplexMatrix haar_unitary(Rng& rng, std::size_t dim) {
  std::vector<CVector> columns(dim, CVector(dim));
  for (auto& col : columns)
    for (auto& z : col) z = rng.complex_normal();
  // Gram-Schmidt on Gaussian columns gives the QR factor with positive
  // diagonal R, which is Haar distributed.
  columns = orthonormalize(std::move(columns));
  ComplexMatrix u(dim, dim);
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = 0; i < dim; ++i) u(i, j) = columns[j][i];
  return u;
}

ComplexMatrix random_hermitian(Rng& rng, std::size_t dim) {
  ComplexMatrix g(dim, dim);
  for (auto& z : g.entries()) z = rng.complex_normal();
  return g.hermitian_part();
}

ComplexMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank) {
  ComplexMatrix g(dim, rank);
  for (auto& z : g.entries()) z = rng.complex_normal();
  ComplexMatrix rho = g * g.adjoint();
  rho *= 1.0 / rho.trace().real();
  return rho;
}

std::vector<ComplexMatrix> random_kraus(Rng& rng, std::size_t dim, std::size_t count) {
  if (count == 0) throw PreconditionError("random_kraus: need at least one Kraus operator");
  const ComplexMatrix u = haar_unitary(rng, dim * count);
  std::vector<ComplexMatrix> kraus(count, ComplexMatrix(dim, dim));
  for (std::size_t k = 0; k < count; ++k)
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) kraus[k](i, j) = u(k * dim + i, j);
  return kraus;
}

}  // namespace qchan
