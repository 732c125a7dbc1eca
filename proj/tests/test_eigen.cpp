#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qchan/eigen.hpp"
#include "qchan/errors.hpp"
#include "qchan/random.hpp"

using namespace qchan;

TEST_CASE("diagonal and Pauli-X spectra") {
  const std::vector<double> diag{3, 1, 2};
  const auto sd = eigh(ComplexMatrix::diagonal(diag));
  CHECK(sd.eigenvalues == std::vector<double>{1, 2, 3});

  ComplexMatrix x(2, 2);
  x(0, 1) = x(1, 0) = 1.0;
  const auto sx = eigh(x);
  CHECK(sx.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(sx.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("3x3 spectra match the characteristic polynomial roots") {
  Rng rng(101);
  for (int t = 0; t < 200; ++t) {
    const auto h = random_hermitian(rng, 3);
    const auto expected = oracle::cubic_eigenvalues(h);
    const auto got = eigh(h).eigenvalues;
    for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(got[i] - expected[i]) <= 1e-10);
  }
}

TEST_CASE("agreement with a dense reference solver, reconstruction, orthonormality") {
  Rng rng(103);
  for (std::size_t n : {1u, 2u, 4u, 7u, 16u, 36u}) {
    const auto h = random_hermitian(rng, n);
    const auto sd = eigh(h);
    const auto ref = oracle::eigenvalues(h);
    for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(sd.eigenvalues[i] - ref[i]) <= 1e-10 * (1.0 + std::abs(ref[i])));
    CHECK(std::is_sorted(sd.eigenvalues.begin(), sd.eigenvalues.end()));
    CHECK(frobenius_distance(sd.reconstruct(), h) <= 1e-12 * std::max(1.0, h.frobenius_norm()));
    CHECK(max_abs_diff(sd.eigenvectors.adjoint() * sd.eigenvectors, ComplexMatrix::identity(n)) <= 1e-12);
  }
}

TEST_CASE("degenerate clusters are phase fixed and ordered") {
  const auto sd = eigh(ComplexMatrix::identity(4));
  CHECK(max_abs_diff(sd.eigenvectors * sd.eigenvectors.adjoint(), ComplexMatrix::identity(4)) <= 1e-14);
  for (std::size_t k = 0; k < 4; ++k) {
    const CVector v = sd.eigenvector(k);
    auto first = std::find_if(v.begin(), v.end(), [](Complex z) { return std::abs(z) > 1e-12; });
    REQUIRE(first != v.end());
    CHECK(std::abs(first->imag()) <= 1e-14);
    CHECK(first->real() > 0.0);
  }

  // A rotated degenerate pair still yields the same vectors on reruns.
  Rng rng(107);
  const auto u = haar_unitary(rng, 3);
  const std::vector<double> diag{1, 1, 2};
  const auto h = u * ComplexMatrix::diagonal(diag) * u.adjoint();
  const auto a = eigh(h), b = eigh(h);
  CHECK(max_abs_diff(a.eigenvectors, b.eigenvectors) == 0.0);
  CHECK(a.eigenvalues == b.eigenvalues);
}

TEST_CASE("non-Hermitian input is rejected") {
  ComplexMatrix m = ComplexMatrix::identity(3);
  m(0, 2) = 0.5;
  CHECK_THROWS_AS(eigh(m), PreconditionError);
  CHECK_THROWS_AS(eigh(ComplexMatrix(2, 3)), DimensionError);
}

TEST_CASE("PSD tolerance is scale aware") {
  std::vector<double> d{1.0, -5e-10};
  CHECK(is_psd(ComplexMatrix::diagonal(d)));
  d[1] = -2e-9;
  CHECK_FALSE(is_psd(ComplexMatrix::diagonal(d)));
  std::vector<double> big{1e3, -5e-7};
  CHECK(is_psd(ComplexMatrix::diagonal(big)));
  CHECK(psd_tolerance(ComplexMatrix::diagonal(big)) == doctest::Approx(1e-6));
}

TEST_CASE("min_eigenpair returns a unit eigenvector") {
  Rng rng(109);
  const auto h = random_hermitian(rng, 9);
  const auto p = min_eigenpair(h);
  CHECK(p.value == doctest::Approx(oracle::min_eigenvalue(h)).epsilon(1e-12));
  CHECK(norm(p.vector) == doctest::Approx(1.0).epsilon(1e-13));
  const CVector hv = h * p.vector;
  double dev = 0.0;
  for (std::size_t i = 0; i < hv.size(); ++i) dev = std::max(dev, std::abs(hv[i] - p.value * p.vector[i]));
  CHECK(dev <= 1e-11);
}
