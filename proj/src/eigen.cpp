#include "qchan/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "qchan/errors.hpp"

namespace qchan {

namespace {

constexpr int kMaxSweeps = 100;
// Entries below this fraction of the vector norm are skipped when fixing phases.
constexpr double kPhaseCutoff = 1e-10;
constexpr double kLexTol = 1e-12;

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t p = 0; p < a.rows(); ++p)
    for (std::size_t q = p + 1; q < a.cols(); ++q) s += std::norm(a(p, q));
  return std::sqrt(2.0 * s);
}

void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const Complex h = a(p, q);
  const double habs = std::abs(h);
  if (habs == 0.0) return;
  const Complex phase = h / habs;
  const Complex phase_c = std::conj(phase);
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();

  const double theta = (aqq - app) / (2.0 * habs);
  double t;
  if (std::abs(theta) > 1e150) {
    t = 0.5 / theta;
  } else {
    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  }
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;

  const std::size_t n = a.rows();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp - s * phase_c * akq;
    a(k, q) = s * akp + c * phase_c * akq;
  }
  for (std::size_t k = 0; k < n; ++k) {
    const Complex apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = app - t * habs;
  a(q, q) = aqq + t * habs;

  for (std::size_t k = 0; k < n; ++k) {
    const Complex vkp = v(k, p), vkq = v(k, q);
    v(k, p) = c * vkp - s * phase_c * vkq;
    v(k, q) = s * vkp + c * phase_c * vkq;
  }
}

void fix_phase(CVector& vec) {
  const double n = norm(vec);
  for (const auto& z : vec) {
    const double mag = std::abs(z);
    if (mag > kPhaseCutoff * n) {
      const Complex f = std::conj(z) / mag;
      for (auto& w : vec) w *= f;
      return;
    }
  }
}

bool lex_less(const CVector& x, const CVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (std::abs(x[i].real() - y[i].real()) > kLexTol) return x[i].real() < y[i].real();
    if (std::abs(x[i].imag() - y[i].imag()) > kLexTol) return x[i].imag() < y[i].imag();
  }
  return false;
}

}  // namespace

CVector SpectralDecomposition::eigenvector(std::size_t k) const {
  CVector out(eigenvectors.rows());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = eigenvectors(i, k);
  return out;
}

ComplexMatrix SpectralDecomposition::reconstruct() const {
  const std::size_t n = eigenvectors.rows();
  ComplexMatrix out(n, n);
  for (std::size_t k = 0; k < eigenvalues.size(); ++k)
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eigenvalues[k] * eigenvectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(eigenvectors(j, k));
    }
  return out;
}

SpectralDecomposition eigh(const ComplexMatrix& h) {
  if (!h.is_square()) throw DimensionError("eigh: matrix is not square");
  const double scale = h.frobenius_norm();
  if (!h.is_hermitian(1e-9 * std::max(1.0, scale))) {
    throw PreconditionError("eigh: matrix is not Hermitian");
  }
  const std::size_t n = h.rows();
  ComplexMatrix a = h.hermitian_part();
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double target = std::numeric_limits<double>::epsilon() * std::max(scale, 1e-300);
  int sweep = 0;
  for (; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= target) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        const double habs = std::abs(a(p, q));
        const double diag = std::abs(a(p, p).real()) + std::abs(a(q, q).real());
        // Negligible against the diagonal: drop instead of rotating.
        if (sweep > 3 && habs <= 1e-18 * diag) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
  }
  if (sweep == kMaxSweeps && off_diagonal_norm(a) > 1e3 * target) {
    throw NumericalError("eigh: Jacobi iteration did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });

  std::vector<double> values(n);
  std::vector<CVector> vectors(n, CVector(n));
  for (std::size_t k = 0; k < n; ++k) {
    values[k] = a(order[k], order[k]).real();
    for (std::size_t i = 0; i < n; ++i) vectors[k][i] = v(i, order[k]);
    fix_phase(vectors[k]);
  }

  double vmax = 1.0;
  for (double x : values) vmax = std::max(vmax, std::abs(x));
  const double cluster_tol = 1e-12 * vmax;
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  for (std::size_t start = 0; start < n;) {
    std::size_t end = start + 1;
    while (end < n && values[end] - values[end - 1] <= cluster_tol) ++end;
    if (end - start > 1) {
      std::stable_sort(idx.begin() + static_cast<std::ptrdiff_t>(start),
                       idx.begin() + static_cast<std::ptrdiff_t>(end),
                       [&](std::size_t x, std::size_t y) { return lex_less(vectors[x], vectors[y]); });
    }
    start = end;
  }

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = values[idx[k]];
    for (std::size_t i = 0; i < n; ++i) out.eigenvectors(i, k) = vectors[idx[k]][i];
  }
  return out;
}

double psd_tolerance(const ComplexMatrix& m) { return 1e-9 * std::max(1.0, m.frobenius_norm()); }

EigenPair min_eigenpair(const ComplexMatrix& h) {
  auto sd = eigh(h);
  return {sd.eigenvalues.front(), sd.eigenvector(0)};
}

double min_eigenvalue(const ComplexMatrix& h) { return eigh(h).eigenvalues.front(); }

bool is_psd(const ComplexMatrix& m) { return min_eigenvalue(m) >= -psd_tolerance(m); }

}  // namespace qchan
