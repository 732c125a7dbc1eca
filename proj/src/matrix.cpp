#include "qchan/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qchan/errors.hpp"

namespace qchan {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows_ * cols_) {
    throw DimensionError("ComplexMatrix: " + std::to_string(entries_.size()) +
                         " entries for a " + std::to_string(rows_) + "x" +
                         std::to_string(cols_) + " matrix");
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out = *this;
  for (auto& z : out.entries_) z = std::conj(z);
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace of a non-square matrix");
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) return false;
  return true;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
  if (!is_square()) throw DimensionError("hermitian_part of a non-square matrix");
  ComplexMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(i, j) = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
  return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix sum shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw DimensionError("matrix difference shape mismatch");
  for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : entries_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("matrix product: " + std::to_string(a.cols()) + " columns vs " +
                         std::to_string(b.rows()) + " rows");
  }
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

CVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size()) throw DimensionError("matrix-vector product shape mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return out;
}

CVector kron(std::span<const Complex> a, std::span<const Complex> b) {
  CVector out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) out[i * b.size() + k] = a[i] * b[k];
  return out;
}

ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v) {
  ComplexMatrix out(u.size(), v.size());
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out(i, j) = u[i] * std::conj(v[j]);
  return out;
}

ComplexMatrix projector(std::span<const Complex> v) { return outer(v, v); }

Complex inner(std::span<const Complex> u, std::span<const Complex> v) {
  if (u.size() != v.size()) throw DimensionError("inner product length mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

CVector normalized(std::span<const Complex> v) {
  const double n = norm(v);
  if (n == 0.0) throw PreconditionError("cannot normalise the zero vector");
  CVector out(v.begin(), v.end());
  for (auto& z : out) z /= n;
  return out;
}

Complex expectation(const ComplexMatrix& m, std::span<const Complex> v) {
  if (m.rows() != v.size() || m.cols() != v.size()) throw DimensionError("expectation shape mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    Complex row = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) row += m(i, j) * v[j];
    s += std::conj(v[i]) * row;
  }
  return s;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("max_abs_diff shape mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.entries().size(); ++k)
    m = std::max(m, std::abs(a.entries()[k] - b.entries()[k]));
  return m;
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).frobenius_norm();
}

double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionError("max_abs_diff length mismatch");
  double m = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
  return m;
}

BipartiteDims::BipartiteDims(std::size_t dim_a, std::size_t dim_b) : a(dim_a), b(dim_b) {
  if (a < 1 || b < 1) throw DimensionError("subsystem dimensions must be at least 1");
}

namespace {

void require_side(const ComplexMatrix& m, std::size_t n, const char* what) {
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError(std::string(what) + ": expected a " + std::to_string(n) + "x" +
                         std::to_string(n) + " matrix, got " + std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

}  // namespace

ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Subsystem which) {
  return partial_transpose(m, SubsystemDims{dims.a, dims.b}, which == Subsystem::A ? 0 : 1);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem traced) {
  require_side(m, dims.total(), "partial_trace");
  const std::size_t da = dims.a, db = dims.b;
  if (traced == Subsystem::B) {
    ComplexMatrix out(da, da);
    for (std::size_t i = 0; i < da; ++i)
      for (std::size_t j = 0; j < da; ++j) {
        Complex s = 0.0;
        for (std::size_t k = 0; k < db; ++k) s += m(i * db + k, j * db + k);
        out(i, j) = s;
      }
    return out;
  }
  ComplexMatrix out(db, db);
  for (std::size_t k = 0; k < db; ++k)
    for (std::size_t l = 0; l < db; ++l) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < da; ++i) s += m(i * db + k, i * db + l);
      out(k, l) = s;
    }
  return out;
}

std::size_t total_dimension(const SubsystemDims& dims) {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemDims& dims, std::size_t k) {
  if (k >= dims.size()) throw DimensionError("partial_transpose: no such subsystem");
  const std::size_t n = total_dimension(dims);
  require_side(m, n, "partial_transpose");
  std::size_t stride = 1;
  for (std::size_t j = k + 1; j < dims.size(); ++j) stride *= dims[j];
  const std::size_t dk = dims[k];

  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t dr = (r / stride) % dk;
    for (std::size_t c = 0; c < n; ++c) {
      const std::size_t dc = (c / stride) % dk;
      const std::size_t nr = r - dr * stride + dc * stride;
      const std::size_t nc = c - dc * stride + dr * stride;
      out(nr, nc) = m(r, c);
    }
  }
  return out;
}

namespace {

std::vector<std::size_t> permuted_indices(const SubsystemDims& dims,
                                          const std::vector<std::size_t>& perm) {
  const std::size_t parts = dims.size();
  if (perm.size() != parts) throw DimensionError("permutation length does not match subsystem count");
  std::vector<bool> seen(parts, false);
  for (auto p : perm) {
    if (p >= parts || seen[p]) throw DimensionError("invalid subsystem permutation");
    seen[p] = true;
  }

  std::vector<std::size_t> in_stride(parts, 1);
  for (std::size_t j = parts; j-- > 1;) in_stride[j - 1] = in_stride[j] * dims[j];
  std::vector<std::size_t> out_stride(parts, 1);
  for (std::size_t j = parts; j-- > 1;) out_stride[j - 1] = out_stride[j] * dims[perm[j]];

  const std::size_t n = total_dimension(dims);
  std::vector<std::size_t> map(n);
  for (std::size_t idx = 0; idx < n; ++idx) {
    std::size_t target = 0;
    for (std::size_t j = 0; j < parts; ++j) {
      const std::size_t src = perm[j];
      const std::size_t digit = (idx / in_stride[src]) % dims[src];
      target += digit * out_stride[j];
    }
    map[idx] = target;
  }
  return map;
}

}  // namespace

ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 const std::vector<std::size_t>& perm) {
  const std::size_t n = total_dimension(dims);
  require_side(m, n, "permute_subsystems");
  const auto map = permuted_indices(dims, perm);
  ComplexMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) out(map[r], map[c]) = m(r, c);
  return out;
}

CVector permute_subsystems(std::span<const Complex> v, const SubsystemDims& dims,
                           const std::vector<std::size_t>& perm) {
  if (v.size() != total_dimension(dims)) throw DimensionError("permute_subsystems: vector length mismatch");
  const auto map = permuted_indices(dims, perm);
  CVector out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[map[i]] = v[i];
  return out;
}

ComplexMatrix as_coefficient_matrix(std::span<const Complex> psi, BipartiteDims dims) {
  if (psi.size() != dims.total()) throw DimensionError("state length does not match dimensions");
  return ComplexMatrix(dims.a, dims.b, CVector(psi.begin(), psi.end()));
}

}  // namespace qchan
