#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qchan {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense complex matrix, row-major.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * cols_ + j];
  }

  std::span<const Complex> entries() const { return entries_; }
  std::span<Complex> entries() { return entries_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  double frobenius_norm() const;

  /// max |M[i,j] - conj(M[j,i])| <= tol.
  bool is_hermitian(double tol) const;
  /// Returns (M + M^dagger)/2.
  ComplexMatrix hermitian_part() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(Complex s);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> entries_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
CVector operator*(const ComplexMatrix& a, std::span<const Complex> v);

/// Kronecker product: (A⊗B)[i*rB + k, j*cB + l] = A[i,j] B[k,l].
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
CVector kron(std::span<const Complex> a, std::span<const Complex> b);

/// |u><v|
ComplexMatrix outer(std::span<const Complex> u, std::span<const Complex> v);
ComplexMatrix projector(std::span<const Complex> v);
/// <u|v>, conjugate-linear in u.
Complex inner(std::span<const Complex> u, std::span<const Complex> v);
double norm(std::span<const Complex> v);
CVector normalized(std::span<const Complex> v);
/// <v|M|v>
Complex expectation(const ComplexMatrix& m, std::span<const Complex> v);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff(std::span<const Complex> a, std::span<const Complex> b);

/// Dimensions of a two-factor tensor product. Composite index is i*b + k.
struct BipartiteDims {
  std::size_t a = 1;
  std::size_t b = 1;

  BipartiteDims() = default;
  BipartiteDims(std::size_t dim_a, std::size_t dim_b);
  std::size_t total() const { return a * b; }
  friend bool operator==(const BipartiteDims&, const BipartiteDims&) = default;
};

enum class Subsystem { A, B };

/// Transposes the indices of the selected factor.
ComplexMatrix partial_transpose(const ComplexMatrix& m, BipartiteDims dims, Subsystem which);
/// Traces out `traced`, returning the operator on the other factor.
ComplexMatrix partial_trace(const ComplexMatrix& m, BipartiteDims dims, Subsystem traced);

/// Factor dimensions of a multipartite space, first factor slowest.
using SubsystemDims = std::vector<std::size_t>;

std::size_t total_dimension(const SubsystemDims& dims);
/// Transposes the indices of factor `k` only.
ComplexMatrix partial_transpose(const ComplexMatrix& m, const SubsystemDims& dims, std::size_t k);
/// Reorders tensor factors: factor j of the result is factor perm[j] of the input.
ComplexMatrix permute_subsystems(const ComplexMatrix& m, const SubsystemDims& dims,
                                 const std::vector<std::size_t>& perm);
CVector permute_subsystems(std::span<const Complex> v, const SubsystemDims& dims,
                           const std::vector<std::size_t>& perm);

/// Reshapes a vector on C^a ⊗ C^b into its a×b coefficient matrix.
ComplexMatrix as_coefficient_matrix(std::span<const Complex> psi, BipartiteDims dims);

}  // namespace qchan
