#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qchan/matrix.hpp"

namespace qchan {

/// State-normalised Choi matrix Ω = (Φ ⊗ Id)[|Ψ+><Ψ+|] on S ⊗ S', output
/// system S first. For a map on a composite A⊗B the factor order is
/// A, B, A', B'.
class ChoiOperator {
 public:
  ChoiOperator() = default;
  ChoiOperator(ComplexMatrix matrix, std::size_t dim);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return dim_; }
  BipartiteDims cut() const { return {dim_, dim_}; }

  bool is_hermitian() const;
  /// Ω PSD under the global tolerance, i.e. the map is completely positive.
  bool is_completely_positive() const;
  /// tr_S Ω = I/d within 1e-9.
  bool is_trace_preserving() const;

 private:
  ComplexMatrix matrix_;
  std::size_t dim_ = 0;
};

/// A linear map M_d -> M_d. The Choi operator is always present; a Kraus
/// list is kept when the map was built from one (or extracted on request).
class Channel {
 public:
  /// Throws PreconditionError when `require_tp` and Σ K†K != I within 1e-9.
  static Channel from_kraus(std::vector<ComplexMatrix> kraus, bool require_tp = true);
  static Channel from_choi(ChoiOperator choi);

  std::size_t dim() const { return choi_.dim(); }
  std::size_t d_in() const { return dim(); }
  std::size_t d_out() const { return dim(); }

  const ChoiOperator& choi() const { return choi_; }
  const std::optional<std::vector<ComplexMatrix>>& kraus() const { return kraus_; }
  bool is_trace_preserving() const { return trace_preserving_; }
  bool is_completely_positive() const { return choi_.is_completely_positive(); }

  /// Factorisation A⊗B of the system, when the channel acts on a composite.
  const std::optional<BipartiteDims>& subsystems() const { return subsystems_; }
  Channel with_subsystems(BipartiteDims dims) const;

 private:
  Channel(ChoiOperator choi, std::optional<std::vector<ComplexMatrix>> kraus);

  friend Channel tensor(const Channel&, const Channel&);
  friend Channel compose(const Channel&, const Channel&);
  friend Channel dual_map(const Channel&);

  ChoiOperator choi_;
  std::optional<std::vector<ComplexMatrix>> kraus_;
  std::optional<BipartiteDims> subsystems_;
  bool trace_preserving_ = false;
};

ChoiOperator choi_from_kraus(std::span<const ComplexMatrix> kraus);
/// Throws PreconditionError if the channel carries no Kraus list.
ChoiOperator choi_from_kraus(const Channel& ch);

/// Φ[X] = d tr_S'[Ω (I ⊗ X^T)], evaluated as the equivalent contraction
/// Φ[X]_{ab} = d Σ_ij Ω_{(a,i),(b,j)} X_ij.
ComplexMatrix apply(const Channel& ch, const ComplexMatrix& x);
/// Σ_k K_k X K_k†. Throws PreconditionError without a Kraus list.
ComplexMatrix apply_kraus(const Channel& ch, const ComplexMatrix& x);
/// Dual (Heisenberg picture) map Φ†[Y], computed from the Choi matrix.
ComplexMatrix apply_dual(const Channel& ch, const ComplexMatrix& y);

/// Spectral extraction K_k = sqrt(d λ_k) unvec(v_k); one operator per
/// nonzero eigenvalue. Throws PreconditionError if Ω is not PSD.
Channel kraus_from_choi(const ChoiOperator& choi);

/// Φ1 ⊗ Φ2 acting on A⊗B. The Choi matrix is the A,A',B,B' -> A,B,A',B'
/// permutation of Ω1 ⊗ Ω2.
Channel tensor(const Channel& first, const Channel& second);
/// Reorders a composite Choi matrix from A,B,A',B' to A,A',B,B'.
ComplexMatrix to_local_blocks(const ComplexMatrix& composite, BipartiteDims dims);
/// Inverse of to_local_blocks.
ComplexMatrix from_local_blocks(const ComplexMatrix& local, BipartiteDims dims);

/// Choi matrix of Φ∘Ξ by direct contraction of the two Choi matrices:
/// Ω_{Φ∘Ξ}[(m,k),(n,l)] = d Σ_ij Ω_Φ[(m,i),(n,j)] Ω_Ξ[(i,k),(j,l)].
ChoiOperator compose_star(const ChoiOperator& phi, const ChoiOperator& xi);
/// Φ∘Ξ as a channel; Kraus products {K_i L_j} are kept when both sides carry Kraus lists.
Channel compose(const Channel& phi, const Channel& xi);

/// tr[Φ†[X] Y] = tr[X Φ[Y]]. Kraus list {K_k†} when available.
Channel dual_map(const Channel& ch);

Channel identity_channel(std::size_t d);
Channel unitary_channel(const ComplexMatrix& u);
/// |Ψ+> = d^{-1/2} Σ_i |i>|i>.
CVector max_entangled_state(std::size_t d);

/// Lower end of the CP range of the depolarizing family, -1/(d²-1).
double depolarizing_min_q(std::size_t d);
/// Φ_q[X] = q X + (1-q) tr[X] I/d, with Weyl-operator Kraus list.
/// Throws PreconditionError("not completely positive") outside [-1/(d²-1), 1].
Channel depolarizing(std::size_t d, double q);
/// Φ_q ⊗ Φ_q on d⊗d.
Channel depolarizing_pair(std::size_t d, double q);

}  // namespace qchan
