#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/matrix.hpp"
#include "qchan/schmidt.hpp"

namespace qchan {

/// Parameters shared by every multi-restart see-saw search.
struct SeesawConfig {
  std::size_t restarts = 32;
  std::size_t max_iters = 500;
  double tol = 1e-9;
  std::uint64_t seed = 0;

  /// Throws PreconditionError if restarts == 0 or tol <= 0.
  void validate() const;
};

struct PptReport {
  double min_pt_eigenvalue = 0.0;
  CVector witness;  // eigenvector of ρ^{T_B} for min_pt_eigenvalue
  bool is_ppt = false;
};

/// Spectrum of ρ^{T_B}. Throws PreconditionError unless ρ is Hermitian with
/// unit trace (1e-8).
PptReport ppt_report(const ComplexMatrix& rho, BipartiteDims dims);

/// Exact separability test through PPT, valid for dA·dB <= 6.
/// Throws PreconditionError for larger dimensions.
bool is_separable_low_dim(const ComplexMatrix& rho, BipartiteDims dims);

/// A Schmidt-rank-2 vector ψ = cos θ a1⊗b1 + sin θ a2⊗b2 with
/// <ψ|ρ^{T_B}|ψ> = value < 0.
struct RankTwoWitness {
  CVector vector;
  double value = 0.0;
  SchmidtForm schmidt;
};

/// Evaluates <ψ|ρ^{T_B}|ψ> directly.
double pt_expectation(const ComplexMatrix& rho, BipartiteDims dims, std::span<const Complex> psi);

/// See-saw search for a one-copy distillability witness. Returns nothing
/// when ρ is PPT (no witness can exist) or when the search finds no value
/// below -psd_tolerance(ρ); the latter is evidence, not a certificate.
std::optional<RankTwoWitness> refute_one_copy_undistillability(const ComplexMatrix& rho, BipartiteDims dims,
                                                               const SeesawConfig& cfg);

enum class BlockPositivityTag { CertifiedPsd, NumericallyBlockPositive, Refuted, Unknown };

struct BlockPositivityVerdict {
  BlockPositivityTag tag = BlockPositivityTag::Unknown;
  /// λ_min for CertifiedPsd, otherwise the smallest product value found.
  double margin = 0.0;
  /// Minimising product vector a⊗b (set unless CertifiedPsd).
  CVector a;
  CVector b;
  double value = 0.0;

  CVector product() const { return kron(a, b); }
};

/// Decides PSD exactly, otherwise minimises <a⊗b|Ω|a⊗b> by alternating
/// minimal-eigenvector updates of a and b. Never proves block-positivity.
BlockPositivityVerdict block_positivity(const ComplexMatrix& om, BipartiteDims cut, const SeesawConfig& cfg);

struct WorstCaseResult {
  double min_value = 0.0;
  CVector input;           // pure input state ψ on A⊗B
  CVector output_witness;  // minimal eigenvector of (Φ[ψψ†])^{T_B}
  bool converged = true;
};

/// Approximates min_ψ λ_min((Φ[ψψ†])^{T_B}). Alternates between the minimal
/// PT eigenvector w of the output and the minimal eigenvector of the
/// pulled-back operator Φ†[(ww†)^{T_B}].
WorstCaseResult worst_case_output_pt(const Channel& ch, BipartiteDims cut, const SeesawConfig& cfg);

/// λ_min of the partial transpose of Φ_q⊗Φ_q[ψψ†] for ψ = Σ_i sqrt(λ_i)|ii>,
/// using the closed-form output q²ψψ† + q(1-q)(ρ⊗I + I⊗ρ)/d + (1-q)² I/d².
double schmidt_profile_value(std::size_t d, double q, std::span<const double> lambda);

struct RestrictedWorstCase {
  double min_value = 0.0;
  std::vector<double> lambda;  // sorted nonincreasing
};

/// Minimises schmidt_profile_value over the probability simplex: grid of step
/// 0.05 followed by Nelder-Mead refinement to simplex size below 1e-6. By
/// local-unitary covariance of Φ_q this is the exact worst case over all
/// pure inputs.
RestrictedWorstCase schmidt_restricted_worst_case(std::size_t d, double q);

/// All points of the simplex {λ_i >= 0, Σλ_i = 1} on a grid with the given
/// number of subdivisions, in lexicographic order. With `nonincreasing`
/// only sorted points are returned.
std::vector<std::vector<double>> simplex_grid(std::size_t d, std::size_t subdivisions, bool nonincreasing);

}  // namespace qchan
