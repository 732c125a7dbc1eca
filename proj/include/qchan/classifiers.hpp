#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qchan/channel.hpp"
#include "qchan/entanglement.hpp"

namespace qchan {

enum class VerdictTag { Certified, NumericallyLikely, Refuted, Unknown };

const char* to_string(VerdictTag tag);

enum class WitnessKind {
  /// `vector` is an eigenvector of (Φ[ψψ†])^{T_B} for the input ψ = `input`.
  OutputPt,
  /// `vector` is a Schmidt-rank-2 vector with negative expectation on
  /// (Φ[ψψ†])^{T_B}, ψ = `input`.
  OutputRankTwo,
  /// `vector` has negative expectation on the partially transposed Choi state.
  ChoiPt,
  /// Schmidt-rank-2 `vector` with negative expectation on Ω^{T_B}.
  ChoiRankTwo,
};

const char* to_string(WitnessKind kind);

struct Witness {
  WitnessKind kind = WitnessKind::OutputPt;
  CVector input;
  CVector vector;
  double value = 0.0;
  /// For OutputPt refutations: the product vector a⊗b on AB|A'B' with
  /// <a⊗b|Ω^{T_B}|a⊗b> = value / (dA dB), a = vector, b = conj(input).
  CVector product_a;
  CVector product_b;
};

struct Verdict {
  VerdictTag tag = VerdictTag::Unknown;
  std::string method;
  std::optional<double> margin;
  std::optional<Witness> witness;
  std::string note;
};

/// Recomputes the witness's quadratic form from scratch. `cut` is the A|B
/// split of the output for the Output* kinds and S|S' (d, d) for the Choi kinds.
double reevaluate_witness(const Channel& ch, BipartiteDims cut, const Witness& w);

/// Certified iff the composite Choi matrix with the output factor `side`
/// transposed is PSD; Unknown otherwise. Requires ch.subsystems().
Verdict ppt_inducing_sufficient(const Channel& ch, Subsystem side = Subsystem::B);

/// Exact PSD certificates first (either output side), then a worst-case input
/// search, then a block-positivity see-saw on Ω^{T_B} across AB|A'B'.
Verdict classify_ppt_inducing(const Channel& ch, const SeesawConfig& cfg);

/// Φ ⊗ Id_B with dB >= dA: Certified iff the Choi state of Φ is PPT,
/// otherwise Refuted by the maximally entangled input.
Verdict one_sided_ppt_inducing(const Channel& phi, std::size_t dim_b);

Verdict entanglement_binding_certify(const Channel& phi, const SeesawConfig& cfg);
Verdict entanglement_breaking_test(const Channel& phi);
Verdict distillation_prohibiting_refute(const Channel& ch, const SeesawConfig& cfg);
/// Requires a 2⊗2 channel; output separability coincides with PPT there.
Verdict entanglement_annihilating_two_qubit(const Channel& ch, const SeesawConfig& cfg);

struct ThresholdResult {
  std::size_t d = 0;
  double q_star = 0.0;
  double q_low = 0.0;
  double q_high = 0.0;
  double conjecture_value = 0.0;
  double binding_value = 0.0;
  /// Worst-case PT eigenvalue at q_star over Schmidt weights, and from the
  /// unrestricted see-saw over all pure inputs.
  double restricted_min = 0.0;
  double unrestricted_min = 0.0;
  std::vector<double> restricted_lambda;
  /// The unrestricted search went noticeably below the restricted optimum.
  bool restriction_violated = false;
};

/// (1+√3)/(d+1+√3)
double conjecture_threshold(std::size_t d);
/// 1/(d+1)
double binding_threshold(std::size_t d);

/// Bisection, to width 1e-5 over the full CP range, of the sign of the
/// worst-case output PT eigenvalue of Φ_q⊗Φ_q. Requires 2 <= d <= 5.
ThresholdResult depolarizing_threshold(std::size_t d, const SeesawConfig& cfg);

}  // namespace qchan
