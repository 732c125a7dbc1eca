#include "qchan/channel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qchan/eigen.hpp"
#include "qchan/errors.hpp"

namespace qchan {

namespace {

constexpr double kTpTol = 1e-9;
constexpr double kRangeSlack = 1e-12;

void require_square_kraus(std::span<const ComplexMatrix> kraus) {
  if (kraus.empty()) throw PreconditionError("empty Kraus list");
  const std::size_t d = kraus.front().rows();
  for (const auto& k : kraus) {
    if (k.rows() != d || k.cols() != d) {
      throw DimensionError("Kraus operators must all be square of the same size");
    }
  }
}

}  // namespace

ChoiOperator::ChoiOperator(ComplexMatrix matrix, std::size_t dim) : matrix_(std::move(matrix)), dim_(dim) {
  if (dim_ == 0 || matrix_.rows() != dim_ * dim_ || matrix_.cols() != dim_ * dim_) {
    throw DimensionError("Choi matrix must be d²×d² with d = " + std::to_string(dim_));
  }
}

bool ChoiOperator::is_hermitian() const { return matrix_.is_hermitian(psd_tolerance(matrix_)); }

bool ChoiOperator::is_completely_positive() const { return is_hermitian() && is_psd(matrix_); }

bool ChoiOperator::is_trace_preserving() const {
  const ComplexMatrix reduced = partial_trace(matrix_, cut(), Subsystem::A);
  ComplexMatrix target = ComplexMatrix::identity(dim_);
  target *= 1.0 / static_cast<double>(dim_);
  return max_abs_diff(reduced, target) <= kTpTol;
}

Channel::Channel(ChoiOperator choi, std::optional<std::vector<ComplexMatrix>> kraus)
    : choi_(std::move(choi)), kraus_(std::move(kraus)) {
  trace_preserving_ = choi_.is_trace_preserving();
}

Channel Channel::from_kraus(std::vector<ComplexMatrix> kraus, bool require_tp) {
  require_square_kraus(kraus);
  if (require_tp) {
    const std::size_t d = kraus.front().rows();
    ComplexMatrix sum(d, d);
    for (const auto& k : kraus) sum += k.adjoint() * k;
    if (max_abs_diff(sum, ComplexMatrix::identity(d)) > kTpTol) {
      throw PreconditionError("Kraus operators are not trace preserving (sum K^dagger K != I)");
    }
  }
  ChoiOperator choi = choi_from_kraus(kraus);
  return Channel(std::move(choi), std::move(kraus));
}

Channel Channel::from_choi(ChoiOperator choi) { return Channel(std::move(choi), std::nullopt); }

Channel Channel::with_subsystems(BipartiteDims dims) const {
  if (dims.total() != dim()) throw DimensionError("subsystem dimensions do not multiply to the channel dimension");
  Channel out = *this;
  out.subsystems_ = dims;
  return out;
}

ChoiOperator choi_from_kraus(std::span<const ComplexMatrix> kraus) {
  require_square_kraus(kraus);
  const std::size_t d = kraus.front().rows();
  const std::size_t n = d * d;
  // Ω = (1/d) Σ_k vec(K_k) vec(K_k)†, vec(K)[(a,i)] = K[a,i].
  ComplexMatrix omega(n, n);
  const double inv_d = 1.0 / static_cast<double>(d);
  for (const auto& k : kraus) {
    const auto v = k.entries();
    for (std::size_t r = 0; r < n; ++r) {
      const Complex vr = v[r] * inv_d;
      if (vr == Complex{}) continue;
      for (std::size_t c = 0; c < n; ++c) omega(r, c) += vr * std::conj(v[c]);
    }
  }
  return ChoiOperator(std::move(omega), d);
}

ChoiOperator choi_from_kraus(const Channel& ch) {
  if (!ch.kraus()) throw PreconditionError("channel has no Kraus representation");
  return choi_from_kraus(*ch.kraus());
}

ComplexMatrix apply(const Channel& ch, const ComplexMatrix& x) {
  const std::size_t d = ch.dim();
  if (x.rows() != d || x.cols() != d) throw DimensionError("apply: input has the wrong dimension");
  const ComplexMatrix& om = ch.choi().matrix();
  ComplexMatrix out(d, d);
  const double scale = static_cast<double>(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      Complex s = 0.0;
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t row = a * d + i;
        for (std::size_t j = 0; j < d; ++j) s += om(row, b * d + j) * x(i, j);
      }
      out(a, b) = scale * s;
    }
  return out;
}

ComplexMatrix apply_kraus(const Channel& ch, const ComplexMatrix& x) {
  if (!ch.kraus()) throw PreconditionError("channel has no Kraus representation");
  const std::size_t d = ch.dim();
  if (x.rows() != d || x.cols() != d) throw DimensionError("apply_kraus: input has the wrong dimension");
  ComplexMatrix out(d, d);
  for (const auto& k : *ch.kraus()) out += k * x * k.adjoint();
  return out;
}

ComplexMatrix apply_dual(const Channel& ch, const ComplexMatrix& y) {
  const std::size_t d = ch.dim();
  if (y.rows() != d || y.cols() != d) throw DimensionError("apply_dual: input has the wrong dimension");
  const ComplexMatrix& om = ch.choi().matrix();
  // Φ†[Y]_{ji} = d Σ_ab Y_{ba} Ω_{(a,i),(b,j)}
  ComplexMatrix out(d, d);
  const double scale = static_cast<double>(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const Complex yba = y(b, a) * scale;
      if (yba == Complex{}) continue;
      for (std::size_t i = 0; i < d; ++i) {
        const std::size_t row = a * d + i;
        for (std::size_t j = 0; j < d; ++j) out(j, i) += yba * om(row, b * d + j);
      }
    }
  return out;
}

Channel kraus_from_choi(const ChoiOperator& choi) {
  const ComplexMatrix& om = choi.matrix();
  if (!choi.is_hermitian()) throw PreconditionError("Choi matrix is not Hermitian: map is not completely positive");
  const auto sd = eigh(om);
  const double tol = psd_tolerance(om);
  if (sd.eigenvalues.front() < -tol) throw PreconditionError("Choi matrix is not PSD: map is not completely positive");

  const std::size_t d = choi.dim();
  const double cutoff = 1e-13 * std::max(1.0, om.frobenius_norm());
  std::vector<ComplexMatrix> kraus;
  for (std::size_t k = sd.eigenvalues.size(); k-- > 0;) {
    const double lambda = sd.eigenvalues[k];
    if (lambda <= cutoff) break;
    const double s = std::sqrt(static_cast<double>(d) * lambda);
    ComplexMatrix op(d, d);
    for (std::size_t r = 0; r < d * d; ++r) op.entries()[r] = s * sd.eigenvectors(r, k);
    kraus.push_back(std::move(op));
  }
  if (kraus.empty()) kraus.emplace_back(d, d);
  Channel out = Channel::from_kraus(std::move(kraus), false);
  return out;
}

ComplexMatrix to_local_blocks(const ComplexMatrix& composite, BipartiteDims dims) {
  return permute_subsystems(composite, {dims.a, dims.b, dims.a, dims.b}, {0, 2, 1, 3});
}

ComplexMatrix from_local_blocks(const ComplexMatrix& local, BipartiteDims dims) {
  return permute_subsystems(local, {dims.a, dims.a, dims.b, dims.b}, {0, 2, 1, 3});
}

Channel tensor(const Channel& first, const Channel& second) {
  const BipartiteDims dims{first.dim(), second.dim()};
  ChoiOperator choi(from_local_blocks(kron(first.choi().matrix(), second.choi().matrix()), dims), dims.total());
  std::optional<std::vector<ComplexMatrix>> kraus;
  if (first.kraus() && second.kraus()) {
    kraus.emplace();
    kraus->reserve(first.kraus()->size() * second.kraus()->size());
    for (const auto& k1 : *first.kraus())
      for (const auto& k2 : *second.kraus()) kraus->push_back(kron(k1, k2));
  }
  return Channel(std::move(choi), std::move(kraus)).with_subsystems(dims);
}

ChoiOperator compose_star(const ChoiOperator& phi, const ChoiOperator& xi) {
  if (phi.dim() != xi.dim()) throw DimensionError("compose_star: Choi matrices of different dimension");
  const std::size_t d = phi.dim();
  const ComplexMatrix& a = phi.matrix();
  const ComplexMatrix& b = xi.matrix();
  ComplexMatrix out(d * d, d * d);
  const double scale = static_cast<double>(d);
  for (std::size_t m = 0; m < d; ++m)
    for (std::size_t n = 0; n < d; ++n)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) {
          const Complex amn = a(m * d + i, n * d + j) * scale;
          if (amn == Complex{}) continue;
          for (std::size_t k = 0; k < d; ++k)
            for (std::size_t l = 0; l < d; ++l) out(m * d + k, n * d + l) += amn * b(i * d + k, j * d + l);
        }
  return ChoiOperator(std::move(out), d);
}

Channel compose(const Channel& phi, const Channel& xi) {
  ChoiOperator choi = compose_star(phi.choi(), xi.choi());
  std::optional<std::vector<ComplexMatrix>> kraus;
  if (phi.kraus() && xi.kraus()) {
    kraus.emplace();
    for (const auto& k : *phi.kraus())
      for (const auto& l : *xi.kraus()) kraus->push_back(k * l);
  }
  Channel out(std::move(choi), std::move(kraus));
  if (phi.subsystems() && phi.subsystems() == xi.subsystems()) out = out.with_subsystems(*phi.subsystems());
  return out;
}

Channel dual_map(const Channel& ch) {
  const std::size_t d = ch.dim();
  std::optional<std::vector<ComplexMatrix>> kraus;
  ChoiOperator choi;
  if (ch.kraus()) {
    kraus.emplace();
    for (const auto& k : *ch.kraus()) kraus->push_back(k.adjoint());
    choi = choi_from_kraus(*kraus);
  } else {
    // Ω_{Φ†}[(a,i),(b,j)] = Ω_Φ[(j,b),(i,a)]
    const ComplexMatrix& om = ch.choi().matrix();
    ComplexMatrix m(d * d, d * d);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t b = 0; b < d; ++b)
          for (std::size_t j = 0; j < d; ++j) m(a * d + i, b * d + j) = om(j * d + b, i * d + a);
    choi = ChoiOperator(std::move(m), d);
  }
  Channel out(std::move(choi), std::move(kraus));
  if (ch.subsystems()) out = out.with_subsystems(*ch.subsystems());
  return out;
}

Channel identity_channel(std::size_t d) { return Channel::from_kraus({ComplexMatrix::identity(d)}); }

Channel unitary_channel(const ComplexMatrix& u) { return Channel::from_kraus({u}); }

CVector max_entangled_state(std::size_t d) {
  CVector psi(d * d);
  const double amp = 1.0 / std::sqrt(static_cast<double>(d));
  for (std::size_t i = 0; i < d; ++i) psi[i * d + i] = amp;
  return psi;
}

double depolarizing_min_q(std::size_t d) {
  const double dd = static_cast<double>(d);
  return -1.0 / (dd * dd - 1.0);
}

Channel depolarizing(std::size_t d, double q) {
  if (d < 2) throw DimensionError("depolarizing: dimension must be at least 2");
  if (!(q >= depolarizing_min_q(d) - kRangeSlack && q <= 1.0 + kRangeSlack)) {
    throw PreconditionError("depolarizing: q = " + std::to_string(q) + " is not completely positive (range [" +
                            std::to_string(depolarizing_min_q(d)) + ", 1])");
  }
  const double dd = static_cast<double>(d);
  // Weyl operators X^a Z^b: (1/d²) Σ W X W† = tr[X] I/d.
  const double w_other = (1.0 - q) / (dd * dd);
  const double w_id = std::max(0.0, q + w_other);
  std::vector<ComplexMatrix> kraus;
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const double w = (a == 0 && b == 0) ? w_id : std::max(0.0, w_other);
      if (w <= 0.0) continue;
      ComplexMatrix op(d, d);
      const double s = std::sqrt(w);
      for (std::size_t j = 0; j < d; ++j) {
        const double angle = 2.0 * std::numbers::pi * static_cast<double>(b * j) / dd;
        op((j + a) % d, j) = s * Complex(std::cos(angle), std::sin(angle));
      }
      kraus.push_back(std::move(op));
    }
  return Channel::from_kraus(std::move(kraus));
}

Channel depolarizing_pair(std::size_t d, double q) {
  const Channel single = depolarizing(d, q);
  return tensor(single, single);
}

}  // namespace qchan
