#include "qchan/entanglement.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <string>

#include "qchan/eigen.hpp"
#include "qchan/errors.hpp"
#include "qchan/random.hpp"

namespace qchan {

namespace {

constexpr double kStateTol = 1e-8;

bool lex_less(std::span<const Complex> x, std::span<const Complex> y) {
  for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i) {
    if (x[i].real() != y[i].real()) return x[i].real() < y[i].real();
    if (x[i].imag() != y[i].imag()) return x[i].imag() < y[i].imag();
  }
  return x.size() < y.size();
}

// Restart results are merged on value with a lexicographic tie-break, so the
// outcome does not depend on restart order.
bool better(double value, std::span<const Complex> witness, double best_value,
            std::span<const Complex> best_witness) {
  if (value != best_value) return value < best_value;
  return lex_less(witness, best_witness);
}

void require_state(const ComplexMatrix& rho, BipartiteDims dims, const char* what) {
  if (rho.rows() != dims.total() || rho.cols() != dims.total()) {
    throw DimensionError(std::string(what) + ": matrix does not match the subsystem dimensions");
  }
  if (!rho.is_hermitian(kStateTol)) throw PreconditionError(std::string(what) + ": input is not Hermitian");
  if (std::abs(rho.trace() - 1.0) > kStateTol) throw PreconditionError(std::string(what) + ": input does not have unit trace");
}

// out[(s,x),(t,y)] = Σ_kl conj(bs[s]_k) M[(x,k),(y,l)] bs[t]_l
ComplexMatrix contract_right(const ComplexMatrix& m, BipartiteDims dims, const std::vector<CVector>& bs) {
  const std::size_t n = bs.size();
  ComplexMatrix out(n * dims.a, n * dims.a);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t x = 0; x < dims.a; ++x)
        for (std::size_t y = 0; y < dims.a; ++y) {
          Complex acc = 0.0;
          for (std::size_t k = 0; k < dims.b; ++k) {
            const Complex bk = std::conj(bs[s][k]);
            if (bk == Complex{}) continue;
            Complex row = 0.0;
            for (std::size_t l = 0; l < dims.b; ++l) row += m(x * dims.b + k, y * dims.b + l) * bs[t][l];
            acc += bk * row;
          }
          out(s * dims.a + x, t * dims.a + y) = acc;
        }
  return out.hermitian_part();
}

// out[(s,k),(t,l)] = Σ_xy conj(as[s]_x) M[(x,k),(y,l)] as[t]_y
ComplexMatrix contract_left(const ComplexMatrix& m, BipartiteDims dims, const std::vector<CVector>& as) {
  const std::size_t n = as.size();
  ComplexMatrix out(n * dims.b, n * dims.b);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t k = 0; k < dims.b; ++k)
        for (std::size_t l = 0; l < dims.b; ++l) {
          Complex acc = 0.0;
          for (std::size_t x = 0; x < dims.a; ++x) {
            const Complex ax = std::conj(as[s][x]);
            if (ax == Complex{}) continue;
            Complex row = 0.0;
            for (std::size_t y = 0; y < dims.a; ++y) row += m(x * dims.b + k, y * dims.b + l) * as[t][y];
            acc += ax * row;
          }
          out(s * dims.b + k, t * dims.b + l) = acc;
        }
  return out.hermitian_part();
}

std::vector<CVector> split(std::span<const Complex> c, std::size_t parts, std::size_t len) {
  std::vector<CVector> out(parts);
  for (std::size_t s = 0; s < parts; ++s) out[s].assign(c.begin() + s * len, c.begin() + (s + 1) * len);
  return out;
}

CVector assemble(const std::vector<CVector>& as, const std::vector<CVector>& bs) {
  CVector psi(as.front().size() * bs.front().size());
  for (std::size_t s = 0; s < as.size(); ++s) {
    const auto term = kron(as[s], bs[s]);
    for (std::size_t i = 0; i < psi.size(); ++i) psi[i] += term[i];
  }
  return psi;
}

// Orthonormal pair spanning (at least) the local support of ψ on one side.
std::vector<CVector> local_pair(std::span<const Complex> psi, BipartiteDims dims, Subsystem side) {
  const SchmidtForm sf = schmidt_decompose(normalized(psi), dims);
  const auto& vecs = side == Subsystem::A ? sf.left : sf.right;
  const std::size_t dim = side == Subsystem::A ? dims.a : dims.b;
  std::vector<CVector> pair;
  for (std::size_t k = 0; k < std::min<std::size_t>(2, vecs.size()); ++k) pair.push_back(vecs[k]);
  while (pair.size() < 2) pair.push_back(CVector(dim, 0.0));
  return orthonormalize(std::move(pair));
}

std::vector<CVector> random_pair(Rng& rng, std::size_t dim) {
  return orthonormalize({haar_state(rng, dim), haar_state(rng, dim)});
}

}  // namespace

void SeesawConfig::validate() const {
  if (restarts < 1) throw PreconditionError("see-saw restarts must be at least 1");
  if (!(tol > 0.0)) throw PreconditionError("see-saw tolerance must be positive");
  if (max_iters < 1) throw PreconditionError("see-saw iteration cap must be at least 1");
}

PptReport ppt_report(const ComplexMatrix& rho, BipartiteDims dims) {
  require_state(rho, dims, "ppt_report");
  const auto pair = min_eigenpair(partial_transpose(rho, dims, Subsystem::B));
  PptReport out;
  out.min_pt_eigenvalue = pair.value;
  out.witness = pair.vector;
  out.is_ppt = pair.value >= -psd_tolerance(rho);
  return out;
}

bool is_separable_low_dim(const ComplexMatrix& rho, BipartiteDims dims) {
  if (dims.total() > 6) {
    throw PreconditionError("separability undecidable by PPT here (dA*dB = " + std::to_string(dims.total()) + " > 6)");
  }
  return ppt_report(rho, dims).is_ppt;
}

double pt_expectation(const ComplexMatrix& rho, BipartiteDims dims, std::span<const Complex> psi) {
  return expectation(partial_transpose(rho, dims, Subsystem::B), psi).real();
}

std::optional<RankTwoWitness> refute_one_copy_undistillability(const ComplexMatrix& rho, BipartiteDims dims,
                                                               const SeesawConfig& cfg) {
  cfg.validate();
  require_state(rho, dims, "refute_one_copy_undistillability");
  if (dims.a < 2 || dims.b < 2) return std::nullopt;

  const ComplexMatrix pt = partial_transpose(rho, dims, Subsystem::B).hermitian_part();
  const double threshold = -psd_tolerance(rho);
  const EigenPair lowest = min_eigenpair(pt);
  if (lowest.value >= threshold) return std::nullopt;

  Rng rng(cfg.seed);
  double best_value = std::numeric_limits<double>::infinity();
  CVector best;
  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    // Restart 0 starts from the two leading Schmidt vectors of the minimal PT
    // eigenvector; the rest from Haar-random pairs.
    std::vector<CVector> bs =
        restart == 0 ? local_pair(lowest.vector, dims, Subsystem::B) : random_pair(rng, dims.b);
    CVector psi;
    double value = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
      const auto step_a = min_eigenpair(contract_right(pt, dims, bs));
      const auto as = local_pair(assemble(split(step_a.vector, 2, dims.a), bs), dims, Subsystem::A);
      const auto step_b = min_eigenpair(contract_left(pt, dims, as));
      psi = normalized(assemble(as, split(step_b.vector, 2, dims.b)));
      bs = local_pair(psi, dims, Subsystem::B);
      const double previous = value;
      value = step_b.value;
      if (previous - value < cfg.tol) break;
    }
    const double verified = expectation(pt, psi).real();
    if (best.empty() || better(verified, psi, best_value, best)) {
      best_value = verified;
      best = psi;
    }
  }
  if (!(best_value < threshold)) return std::nullopt;

  RankTwoWitness out;
  out.vector = best;
  out.value = best_value;
  out.schmidt = schmidt_decompose(best, dims);
  return out;
}

BlockPositivityVerdict block_positivity(const ComplexMatrix& om, BipartiteDims cut, const SeesawConfig& cfg) {
  cfg.validate();
  if (om.rows() != cut.total() || om.cols() != cut.total()) {
    throw DimensionError("block_positivity: matrix does not match the cut");
  }
  const double tol = psd_tolerance(om);
  if (!om.is_hermitian(tol)) throw PreconditionError("block_positivity: operator is not Hermitian");
  const ComplexMatrix h = om.hermitian_part();

  BlockPositivityVerdict out;
  const EigenPair lowest = min_eigenpair(h);
  if (lowest.value >= -tol) {
    out.tag = BlockPositivityTag::CertifiedPsd;
    out.margin = lowest.value;
    return out;
  }

  Rng rng(cfg.seed);
  bool all_converged = true;
  double best_value = std::numeric_limits<double>::infinity();
  CVector best_a, best_b;
  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    CVector b = restart == 0 ? local_pair(lowest.vector, cut, Subsystem::B)[0] : haar_state(rng, cut.b);
    CVector a;
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
      a = min_eigenpair(contract_right(h, cut, {b})).vector;
      const auto step = min_eigenpair(contract_left(h, cut, {a}));
      b = step.vector;
      const double previous = value;
      value = step.value;
      if (previous - value < cfg.tol) {
        converged = true;
        break;
      }
    }
    all_converged = all_converged && converged;
    const CVector prod = kron(a, b);
    const double verified = expectation(h, prod).real();
    if (best_a.empty() || better(verified, prod, best_value, kron(best_a, best_b))) {
      best_value = verified;
      best_a = a;
      best_b = b;
    }
  }

  out.margin = best_value;
  out.value = best_value;
  out.a = best_a;
  out.b = best_b;
  if (best_value < -tol) {
    out.tag = BlockPositivityTag::Refuted;
  } else {
    out.tag = all_converged ? BlockPositivityTag::NumericallyBlockPositive : BlockPositivityTag::Unknown;
  }
  return out;
}

WorstCaseResult worst_case_output_pt(const Channel& ch, BipartiteDims cut, const SeesawConfig& cfg) {
  cfg.validate();
  if (cut.total() != ch.dim()) throw DimensionError("worst_case_output_pt: cut does not match the channel dimension");

  auto output_pt = [&](std::span<const Complex> psi) {
    return partial_transpose(apply(ch, projector(psi)), cut, Subsystem::B).hermitian_part();
  };

  Rng rng(cfg.seed);
  WorstCaseResult best;
  best.min_value = std::numeric_limits<double>::infinity();
  bool all_converged = true;
  for (std::size_t restart = 0; restart < cfg.restarts; ++restart) {
    CVector psi = haar_state(rng, ch.dim());
    double value = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
      const CVector w = min_eigenpair(output_pt(psi)).vector;
      const ComplexMatrix pulled =
          apply_dual(ch, partial_transpose(projector(w), cut, Subsystem::B)).hermitian_part();
      const auto step = min_eigenpair(pulled);
      psi = step.vector;
      const double previous = value;
      value = step.value;
      if (previous - value < cfg.tol) {
        converged = true;
        break;
      }
    }
    all_converged = all_converged && converged;
    const auto final_pair = min_eigenpair(output_pt(psi));
    if (best.input.empty() || better(final_pair.value, psi, best.min_value, best.input)) {
      best.min_value = final_pair.value;
      best.input = psi;
      best.output_witness = final_pair.vector;
    }
  }
  best.converged = all_converged;
  return best;
}

double schmidt_profile_value(std::size_t d, double q, std::span<const double> lambda) {
  if (lambda.size() != d) throw DimensionError("schmidt_profile_value: need d weights");
  const std::size_t n = d * d;
  const double dd = static_cast<double>(d);
  ComplexMatrix out(n, n);
  // q² ψψ†
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      out(i * d + i, j * d + j) += q * q * std::sqrt(std::max(0.0, lambda[i]) * std::max(0.0, lambda[j]));
  // q(1-q)(ρ_A ⊗ I + I ⊗ ρ_B)/d + (1-q)² I/d², all diagonal
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k)
      out(i * d + k, i * d + k) +=
          q * (1.0 - q) * (lambda[i] + lambda[k]) / dd + (1.0 - q) * (1.0 - q) / (dd * dd);
  return min_eigenvalue(partial_transpose(out, BipartiteDims{d, d}, Subsystem::B));
}

std::vector<std::vector<double>> simplex_grid(std::size_t d, std::size_t subdivisions, bool nonincreasing) {
  std::vector<std::vector<double>> out;
  std::vector<std::size_t> counts(d, 0);
  const double n = static_cast<double>(subdivisions);
  std::function<void(std::size_t, std::size_t)> recurse = [&](std::size_t pos, std::size_t remaining) {
    if (pos + 1 == d) {
      counts[pos] = remaining;
      if (nonincreasing && pos > 0 && counts[pos] > counts[pos - 1]) return;
      std::vector<double> point(d);
      for (std::size_t i = 0; i < d; ++i) point[i] = static_cast<double>(counts[i]) / n;
      out.push_back(std::move(point));
      return;
    }
    for (std::size_t k = 0; k <= remaining; ++k) {
      if (nonincreasing && pos > 0 && k > counts[pos - 1]) break;
      counts[pos] = k;
      recurse(pos + 1, remaining - k);
    }
  };
  if (d == 1) return {{1.0}};
  recurse(0, subdivisions);
  return out;
}

namespace {

// Euclidean projection onto the probability simplex.
std::vector<double> project_to_simplex(std::vector<double> y) {
  std::vector<double> u = y;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0, theta = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    cumulative += u[i];
    const double t = (cumulative - 1.0) / static_cast<double>(i + 1);
    if (u[i] - t > 0.0) theta = t;
  }
  for (double& v : y) v = std::max(0.0, v - theta);
  return y;
}

struct ProfileProblem {
  std::size_t d;
  double q;

  std::vector<double> weights(const gsl_vector* x) const {
    std::vector<double> y(d);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
      y[i] = gsl_vector_get(x, i);
      sum += y[i];
    }
    y[d - 1] = 1.0 - sum;
    return project_to_simplex(std::move(y));
  }
};

double profile_objective(const gsl_vector* x, void* params) {
  const auto* problem = static_cast<const ProfileProblem*>(params);
  return schmidt_profile_value(problem->d, problem->q, problem->weights(x));
}

struct MinimizerDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

RestrictedWorstCase refine(const ProfileProblem& problem, const std::vector<double>& start) {
  gsl_set_error_handler_off();
  const std::size_t n = problem.d - 1;
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n));
  std::unique_ptr<gsl_vector, VectorDeleter> step(gsl_vector_alloc(n));
  for (std::size_t i = 0; i < n; ++i) gsl_vector_set(x.get(), i, start[i]);
  gsl_vector_set_all(step.get(), 0.05);

  gsl_multimin_function fn;
  fn.n = n;
  fn.f = &profile_objective;
  fn.params = const_cast<ProfileProblem*>(&problem);

  std::unique_ptr<gsl_multimin_fminimizer, MinimizerDeleter> minimizer(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_fminimizer_set(minimizer.get(), &fn, x.get(), step.get());
  // gsl's size is the mean vertex distance from the centroid, which bounds
  // the simplex diameter by at most twice its value.
  for (int iter = 0; iter < 5000; ++iter) {
    if (gsl_multimin_fminimizer_iterate(minimizer.get()) != GSL_SUCCESS) break;
    if (gsl_multimin_fminimizer_size(minimizer.get()) < 5e-7) break;
  }
  RestrictedWorstCase out;
  out.lambda = problem.weights(gsl_multimin_fminimizer_x(minimizer.get()));
  out.min_value = schmidt_profile_value(problem.d, problem.q, out.lambda);
  return out;
}

}  // namespace

RestrictedWorstCase schmidt_restricted_worst_case(std::size_t d, double q) {
  if (d < 2) throw DimensionError("schmidt_restricted_worst_case: d must be at least 2");
  if (!(q >= depolarizing_min_q(d) - 1e-12 && q <= 1.0 + 1e-12)) {
    throw PreconditionError("schmidt_restricted_worst_case: q is not completely positive");
  }
  // Permuting the weights is a local unitary, so sorted grid points suffice.
  const auto grid = simplex_grid(d, 20, true);
  std::vector<std::pair<double, std::size_t>> scored;
  scored.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) scored.emplace_back(schmidt_profile_value(d, q, grid[i]), i);
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& x, const auto& y) { return x.first < y.first; });

  const ProfileProblem problem{d, q};
  RestrictedWorstCase best;
  best.min_value = scored.front().first;
  best.lambda = grid[scored.front().second];
  const std::size_t starts = std::min<std::size_t>(3, scored.size());
  for (std::size_t s = 0; s < starts; ++s) {
    auto candidate = refine(problem, grid[scored[s].second]);
    if (candidate.min_value < best.min_value) best = std::move(candidate);
  }
  std::sort(best.lambda.begin(), best.lambda.end(), std::greater<>());
  return best;
}

}  // namespace qchan
