#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "qchan/matrix.hpp"

namespace qchan {

/// Seeded generator for every randomised routine in the library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

/// Haar-random pure state: normalised complex Gaussian vector.
CVector haar_state(Rng& rng, std::size_t dim);
/// Haar-random unitary (QR of a Ginibre matrix with phase correction).
ComplexMatrix haar_unitary(Rng& rng, std::size_t dim);
/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(Rng& rng, std::size_t dim);
/// Random density matrix of the given rank (induced measure).
ComplexMatrix random_density(Rng& rng, std::size_t dim, std::size_t rank);
/// Kraus operators of a random CPTP map on C^dim with `count` operators,
/// sliced from a Haar isometry C^dim -> C^(dim*count).
std::vector<ComplexMatrix> random_kraus(Rng& rng, std::size_t dim, std::size_t count);

}  // namespace qchan
