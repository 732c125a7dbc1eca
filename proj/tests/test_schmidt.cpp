#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "qchan/errors.hpp"
#include "qchan/random.hpp"
#include "qchan/schmidt.hpp"

using namespace qchan;

TEST_CASE("product and Bell states") {
  CVector prod(4, Complex{0.0});
  prod[1] = 1.0;  // |0>|1>
  const auto s = schmidt_decompose(prod, {2, 2});
  REQUIRE(s.rank() == 1);
  CHECK(s.weights[0] == doctest::Approx(1.0));
  CHECK(max_abs_diff(s.reassemble(), prod) <= 1e-14);

  const auto b = schmidt_decompose(oracle::psi_plus(2), {2, 2});
  REQUIRE(b.rank() == 2);
  CHECK(b.weights[0] == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(b.weights[1] == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("weights are the reduced-state spectrum") {
  Rng rng(201);
  for (int t = 0; t < 30; ++t) {
    const std::size_t da = 3, db = 2 + t % 3;
    const CVector psi = haar_state(rng, da * db);
    const auto s = schmidt_decompose(psi, {da, db});
    auto reduced = oracle::eigenvalues(partial_trace(projector(psi), {da, db}, Subsystem::B));
    std::sort(reduced.rbegin(), reduced.rend());
    REQUIRE(s.rank() <= std::min(da, db));
    for (std::size_t i = 0; i < s.rank(); ++i) CHECK(std::abs(s.weights[i] - reduced[i]) <= 1e-10);
    CHECK(std::accumulate(s.weights.begin(), s.weights.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::is_sorted(s.weights.rbegin(), s.weights.rend()));
    CHECK(max_abs_diff(s.reassemble(), psi) <= 1e-10);
    for (std::size_t i = 0; i < s.rank(); ++i)
      for (std::size_t j = 0; j < s.rank(); ++j) {
        const double expect = i == j ? 1.0 : 0.0;
        CHECK(std::abs(inner(s.left[i], s.left[j]) - expect) <= 1e-10);
        CHECK(std::abs(inner(s.right[i], s.right[j]) - expect) <= 1e-10);
      }
  }
}

TEST_CASE("unnormalised input is rejected") {
  CVector v(4, Complex{1.0});
  CHECK_THROWS_AS(schmidt_decompose(v, {2, 2}), PreconditionError);
}

TEST_CASE("orthonormalize completes dependent sets") {
  std::vector<CVector> vs{{1.0, 1.0, 0.0}, {2.0, 2.0, 0.0}, {0.0, 0.0, 0.0}};
  const auto out = orthonormalize(vs);
  REQUIRE(out.size() == 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(inner(out[i], out[j]) - (i == j ? 1.0 : 0.0)) <= 1e-14);
  CHECK(std::abs(out[0][0] - Complex(1.0 / std::sqrt(2.0))) <= 1e-15);
}
