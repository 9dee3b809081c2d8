#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <Eigen/Dense>
#include <random>

#include "oracles.hpp"
#include "sqsieve/errors.hpp"
#include "sqsieve/expsum.hpp"
#include "sqsieve/gram.hpp"

using namespace sqsieve;
using oracles::rel_close;

namespace {

// Quadratic form over the fraction system for one sequence, by the direct
// engine: sum_r |sum_n a_n e(theta_r n)|^2.
double system_lhs(const std::vector<SquareFraction>& fractions,
                  const CoeffSpec& coeffs) {
  double total = 0.0;
  for (const auto& f : fractions)
    total += std::norm(direct_exp_sum(coeffs, f.a, f.q));
  return total;
}

}  // namespace

TEST_CASE("fraction systems from q ranges") {
  auto fr = fraction_system_from_qrange(1, 4);
  CHECK(fr.size() == 17);
  CHECK(fr.front() == SquareFraction{1, 1});
  CHECK(fr.back() == SquareFraction{15, 4});
  CHECK(fraction_system_from_qrange(1, 8).size() == 123);
  CHECK_THROWS_AS(fraction_system_from_qrange(3, 2), std::domain_error);
}

TEST_CASE("gram spec validation") {
  GramSpec spec;
  spec.N = 4;
  spec.fractions = {{1, 2}, {1, 2}};
  CHECK_THROWS_AS(build_gram(spec), std::domain_error);  // duplicate
  spec.fractions = {{2, 4}};
  CHECK_THROWS_AS(build_gram(spec), std::domain_error);  // not reduced
  spec.fractions = {{5, 2}};
  CHECK_THROWS_AS(build_gram(spec), std::domain_error);  // a > q^2
  spec.fractions = {};
  CHECK_THROWS_AS(build_gram(spec), std::domain_error);
  spec.fractions = fraction_system_from_qrange(1, 27);  // 4213 fractions
  CHECK_THROWS_AS(build_gram(spec), guard_error);
}

TEST_CASE("gram matrix structure") {
  GramSpec spec;
  spec.fractions = fraction_system_from_qrange(1, 3);
  spec.N = 6;
  auto G = build_gram(spec);
  REQUIRE(G.rows() == 9);
  for (Eigen::Index r = 0; r < G.rows(); ++r) {
    CHECK(G(r, r) == cplx{6.0, 0.0});
    for (Eigen::Index s = r + 1; s < G.cols(); ++s)
      CHECK(G(r, s) == std::conj(G(s, r)));
  }
  // Spot value: theta = 1/1 vs 1/4 gives delta = 3/4.
  cplx expected = geometric_sum({3, 4}, 6);
  CHECK(G(0, 1) == expected);
}

TEST_CASE("singleton system: lambda is exactly N") {
  GramSpec spec;
  spec.fractions = {{1, 3}};
  spec.N = 5;
  auto res = sharp_constant(spec);
  CHECK(res.lambda_max == 5.0);
  CHECK(res.converged);
  CHECK(res.iters == 1);
  CHECK(res.R == 1);
}

TEST_CASE("N = 1: rank-one system with lambda = R") {
  for (std::int64_t q_hi : {2, 3, 4}) {
    GramSpec spec;
    spec.fractions = fraction_system_from_qrange(1, q_hi);
    spec.N = 1;
    auto res = sharp_constant(spec);
    CHECK(res.converged);
    CHECK(res.lambda_max ==
          doctest::Approx(static_cast<double>(res.R)).epsilon(1e-12));
  }
}

TEST_CASE("power iteration matches the Jacobi eigensolver") {
  for (auto [q_hi, N] : {std::pair<std::int64_t, std::int64_t>{3, 5},
                         {4, 8},
                         {5, 16},
                         {6, 12}}) {
    GramSpec spec;
    spec.fractions = fraction_system_from_qrange(1, q_hi);
    spec.N = N;
    auto res = sharp_constant(spec);
    REQUIRE(res.converged);
    double reference = oracles::jacobi_lambda_max(build_gram(spec));
    CHECK(rel_close(res.lambda_max, reference, 1e-6));
  }
}

TEST_CASE("jacobi oracle agrees with Eigen's dense solver") {
  // Sanity check of the test oracle itself on random Hermitian matrices.
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int n : {2, 5, 17, 40}) {
    Eigen::MatrixXcd A(n, n);
    for (int r = 0; r < n; ++r) {
      A(r, r) = cplx{dist(rng) * 3.0, 0.0};
      for (int s = r + 1; s < n; ++s) {
        A(r, s) = cplx{dist(rng), dist(rng)};
        A(s, r) = std::conj(A(r, s));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(A);
    double expected = es.eigenvalues().maxCoeff();
    CHECK(rel_close(oracles::jacobi_lambda_max(A), expected, 1e-10));
  }
}

TEST_CASE("lambda dominates the quadratic form for every sequence") {
  std::mt19937 rng(43);
  for (std::int64_t q_hi : {2, 3, 4}) {
    GramSpec spec;
    spec.fractions = fraction_system_from_qrange(1, q_hi);
    spec.N = 8;
    auto res = sharp_constant(spec);
    REQUIRE(res.converged);
    double cap = res.lambda_max * (1.0 + 1e-6);

    std::vector<CoeffSpec> sequences;
    sequences.push_back(CoeffSpec::all_ones(spec.N));
    sequences.push_back(CoeffSpec::extremal(5, spec.N));
    for (int i = 0; i < 20; ++i)
      sequences.push_back(
          CoeffSpec::custom(oracles::random_coeffs(rng, spec.N)));
    for (const auto& coeffs : sequences)
      CHECK(system_lhs(spec.fractions, coeffs) / coeffs.norm_sq() <= cap);
  }
}

TEST_CASE("lambda is nondecreasing on nested systems") {
  double prev = 0.0;
  for (std::int64_t q_hi = 1; q_hi <= 5; ++q_hi) {
    GramSpec spec;
    spec.fractions = fraction_system_from_qrange(1, q_hi);
    spec.N = 8;
    auto res = sharp_constant(spec);
    REQUIRE(res.converged);
    CHECK(res.lambda_max >= prev - 1e-9 * std::max(1.0, prev));
    prev = res.lambda_max;
  }
}

TEST_CASE("non-convergence is reported, not hidden") {
  GramSpec spec;
  spec.fractions = fraction_system_from_qrange(1, 4);
  spec.N = 8;
  spec.max_iters = 1;
  spec.tolerance = 1e-30;
  auto res = sharp_constant(spec);
  CHECK_FALSE(res.converged);
  CHECK(res.iters == 1);
  CHECK(res.lambda_max > 0.0);
}

TEST_CASE("sharp constant is independent of the worker count") {
  GramSpec spec;
  spec.fractions = fraction_system_from_qrange(1, 5);
  spec.N = 16;
  auto r1 = sharp_constant(spec, 1);
  auto r2 = sharp_constant(spec, 2);
  auto r8 = sharp_constant(spec, 8);
  CHECK(r1.lambda_max == r2.lambda_max);
  CHECK(r1.lambda_max == r8.lambda_max);
  CHECK(r1.iters == r2.iters);
}
