#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <vector>

namespace sqsieve {

// One fraction a/q^2 in lowest terms, identified by (a, q) with
// gcd(a, q) = 1 and 1 <= a <= q^2.
struct SquareFraction {
  std::int64_t a = 1;
  std::int64_t q = 1;

  friend bool operator==(const SquareFraction&, const SquareFraction&) = default;
};

// Every coprime (a, q) with q in [q_lo, q_hi], ascending by (q, a).
std::vector<SquareFraction> fraction_system_from_qrange(std::int64_t q_lo,
                                                        std::int64_t q_hi);

// Fraction system + sequence length defining the Gram matrix
// G[r][s] = sum_{n=1..N} e((theta_r - theta_s) n). Its top eigenvalue is
// the best possible constant relating the quadratic form to sum |a_n|^2
// for this system and length.
struct GramSpec {
  std::vector<SquareFraction> fractions;
  std::int64_t N = 1;
  double tolerance = 1e-10;
  std::int64_t max_iters = 100000;
};

// Dense Hermitian Gram matrix; entries come from the exact-phase closed
// form, the diagonal is exactly N.
Eigen::MatrixXcd build_gram(const GramSpec& spec, int workers = 1);

struct SharpResult {
  double lambda_max = 0.0;
  std::int64_t iters = 0;
  bool converged = false;
  std::int64_t R = 0;

  friend bool operator==(const SharpResult&, const SharpResult&) = default;
};

// Power iteration from the normalized all-ones vector with the Rayleigh
// residual stop rule ||G v - lambda v|| <= tolerance * lambda. Reports the
// best estimate with converged=false when the iteration cap is reached.
SharpResult sharp_constant(const GramSpec& spec, int workers = 1);

}  // namespace sqsieve
