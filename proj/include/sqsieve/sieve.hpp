#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqsieve/expsum.hpp"

namespace sqsieve {

enum class Engine { geometric, direct, spectrum };

Engine engine_from_string(const std::string& name);
std::string to_string(Engine engine);

// Inclusive range of denominator roots q.
struct QRange {
  std::int64_t lo = 1;
  std::int64_t hi = 1;
};

// sum over q in the range, over 1 <= a <= q^2 with gcd(a, q) = 1, of
// |inner sum|^2, with the inner sum evaluated by the chosen engine.
// Accumulation is pairwise over ascending a within each q, then pairwise
// over ascending q, so results are bit-identical for any worker count.
double lhs_square_moduli(QRange range, const CoeffSpec& coeffs, Engine engine,
                         int workers = 1);

// Comparator bounds; conjectured and best-known take implied constant 1.
double classical_rhs(std::int64_t q_eff, std::int64_t n_len, double norm_sq);
double conjectured_rhs(std::int64_t q_eff, std::int64_t n_len, double epsilon,
                       double norm_sq);
double best_known_rhs(std::int64_t q_eff, std::int64_t n_len, double epsilon,
                      double norm_sq);

// Q^(log 2 / ((1+eps) log log Q)), natural logarithms. Q >= 3.
double theorem_factor(std::int64_t Q, double epsilon);

// Which q-interval the quadratic form sums over: the construction lives in
// (Q, 2Q]; the [1, Q] variant is exposed for comparison runs.
enum class SumRange { proof, statement };

SumRange sum_range_from_string(const std::string& name);
std::string to_string(SumRange range);

struct ChainStep {
  std::string step;  // "i".."iv"
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  bool passes = false;
  bool exact_identity = false;  // step ii: equality at 1e-12 relative
  bool asserted = false;  // steps i and ii must hold for any valid m, eps

  friend bool operator==(const ChainStep&, const ChainStep&) = default;
};

struct Comparators {
  double classical = 0.0;
  double conjectured = 0.0;
  double best_known = 0.0;

  friend bool operator==(const Comparators&, const Comparators&) = default;
};

struct SieveReport {
  int m = 0;
  std::int64_t Q = 0;
  std::int64_t N = 0;  // Q^3/9
  double epsilon = 0.0;
  bool full = false;
  SumRange range = SumRange::proof;
  Engine engine = Engine::geometric;
  double lhs_full = 0.0;  // NaN when not computed
  double lhs_witness = 0.0;
  double norm_sq = 0.0;
  std::int64_t count_S = 0;
  bool count_exact = false;  // count_S is the enumerated #S(Q)
  double C = 0.0;
  double D_effective = 0.0;  // C^2/10
  std::vector<ChainStep> chain;
  Comparators comparators;

  friend bool operator==(const SieveReport&, const SieveReport&) = default;
};

// Builds Q = product of the first m odd primes, N = Q^3/9 and the extremal
// coefficients, then records the inequality chain:
//   (i)   lhs >= count_S * (C*N)^2
//   (ii)  count_S*C^2*N^2 = (C^2/10)*count_S*(Q^3+N)*N   (exact identity)
//   (iii) count_S >= theorem_factor(Q, eps)
//   (iv)  lhs >= (C^2/10)*theorem_factor(Q, eps)*(Q^3+N)*norm_sq
// With full=false only the witness pairs are summed and count_S = 2^m;
// with full=true every coprime pair in the range is summed and count_S is
// the enumerated #S(Q).
SieveReport verify_theorem_chain(int m, double epsilon, bool full,
                                 Engine engine = Engine::geometric,
                                 SumRange range = SumRange::proof,
                                 int workers = 1);

}  // namespace sqsieve
