#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "sqsieve/arith.hpp"

namespace sqsieve {

// One admissible fraction a/q^2 near 1/Q with its exact membership data.
// Invariants: gcd(a, q) = 1, Q < q <= 2Q, |a*Q - q^2| * Q^2 <= q^2,
// and discrepancy = a*Q - q^2. Witness pairs have discrepancy -1.
struct FareyPair {
  std::int64_t a = 0;
  std::int64_t q = 0;
  std::int64_t Q = 0;
  std::int64_t discrepancy = 0;

  friend bool operator==(const FareyPair&, const FareyPair&) = default;
};

// Exact membership test for S(Q); floating point never decides membership.
bool is_sq_member(std::int64_t a, std::int64_t q, std::int64_t Q);

// The 2^m pairs (a, q) with q^2 = 1 + a*Q, one per square root of unity
// in (Q, 2Q]. Ascending by q.
std::vector<FareyPair> witness_pairs(const OddPrimorial& P);

// The full set S(Q) for any Q >= 3, by scanning q over (Q, 2Q] and testing
// the few integer candidates for a near q^2/Q. Ascending by (q, a).
std::vector<FareyPair> enumerate_sq_exact(std::int64_t Q, int workers = 1);

struct LemmaReport {
  int m = 0;
  std::int64_t Q = 0;
  std::int64_t witness_count = 0;               // 2^m
  std::optional<std::int64_t> exact_count;      // #S(Q); absent when Q > 10^6
  double epsilon = 0.0;
  double bound = 0.0;        // Q^(log 2 / ((1+eps) log log Q))
  double epsilon_min = 0.0;  // log Q / (m log log Q) - 1
  bool passes = false;       // witness_count >= bound

  friend bool operator==(const LemmaReport&, const LemmaReport&) = default;
};

// Checks the witness count against the threshold Q^(log2/((1+eps)loglogQ)).
// `passes`, `epsilon >= epsilon_min` and `witness_count >= bound` are
// computed independently and must agree.
LemmaReport lemma_count_check(int m, double epsilon);

struct ClusterReport {
  std::int64_t Q = 0;
  std::int64_t delta_num = 0;
  std::int64_t delta_den = 1;
  std::int64_t observed = 0;
  double expected = 0.0;  // Q^3 * 2*delta, implied constant 1 (heuristic)
  double ratio = 0.0;     // NaN when expected is zero

  friend bool operator==(const ClusterReport&, const ClusterReport&) = default;
};

// Counts fractions a/q^2 (Q < q <= 2Q, gcd(a,q)=1, 1 <= a <= q^2) inside
// [1/Q - delta, 1/Q + delta] with delta = delta_num/delta_den, exactly.
ClusterReport clustering_ratio(std::int64_t Q, std::int64_t delta_num,
                               std::int64_t delta_den, int workers = 1);

}  // namespace sqsieve
