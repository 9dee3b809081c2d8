#include "sqsieve/farey.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "sqsieve/errors.hpp"
#include "sqsieve/parallel.hpp"

namespace sqsieve {

bool is_sq_member(std::int64_t a, std::int64_t q, std::int64_t Q) {
  if (a < 1 || q <= Q || q > 2 * Q) return false;
  int128 qq = checked_mul(q, q);
  if (a > qq) return false;
  if (std::gcd(a, q) != 1) return false;
  int128 diff = abs128(checked_mul(int128{a}, Q) - qq);
  // |a/q^2 - 1/Q| <= 1/Q^3 in cleared-denominator form.
  return checked_mul(diff, checked_mul(int128{Q}, Q)) <= qq;
}

std::vector<FareyPair> witness_pairs(const OddPrimorial& P) {
  std::int64_t Q = to_int64(P.Q);
  std::vector<FareyPair> pairs;
  auto roots = roots_of_unity_in_dilate(P);
  pairs.reserve(roots.size());
  for (std::int64_t q : roots) {
    int128 qq = checked_mul(q, q);
    if (mod_floor(qq - 1, Q) != 0)
      throw std::logic_error("q^2 - 1 not divisible by Q for root q");
    std::int64_t a = to_int64((qq - 1) / Q);
    FareyPair pair{a, q, Q, to_int64(checked_mul(int128{a}, Q) - qq)};
    if (pair.discrepancy != -1 || !is_sq_member(a, q, Q))
      throw std::logic_error("witness pair violates its invariants");
    pairs.push_back(pair);
  }
  return pairs;
}

namespace {

// Candidate numerators for one q: integers a with |a*Q - q^2|*Q^2 <= q^2,
// i.e. a in [q^2/Q - q^2/Q^3, q^2/Q + q^2/Q^3]. The window is at most a
// few integers wide; both boundary candidates are tested exactly.
void collect_for_q(std::int64_t q, std::int64_t Q, std::vector<FareyPair>& out) {
  int128 qq = checked_mul(q, q);
  int128 q3 = checked_mul(checked_mul(int128{Q}, Q), Q);
  int128 lo_num = checked_mul(qq, checked_mul(int128{Q}, Q) - 1);
  int128 hi_num = checked_mul(qq, checked_mul(int128{Q}, Q) + 1);
  std::int64_t a_lo = to_int64(ceil_div(lo_num, q3));
  std::int64_t a_hi = to_int64(floor_div(hi_num, q3));
  for (std::int64_t a = std::max<std::int64_t>(1, a_lo);
       a <= std::min(to_int64(qq), a_hi); ++a) {
    if (!is_sq_member(a, q, Q)) continue;
    out.push_back({a, q, Q, to_int64(checked_mul(int128{a}, Q) - qq)});
  }
}

}  // namespace

std::vector<FareyPair> enumerate_sq_exact(std::int64_t Q, int workers) {
  if (Q < 3) throw std::domain_error("enumeration requires Q >= 3");
  std::vector<std::vector<FareyPair>> per_q(static_cast<std::size_t>(Q));
  parallel_for(Q, workers, [&](std::int64_t i) {
    collect_for_q(Q + 1 + i, Q, per_q[static_cast<std::size_t>(i)]);
  });
  // Merge in ascending (q, a); per-q blocks are already a-ascending.
  std::vector<FareyPair> out;
  for (auto& block : per_q)
    out.insert(out.end(), block.begin(), block.end());
  return out;
}

LemmaReport lemma_count_check(int m, double epsilon) {
  if (m < 1) throw std::domain_error("m must be >= 1");
  if (epsilon < 0) throw std::domain_error("epsilon must be >= 0");
  OddPrimorial P = odd_primorial(m);
  LemmaReport rep;
  rep.m = m;
  rep.Q = to_int64(P.Q);
  rep.witness_count = std::int64_t{1} << m;
  rep.epsilon = epsilon;

  double logQ = std::log(static_cast<double>(rep.Q));
  if (!(logQ > 0.0) || !(std::log(logQ) > 0.0))
    throw std::domain_error("log log Q undefined or nonpositive for Q = " +
                            std::to_string(rep.Q));
  double loglogQ = std::log(logQ);
  rep.bound = std::pow(static_cast<double>(rep.Q),
                       std::log(2.0) / ((1.0 + epsilon) * loglogQ));
  rep.epsilon_min = logQ / (static_cast<double>(m) * loglogQ) - 1.0;
  rep.passes = static_cast<double>(rep.witness_count) >= rep.bound;

  // Independent route to the same decision; the two must agree.
  bool via_threshold = epsilon >= rep.epsilon_min;
  if (via_threshold != rep.passes)
    throw std::logic_error("lemma check disagreement between routes at m=" +
                           std::to_string(m));

  if (rep.Q <= 1'000'000) {
    auto pairs = enumerate_sq_exact(rep.Q);
    rep.exact_count = static_cast<std::int64_t>(pairs.size());
    if (*rep.exact_count < rep.witness_count)
      throw std::logic_error("exact count below witness count");
  }
  return rep;
}

ClusterReport clustering_ratio(std::int64_t Q, std::int64_t delta_num,
                               std::int64_t delta_den, int workers) {
  if (Q < 3) throw std::domain_error("clustering requires Q >= 3");
  if (delta_num < 0 || delta_den < 1)
    throw std::domain_error("delta must be a nonnegative rational");

  ClusterReport rep;
  rep.Q = Q;
  rep.delta_num = delta_num;
  rep.delta_den = delta_den;

  // Candidate window per q is ~2*delta*q^2 integers wide; q = 2Q bounds
  // them all. Oversized requests fail before any scanning happens.
  {
    int128 qq_max = checked_mul(int128{2} * Q, int128{2} * Q);
    int128 width =
        checked_mul(int128{2} * delta_num, qq_max) /
            checked_mul(int128{Q}, delta_den) +
        2;
    if (width > 1'000'000)
      throw guard_error("delta admits more than 10^6 candidates per q");
  }

  std::vector<std::int64_t> per_q(static_cast<std::size_t>(Q), 0);
  parallel_for(Q, workers, [&](std::int64_t i) {
    std::int64_t q = Q + 1 + i;
    int128 qq = checked_mul(q, q);
    // a >= q^2*(den - Q*num)/(Q*den), a <= q^2*(den + Q*num)/(Q*den)
    int128 qnum = checked_mul(int128{Q}, delta_num);
    int128 qden = checked_mul(int128{Q}, delta_den);
    std::int64_t a_lo =
        to_int64(ceil_div(checked_mul(qq, int128{delta_den} - qnum), qden));
    std::int64_t a_hi =
        to_int64(floor_div(checked_mul(qq, int128{delta_den} + qnum), qden));
    std::int64_t count = 0;
    for (std::int64_t a = std::max<std::int64_t>(1, a_lo);
         a <= std::min(to_int64(qq), a_hi); ++a) {
      if (std::gcd(a, q) != 1) continue;
      // |a*Q - q^2| * delta_den <= delta_num * q^2 * Q, exactly.
      int128 diff = abs128(checked_mul(int128{a}, Q) - qq);
      if (checked_mul(diff, delta_den) <=
          checked_mul(int128{delta_num}, checked_mul(qq, int128{Q})))
        ++count;
    }
    per_q[static_cast<std::size_t>(i)] = count;
  });

  for (std::int64_t c : per_q) rep.observed += c;
  double q3 = static_cast<double>(Q) * static_cast<double>(Q) *
              static_cast<double>(Q);
  rep.expected = q3 * 2.0 * static_cast<double>(delta_num) /
                 static_cast<double>(delta_den);
  rep.ratio = rep.expected == 0.0
                  ? std::numeric_limits<double>::quiet_NaN()
                  : static_cast<double>(rep.observed) / rep.expected;
  return rep;
}

}  // namespace sqsieve
