#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "sqsieve/errors.hpp"
#include "sqsieve/farey.hpp"

using namespace sqsieve;

namespace {

void check_pair_invariants(const FareyPair& p) {
  CHECK(std::gcd(p.a, p.q) == 1);
  CHECK(p.q > p.Q);
  CHECK(p.q <= 2 * p.Q);
  CHECK(p.a >= 1);
  CHECK(int128{p.a} <= int128{p.q} * p.q);
  CHECK(is_sq_member(p.a, p.q, p.Q));
  CHECK(int128{p.discrepancy} == int128{p.a} * p.Q - int128{p.q} * p.q);
}

}  // namespace

TEST_CASE("witness pairs for Q = 3 and Q = 15") {
  auto w3 = witness_pairs(odd_primorial(1));
  REQUIRE(w3.size() == 2);
  CHECK(w3[0] == FareyPair{5, 4, 3, -1});
  CHECK(w3[1] == FareyPair{8, 5, 3, -1});

  auto w15 = witness_pairs(odd_primorial(2));
  REQUIRE(w15.size() == 4);
  CHECK(w15[0] == FareyPair{17, 16, 15, -1});
  CHECK(w15[1] == FareyPair{24, 19, 15, -1});
  CHECK(w15[2] == FareyPair{45, 26, 15, -1});
  CHECK(w15[3] == FareyPair{56, 29, 15, -1});
}

TEST_CASE("witness pairs satisfy all invariants with discrepancy -1") {
  for (int m = 1; m <= 4; ++m) {
    auto pairs = witness_pairs(odd_primorial(m));
    CHECK(static_cast<std::int64_t>(pairs.size()) == (std::int64_t{1} << m));
    for (const auto& p : pairs) {
      check_pair_invariants(p);
      // q^2 = 1 + a*Q puts the fraction at exact distance 1/(q^2 Q).
      CHECK(p.discrepancy == -1);
    }
  }
}

TEST_CASE("exact enumeration of S(Q)") {
  auto s3 = enumerate_sq_exact(3);
  REQUIRE(s3.size() == 5);
  CHECK(s3[0] == FareyPair{5, 4, 3, -1});
  CHECK(s3[1] == FareyPair{8, 5, 3, -1});
  CHECK(s3[2] == FareyPair{9, 5, 3, 2});
  CHECK(s3[3] == FareyPair{11, 6, 3, -3});
  CHECK(s3[4] == FareyPair{13, 6, 3, 3});

  CHECK(enumerate_sq_exact(15).size() == 4);
  CHECK_THROWS_AS(enumerate_sq_exact(2), std::domain_error);
}

TEST_CASE("enumeration agrees with the fully naive double loop") {
  for (std::int64_t Q = 3; Q <= 40; ++Q)
    CHECK(enumerate_sq_exact(Q) == oracles::naive_sq_pairs(Q));
}

TEST_CASE("enumeration is independent of the worker count") {
  for (int workers : {1, 2, 8})
    CHECK(enumerate_sq_exact(257, workers) == enumerate_sq_exact(257));
}

TEST_CASE("witness pairs are members of the enumerated set") {
  for (int m = 1; m <= 4; ++m) {
    auto P = odd_primorial(m);
    auto witnesses = witness_pairs(P);
    auto all = enumerate_sq_exact(to_int64(P.Q));
    for (const auto& w : witnesses)
      CHECK(std::find(all.begin(), all.end(), w) != all.end());
  }
}

TEST_CASE("lemma count check examples") {
  auto r = lemma_count_check(2, 0.5);
  CHECK(r.Q == 15);
  CHECK(r.witness_count == 4);
  REQUIRE(r.exact_count.has_value());
  CHECK(*r.exact_count == 4);
  CHECK(r.epsilon_min == doctest::Approx(0.3591506029700815).epsilon(1e-12));
  CHECK(r.passes);

  auto r3 = lemma_count_check(3, 0.5);
  CHECK(r3.epsilon_min == doctest::Approx(0.008845293201377391).epsilon(1e-9));
  CHECK(r3.passes);

  auto r0 = lemma_count_check(2, 0.0);
  CHECK_FALSE(r0.passes);
  CHECK(r0.bound == doctest::Approx(6.5809743824290035).epsilon(1e-12));

  CHECK_THROWS_AS(lemma_count_check(0, 0.5), std::domain_error);
  CHECK_THROWS_AS(lemma_count_check(2, -0.1), std::domain_error);
}

TEST_CASE("lemma three-way consistency over the (m, eps) grid") {
  for (int m = 1; m <= 6; ++m) {
    for (double eps : {0.0, 0.01, 0.1, 0.5, 1.0}) {
      auto r = lemma_count_check(m, eps);
      bool via_bound = static_cast<double>(r.witness_count) >= r.bound;
      bool via_threshold = eps >= r.epsilon_min;
      CHECK(r.passes == via_bound);
      CHECK(r.passes == via_threshold);
      CHECK(r.witness_count == (std::int64_t{1} << m));
      if (r.exact_count) CHECK(*r.exact_count >= r.witness_count);
    }
  }
}

TEST_CASE("clustering ratio") {
  auto c15 = clustering_ratio(15, 1, 3375);  // delta = 1/Q^3
  CHECK(c15.observed == 4);
  CHECK(c15.expected == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c15.ratio == doctest::Approx(2.0).epsilon(1e-12));

  auto c3 = clustering_ratio(3, 1, 27);
  CHECK(c3.observed == 5);
  CHECK(c3.expected == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(c3.ratio == doctest::Approx(2.5).epsilon(1e-12));

  // Degenerate interval: only exact hits a/q^2 = 1/Q would count, and
  // coprimality rules them out.
  auto c0 = clustering_ratio(15, 0, 1);
  CHECK(c0.observed == 0);
  CHECK(c0.expected == 0.0);
  CHECK(std::isnan(c0.ratio));

  CHECK_THROWS_AS(clustering_ratio(2, 1, 27), std::domain_error);
  CHECK_THROWS_AS(clustering_ratio(3000, 1'000'000, 1), guard_error);
}

TEST_CASE("clustering observed matches the enumerated set at delta = 1/Q^3") {
  for (std::int64_t Q : {3, 4, 15, 21, 105}) {
    auto rep = clustering_ratio(Q, 1, Q * Q * Q);
    CHECK(rep.observed ==
          static_cast<std::int64_t>(enumerate_sq_exact(Q).size()));
  }
}

TEST_CASE("membership edge cases") {
  CHECK(is_sq_member(9, 5, 3));
  CHECK_FALSE(is_sq_member(10, 5, 3));  // |30-25|*9 = 45 > 25
  CHECK_FALSE(is_sq_member(12, 6, 3));  // distance 0 but gcd(12, 6) > 1
  CHECK_FALSE(is_sq_member(5, 3, 3));   // q outside (Q, 2Q]
  CHECK_FALSE(is_sq_member(5, 7, 3));
  CHECK_FALSE(is_sq_member(0, 5, 3));
  // The comparison is non-strict: a fraction at distance exactly 1/Q^3
  // stays in. 4/16 at Q = 2 is not applicable (Q >= 3), so scale one up:
  // Q = 4, q = 8, a = 17 gives |17*4 - 64| * 16 = 64 = q^2 exactly.
  CHECK(is_sq_member(17, 8, 4));
}
