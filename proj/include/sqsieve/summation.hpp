#pragma once

#include <cstdint>
#include <span>
#include <utility>

namespace sqsieve {

namespace detail {

// Balanced-tree reduction with a fixed midpoint split. The result bits
// depend only on the term sequence, never on chunking or worker count.
template <typename T, typename Fn>
T pairwise_reduce(std::int64_t lo, std::int64_t hi, Fn& term) {
  constexpr std::int64_t kLeaf = 32;
  if (hi - lo <= kLeaf) {
    T acc = T{};
    for (std::int64_t i = lo; i < hi; ++i) acc += term(i);
    return acc;
  }
  std::int64_t mid = lo + (hi - lo) / 2;
  return pairwise_reduce<T>(lo, mid, term) + pairwise_reduce<T>(mid, hi, term);
}

}  // namespace detail

// Sums fn(i) for i in [lo, hi) without materializing the terms.
template <typename T, typename Fn>
T pairwise_sum_generate(std::int64_t lo, std::int64_t hi, Fn&& fn) {
  if (hi <= lo) return T{};
  return detail::pairwise_reduce<T>(lo, hi, fn);
}

template <typename T>
T pairwise_sum(std::span<const T> xs) {
  return pairwise_sum_generate<T>(0, static_cast<std::int64_t>(xs.size()),
                                  [&](std::int64_t i) { return xs[i]; });
}

}  // namespace sqsieve
