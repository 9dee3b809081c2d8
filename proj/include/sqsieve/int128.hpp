#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace sqsieve {

// All exact arithmetic runs on a fixed 128-bit width. Every modulus,
// numerator and intermediate product at supported scales fits with margin;
// overflow throws instead of wrapping.
using int128 = __int128;

std::string to_string(int128 v);

// Throws std::overflow_error if v does not fit in int64_t.
std::int64_t to_int64(int128 v);

inline int128 abs128(int128 v) { return v < 0 ? -v : v; }

inline int128 gcd128(int128 a, int128 b) {
  a = abs128(a);
  b = abs128(b);
  while (b != 0) {
    int128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline int128 checked_mul(int128 a, int128 b) {
  int128 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("exact integer overflow (128-bit multiply)");
  return r;
}

inline int128 checked_add(int128 a, int128 b) {
  int128 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("exact integer overflow (128-bit add)");
  return r;
}

// Floor/ceil division for den > 0, numerator of either sign.
inline int128 floor_div(int128 num, int128 den) {
  int128 q = num / den;
  int128 r = num % den;
  return (r != 0 && r < 0) ? q - 1 : q;
}

inline int128 ceil_div(int128 num, int128 den) { return -floor_div(-num, den); }

// Euclidean remainder in [0, den), den > 0.
inline int128 mod_floor(int128 num, int128 den) {
  int128 r = num % den;
  return r < 0 ? r + den : r;
}

}  // namespace sqsieve
