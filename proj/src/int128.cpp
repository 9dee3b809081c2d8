#include "sqsieve/int128.hpp"

#include <limits>

namespace sqsieve {

std::string to_string(int128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  // The most negative value still negates correctly as unsigned.
  unsigned __int128 u =
      neg ? ~static_cast<unsigned __int128>(v) + 1 : static_cast<unsigned __int128>(v);
  std::string digits;
  while (u != 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) digits.push_back('-');
  return {digits.rbegin(), digits.rend()};
}

std::int64_t to_int64(int128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < std::numeric_limits<std::int64_t>::min())
    throw std::overflow_error("value " + to_string(v) + " exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

}  // namespace sqsieve
