#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>

namespace aoo {

// Values of type int: arbitrary precision naturals.
using Nat = boost::multiprecision::cpp_int;

inline std::string to_string(const Nat& n) { return n.str(); }

// Saturating conversion used for size accounting.
inline std::uint64_t saturate_u64(const Nat& n) {
  static const Nat kMax = Nat(UINT64_MAX);
  if (n > kMax) return UINT64_MAX;
  return n.convert_to<std::uint64_t>();
}

inline std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  return a > UINT64_MAX - b ? UINT64_MAX : a + b;
}

}  // namespace aoo
