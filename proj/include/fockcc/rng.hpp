#pragma once

#include <complex>
#include <cstdint>

namespace fockcc {

/// splitmix64 finalizer; used counter-style so that any (seed, counter...)
/// tuple maps to a reproducible value on every platform.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline std::uint64_t mix64(std::uint64_t seed, std::uint64_t a,
                           std::uint64_t b = 0) {
  return mix64(mix64(mix64(seed) ^ a) ^ b);
}

/// Uniform on [-1, 1].
inline double unit_real(std::uint64_t seed, std::uint64_t a,
                        std::uint64_t b = 0) {
  return double(mix64(seed, a, b) >> 11) * (2.0 / 9007199254740992.0) - 1.0;
}

inline std::complex<double> unit_complex(std::uint64_t seed, std::uint64_t a,
                                         std::uint64_t b = 0) {
  return {unit_real(seed, a, 2 * b), unit_real(seed, a, 2 * b + 1)};
}

}  // namespace fockcc
