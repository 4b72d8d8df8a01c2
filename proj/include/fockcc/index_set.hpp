#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fockcc {

inline constexpr int kMaxOrbitals = 16;

/// A subset of [n] = {1,...,n} stored as a bit pattern; bit (j-1) is set
/// iff j is in the set. The bit value doubles as the reverse-lexicographic
/// rank of the set, which is how basis states e_J are ordered.
class OrbitalIndexSet {
 public:
  OrbitalIndexSet() = default;
  OrbitalIndexSet(std::uint32_t bits, int n) : bits_(bits), n_(n) {
    if (n < 0 || n > kMaxOrbitals)
      throw std::out_of_range("OrbitalIndexSet: orbital count out of 0..16");
    if (n < 32 && (bits >> n) != 0)
      throw std::out_of_range("OrbitalIndexSet: element outside [n]");
  }

  static OrbitalIndexSet empty(int n) { return OrbitalIndexSet(0, n); }

  /// Set {1,...,d} inside [n].
  static OrbitalIndexSet range(int d, int n) {
    return OrbitalIndexSet(d == 0 ? 0u : ((1u << d) - 1u), n);
  }

  std::uint32_t bits() const { return bits_; }
  int orbital_count() const { return n_; }
  int size() const { return std::popcount(bits_); }
  bool contains(int j) const { return j >= 1 && j <= n_ && (bits_ >> (j - 1)) & 1u; }

  /// Position of this subset in the reverse-lexicographic order of all
  /// 2^n subsets.
  std::uint32_t revlex_rank() const { return bits_; }

  /// Strictly ascending element list.
  std::vector<int> elements() const {
    std::vector<int> out;
    out.reserve(size());
    for (std::uint32_t m = bits_; m; m &= m - 1)
      out.push_back(std::countr_zero(m) + 1);
    return out;
  }

  OrbitalIndexSet with(int j) const { return {bits_ | (1u << (j - 1)), n_}; }
  OrbitalIndexSet without(int j) const { return {bits_ & ~(1u << (j - 1)), n_}; }

  friend OrbitalIndexSet operator&(OrbitalIndexSet a, OrbitalIndexSet b) {
    return {a.bits_ & b.bits_, a.n_};
  }
  friend OrbitalIndexSet operator|(OrbitalIndexSet a, OrbitalIndexSet b) {
    return {a.bits_ | b.bits_, a.n_};
  }
  friend OrbitalIndexSet operator^(OrbitalIndexSet a, OrbitalIndexSet b) {
    return {a.bits_ ^ b.bits_, a.n_};
  }
  OrbitalIndexSet complement() const {
    return {~bits_ & (n_ == 0 ? 0u : ((n_ == 32 ? 0u : (1u << n_)) - 1u)), n_};
  }

  friend bool operator==(OrbitalIndexSet a, OrbitalIndexSet b) {
    return a.bits_ == b.bits_ && a.n_ == b.n_;
  }
  friend bool operator<(OrbitalIndexSet a, OrbitalIndexSet b) {
    return a.bits_ < b.bits_;
  }

  /// Ascending comma-joined elements; the empty set prints as "0".
  std::string str() const {
    if (bits_ == 0) return "0";
    std::string s;
    for (int j : elements()) {
      if (!s.empty()) s += ',';
      s += std::to_string(j);
    }
    return s;
  }

  static OrbitalIndexSet parse(const std::string& s, int n) {
    if (s == "0" || s.empty()) return empty(n);
    std::uint32_t bits = 0;
    std::size_t pos = 0;
    while (pos < s.size()) {
      std::size_t next = s.find(',', pos);
      if (next == std::string::npos) next = s.size();
      int j = std::stoi(s.substr(pos, next - pos));
      if (j < 1 || j > n)
        throw std::out_of_range("index set element outside [n]: " + s);
      bits |= 1u << (j - 1);
      pos = next + 1;
    }
    return {bits, n};
  }

 private:
  std::uint32_t bits_ = 0;
  int n_ = 0;
};

/// All 2^n subsets of [n] in reverse-lexicographic order; the position of
/// a set equals its revlex_rank.
inline std::vector<OrbitalIndexSet> revlex_order(int n) {
  if (n < 0 || n > kMaxOrbitals)
    throw std::out_of_range("revlex_order: orbital count out of 0..16");
  std::vector<OrbitalIndexSet> out;
  out.reserve(std::size_t(1) << n);
  for (std::uint32_t b = 0; b < (1u << n); ++b) out.emplace_back(b, n);
  return out;
}

}  // namespace fockcc
