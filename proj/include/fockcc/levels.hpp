#pragma once

#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "fockcc/index_set.hpp"

namespace fockcc {

/// (m, l) = (holes below the Fermi level, particles above it).
using GridPair = std::pair<int, int>;

/// Excitation level of J relative to the reference state [d].
inline GridPair level_of(OrbitalIndexSet J, int d) {
  auto ref = OrbitalIndexSet::range(d, J.orbital_count());
  return {std::popcount(ref.bits() & ~J.bits()),
          std::popcount(J.bits() & ~ref.bits())};
}

inline bool in_grid(GridPair p, int d, int n) {
  return p.first >= 0 && p.first <= d && p.second >= 0 &&
         p.second <= n - d && (p.first + p.second) > 0;
}

/// A set of grid pairs; the truncation data sigma.
class LevelSet {
 public:
  LevelSet() = default;
  explicit LevelSet(std::set<GridPair> pairs) : pairs_(std::move(pairs)) {}
  LevelSet(std::initializer_list<GridPair> pairs) : pairs_(pairs) {}

  const std::set<GridPair>& pairs() const { return pairs_; }
  bool contains(GridPair p) const { return pairs_.count(p) > 0; }
  bool contains(int m, int l) const { return contains({m, l}); }
  int size() const { return int(pairs_.size()); }
  bool empty() const { return pairs_.empty(); }
  void insert(GridPair p) { pairs_.insert(p); }

  bool subset_of(const LevelSet& o) const {
    for (auto p : pairs_)
      if (!o.contains(p)) return false;
    return true;
  }

  friend bool operator==(const LevelSet& a, const LevelSet& b) {
    return a.pairs_ == b.pairs_;
  }
  friend bool operator<(const LevelSet& a, const LevelSet& b) {
    return a.pairs_ < b.pairs_;
  }

  /// "1,0;1,1;0,1" (sorted order).
  std::string str() const {
    std::string s;
    for (auto [m, l] : pairs_) {
      if (!s.empty()) s += ';';
      s += std::to_string(m) + "," + std::to_string(l);
    }
    return s;
  }

  static LevelSet parse(const std::string& text, int d, int n) {
    LevelSet out;
    std::size_t pos = 0;
    while (pos < text.size()) {
      std::size_t semi = text.find(';', pos);
      if (semi == std::string::npos) semi = text.size();
      std::string item = text.substr(pos, semi - pos);
      std::size_t comma = item.find(',');
      if (comma == std::string::npos)
        throw std::invalid_argument("level set: missing comma at position " +
                                    std::to_string(pos) + " in \"" + text + "\"");
      int m = std::stoi(item.substr(0, comma));
      int l = std::stoi(item.substr(comma + 1));
      if (!in_grid({m, l}, d, n))
        throw std::invalid_argument("level set: pair (" + item +
                                    ") outside the grid at position " +
                                    std::to_string(pos));
      out.insert({m, l});
      pos = semi + 1;
    }
    return out;
  }

 private:
  std::set<GridPair> pairs_;
};

/// The full grid of feasible levels (excluding (0,0)).
inline LevelSet full_grid(int d, int n) {
  LevelSet g;
  for (int m = 0; m <= d; ++m)
    for (int l = 0; l <= n - d; ++l)
      if (m + l > 0) g.insert({m, l});
  return g;
}

}  // namespace fockcc
