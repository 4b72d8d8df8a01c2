#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fockcc/index_set.hpp"

namespace fockcc {

// Partition machinery works on "element masks": bit j set means element j
// is present, with j >= 0. Element 0 is the formal sentinel used when a
// symmetric difference has odd size; it is not a valid orbital index, which
// is why this convention differs from OrbitalIndexSet (bit j-1 <-> j).
using ElemMask = std::uint32_t;

inline ElemMask elem_mask(OrbitalIndexSet s) { return s.bits() << 1; }

inline std::vector<int> elem_list(ElemMask m) {
  std::vector<int> out;
  for (; m; m &= m - 1) out.push_back(std::countr_zero(m));
  return out;
}

/// A partition of a finite set into blocks of even cardinality, blocks in
/// canonical order (ascending minimal element).
struct EvenSetPartition {
  std::vector<ElemMask> blocks;

  int block_count() const { return int(blocks.size()); }
  ElemMask ground_set() const {
    ElemMask u = 0;
    for (ElemMask b : blocks) u |= b;
    return u;
  }
};

namespace detail {

inline void even_partitions_rec(ElemMask rest, std::vector<ElemMask>& acc,
                                std::vector<EvenSetPartition>& out) {
  if (rest == 0) {
    out.push_back({acc});
    return;
  }
  // The lowest remaining element anchors its block; choosing an odd-sized
  // companion subset keeps every block even and makes each partition appear
  // exactly once with blocks already sorted by minimal element.
  int lo = std::countr_zero(rest);
  ElemMask others = rest & ~(1u << lo);
  // Iterate over all subsets of `others`.
  for (ElemMask sub = others;; sub = (sub - 1) & others) {
    if (std::popcount(sub) % 2 == 1) {
      acc.push_back(sub | (1u << lo));
      even_partitions_rec(others & ~sub, acc, out);
      acc.pop_back();
    }
    if (sub == 0) break;
  }
}

}  // namespace detail

/// All partitions of the given element set into even-cardinality blocks.
/// Throws if the set itself has odd size.
inline std::vector<EvenSetPartition> even_partitions_of(ElemMask set) {
  if (std::popcount(set) % 2 != 0)
    throw std::invalid_argument("even_partitions_of: odd ground set");
  std::vector<EvenSetPartition> out;
  std::vector<ElemMask> acc;
  detail::even_partitions_rec(set, acc, out);
  return out;
}

inline std::vector<EvenSetPartition> even_set_partitions(OrbitalIndexSet s) {
  return even_partitions_of(elem_mask(s));
}

namespace detail {

inline int inversions(const std::vector<int>& word) {
  int inv = 0;
  for (std::size_t i = 0; i < word.size(); ++i)
    for (std::size_t j = i + 1; j < word.size(); ++j)
      if (word[i] > word[j]) ++inv;
  return inv;
}

}  // namespace detail

/// Sign of an even partition relative to the split at d: the product of
/// the signs of the two concatenation permutations
///   left side  (elements <= d, sentinel included) -> (pi_1 cap, pi_2 cap, ...)
///   right side (elements  > d)                    -> (pi_1 minus, ...)
/// with blocks taken in canonical order. Order-invariant for even partitions.
inline int partition_sign(const EvenSetPartition& pi, int d) {
  std::vector<int> left, right;
  ElemMask left_mask = d >= 31 ? ~0u : ((1u << (d + 1)) - 1u);
  for (ElemMask b : pi.blocks) {
    for (int e : elem_list(b & left_mask)) left.push_back(e);
    for (int e : elem_list(b & ~left_mask)) right.push_back(e);
  }
  int inv = detail::inversions(left) + detail::inversions(right);
  return inv % 2 == 0 ? 1 : -1;
}

}  // namespace fockcc
