#include "fockcc/expparam.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fockcc/rng.hpp"

namespace fockcc {

namespace {

// Splits a partition block (element-mask convention, sentinel bit 0) into
// the amplitude variable t_{I|B} at the d|rest boundary.
VariableId block_variable(ElemMask block, int d) {
  ElemMask no_sentinel = block & ~1u;
  ElemMask hole_mask = ((1u << (d + 1)) - 1u) & ~1u;  // elements 1..d
  std::uint32_t i_bits = (no_sentinel & hole_mask) >> 1;
  std::uint32_t b_bits = (no_sentinel & ~hole_mask) >> 1;
  return VariableId::t(i_bits, b_bits);
}

// The global sign of coordinate J relative to the plain partition sum:
// (-1)^{sum(I) - m(m+1)/2 + l(d-m)} with I = [d]\J (m holes) and
// B = J\[d] (l particles). It accounts for moving the annihilated holes out
// of the reference word and the created particles past the remaining ones.
int coordinate_prefactor(OrbitalIndexSet J, int d) {
  auto ref = OrbitalIndexSet::range(d, J.orbital_count());
  OrbitalIndexSet I{ref.bits() & ~J.bits(), J.orbital_count()};
  int m = I.size();
  int l = std::popcount(J.bits() & ~ref.bits());
  int e = -m * (m + 1) / 2 + l * (d - m);
  for (int i : I.elements()) e += i;
  return ((e % 2) + 2) % 2 == 0 ? 1 : -1;
}

// Signed sum over even-block partitions of the (possibly sentinel-extended)
// symmetric difference, with per-block variables; the common core of the
// master polynomial and every relabeled coordinate.
SparsePolynomial partition_sum(ElemMask ground, int d) {
  SparsePolynomial out;
  for (const auto& part : even_partitions_of(ground)) {
    Monomial m;
    for (ElemMask b : part.blocks)
      m = m.times(Monomial{{{block_variable(b, d), 1}}});
    out.add_term(m, Rational(partition_sign(part, d)));
  }
  return out;
}

}  // namespace

std::vector<VariableId> amplitude_variables(int d, int n,
                                            const LevelSet& sigma) {
  std::vector<VariableId> out;
  std::uint32_t hole_all = d == 0 ? 0u : ((1u << d) - 1u);
  std::uint32_t part_all = ((n >= 32 ? 0u : (1u << n)) - 1u) & ~hole_all;
  // enumerate subsets I of the holes and B of the particles
  std::uint32_t i_sub = hole_all;
  while (true) {
    std::uint32_t b_sub = part_all;
    while (true) {
      GridPair lvl{std::popcount(i_sub), std::popcount(b_sub)};
      if (lvl.first + lvl.second > 0 && sigma.contains(lvl))
        out.push_back(VariableId::t(i_sub, b_sub));
      if (b_sub == 0) break;
      b_sub = (b_sub - 1) & part_all;
    }
    if (i_sub == 0) break;
    i_sub = (i_sub - 1) & hole_all;
  }
  std::sort(out.begin(), out.end());
  return out;
}

SparsePolynomial master_polynomial(int d) {
  if (d < 1 || d > 5)
    throw std::out_of_range("master_polynomial: d out of 1..5");
  ElemMask ground = ((1u << (2 * d + 1)) - 1u) & ~1u;  // elements 1..2d
  return partition_sum(ground, d);
}

SparsePolynomial psi_coordinate(OrbitalIndexSet J, int d, int n) {
  if (J.orbital_count() != n)
    throw std::invalid_argument("psi_coordinate: J not over [n]");
  auto ref = OrbitalIndexSet::range(d, n);
  OrbitalIndexSet diff = J ^ ref;
  if (diff.size() == 0) return SparsePolynomial::constant(Rational(1));
  ElemMask ground = elem_mask(diff);
  if (diff.size() % 2 != 0) ground |= 1u;  // formal sentinel on the hole side
  SparsePolynomial p = partition_sum(ground, d);
  p *= Rational(coordinate_prefactor(J, d));
  return p;
}

ParamMap forward_map(int d, int n, const LevelSet& sigma) {
  ParamMap map;
  map.d = d;
  map.n = n;
  map.sigma = sigma;
  map.entries.reserve(std::size_t(1) << n);
  auto outside = [&](VariableId v) {
    return v.tag == VarTag::T && !sigma.contains(t_level(v));
  };
  for (auto J : revlex_order(n))
    map.entries.push_back(psi_coordinate(J, d, n).drop_variables(outside));
  return map;
}

OperatorWord excitation_word(OrbitalIndexSet I, OrbitalIndexSet B) {
  OperatorWord w;
  for (int b : B.elements()) w.letters.push_back({true, b});
  auto holes = I.elements();
  for (auto it = holes.rbegin(); it != holes.rend(); ++it)
    w.letters.push_back({false, *it});
  return w;
}

std::map<std::pair<std::uint32_t, std::uint32_t>, SparsePolynomial>
cluster_matrix(int d, int n, const LevelSet& sigma) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, SparsePolynomial> out;
  for (VariableId v : amplitude_variables(d, n, sigma)) {
    auto word = excitation_word(OrbitalIndexSet(v.a, n), OrbitalIndexSet(v.b, n));
    for (const auto& e : jw_word_matrix(word, n).entries)
      out[{e.row, e.col}] += SparsePolynomial::monomial(Monomial{{{v, 1}}}, e.value);
  }
  return out;
}

std::vector<std::complex<double>> numeric_forward(
    const std::map<VariableId, std::complex<double>>& tvals, int d, int n,
    const LevelSet& sigma) {
  if (n > kMaxMatrixOrbitals)
    throw std::out_of_range("numeric_forward: n out of 1..12");
  using C = std::complex<double>;
  struct Trip {
    std::uint32_t row, col;
    C val;
  };
  std::vector<Trip> T;
  for (VariableId v : amplitude_variables(d, n, sigma)) {
    auto it = tvals.find(v);
    if (it == tvals.end() || it->second == C(0.0)) continue;
    auto word = excitation_word(OrbitalIndexSet(v.a, n), OrbitalIndexSet(v.b, n));
    for (const auto& e : jw_word_matrix(word, n).entries)
      T.push_back({e.row, e.col, e.value.to_double() * it->second});
  }
  std::size_t dim = std::size_t(1) << n;
  std::vector<C> psi(dim, 0.0), v(dim, 0.0), next(dim);
  v[OrbitalIndexSet::range(d, n).bits()] = 1.0;
  for (int k = 0; k <= n + 1; ++k) {
    bool nonzero = false;
    for (std::size_t i = 0; i < dim; ++i) {
      psi[i] += v[i];
      if (v[i] != C(0.0)) nonzero = true;
    }
    if (!nonzero) break;
    std::fill(next.begin(), next.end(), C(0.0));
    for (const auto& t : T) next[t.row] += t.val * v[t.col];
    double inv = 1.0 / double(k + 1);
    for (std::size_t i = 0; i < dim; ++i) next[i] *= inv;
    v.swap(next);
  }
  return psi;
}

SparsePolynomial inverse_coordinate(OrbitalIndexSet J, int d, int n) {
  if (J.orbital_count() != n)
    throw std::invalid_argument("inverse_coordinate: J not over [n]");
  auto ref = OrbitalIndexSet::range(d, n);
  OrbitalIndexSet diff = J ^ ref;
  if (diff.size() == 0) return SparsePolynomial::constant(Rational(1));
  ElemMask ground = elem_mask(diff);
  if (diff.size() % 2 != 0) ground |= 1u;
  ElemMask left_mask = (1u << (d + 1)) - 1u;  // sentinel and elements <= d
  int left_total = std::popcount(ground & left_mask);
  SparsePolynomial out;
  for (const auto& part : even_partitions_of(ground)) {
    int k = part.block_count();
    // nu compares the hole-side inversions of the partition against the
    // unpartitioned hole side.
    int nu = left_total * (left_total - 1) / 2;
    Monomial m;
    Rational coef(1);
    for (ElemMask b : part.blocks) {
      int bl = std::popcount(b & left_mask);
      nu -= bl * (bl - 1) / 2;
      VariableId tv = block_variable(b, d);
      m = m.times(Monomial{{{VariableId::c(tv.a, tv.b), 1}}});
    }
    for (int f = 2; f < k; ++f) coef *= Rational(f);  // (k-1)!
    if ((nu + k - 1) % 2 != 0) coef = -coef;
    coef *= Rational(partition_sign(part, d));
    out.add_term(m, coef);
  }
  out *= Rational(coordinate_prefactor(J, d));
  return out;
}

bool eom_factorization_check(const LevelSet& tau, const LevelSet& sigma, int d,
                             int n, int trials, std::uint64_t seed) {
  for (auto [m, l] : tau.pairs())
    if (m != l + 1)
      throw std::invalid_argument(
          "eom_factorization_check: tau must sit on the first sub-diagonal");
  for (auto [m, l] : sigma.pairs())
    if (m != l)
      throw std::invalid_argument(
          "eom_factorization_check: sigma must sit on the diagonal");
  using C = std::complex<double>;
  std::size_t dim = std::size_t(1) << n;
  auto tau_vars = amplitude_variables(d, n, tau);
  auto sigma_vars = amplitude_variables(d, n, sigma);
  LevelSet both = tau;
  for (auto p : sigma.pairs()) both.insert(p);
  for (int trial = 0; trial < trials; ++trial) {
    std::map<VariableId, C> t_tau, t_sigma, t_both;
    std::uint64_t c = 0;
    for (auto v : tau_vars)
      t_both[v] = t_tau[v] = unit_complex(seed, trial, c++);
    for (auto v : sigma_vars)
      t_both[v] = t_sigma[v] = unit_complex(seed, trial, c++);
    auto lhs = numeric_forward(t_both, d, n, both);
    auto base = numeric_forward(t_sigma, d, n, sigma);
    // apply T(t_tau) to the diagonal-only exponential
    std::vector<C> lowered(dim, 0.0);
    for (auto v : tau_vars) {
      auto word = excitation_word(OrbitalIndexSet(v.a, n), OrbitalIndexSet(v.b, n));
      for (const auto& e : jw_word_matrix(word, n).entries)
        lowered[e.row] += e.value.to_double() * t_tau[v] * base[e.col];
    }
    for (std::size_t i = 0; i < dim; ++i) {
      if (std::abs(lhs[i] - base[i] - lowered[i]) > 1e-10) return false;
      int sz = std::popcount(std::uint32_t(i));
      if (sz != d && std::abs(base[i]) > 1e-12) return false;
      if (sz != d - 1 && std::abs(lowered[i]) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace fockcc
