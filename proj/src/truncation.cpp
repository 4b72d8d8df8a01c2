#include "fockcc/truncation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fockcc {

namespace {

long long binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long long dimension(const LevelSet& sigma, int d, int n) {
  long long dim = 0;
  for (auto [m, l] : sigma.pairs()) dim += binom(d, m) * binom(n - d, l);
  return dim;
}

bool preceq(GridPair p, GridPair q) {
  if (p.first > q.first || p.second > q.second) return false;
  return (p.first + p.second) % 2 == 0 || (q.first + q.second) % 2 == 1;
}

bool is_linear(const LevelSet& sigma, int d, int n) {
  for (auto p : sigma.pairs())
    for (auto q : sigma.pairs()) {
      if ((p.first + p.second) % 2 != 0 && (q.first + q.second) % 2 != 0)
        continue;  // two odd levels never combine
      GridPair s{p.first + q.first, p.second + q.second};
      if (in_grid(s, d, n) && !sigma.contains(s)) return false;
    }
  return true;
}

LevelSet particle_hole_dual_levels(const LevelSet& sigma) {
  LevelSet out;
  for (auto [m, l] : sigma.pairs()) out.insert({l, m});
  return out;
}

OrbitalIndexSet particle_hole_dual_index(OrbitalIndexSet J) {
  int n = J.orbital_count();
  OrbitalIndexSet out = OrbitalIndexSet::empty(n);
  for (int j = 1; j <= n; ++j)
    if (!J.contains(j)) out = out.with(n + 1 - j);
  return out;
}

bool graph_hypothesis(const LevelSet& sigma, int d, int n) {
  // Unbounded-knapsack reachability: can (m,l) be written as a multiset sum
  // of 2..d elements of sigma? reach[m][l][k] tracks sums of exactly k parts
  // (k capped at d); parts beyond d never contribute a violation.
  const int M = d + 1, L = n - d + 1, K = d + 1;
  auto idx = [&](int m, int l, int cnt) { return (m * L + l) * K + cnt; };
  std::vector<char> reach(std::size_t(M) * L * K, 0);
  reach[std::size_t(idx(0, 0, 0))] = 1;
  for (auto [pm, pl] : sigma.pairs())
    for (int m = pm; m < M; ++m)
      for (int l = pl; l < L; ++l)
        for (int cnt = 0; cnt + 1 < K; ++cnt)
          if (reach[std::size_t(idx(m - pm, l - pl, cnt))])
            reach[std::size_t(idx(m, l, cnt + 1))] = 1;
  for (auto [m, l] : sigma.pairs())
    for (int cnt = 2; cnt < K; ++cnt)
      if (reach[std::size_t(idx(m, l, cnt))]) return false;
  return true;
}

std::string family_name(Family f) {
  switch (f) {
    case Family::Flag: return "Flag";
    case Family::Spinor: return "Spinor";
    case Family::FixedNDiagonal: return "FixedN-diagonal";
    case Family::Ionization: return "Ionization";
    case Family::ElectronAttachment: return "ElectronAttachment";
    case Family::Generic: return "Generic";
  }
  return "Generic";
}

Family recognize_family(const LevelSet& sigma, int d, int n) {
  (void)d;
  (void)n;
  LevelSet flag({{1, 0}, {1, 1}, {0, 1}});
  LevelSet spinor({{2, 0}, {1, 1}, {0, 2}});
  if (sigma == flag) return Family::Flag;
  if (sigma == spinor) return Family::Spinor;
  bool diag = true, ion = true, attach = true;
  for (auto [m, l] : sigma.pairs()) {
    diag = diag && m == l;
    ion = ion && m == l + 1;
    attach = attach && l == m + 1;
  }
  if (!sigma.empty()) {
    if (diag) return Family::FixedNDiagonal;
    if (ion) return Family::Ionization;
    if (attach) return Family::ElectronAttachment;
  }
  return Family::Generic;
}

std::vector<SparsePolynomial> chart_ideal_generators(const LevelSet& sigma,
                                                     int d, int n) {
  auto ref = OrbitalIndexSet::range(d, n);
  // collect excluded coordinates, lowest level first
  std::vector<OrbitalIndexSet> excluded;
  for (auto J : revlex_order(n)) {
    auto lvl = level_of(J, d);
    if (lvl.first + lvl.second > 0 && !sigma.contains(lvl))
      excluded.push_back(J);
  }
  std::stable_sort(excluded.begin(), excluded.end(),
                   [&](OrbitalIndexSet a, OrbitalIndexSet b) {
                     auto la = level_of(a, d), lb = level_of(b, d);
                     return la.first + la.second < lb.first + lb.second;
                   });
  std::set<VariableId> known_zero;
  std::vector<SparsePolynomial> out;
  for (auto J : excluded) {
    auto g = inverse_coordinate(J, d, n).rename([&](VariableId v) {
      return VariableId::psi((ref.bits() & ~v.a) | v.b);
    });
    g = g.drop_variables(
        [&](VariableId v) { return known_zero.count(v) > 0; });
    if (g.term_count() == 1 && g.degree() == 1)
      known_zero.insert(g.terms().begin()->first.factors[0].first);
    out.push_back(std::move(g));
  }
  return out;
}

TruncationReport analyze(const LevelSet& sigma, int d, int n) {
  TruncationReport r;
  r.d = d;
  r.n = n;
  r.sigma = sigma;
  r.dim = dimension(sigma, d, n);
  r.linear = is_linear(sigma, d, n);
  r.hypothesis = graph_hypothesis(sigma, d, n);
  r.family = recognize_family(sigma, d, n);
  for (const auto& g : chart_ideal_generators(sigma, d, n))
    ++r.generators_by_degree[g.degree()];
  return r;
}

CensusCounts census(int d, int n) {
  LevelSet g = full_grid(d, n);
  std::vector<GridPair> grid(g.pairs().begin(), g.pairs().end());
  if (grid.size() > 20)
    throw std::out_of_range("census: grid too large to enumerate");
  CensusCounts counts;
  std::uint32_t all = (1u << grid.size()) - 1u;
  for (std::uint32_t bits = 1; bits < all; ++bits) {
    LevelSet sigma;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (bits & (1u << i)) sigma.insert(grid[i]);
    ++counts.total;
    if (is_linear(sigma, d, n)) ++counts.linear;
    if (graph_hypothesis(sigma, d, n)) ++counts.hypothesis;
  }
  return counts;
}

namespace {

using C = std::complex<double>;

C det(std::vector<std::vector<C>> a) {
  int k = int(a.size());
  C result = 1.0;
  for (int col = 0; col < k; ++col) {
    int pivot = -1;
    double best = 0.0;
    for (int r = col; r < k; ++r)
      if (std::abs(a[r][col]) > best) {
        best = std::abs(a[r][col]);
        pivot = r;
      }
    if (pivot < 0 || best == 0.0) return 0.0;
    if (pivot != col) {
      std::swap(a[pivot], a[col]);
      result = -result;
    }
    result *= a[col][col];
    for (int r = col + 1; r < k; ++r) {
      C f = a[r][col] / a[col][col];
      for (int c2 = col; c2 < k; ++c2) a[r][c2] -= f * a[col][c2];
    }
  }
  return result;
}

C tval(const std::map<VariableId, C>& tvals, std::uint32_t i_bits,
       std::uint32_t b_bits) {
  auto it = tvals.find(VariableId::t(i_bits, b_bits));
  return it == tvals.end() ? C(0.0) : it->second;
}

}  // namespace

FlagCheckResult flag_parameterization(const std::map<VariableId, C>& tvals,
                                      int d, int n) {
  FlagCheckResult res;
  // rows 0..d, columns 0..n; row 0 carries the pure creation amplitudes,
  // rows 1..d an identity block bordered by t_{i,0} and t_{i,b}
  res.matrix.assign(std::size_t(d) + 1, std::vector<C>(std::size_t(n) + 1, 0.0));
  for (int b = d + 1; b <= n; ++b)
    res.matrix[0][std::size_t(b)] = tval(tvals, 0, 1u << (b - 1));
  for (int i = 1; i <= d; ++i) {
    res.matrix[std::size_t(i)][0] = tval(tvals, 1u << (i - 1), 0);
    res.matrix[std::size_t(i)][std::size_t(i)] = 1.0;
    for (int b = d + 1; b <= n; ++b)
      res.matrix[std::size_t(i)][std::size_t(b)] =
          tval(tvals, 1u << (i - 1), 1u << (b - 1));
  }
  LevelSet sigma({{1, 0}, {1, 1}, {0, 1}});
  auto psi = numeric_forward(tvals, d, n, sigma);
  auto minor = [&](const std::vector<int>& rows, const std::vector<int>& cols) {
    std::vector<std::vector<C>> sub(rows.size(), std::vector<C>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        sub[r][c] = res.matrix[std::size_t(rows[r])][std::size_t(cols[c])];
    return det(sub);
  };
  std::vector<int> all_rows, tail_rows;
  for (int r = 0; r <= d; ++r) all_rows.push_back(r);
  for (int r = 1; r <= d; ++r) tail_rows.push_back(r);
  for (auto J : revlex_order(n)) {
    C expect = 0.0;
    int sz = J.size();
    if (sz == d + 1) {
      expect = minor(all_rows, J.elements());
    } else if (sz == d) {
      expect = minor(tail_rows, J.elements());
    } else if (sz == d - 1) {
      std::vector<int> cols = {0};
      for (int j : J.elements()) cols.push_back(j);
      expect = minor(tail_rows, cols);
    }
    res.max_deviation =
        std::max(res.max_deviation, std::abs(expect - psi[J.revlex_rank()]));
  }
  res.ok = res.max_deviation <= 1e-12;
  return res;
}

C pfaffian(const std::vector<std::vector<C>>& a) {
  std::size_t k = a.size();
  if (k % 2 != 0) return 0.0;
  if (k == 0) return 1.0;
  if (k == 2) return a[0][1];
  C sum = 0.0;
  for (std::size_t j = 1; j < k; ++j) {
    if (a[0][j] == C(0.0)) continue;
    std::vector<std::size_t> keep;
    for (std::size_t r = 1; r < k; ++r)
      if (r != j) keep.push_back(r);
    std::vector<std::vector<C>> sub(k - 2, std::vector<C>(k - 2));
    for (std::size_t r = 0; r < keep.size(); ++r)
      for (std::size_t c = 0; c < keep.size(); ++c)
        sub[r][c] = a[keep[r]][keep[c]];
    C term = a[0][j] * pfaffian(sub);
    if (j % 2 == 0) term = -term;  // (-1)^{1+j} with 1-based j
    sum += term;
  }
  return sum;
}

SpinorCheckResult spinor_parameterization(const std::map<VariableId, C>& tvals,
                                          int d, int n) {
  SpinorCheckResult res;
  res.matrix.assign(std::size_t(n), std::vector<C>(std::size_t(n), 0.0));
  // entry (i,j), i<j, is the signed level-two coordinate psi_{[d]^{i,j}}
  auto entry = [&](int i, int j) -> C {
    if (j <= d) {  // two holes
      C v = tval(tvals, (1u << (i - 1)) | (1u << (j - 1)), 0);
      return (i + j - 3) % 2 == 0 ? v : -v;
    }
    if (i > d)  // two particles
      return tval(tvals, 0, (1u << (i - 1)) | (1u << (j - 1)));
    C v = tval(tvals, 1u << (i - 1), 1u << (j - 1));
    return (i + d) % 2 == 0 ? v : -v;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      C v = entry(i, j);
      res.matrix[std::size_t(i - 1)][std::size_t(j - 1)] = v;
      res.matrix[std::size_t(j - 1)][std::size_t(i - 1)] = -v;
    }
  LevelSet sigma({{2, 0}, {1, 1}, {0, 2}});
  auto psi = numeric_forward(tvals, d, n, sigma);
  auto ref = OrbitalIndexSet::range(d, n);
  for (auto I : revlex_order(n)) {
    C expect = 0.0;
    if (I.size() % 2 == 0) {
      auto elems = I.elements();
      std::vector<std::vector<C>> sub(elems.size(), std::vector<C>(elems.size()));
      for (std::size_t r = 0; r < elems.size(); ++r)
        for (std::size_t c = 0; c < elems.size(); ++c)
          sub[r][c] =
              res.matrix[std::size_t(elems[r] - 1)][std::size_t(elems[c] - 1)];
      expect = pfaffian(sub);
    }
    std::uint32_t coord = ref.bits() ^ I.bits();  // psi_{[d] ^ I}
    res.max_deviation =
        std::max(res.max_deviation, std::abs(expect - psi[coord]));
  }
  res.ok = res.max_deviation <= 1e-12;
  return res;
}

}  // namespace fockcc
