// Acceptance gate: one PASS/FAIL line per criterion. Criterion 13 is long
// running and reported as SKIP unless FOCKCC_STRETCH=1 is set; it does not
// gate the exit status unless it actually runs and mismatches.
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <string>
#include <vector>

#include "fockcc/ccsystem.hpp"
#include "fockcc/expparam.hpp"
#include "fockcc/fd_algebra.hpp"
#include "fockcc/homotopy.hpp"
#include "fockcc/rng.hpp"
#include "fockcc/truncation.hpp"

using namespace fockcc;
using Complex = std::complex<double>;
using P = SparsePolynomial;

namespace {

int failures = 0;

void line(int num, bool ok, const std::string& what, double secs) {
  if (!ok) ++failures;
  std::printf("criterion %2d: %s  %s (%.1f s)\n", num, ok ? "PASS" : "FAIL",
              what.c_str(), secs);
  std::fflush(stdout);
}

template <class F>
void criterion(int num, const std::string& what, F&& body) {
  auto start = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body();
  } catch (const std::exception& e) {
    std::printf("criterion %2d: exception: %s\n", num, e.what());
  }
  double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  line(num, ok, what, secs);
}

P t(const std::string& holes, const std::string& parts) {
  return P::variable(VariableId::t(OrbitalIndexSet::parse(holes, 16).bits(),
                                   OrbitalIndexSet::parse(parts, 16).bits()));
}

std::map<VariableId, Complex> random_amplitudes(int d, int n,
                                                const LevelSet& sigma,
                                                std::uint64_t seed) {
  std::map<VariableId, Complex> vals;
  std::uint64_t c = 0;
  for (auto v : amplitude_variables(d, n, sigma))
    vals[v] = unit_complex(seed, c++);
  return vals;
}

// ---- independent dense Kronecker-product oracle (integer arithmetic) ----

using DenseInt = std::vector<std::vector<long long>>;

DenseInt kron(const DenseInt& a, const DenseInt& b) {
  std::size_t ra = a.size(), rb = b.size();
  DenseInt c(ra * rb, std::vector<long long>(ra * rb, 0));
  for (std::size_t i1 = 0; i1 < ra; ++i1)
    for (std::size_t j1 = 0; j1 < ra; ++j1)
      for (std::size_t i2 = 0; i2 < rb; ++i2)
        for (std::size_t j2 = 0; j2 < rb; ++j2)
          c[i1 * rb + i2][j1 * rb + j2] = a[i1][j1] * b[i2][j2];
  return c;
}

DenseInt dense_letter(OperatorLetter L, int n) {
  const DenseInt eye = {{1, 0}, {0, 1}};
  const DenseInt sz = {{1, 0}, {0, -1}};
  const DenseInt ann = {{0, 1}, {0, 0}};   // occupied -> empty
  const DenseInt cre = {{0, 0}, {1, 0}};
  DenseInt m = {{1}};
  // Highest Kronecker factor corresponds to orbital n (highest index bit);
  // the parity string sits on the orbitals below the letter's.
  for (int j = n; j >= 1; --j) {
    const DenseInt& f = (j == L.orbital) ? (L.creation ? cre : ann)
                        : (j < L.orbital) ? sz
                                          : eye;
    m = kron(m, f);
  }
  return m;
}

DenseInt dense_mul(const DenseInt& a, const DenseInt& b) {
  std::size_t n = a.size();
  DenseInt c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

DenseInt dense_word(const OperatorWord& w, int n) {
  std::size_t dim = std::size_t(1) << n;
  DenseInt m(dim, std::vector<long long>(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = 1;
  for (const auto& L : w.letters) m = dense_mul(m, dense_letter(L, n));
  return m;
}

bool word_matches_oracle(const OperatorWord& w, int n) {
  DenseInt m = dense_word(w, n);
  for (std::uint32_t r = 0; r < (1u << n); ++r)
    for (std::uint32_t c = 0; c < (1u << n); ++c)
      if (matrix_entry(w, OrbitalIndexSet(r, n), OrbitalIndexSet(c, n), n) !=
          Rational(m[r][c]))
        return false;
  return true;
}

OperatorWord random_word(int n, int len, std::uint64_t seed) {
  OperatorWord w;
  for (int i = 0; i < len; ++i) {
    std::uint64_t r = mix64(seed, std::uint64_t(i));
    w.letters.push_back(
        {(r & 1) != 0, 1 + int((r >> 1) % std::uint64_t(n))});
  }
  return w;
}

const LevelSet kFlag({{1, 0}, {1, 1}, {0, 1}});
const LevelSet kSpinor({{2, 0}, {1, 1}, {0, 2}});

}  // namespace

int main() {
  criterion(1, "Wick rewriting system is a Groebner basis (n=2,3,4)", [] {
    for (int n = 2; n <= 4; ++n)
      if (!verify_groebner(n).passed()) return false;
    return true;
  });

  criterion(2, "matrix entries equal the dense Kronecker oracle", [] {
    for (int n = 1; n <= 4; ++n) {
      // all words of length <= 4 over the 2n letters
      int letters = 2 * n;
      for (int len = 1; len <= 4; ++len) {
        std::vector<int> idx(len, 0);
        for (;;) {
          OperatorWord w;
          for (int i = 0; i < len; ++i)
            w.letters.push_back({idx[i] % 2 == 1, 1 + idx[i] / 2});
          if (!word_matches_oracle(w, n)) return false;
          int k = len - 1;
          while (k >= 0 && ++idx[k] == letters) idx[k--] = 0;
          if (k < 0) break;
        }
      }
    }
    for (int i = 0; i < 500; ++i) {
      int n = 1 + int(mix64(4242, i) % 5);
      int len = 1 + int(mix64(2424, i) % 8);
      if (!word_matches_oracle(random_word(n, len, mix64(7, i)), n))
        return false;
    }
    return true;
  });

  criterion(3, "anti-commutator relations as exact matrix identities (n<=6)",
            [] {
              for (int n = 1; n <= 6; ++n) {
                std::size_t dim = std::size_t(1) << n;
                for (int p = 1; p <= n; ++p)
                  for (int q = 1; q <= n; ++q)
                    for (int fam = 0; fam < 3; ++fam) {
                      OperatorLetter A{fam == 1, p}, B{fam != 0, q};
                      DenseInt ab = dense_mul(dense_letter(A, n),
                                              dense_letter(B, n));
                      DenseInt ba = dense_mul(dense_letter(B, n),
                                              dense_letter(A, n));
                      bool mixed_delta = (fam == 2 && p == q);
                      for (std::size_t r = 0; r < dim; ++r)
                        for (std::size_t c = 0; c < dim; ++c) {
                          long long want = (mixed_delta && r == c) ? 1 : 0;
                          if (ab[r][c] + ba[r][c] != want) return false;
                        }
                    }
              }
              return true;
            });

  criterion(4, "master polynomials: counts 1,4,31,379; displays for d=2,3",
            [] {
              const std::size_t expected[] = {1, 4, 31, 379};
              for (int d = 1; d <= 4; ++d)
                if (master_polynomial(d).term_count() != expected[d - 1])
                  return false;
              if (!(master_polynomial(2) ==
                    t("1,2", "0") * t("0", "3,4") - t("1", "4") * t("2", "3") +
                        t("1", "3") * t("2", "4") + t("1,2", "3,4")))
                return false;
              P m3 =
                  t("2,3", "0") * t("0", "5,6") * t("1", "4") -
                  t("2,3", "0") * t("0", "4,6") * t("1", "5") +
                  t("2,3", "0") * t("0", "4,5") * t("1", "6") -
                  t("1,3", "0") * t("0", "5,6") * t("2", "4") +
                  t("1,3", "0") * t("0", "4,6") * t("2", "5") -
                  t("1,3", "0") * t("0", "4,5") * t("2", "6") +
                  t("1,2", "0") * t("0", "5,6") * t("3", "4") -
                  t("1", "6") * t("2", "5") * t("3", "4") +
                  t("1", "5") * t("2", "6") * t("3", "4") -
                  t("1,2", "0") * t("0", "4,6") * t("3", "5") +
                  t("1", "6") * t("2", "4") * t("3", "5") -
                  t("1", "4") * t("2", "6") * t("3", "5") +
                  t("1,2", "0") * t("0", "4,5") * t("3", "6") -
                  t("1", "5") * t("2", "4") * t("3", "6") +
                  t("1", "4") * t("2", "5") * t("3", "6") +
                  t("0", "5,6") * t("1,2,3", "4") -
                  t("0", "4,6") * t("1,2,3", "5") +
                  t("0", "4,5") * t("1,2,3", "6") +
                  t("2,3", "0") * t("1", "4,5,6") -
                  t("1,3", "0") * t("2", "4,5,6") +
                  t("1,2", "0") * t("3", "4,5,6") +
                  t("3", "6") * t("1,2", "4,5") - t("3", "5") * t("1,2", "4,6") +
                  t("3", "4") * t("1,2", "5,6") - t("2", "6") * t("1,3", "4,5") +
                  t("2", "5") * t("1,3", "4,6") - t("2", "4") * t("1,3", "5,6") +
                  t("1", "6") * t("2,3", "4,5") - t("1", "5") * t("2,3", "4,6") +
                  t("1", "4") * t("2,3", "5,6") + t("1,2,3", "4,5,6");
              return master_polynomial(3) == m3;  // term-for-term equality
            });

  criterion(5, "printed d=2,n=4 cluster matrix and coordinate column", [] {
    const int d = 2, n = 4;
    std::vector<P> expected = {
        t("1,2", "0"),
        P() - t("2", "0"),
        t("1", "0"),
        P::constant(Rational(1)),
        t("0", "3") * t("1,2", "0") - t("2", "0") * t("1", "3") +
            t("1", "0") * t("2", "3") + t("1,2", "3"),
        t("2", "3"),
        P() - t("1", "3"),
        t("0", "3"),
        t("0", "4") * t("1,2", "0") - t("2", "0") * t("1", "4") +
            t("1", "0") * t("2", "4") + t("1,2", "4"),
        t("2", "4"),
        P() - t("1", "4"),
        t("0", "4"),
        t("1,2", "0") * t("0", "3,4") - t("1", "4") * t("2", "3") +
            t("1", "3") * t("2", "4") + t("1,2", "3,4"),
        P() - t("2", "0") * t("0", "3,4") + t("0", "4") * t("2", "3") -
            t("0", "3") * t("2", "4") - t("2", "3,4"),
        t("1", "0") * t("0", "3,4") - t("0", "4") * t("1", "3") +
            t("0", "3") * t("1", "4") + t("1", "3,4"),
        t("0", "3,4"),
    };
    auto map = forward_map(d, n, full_grid(d, n));
    if (map.entries.size() != 16) return false;
    for (std::size_t r = 0; r < 16; ++r)
      if (!(map.entries[r] == expected[r])) return false;
    // every nonzero entry of the cluster matrix is a signed amplitude, and
    // the matrix exponential of it reproduces the column numerically
    auto cm = cluster_matrix(d, n, full_grid(d, n));
    for (const auto& [rc, p] : cm)
      if (p.term_count() != 1) return false;
    auto vals = random_amplitudes(d, n, full_grid(d, n), 31337);
    auto numeric = numeric_forward(vals, d, n, full_grid(d, n));
    for (std::size_t r = 0; r < 16; ++r) {
      Complex sym = map.entries[r].evaluate(vals);
      if (std::abs(sym - numeric[r]) > 1e-10 * (1.0 + std::abs(sym)))
        return false;
    }
    return true;
  });

  criterion(6, "round trip: inverse of the forward map is the identity", [] {
    for (auto [d, n] : std::vector<std::pair<int, int>>{
             {1, 2}, {2, 4}, {2, 5}, {3, 6}}) {
      auto map = forward_map(d, n, full_grid(d, n));
      std::map<VariableId, P> repl;
      auto ref = OrbitalIndexSet::range(d, n);
      for (auto J : revlex_order(n))
        repl[VariableId::c(ref.bits() & ~J.bits(), J.bits() & ~ref.bits())] =
            map.entries[J.revlex_rank()];
      for (auto J : revlex_order(n)) {
        auto lvl = level_of(J, d);
        auto x = inverse_coordinate(J, d, n).substitute(repl);
        if (lvl.first + lvl.second == 0) {
          if (!(x == P::constant(Rational(1)))) return false;
        } else if (!(x == P::variable(VariableId::t(
                         ref.bits() & ~J.bits(), J.bits() & ~ref.bits())))) {
          return false;
        }
      }
    }
    // numeric round trip on 100 random points
    int d = 2, n = 5;
    auto g = full_grid(d, n);
    auto ref = OrbitalIndexSet::range(d, n);
    for (int trial = 0; trial < 100; ++trial) {
      auto vals = random_amplitudes(d, n, g, 900 + std::uint64_t(trial));
      auto psi = numeric_forward(vals, d, n, g);
      std::map<VariableId, Complex> cpoint;
      for (auto J : revlex_order(n))
        cpoint[VariableId::c(ref.bits() & ~J.bits(),
                             J.bits() & ~ref.bits())] = psi[J.revlex_rank()];
      for (auto& [v, tv] : vals) {
        auto J = OrbitalIndexSet((ref.bits() & ~v.a) | v.b, n);
        Complex back = inverse_coordinate(J, d, n).evaluate(cpoint);
        if (std::abs(back - tv) > 1e-10 * (1.0 + std::abs(tv))) return false;
      }
    }
    return true;
  });

  criterion(7, "censuses: (2,4) -> 254/119/74; (3,6) -> 32766/4790/2186", [] {
    auto c24 = census(2, 4);
    auto c36 = census(3, 6);
    return c24.total == 254 && c24.linear == 119 && c24.hypothesis == 74 &&
           c36.total == 32766 && c36.linear == 4790 && c36.hypothesis == 2186;
  });

  criterion(8, "flag minors and spinor sub-Pfaffians reproduce coordinates",
            [] {
              for (int trial = 0; trial < 100; ++trial) {
                auto fv = random_amplitudes(2, 4, kFlag,
                                            5000 + std::uint64_t(trial));
                auto fr = flag_parameterization(fv, 2, 4);
                if (!fr.ok || fr.max_deviation > 1e-12) return false;
                auto sv = random_amplitudes(2, 4, kSpinor,
                                            6000 + std::uint64_t(trial));
                auto sr = spinor_parameterization(sv, 2, 4);
                if (!sr.ok || sr.max_deviation > 1e-12) return false;
              }
              return true;
            });

  long long deg_flag24 = -1, deg_spin4 = -1, deg_spin5 = -1;
  criterion(9, "variety degrees: flag (2,4)=12, spinor n=4 -> 2, n=5 -> 12",
            [&] {
              TrackerConfig cfg;
              deg_flag24 = variety_degree(kFlag, 2, 4, 8, cfg);
              deg_spin4 = variety_degree(kSpinor, 2, 4, 8, cfg);
              deg_spin5 = variety_degree(kSpinor, 2, 5, 8, cfg);
              return deg_flag24 == 12 && deg_spin4 == 2 && deg_spin5 == 12 &&
                     variety_degree(kFlag, 2, 4, 9, cfg) == 12 &&
                     variety_degree(kSpinor, 2, 4, 9, cfg) == 2 &&
                     variety_degree(kSpinor, 2, 5, 9, cfg) == 12;
            });

  CCDegreeReport rep_spin4, rep_flag24, rep_spin5;
  criterion(10,
            "cc degrees over 3 seeds: spinor n=4 -> 13 (both methods), "
            "flag (2,4) -> 74, spinor n=5 -> 98",
            [&] {
              TrackerConfig cfg;
              std::vector<std::uint64_t> seeds{8, 9, 10};
              rep_spin4 = cc_degree(2, 4, kSpinor, cfg, seeds);
              if (!rep_spin4.consensus || rep_spin4.ccdeg != 13) return false;
              // cross-method agreement for the spinor n=4 system
              auto h = random_hamiltonian(4, 8);
              auto sys = assemble_cc_system(h, 2, 4, kSpinor);
              auto st = monodromy_seed(2, 4, kSpinor, 8);
              auto ssys = assemble_cc_system(st.h, 2, 4, kSpinor);
              std::vector<Complex> sp{st.lambda};
              for (Complex v : st.t) sp.push_back(v);
              auto mset = monodromy_solve(sys.compiled, sys.param_values,
                                          ssys.param_values, sp, cfg, 8);
              if (mset.finite != 13) return false;
              rep_flag24 = cc_degree(2, 4, kFlag, cfg, seeds);
              if (!rep_flag24.consensus || rep_flag24.ccdeg != 74) return false;
              rep_spin5 = cc_degree(2, 5, kSpinor, cfg, seeds);
              return rep_spin5.consensus && rep_spin5.ccdeg == 98;
            });

  criterion(11, "20 random linear level sets: ccdeg = dim+1, all real", [] {
    TrackerConfig cfg;
    int checked = 0;
    std::uint64_t counter = 0;
    std::vector<std::pair<int, int>> cases{{2, 4}, {2, 5}, {3, 6}};
    while (checked < 20) {
      auto [d, n] = cases[checked % cases.size()];
      LevelSet fg = full_grid(d, n);
      std::vector<GridPair> grid(fg.pairs().begin(), fg.pairs().end());
      std::uint64_t bits = mix64(1234, counter++) & ((1ull << grid.size()) - 1);
      if (bits == 0 || bits + 1 == (1ull << grid.size())) continue;
      LevelSet sigma;
      for (std::size_t i = 0; i < grid.size(); ++i)
        if (bits >> i & 1) sigma.insert(grid[i]);
      if (!is_linear(sigma, d, n)) continue;
      auto rep = cc_degree(d, n, sigma, cfg, {counter});
      if (rep.ccdeg != dimension(sigma, d, n) + 1) return false;
      if (rep.per_seed_real != rep.per_seed_counts) return false;
      ++checked;
    }
    return true;
  });

  criterion(12, "upper bound ccdeg <= (dim+1) * degree on criterion-10 runs",
            [&] {
              return rep_spin4.ccdeg <= (rep_spin4.dim + 1) * deg_spin4 &&
                     rep_flag24.ccdeg <= (rep_flag24.dim + 1) * deg_flag24 &&
                     rep_spin5.ccdeg <= (rep_spin5.dim + 1) * deg_spin5;
            });

  if (std::getenv("FOCKCC_STRETCH")) {
    criterion(13, "stretch: flag (2,5) -> 713, fsccsd (3,6) -> 1195", [] {
      TrackerConfig cfg;
      auto rep = cc_degree(2, 5, kFlag, cfg, {8, 9, 10});
      if (!rep.consensus || rep.ccdeg != 713) return false;
      LevelSet fsccsd({{1, 0}, {2, 1}, {1, 1}, {2, 2}});
      auto rep2 = cc_degree(3, 6, fsccsd, cfg, {8, 9, 10});
      return rep2.consensus && rep2.ccdeg == 1195;
    });
  } else {
    std::printf(
        "criterion 13: SKIP  stretch cells flag (2,5) and fsccsd (3,6); set "
        "FOCKCC_STRETCH=1 to run\n");
  }

  std::printf("%s\n", failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED");
  return failures == 0 ? 0 : 1;
}
