#include "fockcc/ccsystem.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "fockcc/rng.hpp"

namespace fockcc {

Hamiltonian random_hamiltonian(int n, std::uint64_t seed) {
  if (n < 1 || n > 10)
    throw std::out_of_range("random_hamiltonian: n out of 1..10");
  const std::size_t N = std::size_t(1) << n;
  Hamiltonian h;
  h.n = n;
  h.seed = seed;
  h.mat = Eigen::MatrixXcd::Zero(Eigen::Index(N), Eigen::Index(N));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i; j < N; ++j) {
      double v = unit_real(seed, i, j);
      h.mat(Eigen::Index(i), Eigen::Index(j)) = v;
      h.mat(Eigen::Index(j), Eigen::Index(i)) = v;
    }
  return h;
}

std::vector<std::uint32_t> projection_ranks(const LevelSet& sigma, int d,
                                            int n) {
  std::vector<std::uint32_t> out;
  for (auto J : revlex_order(n)) {
    GridPair lev = level_of(J, d);
    if ((lev.first == 0 && lev.second == 0) || sigma.contains(lev))
      out.push_back(J.revlex_rank());
  }
  return out;
}

nlohmann::json AssembledSystem::to_json() const {
  nlohmann::json j;
  j["unknowns"] = nlohmann::json::array();
  for (auto v : symbolic.unknowns) j["unknowns"].push_back(v.str());
  j["parameters"] = nlohmann::json::array();
  for (std::size_t i = 0; i < symbolic.params.size(); ++i)
    j["parameters"].push_back({{"name", symbolic.params[i].str()},
                               {"re", param_values[i].real()},
                               {"im", param_values[i].imag()}});
  j["equations"] = nlohmann::json::array();
  for (const auto& p : symbolic.polys) j["equations"].push_back(p.to_json());
  j["projection"] = projection;
  return j;
}

AssembledSystem assemble_cc_system(const Hamiltonian& h, int d, int n,
                                   const LevelSet& sigma) {
  ParamMap pm = forward_map(d, n, sigma);
  AssembledSystem out;
  out.projection = projection_ranks(sigma, d, n);

  std::vector<std::uint32_t> support;
  for (std::uint32_t k = 0; k < (1u << n); ++k)
    if (!pm.entries[k].is_zero()) support.push_back(k);

  std::map<VariableId, std::complex<double>> used;
  SparsePolynomial lambda = SparsePolynomial::variable(VariableId::lambda());
  for (std::uint32_t j : out.projection) {
    SparsePolynomial eq;
    for (std::uint32_t k : support) {
      std::uint32_t p = std::min(j, k), r = std::max(j, k);
      VariableId hv = VariableId::ham(int(p), int(r));
      used.emplace(hv, h.mat(Eigen::Index(j), Eigen::Index(k)));
      eq += SparsePolynomial::variable(hv) * pm.entries[k];
    }
    eq -= lambda * pm.entries[j];
    out.symbolic.polys.push_back(std::move(eq));
  }

  out.symbolic.unknowns.push_back(VariableId::lambda());
  for (VariableId v : amplitude_variables(d, n, sigma))
    out.symbolic.unknowns.push_back(v);
  for (auto& [v, val] : used) {
    out.symbolic.params.push_back(v);
    out.param_values.push_back(val);
  }
  out.compiled = CompiledSystem(out.symbolic);
  return out;
}

AssembledSystem assemble_degree_system(const LevelSet& sigma, int d, int n,
                                       std::uint64_t seed) {
  ParamMap pm = forward_map(d, n, sigma);
  AssembledSystem out;
  std::vector<std::uint32_t> support;
  for (std::uint32_t k = 0; k < (1u << n); ++k)
    if (!pm.entries[k].is_zero()) support.push_back(k);

  long long dim = dimension(sigma, d, n);
  for (long long i = 0; i < dim; ++i) {
    SparsePolynomial eq;
    for (std::uint32_t k : support) {
      std::uint32_t idx = std::uint32_t(i) * (1u << n) + k;
      VariableId gv = VariableId::gamma(idx);
      eq += SparsePolynomial::variable(gv) * pm.entries[k];
      out.symbolic.params.push_back(gv);
      out.param_values.push_back(unit_complex(seed, std::uint64_t(i), k));
    }
    out.symbolic.polys.push_back(std::move(eq));
  }
  for (VariableId v : amplitude_variables(d, n, sigma))
    out.symbolic.unknowns.push_back(v);
  out.compiled = CompiledSystem(out.symbolic);
  return out;
}

MonodromySeed monodromy_seed(int d, int n, const LevelSet& sigma,
                             std::uint64_t seed) {
  using C = std::complex<double>;
  auto vars = amplitude_variables(d, n, sigma);
  auto proj = projection_ranks(sigma, d, n);
  const std::size_t N = std::size_t(1) << n;

  for (int attempt = 0; attempt < 8; ++attempt) {
    std::uint64_t s = seed + std::uint64_t(attempt) * 0x9e37u;
    std::map<VariableId, C> tvals;
    std::vector<C> tvec;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      C v = unit_complex(s, 1000 + k);
      tvals[vars[k]] = v;
      tvec.push_back(v);
    }
    C lambda = unit_complex(s, 999);
    std::vector<C> psi = numeric_forward(tvals, d, n, sigma);

    // Unknown Hamiltonian entries: the upper-triangle pairs that meet a
    // constraint row. Everything else keeps the random real draw.
    std::map<std::pair<std::uint32_t, std::uint32_t>, int> col;
    for (std::uint32_t j : proj)
      for (std::uint32_t k = 0; k < N; ++k)
        if (psi[k] != C(0.0))
          col.emplace(std::minmax(j, k), int(col.size()));

    Hamiltonian h = random_hamiltonian(n, s);
    Eigen::MatrixXcd A =
        Eigen::MatrixXcd::Zero(Eigen::Index(proj.size()), Eigen::Index(col.size()));
    Eigen::VectorXcd b(Eigen::Index(proj.size()));
    Eigen::VectorXcd h0(Eigen::Index(col.size()));
    for (auto& [pr, c] : col)
      h0(c) = h.mat(Eigen::Index(pr.first), Eigen::Index(pr.second));
    for (std::size_t r = 0; r < proj.size(); ++r) {
      std::uint32_t j = proj[r];
      b(Eigen::Index(r)) = lambda * psi[j];
      for (std::uint32_t k = 0; k < N; ++k)
        if (psi[k] != C(0.0))
          A(Eigen::Index(r), col.at(std::minmax(j, k))) += psi[k];
    }

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(A);
    if (cod.rank() < Eigen::Index(proj.size())) continue;  // degenerate psi*
    Eigen::VectorXcd delta = cod.solve(b - A * h0);
    for (auto& [pr, c] : col) {
      C v = h0(c) + delta(c);
      h.mat(Eigen::Index(pr.first), Eigen::Index(pr.second)) = v;
      h.mat(Eigen::Index(pr.second), Eigen::Index(pr.first)) = v;
    }

    double res = 0.0;
    for (std::uint32_t j : proj) {
      C acc = -lambda * psi[j];
      for (std::uint32_t k = 0; k < N; ++k)
        acc += h.mat(Eigen::Index(j), Eigen::Index(k)) * psi[k];
      res = std::max(res, std::abs(acc));
    }
    if (res > 1e-12) continue;

    MonodromySeed out;
    out.h = std::move(h);
    out.lambda = lambda;
    out.t = std::move(tvec);
    out.residual = res;
    return out;
  }
  throw std::runtime_error("monodromy_seed: no nondegenerate sample found");
}

Eigen::MatrixXcd projected_submatrix(const Hamiltonian& h,
                                     const LevelSet& sigma, int d, int n) {
  auto proj = projection_ranks(sigma, d, n);
  Eigen::MatrixXcd sub(Eigen::Index(proj.size()), Eigen::Index(proj.size()));
  for (std::size_t i = 0; i < proj.size(); ++i)
    for (std::size_t j = 0; j < proj.size(); ++j)
      sub(Eigen::Index(i), Eigen::Index(j)) =
          h.mat(Eigen::Index(proj[i]), Eigen::Index(proj[j]));
  return sub;
}

}  // namespace fockcc
