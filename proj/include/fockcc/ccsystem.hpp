#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "fockcc/expparam.hpp"
#include "fockcc/levels.hpp"
#include "fockcc/multipoly.hpp"
#include "fockcc/truncation.hpp"

namespace fockcc {

/// Dense symmetric Hamiltonian on the 2^n-dimensional state space. Entries
/// may be complex (monodromy seeds need complex symmetric matrices); the
/// random draws are real.
struct Hamiltonian {
  int n = 0;
  std::uint64_t seed = 0;
  Eigen::MatrixXcd mat;
};

/// Symmetric matrix with independent upper-triangle entries uniform on
/// [-1,1], reproducible across platforms from a counter-based generator.
Hamiltonian random_hamiltonian(int n, std::uint64_t seed);

/// Ranks (revlex) of the states J whose level lies in sigma, plus the
/// reference state, ascending.
std::vector<std::uint32_t> projection_ranks(const LevelSet& sigma, int d,
                                            int n);

/// A frozen square system together with the parameter point it was
/// assembled at. For CC systems the parameters are the upper-triangle
/// Hamiltonian entries restricted to the rows/columns that can appear
/// (projection rows x support columns); for slicing systems they are the
/// hyperplane coefficients.
struct AssembledSystem {
  PolynomialSystem symbolic;
  CompiledSystem compiled;
  std::vector<std::complex<double>> param_values;
  std::vector<std::uint32_t> projection;  // CC systems only

  nlohmann::json to_json() const;
};

/// The projected relaxed eigenproblem ((H - lambda I) psi(t))_J = 0 over
/// all J with level in sigma or the reference. Unknowns: lambda, then the
/// amplitudes t_sigma; dimension(sigma) + 1 equations.
AssembledSystem assemble_cc_system(const Hamiltonian& h, int d, int n,
                                   const LevelSet& sigma);

/// dimension(sigma) random affine-linear slices of the parameterization:
/// sum_J gamma_J psi_J(t) = 0 with generic complex gamma (the reference
/// coordinate psi_{[d]} = 1 contributes the constant term). The finite
/// solution count is the degree of the variety.
AssembledSystem assemble_degree_system(const LevelSet& sigma, int d, int n,
                                       std::uint64_t seed);

/// A point on the solution variety of the parameterized CC family: the
/// Hamiltonian together with (lambda, t) satisfying the system to 1e-12.
struct MonodromySeed {
  Hamiltonian h;
  std::complex<double> lambda;
  std::vector<std::complex<double>> t;  // aligned with amplitude_variables
  double residual = 0.0;
};

/// Samples random complex (t*, lambda*), then solves the underdetermined
/// linear constraints (H psi*)_P = lambda* psi*_P for the symmetric H with
/// least-norm correction to a random real symmetric draw.
MonodromySeed monodromy_seed(int d, int n, const LevelSet& sigma,
                             std::uint64_t seed);

/// Principal submatrix of H on the projection rows/columns of sigma; for
/// linear sigma the CC solutions are exactly its eigenpairs.
Eigen::MatrixXcd projected_submatrix(const Hamiltonian& h,
                                     const LevelSet& sigma, int d, int n);

}  // namespace fockcc
