#pragma once

#include <complex>
#include <map>
#include <vector>

#include "fockcc/fd_algebra.hpp"
#include "fockcc/levels.hpp"
#include "fockcc/multipoly.hpp"
#include "fockcc/partitions.hpp"

namespace fockcc {

/// Amplitude variable t_{I|B} for the excitation that annihilates I inside
/// the reference [d] and creates B outside it.
inline VariableId t_variable(OrbitalIndexSet I, OrbitalIndexSet B) {
  return VariableId::t(I.bits(), B.bits());
}

/// Level (|I|,|B|) of an amplitude variable.
inline GridPair t_level(VariableId v) {
  return {std::popcount(v.a), std::popcount(v.b)};
}

/// All amplitude variables with level in sigma, in (I,B)-sorted order.
std::vector<VariableId> amplitude_variables(int d, int n, const LevelSet& sigma);

/// The universal polynomial whose relabelings give every wavefunction
/// coordinate: the signed sum over partitions of [2d] into even blocks.
/// Term counts over d = 1..5: 1, 4, 31, 379, 6556.
SparsePolynomial master_polynomial(int d);

/// Coordinate psi_J of exp(T(t)) e_{[d]} as a polynomial in the t-variables,
/// by relabeling the master polynomial along the symmetric difference J^[d]
/// (with a formal sentinel element on the hole side when that set has odd
/// size) and recomputing all signs in the target labels.
SparsePolynomial psi_coordinate(OrbitalIndexSet J, int d, int n);

/// The full coordinate column of the parameterization, truncated to sigma.
struct ParamMap {
  int d = 0, n = 0;
  LevelSet sigma;
  std::vector<SparsePolynomial> entries;  // indexed by revlex rank of J
};

ParamMap forward_map(int d, int n, const LevelSet& sigma);

/// Symbolic cluster matrix: (row, col) -> linear polynomial in t.
std::map<std::pair<std::uint32_t, std::uint32_t>, SparsePolynomial>
cluster_matrix(int d, int n, const LevelSet& sigma);

/// The written word of the excitation monomial for t_{I|B}: creations on B
/// first (ascending application order), then annihilations on I.
OperatorWord excitation_word(OrbitalIndexSet I, OrbitalIndexSet B);

/// exp(T(t)) e_{[d]} evaluated by the truncated matrix exponential (finite
/// because the cluster matrix is nilpotent). Missing amplitudes read as 0.
std::vector<std::complex<double>> numeric_forward(
    const std::map<VariableId, std::complex<double>>& tvals, int d, int n,
    const LevelSet& sigma);

/// Moebius-inverted coordinate x_J as a polynomial in block variables
/// c_{I|B}; substituting c := psi recovers the amplitude t_{[d]\J | J\[d]}.
SparsePolynomial inverse_coordinate(OrbitalIndexSet J, int d, int n);

/// Numerically verifies the one-step factorization
///   exp(T(t_tau) + T(t_sigma)) e_[d]
///     = exp(T(t_sigma)) e_[d] + T(t_tau) exp(T(t_sigma)) e_[d]
/// for tau on the first sub-diagonal (ionization levels m = l+1) and sigma
/// on the diagonal, including the supports of the two summands.
bool eom_factorization_check(const LevelSet& tau, const LevelSet& sigma, int d,
                             int n, int trials, std::uint64_t seed);

}  // namespace fockcc
