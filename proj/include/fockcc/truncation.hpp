#pragma once

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "fockcc/expparam.hpp"
#include "fockcc/levels.hpp"
#include "fockcc/multipoly.hpp"

namespace fockcc {

/// dim V_sigma = sum over (m,l) in sigma of C(d,m) C(n-d,l).
long long dimension(const LevelSet& sigma, int d, int n);

/// The partial order on grid pairs: componentwise <=, allowed only from an
/// even-level source or into an odd-level target.
bool preceq(GridPair p, GridPair q);

/// Closure under addition: p, q in sigma with at least one even level imply
/// p + q outside the grid or in sigma. Equivalent to V_sigma being linear.
bool is_linear(const LevelSet& sigma, int d, int n);

/// Transposed level set plus the coordinate relabeling J -> {n+1-j : j not
/// in J} realizing the hole/particle exchange.
LevelSet particle_hole_dual_levels(const LevelSet& sigma);
OrbitalIndexSet particle_hole_dual_index(OrbitalIndexSet J);

/// True iff no element of sigma splits as a multiset sum of at least 2 and
/// at most d elements of sigma.
bool graph_hypothesis(const LevelSet& sigma, int d, int n);

enum class Family {
  Flag,
  Spinor,
  FixedNDiagonal,
  Ionization,
  ElectronAttachment,
  Generic
};
std::string family_name(Family f);
Family recognize_family(const LevelSet& sigma, int d, int n);

struct TruncationReport {
  int d = 0, n = 0;
  LevelSet sigma;
  long long dim = 0;
  bool linear = false;
  bool hypothesis = false;
  Family family = Family::Generic;
  std::map<int, int> generators_by_degree;
};
TruncationReport analyze(const LevelSet& sigma, int d, int n);

/// Defining equations of the variety on the affine chart psi_{[d]} = 1: the
/// inverse coordinates x_K for every K of excluded level, reduced by the
/// coordinates already known to vanish (processing levels bottom-up). For a
/// linear level set every generator collapses to a single signed psi.
std::vector<SparsePolynomial> chart_ideal_generators(const LevelSet& sigma,
                                                     int d, int n);

struct CensusCounts {
  long long total = 0;
  long long linear = 0;
  long long hypothesis = 0;
};
/// Counts over all nonempty proper subsets of the grid.
CensusCounts census(int d, int n);

/// Row/column layout of the flag family's parameter matrix (rows 0..d,
/// columns 0..n): an identity block bordered by the level-one amplitudes.
struct FlagCheckResult {
  std::vector<std::vector<std::complex<double>>> matrix;
  double max_deviation = 0.0;
  bool ok = false;
};
FlagCheckResult flag_parameterization(
    const std::map<VariableId, std::complex<double>>& tvals, int d, int n);

/// Pfaffian of a complex skew-symmetric matrix (first-row expansion;
/// the 2x2 convention is Pf [[0,a],[-a,0]] = a).
std::complex<double> pfaffian(
    const std::vector<std::vector<std::complex<double>>>& a);

struct SpinorCheckResult {
  std::vector<std::vector<std::complex<double>>> matrix;  // n x n skew
  double max_deviation = 0.0;
  bool ok = false;
};
SpinorCheckResult spinor_parameterization(
    const std::map<VariableId, std::complex<double>>& tvals, int d, int n);

}  // namespace fockcc
