#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "fockcc/index_set.hpp"
#include "fockcc/rational.hpp"

namespace fockcc {

/// Variable families of the commutative polynomial ring used throughout:
///   T       cluster amplitude t_{I|B}   (a = bits of I in [d], b = bits of B)
///   Psi     wavefunction coordinate psi_J (a = bits of J)
///   C       block variable c_{I|B} of the inverse map
///   Lambda  the eigenvalue unknown
///   Ham     Hamiltonian entry h_{p,r}, p <= r (a = p, b = r)
///   Gamma   random slicing-hyperplane coefficient (a = index)
///   Aux     anything else (homogenizers, scratch)
enum class VarTag : std::uint8_t { T, Psi, C, Lambda, Ham, Gamma, Aux };

struct VariableId {
  VarTag tag = VarTag::Aux;
  std::uint32_t a = 0;
  std::uint32_t b = 0;

  friend bool operator==(const VariableId& x, const VariableId& y) {
    return x.tag == y.tag && x.a == y.a && x.b == y.b;
  }
  friend bool operator<(const VariableId& x, const VariableId& y) {
    if (x.tag != y.tag) return x.tag < y.tag;
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
  }

  std::string str() const;

  static VariableId t(std::uint32_t i_bits, std::uint32_t b_bits) {
    return {VarTag::T, i_bits, b_bits};
  }
  static VariableId psi(std::uint32_t j_bits) { return {VarTag::Psi, j_bits, 0}; }
  static VariableId c(std::uint32_t i_bits, std::uint32_t b_bits) {
    return {VarTag::C, i_bits, b_bits};
  }
  static VariableId lambda() { return {VarTag::Lambda, 0, 0}; }
  static VariableId ham(int p, int r) {
    return {VarTag::Ham, std::uint32_t(p), std::uint32_t(r)};
  }
  static VariableId gamma(std::uint32_t idx) { return {VarTag::Gamma, idx, 0}; }
};

/// A power product, kept sorted by variable; the empty monomial is 1.
struct Monomial {
  std::vector<std::pair<VariableId, int>> factors;

  int degree() const {
    int d = 0;
    for (auto& [v, e] : factors) d += e;
    return d;
  }
  friend bool operator<(const Monomial& x, const Monomial& y) {
    return x.factors < y.factors;
  }
  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.factors == y.factors;
  }

  Monomial times(const Monomial& o) const;
  std::string str() const;
};

/// Sparse multivariate polynomial with exact rational coefficients.
class SparsePolynomial {
 public:
  SparsePolynomial() = default;

  static SparsePolynomial constant(const Rational& c) {
    SparsePolynomial p;
    if (!c.is_zero()) p.terms_[Monomial{}] = c;
    return p;
  }
  static SparsePolynomial variable(VariableId v) {
    SparsePolynomial p;
    p.terms_[Monomial{{{v, 1}}}] = Rational(1);
    return p;
  }
  static SparsePolynomial monomial(Monomial m, const Rational& c) {
    SparsePolynomial p;
    if (!c.is_zero()) p.terms_[std::move(m)] = c;
    return p;
  }

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }
  int degree() const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.degree());
    return d;
  }
  bool is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 && terms_.begin()->first.factors.empty());
  }
  Rational constant_term() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
  }

  void add_term(const Monomial& m, const Rational& c);

  SparsePolynomial& operator+=(const SparsePolynomial& o);
  SparsePolynomial& operator-=(const SparsePolynomial& o);
  SparsePolynomial& operator*=(const Rational& c);
  friend SparsePolynomial operator+(SparsePolynomial a, const SparsePolynomial& b) {
    a += b;
    return a;
  }
  friend SparsePolynomial operator-(SparsePolynomial a, const SparsePolynomial& b) {
    a -= b;
    return a;
  }
  friend SparsePolynomial operator*(const SparsePolynomial& a,
                                    const SparsePolynomial& b);
  friend bool operator==(const SparsePolynomial& a, const SparsePolynomial& b) {
    return a.terms_ == b.terms_;
  }

  SparsePolynomial differentiate(VariableId v) const;

  /// Simultaneous substitution of variables by polynomials; unmentioned
  /// variables stay themselves.
  SparsePolynomial substitute(
      const std::map<VariableId, SparsePolynomial>& repl) const;

  /// Sets every listed variable to zero (a common truncation step, much
  /// cheaper than general substitution).
  SparsePolynomial drop_variables(
      const std::function<bool(VariableId)>& should_drop) const;

  SparsePolynomial rename(
      const std::function<VariableId(VariableId)>& map) const;

  /// Pads every term with powers of h up to the total degree.
  SparsePolynomial homogenize(VariableId h) const;

  std::complex<double> evaluate(
      const std::map<VariableId, std::complex<double>>& point) const;

  std::vector<VariableId> variables() const;

  /// Human form like "t[12|34]*t[1|3] - psi[134]"; "1" for the constant one.
  std::string str() const;
  nlohmann::json to_json() const;

 private:
  std::map<Monomial, Rational> terms_;
};

/// A finite list of polynomials with a declared unknown ordering; variables
/// not listed as unknowns are parameters.
struct PolynomialSystem {
  std::vector<SparsePolynomial> polys;
  std::vector<VariableId> unknowns;
  std::vector<VariableId> params;
};

/// Float-frozen copy of a PolynomialSystem for fast evaluation and exact
/// symbolic Jacobians, indexed by unknown position.
class CompiledSystem {
 public:
  using Complex = std::complex<double>;

  CompiledSystem() = default;
  explicit CompiledSystem(const PolynomialSystem& sys);

  int equation_count() const { return int(eqs_.size()); }
  int unknown_count() const { return int(unknowns_.size()); }
  int param_count() const { return int(params_.size()); }
  const std::vector<VariableId>& unknowns() const { return unknowns_; }
  const std::vector<VariableId>& params() const { return params_; }

  void eval(const std::vector<Complex>& x, const std::vector<Complex>& p,
            std::vector<Complex>& out) const;
  /// jac is row-major equation_count x unknown_count.
  void eval_with_jacobian(const std::vector<Complex>& x,
                          const std::vector<Complex>& p,
                          std::vector<Complex>& out,
                          std::vector<Complex>& jac) const;

  /// Total degree (in the unknowns) of each equation.
  const std::vector<int>& degrees() const { return degrees_; }

 private:
  struct Term {
    Complex coef;
    std::vector<std::pair<int, int>> unknown_pows;  // (unknown index, exponent)
    std::vector<std::pair<int, int>> param_pows;
  };
  std::vector<std::vector<Term>> eqs_;
  std::vector<VariableId> unknowns_, params_;
  std::vector<int> degrees_;
};

}  // namespace fockcc
