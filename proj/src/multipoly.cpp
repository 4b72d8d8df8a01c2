#include "fockcc/multipoly.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace fockcc {

namespace {

std::string bits_str(std::uint32_t bits) {
  if (bits == 0) return "0";
  std::string s;
  bool wide = bits >= (1u << 9);  // two-digit orbitals need separators
  for (int j = 1; j <= 32; ++j) {
    if (!(bits & (1u << (j - 1)))) continue;
    if (!s.empty() && wide) s += ',';
    s += std::to_string(j);
  }
  return s;
}

}  // namespace

std::string VariableId::str() const {
  switch (tag) {
    case VarTag::T:
      return "t[" + bits_str(a) + "|" + bits_str(b) + "]";
    case VarTag::Psi:
      return "psi[" + bits_str(a) + "]";
    case VarTag::C:
      return "c[" + bits_str(a) + "|" + bits_str(b) + "]";
    case VarTag::Lambda:
      return "lambda";
    case VarTag::Ham:
      return "h[" + std::to_string(a) + "," + std::to_string(b) + "]";
    case VarTag::Gamma:
      return "gamma[" + std::to_string(a) + "]";
    case VarTag::Aux:
      return "aux[" + std::to_string(a) + "," + std::to_string(b) + "]";
  }
  return "?";
}

Monomial Monomial::times(const Monomial& o) const {
  Monomial out;
  out.factors.reserve(factors.size() + o.factors.size());
  auto i = factors.begin(), j = o.factors.begin();
  while (i != factors.end() || j != o.factors.end()) {
    if (j == o.factors.end() || (i != factors.end() && i->first < j->first)) {
      out.factors.push_back(*i++);
    } else if (i == factors.end() || j->first < i->first) {
      out.factors.push_back(*j++);
    } else {
      out.factors.push_back({i->first, i->second + j->second});
      ++i;
      ++j;
    }
  }
  return out;
}

std::string Monomial::str() const {
  if (factors.empty()) return "1";
  std::string s;
  for (auto& [v, e] : factors) {
    if (!s.empty()) s += "*";
    s += v.str();
    if (e != 1) s += "^" + std::to_string(e);
  }
  return s;
}

void SparsePolynomial::add_term(const Monomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

SparsePolynomial& SparsePolynomial::operator+=(const SparsePolynomial& o) {
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator-=(const SparsePolynomial& o) {
  for (auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

SparsePolynomial& SparsePolynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

SparsePolynomial operator*(const SparsePolynomial& a, const SparsePolynomial& b) {
  SparsePolynomial out;
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) out.add_term(ma.times(mb), ca * cb);
  return out;
}

SparsePolynomial SparsePolynomial::differentiate(VariableId v) const {
  SparsePolynomial out;
  for (auto& [m, c] : terms_) {
    for (std::size_t k = 0; k < m.factors.size(); ++k) {
      if (!(m.factors[k].first == v)) continue;
      Monomial dm = m;
      Rational dc = c * Rational(m.factors[k].second);
      if (--dm.factors[k].second == 0)
        dm.factors.erase(dm.factors.begin() + long(k));
      out.add_term(dm, dc);
      break;
    }
  }
  return out;
}

SparsePolynomial SparsePolynomial::substitute(
    const std::map<VariableId, SparsePolynomial>& repl) const {
  SparsePolynomial out;
  for (auto& [m, c] : terms_) {
    SparsePolynomial term = SparsePolynomial::constant(c);
    for (auto& [v, e] : m.factors) {
      auto it = repl.find(v);
      SparsePolynomial base =
          it == repl.end() ? SparsePolynomial::variable(v) : it->second;
      for (int k = 0; k < e; ++k) term = term * base;
    }
    out += term;
  }
  return out;
}

SparsePolynomial SparsePolynomial::drop_variables(
    const std::function<bool(VariableId)>& should_drop) const {
  SparsePolynomial out;
  for (auto& [m, c] : terms_) {
    bool keep = true;
    for (auto& [v, e] : m.factors)
      if (should_drop(v)) {
        keep = false;
        break;
      }
    if (keep) out.add_term(m, c);
  }
  return out;
}

SparsePolynomial SparsePolynomial::rename(
    const std::function<VariableId(VariableId)>& map) const {
  SparsePolynomial out;
  for (auto& [m, c] : terms_) {
    Monomial nm;
    for (auto& [v, e] : m.factors) nm = nm.times(Monomial{{{map(v), e}}});
    out.add_term(nm, c);
  }
  return out;
}

SparsePolynomial SparsePolynomial::homogenize(VariableId h) const {
  int d = degree();
  SparsePolynomial out;
  for (auto& [m, c] : terms_) {
    int pad = d - m.degree();
    Monomial nm = m;
    if (pad > 0) nm = nm.times(Monomial{{{h, pad}}});
    out.add_term(nm, c);
  }
  return out;
}

std::complex<double> SparsePolynomial::evaluate(
    const std::map<VariableId, std::complex<double>>& point) const {
  std::complex<double> total = 0.0;
  for (auto& [m, c] : terms_) {
    std::complex<double> v = c.to_double();
    for (auto& [var, e] : m.factors) {
      auto it = point.find(var);
      if (it == point.end())
        throw std::invalid_argument("evaluate: unbound variable " + var.str());
      for (int k = 0; k < e; ++k) v *= it->second;
    }
    total += v;
  }
  return total;
}

std::vector<VariableId> SparsePolynomial::variables() const {
  std::set<VariableId> seen;
  for (auto& [m, c] : terms_)
    for (auto& [v, e] : m.factors) seen.insert(v);
  return {seen.begin(), seen.end()};
}

std::string SparsePolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto& [m, c] : terms_) {
    Rational abs = c.num() < 0 ? -c : c;
    std::string body;
    if (m.factors.empty())
      body = abs.str();
    else if (abs == Rational(1))
      body = m.str();
    else
      body = abs.str() + "*" + m.str();
    if (s.empty())
      s = (c.num() < 0 ? "-" : "") + body;
    else
      s += (c.num() < 0 ? " - " : " + ") + body;
  }
  return s;
}

nlohmann::json SparsePolynomial::to_json() const {
  nlohmann::json arr = nlohmann::json::array();
  for (auto& [m, c] : terms_) {
    nlohmann::json mono = nlohmann::json::array();
    for (auto& [v, e] : m.factors)
      mono.push_back({{"var", v.str()}, {"exp", e}});
    arr.push_back({{"coef_num", c.num()},
                   {"coef_den", c.den()},
                   {"monomial", std::move(mono)}});
  }
  return arr;
}

CompiledSystem::CompiledSystem(const PolynomialSystem& sys)
    : unknowns_(sys.unknowns), params_(sys.params) {
  std::map<VariableId, int> upos, ppos;
  for (int i = 0; i < int(unknowns_.size()); ++i) upos[unknowns_[i]] = i;
  for (int i = 0; i < int(params_.size()); ++i) ppos[params_[i]] = i;
  for (const auto& poly : sys.polys) {
    std::vector<Term> terms;
    int deg = 0;
    for (auto& [m, c] : poly.terms()) {
      Term t;
      t.coef = c.to_double();
      int tdeg = 0;
      for (auto& [v, e] : m.factors) {
        auto iu = upos.find(v);
        if (iu != upos.end()) {
          t.unknown_pows.push_back({iu->second, e});
          tdeg += e;
          continue;
        }
        auto ip = ppos.find(v);
        if (ip == ppos.end())
          throw std::invalid_argument("CompiledSystem: unbound variable " +
                                      v.str());
        t.param_pows.push_back({ip->second, e});
      }
      deg = std::max(deg, tdeg);
      terms.push_back(std::move(t));
    }
    degrees_.push_back(deg);
    eqs_.push_back(std::move(terms));
  }
}

namespace {

inline std::complex<double> ipow(std::complex<double> b, int e) {
  std::complex<double> r = 1.0;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

void CompiledSystem::eval(const std::vector<Complex>& x,
                          const std::vector<Complex>& p,
                          std::vector<Complex>& out) const {
  out.assign(eqs_.size(), 0.0);
  for (std::size_t i = 0; i < eqs_.size(); ++i) {
    for (const auto& t : eqs_[i]) {
      Complex v = t.coef;
      for (auto [k, e] : t.param_pows) v *= ipow(p[k], e);
      for (auto [k, e] : t.unknown_pows) v *= ipow(x[k], e);
      out[i] += v;
    }
  }
}

void CompiledSystem::eval_with_jacobian(const std::vector<Complex>& x,
                                        const std::vector<Complex>& p,
                                        std::vector<Complex>& out,
                                        std::vector<Complex>& jac) const {
  const std::size_t nu = unknowns_.size();
  out.assign(eqs_.size(), 0.0);
  jac.assign(eqs_.size() * nu, 0.0);
  for (std::size_t i = 0; i < eqs_.size(); ++i) {
    for (const auto& t : eqs_[i]) {
      Complex base = t.coef;
      for (auto [k, e] : t.param_pows) base *= ipow(p[k], e);
      Complex v = base;
      for (auto [k, e] : t.unknown_pows) v *= ipow(x[k], e);
      out[i] += v;
      for (std::size_t d = 0; d < t.unknown_pows.size(); ++d) {
        auto [kd, ed] = t.unknown_pows[d];
        Complex dv = base * double(ed) * ipow(x[kd], ed - 1);
        for (std::size_t o = 0; o < t.unknown_pows.size(); ++o) {
          if (o == d) continue;
          auto [k, e] = t.unknown_pows[o];
          dv *= ipow(x[k], e);
        }
        jac[i * nu + kd] += dv;
      }
    }
  }
}

}  // namespace fockcc
