#include "fockcc/fd_algebra.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace fockcc {

namespace {

int popcount_below(std::uint32_t bits, int orbital) {
  // number of set bits for orbitals strictly less than `orbital`
  std::uint32_t mask = orbital <= 1 ? 0u : ((1u << (orbital - 1)) - 1u);
  return std::popcount(bits & mask);
}

}  // namespace

int OperatorWord::max_orbital() const {
  int m = 0;
  for (auto l : letters) m = std::max(m, l.orbital);
  return m;
}

std::string OperatorWord::str() const {
  std::string s;
  for (auto l : letters) {
    if (!s.empty()) s += ' ';
    s += 'a' + std::to_string(l.orbital);
    if (l.creation) s += '\'';
  }
  return s.empty() ? "1" : s;
}

OperatorWord OperatorWord::parse(const std::string& text) {
  OperatorWord w;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    if (tok.size() < 2 || tok[0] != 'a')
      throw std::invalid_argument("bad operator token: " + tok);
    bool creation = tok.back() == '\'';
    std::string digits = tok.substr(1, tok.size() - 1 - (creation ? 1 : 0));
    int orbital = std::stoi(digits);
    if (orbital < 1 || orbital > kMaxOrbitals)
      throw std::out_of_range("orbital out of range in token: " + tok);
    w.letters.push_back({creation, orbital});
  }
  return w;
}

void NormalForm::add(StdMonomialKey key, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(key);
  if (it == terms_.end()) {
    terms_.emplace(key, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

NormalForm& NormalForm::operator+=(const NormalForm& o) {
  for (const auto& [k, c] : o.terms_) add(k, c);
  return *this;
}

NormalForm& NormalForm::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [k, v] : terms_) v *= c;
  return *this;
}

void NormalForm::multiply_letter(OperatorLetter letter) {
  std::map<StdMonomialKey, Rational> next;
  auto emit = [&next](StdMonomialKey key, const Rational& c) {
    if (c.is_zero()) return;
    auto it = next.find(key);
    if (it == next.end())
      next.emplace(key, c);
    else {
      it->second += c;
      if (it->second.is_zero()) next.erase(it);
    }
  };
  const std::uint32_t bit = 1u << (letter.orbital - 1);
  for (const auto& [key, coeff] : terms_) {
    if (!letter.creation) {
      // a_B' a_I a_p: bubble a_p into the ascending annihilation word.
      if (key.annih_bits & bit) continue;  // a_p a_p = 0
      int swaps = std::popcount(key.annih_bits) -
                  popcount_below(key.annih_bits, letter.orbital);
      Rational c = coeff;
      if (swaps % 2) c = -c;
      emit({key.create_bits, key.annih_bits | bit}, c);
    } else {
      // a_I a_p' = (-1)^|I| a_p' a_I + [p in I] (-1)^{#(I after p)} a_{I\p};
      // then a_B' a_p' bubbles into the descending creation word.
      int m = std::popcount(key.annih_bits);
      if (key.annih_bits & bit) {
        int after = m - 1 - popcount_below(key.annih_bits, letter.orbital);
        Rational c = coeff;
        if (after % 2) c = -c;
        emit({key.create_bits, key.annih_bits & ~bit}, c);
      }
      if (!(key.create_bits & bit)) {
        int swaps = m + popcount_below(key.create_bits, letter.orbital);
        Rational c = coeff;
        if (swaps % 2) c = -c;
        emit({key.create_bits | bit, key.annih_bits}, c);
      }
    }
  }
  terms_ = std::move(next);
}

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
  NormalForm out;
  for (const auto& [kb, cb] : b.terms()) {
    NormalForm part = a;
    // multiply by the word of kb: creations descending, then annihilations
    // ascending (the written order of a_B' a_I, applied left to right).
    for (int p = kMaxOrbitals; p >= 1; --p)
      if (kb.create_bits & (1u << (p - 1))) part.multiply_letter({true, p});
    for (int p = 1; p <= kMaxOrbitals; ++p)
      if (kb.annih_bits & (1u << (p - 1))) part.multiply_letter({false, p});
    part *= cb;
    out += part;
  }
  return out;
}

std::string NormalForm::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [k, c] : terms_) {
    std::string term;
    for (int p = kMaxOrbitals; p >= 1; --p)
      if (k.create_bits & (1u << (p - 1)))
        term += (term.empty() ? "" : " ") + ("a" + std::to_string(p)) + "'";
    for (int p = 1; p <= kMaxOrbitals; ++p)
      if (k.annih_bits & (1u << (p - 1)))
        term += (term.empty() ? "" : " ") + ("a" + std::to_string(p));
    Rational abs = c.num() < 0 ? -c : c;
    std::string coeff;
    if (term.empty() || !(abs == Rational(1))) coeff = abs.str();
    if (!coeff.empty() && !term.empty()) coeff += " ";
    std::string signed_term = coeff + term;
    if (s.empty())
      s = (c.num() < 0 ? "-" : "") + signed_term;
    else
      s += (c.num() < 0 ? " - " : " + ") + signed_term;
  }
  return s;
}

NormalForm normal_order(const OperatorWord& word) {
  NormalForm nf = NormalForm::one();
  for (auto l : word.letters) nf.multiply_letter(l);
  return nf;
}

std::vector<Relation> relation_set(int n) {
  std::vector<Relation> out;
  auto word2 = [](OperatorLetter a, OperatorLetter b) {
    OperatorWord w;
    w.letters = {a, b};
    return w;
  };
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j)  // i >= j
      out.push_back({"annihilation",
                     {{Rational(1), word2({false, i}, {false, j})},
                      {Rational(1), word2({false, j}, {false, i})}}});
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)  // i <= j
      out.push_back({"creation",
                     {{Rational(1), word2({true, i}, {true, j})},
                      {Rational(1), word2({true, j}, {true, i})}}});
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      Relation r{"mixed",
                 {{Rational(1), word2({false, i}, {true, j})},
                  {Rational(1), word2({true, j}, {false, i})}}};
      if (i == j) r.terms.push_back({Rational(-1), OperatorWord{}});
      out.push_back(r);
    }
  return out;
}

namespace {

NormalForm reduce_terms(
    const std::vector<std::pair<Rational, OperatorWord>>& poly) {
  NormalForm out;
  for (const auto& [c, w] : poly) {
    NormalForm part = normal_order(w);
    part *= c;
    out += part;
  }
  return out;
}

OperatorWord cat(std::initializer_list<OperatorLetter> ls) {
  OperatorWord w;
  w.letters = ls;
  return w;
}

}  // namespace

GroebnerReport verify_groebner(int n) {
  if (n < 1 || n > 6)
    throw std::out_of_range("verify_groebner: n out of 1..6");
  GroebnerReport report;
  report.n = n;
  report.families = {"(a_i a_j, a_j a_k), i >= j >= k",
                     "(a_i' a_j', a_j' a_k'), i <= j <= k",
                     "(a_i a_j, a_j a_k'), i >= j",
                     "(a_i a_j', a_j' a_k'), j <= k"};
  auto check = [&](const std::string& fam, int i, int j, int k,
                   const std::vector<std::pair<Rational, OperatorWord>>& s) {
    ++report.pairs_checked;
    NormalForm res = reduce_terms(s);
    if (!res.is_zero()) report.nonzero_residues.push_back({fam, i, j, k, res});
  };
  const Rational one(1), minus(-1);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j)
      for (int k = 1; k <= j; ++k) {
        // (a_i a_j + a_j a_i) a_k - a_i (a_j a_k + a_k a_j)
        check(report.families[0], i, j, k,
              {{one, cat({{false, i}, {false, j}, {false, k}})},
               {one, cat({{false, j}, {false, i}, {false, k}})},
               {minus, cat({{false, i}, {false, j}, {false, k}})},
               {minus, cat({{false, i}, {false, k}, {false, j}})}});
      }
  for (int i = 1; i <= n; ++i)
    for (int j = i; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        check(report.families[1], i, j, k,
              {{one, cat({{true, i}, {true, j}, {true, k}})},
               {one, cat({{true, j}, {true, i}, {true, k}})},
               {minus, cat({{true, i}, {true, j}, {true, k}})},
               {minus, cat({{true, i}, {true, k}, {true, j}})}});
      }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= i; ++j)
      for (int k = 1; k <= n; ++k) {
        // (a_i a_j + a_j a_i) a_k' - a_i (a_j a_k' + a_k' a_j - d_jk)
        std::vector<std::pair<Rational, OperatorWord>> s = {
            {one, cat({{false, i}, {false, j}, {true, k}})},
            {one, cat({{false, j}, {false, i}, {true, k}})},
            {minus, cat({{false, i}, {false, j}, {true, k}})},
            {minus, cat({{false, i}, {true, k}, {false, j}})}};
        if (j == k) s.push_back({one, cat({{false, i}})});
        check(report.families[2], i, j, k, s);
      }
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      for (int k = j; k <= n; ++k) {
        // (a_i a_j' + a_j' a_i - d_ij) a_k' - a_i (a_j' a_k' + a_k' a_j')
        std::vector<std::pair<Rational, OperatorWord>> s = {
            {one, cat({{false, i}, {true, j}, {true, k}})},
            {one, cat({{true, j}, {false, i}, {true, k}})},
            {minus, cat({{false, i}, {true, j}, {true, k}})},
            {minus, cat({{false, i}, {true, k}, {true, j}})}};
        if (i == j) s.push_back({minus, cat({{true, k}})});
        check(report.families[3], i, j, k, s);
      }
  return report;
}

Rational SparseOperatorMatrix::at(std::uint32_t row, std::uint32_t col) const {
  for (const auto& e : entries)
    if (e.row == row && e.col == col) return e.value;
  return Rational(0);
}

SparseOperatorMatrix jw_matrix(OperatorLetter letter, int n) {
  if (n < 1 || n > kMaxMatrixOrbitals)
    throw std::out_of_range("jw_matrix: n out of 1..12");
  if (letter.orbital > n) throw std::out_of_range("jw_matrix: orbital > n");
  SparseOperatorMatrix m;
  m.n = n;
  const std::uint32_t bit = 1u << (letter.orbital - 1);
  for (std::uint32_t col = 0; col < (1u << n); ++col) {
    bool occupied = (col & bit) != 0;
    if (letter.creation == occupied) continue;
    int sign = popcount_below(col, letter.orbital) % 2 ? -1 : 1;
    m.entries.push_back({col ^ bit, col, Rational(sign)});
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.row, a.col) < std::tie(b.row, b.col);
            });
  return m;
}

SparseOperatorMatrix jw_word_matrix(const OperatorWord& word, int n) {
  if (n < 1 || n > kMaxMatrixOrbitals)
    throw std::out_of_range("jw_word_matrix: n out of 1..12");
  // Apply letters right-to-left to each basis column; every letter maps a
  // basis state to +-1 times a basis state, so each column stays a single
  // signed unit vector (or dies).
  SparseOperatorMatrix m;
  m.n = n;
  for (std::uint32_t col = 0; col < (1u << n); ++col) {
    std::uint32_t state = col;
    int sign = 1;
    bool alive = true;
    for (auto it = word.letters.rbegin(); it != word.letters.rend(); ++it) {
      if (it->orbital > n) throw std::out_of_range("jw_word_matrix: orbital > n");
      const std::uint32_t bit = 1u << (it->orbital - 1);
      bool occupied = (state & bit) != 0;
      if (it->creation == occupied) {
        alive = false;
        break;
      }
      if (popcount_below(state, it->orbital) % 2) sign = -sign;
      state ^= bit;
    }
    if (alive) m.entries.push_back({state, col, Rational(sign)});
  }
  std::sort(m.entries.begin(), m.entries.end(),
            [](const auto& a, const auto& b) {
              return std::tie(a.row, a.col) < std::tie(b.row, b.col);
            });
  return m;
}

namespace {

struct MatchState {
  const std::vector<OperatorLetter>* letters;
  std::vector<int> partner;  // partner position or -1
  long long signed_count = 0;

  void search(int pos) {
    const auto& ls = *letters;
    int first = -1;
    for (int s = pos; s < int(ls.size()); ++s)
      if (partner[s] < 0) {
        first = s;
        break;
      }
    if (first < 0) {
      // complete matching: count crossings
      int crossings = 0;
      for (int s1 = 0; s1 < int(ls.size()); ++s1) {
        if (ls[s1].creation) continue;
        for (int s2 = s1 + 1; s2 < int(ls.size()); ++s2) {
          if (ls[s2].creation) continue;
          // pairs (s1, t1), (s2, t2): crossing iff s1 < s2 < t1 < t2
          if (s2 < partner[s1] && partner[s1] < partner[s2]) ++crossings;
        }
      }
      signed_count += crossings % 2 ? -1 : 1;
      return;
    }
    if (ls[first].creation) return;  // unmatched creation can pair only leftward
    for (int t = first + 1; t < int(ls.size()); ++t) {
      if (partner[t] >= 0 || !ls[t].creation) continue;
      if (ls[t].orbital != ls[first].orbital) continue;
      partner[first] = t;
      partner[t] = first;
      search(first + 1);
      partner[first] = -1;
      partner[t] = -1;
    }
  }
};

}  // namespace

Rational matrix_entry(const OperatorWord& word, OrbitalIndexSet row_set,
                      OrbitalIndexSet col_set, int n) {
  std::vector<OperatorLetter> letters;
  auto row = row_set.elements();
  for (auto it = row.rbegin(); it != row.rend(); ++it)
    letters.push_back({false, *it});
  letters.insert(letters.end(), word.letters.begin(), word.letters.end());
  for (int j : col_set.elements()) letters.push_back({true, j});
  if (letters.size() % 2 != 0) return Rational(0);
  int annih = 0;
  for (auto l : letters)
    if (!l.creation) ++annih;
  if (annih * 2 != int(letters.size())) return Rational(0);
  (void)n;
  MatchState st;
  st.letters = &letters;
  st.partner.assign(letters.size(), -1);
  st.search(0);
  return Rational(st.signed_count);
}

}  // namespace fockcc
