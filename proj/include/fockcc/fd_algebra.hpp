#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fockcc/index_set.hpp"
#include "fockcc/rational.hpp"

namespace fockcc {

/// One creation (a_p^dagger) or annihilation (a_p) operator.
struct OperatorLetter {
  bool creation = false;
  int orbital = 1;

  friend bool operator==(OperatorLetter a, OperatorLetter b) {
    return a.creation == b.creation && a.orbital == b.orbital;
  }
};

/// A finite word in the free algebra on the creation/annihilation letters.
/// Words act by composition with the rightmost letter applied first.
struct OperatorWord {
  std::vector<OperatorLetter> letters;

  int max_orbital() const;
  std::string str() const;

  /// Parses e.g. "a3' a1 a2'" (prime marks a dagger).
  static OperatorWord parse(const std::string& text);
};

/// Key of a normal-ordered string a_B^dagger a_I: creations (descending in
/// the written word) then annihilations (ascending). These are exactly the
/// irreducible words of the Wick rewriting system.
struct StdMonomialKey {
  std::uint32_t create_bits = 0;  // bit (b-1) <-> b in B
  std::uint32_t annih_bits = 0;   // bit (i-1) <-> i in I

  friend bool operator<(StdMonomialKey a, StdMonomialKey b) {
    if (a.create_bits != b.create_bits) return a.create_bits < b.create_bits;
    return a.annih_bits < b.annih_bits;
  }
  friend bool operator==(StdMonomialKey a, StdMonomialKey b) {
    return a.create_bits == b.create_bits && a.annih_bits == b.annih_bits;
  }
};

/// A linear combination of standard monomials with exact rational
/// coefficients; the canonical form of any element of the Fermi-Dirac
/// algebra. Zero coefficients are never stored.
class NormalForm {
 public:
  static NormalForm zero() { return {}; }
  static NormalForm one() {
    NormalForm nf;
    nf.terms_[{0, 0}] = Rational(1);
    return nf;
  }

  const std::map<StdMonomialKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  void add(StdMonomialKey key, const Rational& c);

  NormalForm& operator+=(const NormalForm& o);
  NormalForm& operator*=(const Rational& c);
  friend NormalForm operator*(const NormalForm& a, const NormalForm& b);

  /// Right-multiplies by a single letter, rewriting back to normal order.
  void multiply_letter(OperatorLetter letter);

  friend bool operator==(const NormalForm& a, const NormalForm& b) {
    return a.terms_ == b.terms_;
  }

  std::string str() const;

 private:
  std::map<StdMonomialKey, Rational> terms_;
};

/// Wick normal ordering: the unique fixed point of rewriting by the
/// anti-commutator relations (degree-lexicographic order, a_n > ... > a_1 >
/// a_1' > ... > a_n').
NormalForm normal_order(const OperatorWord& word);

/// One defining relation as displayed in the anti-commutator families;
/// terms[0] is the leading term.
struct Relation {
  std::string family;  // "annihilation", "creation" or "mixed"
  std::vector<std::pair<Rational, OperatorWord>> terms;
};

/// The three anti-commutator relation families for orbital count n, with
/// leading terms first.
std::vector<Relation> relation_set(int n);

struct CriticalPairResidue {
  std::string family;
  int i = 0, j = 0, k = 0;
  NormalForm residue;
};

struct GroebnerReport {
  int n = 0;
  int pairs_checked = 0;
  std::vector<std::string> families;  // the four overlap families examined
  std::vector<CriticalPairResidue> nonzero_residues;
  bool passed() const { return nonzero_residues.empty(); }
};

/// Enumerates every critical pair of the relation families, reduces each
/// S-element and reports any nonzero residue. Passing certifies the
/// relations are a Groebner basis for the given n.
GroebnerReport verify_groebner(int n);

inline constexpr int kMaxMatrixOrbitals = 12;

/// Sparse 2^n x 2^n operator matrix, rows/columns indexed by revlex rank.
struct SparseOperatorMatrix {
  int n = 0;
  struct Entry {
    std::uint32_t row, col;
    Rational value;
  };
  std::vector<Entry> entries;  // sorted by (row, col)

  std::size_t dim() const { return std::size_t(1) << n; }
  Rational at(std::uint32_t row, std::uint32_t col) const;
  /// y = M x for dense complex/real vectors, via the triples.
  template <class Vec>
  void apply(const Vec& x, Vec& y) const {
    for (auto& v : y) v = {};
    for (const auto& e : entries) y[e.row] += e.value.to_double() * x[e.col];
  }
};

/// Jordan-Wigner matrix of a single letter: the Kronecker product
/// sigma_z x ... x sigma_z x a(') x I x ... x I, materialized sparsely
/// (exactly one entry per nonzero column).
SparseOperatorMatrix jw_matrix(OperatorLetter letter, int n);

/// Matrix of a whole word (product of the letter matrices in word order).
SparseOperatorMatrix jw_word_matrix(const OperatorWord& word, int n);

/// Entry e_I^dagger Omega e_J computed combinatorially as the signed sum
/// over complete matchings that pair each annihilation with an equal-index
/// creation to its right (sign = parity of the crossing number). This is
/// the constant term of the standard representation of
/// a_{i_m}...a_{i_1} Omega a_{j_1}'...a_{j_l}'.
Rational matrix_entry(const OperatorWord& word, OrbitalIndexSet row_set,
                      OrbitalIndexSet col_set, int n);

}  // namespace fockcc
