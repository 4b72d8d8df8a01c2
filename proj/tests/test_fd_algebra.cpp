#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "fockcc/fd_algebra.hpp"

using namespace fockcc;

namespace {

// Dense matrix of a normal form, built purely from single-letter matrices
// multiplied the slow way — an oracle independent of the Wick rewriting.
std::vector<std::vector<Rational>> dense_of_word(const OperatorWord& w, int n) {
  std::size_t dim = std::size_t(1) << n;
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = Rational(1);
  for (auto l : w.letters) {
    auto lm = jw_matrix(l, n);
    std::vector<std::vector<Rational>> next(dim, std::vector<Rational>(dim));
    for (const auto& e : lm.entries)
      for (std::size_t j = 0; j < dim; ++j)
        next[j][e.col] += m[j][e.row] * e.value;  // next = m * lm
    m = std::move(next);
  }
  return m;
}

std::vector<std::vector<Rational>> dense_of_normal_form(const NormalForm& nf,
                                                        int n) {
  std::size_t dim = std::size_t(1) << n;
  std::vector<std::vector<Rational>> m(dim, std::vector<Rational>(dim));
  for (const auto& [key, coeff] : nf.terms()) {
    OperatorWord w;
    for (int p = kMaxOrbitals; p >= 1; --p)
      if (key.create_bits & (1u << (p - 1))) w.letters.push_back({true, p});
    for (int p = 1; p <= kMaxOrbitals; ++p)
      if (key.annih_bits & (1u << (p - 1))) w.letters.push_back({false, p});
    auto wm = dense_of_word(w, n);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) m[i][j] += coeff * wm[i][j];
  }
  return m;
}

OperatorWord random_word(std::mt19937& rng, int n, int len) {
  OperatorWord w;
  std::uniform_int_distribution<int> orb(1, n), bit(0, 1);
  for (int i = 0; i < len; ++i) w.letters.push_back({bit(rng) == 1, orb(rng)});
  return w;
}

}  // namespace

TEST_CASE("word parse/str round trip") {
  auto w = OperatorWord::parse("a3' a1 a2'");
  REQUIRE(w.letters.size() == 3);
  CHECK(w.letters[0] == OperatorLetter{true, 3});
  CHECK(w.letters[1] == OperatorLetter{false, 1});
  CHECK(w.letters[2] == OperatorLetter{true, 2});
  CHECK(w.str() == "a3' a1 a2'");
  CHECK(w.max_orbital() == 3);
  CHECK(OperatorWord{}.str() == "1");
  CHECK_THROWS(OperatorWord::parse("b2"));
}

TEST_CASE("anti-commutators reduce as expected") {
  auto nf = [](const char* s) { return normal_order(OperatorWord::parse(s)); };
  // a_p a_q + a_q a_p = 0
  NormalForm z = nf("a2 a3");
  z += nf("a3 a2");
  CHECK(z.is_zero());
  // a_p' a_q' + a_q' a_p' = 0
  z = nf("a1' a4'");
  z += nf("a4' a1'");
  CHECK(z.is_zero());
  // a_p a_q' + a_q' a_p = delta_pq
  z = nf("a2 a3'");
  z += nf("a3' a2");
  CHECK(z.is_zero());
  z = nf("a2 a2'");
  z += nf("a2' a2");
  CHECK(z == NormalForm::one());
  // squares vanish
  CHECK(nf("a1 a1").is_zero());
  CHECK(nf("a3' a3'").is_zero());
}

TEST_CASE("normal order of sample words") {
  auto nf = [](const char* s) { return normal_order(OperatorWord::parse(s)); };
  CHECK(nf("a1 a2'").str() == "-a2' a1");
  CHECK(nf("a1 a1'").str() == "1 - a1' a1");
  CHECK(nf("a2 a1").str() == "-a1 a2");
  CHECK(nf("a1' a2'").str() == "-a2' a1'");
  // number operator squared: (a1' a1)^2 = a1' a1
  auto num = nf("a1' a1");
  CHECK(num * num == num);
}

TEST_CASE("normal order agrees with the matrix representation") {
  std::mt19937 rng(7);
  for (int n : {3, 4}) {
    for (int trial = 0; trial < 40; ++trial) {
      auto w = random_word(rng, n, 1 + trial % 7);
      auto lhs = dense_of_word(w, n);
      auto rhs = dense_of_normal_form(normal_order(w), n);
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("normal form product agrees with the matrix representation") {
  std::mt19937 rng(11);
  int n = 4;
  for (int trial = 0; trial < 20; ++trial) {
    auto w1 = random_word(rng, n, 1 + trial % 5);
    auto w2 = random_word(rng, n, 1 + (trial + 2) % 5);
    auto prod = normal_order(w1) * normal_order(w2);
    OperatorWord cat = w1;
    cat.letters.insert(cat.letters.end(), w2.letters.begin(), w2.letters.end());
    CHECK(prod == normal_order(cat));
  }
}

TEST_CASE("relation set sizes") {
  // n(n+1)/2 annihilation + n(n+1)/2 creation + n^2 mixed
  for (int n : {2, 3, 4}) {
    auto rels = relation_set(n);
    CHECK(int(rels.size()) == n * (n + 1) + n * n);
    for (const auto& r : rels) {
      NormalForm sum;
      for (const auto& [c, w] : r.terms) {
        NormalForm part = normal_order(w);
        part *= c;
        sum += part;
      }
      CHECK(sum.is_zero());
    }
  }
}

TEST_CASE("critical pairs all reduce to zero") {
  for (int n = 1; n <= 5; ++n) {
    auto report = verify_groebner(n);
    CHECK(report.passed());
    CHECK(report.nonzero_residues.empty());
    // family sizes: T(n,>=) triples twice + two mixed families of size
    // n * n(n+1)/2 each
    int triples = n * (n + 1) * (n + 2) / 6;
    int mixed = n * n * (n + 1) / 2;
    CHECK(report.pairs_checked == 2 * triples + 2 * mixed);
  }
  CHECK_THROWS(verify_groebner(0));
  CHECK_THROWS(verify_groebner(7));
}

TEST_CASE("single-letter matrices act like ladder operators") {
  int n = 3;
  auto m = jw_matrix({false, 2}, n);  // a_2
  // a_2 e_{2,3} = e_3: nothing occupied below orbital 2, so no sign;
  // e_{2,3} has rank 2+4=6, e_3 rank 4
  CHECK(m.at(4, 6) == Rational(1));
  // a_2 e_{1,2} = -e_1 (orbital 1 occupied below 2)
  CHECK(m.at(1, 3) == Rational(-1));
  CHECK(m.at(0, 1) == Rational(0));  // a_2 e_1 has no overlap with e_0
  auto c = jw_matrix({true, 2}, n);  // a_2'
  CHECK(c.at(6, 4) == Rational(1));
  CHECK(c.at(3, 1) == Rational(-1));
  // creation annihilates an occupied state
  CHECK(c.at(7, 6) == Rational(0));
}

TEST_CASE("word matrix equals the product of letter matrices") {
  std::mt19937 rng(23);
  int n = 4;
  for (int trial = 0; trial < 30; ++trial) {
    auto w = random_word(rng, n, 1 + trial % 6);
    auto direct = jw_word_matrix(w, n);
    auto dense = dense_of_word(w, n);
    std::size_t dim = std::size_t(1) << n;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        CHECK(direct.at(std::uint32_t(i), std::uint32_t(j)) == dense[i][j]);
  }
}

TEST_CASE("matching-rule entries match the matrix representation") {
  std::mt19937 rng(31);
  int n = 4;
  auto order = revlex_order(n);
  for (int trial = 0; trial < 12; ++trial) {
    auto w = random_word(rng, n, trial % 5);
    auto dense = jw_word_matrix(w, n);
    for (auto row : order)
      for (auto col : order)
        CHECK(matrix_entry(w, row, col, n) ==
              dense.at(row.revlex_rank(), col.revlex_rank()));
  }
}
