#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mes/ihara.hpp"
#include "mes/mzv.hpp"

using namespace mes;

namespace {

using RS = NCSeries<Rational>;

RS one(int W) { return RS::one(W, Rational(0)); }
RS letter(int W, const Word& w, const Rational& c = 1) { return RS::monomial(W, Rational(0), w, c); }
RS exp_of(const RS& L) { return nc_exp(L); }

bool equal(const RS& a, const RS& b) { return (a - b).terms().empty(); }

// Naive <A o B | w> by expanding B(X0, A X1 A^{-1}) A with A^{-1} taken as the
// concatenation inverse sum_n (1 - A)^n.
RS concat_inverse(const RS& A) {
  const RS D = one(A.trunc()) - A;
  RS r = one(A.trunc()), p = one(A.trunc());
  for (int n = 1; n <= A.trunc(); ++n) {
    p = p * D;
    r += p;
  }
  return r;
}

RS naive_compose(const RS& A, const RS& B) {
  const int W = A.trunc();
  const RS Y = A * letter(W, "1") * concat_inverse(A);
  RS sub(W, Rational(0));
  for (const auto& [w, c] : B.terms()) {
    RS m = one(W);
    for (char ch : w) m = m * (ch == '0' ? letter(W, "0") : Y);
    sub += m.scaled(c);
  }
  return sub * A;
}

// Shifts <A|e0> to zero while keeping A group-like.
RS kill_e0(const RS& A) { return exp_of(letter(A.trunc(), "0", -A.get("0"))) * A; }

}  // namespace

TEST_CASE("pair examples") {
  CHECK(pair(one(3), word_elem("")) == 1);
  CHECK(pair(exp_of(letter(4, "0")), word_elem("00")) == Rational(1, 2));
  CHECK(pair(exp_of(letter(4, "0") + letter(4, "1")), word_elem("01")) == Rational(1, 2));
  CHECK_THROWS_AS(pair(one(2), word_elem("010")), std::invalid_argument);
}

TEST_CASE("group-like test") {
  CHECK(is_grouplike(exp_of(letter(6, "0") + letter(6, "1"))));
  CHECK_FALSE(is_grouplike(one(4) + letter(4, "01")));
  CHECK(is_grouplike(exp_of(letter(6, "0")) * exp_of(letter(6, "1"))));
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) CHECK(is_grouplike(random_grouplike(5, rng)));
}

TEST_CASE("antipode") {
  CHECK(equal(antipode(one(5)), one(5)));
  CHECK(equal(antipode(exp_of(letter(6, "0"))), exp_of(letter(6, "0", -1))));
  const RS E1 = exp_of(letter(6, "1"));
  CHECK(equal(antipode(E1) * E1, one(6)));
  CHECK_THROWS_AS(antipode(one(4) + letter(4, "01")), std::invalid_argument);
  std::mt19937_64 rng(4);
  for (int t = 0; t < 5; ++t) {
    const RS S = random_grouplike(5, rng);
    CHECK(equal(antipode(S) * S, one(5)));
    CHECK(equal(S * antipode(S), one(5)));
    for (int n = 0; n <= 5; ++n)
      for (const auto& w : words_of_length(n)) CHECK(antipode(S).get(w) == pair(S, eps_map(word_elem(w))));
  }
}

TEST_CASE("ihara compose examples") {
  std::mt19937_64 rng(8);
  const RS A = random_grouplike(5, rng);
  CHECK(equal(ihara_compose(A, one(5)), A));
  CHECK(equal(ihara_compose(one(5), A), A));
  const RS E0 = exp_of(letter(5, "0")), E1 = exp_of(letter(5, "1"));
  CHECK(equal(ihara_compose(E1, E0), E0 * E1));
  CHECK_THROWS_AS(ihara_compose(one(4), one(5)), std::invalid_argument);
}

TEST_CASE("ihara compose matches naive expansion") {
  std::mt19937_64 rng(9);
  for (int t = 0; t < 5; ++t) {
    const RS A = random_grouplike(5, rng), B = random_grouplike(5, rng);
    const RS C = ihara_compose(A, B);
    CHECK(equal(C, naive_compose(A, B)));
    CHECK(is_grouplike(C));
  }
}

TEST_CASE("group axioms to truncation 5") {
  std::mt19937_64 rng(10);
  for (int t = 0; t < 4; ++t) {
    const RS A = random_grouplike(5, rng), B = random_grouplike(5, rng), C = random_grouplike(5, rng);
    CHECK(equal(ihara_compose(ihara_compose(A, B), C), ihara_compose(A, ihara_compose(B, C))));
    const RS X = ihara_inverse(A);
    CHECK(is_grouplike(X));
    CHECK(equal(ihara_compose(A, X), one(5)));
    CHECK(equal(ihara_compose(X, A), one(5)));
  }
  CHECK(equal(ihara_inverse(one(5)), one(5)));
  CHECK(equal(ihara_inverse(exp_of(letter(5, "0"))), exp_of(letter(5, "0", -1))));
}

TEST_CASE("Ihara inverse of the associator") {
  MzvContext ctx(128);
  const auto phi = series_from_h1_map(4, Complex(), [&](const Word& u) {
    return Complex(mzv_shuffle_reg(word_elem(u), ctx));
  });
  const auto inv = ihara_inverse(phi);
  const Complex v = inv.get(index_word({2}));
  CHECK(abs(v + Complex(mzv({2}, ctx))) < pow2(-100));
}

TEST_CASE("Goncharov coproduct versus Ihara action") {
  const RS one5 = one(5);
  for (int n = 1; n <= 5; ++n)
    for (const auto& w : words_of_length(n)) {
      const auto [l, r] = goncharov_vs_ihara(one5, one5, w);
      CHECK(l == 0);
      CHECK(r == 0);
    }
  const auto [l, r] = goncharov_vs_ihara(exp_of(letter(5, "0")), exp_of(letter(5, "1")), "01");
  CHECK(l == r);

  std::mt19937_64 rng(12);
  for (int t = 0; t < 10; ++t) {
    const RS A = random_grouplike(5, rng), B = random_grouplike(5, rng);
    for (int n = 0; n <= 5; ++n)
      for (const auto& w : words_of_length(n)) {
        const auto [x, y] = goncharov_vs_ihara(A, B, w);
        CHECK(x == y);
      }
  }
}

TEST_CASE("reduced coproduct when the e0 coefficients vanish") {
  std::mt19937_64 rng(13);
  for (int t = 0; t < 5; ++t) {
    const RS A = kill_e0(random_grouplike(6, rng)), B = kill_e0(random_grouplike(6, rng));
    REQUIRE(A.get("0") == 0);
    const RS C = ihara_compose(A, B);
    for (int k = 1; k <= 6; ++k)
      for (const auto& idx : indices_of_weight(k)) {
        Rational v = 0;
        for (const auto& [uv, c] : delta_g1(idx)) v += c * A.get(uv.first) * B.get(uv.second);
        CHECK(v == C.get(index_word(idx)));
      }
  }
}
