#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>

#include "mes/qseries.hpp"

using namespace mes;

namespace {

// Direct enumeration of 0 < m_1 < ... < m_d and l_j >= 1 with sum l_j m_j <= N.
RatSeries brute_gtilde(const Index& k, int N) {
  RatSeries r(N);
  const size_t d = k.size();
  std::function<void(size_t, int, int, Rational)> rec = [&](size_t j, int mmin, int used, Rational c) {
    if (j == d) {
      r[used] += c;
      return;
    }
    for (int mj = mmin; used + mj * static_cast<int>(d - j) <= N; ++mj)
      for (int lj = 1; used + lj * mj <= N; ++lj) {
        Rational f = 1;
        for (int e = 0; e < k[j] - 1; ++e) f *= lj;
        f /= Rational(factorial(k[j] - 1));
        rec(j + 1, mj + 1, used + lj * mj, c * f);
      }
  };
  rec(0, 1, 0, Rational(1));
  return r;
}

RatSeries series(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return RatSeries(v);
}

bool same_poly(const XPolyQSeries& a, const XPolyQSeries& b) {
  const RatSeries zero(a.N);
  auto get = [&](const XPolyQSeries& p, const std::vector<int>& e) -> const RatSeries& {
    const RatSeries* s = p.find(e);
    return s ? *s : zero;
  };
  for (const auto& [e, s] : a.terms)
    if (!(s == get(b, e))) return false;
  for (const auto& [e, s] : b.terms)
    if (!(s == get(a, e))) return false;
  return true;
}

XPolyQSeries embed(const XPolyQSeries& p, std::vector<std::vector<Rational>> A) { return linear_subst(p, A); }

}  // namespace

TEST_CASE("gtilde examples") {
  CHECK(gtilde({2}, 3) == series({0, 1, 3, 4}));
  // Positive normalization: c_n counts divisors for k = (1).
  CHECK(gtilde({1}, 2) == series({0, 1, 2}));
  CHECK(gtilde({1, 1}, 5)[2] == 0);
  CHECK_THROWS_AS(gtilde({}, 4), std::invalid_argument);
}

TEST_CASE("gtilde matches brute force") {
  for (int k = 1; k <= 6; ++k)
    for (const auto& idx : indices_of_weight(k)) CHECK(gtilde(idx, 18) == brute_gtilde(idx, 18));
}

TEST_CASE("gtilde_shuffle examples") {
  CHECK(gtilde_shuffle({3, 3}, 30) == gtilde({3, 3}, 30));
  for (int r = 2; r <= 6; ++r)
    for (int s = 1; s <= 5; ++s) CHECK(gtilde_shuffle({r, s}, 25) == gtilde({r, s}, 25));
  CHECK(gtilde_shuffle({1, 1}, 5)[2] == Rational(1, 2));
  for (const auto& idx : indices_of_weight(8))
    if (*std::min_element(idx.begin(), idx.end()) >= 2) CHECK(gtilde_shuffle(idx, 20) == gtilde(idx, 20));
}

TEST_CASE("gtilde_shuffle agrees with the generating series") {
  for (int k = 1; k <= 5; ++k)
    for (const auto& idx : indices_of_weight(k)) CHECK(gtilde_shuffle(idx, 10) == gtilde_shuffle_taylor(idx, 10));
}

TEST_CASE("shuffle relation for gtilde_shuffle") {
  const int N = 40;
  auto gsh_of = [&](const HElem& h) {
    RatSeries r(N);
    for (const auto& [w, c] : h) {
      const Index k = word_index(w);
      r += k.empty() ? RatSeries::constant(N, c) : gtilde_shuffle(k, N) * c;
    }
    return r;
  };
  for (int a = 1; a <= 6; ++a)
    for (int b = 1; a + b <= 7; ++b)
      for (const auto& u : indices_of_weight(a))
        for (const auto& v : indices_of_weight(b)) {
          if (a == b && u > v) continue;
          const RatSeries lhs = gtilde_shuffle(u, N) * gtilde_shuffle(v, N);
          CHECK(lhs == gsh_of(shuffle(index_word(u), index_word(v))));
        }
}

TEST_CASE("h series") {
  const int deg = 4, N = 12;
  CHECK(same_poly(h_series(1, deg, N), H_series({1}, deg, N)));

  const XPolyQSeries h2 = h_series(2, deg, N);
  const XPolyQSeries expect =
      H_series({1, 1}, deg, N) + embed(H_series({2}, deg, N), {{1, 1}}) * XPolyQSeries{2, deg, N, {{{0, 0}, RatSeries::constant(N, Rational(1, 2))}}};
  CHECK(same_poly(h2, expect));

  const XPolyQSeries h1 = h_series(1, deg, N);
  const XPolyQSeries lhs = embed(h1, {{1, 0}}) * embed(h1, {{0, 1}});
  const XPolyQSeries rhs = h2 + embed(h2, {{0, 1}, {1, 0}});
  CHECK(same_poly(lhs, rhs));
}

TEST_CASE("H series stuffle") {
  const int deg = 3, N = 12;
  for (int k1 = 1; k1 <= 2; ++k1)
    for (int k2 = 1; k2 <= 2; ++k2) {
      const XPolyQSeries lhs = embed(H_series({k1}, deg, N), {{1, 0}}) * embed(H_series({k2}, deg, N), {{0, 1}});
      const XPolyQSeries rhs = H_series({k1, k2}, deg, N) + embed(H_series({k2, k1}, deg, N), {{0, 1}, {1, 0}}) +
                               embed(H_series({k1 + k2}, deg, N), {{1, 1}});
      CHECK(same_poly(lhs, rhs));
    }
}

TEST_CASE("eisenstein_tilde") {
  CHECK(eisenstein_tilde(2, 5)[0] == Rational(-1, 24));
  CHECK(eisenstein_tilde(4, 5)[0] == Rational(1, 1440));
  CHECK(eisenstein_tilde(2, 5)[1] == 1);
  CHECK_THROWS_AS(eisenstein_tilde(3, 5), std::invalid_argument);
  CHECK(bernoulli(1) == Rational(-1, 2));
  CHECK(bernoulli(12) == Rational(-691, 2730));
  // E_4^2 = E_8 in any normalization with matching constant terms.
  const RatSeries e4 = eisenstein_tilde(4, 30), e8 = eisenstein_tilde(8, 30);
  const Rational c4 = 1 / (e4[0] * e4[0]), c8 = 1 / e8[0];
  CHECK(e4 * e4 * c4 == e8 * c8);
}

TEST_CASE("discriminant") {
  const int N = 20;
  std::vector<long long> p(N + 1, 0);
  p[1] = 1;
  for (int n = 1; n <= N; ++n)
    for (int t = 0; t < 24; ++t)
      for (int i = N; i >= n; --i) p[static_cast<size_t>(i)] -= p[static_cast<size_t>(i - n)];
  const RatSeries D = discriminant(N);
  for (int n = 0; n <= N; ++n) CHECK(D[n] == Rational(static_cast<long>(p[static_cast<size_t>(n)])));
  CHECK(D[1] == 1);
  CHECK(D[2] == -24);
  CHECK(D[3] == 252);
}

TEST_CASE("series arithmetic") {
  const RatSeries a = gtilde({2}, 20), b = gtilde({1, 3}, 20);
  CHECK((a * b).derivative() == a.derivative() * b + a * b.derivative());
  CHECK(a * b == b * a);
  CHECK_THROWS_AS(a + gtilde({2}, 10), std::invalid_argument);
  CHECK(a.truncated(3) == series({0, 1, 3, 4}));
  const CSeries c = to_complex(a);
  CHECK(max_deviation(c, to_complex(a)) == 0);
}
