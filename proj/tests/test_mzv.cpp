#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mes/mzv.hpp"
#include "test_util.hpp"

using namespace mes;

namespace {

MzvContext& ctx() {
  static MzvContext c(256);
  return c;
}

Real tol() { return pow2(-128); }

Real rel(const Real& a, const Real& b) {
  using boost::multiprecision::abs;
  const Real m = std::max(abs(a), abs(b));
  return m == 0 ? Real(0) : Real(abs(a - b) / m);
}

Real Z(const HElem& h) { return mzv_shuffle_reg(h, ctx()); }

}  // namespace

TEST_CASE("zeta(2) and Euler's identity") {
  const Real pi = ctx().pi();
  CHECK(rel(mzv({2}, ctx()), pi * pi / 6) < pow2(-250));
  CHECK(rel(mzv({1, 2}, ctx()), mzv({3}, ctx())) < pow2(-250));
  CHECK(rel(mzv({4}, ctx()), pi * pi * pi * pi / 90) < pow2(-250));
  CHECK_THROWS_AS(mzv({2, 1}, ctx()), std::invalid_argument);
}

TEST_CASE("direct oracle") {
  CHECK(boost::multiprecision::abs(mzv_direct_oracle({2}, 10) - Real("1.5497677311665406904")) < Real("1e-18"));
  CHECK(mzv_direct_oracle({3}, 1) == 1);
  CHECK(mzv_direct_oracle({2, 2}, 2) == Real("0.25"));
  CHECK(rel(mzv({2, 3}, ctx()), mzv_direct_oracle({2, 3}, 100000)) < Real("1e-8"));
}

TEST_CASE("oracle agreement to weight 7") {
  for (int k = 2; k <= 7; ++k)
    for (const auto& idx : indices_of_weight(k)) {
      if (!is_admissible(idx)) continue;
      const long double o = mzv_oracle_with_tail(idx, 200000);
      const long double v = static_cast<long double>(mzv(idx, ctx()));
      CHECK(std::abs(o - v) / v < 1e-6L);
    }
}

TEST_CASE("split orderings agree") {
  for (int k = 2; k <= 8; ++k)
    for (const auto& idx : indices_of_weight(k))
      if (is_admissible(idx)) CHECK(rel(mzv(idx, ctx()), mzv_dual_path(idx, ctx())) < tol());
}

TEST_CASE("shuffle regularization") {
  CHECK(Z(index_elem({1})) == 0);
  CHECK(Z(word_elem("0")) == 0);
  CHECK(rel(Z(index_elem({2, 3})), mzv({2, 3}, ctx())) < tol());
  CHECK(rel(Z(index_elem({2, 1})), -2 * mzv({1, 2}, ctx())) < tol());
}

TEST_CASE("shuffle and stuffle relations") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 30; ++t) {
    const int a = 1 + static_cast<int>(rng() % 4), b = 1 + static_cast<int>(rng() % 4);
    const Word u = index_word(testutil::random_index(rng, a)), v = index_word(testutil::random_index(rng, b));
    const Real lhs = Z(shuffle(u, v)), rhs = Z(word_elem(u)) * Z(word_elem(v));
    CHECK(boost::multiprecision::abs(lhs - rhs) < tol());
  }
  for (int a = 2; a <= 5; ++a)
    for (int b = 2; a + b <= 8; ++b)
      for (const auto& u : indices_of_weight(a))
        for (const auto& v : indices_of_weight(b)) {
          if (!is_admissible(u) || !is_admissible(v)) continue;
          const Real lhs = Z(stuffle(index_elem(u), index_elem(v)));
          CHECK(boost::multiprecision::abs(lhs - mzv(u, ctx()) * mzv(v, ctx())) < tol());
        }
}

TEST_CASE("symmetric values") {
  for (int k = 2; k <= 9; ++k) {
    const Real s = mzv_sym({k}, ctx());
    if (k % 2) CHECK(boost::multiprecision::abs(s) < tol());
    else CHECK(rel(s, 2 * mzv({k}, ctx())) < tol());
  }
  CHECK(boost::multiprecision::abs(mzv_sym({1, 1}, ctx())) < tol());
  for (const Index& k : {Index{1, 3, 1}, Index{2, 1, 2}, Index{1, 2, 2, 1}, Index{2, 3, 2}})
    if (weight(k) % 2) CHECK(boost::multiprecision::abs(mzv_sym(k, ctx())) < tol());
}

TEST_CASE("symmetric values through the associator") {
  for (int k = 1; k <= 5; ++k)
    for (const auto& idx : indices_of_weight(k))
      CHECK(boost::multiprecision::abs(mzv_sym(idx, ctx()) - mzv_sym_via_phi(idx, ctx())) < tol());
}

TEST_CASE("linear shuffle relation for symmetric values") {
  for (int k = 2; k <= 8; ++k)
    for (const auto& idx : indices_of_weight(k))
      for (size_t j = 1; j < idx.size(); ++j) {
        const Index a(idx.begin(), idx.begin() + static_cast<long>(j)), b(idx.begin() + static_cast<long>(j), idx.end());
        Real lhs = 0;
        for (const auto& [w, c] : shuffle(index_word(a), index_word(b))) lhs += to_real(c) * mzv_sym(word_index(w), ctx());
        Index rb = a;
        rb.insert(rb.end(), b.rbegin(), b.rend());
        const Real rhs = (weight(b) % 2 ? -1 : 1) * mzv_sym(rb, ctx());
        CHECK(boost::multiprecision::abs(lhs - rhs) < tol());
      }
}
