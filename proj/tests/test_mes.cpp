#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mes/mes.hpp"

using namespace mes;

namespace {

MesEngine& engine() {
  static MzvContext ctx(256);
  static MesEngine e(ctx, 30);
  return e;
}

Real tol() { return pow2(-128); }

SymbolicMES sorted(SymbolicMES s) {
  std::sort(s.begin(), s.end(), [](const MesTerm& a, const MesTerm& b) {
    return std::tie(a.zeta_word, a.g_index) < std::tie(b.zeta_word, b.g_index);
  });
  return s;
}

bool same(const SymbolicMES& a, const SymbolicMES& b) {
  const auto x = sorted(a), y = sorted(b);
  if (x.size() != y.size()) return false;
  for (size_t i = 0; i < x.size(); ++i)
    if (x[i].coeff != y[i].coeff || x[i].zeta_word != y[i].zeta_word || x[i].g_index != y[i].g_index) return false;
  return true;
}

}  // namespace

TEST_CASE("symbolic examples") {
  CHECK(same(mes_symbolic({3, 3}), {{1, index_word({3, 3}), {}},
                                    {-6, index_word({4}), {2}},
                                    {1, index_word({3}), {3}},
                                    {1, "", {3, 3}}}));
  for (int k = 1; k <= 8; ++k) CHECK(same(mes_symbolic({k}), {{1, index_word({k}), {}}, {1, "", {k}}}));
  CHECK(same(mes_symbolic({1, 2}), {{1, index_word({1, 2}), {}}, {1, "", {1, 2}}}));
  CHECK_THROWS_AS(mes_symbolic({}), std::invalid_argument);
}

TEST_CASE("depth-two structure") {
  for (int r = 1; r <= 11; ++r)
    for (int s = 1; r + s <= 12; ++s) {
      SymbolicMES expect{{1, index_word({r, s}), {}}, {1, "", {r, s}}};
      for (int p = 1; p < r + s; ++p) {
        const Rational c = depth2_coefficient(r, s, p);
        if (c != 0) expect.push_back({c, index_word({p}), {r + s - p}});
      }
      CHECK(same(mes_symbolic({r, s}), expect));
    }
  CHECK(depth2_coefficient(3, 3, 4) == -6);
}

TEST_CASE("weight two is the classical Eisenstein series") {
  CHECK(max_deviation(engine().G({2}), to_complex(eisenstein_tilde(2, 30))) < tol());
  CHECK(max_deviation(engine().G({8}), to_complex(eisenstein_tilde(8, 30))) < tol());
}

TEST_CASE("double shuffle examples") {
  CHECK(check_g4_double_shuffle(engine()) < tol());
  CHECK(check_g5_double_shuffle(engine()) < tol());
}

TEST_CASE("symmetric series in depth one and two") {
  for (int k = 1; k <= 8; ++k) {
    const CSeries& s = engine().S({k});
    if (k % 2) CHECK(ring_size(s) < tol());
    else {
      CSeries twice = engine().G({k});
      twice += engine().G({k});
      CHECK(max_deviation(s, twice) < tol());
    }
  }
  CHECK(ring_size(engine().S(Index{1, 1})) < tol());
  CHECK(check_smes_22(engine()) < tol());
}

TEST_CASE("sum formulas") {
  CHECK(check_kaneko_sum(engine(), 6) < tol());
  CHECK(check_kaneko_even_sum(engine(), 8) < tol());
}

TEST_CASE("depth-two closed forms") {
  CHECK(check_depth2_closed_form(engine(), 4, 4) < tol());
  CHECK(check_depth2_closed_form(engine(), 2, 6) < tol());
  for (int k : {5, 7, 9})
    for (int s = 1; 2 * s < k; ++s) CHECK(check_depth2_closed_form(engine(), k - s, s) < tol());
}

TEST_CASE("shuffle homomorphism to weight 6") {
  for (int a = 1; a <= 4; ++a)
    for (int b = 1; a + b <= 6; ++b)
      for (const auto& u : indices_of_weight(a))
        for (const auto& v : indices_of_weight(b)) {
          const CSeries lhs = engine().G(u) * engine().G(v);
          CHECK(max_deviation(lhs, engine().G(shuffle(index_word(u), index_word(v)))) < tol());
        }
}

TEST_CASE("double shuffle for entries at least two") {
  for (int a = 2; a <= 6; ++a)
    for (int b = 2; a + b <= 8; ++b)
      for (const auto& u : indices_of_weight(a))
        for (const auto& v : indices_of_weight(b)) {
          if (*std::min_element(u.begin(), u.end()) < 2 || *std::min_element(v.begin(), v.end()) < 2) continue;
          const HElem x = shuffle(index_word(u), index_word(v)) - stuffle(index_elem(u), index_elem(v));
          CHECK(ring_size(engine().G(x)) < tol());
        }
}

TEST_CASE("stuffle relation for symmetric series") {
  for (int a = 2; a <= 6; ++a)
    for (int b = 2; a + b <= 8; ++b)
      for (const auto& u : indices_of_weight(a))
        for (const auto& v : indices_of_weight(b)) {
          if (*std::min_element(u.begin(), u.end()) < 2 || *std::min_element(v.begin(), v.end()) < 2) continue;
          const CSeries lhs = engine().S(u) * engine().S(v);
          CHECK(max_deviation(lhs, engine().S(stuffle(index_elem(u), index_elem(v)))) < tol());
        }
}

TEST_CASE("linear shuffle and reversal") {
  for (int k = 2; k <= 7; ++k)
    for (const auto& idx : indices_of_weight(k)) {
      CHECK(check_reversal(engine(), idx) < tol());
      for (size_t j = 1; j < idx.size(); ++j) CHECK(check_linear_shuffle(engine(), idx, j) < tol());
    }
}

TEST_CASE("symmetric series through the generating series") {
  for (int k = 1; k <= 4; ++k)
    for (const auto& idx : indices_of_weight(k)) CHECK(max_deviation(engine().S(idx), engine().S_via_gamma(idx)) < tol());
}

TEST_CASE("generating series composition") {
  const int W = 4;
  const auto me = engine().gamma_me(W);
  const auto composed = ihara_compose(engine().phi_series(W), engine().gamma_md(W));
  for (int k = 1; k <= W; ++k)
    for (const auto& idx : indices_of_weight(k)) {
      const Word w = index_word(idx);
      CHECK(max_deviation(me.get(w), composed.get(w)) < tol());
    }
}

TEST_CASE("verify_identity") {
  LinearExpr lhs, rhs;
  lhs.add(1, engine().G({4}));
  rhs.add(4, engine().G(Index{1, 3}));
  CHECK(verify_identity(lhs, rhs, 30) < tol());
}
