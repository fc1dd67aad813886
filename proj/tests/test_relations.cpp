#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mes/polyspaces.hpp"
#include "mes/relations.hpp"

using namespace mes;

namespace {

constexpr unsigned kP = 256;

MesEngine& engine() {
  static MzvContext ctx(kP);
  static MesEngine e(ctx, 60);
  return e;
}

Real tol() { return pow2(-static_cast<long>(kP / 2)); }

std::vector<Rational> rationals(std::initializer_list<long> xs) {
  std::vector<Rational> v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

// Exact Gram determinant of integer row vectors by fraction-free elimination.
Integer gram_det(const std::vector<std::vector<Integer>>& B) {
  const size_t n = B.size();
  RatMatrix G(n, n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      Integer s = 0;
      for (size_t t = 0; t < B[i].size(); ++t) s += B[i][t] * B[j][t];
      G(i, j) = Rational(s);
    }
  Rational det = 1;
  for (size_t c = 0; c < n; ++c) {
    size_t p = c;
    while (p < n && G(p, c) == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      for (size_t j = 0; j < n; ++j) std::swap(G(p, j), G(c, j));
      det = -det;
    }
    det *= G(c, c);
    for (size_t i = c + 1; i < n; ++i) {
      const Rational f = G(i, c) / G(c, c);
      for (size_t j = c; j < n; ++j) G(i, j) -= f * G(c, j);
    }
  }
  return det.get_num();
}

Integer norm2(const std::vector<Integer>& v) {
  Integer s = 0;
  for (const auto& x : v) s += x * x;
  return s;
}

}  // namespace

TEST_CASE("numeric rank examples") {
  CHECK(numeric_rank(admissible_mes_family(engine(), 7), kP) == 18);
  const SeriesFamily s6 = smes_family(engine(), 6);
  CHECK(numeric_rank(s6, kP) == 8);
  SeriesFamily dup = s6;
  dup.add("dup", s6.series[3]);
  CHECK(numeric_rank(dup, kP) == 8);
  CHECK_THROWS_AS(numeric_rank(SeriesFamily{}, kP), std::invalid_argument);
}

TEST_CASE("numeric rank flags unstable truncations") {
  SeriesFamily F;
  const CSeries& g = engine().G(Index{4});
  CSeries h = g;
  h[55] += Complex(1);
  F.add("a", g);
  F.add("b", h);
  CHECK_THROWS_AS(numeric_rank(F, kP), NumericRankError);
}

TEST_CASE("symbolic upper bounds") {
  CHECK(symbolic_upper_bound(3) == 1);
  CHECK(symbolic_upper_bound(7) == 12);
  CHECK(symbolic_upper_bound(9) == 43);
  const std::vector<size_t> table = {1, 1, 3, 3, 9, 12, 26, 43};
  for (int k = 2; k <= 9; ++k) CHECK(symbolic_upper_bound(k) == table[static_cast<size_t>(k - 2)]);
}

TEST_CASE("numeric rank against the bounds") {
  for (int k = 2; k <= 7; ++k) CHECK(numeric_rank(smes_family(engine(), k), kP) <= symbolic_upper_bound(k));
  for (int k = 2; k <= 9; ++k)
    for (int d = 1; d <= 3 && d <= k; ++d) {
      const SeriesFamily F = smes_family_depth(engine(), k, d);
      CHECK(numeric_rank(F, kP) <= lsh_dim(d, k - d));
      CHECK(numeric_rank(F, kP) <= symbolic_upper_bound_depth(k, d));
    }
}

TEST_CASE("lattice reduction") {
  std::vector<std::vector<Integer>> B = {{1, 1, 1}, {-1, 0, 2}, {3, 5, 6}};
  const Integer det = gram_det(B);
  Integer shortest = norm2(B[0]);
  for (const auto& v : B) shortest = std::min(shortest, norm2(v));
  lll_reduce(B);
  CHECK(gram_det(B) == det);
  CHECK(norm2(B[0]) <= shortest);
  // A planted short vector is recovered.
  std::vector<std::vector<Integer>> C = {{1, 0, 0, 100003}, {0, 1, 0, 200006}, {0, 0, 1, 77}};
  lll_reduce(C);
  CHECK(norm2(C[0]) <= 5);
}

TEST_CASE("integer relations") {
  SeriesFamily F;
  F.add("G4", engine().G(Index{4}));
  F.add("G13", engine().G(Index{1, 3}));
  const RelationReport r = integer_relation(F, kP, Integer(1000));
  CHECK(r.coefficients == rationals({1, -4}));
  CHECK(r.residual < tol());
  CHECK(r.method == "lll");

  SeriesFamily H;
  H.add("S22", engine().S(Index{2, 2}));
  H.add("G4", engine().eisenstein(4));
  H.add("dG2", engine().eisenstein(2).derivative());
  const RelationReport s = integer_relation(H, kP, Integer(1000));
  CHECK(s.coefficients == rationals({1, -4, 1}));
  CHECK(s.residual < tol());

  SeriesFamily I;
  I.add("G4", engine().eisenstein(4));
  I.add("dG2", engine().eisenstein(2).derivative());
  CHECK_THROWS_AS(integer_relation(I, kP, Integer(1000)), NoRelationError);
}

TEST_CASE("express") {
  SeriesFamily F;
  F.add("G4", engine().eisenstein(4));
  F.add("dG2", engine().eisenstein(2).derivative());
  const RelationReport r = express(F, engine().S(Index{2, 2}), "S22", kP);
  CHECK(r.exact);
  CHECK(r.coefficients == rationals({4, -1}));
  CHECK(r.residual < tol());
  CHECK(relation_residual(F, rationals({4, -1}), engine().S(Index{2, 2})) < tol());
}

TEST_CASE("cusp forms and the pinned discriminant expression") {
  CHECK(cusp_basis(10, 20).empty());
  const auto b12 = cusp_basis(12, 20);
  REQUIRE(b12.size() == 1);
  CHECK(b12[0].second == discriminant(20));
  CHECK(cusp_basis(24, 20).size() == 2);
  CHECK(pinned_delta_indices().size() == 12);
  CHECK(pinned_delta_coefficients().front() == -3421404);
  const RelationReport r = pinned_delta_check(engine());
  CHECK(r.residual < tol());
  REQUIRE(r.numeric_coefficients.size() == 12);
  const auto c = pinned_delta_coefficients();
  for (size_t i = 0; i < 12; ++i) CHECK(abs(r.numeric_coefficients[i] - to_real(c[i])) < pow2(-60));
}

TEST_CASE("depth-two dimensions") {
  for (int k : {4, 5, 6, 7, 9}) {
    const Theorem12Report t = theorem12_check(engine(), k, kP);
    CHECK(t.ok);
    CHECK(t.numeric == t.expected);
  }
  CHECK(theorem12_check(engine(), 12, kP).expected == 3);
  CHECK(theorem12_check(engine(), 9, kP).basis_rank == 3);
}

TEST_CASE("imaginary parts in odd weight") {
  for (int k : {5, 7, 9})
    for (int l = 1; l <= (k - 1) / 2; ++l) CHECK(check_imaginary_part(engine(), k, l) < tol());
}
