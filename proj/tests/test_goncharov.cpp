#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tuple>

#include "mes/goncharov.hpp"

using namespace mes;

namespace {

using Triple = std::map<std::tuple<Word, Word, Word>, Rational>;

void add(Triple& t, const Word& a, const Word& b, const Word& c, const Rational& x) {
  auto& v = t[{a, b, c}];
  v += x;
  if (v == 0) t.erase({a, b, c});
}

HTensor tensor(std::initializer_list<std::tuple<HElem, HElem>> parts) {
  HTensor t;
  for (const auto& [l, r] : parts)
    for (const auto& [u, c] : l)
      for (const auto& [v, d] : r) add_term(t, u, v, c * d);
  return t;
}

HElem e(const Index& k, const Rational& c = 1) { return index_elem(k, c); }
const HElem one = word_elem("");

}  // namespace

TEST_CASE("isymbol normalization") {
  CHECK(isymbol('0', "", '1') == one);
  CHECK(isymbol('1', "", '1') == one);
  CHECK(isymbol('0', "10", '0').empty());
  CHECK(isymbol('1', "01", '1').empty());
  CHECK(isymbol('0', "110", '1') == word_elem("110"));
  CHECK(isymbol('1', "110", '0') == word_elem("011", -1));
}

TEST_CASE("delta_g small words") {
  CHECK(delta_g(Word("0")) == tensor({{word_elem("0"), one}, {one, word_elem("0")}}));
  CHECK(delta_g(Word("")) == tensor({{one, one}}));
  CHECK(delta_g(Word("1")) == tensor({{word_elem("1"), one}, {one, word_elem("1")}}));
}

TEST_CASE("delta_g1 displayed goldens") {
  const HTensor t33 = tensor({{e({3, 3}), one}, {e({4}, -6), e({2})}, {e({3}), e({3})}, {one, e({3, 3})}});
  CHECK(delta_g1(Index{3, 3}) == t33);

  // Left factor of (x) e_2 is 4 e_2 sh e_3 + 3 e_{2,3} + 2 e_{3,2}.
  const HElem f2 = shuffle(e({2}, 4), e({3})) + e({2, 3}, 3) + e({3, 2}, 2);
  const HElem f3 = shuffle(e({2}), e({2})) + e({2, 2}, 2);
  const HTensor t223 = tensor({{e({2, 2, 3}), one},
                               {f2, e({2})},
                               {f3, e({3})},
                               {e({3}, 3), e({2, 2})},
                               {e({2}, 4), e({2, 3})},
                               {one, e({2, 2, 3})}});
  CHECK(delta_g1(Index{2, 2, 3}) == t223);

  for (int k = 1; k <= 10; ++k) CHECK(delta_g1(Index{k}) == tensor({{e({k}), one}, {one, e({k})}}));
  CHECK_THROWS_AS(delta_g1(word_elem("01")), std::invalid_argument);
}

TEST_CASE("counit") {
  for (int n = 0; n <= 6; ++n)
    for (const auto& w : words_of_length(n)) {
      HElem left, right;
      for (const auto& [uv, c] : delta_g(w)) {
        if (uv.first.empty()) add_term(left, uv.second, c);
        if (uv.second.empty()) add_term(right, uv.first, c);
      }
      CHECK(left == word_elem(w));
      CHECK(right == word_elem(w));
    }
}

TEST_CASE("coassociativity to weight 5") {
  for (int n = 0; n <= 5; ++n)
    for (const auto& w : words_of_length(n)) {
      Triple lhs, rhs;
      for (const auto& [uv, c] : delta_g(w)) {
        for (const auto& [ab, d] : delta_g(uv.first)) add(lhs, ab.first, ab.second, uv.second, c * d);
        for (const auto& [ab, d] : delta_g(uv.second)) add(rhs, uv.first, ab.first, ab.second, c * d);
      }
      CHECK(lhs == rhs);
    }
}

TEST_CASE("delta_g is a shuffle homomorphism to weight 4") {
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; a + b <= 4; ++b)
      for (const auto& u : words_of_length(a))
        for (const auto& v : words_of_length(b))
          CHECK(delta_g(shuffle(u, v)) == tensor_shuffle(delta_g(u), delta_g(v)));
}

TEST_CASE("delta_g1 depth-two shape") {
  for (int k = 2; k <= 10; ++k)
    for (const auto& idx : indices_of_weight_depth(k, 2))
      for (const auto& [uv, c] : delta_g1(idx)) {
        CHECK(in_h1(uv.first));
        CHECK(in_h1(uv.second));
        CHECK(static_cast<int>(uv.first.size() + uv.second.size()) == k);
      }
}
