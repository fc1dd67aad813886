#include "mes/ihara.hpp"

namespace mes {

NCSeries<Rational> random_lie(int trunc, std::mt19937_64& rng) {
  using S = NCSeries<Rational>;
  const Rational one(1);
  std::vector<S> elems{S::monomial(trunc, one, "0", one), S::monomial(trunc, one, "1", one)};
  for (int i = 0; i < 4; ++i) {
    std::uniform_int_distribution<size_t> pick(0, elems.size() - 1);
    const S& x = elems[pick(rng)];
    const S& y = elems[pick(rng)];
    S z = x * y - y * x;
    if (!z.terms().empty()) elems.push_back(std::move(z));
  }
  std::uniform_int_distribution<int> num(-3, 3), den(1, 3);
  S L(trunc, one);
  for (const auto& e : elems) L += e.scaled(make_rational(num(rng), den(rng)));
  return L;
}

NCSeries<Rational> random_grouplike(int trunc, std::mt19937_64& rng) { return nc_exp(random_lie(trunc, rng)); }

}  // namespace mes
