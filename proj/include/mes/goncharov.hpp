#pragma once

#include <map>
#include <utility>

#include "mes/words.hpp"

namespace mes {

struct PairLess {
  bool operator()(const std::pair<Word, Word>& a, const std::pair<Word, Word>& b) const {
    WordLess less;
    if (a.first != b.first) return less(a.first, b.first);
    return less(a.second, b.second);
  }
};

/// Element of H (x) H; zero coefficients are never stored.
using HTensor = std::map<std::pair<Word, Word>, Rational, PairLess>;

void add_term(HTensor& t, const Word& left, const Word& right, const Rational& c);
void add_scaled(HTensor& t, const HTensor& s, const Rational& c);

/// Formal iterated integral I(a0; w; a1) with letters '0'/'1', normalized to an element of H.
HElem isymbol(char a0, const Word& w, char a1);

/// Goncharov coproduct of a single word (memoized).
HTensor delta_g(const Word& w);
HTensor delta_g(const HElem& x);
/// (reg0 (x) reg0) o delta_g on H^1.
HTensor delta_g1(const HElem& x);
HTensor delta_g1(const Index& k);

/// Componentwise shuffle product on H (x) H.
HTensor tensor_shuffle(const HTensor& a, const HTensor& b);

std::string to_string(const HTensor& t);

}  // namespace mes
