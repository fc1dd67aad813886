#pragma once

#include <map>
#include <string>
#include <vector>

#include "mes/numeric.hpp"

namespace mes {

/// A word over {e0, e1}, stored as a string of '0' and '1'.
using Word = std::string;
/// An index (k_1, ..., k_d) of positive integers.
using Index = std::vector<int>;

/// Length-then-lexicographic order; the canonical order of HElem terms.
struct WordLess {
  bool operator()(const Word& a, const Word& b) const {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  }
};

/// Element of the noncommutative polynomial algebra on {e0, e1} over Q.
/// Zero coefficients are never stored.
using HElem = std::map<Word, Rational, WordLess>;

Word index_word(const Index& k);        // e_{k_1} ... e_{k_d}
Index word_index(const Word& w);        // inverse on words starting with e1
int weight(const Index& k);
std::string index_string(const Index& k);  // "2,3"
Index parse_index(const std::string& s);   // accepts "2,3" or "(2,3)"

bool is_letter_word(const Word& w);
bool in_h1(const Word& w);  // empty or starts with e1
bool in_h0(const Word& w);  // empty or starts with e1 and ends with e0
bool in_h1(const HElem& x);
bool in_h0(const HElem& x);
bool is_admissible(const Index& k);

HElem word_elem(const Word& w, const Rational& c = Rational(1));
HElem index_elem(const Index& k, const Rational& c = Rational(1));
void add_term(HElem& x, const Word& w, const Rational& c);
void add_scaled(HElem& x, const HElem& y, const Rational& c);
HElem operator+(const HElem& a, const HElem& b);
HElem operator-(const HElem& a, const HElem& b);
HElem operator*(const Rational& c, const HElem& a);
/// Concatenation product extended bilinearly.
HElem concat(const HElem& a, const HElem& b);
int max_length(const HElem& x);

HElem shuffle(const Word& a, const Word& b);
HElem shuffle(const HElem& a, const HElem& b);
/// Quasi-shuffle on index words; both arguments must lie in H^1.
HElem stuffle(const Word& a, const Word& b);
HElem stuffle(const HElem& a, const HElem& b);

/// Constant term of the decomposition H = H^1[e0] with respect to shuffle.
HElem reg0(const Word& w);
HElem reg0(const HElem& x);

/// Returns (w_0, w_1, ...) with x = sum_i w_i sh e1^{sh i} and w_i in H^0.
std::vector<HElem> decompose_h1(const HElem& x);

/// eps(e_{a_1}...e_{a_n}) = (-1)^n e_{a_n}...e_{a_1}.
HElem eps_map(const HElem& x);
Word reversed(const Word& w);
/// Letter swap e0 <-> e1.
Word flipped(const Word& w);
/// Duality tau(w) = flip(reverse(w)).
Word dual_word(const Word& w);

/// All words of exactly the given length, in WordLess order.
std::vector<Word> words_of_length(int n);
/// All indices of the given weight (compositions), lexicographic.
std::vector<Index> indices_of_weight(int k);
std::vector<Index> indices_of_weight_depth(int k, int d);

/// Human readable form such as "2*e(1,2) - e(0 1)"; words outside H^1 are written letterwise.
std::string to_string(const HElem& x);

}  // namespace mes
