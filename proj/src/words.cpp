#include "mes/words.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mes {

Word index_word(const Index& k) {
  Word w;
  for (int x : k) {
    if (x < 1) throw std::invalid_argument("index entries must be positive");
    w += '1';
    w.append(static_cast<size_t>(x - 1), '0');
  }
  return w;
}

Index word_index(const Word& w) {
  if (!in_h1(w)) throw std::invalid_argument("word does not start with e1: " + w);
  Index k;
  for (char c : w) {
    if (c == '1')
      k.push_back(1);
    else
      ++k.back();
  }
  return k;
}

int weight(const Index& k) {
  int s = 0;
  for (int x : k) s += x;
  return s;
}

std::string index_string(const Index& k) {
  std::string s;
  for (size_t i = 0; i < k.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(k[i]);
  }
  return s;
}

Index parse_index(const std::string& s) {
  Index k;
  std::string cur;
  for (char c : s) {
    if (c >= '0' && c <= '9') {
      cur += c;
    } else if (c == ',' || c == ' ' || c == '(' || c == ')') {
      if (!cur.empty()) k.push_back(std::stoi(cur));
      cur.clear();
    } else {
      throw std::invalid_argument("bad index: " + s);
    }
  }
  if (!cur.empty()) k.push_back(std::stoi(cur));
  for (int x : k)
    if (x < 1) throw std::invalid_argument("bad index: " + s);
  return k;
}

bool is_letter_word(const Word& w) {
  for (char c : w)
    if (c != '0' && c != '1') return false;
  return true;
}

bool in_h1(const Word& w) { return w.empty() || w.front() == '1'; }
bool in_h0(const Word& w) { return w.empty() || (w.front() == '1' && w.back() == '0'); }

bool in_h1(const HElem& x) {
  for (const auto& [w, c] : x)
    if (!in_h1(w)) return false;
  return true;
}

bool in_h0(const HElem& x) {
  for (const auto& [w, c] : x)
    if (!in_h0(w)) return false;
  return true;
}

bool is_admissible(const Index& k) { return !k.empty() && k.back() >= 2; }

HElem word_elem(const Word& w, const Rational& c) {
  HElem x;
  add_term(x, w, c);
  return x;
}

HElem index_elem(const Index& k, const Rational& c) { return word_elem(index_word(k), c); }

void add_term(HElem& x, const Word& w, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = x.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) x.erase(it);
  }
}

void add_scaled(HElem& x, const HElem& y, const Rational& c) {
  if (c == 0) return;
  for (const auto& [w, d] : y) add_term(x, w, c * d);
}

HElem operator+(const HElem& a, const HElem& b) {
  HElem r = a;
  add_scaled(r, b, Rational(1));
  return r;
}

HElem operator-(const HElem& a, const HElem& b) {
  HElem r = a;
  add_scaled(r, b, Rational(-1));
  return r;
}

HElem operator*(const Rational& c, const HElem& a) {
  HElem r;
  add_scaled(r, a, c);
  return r;
}

HElem concat(const HElem& a, const HElem& b) {
  HElem r;
  for (const auto& [u, c] : a)
    for (const auto& [v, d] : b) add_term(r, u + v, c * d);
  return r;
}

int max_length(const HElem& x) {
  int n = 0;
  for (const auto& [w, c] : x) n = std::max(n, static_cast<int>(w.size()));
  return n;
}

namespace {

std::mutex g_shuffle_mutex;
std::unordered_map<std::string, HElem> g_shuffle_cache;

HElem shuffle_rec(const Word& a, const Word& b) {
  if (a.empty()) return word_elem(b);
  if (b.empty()) return word_elem(a);
  const std::string key = a < b ? a + '|' + b : b + '|' + a;
  {
    std::lock_guard<std::mutex> lock(g_shuffle_mutex);
    auto it = g_shuffle_cache.find(key);
    if (it != g_shuffle_cache.end()) return it->second;
  }
  HElem r;
  for (const auto& [w, c] : shuffle_rec(a.substr(1), b)) add_term(r, a[0] + w, c);
  for (const auto& [w, c] : shuffle_rec(a, b.substr(1))) add_term(r, b[0] + w, c);
  std::lock_guard<std::mutex> lock(g_shuffle_mutex);
  g_shuffle_cache.emplace(key, r);
  return r;
}

std::mutex g_stuffle_mutex;
std::map<std::pair<Index, Index>, HElem> g_stuffle_cache;

HElem stuffle_rec(const Index& a, const Index& b) {
  if (a.empty()) return index_elem(b);
  if (b.empty()) return index_elem(a);
  auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  {
    std::lock_guard<std::mutex> lock(g_stuffle_mutex);
    auto it = g_stuffle_cache.find(key);
    if (it != g_stuffle_cache.end()) return it->second;
  }
  const Index a1(a.begin() + 1, a.end());
  const Index b1(b.begin() + 1, b.end());
  HElem r;
  auto prepend = [&r](int head, const HElem& tail) {
    const Word hw = index_word({head});
    for (const auto& [w, c] : tail) add_term(r, hw + w, c);
  };
  prepend(a[0], stuffle_rec(a1, b));
  prepend(b[0], stuffle_rec(a, b1));
  prepend(a[0] + b[0], stuffle_rec(a1, b1));
  std::lock_guard<std::mutex> lock(g_stuffle_mutex);
  g_stuffle_cache.emplace(key, r);
  return r;
}

// Compositions of n into d non-negative parts.
void weak_compositions(int n, int d, Index& cur, std::vector<Index>& out) {
  if (static_cast<int>(cur.size()) == d - 1) {
    cur.push_back(n);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= n; ++a) {
    cur.push_back(a);
    weak_compositions(n - a, d, cur, out);
    cur.pop_back();
  }
}

std::mutex g_reg0_mutex;
std::unordered_map<Word, HElem> g_reg0_cache;

std::mutex g_dec_mutex;
std::unordered_map<Word, std::vector<HElem>> g_dec_cache;

void add_component(std::vector<HElem>& acc, size_t i, const HElem& x, const Rational& c) {
  if (acc.size() <= i) acc.resize(i + 1);
  add_scaled(acc[i], x, c);
}

std::vector<HElem> decompose_word(const Word& w) {
  size_t m = 0;
  while (m < w.size() && w[w.size() - 1 - m] == '1') ++m;
  const Word v = w.substr(0, w.size() - m);
  if (m == 0) return {word_elem(w)};
  if (!v.empty() && v.front() != '1') throw std::invalid_argument("word not in H^1: " + w);
  {
    std::lock_guard<std::mutex> lock(g_dec_mutex);
    auto it = g_dec_cache.find(w);
    if (it != g_dec_cache.end()) return it->second;
  }
  // (v e1^{m-1}) sh e1 = m v e1^m + sum_{p<|v|} ins_p(v) e1^{m-1}
  const Word tail(m - 1, '1');
  std::vector<HElem> acc;
  const auto lower = decompose_word(v + tail);
  for (size_t i = 0; i < lower.size(); ++i) add_component(acc, i + 1, lower[i], Rational(1));
  for (size_t p = 0; p < v.size(); ++p) {
    const Word ins = v.substr(0, p) + '1' + v.substr(p) + tail;
    const auto part = decompose_word(ins);
    for (size_t i = 0; i < part.size(); ++i) add_component(acc, i, part[i], Rational(-1));
  }
  const Rational inv_m(1, static_cast<long>(m));
  for (auto& x : acc) x = inv_m * x;
  while (!acc.empty() && acc.back().empty()) acc.pop_back();
  std::lock_guard<std::mutex> lock(g_dec_mutex);
  g_dec_cache.emplace(w, acc);
  return acc;
}

}  // namespace

HElem shuffle(const Word& a, const Word& b) { return shuffle_rec(a, b); }

HElem shuffle(const HElem& a, const HElem& b) {
  HElem r;
  for (const auto& [u, c] : a)
    for (const auto& [v, d] : b) add_scaled(r, shuffle_rec(u, v), c * d);
  return r;
}

HElem stuffle(const Word& a, const Word& b) {
  if (!in_h1(a) || !in_h1(b)) throw std::invalid_argument("stuffle needs words in H^1");
  return stuffle_rec(word_index(a), word_index(b));
}

HElem stuffle(const HElem& a, const HElem& b) {
  HElem r;
  for (const auto& [u, c] : a)
    for (const auto& [v, d] : b) add_scaled(r, stuffle(u, v), c * d);
  return r;
}

HElem reg0(const Word& w) {
  size_t n = 0;
  while (n < w.size() && w[n] == '0') ++n;
  if (n == 0) return word_elem(w);
  if (n == w.size()) return {};
  {
    std::lock_guard<std::mutex> lock(g_reg0_mutex);
    auto it = g_reg0_cache.find(w);
    if (it != g_reg0_cache.end()) return it->second;
  }
  // reg0(e0^n e_k) = (-1)^n sum_{|l|=n} prod binom(k_j+l_j-1, l_j) e_{k+l}
  const Index k = word_index(w.substr(n));
  std::vector<Index> ls;
  Index cur;
  weak_compositions(static_cast<int>(n), static_cast<int>(k.size()), cur, ls);
  HElem r;
  const Rational sign = (n % 2) ? Rational(-1) : Rational(1);
  for (const auto& l : ls) {
    Rational c = sign;
    Index kl = k;
    for (size_t j = 0; j < k.size(); ++j) {
      c *= binomial(k[j] + l[j] - 1, l[j]);
      kl[j] += l[j];
    }
    add_term(r, index_word(kl), c);
  }
  std::lock_guard<std::mutex> lock(g_reg0_mutex);
  g_reg0_cache.emplace(w, r);
  return r;
}

HElem reg0(const HElem& x) {
  HElem r;
  for (const auto& [w, c] : x) add_scaled(r, reg0(w), c);
  return r;
}

std::vector<HElem> decompose_h1(const HElem& x) {
  if (!in_h1(x)) throw std::invalid_argument("decompose_h1: argument not in H^1");
  std::vector<HElem> acc;
  for (const auto& [w, c] : x) {
    const auto part = decompose_word(w);
    for (size_t i = 0; i < part.size(); ++i) add_component(acc, i, part[i], c);
  }
  while (!acc.empty() && acc.back().empty()) acc.pop_back();
  return acc;
}

Word reversed(const Word& w) { return Word(w.rbegin(), w.rend()); }

Word flipped(const Word& w) {
  Word r = w;
  for (char& c : r) c = (c == '0') ? '1' : '0';
  return r;
}

Word dual_word(const Word& w) { return flipped(reversed(w)); }

HElem eps_map(const HElem& x) {
  HElem r;
  for (const auto& [w, c] : x) add_term(r, reversed(w), (w.size() % 2) ? Rational(-c) : c);
  return r;
}

std::vector<Word> words_of_length(int n) {
  std::vector<Word> out;
  for (long mask = 0; mask < (1L << n); ++mask) {
    Word w(static_cast<size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if (mask & (1L << (n - 1 - i))) w[static_cast<size_t>(i)] = '1';
    out.push_back(w);
  }
  return out;
}

std::vector<Index> indices_of_weight(int k) {
  std::vector<Index> out;
  if (k <= 0) return out;
  // Compositions of k correspond to words of length k starting with e1.
  for (const auto& w : words_of_length(k - 1)) out.push_back(word_index('1' + w));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Index> indices_of_weight_depth(int k, int d) {
  std::vector<Index> out;
  for (auto& i : indices_of_weight(k))
    if (static_cast<int>(i.size()) == d) out.push_back(i);
  return out;
}

std::string to_string(const HElem& x) {
  if (x.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [w, c] : x) {
    Rational a = c;
    if (!first) {
      os << (a < 0 ? " - " : " + ");
      a = abs(a);
    } else if (a < 0) {
      os << "-";
      a = abs(a);
    }
    first = false;
    if (a != 1 || w.empty()) os << a.get_str() << (w.empty() ? "" : "*");
    if (w.empty()) continue;
    if (in_h1(w))
      os << "e(" << index_string(word_index(w)) << ")";
    else
      os << "w(" << w << ")";
  }
  return os.str();
}

}  // namespace mes
