#include "mes/goncharov.hpp"

#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace mes {

void add_term(HTensor& t, const Word& left, const Word& right, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = t.try_emplace({left, right}, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) t.erase(it);
  }
}

void add_scaled(HTensor& t, const HTensor& s, const Rational& c) {
  if (c == 0) return;
  for (const auto& [k, v] : s) add_term(t, k.first, k.second, c * v);
}

HElem isymbol(char a0, const Word& w, char a1) {
  if (w.empty()) return word_elem("");
  if (a0 == a1) return {};
  if (a0 == '0') return word_elem(w);
  // I(1; w; 0) = (-1)^n I(0; reversed w; 1)
  return word_elem(reversed(w), (w.size() % 2) ? Rational(-1) : Rational(1));
}

namespace {

std::mutex g_dg_mutex;
std::unordered_map<Word, HTensor> g_dg_cache;

HTensor compute_delta_g(const Word& w) {
  const size_t n = w.size();
  if (n > 30) throw std::invalid_argument("delta_g: word too long");
  const Word a = '0' + w + '1';
  HTensor r;
  for (unsigned long mask = 0; mask < (1UL << n); ++mask) {
    // Chosen interior positions 1..n, in increasing order.
    std::vector<size_t> idx{0};
    Word right;
    for (size_t i = 1; i <= n; ++i)
      if (mask & (1UL << (i - 1))) {
        idx.push_back(i);
        right += a[i];
      }
    idx.push_back(n + 1);
    HElem left = word_elem("");
    for (size_t p = 0; p + 1 < idx.size() && !left.empty(); ++p) {
      const size_t s = idx[p], e = idx[p + 1];
      const HElem seg = isymbol(a[s], a.substr(s + 1, e - s - 1), a[e]);
      left = shuffle(left, seg);
    }
    for (const auto& [u, c] : left) add_term(r, u, right, c);
  }
  return r;
}

}  // namespace

HTensor delta_g(const Word& w) {
  {
    std::lock_guard<std::mutex> lock(g_dg_mutex);
    auto it = g_dg_cache.find(w);
    if (it != g_dg_cache.end()) return it->second;
  }
  HTensor r = compute_delta_g(w);
  std::lock_guard<std::mutex> lock(g_dg_mutex);
  g_dg_cache.emplace(w, r);
  return r;
}

HTensor delta_g(const HElem& x) {
  HTensor r;
  for (const auto& [w, c] : x) add_scaled(r, delta_g(w), c);
  return r;
}

HTensor delta_g1(const HElem& x) {
  if (!in_h1(x)) throw std::invalid_argument("delta_g1: argument not in H^1");
  HTensor r;
  for (const auto& [w, c] : x)
    for (const auto& [uv, d] : delta_g(w)) {
      const HElem ru = reg0(uv.first);
      if (ru.empty()) continue;
      const HElem rv = reg0(uv.second);
      for (const auto& [a, x1] : ru)
        for (const auto& [b, y1] : rv) add_term(r, a, b, c * d * x1 * y1);
    }
  return r;
}

HTensor delta_g1(const Index& k) { return delta_g1(index_elem(k)); }

HTensor tensor_shuffle(const HTensor& a, const HTensor& b) {
  HTensor r;
  for (const auto& [k1, c1] : a)
    for (const auto& [k2, c2] : b) {
      const HElem l = shuffle(k1.first, k2.first);
      const HElem rr = shuffle(k1.second, k2.second);
      for (const auto& [u, x] : l)
        for (const auto& [v, y] : rr) add_term(r, u, v, c1 * c2 * x * y);
    }
  return r;
}

std::string to_string(const HTensor& t) {
  if (t.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : t) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.get_str() << ")*[" << (k.first.empty() ? "1" : k.first) << " | "
       << (k.second.empty() ? "1" : k.second) << "]";
  }
  return os.str();
}

}  // namespace mes
