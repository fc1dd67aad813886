#pragma once

#include <map>
#include <random>
#include <stdexcept>
#include <utility>

#include "mes/goncharov.hpp"
#include "mes/qseries.hpp"
#include "mes/words.hpp"

namespace mes {

/// Noncommutative power series in X0, X1 truncated at total degree `trunc`. Words index
/// monomials ('0' = X0, '1' = X1). The coefficient ring is supplied through a prototype
/// value so that shaped rings (q-series) know their truncation.
template <class T>
class NCSeries {
 public:
  using Map = std::map<Word, T, WordLess>;

  NCSeries(int trunc, T proto) : trunc_(trunc), proto_(ring_zero_like(proto)) {
    if (trunc < 0) throw std::invalid_argument("negative truncation");
  }

  static NCSeries one(int trunc, const T& proto) {
    NCSeries s(trunc, proto);
    s.set("", ring_one_like(proto));
    return s;
  }
  /// The monomial c * w.
  static NCSeries monomial(int trunc, const T& proto, const Word& w, const T& c) {
    NCSeries s(trunc, proto);
    if (static_cast<int>(w.size()) <= trunc) s.set(w, c);
    return s;
  }
  static NCSeries from_helem(int trunc, const T& proto, const HElem& h) {
    NCSeries s(trunc, proto);
    for (const auto& [w, c] : h)
      if (static_cast<int>(w.size()) <= trunc) s.add(w, ring_scale(ring_one_like(proto), c));
    return s;
  }

  int trunc() const { return trunc_; }
  const T& proto() const { return proto_; }
  const Map& terms() const { return c_; }

  T get(const Word& w) const {
    auto it = c_.find(w);
    return it == c_.end() ? proto_ : it->second;
  }
  void set(const Word& w, const T& v) {
    if (static_cast<int>(w.size()) > trunc_) throw std::invalid_argument("word exceeds truncation");
    if (ring_is_zero(v))
      c_.erase(w);
    else
      c_[w] = v;
  }
  void add(const Word& w, const T& v) {
    if (static_cast<int>(w.size()) > trunc_ || ring_is_zero(v)) return;
    auto it = c_.find(w);
    if (it == c_.end()) {
      c_.emplace(w, v);
    } else {
      it->second += v;
      if (ring_is_zero(it->second)) c_.erase(it);
    }
  }

  NCSeries& operator+=(const NCSeries& o) {
    check_compatible(o);
    for (const auto& [w, v] : o.c_) add(w, v);
    return *this;
  }
  NCSeries& operator-=(const NCSeries& o) {
    check_compatible(o);
    for (const auto& [w, v] : o.c_) add(w, -v);
    return *this;
  }
  friend NCSeries operator+(NCSeries a, const NCSeries& b) { return a += b; }
  friend NCSeries operator-(NCSeries a, const NCSeries& b) { return a -= b; }

  /// Concatenation product, truncated.
  friend NCSeries operator*(const NCSeries& a, const NCSeries& b) {
    a.check_compatible(b);
    NCSeries r(a.trunc_, a.proto_);
    for (const auto& [u, x] : a.c_)
      for (const auto& [v, y] : b.c_)
        if (static_cast<int>(u.size() + v.size()) <= a.trunc_) r.add(u + v, x * y);
    return r;
  }

  NCSeries scaled(const Rational& c) const {
    NCSeries r(trunc_, proto_);
    for (const auto& [w, v] : c_) r.add(w, ring_scale(v, c));
    return r;
  }

  void check_compatible(const NCSeries& o) const {
    if (o.trunc_ != trunc_) throw std::invalid_argument("NC series truncation mismatch");
  }

 private:
  int trunc_;
  T proto_;
  Map c_;
};

/// <S | h>, linear in h.
template <class T>
T pair(const NCSeries<T>& S, const HElem& h) {
  T r = S.proto();
  for (const auto& [w, c] : h) {
    if (static_cast<int>(w.size()) > S.trunc()) throw std::invalid_argument("word exceeds truncation");
    r += ring_scale(S.get(w), c);
  }
  return r;
}

/// Exact group-like test: <S|u sh v> = <S|u><S|v> for all |u|+|v| <= trunc, constant term 1.
template <class T>
bool is_grouplike(const NCSeries<T>& S) {
  if (!ring_is_zero(S.get("") - ring_one_like(S.proto()))) return false;
  for (int n = 1; n <= S.trunc(); ++n)
    for (int a = 1; a < n; ++a)
      for (const auto& u : words_of_length(a))
        for (const auto& v : words_of_length(n - a)) {
          if (u > v && a == n - a) continue;
          if (!ring_is_zero(pair(S, shuffle(u, v)) - S.get(u) * S.get(v))) return false;
        }
  return true;
}

/// Shuffle antipode sigma(X_{a_1}..X_{a_n}) = (-1)^n X_{a_n}..X_{a_1}; the inverse of a
/// group-like series.
template <class T>
NCSeries<T> antipode(const NCSeries<T>& S) {
  if constexpr (std::is_same_v<T, Rational>) {
    if (!is_grouplike(S)) throw std::invalid_argument("antipode: series is not group-like");
  }
  NCSeries<T> r(S.trunc(), S.proto());
  for (const auto& [w, v] : S.terms()) r.add(reversed(w), (w.size() % 2) ? T(-v) : v);
  return r;
}

namespace detail {

template <class T>
NCSeries<T> antipode_unchecked(const NCSeries<T>& S) {
  NCSeries<T> r(S.trunc(), S.proto());
  for (const auto& [w, v] : S.terms()) r.add(reversed(w), (w.size() % 2) ? T(-v) : v);
  return r;
}

}  // namespace detail

/// B(X0, Y): replace every X1 in B by the series Y.
template <class T>
NCSeries<T> substitute_x1(const NCSeries<T>& B, const NCSeries<T>& Y) {
  B.check_compatible(Y);
  const int W = B.trunc();
  const auto X0 = NCSeries<T>::monomial(W, B.proto(), "0", ring_one_like(B.proto()));
  // Powers by word prefix: process words in order, reusing prefix products.
  std::map<Word, NCSeries<T>, WordLess> prefix;
  prefix.emplace("", NCSeries<T>::one(W, B.proto()));
  NCSeries<T> r(W, B.proto());
  for (const auto& [w, c] : B.terms()) {
    for (size_t len = 1; len <= w.size(); ++len) {
      const Word p = w.substr(0, len);
      if (prefix.count(p)) continue;
      const auto& base = prefix.at(w.substr(0, len - 1));
      prefix.emplace(p, base * (w[len - 1] == '0' ? X0 : Y));
    }
    for (const auto& [u, v] : prefix.at(w).terms()) r.add(u, v * c);
  }
  return r;
}

/// Ihara action A o B = B(X0, A X1 A^{-1}) A.
template <class T>
NCSeries<T> ihara_compose(const NCSeries<T>& A, const NCSeries<T>& B) {
  A.check_compatible(B);
  const int W = A.trunc();
  const auto X1 = NCSeries<T>::monomial(W, A.proto(), "1", ring_one_like(A.proto()));
  const auto Y = A * X1 * detail::antipode_unchecked(A);
  return substitute_x1(B, Y) * A;
}

/// The group-like X with A o X = 1, solved degree by degree: the degree-n part of A o X
/// equals X_n plus terms involving lower degrees of X only.
template <class T>
NCSeries<T> ihara_inverse(const NCSeries<T>& A) {
  const int W = A.trunc();
  auto X = NCSeries<T>::one(W, A.proto());
  for (int n = 1; n <= W; ++n) {
    const auto C = ihara_compose(A, X);
    for (const auto& [w, v] : C.terms())
      if (static_cast<int>(w.size()) == n) X.set(w, -v);
  }
  return X;
}

/// Truncated exp(L) for L without constant term.
template <class T>
NCSeries<T> nc_exp(const NCSeries<T>& L) {
  if (!ring_is_zero(L.get(""))) throw std::invalid_argument("nc_exp: nonzero constant term");
  auto r = NCSeries<T>::one(L.trunc(), L.proto());
  auto term = r;
  for (int n = 1; n <= L.trunc(); ++n) {
    term = (term * L).scaled(Rational(1, n));
    r += term;
  }
  return r;
}

/// Random rational Lie element: a combination of letters and nested commutators.
NCSeries<Rational> random_lie(int trunc, std::mt19937_64& rng);
/// exp of random_lie; group-like by construction.
NCSeries<Rational> random_grouplike(int trunc, std::mt19937_64& rng);

/// Both sides of <A o B | w> = m o (alpha (x) beta) o delta_g(w).
template <class T>
std::pair<T, T> goncharov_vs_ihara(const NCSeries<T>& A, const NCSeries<T>& B, const Word& w) {
  if (static_cast<int>(w.size()) > A.trunc()) throw std::invalid_argument("word exceeds truncation");
  const T lhs = ihara_compose(A, B).get(w);
  T rhs = A.proto();
  for (const auto& [uv, c] : delta_g(w)) rhs += ring_scale(A.get(uv.first) * B.get(uv.second), c);
  return {lhs, rhs};
}

/// Coefficient of each word w (|w| <= trunc) taken as f(reg0(w)); for a shuffle homomorphism
/// f on H^1 this is the group-like series with <S|e0> = 0.
template <class T, class F>
NCSeries<T> series_from_h1_map(int trunc, const T& proto, F&& f) {
  NCSeries<T> S(trunc, proto);
  S.set("", ring_one_like(proto));
  for (int n = 1; n <= trunc; ++n)
    for (const auto& w : words_of_length(n)) {
      const HElem r = reg0(w);
      T v = ring_zero_like(proto);
      for (const auto& [u, c] : r) v += ring_scale(f(u), c);
      S.add(w, v);
    }
  return S;
}

}  // namespace mes
