#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "mes/numeric.hpp"
#include "mes/words.hpp"

namespace mes {

/// Power series c_0 + c_1 q + ... + c_N q^N, truncated at q^N.
template <class T>
class QSeries {
 public:
  QSeries() = default;
  explicit QSeries(int trunc) : c_(static_cast<size_t>(trunc + 1), T(0)) {
    if (trunc < 0) throw std::invalid_argument("negative truncation");
  }
  explicit QSeries(std::vector<T> coeffs) : c_(std::move(coeffs)) {}

  static QSeries constant(int trunc, const T& value) {
    QSeries s(trunc);
    s.c_[0] = value;
    return s;
  }

  int trunc() const { return static_cast<int>(c_.size()) - 1; }
  const T& operator[](int n) const { return c_[static_cast<size_t>(n)]; }
  T& operator[](int n) { return c_[static_cast<size_t>(n)]; }
  const std::vector<T>& coeffs() const { return c_; }

  QSeries& operator+=(const QSeries& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  QSeries& operator-=(const QSeries& o) {
    check_same(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  QSeries& operator*=(const T& s) {
    for (auto& x : c_) x *= s;
    return *this;
  }

  /// Cauchy product truncated at the common order.
  friend QSeries operator*(const QSeries& a, const QSeries& b) {
    a.check_same(b);
    const int n = a.trunc();
    QSeries r(n);
    for (int i = 0; i <= n; ++i) {
      if (ring_is_zero(a.c_[static_cast<size_t>(i)])) continue;
      for (int j = 0; i + j <= n; ++j) {
        if (ring_is_zero(b.c_[static_cast<size_t>(j)])) continue;
        r.c_[static_cast<size_t>(i + j)] += a.c_[static_cast<size_t>(i)] * b.c_[static_cast<size_t>(j)];
      }
    }
    return r;
  }
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator-(QSeries a) {
    for (auto& x : a.c_) x = -x;
    return a;
  }
  friend QSeries operator*(QSeries a, const T& s) { return a *= s; }
  friend QSeries operator*(const T& s, QSeries a) { return a *= s; }
  friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

  /// q d/dq.
  QSeries derivative() const {
    QSeries r = *this;
    for (size_t n = 0; n < c_.size(); ++n) r.c_[n] = c_[n] * T(static_cast<int>(n));
    return r;
  }

  QSeries truncated(int n) const {
    if (n > trunc()) throw std::invalid_argument("cannot extend truncation");
    return QSeries(std::vector<T>(c_.begin(), c_.begin() + n + 1));
  }

  bool is_zero() const {
    for (const auto& x : c_)
      if (!ring_is_zero(x)) return false;
    return true;
  }

  void check_same(const QSeries& o) const {
    if (o.c_.size() != c_.size()) throw std::invalid_argument("q-series truncation mismatch");
  }

 private:
  std::vector<T> c_;
};

using RatSeries = QSeries<Rational>;
using CSeries = QSeries<Complex>;

template <class T>
QSeries<T> ring_zero_like(const QSeries<T>& p) { return QSeries<T>(p.trunc()); }
template <class T>
QSeries<T> ring_one_like(const QSeries<T>& p) { return QSeries<T>::constant(p.trunc(), T(1)); }
template <class T>
bool ring_is_zero(const QSeries<T>& x) { return x.is_zero(); }
template <class T>
QSeries<T> ring_scale(const QSeries<T>& x, const Rational& c) {
  QSeries<T> r = x;
  for (int n = 0; n <= r.trunc(); ++n) r[n] = ring_scale(r[n], c);
  return r;
}
inline Real ring_size(const CSeries& x) {
  Real m(0);
  for (const auto& c : x.coeffs()) m = std::max(m, abs(c));
  return m;
}

/// Exact promotion of a rational series to complex coefficients.
CSeries to_complex(const RatSeries& s);
/// max_n |a_n - b_n|.
Real max_deviation(const CSeries& a, const CSeries& b);

/// Normalized multiple divisor sum: sum over 0<m_1<...<m_d, l_j>=1 of
/// prod l_j^{k_j-1}/(k_j-1)! q^{l_1 m_1 + ... + l_d m_d}.
RatSeries gtilde(const Index& k, int N);
/// Shuffle regularized normalized multiple divisor sum; memoized on (k, N).
RatSeries gtilde_shuffle(const Index& k, int N);

/// Multivariate Taylor polynomial in x_1..x_n with q-series coefficients; each key is an
/// exponent tuple and the stored series is the coefficient of that monomial.
struct XPolyQSeries {
  int nvars = 0;
  int degree = 0;  // total degree bound
  int N = 0;
  std::map<std::vector<int>, RatSeries> terms;

  const RatSeries* find(const std::vector<int>& e) const;
  void add(const std::vector<int>& e, const RatSeries& s);
};

XPolyQSeries operator*(const XPolyQSeries& a, const XPolyQSeries& b);
XPolyQSeries operator+(const XPolyQSeries& a, const XPolyQSeries& b);
/// Substitute y_i = sum_t A[i][t] z_t, where the input is in y_1..y_r and A is r x n.
XPolyQSeries linear_subst(const XPolyQSeries& p, const std::vector<std::vector<Rational>>& A);

/// H^(r)(k; y_1..y_r) = sum_{0<m_1<..<m_r} prod e^{m_i y_i} (q^{m_i}/(1-q^{m_i}))^{k_i}.
XPolyQSeries H_series(const Index& k, int degree, int N);
/// Hoffman average h^(d)(x_1..x_d) of the H^(r).
XPolyQSeries h_series(int d, int degree, int N);
/// gtilde_shuffle through the generating series h^(d)(x_d-x_{d-1},...,x_1); slow reference path.
RatSeries gtilde_shuffle_taylor(const Index& k, int N);

/// Bernoulli number B_n with B_1 = -1/2.
Rational bernoulli(int n);
/// G_k/(2 pi i)^k = -B_k/(2 k!) + gtilde_k for even k >= 2.
RatSeries eisenstein_tilde(int k, int N);
/// q prod (1-q^n)^24.
RatSeries discriminant(int N);

}  // namespace mes
