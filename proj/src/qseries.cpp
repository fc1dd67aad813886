#include "mes/qseries.hpp"

#include <mutex>

namespace mes {

CSeries to_complex(const RatSeries& s) {
  CSeries r(s.trunc());
  for (int n = 0; n <= s.trunc(); ++n)
    if (s[n] != 0) r[n] = Complex(s[n]);
  return r;
}

Real max_deviation(const CSeries& a, const CSeries& b) {
  a.check_same(b);
  Real m(0);
  for (int n = 0; n <= a.trunc(); ++n) m = std::max(m, abs(a[n] - b[n]));
  return m;
}

namespace {

using IntTable = std::vector<std::vector<Integer>>;

Integer ipow(long b, int e) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), static_cast<unsigned long>(e));
  return r;
}

void check_index(const Index& k) {
  if (k.empty()) throw std::invalid_argument("empty index");
  for (int x : k)
    if (x < 1) throw std::invalid_argument("index entries must be positive");
}

void compositions(int d, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (d == 0) {
    out.push_back(cur);
    return;
  }
  for (int a = 1; a <= d; ++a) {
    cur.push_back(a);
    compositions(d - a, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<int>> compositions(int d) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  compositions(d, cur, out);
  return out;
}

// One composition J of d contributes
//   1/(prod j_i! prod e_i!) sum_{0<m_1<..<m_r} prod (m_i - m_{i-1})^{e_i} (q^{m_i}/(1-q^{m_i}))^{j_i}.
// With delta_i = m_i - m_{i-1} and L_i = l_i + ... + l_r the exponent is sum delta_i L_i, so the
// levels are processed from r down to 1 on a table indexed by (L, n).
std::vector<Integer> composition_sum(const std::vector<int>& J, const std::vector<int>& e, int N) {
  const size_t r = J.size();
  IntTable S(static_cast<size_t>(N + 1), std::vector<Integer>(static_cast<size_t>(N + 1)));
  S[0][0] = 1;
  for (size_t i = r; i-- > 0;) {
    for (int round = 0; round < J[i]; ++round) {
      for (int L = N; L >= 1; --L) S[static_cast<size_t>(L)].swap(S[static_cast<size_t>(L - 1)]);
      for (auto& x : S[0]) x = 0;
      for (int L = 1; L <= N; ++L)
        for (int n = 0; n <= N; ++n) S[static_cast<size_t>(L)][static_cast<size_t>(n)] += S[static_cast<size_t>(L - 1)][static_cast<size_t>(n)];
    }
    IntTable T(static_cast<size_t>(N + 1), std::vector<Integer>(static_cast<size_t>(N + 1)));
    for (int L = 1; L <= N; ++L)
      for (int n = 0; n + L <= N; ++n) {
        const Integer& v = S[static_cast<size_t>(L)][static_cast<size_t>(n)];
        if (v == 0) continue;
        for (int delta = 1; n + delta * L <= N; ++delta)
          T[static_cast<size_t>(L)][static_cast<size_t>(n + delta * L)] += v * ipow(delta, e[i]);
      }
    S.swap(T);
  }
  std::vector<Integer> out(static_cast<size_t>(N + 1));
  for (int L = 0; L <= N; ++L)
    for (int n = 0; n <= N; ++n) out[static_cast<size_t>(n)] += S[static_cast<size_t>(L)][static_cast<size_t>(n)];
  return out;
}

std::mutex g_gsh_mutex;
std::map<std::pair<Index, int>, RatSeries> g_gsh_cache;

}  // namespace

RatSeries gtilde(const Index& k, int N) {
  check_index(k);
  if (N < 1) throw std::invalid_argument("N must be positive");
  const size_t d = k.size();
  std::vector<std::vector<Integer>> P(d + 1, std::vector<Integer>(static_cast<size_t>(N + 1)));
  P[0][0] = 1;
  for (int m = 1; m <= N; ++m)
    for (size_t j = d; j >= 1; --j)
      for (int n = 0; n + m <= N; ++n) {
        const Integer& v = P[j - 1][static_cast<size_t>(n)];
        if (v == 0) continue;
        for (int l = 1; n + l * m <= N; ++l)
          P[j][static_cast<size_t>(n + l * m)] += v * ipow(l, k[j - 1] - 1);
      }
  Integer denom = 1;
  for (int x : k) denom *= factorial(x - 1);
  RatSeries r(N);
  for (int n = 0; n <= N; ++n) {
    r[n] = Rational(P[d][static_cast<size_t>(n)], denom);
    r[n].canonicalize();
  }
  return r;
}

RatSeries gtilde_shuffle(const Index& k, int N) {
  check_index(k);
  if (N < 1) throw std::invalid_argument("N must be positive");
  {
    std::lock_guard<std::mutex> lock(g_gsh_mutex);
    auto it = g_gsh_cache.find({k, N});
    if (it != g_gsh_cache.end()) return it->second;
  }
  const int d = static_cast<int>(k.size());
  RatSeries r(N);
  for (const auto& J : compositions(d)) {
    // Group i covers positions s_i+1..s_i+j_i and carries the variable x_{d-s_i}.
    std::vector<int> T;
    std::vector<bool> used(static_cast<size_t>(d + 1), false);
    int s = 0;
    for (int j : J) {
      T.push_back(d - s);
      used[static_cast<size_t>(d - s)] = true;
      s += j;
    }
    bool valid = true;
    for (int t = 1; t <= d; ++t)
      if (!used[static_cast<size_t>(t)] && k[static_cast<size_t>(t - 1)] != 1) valid = false;
    if (!valid) continue;
    std::vector<int> e;
    Integer denom = 1;
    for (size_t i = 0; i < J.size(); ++i) {
      e.push_back(k[static_cast<size_t>(T[i] - 1)] - 1);
      denom *= factorial(J[i]) * factorial(e.back());
    }
    const auto sums = composition_sum(J, e, N);
    for (int n = 0; n <= N; ++n)
      if (sums[static_cast<size_t>(n)] != 0) r[n] += make_rational(sums[static_cast<size_t>(n)], denom);
  }
  for (int n = 0; n <= N; ++n) r[n].canonicalize();
  std::lock_guard<std::mutex> lock(g_gsh_mutex);
  g_gsh_cache.emplace(std::make_pair(k, N), r);
  return r;
}

const RatSeries* XPolyQSeries::find(const std::vector<int>& e) const {
  auto it = terms.find(e);
  return it == terms.end() ? nullptr : &it->second;
}

void XPolyQSeries::add(const std::vector<int>& e, const RatSeries& s) {
  auto it = terms.find(e);
  if (it == terms.end())
    terms.emplace(e, s);
  else
    it->second += s;
}

XPolyQSeries operator*(const XPolyQSeries& a, const XPolyQSeries& b) {
  if (a.nvars != b.nvars || a.N != b.N) throw std::invalid_argument("XPolyQSeries shape mismatch");
  XPolyQSeries r{a.nvars, std::min(a.degree, b.degree), a.N, {}};
  for (const auto& [ea, sa] : a.terms)
    for (const auto& [eb, sb] : b.terms) {
      std::vector<int> e(ea.size());
      int deg = 0;
      for (size_t i = 0; i < e.size(); ++i) {
        e[i] = ea[i] + eb[i];
        deg += e[i];
      }
      if (deg <= r.degree) r.add(e, sa * sb);
    }
  return r;
}

XPolyQSeries operator+(const XPolyQSeries& a, const XPolyQSeries& b) {
  if (a.nvars != b.nvars || a.N != b.N) throw std::invalid_argument("XPolyQSeries shape mismatch");
  XPolyQSeries r = a;
  r.degree = std::min(a.degree, b.degree);
  for (const auto& [e, s] : b.terms) r.add(e, s);
  std::erase_if(r.terms, [&](const auto& kv) {
    int deg = 0;
    for (int x : kv.first) deg += x;
    return deg > r.degree;
  });
  return r;
}

XPolyQSeries linear_subst(const XPolyQSeries& p, const std::vector<std::vector<Rational>>& A) {
  if (static_cast<int>(A.size()) != p.nvars) throw std::invalid_argument("substitution size mismatch");
  const size_t n = A.empty() ? 0 : A[0].size();
  using Poly = std::map<std::vector<int>, Rational>;
  XPolyQSeries r{static_cast<int>(n), p.degree, p.N, {}};
  for (const auto& [beta, s] : p.terms) {
    Poly cur{{std::vector<int>(n, 0), Rational(1)}};
    for (size_t i = 0; i < beta.size(); ++i)
      for (int rep = 0; rep < beta[i]; ++rep) {
        Poly next;
        for (const auto& [e, c] : cur)
          for (size_t t = 0; t < n; ++t) {
            if (A[i][t] == 0) continue;
            auto e2 = e;
            ++e2[t];
            next[e2] += c * A[i][t];
          }
        cur.swap(next);
      }
    for (const auto& [e, c] : cur)
      if (c != 0) r.add(e, ring_scale(s, c));
  }
  return r;
}

namespace {

void exponent_tuples(int nvars, int maxdeg, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == nvars) {
    out.push_back(cur);
    return;
  }
  for (int a = 0; a <= maxdeg; ++a) {
    cur.push_back(a);
    exponent_tuples(nvars, maxdeg - a, cur, out);
    cur.pop_back();
  }
}

}  // namespace

XPolyQSeries H_series(const Index& k, int degree, int N) {
  check_index(k);
  const size_t r = k.size();
  XPolyQSeries out{static_cast<int>(r), degree, N, {}};
  std::vector<std::vector<int>> betas;
  std::vector<int> cur;
  exponent_tuples(static_cast<int>(r), degree, cur, betas);
  for (const auto& beta : betas) {
    std::vector<std::vector<Integer>> P(r + 1, std::vector<Integer>(static_cast<size_t>(N + 1)));
    P[0][0] = 1;
    for (int m = 1; m <= N; ++m)
      for (size_t j = r; j >= 1; --j) {
        const Integer mw = ipow(m, beta[j - 1]);
        for (int n = 0; n + m <= N; ++n) {
          const Integer& v = P[j - 1][static_cast<size_t>(n)];
          if (v == 0) continue;
          // (x/(1-x))^k = sum_{l>=k} binom(l-1,k-1) x^l
          for (int l = k[j - 1]; n + l * m <= N; ++l)
            P[j][static_cast<size_t>(n + l * m)] += v * mw * binomial(l - 1, k[j - 1] - 1).get_num();
        }
      }
    Integer denom = 1;
    for (int b : beta) denom *= factorial(b);
    RatSeries s(N);
    for (int n = 0; n <= N; ++n) {
      s[n] = Rational(P[r][static_cast<size_t>(n)], denom);
      s[n].canonicalize();
    }
    if (!s.is_zero()) out.terms.emplace(beta, s);
  }
  return out;
}

XPolyQSeries h_series(int d, int degree, int N) {
  if (d < 1) throw std::invalid_argument("h_series needs d >= 1");
  XPolyQSeries out{d, degree, N, {}};
  for (const auto& J : compositions(d)) {
    std::vector<std::vector<Rational>> A(J.size(), std::vector<Rational>(static_cast<size_t>(d)));
    int s = 0;
    Integer denom = 1;
    for (size_t i = 0; i < J.size(); ++i) {
      for (int t = s; t < s + J[i]; ++t) A[i][static_cast<size_t>(t)] = 1;
      s += J[i];
      denom *= factorial(J[i]);
    }
    const auto part = linear_subst(H_series(J, degree, N), A);
    const Rational w = make_rational(1, denom);
    for (const auto& [e, ser] : part.terms) out.add(e, ring_scale(ser, w));
  }
  return out;
}

RatSeries gtilde_shuffle_taylor(const Index& k, int N) {
  check_index(k);
  const int d = static_cast<int>(k.size());
  const auto h = h_series(d, weight(k) - d, N);
  // y_i = x_{d-i+1} - x_{d-i} for i < d, y_d = x_1 (1-based).
  std::vector<std::vector<Rational>> A(static_cast<size_t>(d), std::vector<Rational>(static_cast<size_t>(d)));
  for (int i = 0; i < d; ++i) {
    A[static_cast<size_t>(i)][static_cast<size_t>(d - 1 - i)] = 1;
    if (d - 2 - i >= 0) A[static_cast<size_t>(i)][static_cast<size_t>(d - 2 - i)] = -1;
  }
  const auto sub = linear_subst(h, A);
  std::vector<int> e;
  for (int x : k) e.push_back(x - 1);
  const RatSeries* s = sub.find(e);
  return s ? *s : RatSeries(N);
}

Rational bernoulli(int n) {
  if (n < 0) throw std::invalid_argument("negative Bernoulli index");
  static std::mutex mu;
  static std::vector<Rational> table{Rational(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= n) {
    const long m = static_cast<long>(table.size());
    Rational s = 0;
    for (long j = 0; j < m; ++j) s += binomial(m + 1, j) * table[static_cast<size_t>(j)];
    table.push_back(-s / Rational(m + 1));
  }
  return table[static_cast<size_t>(n)];
}

RatSeries eisenstein_tilde(int k, int N) {
  if (k < 2 || k % 2) throw std::invalid_argument("eisenstein_tilde needs even k >= 2");
  RatSeries g = gtilde({k}, N);
  g[0] = -bernoulli(k) / Rational(2 * factorial(k));
  g[0].canonicalize();
  return g;
}

RatSeries discriminant(int N) {
  if (N < 1) throw std::invalid_argument("N must be positive");
  std::vector<Integer> c(static_cast<size_t>(N), 0);
  c[0] = 1;
  for (int n = 1; n < N; ++n)
    for (int rep = 0; rep < 24; ++rep)
      for (int i = N - 1; i >= n; --i) c[static_cast<size_t>(i)] -= c[static_cast<size_t>(i - n)];
  RatSeries r(N);
  for (int i = 1; i <= N; ++i) r[i] = Rational(c[static_cast<size_t>(i - 1)]);
  return r;
}

}  // namespace mes
