#include "mes/mzv.hpp"

#include <cmath>
#include <stdexcept>

namespace mes {

MzvContext::MzvContext(unsigned precision_bits) : precision_(precision_bits) {
  if (precision_bits < 32) throw std::invalid_argument("precision too small");
  set_working_precision(precision_bits + kGuardBits);
  pi_ = real_pi();
}

Real MzvContext::li_half(const Word& w) {
  if (w.empty()) return Real(1);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = li_cache_.find(w);
    if (it != li_cache_.end()) return it->second;
  }
  const Index k = word_index(w);
  const size_t d = k.size();
  // A[j] = sum over 0<n_1<..<n_j<=n of prod 1/n_i^{k_i}; the top level carries 2^{-n_d}.
  std::vector<Real> A(d, Real(0));
  A[0] = 1;
  Real sum(0), scale(1);
  const double target = static_cast<double>(precision_ + kGuardBits + 16);
  for (long n = 1;; ++n) {
    scale /= 2;
    const Real nr(n);
    for (size_t j = d; j >= 1; --j) {
      const Real t = A[j - 1] / pow(nr, k[j - 1]);
      if (j == d)
        sum += t * scale;
      else
        A[j] += t;
    }
    // The remaining terms are bounded by 2^{-n} (A_{d-1}+1) n.
    const double a = static_cast<double>(A[d - 1]) + 1.0;
    if (static_cast<double>(n) - std::log2(a) - std::log2(static_cast<double>(n) + 1.0) > target) break;
  }
  std::lock_guard<std::mutex> lock(mutex_);
  li_cache_.emplace(w, sum);
  return sum;
}

Real MzvContext::zeta_word(const Word& w) {
  if (w.empty()) return Real(1);
  if (w.front() != '1' || w.back() != '0') throw std::invalid_argument("zeta of a non-admissible word");
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = zeta_cache_.find(w);
    if (it != zeta_cache_.end()) return it->second;
  }
  // I(0;w;1) = sum_{w=uv} I(0;u;1/2) I(1/2;v;1), and t -> 1-t turns I(1/2;v;1) into
  // I(0;dual(v);1/2).
  Real s(0);
  for (size_t cut = 0; cut <= w.size(); ++cut) {
    const Word u = w.substr(0, cut);
    const Word v = w.substr(cut);
    s += li_half(u) * li_half(dual_word(v));
  }
  std::lock_guard<std::mutex> lock(mutex_);
  zeta_cache_.emplace(w, s);
  return s;
}

Real mzv(const Index& k, MzvContext& ctx) {
  if (!is_admissible(k)) throw std::invalid_argument("mzv: index not admissible");
  return ctx.zeta_word(index_word(k));
}

Real mzv_dual_path(const Index& k, MzvContext& ctx) {
  if (!is_admissible(k)) throw std::invalid_argument("mzv: index not admissible");
  return ctx.zeta_word(dual_word(index_word(k)));
}

Real mzv_direct_oracle(const Index& k, long M) {
  if (!is_admissible(k)) throw std::invalid_argument("mzv: index not admissible");
  const size_t d = k.size();
  std::vector<Real> A(d + 1, Real(0));
  A[0] = 1;
  for (long n = 1; n <= M; ++n) {
    const Real nr(n);
    for (size_t j = d; j >= 1; --j) A[j] += A[j - 1] / pow(nr, k[j - 1]);
  }
  return A[d];
}

long double mzv_oracle_with_tail(const Index& k0, long M) {
  if (!is_admissible(k0)) throw std::invalid_argument("mzv: index not admissible");
  const Index kd = word_index(dual_word(index_word(k0)));
  auto better = [](const Index& a, const Index& b) {
    if (a.back() != b.back()) return a.back() > b.back();
    return a.size() < b.size();
  };
  const Index k = better(kd, k0) ? kd : k0;
  const size_t d = k.size();
  std::vector<long double> A(d + 1, 0.0L);
  A[0] = 1.0L;
  for (long n = 1; n <= M; ++n) {
    const long double nr = static_cast<long double>(n);
    for (size_t j = d; j >= 1; --j) A[j] += A[j - 1] / std::pow(nr, static_cast<long double>(k[j - 1]));
  }
  // Tail sum_{j=1}^{d} A_{d-j}(M) * int_{M<x_1<..<x_j} prod x_i^{-k_{d-j+i}} dx, with the
  // half-term Euler-Maclaurin correction on the outermost level.
  const long double Mf = static_cast<long double>(M);
  long double tail = -0.5L * A[d - 1] * std::pow(Mf, -static_cast<long double>(k[d - 1]));
  long double denom = 1.0L;
  int top = 0;
  for (size_t j = 1; j <= d; ++j) {
    top += k[d - j];
    const int expo = top - static_cast<int>(j);
    if (expo <= 0) break;
    denom *= static_cast<long double>(expo);
    tail += A[d - j] * std::pow(Mf, -static_cast<long double>(expo)) / denom;
  }
  return A[d] + tail;
}

Real mzv_shuffle_reg(const HElem& w, MzvContext& ctx) {
  const auto parts = decompose_h1(reg0(w));
  Real s(0);
  if (parts.empty()) return s;
  for (const auto& [u, c] : parts[0]) s += to_real(c) * ctx.zeta_word(u);
  return s;
}

Real mzv_shuffle_reg(const Index& k, MzvContext& ctx) { return mzv_shuffle_reg(index_elem(k), ctx); }

Real mzv_sym(const Index& k, MzvContext& ctx) {
  const size_t d = k.size();
  Real s(0);
  for (size_t j = 0; j <= d; ++j) {
    const Index a(k.begin(), k.begin() + static_cast<long>(j));
    Index b(k.begin() + static_cast<long>(j), k.end());
    const int sign = weight(b) % 2 ? -1 : 1;
    std::reverse(b.begin(), b.end());
    s += sign * mzv_shuffle_reg(a, ctx) * mzv_shuffle_reg(b, ctx);
  }
  return s;
}

Real mzv_sym_via_phi(const Index& k, MzvContext& ctx) {
  const Word w = index_word(k) + '1';
  Real s(0);
  for (size_t p = 0; p < w.size(); ++p) {
    if (w[p] != '1') continue;
    const Word u = w.substr(0, p);
    const Word v = w.substr(p + 1);
    const Real a = mzv_shuffle_reg(word_elem(u), ctx);
    if (a == 0) continue;
    s += a * mzv_shuffle_reg(eps_map(word_elem(v)), ctx);
  }
  return s;
}

}  // namespace mes
