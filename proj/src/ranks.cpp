#include "mes/ranks.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <utility>

namespace mes {

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rational>>& rs) {
  RatMatrix m(rs.size(), rs.empty() ? 0 : rs[0].size());
  for (size_t i = 0; i < rs.size(); ++i) {
    if (rs[i].size() != m.cols) throw std::invalid_argument("ragged matrix rows");
    for (size_t j = 0; j < m.cols; ++j) m(i, j) = rs[i][j];
  }
  return m;
}

std::vector<Rational> RatMatrix::row(size_t i) const {
  return std::vector<Rational>(a.begin() + static_cast<long>(i * cols),
                               a.begin() + static_cast<long>((i + 1) * cols));
}

namespace {

// Row i scaled by the lcm of its denominators.
std::vector<Integer> integral_row(const RatMatrix& m, size_t i) {
  Integer l = 1;
  for (size_t j = 0; j < m.cols; ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  std::vector<Integer> r(m.cols);
  for (size_t j = 0; j < m.cols; ++j) r[j] = m(i, j).get_num() * (l / m(i, j).get_den());
  return r;
}

SparseIntMatrix to_sparse(const RatMatrix& m) {
  SparseIntMatrix s;
  s.cols = m.cols;
  for (size_t i = 0; i < m.rows; ++i) {
    const auto r = integral_row(m, i);
    std::vector<std::pair<size_t, Integer>> sr;
    for (size_t j = 0; j < m.cols; ++j)
      if (r[j] != 0) sr.emplace_back(j, r[j]);
    if (!sr.empty()) s.add_row(std::move(sr));
  }
  return s;
}

// Above this size exact work goes through the multi-modular path.
constexpr size_t kDenseLimit = 4000;

size_t bareiss_rank(const RatMatrix& m) {
  std::vector<std::vector<Integer>> M;
  for (size_t i = 0; i < m.rows; ++i) M.push_back(integral_row(m, i));
  size_t r = 0;
  Integer prev = 1;
  for (size_t c = 0; c < m.cols && r < m.rows; ++c) {
    size_t p = r;
    while (p < m.rows && M[p][c] == 0) ++p;
    if (p == m.rows) continue;
    std::swap(M[p], M[r]);
    for (size_t i = r + 1; i < m.rows; ++i) {
      for (size_t j = c + 1; j < m.cols; ++j) {
        M[i][j] = M[r][c] * M[i][j] - M[i][c] * M[r][j];
        mpz_divexact(M[i][j].get_mpz_t(), M[i][j].get_mpz_t(), prev.get_mpz_t());
      }
      M[i][c] = 0;
    }
    prev = M[r][c];
    ++r;
  }
  return r;
}

constexpr std::array<uint64_t, 24> kPrimes = {
    2147483647, 2147483629, 2147483587, 2147483579, 2147483563, 2147483549, 2147483543, 2147483497,
    2147483489, 2147483477, 2147483423, 2147483399, 2147483353, 2147483323, 2147483269, 2147483249,
    2147483237, 2147483179, 2147483171, 2147483137, 2147483123, 2147483077, 2147483069, 2147483059};

template <uint64_t P>
uint64_t inv_mod(uint64_t a) {
  uint64_t r = 1, e = P - 2;
  while (e) {
    if (e & 1) r = r * a % P;
    a = a * a % P;
    e >>= 1;
  }
  return r;
}

struct ModEchelon {
  std::vector<size_t> pivots;               // increasing
  std::vector<std::vector<uint64_t>> rows;  // fully reduced, pivot entry 1
};

// Incremental Gauss-Jordan mod P: each incoming row is reduced against the current basis;
// a new pivot is then cleared from the existing rows.
template <uint64_t P>
ModEchelon rref_mod(const SparseIntMatrix& m) {
  const size_t n = m.cols;
  std::vector<long> where(n, -1);  // column -> basis row
  std::vector<std::vector<uint64_t>> basis;
  std::vector<size_t> piv;
  const Integer Pz = static_cast<unsigned long>(P);
  std::vector<uint64_t> v(n);
  for (const auto& sr : m.rows) {
    std::fill(v.begin(), v.end(), 0);
    bool any = false;
    for (const auto& [j, x] : sr) {
      Integer t;
      mpz_fdiv_r(t.get_mpz_t(), x.get_mpz_t(), Pz.get_mpz_t());
      v[j] = t.get_ui();
      any = any || v[j];
    }
    if (!any) continue;
    for (size_t c = 0; c < n; ++c) {
      if (!v[c] || where[c] < 0) continue;
      const uint64_t f = v[c];
      const auto& b = basis[static_cast<size_t>(where[c])];
      for (size_t t = c; t < n; ++t)
        if (b[t]) v[t] = (v[t] + (P - f) * b[t]) % P;
    }
    size_t lead = 0;
    while (lead < n && !v[lead]) ++lead;
    if (lead == n) continue;
    const uint64_t inv = inv_mod<P>(v[lead]);
    for (size_t t = lead; t < n; ++t) v[t] = v[t] * inv % P;
    for (auto& b : basis) {
      const uint64_t f = b[lead];
      if (!f) continue;
      for (size_t t = lead; t < n; ++t)
        if (v[t]) b[t] = (b[t] + (P - f) * v[t]) % P;
    }
    where[lead] = static_cast<long>(basis.size());
    basis.push_back(v);
    piv.push_back(lead);
  }
  ModEchelon e;
  std::vector<size_t> order(piv.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return piv[a] < piv[b]; });
  for (size_t i : order) {
    e.pivots.push_back(piv[i]);
    e.rows.push_back(std::move(basis[i]));
  }
  return e;
}

template <size_t... I>
constexpr auto make_dispatch(std::index_sequence<I...>) {
  return std::array<ModEchelon (*)(const SparseIntMatrix&), sizeof...(I)>{&rref_mod<kPrimes[I]>...};
}
constexpr auto kDispatch = make_dispatch(std::make_index_sequence<kPrimes.size()>{});

// Smallest-height a/b with a = b x mod M, |a|, b <= sqrt(M/2).
bool rational_reconstruct(const Integer& x, const Integer& M, Rational& out) {
  Integer bound;
  Integer half = M / 2;
  mpz_sqrt(bound.get_mpz_t(), half.get_mpz_t());
  Integer r0 = M, r1 = x, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer r2 = r0 - q * r1, t2 = t0 - q * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (t1 == 0 || abs(t1) > bound) return false;
  out = Rational(r1, t1);
  out.canonicalize();
  return true;
}

bool verify_kernel(const SparseIntMatrix& m, const std::vector<std::vector<Rational>>& basis) {
  for (const auto& v : basis) {
    Integer l = 1;
    for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
    std::vector<Integer> iv(v.size());
    for (size_t j = 0; j < v.size(); ++j) iv[j] = v[j].get_num() * (l / v[j].get_den());
    for (const auto& sr : m.rows) {
      Integer s = 0;
      for (const auto& [j, x] : sr) s += x * iv[j];
      if (s != 0) return false;
    }
  }
  return true;
}

}  // namespace

size_t rank_mod_prime(const SparseIntMatrix& m, size_t prime_index) {
  if (prime_index >= kPrimes.size()) throw std::out_of_range("prime index");
  return kDispatch[prime_index](m).pivots.size();
}

CertifiedKernel certified_kernel(const SparseIntMatrix& m) {
  const size_t n = m.cols;
  std::vector<ModEchelon> images;
  std::vector<uint64_t> moduli;
  size_t best_rank = 0;
  std::vector<size_t> best_piv;
  for (size_t pi = 0; pi < kPrimes.size(); ++pi) {
    ModEchelon e = kDispatch[pi](m);
    if (images.empty() || e.pivots.size() > best_rank) {
      // A larger rank means all earlier primes were unlucky.
      images.clear();
      moduli.clear();
      best_rank = e.pivots.size();
      best_piv = e.pivots;
    } else if (e.pivots.size() < best_rank || e.pivots != best_piv) {
      continue;
    }
    images.push_back(std::move(e));
    moduli.push_back(kPrimes[pi]);

    std::vector<size_t> free_cols;
    {
      size_t p = 0;
      for (size_t c = 0; c < n; ++c) {
        if (p < best_piv.size() && best_piv[p] == c)
          ++p;
        else
          free_cols.push_back(c);
      }
    }
    // CRT on every free-column entry of the echelon rows, then reconstruct.
    Integer M = 1;
    for (uint64_t q : moduli) M *= static_cast<unsigned long>(q);
    bool ok = true;
    std::vector<std::vector<Rational>> basis;
    for (size_t f : free_cols) {
      std::vector<Rational> v(n, Rational(0));
      v[f] = 1;
      for (size_t i = 0; i < best_rank && ok; ++i) {
        Integer x = 0, mod = 1;
        for (size_t t = 0; t < images.size(); ++t) {
          const Integer q = static_cast<unsigned long>(moduli[t]);
          const Integer r = static_cast<unsigned long>(images[t].rows[i][f]);
          // x += mod * ((r - x) * mod^{-1} mod q)
          Integer inv, diff = r - x, k;
          mpz_invert(inv.get_mpz_t(), mod.get_mpz_t(), q.get_mpz_t());
          k = diff * inv;
          mpz_fdiv_r(k.get_mpz_t(), k.get_mpz_t(), q.get_mpz_t());
          x += mod * k;
          mod *= q;
        }
        Rational y;
        if (!rational_reconstruct(x, M, y)) {
          ok = false;
          break;
        }
        v[best_piv[i]] = -y;
      }
      if (!ok) break;
      basis.push_back(std::move(v));
    }
    if (!ok || !verify_kernel(m, basis)) continue;
    CertifiedKernel out;
    out.rank = best_rank;
    out.pivots = best_piv;
    out.basis = std::move(basis);
    out.primes_used = pi + 1;
    return out;
  }
  throw std::runtime_error("certified_kernel: prime budget exhausted");
}

RatMatrix rref(const RatMatrix& m, std::vector<size_t>* pivots) {
  RatMatrix r = m;
  std::vector<size_t> piv;
  size_t row = 0;
  for (size_t c = 0; c < r.cols && row < r.rows; ++c) {
    size_t p = row;
    while (p < r.rows && r(p, c) == 0) ++p;
    if (p == r.rows) continue;
    if (p != row)
      for (size_t j = 0; j < r.cols; ++j) std::swap(r(p, j), r(row, j));
    const Rational inv = 1 / r(row, c);
    for (size_t j = c; j < r.cols; ++j) r(row, j) *= inv;
    for (size_t i = 0; i < r.rows; ++i) {
      if (i == row || r(i, c) == 0) continue;
      const Rational f = r(i, c);
      for (size_t j = c; j < r.cols; ++j) r(i, j) -= f * r(row, j);
    }
    piv.push_back(c);
    ++row;
  }
  if (pivots) *pivots = piv;
  return r;
}

size_t rank(const RatMatrix& m) {
  if (m.rows == 0 || m.cols == 0) return 0;
  if (m.rows * m.cols > kDenseLimit) return certified_kernel(to_sparse(m)).rank;
  return bareiss_rank(m);
}

std::vector<std::vector<Rational>> kernel(const RatMatrix& m) {
  if (m.rows * m.cols > kDenseLimit) return certified_kernel(to_sparse(m)).basis;
  std::vector<size_t> piv;
  const RatMatrix r = rref(m, &piv);
  std::vector<std::vector<Rational>> basis;
  size_t p = 0;
  for (size_t c = 0; c < m.cols; ++c) {
    if (p < piv.size() && piv[p] == c) {
      ++p;
      continue;
    }
    std::vector<Rational> v(m.cols, Rational(0));
    v[c] = 1;
    for (size_t i = 0; i < piv.size(); ++i) v[piv[i]] = -r(i, c);
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

Integer binom_z(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

void check_odd_k(int k) {
  if (k < 5 || k % 2 == 0) throw std::invalid_argument("k must be odd and at least 5");
}

}  // namespace

Integer bkm(int k, int l, int m) {
  check_odd_k(k);
  const int K = (k - 1) / 2;
  if (l < 1 || l > K || m < 1 || m > K - 1) throw std::out_of_range("bkm: index out of range");
  return binom_z(2 * m, 2 * l - 2) + binom_z(2 * m, k - 2 * l) - (2 * l - 1 == 2 * m + 1 ? 1 : 0);
}

RatMatrix matrix_C(int k) {
  check_odd_k(k);
  const int K = (k - 1) / 2;
  RatMatrix c(static_cast<size_t>(K), static_cast<size_t>(K - 1));
  for (int l = 1; l <= K; ++l)
    for (int m = 1; m <= K - 1; ++m) c(static_cast<size_t>(l - 1), static_cast<size_t>(m - 1)) = bkm(k, l, m);
  return c;
}

std::vector<int> selected_rows(int k) {
  check_odd_k(k);
  const int K = (k - 1) / 2, kappa = k / 3;
  std::vector<int> n;
  for (int l = 1; l <= kappa; ++l) n.push_back(l <= (kappa + 1) / 2 ? l : l + K - kappa);
  return n;
}

RatMatrix matrix_S(int k) {
  const auto n = selected_rows(k);
  const size_t kappa = n.size();
  RatMatrix s(kappa, kappa);
  for (size_t i = 0; i < kappa; ++i)
    for (size_t m = 1; m <= kappa; ++m) s(i, m - 1) = bkm(k, n[i], static_cast<int>(m));
  return s;
}

std::pair<Integer, Integer> binom_identity(long j, long a) {
  if (j < 0 || a < 0) throw std::invalid_argument("binom_identity: negative argument");
  const Integer lhs = binom_z(j, a) - (j == a ? (j % 2 ? -1 : 1) : 0);
  Integer rhs = 0;
  for (long l = a / 2; l <= a; ++l) rhs += (2 * binom_z(l + 1, a - l) - binom_z(l, a - l)) * binom_z(j - l - 1, l);
  return {lhs, rhs};
}

std::pair<Integer, Integer> binom_identity_corollary(long lp, long m) {
  if (lp < 1 || m < 0) throw std::invalid_argument("binom_identity_corollary: argument out of range");
  const Integer lhs = binom_z(2 * m, lp - 1) - (lp - 1 == 2 * m ? 1 : 0);
  Integer rhs = binom_z(2 * m - lp, lp - 1);
  for (long nu = 1; nu <= lp / 2; ++nu)
    rhs += (binom_z(lp - nu, nu) + binom_z(lp - nu - 1, nu - 1)) * binom_z(2 * m - lp + nu, lp - nu - 1);
  return {lhs, rhs};
}

AppendixReduction appendix_reduction(int k) {
  check_odd_k(k);
  const size_t kappa = static_cast<size_t>(k / 3);
  AppendixReduction out;
  out.correction = (k % 3 == 0) ? Integer(2 * static_cast<long>(kappa)) : Integer(0);

  RatMatrix target(kappa, kappa);  // S'_k + correction
  out.T = RatMatrix(kappa, kappa);
  for (size_t lp = 1; lp <= kappa; ++lp)
    for (size_t m = 1; m <= kappa; ++m) {
      const long L = static_cast<long>(lp), M = static_cast<long>(m);
      target(lp - 1, m - 1) = binom_z(2 * M, L - 1) - (L - 1 == 2 * M ? 1 : 0);
      out.T(lp - 1, m - 1) = binom_z(2 * M - L, L - 1);
    }
  target(kappa - 1, kappa - 1) += out.correction;

  // Row swaps: match each target row to an unused row of S_k.
  const RatMatrix S = matrix_S(k);
  std::vector<bool> used(kappa, false);
  for (size_t i = 0; i < kappa; ++i) {
    size_t found = kappa;
    for (size_t r = 0; r < kappa && found == kappa; ++r)
      if (!used[r] && S.row(r) == target.row(i)) found = r;
    if (found == kappa) return out;
    used[found] = true;
    out.row_permutation.push_back(found);
  }

  RatMatrix R(kappa, kappa);
  for (size_t i = 0; i < kappa; ++i)
    for (size_t m = 0; m < kappa; ++m) R(i, m) = S(out.row_permutation[i], m);
  for (size_t lp = 2; lp <= kappa; ++lp)
    for (size_t nu = 1; nu < lp; ++nu) {
      const long L = static_cast<long>(lp), V = static_cast<long>(nu);
      const Integer c = binom_z(L - V, V) + binom_z(L - V - 1, V - 1);
      if (c == 0) continue;
      for (size_t m = 0; m < kappa; ++m) R(lp - 1, m) -= c * R(lp - nu - 1, m);
    }
  out.reduced = R;

  RatMatrix expect = out.T;
  expect(kappa - 1, kappa - 1) += out.correction;
  bool upper = true;
  for (size_t i = 0; i < kappa; ++i) {
    if (out.T(i, i) == 0) upper = false;
    for (size_t m = 0; m < i; ++m)
      if (out.T(i, m) != 0) upper = false;
  }
  out.ok = upper && R == expect;
  return out;
}

}  // namespace mes
