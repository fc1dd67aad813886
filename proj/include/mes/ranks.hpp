#pragma once

#include <cstdint>
#include <vector>

#include "mes/numeric.hpp"

namespace mes {

/// Dense row-major matrix of rationals.
struct RatMatrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<Rational> a;

  RatMatrix() = default;
  RatMatrix(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}
  static RatMatrix from_rows(const std::vector<std::vector<Rational>>& rs);

  Rational& operator()(size_t i, size_t j) { return a[i * cols + j]; }
  const Rational& operator()(size_t i, size_t j) const { return a[i * cols + j]; }
  std::vector<Rational> row(size_t i) const;
  bool operator==(const RatMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
};

/// Rank by fraction-free (Bareiss) elimination after clearing row denominators.
size_t rank(const RatMatrix& m);
/// Reduced row echelon form; pivot columns are returned through `pivots` when given.
RatMatrix rref(const RatMatrix& m, std::vector<size_t>* pivots = nullptr);
/// Kernel basis read off the reduced echelon form: one vector per free column (in
/// increasing order) with a 1 in that column.
std::vector<std::vector<Rational>> kernel(const RatMatrix& m);

/// Sparse integer matrix for large exact systems.
struct SparseIntMatrix {
  size_t cols = 0;
  std::vector<std::vector<std::pair<size_t, Integer>>> rows;
  void add_row(std::vector<std::pair<size_t, Integer>> r) { rows.push_back(std::move(r)); }
};

/// Rank modulo the i-th built-in 31-bit prime (a lower bound for the rational rank).
size_t rank_mod_prime(const SparseIntMatrix& m, size_t prime_index = 0);

struct CertifiedKernel {
  size_t rank = 0;
  std::vector<size_t> pivots;
  /// Kernel basis in the same normal form as kernel(); each vector was checked exactly.
  std::vector<std::vector<Rational>> basis;
  size_t primes_used = 0;
};

/// Exact kernel via multi-modular reduced echelon forms, rational reconstruction and an
/// exact integer check M v = 0. The verified kernel has dimension cols - rank_p, so the
/// modular rank equals the rational rank.
CertifiedKernel certified_kernel(const SparseIntMatrix& m);

/// b_k(l,m) = binom(2m,2l-2) + binom(2m,k-2l) - delta_{2l-1,2m+1}.
Integer bkm(int k, int l, int m);
/// K x (K-1) matrix (b_k(l,m)) with K = (k-1)/2.
RatMatrix matrix_C(int k);
/// kappa x kappa submatrix on the rows n_l, kappa = floor(k/3).
RatMatrix matrix_S(int k);
/// Row selection n_1..n_kappa (1-based).
std::vector<int> selected_rows(int k);

/// Both sides of binom(j,a) - (-1)^j delta_{j,a} = sum_l {2 binom(l+1,a-l) - binom(l,a-l)} binom(j-l-1,l).
std::pair<Integer, Integer> binom_identity(long j, long a);
/// Both sides of the corollary form in (l', m) used for the row reduction.
std::pair<Integer, Integer> binom_identity_corollary(long lp, long m);

struct AppendixReduction {
  bool ok = false;
  std::vector<size_t> row_permutation;  // row i of S'_k + correction is row perm[i] of S_k
  RatMatrix reduced;                    // T_k + 2 kappa delta_{3|k} E_{kappa,kappa}
  RatMatrix T;                          // (binom(2m-l', l'-1))
  Integer correction = 0;               // 2 kappa delta_{3|k}
};

/// Row swaps to S'_k + correction followed by the staged eliminations with multipliers
/// binom(l'-nu,nu) + binom(l'-nu-1,nu-1); checks arrival at T_k + correction.
AppendixReduction appendix_reduction(int k);

}  // namespace mes
