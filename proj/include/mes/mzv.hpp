#pragma once

#include <map>
#include <mutex>

#include "mes/numeric.hpp"
#include "mes/words.hpp"

namespace mes {

/// Precision and memo tables for multiple zeta values. Values are computed with
/// precision() + kGuardBits bits; constructing a context sets the global working precision.
class MzvContext {
 public:
  static constexpr unsigned kGuardBits = 32;

  explicit MzvContext(unsigned precision_bits = 256);

  unsigned precision() const { return precision_; }
  const Real& pi() const { return pi_; }

  /// Li_w(1/2) = sum_{0<n_1<..<n_d} 2^{-n_d} / prod n_j^{k_j} for w = e_k in H^1.
  Real li_half(const Word& w);
  /// zeta(w) for an admissible index word, by splitting the path at 1/2.
  Real zeta_word(const Word& w);

 private:
  unsigned precision_;
  Real pi_;
  std::mutex mutex_;
  std::map<Word, Real> li_cache_;
  std::map<Word, Real> zeta_cache_;
};

Real mzv(const Index& k, MzvContext& ctx);
/// Same value evaluated through the dual word (the other split ordering).
Real mzv_dual_path(const Index& k, MzvContext& ctx);
/// Partial sum over 0<n_1<..<n_d <= M, no tail correction.
Real mzv_direct_oracle(const Index& k, long M);
/// Partial sum of whichever of k and its dual converges faster, plus the leading
/// Euler-Maclaurin tail term; long double arithmetic, about 1e-9 relative accuracy at M = 10^6.
long double mzv_oracle_with_tail(const Index& k, long M);

/// Z^sh(w): constant term of decompose_h1(reg0(w)) evaluated by zeta.
Real mzv_shuffle_reg(const HElem& w, MzvContext& ctx);
Real mzv_shuffle_reg(const Index& k, MzvContext& ctx);
/// Symmetric sum sum_j (-1)^{k_{j+1}+..+k_d} zeta^sh(k_1..k_j) zeta^sh(k_d..k_{j+1}).
Real mzv_sym(const Index& k, MzvContext& ctx);
/// <Phi X1 Phi^{-1} | e_k e1> by deconcatenation, with <Phi^{-1}|v> = <Phi|eps(v)>.
Real mzv_sym_via_phi(const Index& k, MzvContext& ctx);

}  // namespace mes
