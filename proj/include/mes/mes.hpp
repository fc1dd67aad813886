#pragma once

#include <map>
#include <mutex>
#include <vector>

#include "mes/goncharov.hpp"
#include "mes/ihara.hpp"
#include "mes/mzv.hpp"
#include "mes/qseries.hpp"

namespace mes {

/// One term c * Z^sh(zeta_word) * g^sh_{g_index}; an empty word stands for 1, an empty index
/// for g^sh_() = 1.
struct MesTerm {
  Rational coeff;
  Word zeta_word;
  Index g_index;
};

/// m o (Z^sh (x) g^sh) o delta_g1(e_k) kept symbolic in the MZV and q-series factors.
using SymbolicMES = std::vector<MesTerm>;

SymbolicMES mes_symbolic(const Index& k);
std::string to_string(const SymbolicMES& s);

/// Depth-two coefficient C^p_{r,s} = delta_{r,p} + (-1)^r binom(p-1,r-1) + (-1)^{p-s} binom(p-1,s-1).
Rational depth2_coefficient(int r, int s, int p);

/// Numeric multiple Eisenstein series at truncation N. Series are normalized by
/// (2 pi i)^{weight} unless the name ends in _raw. All results are memoized.
class MesEngine {
 public:
  MesEngine(MzvContext& ctx, int N);

  int N() const { return N_; }
  MzvContext& ctx() { return ctx_; }

  /// Z^sh(w) / (2 pi i)^{|w|} for any word.
  Complex zeta_tilde(const Word& w);
  /// gtilde^sh_l as a complex series; l may be empty.
  const CSeries& gsh(const Index& l);
  /// Normalized G^sh_k; G_() = 1.
  const CSeries& G(const Index& k);
  /// Linear extension to H^1 elements, each word normalized by its own length.
  CSeries G(const HElem& h);
  CSeries G_raw(const Index& k);
  /// Normalized symmetric series sum_j (-1)^{k_{j+1}+..+k_d} G_{k_1..k_j} G_{k_d..k_{j+1}}.
  const CSeries& S(const Index& k);
  CSeries S(const HElem& h);
  CSeries S_raw(const Index& k);
  /// <Gamma_ME X1 Gamma_ME^{-1} | e_k e1> by deconcatenation.
  CSeries S_via_gamma(const Index& k);
  /// Normalized classical Eisenstein series G_k (k even) as a complex series.
  CSeries eisenstein(int k);

  CSeries constant(const Complex& c) const { return CSeries::constant(N_, c); }
  CSeries zero() const { return CSeries(N_); }

  /// Coefficient-of-word series (normalized by word length) for the associator, the
  /// generating series of the g^sh and the generating series of the G^sh.
  NCSeries<CSeries> phi_series(int trunc);
  NCSeries<CSeries> gamma_md(int trunc);
  NCSeries<CSeries> gamma_me(int trunc);

 private:
  MzvContext& ctx_;
  int N_;
  std::recursive_mutex mutex_;
  std::map<Word, Complex> zeta_cache_;
  std::map<Index, CSeries> gsh_cache_;
  std::map<Index, CSeries> G_cache_;
  std::map<Index, CSeries> S_cache_;
};

/// Sum of rational multiples of series.
struct LinearExpr {
  std::vector<std::pair<Rational, CSeries>> terms;
  LinearExpr& add(const Rational& c, const CSeries& s) {
    terms.emplace_back(c, s);
    return *this;
  }
  CSeries eval(int N) const;
};

/// max_n |lhs_n - rhs_n|.
Real verify_identity(const LinearExpr& lhs, const LinearExpr& rhs, int N);

/// Named identity checks; each returns the maximal coefficient deviation of normalized series.
Real check_g4_double_shuffle(MesEngine& e);  // G_4 - 4 G_{1,3}
Real check_g5_double_shuffle(MesEngine& e);  // G_5 - 6 G_{1,4} - 2 G_{2,3}
Real check_kaneko_sum(MesEngine& e, int k);
Real check_kaneko_even_sum(MesEngine& e, int k);
/// Depth-two closed forms for G^S_{r,s}: even-weight cases for r+s even, odd-weight cases
/// (r > s) for r+s odd.
Real check_depth2_closed_form(MesEngine& e, int r, int s);
/// G^S_{2,2} = 4 G_4 - G_2'.
Real check_smes_22(MesEngine& e);
/// Linear shuffle relation S(e_a sh e_b) = (-1)^{|b|} S(a, reversed b) for k = a b, split j.
Real check_linear_shuffle(MesEngine& e, const Index& k, size_t j);
/// Reversal relation S_k = (-1)^{wt} S_{reversed k}.
Real check_reversal(MesEngine& e, const Index& k);

}  // namespace mes
