#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "mes/numeric.hpp"
#include "mes/ranks.hpp"

namespace mes {

using Exponents = std::vector<int>;

/// Homogeneous polynomial of degree w in d variables over Q.
class HomPoly {
 public:
  HomPoly(int d, int w);
  /// Rejects exponent vectors of the wrong length or total degree.
  HomPoly(int d, int w, const std::map<Exponents, Rational>& coeffs);
  /// c * x_1^{e_1} ... x_d^{e_d}
  static HomPoly monomial(const Exponents& e, const Rational& c = 1);

  int d() const { return d_; }
  int w() const { return w_; }
  const std::map<Exponents, Rational>& terms() const { return c_; }
  Rational coeff(const Exponents& e) const;
  void add(const Exponents& e, const Rational& c);
  bool is_zero() const { return c_.empty(); }

  HomPoly& operator+=(const HomPoly& o);
  HomPoly& operator-=(const HomPoly& o);
  friend HomPoly operator+(HomPoly a, const HomPoly& b) { return a += b; }
  friend HomPoly operator-(HomPoly a, const HomPoly& b) { return a -= b; }
  friend HomPoly operator*(const Rational& c, const HomPoly& p);
  bool operator==(const HomPoly& o) const { return d_ == o.d_ && w_ == o.w_ && c_ == o.c_; }

 private:
  void check(const HomPoly& o) const;
  int d_, w_;
  std::map<Exponents, Rational> c_;
};

/// Degree-w monomials of d variables in graded-lex order with x_1 > x_2 > ... (X > Y for d = 2).
std::vector<Exponents> monomials(int d, int w);
/// Coefficient vector in the monomials(d, w) order and back.
std::vector<Rational> to_vector(const HomPoly& p);
HomPoly from_vector(int d, int w, const std::vector<Rational>& v);

/// f(M x): argument i is sum_t M[i][t] x_t.
using LinearMap = std::vector<std::vector<int>>;
HomPoly substitute(const HomPoly& f, const LinearMap& M);

enum class Reindex { Sharp, Flat, FlatJ };
HomPoly reindex(const HomPoly& f, Reindex mode, int j = 0);

/// sh_j (primed = false) or sh_j' (primed = true), 1 <= j <= d-1.
HomPoly sh_op(const HomPoly& f, int j, bool primed);
/// (-1)^{d-j} f(x_1,..,x_j,-x_d,..,-x_{j+1}), 0 <= j <= d-1.
HomPoly p_op(const HomPoly& f, int j);

/// Reduced-echelon basis of the linear shuffle space LSh^(d)_w.
std::vector<HomPoly> lsh_basis(int d, int w);
size_t lsh_dim(int d, int w);

/// 2x2 integer matrix acting on the right: (P|A)(X,Y) = P(aX+bY, cX+dY).
struct Mat2Z {
  long a = 1, b = 0, c = 0, d = 1;
  Mat2Z operator*(const Mat2Z& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
  }
  bool operator==(const Mat2Z& o) const = default;
  long det() const { return a * d - b * c; }

  static Mat2Z identity() { return {1, 0, 0, 1}; }
  static Mat2Z epsilon() { return {0, 1, 1, 0}; }
  static Mat2Z gamma() { return {0, -1, 1, -1}; }
  static Mat2Z delta() { return {1, 0, 0, -1}; }
  static Mat2Z epsilon_p() { return delta() * epsilon() * delta(); }
  static Mat2Z gamma_p() { return delta() * gamma() * delta(); }
};

HomPoly gl2_act(const HomPoly& P, const Mat2Z& A);

/// Element of Q[GL_2(Z)] as a list of (coefficient, matrix).
using GroupRingElem = std::vector<std::pair<Rational, Mat2Z>>;
GroupRingElem gr_mul(const GroupRingElem& x, const GroupRingElem& y);
HomPoly gl2_act(const HomPoly& P, const GroupRingElem& x);

enum class SpaceKind { W, FShPol, OddPeriod };
std::vector<HomPoly> special_space_basis(SpaceKind kind, int w);
/// Membership test for LSh^(2)_w through the d = 2 defining equations.
bool in_lsh2(const HomPoly& P);
bool in_space(SpaceKind kind, const HomPoly& P);

enum class IsoDirection { FshToLsh, LshToFsh };
/// Q |-> Q|gamma'(1-epsilon')delta and P |-> -1/3 P|gamma(1+epsilon)delta; w odd,
/// input membership is checked.
HomPoly fsh_lsh_iso(const HomPoly& P, IsoDirection dir);

/// (P,Q) = <P|delta, Q> with <X^aY^{w-a}, X^bY^{w-b}> = (-1)^{a+1} binom(w,b)^{-1} delta_{a,w-b}.
Rational pairing(const HomPoly& P, const HomPoly& Q);

/// Coefficients c with target = sum c_i basis_i, or empty when target is outside the span.
std::vector<Rational> express_in_basis(const std::vector<HomPoly>& basis, const HomPoly& target, bool* ok);
/// Equality of spans.
bool same_span(const std::vector<HomPoly>& a, const std::vector<HomPoly>& b);

/// Parse "X^3 - 2X^2Y + ..." style polynomials in X, Y (d = 2).
HomPoly parse_xy(const std::string& s);
std::string to_string(const HomPoly& p);

}  // namespace mes
