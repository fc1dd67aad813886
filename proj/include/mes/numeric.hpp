#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/mpfr.hpp>
#include <string>

namespace mes {

using Integer = mpz_class;
using Rational = mpq_class;
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Sets the precision (in bits) used for every Real created afterwards.
void set_working_precision(unsigned bits);
unsigned working_precision();

Real to_real(const Rational& q);
Real to_real(const Integer& z);
Real real_pi();
/// 2^e exactly.
Real pow2(long e);
/// Nearest integer (ties to even).
Integer round_to_integer(const Real& x);
/// Decimal rendering with the given number of significant digits.
std::string to_decimal(const Real& x, int digits);

/// num/den in canonical form.
inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

Rational binomial(long n, long k);  // 0 unless n >= k >= 0
Integer factorial(long n);

struct Complex {
  Real re;
  Real im;

  Complex() : re(0), im(0) {}
  Complex(int x) : re(x), im(0) {}  // NOLINT: lets generic code write T(0)
  Complex(Real r) : re(std::move(r)), im(0) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
  explicit Complex(const Rational& q) : re(to_real(q)), im(0) {}

  Complex& operator+=(const Complex& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Complex& operator-=(const Complex& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Complex& operator*=(const Complex& o) {
    Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  Complex& operator*=(const Real& s) {
    re *= s;
    im *= s;
    return *this;
  }
  bool is_zero() const { return re == 0 && im == 0; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
inline Complex operator*(Complex a, const Complex& b) { return a *= b; }
inline Complex operator*(Complex a, const Real& s) { return a *= s; }
inline Complex operator*(const Real& s, Complex a) { return a *= s; }
inline Complex operator*(const Complex& a, const Rational& q) { return a * to_real(q); }
inline bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

Real abs(const Complex& z);
Complex conj(const Complex& z);
/// i^n as an exact unit.
Complex i_pow(long n);
/// (2 pi i)^n for any integer n.
Complex two_pi_i_pow(long n);

}  // namespace mes

namespace mes {

// Coefficient-ring helpers used by generic series code. A prototype value supplies
// shape information (for example the truncation order of a q-series).
inline Rational ring_zero_like(const Rational&) { return Rational(0); }
inline Rational ring_one_like(const Rational&) { return Rational(1); }
inline bool ring_is_zero(const Rational& x) { return x == 0; }
inline Rational ring_scale(const Rational& x, const Rational& c) { return x * c; }

inline Complex ring_zero_like(const Complex&) { return Complex(); }
inline Complex ring_one_like(const Complex&) { return Complex(1); }
inline bool ring_is_zero(const Complex& x) { return x.is_zero(); }
inline Complex ring_scale(const Complex& x, const Rational& c) { return x * c; }
/// Max-abs style size used for numeric comparisons.
inline Real ring_size(const Complex& x) { return abs(x); }

}  // namespace mes
