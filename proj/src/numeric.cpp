#include "mes/numeric.hpp"

#include <cmath>
#include <stdexcept>

namespace mes {

namespace {
unsigned g_precision_bits = 256 + 32;
}

void set_working_precision(unsigned bits) {
  if (bits < 32) throw std::invalid_argument("precision too small");
  g_precision_bits = bits;
  // Boost sizes variable-precision numbers by decimal digits.
  unsigned digits10 = static_cast<unsigned>(std::ceil(bits * 0.30102999566398120)) + 1;
  Real::default_precision(digits10);
}

unsigned working_precision() { return g_precision_bits; }

namespace {
[[maybe_unused]] const bool g_precision_initialized = (set_working_precision(256 + 32), true);
}

Real to_real(const Rational& q) {
  Real r;
  mpfr_set_q(r.backend().data(), q.get_mpq_t(), MPFR_RNDN);
  return r;
}

Real to_real(const Integer& z) {
  Real r;
  mpfr_set_z(r.backend().data(), z.get_mpz_t(), MPFR_RNDN);
  return r;
}

Real real_pi() {
  Real r;
  mpfr_const_pi(r.backend().data(), MPFR_RNDN);
  return r;
}

Real pow2(long e) {
  Real r(1);
  mpfr_mul_2si(r.backend().data(), r.backend().data(), e, MPFR_RNDN);
  return r;
}

Integer round_to_integer(const Real& x) {
  Integer z;
  mpfr_get_z(z.get_mpz_t(), x.backend().data(), MPFR_RNDN);
  return z;
}

std::string to_decimal(const Real& x, int digits) {
  return x.str(digits, std::ios_base::scientific);
}

Rational binomial(long n, long k) {
  if (k < 0 || n < k) return Rational(0);
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return Rational(r);
}

Integer factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial of negative number");
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
  return r;
}

Real abs(const Complex& z) { return boost::multiprecision::sqrt(z.re * z.re + z.im * z.im); }

Complex conj(const Complex& z) { return Complex(z.re, -z.im); }

Complex i_pow(long n) {
  switch (((n % 4) + 4) % 4) {
    case 0: return Complex(Real(1), Real(0));
    case 1: return Complex(Real(0), Real(1));
    case 2: return Complex(Real(-1), Real(0));
    default: return Complex(Real(0), Real(-1));
  }
}

Complex two_pi_i_pow(long n) {
  Real two_pi = 2 * real_pi();
  Real mag = boost::multiprecision::pow(two_pi, Real(n));
  return i_pow(n) * mag;
}

}  // namespace mes
