#pragma once

#include <mpfr.h>

#include <gmpxx.h>

#include <string>

namespace dyck {

/// RAII wrapper around an MPFR value. Every operation is correctly rounded
/// to nearest at the precision of the left operand.
class Real {
 public:
  explicit Real(mpfr_prec_t bits);
  Real(mpfr_prec_t bits, double v);
  Real(mpfr_prec_t bits, const mpq_class& q, mpfr_rnd_t rnd = MPFR_RNDN);
  Real(const Real& other);
  Real(Real&& other) noexcept;
  Real& operator=(const Real& other);
  Real& operator=(Real&& other) noexcept;
  ~Real();

  mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
  mpfr_srcptr get() const { return v_; }
  mpfr_ptr get() { return v_; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

  /// `digits` significant decimal digits, fixed notation.
  std::string to_string(int digits, mpfr_rnd_t rnd = MPFR_RNDN) const;

  static Real pi(mpfr_prec_t bits);

  friend Real operator+(const Real& a, const Real& b);
  friend Real operator-(const Real& a, const Real& b);
  friend Real operator*(const Real& a, const Real& b);
  friend Real operator/(const Real& a, const Real& b);
  friend Real operator-(const Real& a);
  friend Real operator+(const Real& a, double b);
  friend Real operator-(const Real& a, double b);
  friend Real operator*(const Real& a, double b);
  friend Real operator/(const Real& a, double b);
  friend Real operator-(double a, const Real& b);
  friend Real operator/(double a, const Real& b);

 private:
  mpfr_t v_;
};

Real sqrt(const Real& x);
Real atan(const Real& x);
Real tan(const Real& x);
Real sin(const Real& x);
Real cos(const Real& x);
Real exp(const Real& x);
Real cosh(const Real& x);
Real tanh(const Real& x);
Real atanh(const Real& x);
Real acosh(const Real& x);

/// Rounds the closed interval [lo, hi] to `digits` significant digits.
/// Returns an empty string when the two ends round differently.
std::string round_interval(const Real& lo, const Real& hi, int digits);

}  // namespace dyck
