#include "dyck/bigfloat.hpp"

#include <cstdlib>
#include <stdexcept>

namespace dyck {

Real::Real(mpfr_prec_t bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}

Real::Real(mpfr_prec_t bits, double v) {
  mpfr_init2(v_, bits);
  mpfr_set_d(v_, v, MPFR_RNDN);
}

Real::Real(mpfr_prec_t bits, const mpq_class& q, mpfr_rnd_t rnd) {
  mpfr_init2(v_, bits);
  mpfr_set_q(v_, q.get_mpq_t(), rnd);
}

Real::Real(const Real& other) {
  mpfr_init2(v_, other.precision());
  mpfr_set(v_, other.v_, MPFR_RNDN);
}

Real::Real(Real&& other) noexcept {
  mpfr_init2(v_, other.precision());
  mpfr_swap(v_, other.v_);
}

Real& Real::operator=(const Real& other) {
  if (this != &other) {
    mpfr_set_prec(v_, other.precision());
    mpfr_set(v_, other.v_, MPFR_RNDN);
  }
  return *this;
}

Real& Real::operator=(Real&& other) noexcept {
  mpfr_swap(v_, other.v_);
  return *this;
}

Real::~Real() { mpfr_clear(v_); }

Real Real::pi(mpfr_prec_t bits) {
  Real r(bits);
  mpfr_const_pi(r.v_, MPFR_RNDN);
  return r;
}

std::string Real::to_string(int digits, mpfr_rnd_t rnd) const {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  if (mpfr_zero_p(v_)) return "0";
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<size_t>(digits), v_, rnd);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant[0] == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  // value = 0.mant * 10^exp10
  std::string out;
  if (exp10 <= 0) {
    out = "0." + std::string(static_cast<size_t>(-exp10), '0') + mant;
  } else if (static_cast<size_t>(exp10) >= mant.size()) {
    out = mant + std::string(static_cast<size_t>(exp10) - mant.size(), '0');
  } else {
    out = mant.substr(0, static_cast<size_t>(exp10)) + "." + mant.substr(static_cast<size_t>(exp10));
  }
  return sign + out;
}

namespace {

Real binary(const Real& a, const Real& b, int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t)) {
  Real r(std::max(a.precision(), b.precision()));
  op(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}

Real unary(const Real& a, int (*op)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) {
  Real r(a.precision());
  op(r.get(), a.get(), MPFR_RNDN);
  return r;
}

}  // namespace

Real operator+(const Real& a, const Real& b) { return binary(a, b, mpfr_add); }
Real operator-(const Real& a, const Real& b) { return binary(a, b, mpfr_sub); }
Real operator*(const Real& a, const Real& b) { return binary(a, b, mpfr_mul); }
Real operator/(const Real& a, const Real& b) { return binary(a, b, mpfr_div); }
Real operator-(const Real& a) { return unary(a, mpfr_neg); }
Real operator+(const Real& a, double b) { return a + Real(a.precision(), b); }
Real operator-(const Real& a, double b) { return a - Real(a.precision(), b); }
Real operator*(const Real& a, double b) { return a * Real(a.precision(), b); }
Real operator/(const Real& a, double b) { return a / Real(a.precision(), b); }
Real operator-(double a, const Real& b) { return Real(b.precision(), a) - b; }
Real operator/(double a, const Real& b) { return Real(b.precision(), a) / b; }

Real sqrt(const Real& x) { return unary(x, mpfr_sqrt); }
Real atan(const Real& x) { return unary(x, mpfr_atan); }
Real tan(const Real& x) { return unary(x, mpfr_tan); }
Real sin(const Real& x) { return unary(x, mpfr_sin); }
Real cos(const Real& x) { return unary(x, mpfr_cos); }
Real exp(const Real& x) { return unary(x, mpfr_exp); }
Real cosh(const Real& x) { return unary(x, mpfr_cosh); }
Real tanh(const Real& x) { return unary(x, mpfr_tanh); }
Real atanh(const Real& x) { return unary(x, mpfr_atanh); }
Real acosh(const Real& x) { return unary(x, mpfr_acosh); }

std::string round_interval(const Real& lo, const Real& hi, int digits) {
  std::string a = lo.to_string(digits);
  std::string b = hi.to_string(digits);
  return a == b ? a : std::string{};
}

}  // namespace dyck
