#pragma once

#include "dyck/bigfloat.hpp"

#include <gmpxx.h>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dyck {

/// Closed interval with outward-rounded MPFR endpoints.
class Interval {
 public:
  Interval(Real lo, Real hi);
  static Interval exact(mpfr_prec_t bits, const mpq_class& q);
  static Interval pi(mpfr_prec_t bits);

  const Real& lo() const { return lo_; }
  const Real& hi() const { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }
  double mid() const { return 0.5 * (lo_.to_double() + hi_.to_double()); }
  bool contains_zero() const;

  friend Interval operator+(const Interval& a, const Interval& b);
  friend Interval operator-(const Interval& a, const Interval& b);
  friend Interval operator*(const Interval& a, const Interval& b);
  friend Interval operator/(const Interval& a, const Interval& b);

  /// Applies an increasing function with directed rounding at both ends.
  Interval map_increasing(int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) const;

 private:
  Real lo_;
  Real hi_;
};

Interval sqrt(const Interval& x);
Interval atan(const Interval& x);
Interval tan(const Interval& x);   // valid on (-pi/2, pi/2)
Interval acosh(const Interval& x);
Interval cosh(const Interval& x);  // valid on x >= 0
Interval tanh(const Interval& x);
Interval atanh(const Interval& x);
Interval exp(const Interval& x);

class FieldMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Exact element a + b*sqrt(d) of the real quadratic field Q(sqrt(d)).
class QuadraticNumber {
 public:
  QuadraticNumber(mpq_class a, mpq_class b, long d);
  static QuadraticNumber rational(mpq_class a, long d) { return {std::move(a), 0, d}; }

  const mpq_class& a() const { return a_; }
  const mpq_class& b() const { return b_; }
  long d() const { return d_; }

  QuadraticNumber conj() const { return {a_, -b_, d_}; }
  /// Field norm a^2 - d b^2.
  mpq_class norm() const { return a_ * a_ - d_ * b_ * b_; }
  bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
  int sign() const;

  Interval enclose(mpfr_prec_t bits) const;
  double to_double() const;
  /// Correctly rounded to `digits` significant digits.
  std::string evaluate(int digits) const;
  /// Human-readable radical form, e.g. "(1+sqrt(19))/9".
  std::string exact_form() const;

  friend QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y);
  friend QuadraticNumber operator-(const QuadraticNumber& x);
  friend bool operator==(const QuadraticNumber& x, const QuadraticNumber& y);

 private:
  mpq_class a_;
  mpq_class b_;
  long d_;
};

bool is_square_free(long d);

enum class QuadOp { add, sub, mul, div, neg, conj };
QuadraticNumber quad_arith(const QuadraticNumber& x, const QuadraticNumber& y, QuadOp op);

/// sqrt of a positive quadratic radicand, e.g. sqrt(169 - 38 sqrt(19)).
Interval sqrt_enclose(const QuadraticNumber& radicand, mpfr_prec_t bits);

/// Rounds an interval-valued evaluator to `digits` significant digits,
/// raising the working precision until both endpoints agree.
std::string evaluate_digits(const std::function<Interval(mpfr_prec_t)>& f, int digits);

// Closed-form pieces of the extremal surface.
QuadraticNumber h_squared();        // (8 - sqrt 19)/72
QuadraticNumber cos_vartheta();     // (1 + sqrt 19)/9
QuadraticNumber area_radicand();    // 169 - 38 sqrt 19
QuadraticNumber ell_cosh_half();    // (5 + sqrt 17)/2
QuadraticNumber hex_area_squared(); // h^2 (1 - 4 h^2)

Interval h_enclose(mpfr_prec_t bits);
Interval theta_enclose(mpfr_prec_t bits);
Interval alpha_enclose(mpfr_prec_t bits);
Interval delta_enclose(mpfr_prec_t bits);
Interval area_extremal_enclose(mpfr_prec_t bits);
Interval ell_enclose(mpfr_prec_t bits);

struct NamedConstant {
  std::string name;
  std::string value;                  // rounded decimal
  std::optional<std::string> exact;   // radical form when one exists
  std::optional<std::string> reported;  // decimal printed in the source text
  double approx = 0.0;
};

/// Registry names in publication order.
const std::vector<std::string>& constant_names();
NamedConstant named_constant(const std::string& name, int digits);

struct SurfaceParameters {
  double alpha = 0.0;
  double theta = 0.0;
  double h = 0.0;
  double delta = 0.0;
  double short_side = 1.0 / 3.0;
  double ell = 0.0;
};

/// Parameters of the extremal surface, evaluated at 256 bits and rounded once.
SurfaceParameters paper_parameters();
/// Parameters rebuilt from a given h via 2h = sin(theta/2).
SurfaceParameters parameters_from_h(double h);

struct Residual {
  std::string relation;
  double value = 0.0;
  bool flagged = false;
};

std::vector<Residual> check_defining_relations(const SurfaceParameters& p, double tol = 1e-12);

}  // namespace dyck
