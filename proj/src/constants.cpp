#include "dyck/constants.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

namespace dyck {

namespace {

using BinOp = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

Real directed(const Real& a, const Real& b, BinOp op, mpfr_rnd_t rnd) {
  Real r(std::max(a.precision(), b.precision()));
  op(r.get(), a.get(), b.get(), rnd);
  return r;
}

Real min_of(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) ? a : b; }
Real max_of(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) ? a : b; }

}  // namespace

Interval::Interval(Real lo, Real hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  if (mpfr_greater_p(lo_.get(), hi_.get())) throw std::logic_error("inverted interval");
}

Interval Interval::exact(mpfr_prec_t bits, const mpq_class& q) {
  return {Real(bits, q, MPFR_RNDD), Real(bits, q, MPFR_RNDU)};
}

Interval Interval::pi(mpfr_prec_t bits) {
  Real lo(bits), hi(bits);
  mpfr_const_pi(lo.get(), MPFR_RNDD);
  mpfr_const_pi(hi.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

bool Interval::contains_zero() const { return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0; }

Interval operator+(const Interval& a, const Interval& b) {
  return {directed(a.lo_, b.lo_, mpfr_add, MPFR_RNDD), directed(a.hi_, b.hi_, mpfr_add, MPFR_RNDU)};
}

Interval operator-(const Interval& a, const Interval& b) {
  return {directed(a.lo_, b.hi_, mpfr_sub, MPFR_RNDD), directed(a.hi_, b.lo_, mpfr_sub, MPFR_RNDU)};
}

Interval operator*(const Interval& a, const Interval& b) {
  const Real* xs[2] = {&a.lo_, &a.hi_};
  const Real* ys[2] = {&b.lo_, &b.hi_};
  std::optional<Real> lo, hi;
  for (const Real* x : xs) {
    for (const Real* y : ys) {
      Real d = directed(*x, *y, mpfr_mul, MPFR_RNDD);
      Real u = directed(*x, *y, mpfr_mul, MPFR_RNDU);
      lo = lo ? min_of(*lo, d) : d;
      hi = hi ? max_of(*hi, u) : u;
    }
  }
  return {*lo, *hi};
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
  Real one(b.precision(), 1.0);
  Interval inv(directed(one, b.hi_, mpfr_div, MPFR_RNDD), directed(one, b.lo_, mpfr_div, MPFR_RNDU));
  return a * inv;
}

Interval Interval::map_increasing(int (*f)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t)) const {
  Real lo(precision()), hi(precision());
  f(lo.get(), lo_.get(), MPFR_RNDD);
  f(hi.get(), hi_.get(), MPFR_RNDU);
  return {std::move(lo), std::move(hi)};
}

Interval sqrt(const Interval& x) {
  if (mpfr_sgn(x.lo().get()) < 0) throw std::domain_error("sqrt of negative interval");
  return x.map_increasing(mpfr_sqrt);
}
Interval atan(const Interval& x) { return x.map_increasing(mpfr_atan); }
Interval tan(const Interval& x) { return x.map_increasing(mpfr_tan); }
Interval acosh(const Interval& x) { return x.map_increasing(mpfr_acosh); }
Interval cosh(const Interval& x) {
  if (mpfr_sgn(x.lo().get()) < 0) throw std::domain_error("cosh enclosure expects x >= 0");
  return x.map_increasing(mpfr_cosh);
}
Interval tanh(const Interval& x) { return x.map_increasing(mpfr_tanh); }
Interval atanh(const Interval& x) { return x.map_increasing(mpfr_atanh); }
Interval exp(const Interval& x) { return x.map_increasing(mpfr_exp); }

// ---------------------------------------------------------------------------
// QuadraticNumber
// ---------------------------------------------------------------------------

bool is_square_free(long d) {
  if (d < 2) return false;
  for (long p = 2; p * p <= d; ++p) {
    if (d % (p * p) == 0) return false;
  }
  return true;
}

QuadraticNumber::QuadraticNumber(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
  if (!is_square_free(d)) throw std::invalid_argument("quadratic field base must be square-free and > 1");
  a_.canonicalize();
  b_.canonicalize();
}

int QuadraticNumber::sign() const {
  // sign of a + b sqrt d, decided exactly
  int sa = sgn(a_), sb = sgn(b_);
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with d b^2
  mpq_class lhs = a_ * a_, rhs = d_ * b_ * b_;
  int c = cmp(lhs, rhs);
  if (c == 0) return 0;
  return c > 0 ? sa : sb;
}

Interval QuadraticNumber::enclose(mpfr_prec_t bits) const {
  Interval root = sqrt(Interval::exact(bits, mpq_class(d_)));
  return Interval::exact(bits, a_) + Interval::exact(bits, b_) * root;
}

double QuadraticNumber::to_double() const { return enclose(128).mid(); }

std::string QuadraticNumber::evaluate(int digits) const {
  return evaluate_digits([this](mpfr_prec_t bits) { return enclose(bits); }, digits);
}

std::string QuadraticNumber::exact_form() const {
  std::ostringstream os;
  // common denominator form (p + q sqrt d)/r
  mpz_class den = lcm(a_.get_den(), b_.get_den());
  mpz_class p = a_.get_num() * (den / a_.get_den());
  mpz_class q = b_.get_num() * (den / b_.get_den());
  std::ostringstream num;
  if (q == 0) {
    num << p;
  } else {
    if (p != 0) num << p << (q > 0 ? "+" : "-");
    else if (q < 0) num << "-";
    mpz_class aq = abs(q);
    if (aq != 1) num << aq << "*";
    num << "sqrt(" << d_ << ")";
  }
  if (den == 1) return num.str();
  os << "(" << num.str() << ")/" << den;
  return os.str();
}

namespace {

void require_same_field(const QuadraticNumber& x, const QuadraticNumber& y) {
  if (x.d() != y.d()) {
    throw FieldMismatch("operands live in Q(sqrt " + std::to_string(x.d()) + ") and Q(sqrt " +
                        std::to_string(y.d()) + ")");
  }
}

}  // namespace

QuadraticNumber operator+(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_field(x, y);
  return {x.a_ + y.a_, x.b_ + y.b_, x.d_};
}

QuadraticNumber operator-(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_field(x, y);
  return {x.a_ - y.a_, x.b_ - y.b_, x.d_};
}

QuadraticNumber operator*(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_field(x, y);
  return {x.a_ * y.a_ + x.d_ * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, x.d_};
}

QuadraticNumber operator/(const QuadraticNumber& x, const QuadraticNumber& y) {
  require_same_field(x, y);
  if (y.is_zero()) throw std::domain_error("division by zero in Q(sqrt d)");
  mpq_class n = y.norm();
  QuadraticNumber num = x * y.conj();
  return {num.a_ / n, num.b_ / n, x.d_};
}

QuadraticNumber operator-(const QuadraticNumber& x) { return {-x.a_, -x.b_, x.d_}; }

bool operator==(const QuadraticNumber& x, const QuadraticNumber& y) {
  return x.d_ == y.d_ && x.a_ == y.a_ && x.b_ == y.b_;
}

QuadraticNumber quad_arith(const QuadraticNumber& x, const QuadraticNumber& y, QuadOp op) {
  switch (op) {
    case QuadOp::add: return x + y;
    case QuadOp::sub: return x - y;
    case QuadOp::mul: return x * y;
    case QuadOp::div: return x / y;
    case QuadOp::neg: return -x;
    case QuadOp::conj: return x.conj();
  }
  throw std::logic_error("unknown quadratic operation");
}

Interval sqrt_enclose(const QuadraticNumber& radicand, mpfr_prec_t bits) {
  if (radicand.sign() < 0) throw std::domain_error("negative radicand " + radicand.exact_form());
  return sqrt(radicand.enclose(bits));
}

std::string evaluate_digits(const std::function<Interval(mpfr_prec_t)>& f, int digits) {
  if (digits < 1) throw std::invalid_argument("digits must be positive");
  auto bits = static_cast<mpfr_prec_t>(digits * 3.33) + 64;
  for (int attempt = 0; attempt < 12; ++attempt, bits *= 2) {
    Interval v = f(bits);
    std::string s = round_interval(v.lo(), v.hi(), digits);
    if (!s.empty()) return s;
  }
  throw std::runtime_error("could not certify rounding (value too close to a rounding boundary)");
}

// ---------------------------------------------------------------------------
// Closed forms
// ---------------------------------------------------------------------------

QuadraticNumber h_squared() { return {mpq_class(8, 72), mpq_class(-1, 72), 19}; }
QuadraticNumber cos_vartheta() { return {mpq_class(1, 9), mpq_class(1, 9), 19}; }
QuadraticNumber area_radicand() { return {169, -38, 19}; }
QuadraticNumber ell_cosh_half() { return {mpq_class(5, 2), mpq_class(1, 2), 17}; }
QuadraticNumber hex_area_squared() {
  QuadraticNumber u = h_squared();
  return u * (QuadraticNumber::rational(1, 19) - QuadraticNumber::rational(4, 19) * u);
}

Interval h_enclose(mpfr_prec_t bits) { return sqrt_enclose(h_squared(), bits); }

Interval theta_enclose(mpfr_prec_t bits) {
  // tan^2 theta = 36 h^2 = (8 - sqrt 19)/2
  QuadraticNumber t2 = QuadraticNumber::rational(36, 19) * h_squared();
  return atan(sqrt_enclose(t2, bits));
}

Interval alpha_enclose(mpfr_prec_t bits) {
  return (Interval::pi(bits) - theta_enclose(bits)) * Interval::exact(bits, mpq_class(1, 2));
}

Interval delta_enclose(mpfr_prec_t bits) { return Interval::exact(bits, mpq_class(1, 2)) - h_enclose(bits); }

Interval area_extremal_enclose(mpfr_prec_t bits) {
  return Interval::exact(bits, 1) + sqrt_enclose(area_radicand(), bits) / Interval::exact(bits, 12);
}

Interval ell_enclose(mpfr_prec_t bits) {
  return Interval::exact(bits, 2) * acosh(ell_cosh_half().enclose(bits));
}

namespace {

struct RegistryEntry {
  std::function<Interval(mpfr_prec_t)> eval;
  std::optional<std::string> exact;
  std::optional<std::string> reported;
};

const std::map<std::string, RegistryEntry>& registry() {
  static const std::map<std::string, RegistryEntry> table = [] {
    std::map<std::string, RegistryEntry> t;
    auto q = [](mpfr_prec_t b, long n, long d = 1) { return Interval::exact(b, mpq_class(n, d)); };
    t["h"] = {h_enclose, "sqrt((8-sqrt(19))/72)", "0.2248796"};
    t["theta"] = {theta_enclose, "arctan(sqrt((8-sqrt(19))/2))", std::nullopt};
    t["alpha"] = {alpha_enclose, "(pi-arctan(sqrt((8-sqrt(19))/2)))/2", std::nullopt};
    t["delta"] = {delta_enclose, "1/2-sqrt((8-sqrt(19))/72)", std::nullopt};
    t["cos_vartheta"] = {[](mpfr_prec_t b) { return cos_vartheta().enclose(b); }, cos_vartheta().exact_form(),
                         std::nullopt};
    t["area_extremal"] = {area_extremal_enclose, "1+sqrt(169-38*sqrt(19))/12", "1.15279"};
    t["systolic_ratio_dyck"] = {[q](mpfr_prec_t b) {
                                  return q(b, 12) / (q(b, 12) + sqrt_enclose(area_radicand(), b));
                                },
                                "12/(12+sqrt(169-38*sqrt(19)))", "0.86745"};
    t["ell"] = {ell_enclose, "2*arccosh((5+sqrt(17))/2)", "4.397146"};
    t["voronoi_floor"] = {[](mpfr_prec_t b) { return Interval::pi(b) * h_squared().enclose(b); },
                          "pi*(8-sqrt(19))/72", "0.15887"};
    t["loewner"] = {[q](mpfr_prec_t b) { return q(b, 2) / sqrt(q(b, 3)); }, "2/sqrt(3)", std::nullopt};
    t["pu"] = {[q](mpfr_prec_t b) { return Interval::pi(b) / q(b, 2); }, "pi/2", std::nullopt};
    t["bavard"] = {[q](mpfr_prec_t b) { return Interval::pi(b) / (q(b, 2) * sqrt(q(b, 2))); }, "pi/(2*sqrt(2))",
                   std::nullopt};
    t["genus2_ratio"] = {[](mpfr_prec_t b) {
                           return QuadraticNumber(mpq_class(1, 3), mpq_class(1, 3), 2).enclose(b);
                         },
                         "(sqrt(2)+1)/3", "0.80473"};
    t["hex_area_min"] = {[](mpfr_prec_t b) { return sqrt_enclose(hex_area_squared(), b); },
                         "sqrt((8-sqrt(19))/72*(1-4*(8-sqrt(19))/72))", std::nullopt};
    return t;
  }();
  return table;
}

}  // namespace

const std::vector<std::string>& constant_names() {
  static const std::vector<std::string> names = {
      "h",   "theta",         "alpha",  "delta", "cos_vartheta", "area_extremal", "systolic_ratio_dyck",
      "ell", "voronoi_floor", "loewner", "pu",   "bavard",       "genus2_ratio",  "hex_area_min"};
  return names;
}

NamedConstant named_constant(const std::string& name, int digits) {
  auto it = registry().find(name);
  if (it == registry().end()) throw std::out_of_range("unknown constant '" + name + "'");
  NamedConstant c;
  c.name = name;
  c.value = evaluate_digits(it->second.eval, digits);
  c.exact = it->second.exact;
  c.reported = it->second.reported;
  c.approx = it->second.eval(128).mid();
  return c;
}

SurfaceParameters paper_parameters() {
  constexpr mpfr_prec_t bits = 256;
  SurfaceParameters p;
  p.h = h_enclose(bits).mid();
  p.theta = theta_enclose(bits).mid();
  p.alpha = alpha_enclose(bits).mid();
  p.delta = delta_enclose(bits).mid();
  p.short_side = 1.0 / 3.0;
  p.ell = ell_enclose(bits).mid();
  return p;
}

SurfaceParameters parameters_from_h(double h) {
  SurfaceParameters p;
  p.h = h;
  p.theta = 2.0 * std::asin(2.0 * h);
  p.alpha = 0.5 * (std::numbers::pi - p.theta);
  p.delta = 0.5 - h;
  p.short_side = 1.0 / 3.0;
  p.ell = ell_enclose(128).mid();
  return p;
}

std::vector<Residual> check_defining_relations(const SurfaceParameters& p, double tol) {
  const double half_theta = 0.5 * p.theta;
  std::vector<Residual> out = {
      {"2h - sin(theta/2)", 2.0 * p.h - std::sin(half_theta)},
      {"6h - tan(theta)", 6.0 * p.h - std::tan(p.theta)},
      {"h - cos(alpha)/2", p.h - 0.5 * std::cos(p.alpha)},
      {"delta - (1/2 - h)", p.delta - (0.5 - p.h)},
      {"tan^2(theta/2) - 4h^2/(1-4h^2)",
       std::tan(half_theta) * std::tan(half_theta) - 4.0 * p.h * p.h / (1.0 - 4.0 * p.h * p.h)},
  };
  for (auto& r : out) r.flagged = !(std::abs(r.value) <= tol);
  return out;
}

}  // namespace dyck
