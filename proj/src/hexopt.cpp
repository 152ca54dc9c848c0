#include "dyck/hexopt.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace dyck {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double degenerate_angle = 1e-6;

double bound3(const std::array<double, 3>& d, double a1, double a2, double a3) {
  return 2.0 * (d[0] * d[0] * std::tan(0.5 * a1) + d[1] * d[1] * std::tan(0.5 * a2) +
                d[2] * d[2] * std::tan(0.5 * a3));
}

struct Candidate {
  double area = INFINITY;
  double a1 = 0.0, a2 = 0.0;
  bool operator<(const Candidate& o) const { return std::tie(area, a1, a2) < std::tie(o.area, o.a1, o.a2); }
};

bool convex_at(double x, double s) {
  if (x - s <= 0.0 || x + s >= pi) return true;
  const double f = std::tan(0.5 * x);
  return std::tan(0.5 * (x - s)) + std::tan(0.5 * (x + s)) - 2.0 * f > 0.0;
}

}  // namespace

double hex_area_bound(const HexagonSpec& spec) {
  double sum = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (!(spec.d[i] > 0.0)) throw std::invalid_argument("hexagon apex distance must be positive");
    if (!(spec.alpha[i] > 0.0) || spec.alpha[i] >= pi) throw std::invalid_argument("hexagon apex angle outside (0, pi)");
    sum += spec.alpha[i];
  }
  if (std::abs(sum - pi) > 1e-12) throw std::invalid_argument("hexagon apex angles must sum to pi");
  return bound3(spec.d, spec.alpha[0], spec.alpha[1], spec.alpha[2]);
}

HexMinimum minimize_hex(const std::array<double, 3>& d, double resolution, double phase, int threads) {
  if (!(resolution > 0.0)) throw std::invalid_argument("grid resolution must be positive");
  for (double x : d)
    if (!(x > 0.0)) throw std::invalid_argument("hexagon apex distance must be positive");
  const long n = static_cast<long>(std::ceil(pi / resolution));
  const bool symmetric = d[0] == d[2];
  if (threads <= 0) threads = std::max(1u, std::thread::hardware_concurrency());

  struct Partial {
    Candidate best;
    long points = 0, excluded = 0;
    bool dominated = true;
  };
  std::vector<Partial> parts(threads);
  auto work = [&](int t) {
    Partial& P = parts[t];
    for (long i = t; i <= n; i += threads) {
      const double a1 = (i + phase) * resolution;
      for (long j = 0; j <= n; ++j) {
        const double a2 = (j + phase) * resolution;
        const double a3 = pi - a1 - a2;
        if (a3 <= 0.0) break;
        if (a1 <= degenerate_angle || a2 <= degenerate_angle || a3 <= degenerate_angle) {
          ++P.excluded;
          continue;
        }
        ++P.points;
        const double v = bound3(d, a1, a2, a3);
        if (symmetric) {
          const double m = 0.5 * (a1 + a3);
          if (bound3(d, m, a2, m) > v * (1.0 + 1e-13)) P.dominated = false;
        }
        Candidate c{v, a1, a2};
        if (c < P.best) P.best = c;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
  for (auto& th : pool) th.join();

  HexMinimum r;
  Candidate best;
  r.symmetric_reduction = symmetric;
  for (const Partial& P : parts) {
    if (P.best < best) best = P.best;
    r.grid_points += P.points;
    r.degenerate_excluded += P.excluded;
    r.symmetric_reduction = r.symmetric_reduction && P.dominated;
  }
  if (!std::isfinite(best.area)) throw std::runtime_error("hexagon grid has no feasible point");
  r.grid_alpha = {best.a1, best.a2, pi - best.a1 - best.a2};
  r.grid_area = best.area;

  // local refinement: 21x21 stencil, step shrinks tenfold
  bool convex = true;
  for (double s = resolution; s >= 1e-10; s *= 0.1) {
    for (int pass = 0; pass < 4; ++pass) {
      Candidate c = best;
      for (int i = -10; i <= 10; ++i)
        for (int j = -10; j <= 10; ++j) {
          const double a1 = best.a1 + i * s, a2 = best.a2 + j * s, a3 = pi - a1 - a2;
          if (a1 <= degenerate_angle || a2 <= degenerate_angle || a3 <= degenerate_angle) continue;
          Candidate k{bound3(d, a1, a2, a3), a1, a2};
          if (k < c) c = k;
        }
      const bool moved = c.a1 != best.a1 || c.a2 != best.a2;
      best = c;
      const double a3 = pi - best.a1 - best.a2;
      const double probe = std::max(s, 1e-4);
      convex = convex && convex_at(best.a1, probe) && convex_at(best.a2, probe) && convex_at(a3, probe);
      if (!moved) break;
    }
  }

  if (symmetric && r.symmetric_reduction) {
    // one variable: f'(a) = 2 d1^2 / cos^2(a/2) - 2 d2^2 / sin^2(a) on (0, pi/2)
    auto fp = [&](double a) {
      const double c = std::cos(0.5 * a), s = std::sin(a);
      return 2.0 * d[0] * d[0] / (c * c) - 2.0 * d[1] * d[1] / (s * s);
    };
    double lo = degenerate_angle, hi = 0.5 * pi - degenerate_angle;
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      (fp(mid) < 0.0 ? lo : hi) = mid;
    }
    const double a = 0.5 * (lo + hi);
    Candidate c{bound3(d, a, pi - 2.0 * a, a), a, pi - 2.0 * a};
    convex = convex && convex_at(a, 1e-4) && convex_at(pi - 2.0 * a, 1e-4);
    if (c.area <= best.area) best = c;
  }

  r.alpha = {best.a1, best.a2, pi - best.a1 - best.a2};
  r.area = best.area;
  r.convexity_verified = convex;
  return r;
}

double tradeoff_area(double h) { return 2.0 * (0.5 - h) + 3.0 * h * std::sqrt(1.0 - 4.0 * h * h); }

TradeoffResult optimize_mobius_tradeoff(double lo, double hi) {
  if (!(lo < hi) || lo < 0.0 || hi > 0.25) throw std::invalid_argument("tradeoff interval must lie in [0, 1/4]");
  TradeoffResult r;
  // oracle: golden section on -A
  {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - g * (b - a), x2 = a + g * (b - a);
    double f1 = -tradeoff_area(x1), f2 = -tradeoff_area(x2);
    while (b - a > 1e-12) {
      if (f1 < f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - g * (b - a);
        f1 = -tradeoff_area(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + g * (b - a);
        f2 = -tradeoff_area(x2);
      }
    }
    r.golden_h = 0.5 * (a + b);
  }
  // derivative root, bracketed around the oracle
  auto dA = [](double h) {
    const double s = std::sqrt(1.0 - 4.0 * h * h);
    return -2.0 + 3.0 * s - 12.0 * h * h / s;
  };
  double a = std::max(lo + 1e-12, r.golden_h - 1e-3), b = std::min(hi - 1e-12, r.golden_h + 1e-3);
  if (dA(a) * dA(b) > 0.0) {
    a = lo + 1e-12;
    b = hi - 1e-12;
  }
  for (int it = 0; it < 200 && b - a > 0.0; ++it) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    ((dA(m) > 0.0) == (dA(a) > 0.0) ? a : b) = m;
  }
  r.h = 0.5 * (a + b);
  r.area = tradeoff_area(r.h);
  r.u = r.h * r.h;
  r.residual = std::abs(576.0 * r.u * r.u - 128.0 * r.u + 5.0);
  r.exact_u = h_squared().to_double();
  return r;
}

double extremal_area(const SurfaceParameters& p) {
  return 2.0 * p.delta + 3.0 * p.h * std::sqrt(1.0 - 4.0 * p.h * p.h);
}

double disk_face_bound(double h) { return pi * h * h; }
double strip_face_bound(double h, double x) { return 2.0 * h * x; }
double two_edge_face_bound(double h) { return h; }

std::vector<CaseBound> case_bounds(const SurfaceParameters& p) {
  const double area = extremal_area(p);
  const double base = 2.0 * p.delta + 2.0 * p.h;
  std::vector<CaseBound> out{
      {"case1", base + 2.0 * disk_face_bound(p.h), 0.0},
      {"case2", base + disk_face_bound(p.h), 0.0},
      {"case3", base + disk_face_bound(p.h), 0.0},
      {"case4", base + disk_face_bound(p.h), 0.0},
  };
  for (CaseBound& c : out) c.margin = c.lower_bound - area;
  return out;
}

}  // namespace dyck
