#include "gasdyn/shock_trace.hpp"

#include <cmath>

#include "gasdyn/errors.hpp"

namespace gasdyn::scenarios {

namespace {

struct Point {
  gas::ThermoState ahead, behind;
  double xi;
  double r_prime, s_prime;  // d/da of the ahead invariants
};

// Solve the shock relations at strength a.  The stationary side fixes
// (u1, p1), the isentropic side fixes m0; everything else follows:
//   m1 = m0 f(a),  z1 = ((d+1) p1 / m1^2)^(1/(d+1)),  z0 = z1 / a,
//   u0 = u1 +- m0 z0 g(a),  xi = -+ m0 z0^d h(a).
Point solve_point(const ShockPathSpec& spec, double a, const gas::GasModel& g) {
  const double d = g.d;
  const double sgn = spec.family == waves::CharFamily::backward ? 1.0 : -1.0;
  const double f = waves::hugoniot_f(a, d);
  const auto [gh_g, gh_h] = waves::hugoniot_gh(a, d);

  const double m1 = spec.m0 * f;
  const double z1 = std::pow((d + 1.0) * spec.p1 / (m1 * m1), 1.0 / (d + 1.0));
  const double z0 = z1 / a;
  const double u0 = spec.u1 + sgn * spec.m0 * z0 * gh_g;
  const double xi = -sgn * spec.m0 * std::pow(z0, d) * gh_h;
  if (xi == 0.0)
    throw numerical_error("shock trace: zero propagation speed is not a shock");

  // chain rule through the closed forms; z1 ~ f^(-2/(d+1))
  const double fp = waves::hugoniot_f_prime(a, d);
  const double gp = waves::hugoniot_g_prime(a, d);
  const double z1p = -2.0 / (d + 1.0) * z1 * fp / f;
  const double z0p = z0 * (z1p / z1 - 1.0 / a);
  const double u0p = sgn * spec.m0 * (z0p * gh_g + z0 * gp);

  Point pt;
  pt.ahead = {z0, u0, spec.m0};
  pt.behind = {z1, spec.u1, m1};
  pt.xi = xi;
  pt.r_prime = u0p - spec.m0 * z0p;
  pt.s_prime = u0p + spec.m0 * z0p;
  return pt;
}

double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive(const std::function<double(double)>& w, double a, double b,
                double fa, double fm, double fb, double whole, double tol,
                int depth) {
  const double m = 0.5 * (a + b);
  const double fl = w(0.5 * (a + m)), fr = w(0.5 * (m + b));
  const double left = simpson(a, m, fa, fl, fm);
  const double right = simpson(m, b, fm, fr, fb);
  if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive(w, a, m, fa, fl, fm, left, 0.5 * tol, depth - 1) +
         adaptive(w, m, b, fm, fr, fb, right, 0.5 * tol, depth - 1);
}

double integrate(const std::function<double(double)>& w, double a, double b,
                 double tol) {
  const double fa = w(a), fb = w(b), fm = w(0.5 * (a + b));
  return adaptive(w, a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), tol, 40);
}

}  // namespace

ShockTrace trace_single_shock(const ShockPathSpec& spec, const gas::GasModel& g) {
  if (!spec.x || !spec.dxda)
    throw config_error("shock trace: path x(a) and its slope are required");
  if (!(spec.m0 > 0.0) || !(spec.p1 > 0.0))
    throw config_error("shock trace: m0 and p1 must be positive");
  if (spec.samples < 2) throw config_error("shock trace: need at least 2 samples");
  if (!(spec.quad_tol > 0.0)) throw config_error("shock trace: quad_tol must be positive");

  ShockTrace out;
  double a_lo = spec.a_lo, a_hi = spec.a_hi;
  const auto [dom_lo, dom_hi] = waves::hugoniot_domain(g.d);
  // the compressive branch lives on (1, d^(1/(d-1))); clip and say so
  const double lo_min = 1.0 + 1e-9 * (dom_hi - 1.0);
  const double hi_max = dom_hi - 1e-9 * (dom_hi - 1.0);
  if (a_lo < lo_min || a_hi > hi_max) {
    a_lo = std::max(a_lo, lo_min);
    a_hi = std::min(a_hi, hi_max);
    out.truncated_reason = "a-range clipped to the admissible strength window";
  }
  (void)dom_lo;
  if (!(a_lo < a_hi))
    throw hypothesis_error("shock trace: parameterization requires strictly varying a");

  auto dtda = [&](double a) {
    return spec.dxda(a) / solve_point(spec, a, g).xi;
  };

  out.samples.resize(static_cast<std::size_t>(spec.samples));
  double t = spec.t0;
  double prev_a = a_lo;
  int time_sign = 0;
  for (int i = 0; i < spec.samples; ++i) {
    const double a = a_lo + (a_hi - a_lo) * i / (spec.samples - 1);
    const Point pt = solve_point(spec, a, g);
    if (i > 0) t += integrate(dtda, prev_a, a, spec.quad_tol / spec.samples);
    prev_a = a;

    const double xp = spec.dxda(a);
    const double c0 = pt.ahead.m * std::pow(pt.ahead.z, g.d);
    // along the path, dr = r_x (1 + c/xi) dx and ds = s_x (1 - c/xi) dx
    const double r_x = pt.r_prime / (xp * (1.0 + c0 / pt.xi));
    const double s_x = pt.s_prime / (xp * (1.0 - c0 / pt.xi));

    auto& smp = out.samples[static_cast<std::size_t>(i)];
    smp = {a, spec.x(a), t, pt.ahead, pt.behind, pt.xi, r_x, s_x};
    out.max_abs_rx = std::max(out.max_abs_rx, std::abs(r_x));
    out.max_abs_sx = std::max(out.max_abs_sx, std::abs(s_x));

    if (i > 0) {
      const double dt = t - out.samples[static_cast<std::size_t>(i - 1)].t;
      const int sgn = dt > 0.0 ? 1 : dt < 0.0 ? -1 : 0;
      if (sgn == 0 || (time_sign != 0 && sgn != time_sign))
        throw hypothesis_error("shock trace: time is not monotone along the path");
      time_sign = sgn;
    }
  }
  out.gradients_bounded = out.max_abs_rx <= spec.focusing_bound &&
                          out.max_abs_sx <= spec.focusing_bound;
  return out;
}

}  // namespace gasdyn::scenarios
