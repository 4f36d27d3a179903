#include "gasdyn/gradients.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gasdyn/errors.hpp"

namespace gasdyn::gradients {

RcLabel label_of(double strength) {
  if (strength > 0.0) return RcLabel::rarefactive;
  if (strength < 0.0) return RcLabel::compressive;
  return RcLabel::neutral;
}

GradientPair make_pair(double alpha, double beta) {
  return {alpha, beta, label_of(alpha), label_of(beta)};
}

GradientPair gradients_from_field(double u_x, double z_x, double m_x, double z,
                                  double m, const gas::GasModel& g) {
  const double cross = 2.0 * m_x * z / (g.d + 1.0);
  return make_pair(u_x + m * z_x + cross, u_x - m * z_x - cross);
}

RiccatiCoeffs riccati_coeffs(double z, double m_x, const gas::GasModel& g) {
  // k1 = (gamma+1)/(2(gamma-1)) z^(2/(gamma-1)) = (d/2) z^(d-1)
  // k2 = (gamma-1)/(gamma(gamma+1)) z m_x     = (d-1)/(d(d+1)) z m_x
  const double d = g.d;
  return {0.5 * d * std::pow(z, d - 1.0), (d - 1.0) / (d * (d + 1.0)) * z * m_x};
}

double riccati_rhs_forward(double alpha, double beta, const RiccatiCoeffs& k) {
  return k.k1 * (k.k2 * (3.0 * alpha + beta) + alpha * beta - alpha * alpha);
}

double riccati_rhs_backward(double alpha, double beta, const RiccatiCoeffs& k) {
  return k.k1 * (-k.k2 * (alpha + 3.0 * beta) + alpha * beta - beta * beta);
}

namespace {

// Linear interpolation of path coefficients with a monotone cursor.
struct PathInterp {
  std::span<const PathSample> path;
  mutable std::size_t cursor = 0;

  struct Coeffs {
    double z;
    double m_x;
    double opposite;
  };

  Coeffs at(double t) const {
    while (cursor + 2 < path.size() && t > path[cursor + 1].t) ++cursor;
    while (cursor > 0 && t < path[cursor].t) --cursor;
    const PathSample& a = path[cursor];
    const PathSample& b = path[std::min(cursor + 1, path.size() - 1)];
    const double dt = b.t - a.t;
    const double w = dt > 0.0 ? std::clamp((t - a.t) / dt, 0.0, 1.0) : 0.0;
    return {a.z + w * (b.z - a.z), a.m_x + w * (b.m_x - a.m_x),
            a.opposite + w * (b.opposite - a.opposite)};
  }
};

// Reciprocal form w = 1/value stays smooth through the pole.  With `opp` the
// opposite-family strength:
//   forward:  w' = k1 (1 - opp w - k2 (3 w + opp w^2))
//   backward: w' = k1 (1 - opp w + k2 (3 w + opp w^2))
double rhs(double t, double y, bool reciprocal, waves::CharFamily family,
           const PathInterp& interp, const gas::GasModel& g) {
  const auto co = interp.at(t);
  const RiccatiCoeffs k = riccati_coeffs(co.z, co.m_x, g);
  const double opp = co.opposite;
  if (!reciprocal) {
    return family == waves::CharFamily::forward ? riccati_rhs_forward(y, opp, k)
                                                : riccati_rhs_backward(opp, y, k);
  }
  const double k2_term = k.k2 * (3.0 * y + opp * y * y);
  if (family == waves::CharFamily::forward)
    return k.k1 * (1.0 - opp * y - k2_term);
  return k.k1 * (1.0 - opp * y + k2_term);
}

// Cash-Karp embedded 4(5) pair.
struct RkStep {
  double y5;
  double err;
  double f_end;  // derivative at (t+h, y5)
};

RkStep rk45(double t, double y, double h, double f0, bool reciprocal,
            waves::CharFamily family, const PathInterp& interp,
            const gas::GasModel& g) {
  auto f = [&](double tt, double yy) { return rhs(tt, yy, reciprocal, family, interp, g); };
  const double k1 = f0;
  const double k2 = f(t + h / 5.0, y + h * (k1 / 5.0));
  const double k3 = f(t + 3.0 * h / 10.0, y + h * (3.0 * k1 + 9.0 * k2) / 40.0);
  const double k4 =
      f(t + 3.0 * h / 5.0, y + h * (3.0 * k1 / 10.0 - 9.0 * k2 / 10.0 + 6.0 * k3 / 5.0));
  const double k5 = f(t + h, y + h * (-11.0 * k1 / 54.0 + 5.0 * k2 / 2.0 -
                                      70.0 * k3 / 27.0 + 35.0 * k4 / 27.0));
  const double k6 =
      f(t + 7.0 * h / 8.0,
        y + h * (1631.0 * k1 / 55296.0 + 175.0 * k2 / 512.0 + 575.0 * k3 / 13824.0 +
                 44275.0 * k4 / 110592.0 + 253.0 * k5 / 4096.0));
  const double y5 = y + h * (37.0 * k1 / 378.0 + 250.0 * k3 / 621.0 +
                             125.0 * k4 / 594.0 + 512.0 * k6 / 1771.0);
  const double y4 = y + h * (2825.0 * k1 / 27648.0 + 18575.0 * k3 / 48384.0 +
                             13525.0 * k4 / 55296.0 + 277.0 * k5 / 14336.0 + k6 / 4.0);
  return {y5, y5 - y4, f(t + h, y5)};
}

// Root of the cubic Hermite interpolant of w on [t0, t0+h], given a sign
// change across the step.  Returns the bracketing pair.
std::pair<double, double> hermite_root(double t0, double h, double w0, double f0,
                                       double w1, double f1, double rel_tol) {
  auto eval = [&](double theta) {
    const double t2 = theta * theta;
    const double t3 = t2 * theta;
    return (2.0 * t3 - 3.0 * t2 + 1.0) * w0 + (t3 - 2.0 * t2 + theta) * h * f0 +
           (-2.0 * t3 + 3.0 * t2) * w1 + (t3 - t2) * h * f1;
  };
  double lo = 0.0, hi = 1.0;
  double vlo = w0;
  for (int i = 0; i < 128; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double tm = t0 + mid * h;
    if ((hi - lo) * std::abs(h) <= rel_tol * std::max(std::abs(tm), 1e-300)) break;
    const double vm = eval(mid);
    if (vm == 0.0) {
      lo = hi = mid;
      break;
    }
    if ((vlo < 0.0) == (vm < 0.0)) {
      lo = mid;
      vlo = vm;
    } else {
      hi = mid;
    }
  }
  return {t0 + lo * h, t0 + hi * h};
}

}  // namespace

RiccatiTrace integrate_riccati_along(std::span<const PathSample> path, double init,
                                     waves::CharFamily family, const gas::GasModel& g,
                                     const IntegrateOptions& opt) {
  if (path.empty()) throw std::invalid_argument("integrate_riccati_along: empty path");
  for (std::size_t i = 1; i < path.size(); ++i)
    if (!(path[i].t >= path[i - 1].t))
      throw std::invalid_argument("integrate_riccati_along: path times must be non-decreasing");

  RiccatiTrace trace;
  trace.points.push_back({path.front().t, init});
  const double t_end = path.back().t;
  double t = path.front().t;
  const double span = t_end - t;
  if (span <= 0.0) return trace;

  const PathInterp interp{path};
  bool reciprocal = std::abs(init) > opt.reciprocal_switch;
  double y = reciprocal ? 1.0 / init : init;
  double h = span * opt.initial_step_fraction;
  double f0 = rhs(t, y, reciprocal, family, interp, g);
  const double w_switch_back = 2.0 / opt.reciprocal_switch;

  long steps = 0;
  const long max_steps = 20'000'000;
  while (t < t_end) {
    if (++steps > max_steps)
      throw numerical_error("integrate_riccati_along: step limit exceeded");
    h = std::min(h, t_end - t);
    if (t + h == t) {
      // Step size underflow: the right-hand side has become too stiff to
      // resolve, which for this equation means the strength is diverging.
      trace.blowup = true;
      trace.blowup_time_lo = trace.blowup_time_hi = t;
      return trace;
    }
    const RkStep step = rk45(t, y, h, f0, reciprocal, family, interp, g);
    const double scale =
        opt.atol + opt.rtol * std::max(std::abs(y), std::abs(step.y5));
    const double err = std::abs(step.err) / scale;
    if (err > 1.0) {
      h *= std::clamp(0.9 * std::pow(err, -0.25), 0.1, 0.9);
      continue;
    }

    const double t_new = t + h;
    if (reciprocal && (y < 0.0) != (step.y5 < 0.0) && y != 0.0) {
      // The reciprocal crossed zero inside this step: the strength diverged.
      auto [lo, hi] =
          hermite_root(t, h, y, f0, step.y5, step.f_end, opt.blowup_time_rtol);
      trace.blowup = true;
      trace.blowup_time_lo = lo;
      trace.blowup_time_hi = hi;
      return trace;
    }

    t = t_new;
    y = step.y5;
    f0 = step.f_end;
    if (reciprocal) {
      if (std::abs(y) > w_switch_back) {
        reciprocal = false;
        y = 1.0 / y;
        f0 = rhs(t, y, reciprocal, family, interp, g);
      }
    } else if (std::abs(y) > opt.reciprocal_switch) {
      reciprocal = true;
      y = 1.0 / y;
      f0 = rhs(t, y, reciprocal, family, interp, g);
    }
    trace.points.push_back({t, reciprocal ? 1.0 / y : y});
    if (err > 1e-30) h *= std::clamp(0.9 * std::pow(err, -0.2), 1.0, 5.0);
    else h *= 5.0;
  }

  // Finished the path; the strength may still exceed the declaration
  // threshold without an interior pole, e.g. when the pole sits just past
  // the end.  Extrapolate the reciprocal to estimate where.
  const double final_value = trace.points.back().value;
  if (std::abs(final_value) >= opt.blowup_threshold) {
    trace.blowup = true;
    const double w_end = 1.0 / final_value;
    const double fw = rhs(t, w_end, true, family, interp, g);
    trace.blowup_time_lo = t;
    trace.blowup_time_hi = fw != 0.0 ? t + std::abs(w_end / fw) : t;
    if (trace.blowup_time_hi < trace.blowup_time_lo)
      trace.blowup_time_hi = trace.blowup_time_lo;
  }
  return trace;
}

double lax_resistance(const gas::ThermoState& A, const gas::ThermoState& B,
                      const gas::GasModel& g) {
  return std::pow(A.z / B.z, 0.5 * g.d);
}

double lax_kernel(const gas::ThermoState& at, const gas::ThermoState& B,
                  const gas::GasModel& g) {
  return g.d * lax_resistance(at, B, g) /
         (2.0 * at.m * at.m * std::pow(at.z, g.d + 1.0));
}

double lax_growth(const gas::ThermoState& A, const gas::ThermoState& B,
                  double kernel_integral, double slope_at_A,
                  waves::CharFamily family, const gas::GasModel& g) {
  if (slope_at_A == 0.0) return 0.0;
  const double R = lax_resistance(A, B, g);
  if (family == waves::CharFamily::forward) {
    // 1/(-s_t(B)) = R/(-s_t(A)) + int K dx
    const double q = R / (-slope_at_A) + kernel_integral;
    return -1.0 / q;
  }
  // 1/r_t(B) = R/r_t(A) - int K dx
  const double q = R / slope_at_A - kernel_integral;
  return 1.0 / q;
}

}  // namespace gasdyn::gradients
