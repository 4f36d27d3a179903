#include "gasdyn/scenarios.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gasdyn/errors.hpp"
#include "gasdyn/waves.hpp"

namespace gasdyn::scenarios {

VacuumCheck vacuum_condition(double u_left, double u_right, double m_left,
                             double m_right, double z_left, double z_right) {
  VacuumCheck v;
  v.margin = (u_right - u_left) - (m_left * z_left + m_right * z_right);
  v.holds = v.margin >= 0.0;
  return v;
}

double smoothstep01(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  return t * t * t * (t * (6.0 * t - 15.0) + 10.0);
}

double smoothstep01_deriv(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  return 30.0 * t * t * (t - 1.0) * (t - 1.0);
}

// ---------------------------------------------------------------------------
// single contact
// ---------------------------------------------------------------------------

SingleContactSetup make_single_contact(const SingleContactSpec& spec,
                                       const gas::GasModel& g, double dx,
                                       double horizon) {
  if (!(spec.z_m > 0.0) || !(spec.z_inf > 0.0))
    throw config_error("single contact: z values must be positive");
  if (!(spec.z_inf <= spec.z_m))
    throw hypothesis_error(
        "single contact: compressive data, the dichotomy needs z_inf <= z_m");
  if (!(spec.ramp_lo > spec.x_contact) || !(spec.ramp_hi > spec.ramp_lo))
    throw config_error("single contact: need x_contact < ramp_lo < ramp_hi");
  if (!(dx > 0.0) || !(horizon > 0.0))
    throw config_error("single contact: dx and horizon must be positive");

  SingleContactSetup out;
  out.q = waves::contact_q(spec.m_left, spec.m_right, g);
  // p continuity fixes the left z; u is shared by construction
  out.z_left = spec.z_m * std::pow(spec.m_right / spec.m_left, 2.0 / (g.d + 1.0));
  out.threshold = (out.q - 1.0) / (2.0 * out.q) * spec.z_m;
  out.margin = spec.m_right * spec.z_m - spec.m_left * out.z_left -
               2.0 * spec.m_right * spec.z_inf;

  out.profile = mesh::EntropyProfile::piecewise_constant(
      {spec.x_contact}, {spec.m_left, spec.m_right}, g);

  const double s_wave = spec.u_left + spec.m_right * spec.z_m;
  const double ramp_w = spec.ramp_hi - spec.ramp_lo;
  auto z_of = [&](double x) {
    const double t = (x - spec.ramp_lo) / ramp_w;
    return spec.z_m + (spec.z_inf - spec.z_m) * smoothstep01(t);
  };
  auto zx_of = [&](double x) {
    const double t = (x - spec.ramp_lo) / ramp_w;
    return (spec.z_inf - spec.z_m) * smoothstep01_deriv(t) / ramp_w;
  };

  // where the initial profile crosses the critical level
  out.x_star = std::numeric_limits<double>::quiet_NaN();
  if (spec.z_inf <= out.threshold && out.threshold <= spec.z_m) {
    const double target = (spec.z_m - out.threshold) / (spec.z_m - spec.z_inf);
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (lo + hi);
      (smoothstep01(mid) < target ? lo : hi) = mid;
    }
    out.x_star = spec.ramp_lo + 0.5 * (lo + hi) * ramp_w;
  }

  // pad the sampled region so nothing the contact can see within the horizon
  // is missing; inbound influence crosses the constant far field at c(z_inf),
  // and the data is rarefactive so the sound speed only drops behind the wave
  const double c_far = spec.m_right * std::pow(spec.z_inf, g.d);
  const double x_hi = spec.ramp_hi + 1.25 * c_far * horizon +
                      2.0 * (spec.ramp_hi - spec.ramp_lo);
  const int n = std::max(2, static_cast<int>(std::lround((x_hi - spec.x_contact) / dx)));
  const double h = (x_hi - spec.x_contact) / n;

  moc::BlockInit right;
  right.samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = spec.x_contact + (i + 0.5) * h;
    const double z = z_of(x);
    const double zx = zx_of(x);
    right.samples.push_back({x, z, s_wave - spec.m_right * z, zx, -spec.m_right * zx});
  }

  moc::BlockInit left;
  left.samples.push_back({spec.x_contact - 1.0, out.z_left, spec.u_left, 0.0, 0.0});

  out.data = {left, right};
  return out;
}

SingleContactVerdict classify_single_contact(const SingleContactSpec& spec,
                                             const gas::GasModel& g, double dx,
                                             double horizon,
                                             const moc::SolveOptions* base) {
  SingleContactSetup setup = make_single_contact(spec, g, dx, horizon);
  moc::SolveOptions opt = base ? *base : moc::SolveOptions{};
  opt.horizon = horizon;
  moc::RunOutcome run = moc::solve_ibvp(setup.profile, setup.data, g, opt);
  SingleContactVerdict v;
  v.q = setup.q;
  v.z_left = setup.z_left;
  v.threshold = setup.threshold;
  v.margin = setup.margin;
  v.x_star = setup.x_star;
  v.vacuum_predicted = setup.margin >= 0.0;
  v.classification = moc::classify(run, g);
  const auto st = v.classification.status;
  v.agrees = v.vacuum_predicted
                 ? st == moc::RunStatus::asymptotic_vacuum
                 : st == moc::RunStatus::eventually_noninteracting;
  return v;
}

// ---------------------------------------------------------------------------
// reflections in a strip
// ---------------------------------------------------------------------------

ReflectionTrace reflect_recurrence(double z0, double z1, double q, double x0,
                                   double x1, const gas::GasModel& g, int n_max,
                                   double m_out) {
  if (!(q > 1.0))
    throw config_error("recurrence: contact strength must exceed 1");
  if (!(z0 > 0.0) || !(z1 > 0.0) || !(z1 < z0))
    throw hypothesis_error("recurrence: need rarefactive data 0 < z1 < z0");
  if (!(x1 > x0)) throw config_error("recurrence: need x0 < x1");
  if (n_max < 2) throw config_error("recurrence: n_max must be at least 2");
  if (!(m_out > 0.0)) throw config_error("recurrence: m_out must be positive");

  ReflectionTrace r;
  r.eta = (q - 1.0) / (q + 1.0);
  r.zeta = z1 - r.eta * z0;
  r.z_limit = r.zeta * (q + 1.0) / 2.0;
  r.m_strip = std::pow(q, (g.d + 1.0) / (g.d - 1.0)) * m_out;
  r.width = x1 - x0;
  r.c0 = r.m_strip * std::pow(z0, g.d);

  const double tol = 1e-12 * z0;
  r.regime = std::abs(r.zeta) <= tol ? ReflectRegime::vacuum_in_the_limit
             : r.zeta > 0.0          ? ReflectRegime::bounded_reflection
                                     : ReflectRegime::asymptotic_vacuum;

  // The sequence is generated through its decaying mode w_n = z_n - z_limit,
  // which contracts by exactly eta each bounce.  Iterating the raw two-term
  // recurrence instead would feed rounding noise into the persistent mode
  // and lose the zeta = 0 ray once eta^n reaches rounding size; this form
  // keeps the relative error of z_n at n*eps for all n.
  auto c_of = [&](double z) { return r.m_strip * std::pow(z, g.d); };
  r.z = {z0};
  r.t_lower = {0.0};
  r.t_upper = {0.0};
  double w = z0 - r.z_limit;
  for (int n = 1; n <= n_max; ++n) {
    w *= r.eta;
    const double next = r.z_limit + w;
    if (!(next > 0.0)) {
      // z_n dies at this bounce; the trace keeps the positive prefix
      r.terminal_n = n;
      break;
    }
    r.t_lower.push_back(r.t_lower.back() + r.width / c_of(r.z.back()));
    r.t_upper.push_back(r.t_upper.back() + r.width / c_of(next));
    r.z.push_back(next);
  }
  return r;
}

double reflect_time_lower(int n, double width, double c0, double eta, double d) {
  const double r = std::pow(eta, -d);
  return width / c0 * (std::pow(r, n) - 1.0) / (r - 1.0);
}

double reflect_time_upper(int n, double width, double c0, double eta, double d) {
  return std::pow(eta, -d) * reflect_time_lower(n, width, c0, eta, d);
}

double reflect_sandwich_lower(double t, double z0, double c0, double width,
                              double eta, double d) {
  const double rate = c0 * (std::pow(eta, -d) - 1.0) / width;
  return z0 * std::pow(1.0 + t * rate, -1.0 / d);
}

double reflect_sandwich_upper(double t, double z0, double c0, double width,
                              double eta, double d) {
  const double rate = c0 * (1.0 - std::pow(eta, d)) / width;
  return z0 * std::pow(1.0 + t * rate, -1.0 / d);
}

StripSetup make_reflection_strip(const StripSpec& spec, const gas::GasModel& g,
                                 int strip_samples) {
  if (!(spec.q > 1.0))
    throw config_error("strip: contact strength must exceed 1");
  if (!(spec.x1 > spec.x0))
    throw config_error("strip: need x0 < x1");
  if (!(spec.z_end > 0.0))
    throw config_error("strip: z_end must be positive");
  if (!(spec.flat_frac > 0.0) || !(spec.flat_frac < 0.5))
    throw config_error("strip: flat_frac must lie in (0, 1/2)");
  if (!(spec.m_out > 0.0))
    throw config_error("strip: m_out must be positive");

  StripSetup out;
  out.eta = (spec.q - 1.0) / (spec.q + 1.0);
  out.z_top = (spec.z_end - spec.zeta) / out.eta;
  if (!(out.z_top > 0.0))
    throw config_error("strip: requested zeta leaves no positive z at x0");
  if (!(out.z_top > spec.z_end))
    throw hypothesis_error("strip: requested zeta makes the data compressive");
  out.m_strip = std::pow(spec.q, (g.d + 1.0) / (g.d - 1.0)) * spec.m_out;
  out.z1 = spec.z_end * (1.0 + out.eta) - out.eta * out.z_top;

  const double w = spec.x1 - spec.x0;
  const double flat = spec.flat_frac * w;
  const int n = std::max(strip_samples, 4);
  const double h = w / n;
  if (!(0.5 * h < flat))
    throw config_error("strip: too few samples to resolve the flat ends");

  // s = u + m z vanishes identically in the strip, so the forward gradient
  // is zero and the left-moving data stays exact until it reaches a contact
  const double ramp_w = w - 2.0 * flat;
  auto z_of = [&](double x) {
    const double t = (x - (spec.x0 + flat)) / ramp_w;
    return out.z_top + (spec.z_end - out.z_top) * smoothstep01(t);
  };
  auto zx_of = [&](double x) {
    const double t = (x - (spec.x0 + flat)) / ramp_w;
    return (spec.z_end - out.z_top) * smoothstep01_deriv(t) / ramp_w;
  };

  moc::BlockInit strip;
  strip.samples.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double x = spec.x0 + (i + 0.5) * h;
    const double z = z_of(x);
    const double zx = zx_of(x);
    strip.samples.push_back({x, z, -out.m_strip * z, zx, -out.m_strip * zx});
  }

  // outer blocks sit in mechanical equilibrium with the adjacent strip end
  const double factor = std::pow(out.m_strip / spec.m_out, 2.0 / (g.d + 1.0));
  moc::BlockInit left, right;
  left.samples.push_back(
      {spec.x0 - 0.5 * w, out.z_top * factor, -out.m_strip * out.z_top, 0.0, 0.0});
  right.samples.push_back(
      {spec.x1 + 0.5 * w, spec.z_end * factor, -out.m_strip * spec.z_end, 0.0, 0.0});

  out.far_field = vacuum_condition(-out.m_strip * out.z_top, -out.m_strip * spec.z_end,
                                   spec.m_out, spec.m_out, out.z_top * factor,
                                   spec.z_end * factor);

  out.profile = mesh::EntropyProfile::piecewise_constant(
      {spec.x0, spec.x1}, {spec.m_out, out.m_strip, spec.m_out}, g);
  out.data = {left, strip, right};
  return out;
}

BounceSeries run_reflection_trace(const StripSpec& spec, const gas::GasModel& g,
                                  int strip_samples, int bounces,
                                  const moc::SolveOptions* base) {
  StripSetup setup = make_reflection_strip(spec, g, strip_samples);
  const double w = spec.x1 - spec.x0;

  // closed-form crossing-time estimate; each bounce n -> n+1 needs about
  // w / c(z_min) of time, and the settle lag is a bounded multiple of that
  ReflectionTrace rec = reflect_recurrence(spec.z_end, setup.z1, spec.q, spec.x0,
                                           spec.x1, g, bounces + 2, spec.m_out);
  double t_est = 0.0;
  for (std::size_t k = 0; k + 1 < rec.z.size(); ++k) {
    const double zmin = std::min(rec.z[k], rec.z[k + 1]);
    if (!(zmin > 0.0)) break;
    t_est += w / (setup.m_strip * std::pow(zmin, g.d));
  }

  moc::SolveOptions opt = base ? *base : moc::SolveOptions{};
  opt.horizon = std::max(opt.horizon, 8.0 * t_est + 1.0);
  moc::RunOutcome run = moc::solve_ibvp(setup.profile, setup.data, g, opt);

  BounceSeries out;
  out.run = std::move(run);
  out.eta = setup.eta;

  // the tail of the strip data: its backward characteristic is the last wave
  // to arrive at each contact, so the values it reads off are the settled ones
  const auto& tail_ids = out.run.initial_nodes[1];
  if (tail_ids.empty()) throw numerical_error("strip: no initial nodes");
  const mesh::CharId tracer = out.run.mesh.nodes[tail_ids.back()].bwd_char;

  out.t.push_back(0.0);
  double z0_run = spec.z_end;
  if (out.run.mesh.by_column.size() > 1 && !out.run.mesh.by_column[1].empty()) {
    const auto& e0 = out.run.mesh.events[out.run.mesh.by_column[1].front()];
    if (e0.t == 0.0) z0_run = e0.left.z;
  }
  out.z.push_back(z0_run);

  const auto trace = moc::trace_reflections(out.run, tracer, waves::CharFamily::backward);
  for (const auto& b : trace) {
    if (static_cast<int>(out.z.size()) > bounces) break;
    out.t.push_back(b.t);
    out.z.push_back(b.z_strip);
  }

  if (out.z.size() >= 2) {
    out.zeta_measured = out.z[1] - out.eta * out.z[0];
    out.margin = -(setup.m_strip / spec.q) * (spec.q + 1.0) * out.zeta_measured;
  } else {
    out.zeta_measured = std::numeric_limits<double>::quiet_NaN();
    out.margin = std::numeric_limits<double>::quiet_NaN();
  }
  return out;
}

StripVerdict classify_strip(const StripSpec& spec, const gas::GasModel& g,
                            int strip_samples, double horizon,
                            const moc::SolveOptions* base) {
  StripSetup setup = make_reflection_strip(spec, g, strip_samples);
  ReflectionTrace rec = reflect_recurrence(spec.z_end, setup.z1, spec.q, spec.x0,
                                           spec.x1, g, 64, spec.m_out);
  moc::SolveOptions opt = base ? *base : moc::SolveOptions{};
  opt.horizon = horizon;
  moc::RunOutcome run = moc::solve_ibvp(setup.profile, setup.data, g, opt);

  StripVerdict v;
  v.eta = rec.eta;
  v.zeta = rec.zeta;
  v.z_limit = rec.z_limit;
  v.regime = rec.regime;
  v.vacuum_predicted = rec.regime == ReflectRegime::asymptotic_vacuum;
  v.classification = moc::classify(run, g);
  const auto st = v.classification.status;
  v.agrees = v.vacuum_predicted
                 ? st == moc::RunStatus::asymptotic_vacuum
                 : st != moc::RunStatus::shock_formed &&
                       st != moc::RunStatus::asymptotic_vacuum;
  return v;
}

double decay_rate_fit(const std::vector<double>& t, const std::vector<double>& v,
                      std::size_t lo, std::size_t hi) {
  if (t.size() != v.size())
    throw config_error("decay fit: series lengths differ");
  if (t.empty()) throw config_error("decay fit: empty series");
  hi = std::min(hi, t.size() - 1);
  if (lo >= hi) throw config_error("decay fit: empty index range");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t i = lo; i <= hi; ++i) {
    if (!(t[i] > 0.0) || !(v[i] > 0.0)) continue;
    const double x = std::log(t[i]);
    const double y = std::log(v[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 2) throw config_error("decay fit: too few usable points");
  return (sxy * n - sx * sy) / (sxx * n - sx * sx);
}

DecayFit reflect_decay_fit(const ReflectionTrace& tr, std::size_t n_lo,
                           std::size_t n_hi, const gas::GasModel& g) {
  if (tr.regime != ReflectRegime::vacuum_in_the_limit)
    throw hypothesis_error(
        "decay fit: trace is not in the vacuum-in-the-limit regime");
  DecayFit fit;
  fit.exponent = decay_rate_fit(tr.t_upper, tr.z, n_lo, n_hi);
  fit.sandwich_ok = true;
  const double slack = 1e-9;
  for (std::size_t n = 0; n < tr.z.size(); ++n) {
    const double lo = reflect_sandwich_lower(tr.t_upper[n], tr.z[0], tr.c0,
                                             tr.width, tr.eta, g.d);
    const double hi = reflect_sandwich_upper(tr.t_upper[n], tr.z[0], tr.c0,
                                             tr.width, tr.eta, g.d);
    if (tr.z[n] < lo * (1.0 - slack) || tr.z[n] > hi * (1.0 + slack))
      fit.sandwich_ok = false;
  }
  return fit;
}

} // namespace gasdyn::scenarios
