#include "gasdyn/construct.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "gasdyn/errors.hpp"
#include "gasdyn/waves.hpp"

namespace gasdyn::construct {

namespace {

// clamped data: constant extensions outside the support [0, T]
double z_data(const ConstructSpec& spec, double t) {
  return spec.Z(std::clamp(t, 0.0, spec.T));
}

struct Column {
  std::vector<double> r, s;
};

// linear interpolation on the fixed t grid; the regions outside the grid are
// constant states by construction, so clamping returns them exactly
double interp(const std::vector<double>& v, double t, double t_lo, double dt,
              double below, double above) {
  const double idx = (t - t_lo) / dt;
  if (idx <= 0.0) return below;
  const double last = static_cast<double>(v.size() - 1);
  if (idx >= last) return above;
  const std::size_t j = static_cast<std::size_t>(idx);
  const double w = idx - static_cast<double>(j);
  return v[j] + w * (v[j + 1] - v[j]);
}

struct BlockConsts {
  double m;
  double r_pre, s_pre;   // state below and right of all waves
  double r_post, s_post; // quiet state above all waves
};

}  // namespace

std::string Certificate::first_failure() const {
  for (const auto& e : entries)
    if (!e.pass) return e.name;
  return {};
}

Certificate check_certificate(const ConstructSpec& spec, const gas::GasModel& g) {
  if (!(spec.q0 > 1.0) || !(spec.q1 > 1.0))
    throw config_error("construct: both contact strengths must exceed 1");
  if (!(spec.x1 > spec.x0))
    throw config_error("construct: need x0 < x1");
  if (!(spec.T > 0.0)) throw config_error("construct: T must be positive");
  if (!(spec.z_star_lo > 0.0) || !(spec.z_star_hi > spec.z_star_lo))
    throw config_error("construct: need 0 < z_star_lo < z_star_hi");
  if (!spec.Z || !spec.Zdot)
    throw config_error("construct: data profile Z and Zdot are required");
  if (spec.nt < 16) throw config_error("construct: nt too small");
  if (!(spec.cfl > 0.0) || !(spec.cfl < 1.0))
    throw config_error("construct: cfl must lie in (0, 1)");

  Certificate cert;
  const double d = g.d;
  const double e2 = 2.0 / (d - 1.0);  // z drops by Q^{-e2} across a jump
  cert.m1 = std::pow(spec.q0, (d + 1.0) / (d - 1.0));
  cert.m2 = std::pow(spec.q0 * spec.q1, (d + 1.0) / (d - 1.0));

  // sample the data for positivity, monotonicity and the extreme slope
  const int ns = 4096;
  double z_min = std::numeric_limits<double>::infinity();
  double zdot_max = -std::numeric_limits<double>::infinity();
  double slope_max = 0.0;
  for (int i = 0; i <= ns; ++i) {
    const double t = spec.T * i / ns;
    z_min = std::min(z_min, spec.Z(t));
    const double zd = spec.Zdot(t);
    zdot_max = std::max(zdot_max, zd);
    slope_max = std::max(slope_max, -zd);
  }
  const double z0 = spec.Z(0.0);
  const double zT = spec.Z(spec.T);
  cert.max_slope = slope_max;

  // every block sees the data range scaled by its accumulated jump factor
  cert.z_mid_lo = zT * std::pow(spec.q0, -e2);
  cert.z_mid_hi = z0 * std::pow(spec.q0, -e2);
  cert.z_right_lo = zT * std::pow(spec.q0 * spec.q1, -e2);
  cert.z_right_hi = z0 * std::pow(spec.q0 * spec.q1, -e2);

  const double c1_min = cert.m1 * std::pow(cert.z_mid_lo, d);
  const double c1_max = cert.m1 * std::pow(cert.z_mid_hi, d);
  const double c3_min = cert.m2 * std::pow(cert.z_right_lo, d);
  cert.c_bar2 = c1_min;  // the forward wave is simple, its tail speed is exact
  cert.c_bar3 = cert.m2 * std::pow(cert.z_right_hi, d);
  cert.t_star = spec.T + (spec.x1 - spec.x0) / cert.c_bar2;
  cert.x_star = spec.x1 + cert.c_bar3 * cert.t_star;

  // gradient-growth constants over the certified per-block ranges; the
  // entropy factor cancels, so one bound serves both blocks
  cert.min_r = std::pow(zT / z0, 0.5 * d);
  const double rho_max = 1.0 / cert.min_r;
  const double k_mid = d * rho_max / (2.0 * cert.m1 * cert.m1 *
                                      std::pow(cert.z_mid_lo, d + 1.0));
  const double k_right = d * rho_max / (2.0 * cert.m2 * cert.m2 *
                                        std::pow(cert.z_right_lo, d + 1.0));
  cert.max_k = std::max(k_mid, k_right);

  const double w01 = spec.x1 - spec.x0;
  // the march continues a little past the wave support
  const double x_march = spec.x1 + 1.02 * (cert.x_star - spec.x1) +
                         0.01 * w01;
  const double w1m = x_march - spec.x1;

  auto add = [&](std::string name, double lhs, double rhs) {
    cert.entries.push_back({std::move(name), lhs, rhs, lhs <= rhs});
  };

  add("data-positive", 0.0, z_min);
  cert.entries.back().pass = z_min > 0.0;
  add("data-monotone", zdot_max, 0.0);
  add("data-range (upper)", z0, spec.z_star_hi);
  add("data-range (lower)", std::pow(spec.q0 * spec.q1, e2) * spec.z_star_lo, zT);
  add("geometry", c1_max * spec.T, w01);
  add("focusing-direct", slope_max,
      cert.min_r / (w01 * (1.0 + spec.q0) * cert.max_k));
  add("focusing-reflected", slope_max,
      2.0 * cert.min_r * cert.min_r /
          ((spec.q1 - 1.0) * (spec.q0 - 1.0) * w1m * cert.max_k));
  const double k1c = cert.min_r / ((1.0 + spec.q0) * cert.max_k);
  const double k2c = 2.0 * cert.min_r * cert.min_r * cert.c_bar2 /
                     ((spec.q1 - 1.0) * (spec.q0 - 1.0) * cert.c_bar3 * cert.max_k);
  add("slope-combined", slope_max,
      std::min(k1c / w01, k2c / (w01 + cert.c_bar2 * spec.T)));
  // the marched rectangle also contains the transmitted wave below t = 0;
  // budget its growth through both blocks so the march cannot focus
  add("focusing-transmitted", slope_max,
      cert.min_r / ((1.0 + spec.q0) *
                    (w01 * cert.max_k +
                     (1.0 + spec.q1) / (2.0 * cert.min_r) * w1m * cert.max_k)));

  (void)c3_min;
  cert.certified = std::all_of(cert.entries.begin(), cert.entries.end(),
                               [](const CertEntry& e) { return e.pass; });
  return cert;
}

ConstructResult construct_shockfree_two_contacts(const ConstructSpec& spec,
                                                 const gas::GasModel& g) {
  ConstructResult out;
  out.cert = check_certificate(spec, g);
  if (!out.cert.certified) return out;

  const Certificate& cert = out.cert;
  const double d = g.d;
  const double z0 = spec.Z(0.0);
  const double zT = spec.Z(spec.T);
  const double w01 = spec.x1 - spec.x0;

  const double c1_min = cert.c_bar2;
  const double c1_max = cert.m1 * std::pow(cert.z_mid_hi, d);
  const double c3_min = cert.m2 * std::pow(cert.z_right_lo, d);
  const double x_march = spec.x1 + 1.02 * (cert.x_star - spec.x1) + 0.01 * w01;

  // t grid: fine enough for the data, aligned so t = 0 is a row
  const double dt = spec.T / spec.nt;
  const double t_lo_want =
      std::min(-w01 / c1_max, spec.T - w01 / c1_min) - 4.0 * dt - 0.01 * w01 / c1_min;
  const long k_lo = static_cast<long>(std::ceil(-t_lo_want / dt));
  const double t_lo = -static_cast<double>(k_lo) * dt;
  const double t_hi_want =
      spec.T + w01 / c1_min + (x_march - spec.x1) / c3_min + 4.0 * dt;
  const long k_hi = static_cast<long>(std::ceil((t_hi_want - t_lo) / dt));
  const std::size_t rows = static_cast<std::size_t>(k_hi) + 1;
  const std::size_t j_zero = static_cast<std::size_t>(k_lo);

  const BlockConsts mid{
      cert.m1,
      -(1.0 + spec.q0) * z0, (spec.q0 - 1.0) * z0,
      -(1.0 + spec.q0) * zT, (spec.q0 - 1.0) * zT,
  };
  const double q01 = spec.q0 * spec.q1;
  const BlockConsts right{
      cert.m2,
      -(1.0 + q01) * z0, (q01 - 1.0) * z0,
      -(1.0 + q01) * zT, (q01 - 1.0) * zT,
  };

  Column col;
  col.r.resize(rows);
  col.s.resize(rows);
  for (std::size_t j = 0; j < rows; ++j) {
    const double z = z_data(spec, t_lo + static_cast<double>(j) * dt);
    col.r[j] = -(1.0 + spec.q0) * z;
    col.s[j] = (spec.q0 - 1.0) * z;
  }

  auto c_of = [&](double r, double s, double m) {
    const double z = (s - r) / (2.0 * m);
    return m * std::pow(z, d);
  };

  // march one block rightward; records the t = 0 trace at every new column
  auto march = [&](Column& c, const BlockConsts& bc, double x_from, double x_to,
                   double c_min_blk) {
    const int steps = std::max(
        1, static_cast<int>(std::ceil((x_to - x_from) / (spec.cfl * c_min_blk * dt))));
    const double dx = (x_to - x_from) / steps;
    Column next;
    next.r.resize(rows);
    next.s.resize(rows);
    for (int k = 0; k < steps; ++k) {
      const double x_new = x_from + (k + 1) * dx;
      for (std::size_t j = 0; j < rows; ++j) {
        const double t_j = t_lo + static_cast<double>(j) * dt;
        double c_p = c_of(c.r[j], c.s[j], bc.m);
        double r_new = c.r[j], s_new = c.s[j];
        for (int it = 0; it < 3; ++it) {
          // forward characteristic foot carries s, backward carries r
          double t_f = t_j - dx / c_p;
          double c_f = c_of(interp(c.r, t_f, t_lo, dt, bc.r_pre, bc.r_post),
                            interp(c.s, t_f, t_lo, dt, bc.s_pre, bc.s_post), bc.m);
          t_f = t_j - 2.0 * dx / (c_f + c_p);
          s_new = interp(c.s, t_f, t_lo, dt, bc.s_pre, bc.s_post);

          double t_b = t_j + dx / c_p;
          double c_b = c_of(interp(c.r, t_b, t_lo, dt, bc.r_pre, bc.r_post),
                            interp(c.s, t_b, t_lo, dt, bc.s_pre, bc.s_post), bc.m);
          t_b = t_j + 2.0 * dx / (c_b + c_p);
          r_new = interp(c.r, t_b, t_lo, dt, bc.r_pre, bc.r_post);

          const double z_new = (s_new - r_new) / (2.0 * bc.m);
          if (!(z_new > 0.0))
            throw numerical_error("construct: spatial march hit vacuum");
          c_p = bc.m * std::pow(z_new, d);
        }
        next.r[j] = r_new;
        next.s[j] = s_new;
      }
      std::swap(c.r, next.r);
      std::swap(c.s, next.s);
      const double zt = (c.s[j_zero] - c.r[j_zero]) / (2.0 * bc.m);
      out.trace_x.push_back(x_new);
      out.trace_z.push_back(zt);
      out.trace_u.push_back(0.5 * (c.r[j_zero] + c.s[j_zero]));
    }
    return steps;
  };

  const int n_mid = march(col, mid, spec.x0, spec.x1, c1_min);
  // resolve the second jump across the whole column at once
  for (std::size_t j = 0; j < rows; ++j) {
    const auto [rr, sr] = waves::contact_rs_map(col.r[j], col.s[j], spec.q1);
    col.r[j] = rr;
    col.s[j] = sr;
  }
  march(col, right, spec.x1, x_march, c3_min);

  // package the trace as solver initial data with finite-difference slopes
  // taken on the full column grid; near-jump columns are always kept so the
  // contact continuity check sees the exactly-mapped states
  const int stride = std::max(1, spec.nt / 32);
  const std::size_t total = out.trace_x.size();
  auto fd_slope = [&](const std::vector<double>& f, std::size_t i,
                      std::size_t lo, std::size_t hi) {
    const double h = out.trace_x[i] - (i > lo ? out.trace_x[i - 1] : out.trace_x[i]);
    if (i > lo && i < hi)
      return (f[i + 1] - f[i - 1]) / (out.trace_x[i + 1] - out.trace_x[i - 1]);
    if (i == lo) return (-3.0 * f[i] + 4.0 * f[i + 1] - f[i + 2]) /
                        (out.trace_x[i + 2] - out.trace_x[i]);
    return (3.0 * f[i] - 4.0 * f[i - 1] + f[i - 2]) / (2.0 * h);
  };
  moc::BlockInit left_b, mid_b, right_b;
  left_b.samples.push_back({spec.x0 - 1.0, z0, -z0, 0.0, 0.0});
  const std::size_t mid_last = static_cast<std::size_t>(n_mid) - 2;  // x1 itself is the jump
  for (std::size_t i = 0; i < total; ++i) {
    const bool in_mid = static_cast<int>(i) < n_mid;
    if (in_mid && static_cast<int>(i) == n_mid - 1) continue;
    const std::size_t lo = in_mid ? 0 : static_cast<std::size_t>(n_mid);
    const std::size_t hi = in_mid ? mid_last + 1 : total - 1;  // stencil room
    const bool edge = i == lo || i == (in_mid ? mid_last : total - 1);
    if (!edge && (i - lo) % static_cast<std::size_t>(stride) != 0) continue;
    auto& blk = in_mid ? mid_b : right_b;
    blk.samples.push_back({out.trace_x[i], out.trace_z[i], out.trace_u[i],
                           fd_slope(out.trace_z, i, lo, hi),
                           fd_slope(out.trace_u, i, lo, hi)});
  }
  // constant far field past the wave support: at t = 0 the backward fan has
  // already swept by, so the state there crosses the post backward invariant
  // with the pre forward one
  const double z_far = (right.s_pre - right.r_post) / (2.0 * cert.m2);
  const double u_far = 0.5 * (right.s_pre + right.r_post);
  // the far field is exactly constant, so it only needs enough samples to keep
  // the rightmost contact inside the mesh's domain of determinacy; sampling it
  // at the wave-region density would flood the solver with idle characteristics
  const double dx_wave = right_b.samples.size() > 1
                             ? right_b.samples[1].x - right_b.samples[0].x
                             : 0.1 * (x_march - spec.x1);
  const double dx_far = std::max(dx_wave, spec.pad_right / 48.0);
  for (double x = x_march + dx_far; x <= x_march + spec.pad_right; x += dx_far)
    right_b.samples.push_back({x, z_far, u_far, 0.0, 0.0});

  out.profile = mesh::EntropyProfile::piecewise_constant(
      {spec.x0, spec.x1}, {1.0, cert.m1, cert.m2}, g);
  out.data = {left_b, mid_b, right_b};
  return out;
}

}  // namespace gasdyn::construct
