#include "gasdyn/waves.hpp"

#include <cmath>

#include "gasdyn/errors.hpp"

namespace gasdyn::waves {

namespace {

constexpr double kDomainMargin = 1e-12;

// Z^(d-1) with domain checks shared by f, g, h.
double checked_w(double Z, double d, const char* who) {
  const auto [lo, hi] = hugoniot_domain(d);
  if (!(Z > lo * (1.0 + kDomainMargin)) || !(Z < hi * (1.0 - kDomainMargin))) {
    throw std::domain_error(std::string(who) +
                            ": Z outside the admissible window (d^(1/(1-d)), d^(1/(d-1)))");
  }
  return std::pow(Z, d - 1.0);
}

}  // namespace

std::pair<double, double> hugoniot_domain(double d) {
  if (!(d > 1.0)) throw std::domain_error("hugoniot_domain: d must exceed 1");
  return {std::pow(d, 1.0 / (1.0 - d)), std::pow(d, 1.0 / (d - 1.0))};
}

double hugoniot_f(double Z, double d) {
  const double w = checked_w(Z, d, "hugoniot_f");
  // f^2 = (d w - 1) / (Z^(d+1) (d - w)); both factors positive inside the window.
  return std::sqrt((d * w - 1.0) / (std::pow(Z, d + 1.0) * (d - w)));
}

GH hugoniot_gh(double Z, double d) {
  const double w = checked_w(Z, d, "hugoniot_gh");
  GH out;
  out.g = std::abs(w - 1.0) / std::sqrt((d - 1.0) * (d - w) * w);
  out.h = std::sqrt((d - 1.0) * w / (d - w));
  return out;
}

double hugoniot_f_prime(double Z, double d) {
  const double w = checked_w(Z, d, "hugoniot_f_prime");
  const double f = hugoniot_f(Z, d);
  // log-derivative of f^2 = (d w - 1) / (Z^(d+1) (d - w)), w = Z^(d-1)
  const double wp = (d - 1.0) * w / Z;
  const double dlog = d * wp / (d * w - 1.0) - (d + 1.0) / Z + wp / (d - w);
  return 0.5 * f * dlog;
}

double hugoniot_g_prime(double Z, double d) {
  const double w = checked_w(Z, d, "hugoniot_g_prime");
  if (w == 1.0) throw std::domain_error("hugoniot_g_prime: singular at Z = 1");
  const double g = hugoniot_gh(Z, d).g;
  const double wp = (d - 1.0) * w / Z;
  const double dlog = wp / (w - 1.0) - 0.5 * (-wp / (d - w) + wp / w);
  return g * dlog;
}

double hugoniot_h_prime(double Z, double d) {
  const double w = checked_w(Z, d, "hugoniot_h_prime");
  const double h = hugoniot_gh(Z, d).h;
  const double wp = (d - 1.0) * w / Z;
  const double dlog = 0.5 * (wp / w + wp / (d - w));
  return h * dlog;
}

ShockConnection shock_connect(const gas::ThermoState& state0, double Z,
                              CharFamily family, ShockSide side_of_1,
                              const gas::GasModel& g) {
  if (!(state0.z > 0.0) || !(state0.m > 0.0))
    throw std::domain_error("shock_connect: state0 must have z, m > 0");

  ShockConnection out;
  out.Z = Z;
  out.family = family;

  if (Z == 1.0) {
    // zero-strength shock: identical states, speed = +-c0
    out.state1 = state0;
    const double c0 = gas::sound_speed(state0, g);
    out.xi = family == CharFamily::forward ? c0 : -c0;
    return out;
  }

  if (side_of_1 == ShockSide::behind && Z < 1.0)
    throw hypothesis_error("shock_connect: state 1 behind the shock requires Z > 1");
  if (side_of_1 == ShockSide::ahead && Z > 1.0)
    throw hypothesis_error("shock_connect: state 1 ahead of the shock requires Z < 1");

  const double f = hugoniot_f(Z, g.d);
  const auto [gg, hh] = hugoniot_gh(Z, g.d);

  const double sign_xi = family == CharFamily::forward ? 1.0 : -1.0;
  // [p] has the sign of Z - 1, and xi [u] = [p] fixes the sign of the
  // velocity jump.
  const double sign_du = sign_xi * (Z > 1.0 ? 1.0 : -1.0);

  out.state1.z = Z * state0.z;
  out.state1.m = f * state0.m;
  out.state1.u = state0.u + sign_du * state0.m * state0.z * gg;
  out.xi = sign_xi * state0.m * std::pow(state0.z, g.d) * hh;
  return out;
}

double rh_residual(const gas::ThermoState& q0, const gas::ThermoState& q1,
                   double xi, const gas::GasModel& g) {
  const gas::Derived a = gas::derived(q0, g);
  const gas::Derived b = gas::derived(q1, g);

  const double r1 = xi * (b.tau - a.tau) + (q1.u - q0.u);
  const double n1 = std::abs(xi) * (std::abs(a.tau) + std::abs(b.tau)) +
                    std::abs(q0.u) + std::abs(q1.u);

  const double r2 = xi * (q1.u - q0.u) - (b.p - a.p);
  const double n2 = std::abs(xi) * (std::abs(q0.u) + std::abs(q1.u)) + a.p + b.p;

  const double E0 = 0.5 * q0.u * q0.u + a.e;
  const double E1 = 0.5 * q1.u * q1.u + b.e;
  const double r3 = xi * (E1 - E0) - (q1.u * b.p - q0.u * a.p);
  const double n3 = std::abs(xi) * (E0 + E1) + std::abs(q0.u) * a.p + std::abs(q1.u) * b.p;

  double worst = 0.0;
  worst = std::max(worst, std::abs(r1) / std::max(n1, 1e-300));
  worst = std::max(worst, std::abs(r2) / std::max(n2, 1e-300));
  worst = std::max(worst, std::abs(r3) / std::max(n3, 1e-300));
  return worst;
}

double contact_q(double m_left, double m_right, const gas::GasModel& g) {
  if (!(m_left > 0.0) || !(m_right > 0.0))
    throw std::domain_error("contact_q: entropies must be positive");
  return std::pow(m_right / m_left, (g.d - 1.0) / (g.d + 1.0));
}

gas::ThermoState contact_apply(const gas::ThermoState& q, double m_other,
                               const gas::GasModel& g) {
  const double Q = contact_q(q.m, m_other, g);
  gas::ThermoState out;
  out.z = q.z * std::pow(Q, -2.0 / (g.d - 1.0));
  out.u = q.u;
  out.m = m_other;
  return out;
}

std::pair<double, double> contact_rs_map(double r_l, double s_l, double Q) {
  if (!(Q > 0.0)) throw std::domain_error("contact_rs_map: Q must be positive");
  const double a = 0.5 * (1.0 + Q);
  const double b = 0.5 * (1.0 - Q);
  return {a * r_l + b * s_l, b * r_l + a * s_l};
}

gas::ThermoState simple_wave_connect(const gas::ThermoState& a, double z_b,
                                     CharFamily family, const gas::GasModel&) {
  if (!(z_b >= 0.0)) throw std::domain_error("simple_wave_connect: z_b must be nonnegative");
  gas::ThermoState out;
  out.z = z_b;
  out.m = a.m;
  // forward: s = u + m z fixed; backward: r = u - m z fixed
  const double sgn = family == CharFamily::forward ? 1.0 : -1.0;
  out.u = a.u + sgn * a.m * (a.z - z_b);
  return out;
}

std::vector<gas::ThermoState> stationary_profile(std::span<const double> m_of_x,
                                                 double U, double P,
                                                 const gas::GasModel& g) {
  if (!(P > 0.0)) throw std::domain_error("stationary_profile: P must be positive");
  std::vector<gas::ThermoState> out;
  out.reserve(m_of_x.size());
  for (double m : m_of_x) {
    if (!(m > 0.0)) throw std::domain_error("stationary_profile: entropy must be positive");
    out.push_back({std::pow((g.d + 1.0) * P / (m * m), 1.0 / (g.d + 1.0)), U, m});
  }
  return out;
}

}  // namespace gasdyn::waves
