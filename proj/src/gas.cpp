#include "gasdyn/gas.hpp"

#include <cmath>

namespace gasdyn::gas {

GasModel make_gas(double gamma, double K, double c_v) {
  if (!(gamma > 1.0)) throw std::domain_error("make_gas: gamma must exceed 1");
  if (!(K > 0.0)) throw std::domain_error("make_gas: K must be positive");
  if (!(c_v > 0.0)) throw std::domain_error("make_gas: c_v must be positive");
  GasModel g;
  g.gamma = gamma;
  g.K = K;
  g.c_v = c_v;
  g.d = (gamma + 1.0) / (gamma - 1.0);
  g.C_z = std::pow(g.d - 1.0, 1.0 / (1.0 - g.d));
  g.C_m = std::sqrt(K * gamma) * std::pow(g.C_z, -g.d);
  return g;
}

GasModel unit_gas(double gamma) {
  if (!(gamma > 1.0)) throw std::domain_error("unit_gas: gamma must exceed 1");
  const double d = (gamma + 1.0) / (gamma - 1.0);
  const double C_z = std::pow(d - 1.0, 1.0 / (1.0 - d));
  return make_gas(gamma, std::pow(C_z, 2.0 * d) / gamma, 1.0);
}

double pressure(const ThermoState& q, const GasModel& g) {
  return q.m * q.m * std::pow(q.z, g.d + 1.0) / (g.d + 1.0);
}

double sound_speed(const ThermoState& q, const GasModel& g) {
  return q.m * std::pow(q.z, g.d);
}

double specific_volume(const ThermoState& q, const GasModel& g) {
  if (!(q.z > 0.0)) throw std::domain_error("specific_volume: z must be positive");
  return std::pow(q.z, 1.0 - g.d) / (g.d - 1.0);
}

double internal_energy(const ThermoState& q, const GasModel& g) {
  return pressure(q, g) * specific_volume(q, g) / (g.gamma - 1.0);
}

double riemann_r(const ThermoState& q) { return q.u - q.m * q.z; }
double riemann_s(const ThermoState& q) { return q.u + q.m * q.z; }

Derived derived(const ThermoState& q, const GasModel& g) {
  Derived out;
  out.tau = specific_volume(q, g);
  out.p = pressure(q, g);
  out.c = sound_speed(q, g);
  out.r = riemann_r(q);
  out.s = riemann_s(q);
  out.e = out.p * out.tau / (g.gamma - 1.0);
  return out;
}

ThermoState state_from_physical(double tau, double u, double S, const GasModel& g) {
  if (!(tau > 0.0)) throw std::domain_error("state_from_physical: tau must be positive");
  ThermoState q;
  q.z = g.C_z * std::pow(tau, -(g.gamma - 1.0) / 2.0);
  q.u = u;
  q.m = g.C_m * std::exp(S / (2.0 * g.c_v));
  return q;
}

Physical to_physical(const ThermoState& q, const GasModel& g) {
  if (!(q.z > 0.0) || !(q.m > 0.0))
    throw std::domain_error("to_physical: z and m must be positive");
  Physical out;
  out.tau = specific_volume(q, g);
  out.u = q.u;
  out.S = 2.0 * g.c_v * std::log(q.m / g.C_m);
  return out;
}

ThermoState state_from_rs(double r, double s, double m) {
  if (!(m > 0.0)) throw std::domain_error("state_from_rs: m must be positive");
  return ThermoState{(s - r) / (2.0 * m), (r + s) / 2.0, m};
}

}  // namespace gasdyn::gas
