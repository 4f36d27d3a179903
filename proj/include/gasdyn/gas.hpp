#pragma once

#include <stdexcept>

// Polytropic ideal gas in Lagrangian coordinates, expressed through the
// canonical variables (z, u, m):
//
//   z = C_z * tau^-((gamma-1)/2)    rescaled specific volume
//   u                               velocity
//   m = C_m * exp(S / 2 c_v)        entropy variable, constant in time
//
// with d = (gamma+1)/(gamma-1) > 1.  In these variables
//
//   p = m^2 z^(d+1) / (d+1),   c = sqrt(-dp/dtau) = m z^d,
//   tau = z^(1-d) / (d-1),
//
// and the Riemann invariants are r = u - m z, s = u + m z.  All of the wave
// algebra downstream (waves, gradients, moc, scenarios) is written in terms
// of these quantities.

namespace gasdyn::gas {

struct GasModel {
  double gamma;  // adiabatic exponent, > 1
  double K;      // p = K exp(S/c_v) tau^-gamma reference constant
  double c_v;    // specific heat
  double d;      // (gamma+1)/(gamma-1)
  double C_z;    // (d-1)^(1/(1-d))
  double C_m;    // sqrt(K gamma) C_z^-d
};

// gamma must exceed 1; K and c_v must be positive.
GasModel make_gas(double gamma, double K, double c_v);

// Normalization with C_m = 1 (K = C_z^(2d)/gamma, c_v = 1), so that m equals
// exp(S/2) and the m of a unit state is 1.  Used by most tests and presets.
GasModel unit_gas(double gamma);

// State in canonical variables.  z > 0 away from vacuum; z = 0 is the vacuum
// boundary.  m > 0 always.
struct ThermoState {
  double z;
  double u;
  double m;
};

struct Physical {
  double tau;  // specific volume
  double u;
  double S;    // specific entropy
};

// Quantities derived from a state.  e is the specific internal energy
// p tau / (gamma - 1), needed by the Rankine-Hugoniot energy relation.
struct Derived {
  double tau;
  double p;
  double c;
  double r;
  double s;
  double e;
};

double pressure(const ThermoState& q, const GasModel& g);
double sound_speed(const ThermoState& q, const GasModel& g);
double specific_volume(const ThermoState& q, const GasModel& g);
double internal_energy(const ThermoState& q, const GasModel& g);
double riemann_r(const ThermoState& q);
double riemann_s(const ThermoState& q);

Derived derived(const ThermoState& q, const GasModel& g);

// (tau, u, S) -> (z, u, m).  tau must be positive.
ThermoState state_from_physical(double tau, double u, double S, const GasModel& g);

// (z, u, m) -> (tau, u, S).  z and m must be positive (the inverse map is
// singular at vacuum).
Physical to_physical(const ThermoState& q, const GasModel& g);

// Assemble a state from Riemann invariants at entropy m: u = (r+s)/2,
// z = (s-r)/(2m).  s >= r is required for z >= 0.
ThermoState state_from_rs(double r, double s, double m);

}  // namespace gasdyn::gas
