#pragma once

#include <span>
#include <utility>
#include <vector>

#include "gasdyn/gas.hpp"

// Elementary waves: shock curves in the (z, m) plane, entropy jumps
// (contacts), simple waves, and stationary profiles.
//
// Shocks are parameterized by the ratio Z = z1/z0 of the canonical variable
// across the jump.  The state on side 1 is
//
//   m1 = m0 f(Z),   z1 = Z z0,   u1 - u0 = +- m0 z0 g(Z),
//
// with propagation speed xi = +- m0 z0^d h(Z), where
//
//   f(Z)^2 = (d Z^(d-1) - 1) / (Z^(d+1) (d - Z^(d-1)))
//   g(Z)   = |Z^(d-1) - 1| / sqrt((d-1) (d - Z^(d-1)) Z^(d-1))
//   h(Z)   = sqrt((d-1) Z^(d-1) / (d - Z^(d-1)))
//
// g and h are given here in simplified form; the raw quotients are 0/0 at
// Z = 1 but these expressions are smooth there with g(1) = 0, h(1) = 1 (a
// zero-strength shock rides a characteristic).  The admissible parameter
// window is d^(1/(1-d)) < Z < d^(1/(d-1)); both endpoints are excluded with
// a relative margin of 1e-12.

namespace gasdyn::waves {

enum class CharFamily { forward, backward };  // dx/dt = +c resp. -c

// Which side of the shock state 1 sits on.  The entropy condition requires
// the wave speed to be larger behind the shock, i.e. Z > 1 when state 1 is
// behind and Z < 1 when it is ahead.  Z = 1 (zero strength) is always
// admissible.
enum class ShockSide { behind, ahead };

double hugoniot_f(double Z, double d);

struct GH {
  double g;
  double h;
};
GH hugoniot_gh(double Z, double d);

// Derivatives on the admissible window, needed by the shock-path tracer.
// g' is singular at Z = 1 (like 1/(Z-1)); callers stay on compact
// subintervals excluding 1.
double hugoniot_f_prime(double Z, double d);
double hugoniot_g_prime(double Z, double d);
double hugoniot_h_prime(double Z, double d);

// Open parameter window of the shock curve for a given d.
std::pair<double, double> hugoniot_domain(double d);

struct ShockConnection {
  gas::ThermoState state1;
  double xi;  // signed Lagrangian propagation speed
  double Z;
  CharFamily family;
};

// State connected to state0 across a single shock of the given family with
// ratio Z = z1/z0.  Throws std::domain_error when Z is outside the window
// and hypothesis_error when (Z, side) violates the entropy condition.
ShockConnection shock_connect(const gas::ThermoState& state0, double Z,
                              CharFamily family, ShockSide side_of_1,
                              const gas::GasModel& g);

// Largest relative defect among the three Rankine-Hugoniot relations
//   xi [tau] = -[u],  xi [u] = [p],  xi [u^2/2 + e] = [u p]
// for the pair (q0, q1) joined at speed xi.
double rh_residual(const gas::ThermoState& q0, const gas::ThermoState& q1,
                   double xi, const gas::GasModel& g);

// Contact (entropy jump): u and p are continuous, z rescales with the
// entropy ratio.  Q = (m_r/m_l)^((d-1)/(d+1)); m z multiplies by Q across
// the jump and z itself by Q^(-2/(d-1)).
double contact_q(double m_left, double m_right, const gas::GasModel& g);

// State on the other side of an entropy jump to entropy m_other.  Works in
// either direction; applying it twice with the original entropy is the
// identity.
gas::ThermoState contact_apply(const gas::ThermoState& q, double m_other,
                               const gas::GasModel& g);

// Jump of the Riemann invariants across a contact with ratio Q:
//   r_r = (1+Q)/2 r_l + (1-Q)/2 s_l
//   s_r = (1-Q)/2 r_l + (1+Q)/2 s_l
// The map has determinant Q; its inverse is the same map with 1/Q.
std::pair<double, double> contact_rs_map(double r_l, double s_l, double Q);

// State joined to `a` across a simple wave, holding fixed the Riemann
// invariant of the given characteristic family (forward: s, backward: r).
// This is the connection along a characteristic of that family crossing a
// simple wave of the opposite family; entropy is constant.
gas::ThermoState simple_wave_connect(const gas::ThermoState& a, double z_b,
                                     CharFamily family, const gas::GasModel& g);

// Time-independent solution with velocity U and pressure P over a sampled
// entropy field: z(x) = ((d+1) P / m(x)^2)^(1/(d+1)).
std::vector<gas::ThermoState> stationary_profile(std::span<const double> m_of_x,
                                                 double U, double P,
                                                 const gas::GasModel& g);

}  // namespace gasdyn::waves
