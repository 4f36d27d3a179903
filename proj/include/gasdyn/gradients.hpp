#pragma once

#include <span>
#include <vector>

#include "gasdyn/gas.hpp"
#include "gasdyn/waves.hpp"

// Wave-strength gradients.  The forward strength is alpha and the backward
// strength is beta:
//
//   alpha = u_x + m z_x + 2 m_x z / (d+1),   s_t + c alpha = 0
//   beta  = u_x - m z_x - 2 m_x z / (d+1),   r_t - c beta  = 0
//
// A forward wave is rarefactive where alpha > 0 and compressive where
// alpha < 0 (same for beta and backward waves); exact zero is neutral.
// Along characteristics the strengths obey the coupled Riccati system
//
//   alpha' = k1 (k2 (3 alpha + beta) + alpha beta - alpha^2)   (forward)
//   beta`  = k1 (-k2 (alpha + 3 beta) + alpha beta - beta^2)   (backward)
//
// with k1 = (gamma+1)/(2(gamma-1)) z^(2/(gamma-1)) and
// k2 = (gamma-1)/(gamma (gamma+1)) z m_x.  Gradient blowup (|u_x|, |p_x| ->
// infinity) is equivalent to alpha or beta diverging.

namespace gasdyn::gradients {

enum class RcLabel { rarefactive, compressive, neutral };

RcLabel label_of(double strength);

struct GradientPair {
  double alpha;
  double beta;
  RcLabel rc_forward;
  RcLabel rc_backward;
};

GradientPair make_pair(double alpha, double beta);

// Strengths from one-sided field gradients at a point.
GradientPair gradients_from_field(double u_x, double z_x, double m_x, double z,
                                  double m, const gas::GasModel& g);

struct RiccatiCoeffs {
  double k1;  // > 0 for z > 0
  double k2;  // sign(k2) = sign(m_x)
};

RiccatiCoeffs riccati_coeffs(double z, double m_x, const gas::GasModel& g);

// Right-hand sides (d alpha/dt along forward characteristics, d beta/dt along
// backward ones).
double riccati_rhs_forward(double alpha, double beta, const RiccatiCoeffs& k);
double riccati_rhs_backward(double alpha, double beta, const RiccatiCoeffs& k);

// One sample of a characteristic path: time, local state, entropy slope, and
// the opposite-family strength at that time.  Coefficients are interpolated
// linearly between samples.
struct PathSample {
  double t;
  double z;
  double m;
  double m_x;
  double opposite;
};

struct IntegrateOptions {
  double rtol = 1e-9;
  double atol = 1e-12;
  double blowup_threshold = 1e8;
  // |value| beyond which integration switches to the reciprocal variable to
  // bracket the blowup time.
  double reciprocal_switch = 1e4;
  double blowup_time_rtol = 1e-6;
  double initial_step_fraction = 1e-3;
};

struct RiccatiTrace {
  struct Point {
    double t;
    double value;
  };
  std::vector<Point> points;
  bool blowup = false;
  // bracket of the divergence time, meaningful when blowup is set;
  // (lo + hi)/2 is within blowup_time_rtol relative of the true time
  double blowup_time_lo = 0.0;
  double blowup_time_hi = 0.0;
};

// Integrates the scalar Riccati equation for the strength of `family` along
// the path, taking the opposite-family strength from the samples.  Adaptive
// embedded Runge-Kutta 4(5); near blowup the reciprocal variable w = 1/value
// is integrated and its zero crossing bisected.  Step-size underflow while
// the value grows is reported as blowup, not failure.
RiccatiTrace integrate_riccati_along(std::span<const PathSample> path, double init,
                                     waves::CharFamily family, const gas::GasModel& g,
                                     const IntegrateOptions& opt = {});

// Growth/decay of characteristic slopes between two points of the same
// characteristic in a C^2 isentropic region:
//
//   1/(-s_t(B)) = R(A,B) / (-s_t(A)) + int K dx     (forward)
//   1/r_t(B)    = R(A,B) / r_t(A)    - int K dx     (backward)
//
// with R(A,B) = (z(A)/z(B))^(d/2) and kernel K(x,B) = d R(x,B) /
// (2 m^2 z(x)^(d+1)) integrated in x along the characteristic.  The caller
// supplies the kernel integral; slope 0 at A propagates to exactly 0 at B.
double lax_resistance(const gas::ThermoState& A, const gas::ThermoState& B,
                      const gas::GasModel& g);
double lax_kernel(const gas::ThermoState& at, const gas::ThermoState& B,
                  const gas::GasModel& g);
double lax_growth(const gas::ThermoState& A, const gas::ThermoState& B,
                  double kernel_integral, double slope_at_A,
                  waves::CharFamily family, const gas::GasModel& g);

}  // namespace gasdyn::gradients
