#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gasdyn/gas.hpp"
#include "gasdyn/waves.hpp"

// Tracer for a single shock of varying strength.  The shock path is given as
// a free function x(a) of the strength parameter a = z1/z0; the stationary
// side keeps (u1, p1) fixed and the isentropic side keeps m0 fixed, which
// pins every remaining quantity pointwise through the shock relations.  Time
// along the path follows from dx/dt = xi.

namespace gasdyn::scenarios {

struct ShockSample {
  double a;
  double x;
  double t;
  gas::ThermoState ahead;   // isentropic side, m = m0
  gas::ThermoState behind;  // stationary side, u = u1 and p = p1
  double xi;                // signed Lagrangian shock speed
  // invariant gradients on the isentropic side, one-sided at the shock
  double r_x;
  double s_x;
};

struct ShockPathSpec {
  std::function<double(double)> x;     // path position
  std::function<double(double)> dxda;  // supplied slope of the path
  double a_lo = 0.0;
  double a_hi = 0.0;
  double u1 = 0.0;
  double p1 = 1.0;
  double m0 = 1.0;
  waves::CharFamily family = waves::CharFamily::backward;
  double t0 = 0.0;     // time assigned to the first sample
  int samples = 129;
  double focusing_bound = std::numeric_limits<double>::infinity();
  double quad_tol = 1e-10;  // adaptive Simpson tolerance for t(a)
};

struct ShockTrace {
  std::vector<ShockSample> samples;
  double max_abs_rx = 0.0;
  double max_abs_sx = 0.0;
  bool gradients_bounded = true;  // against spec.focusing_bound
  // set when the requested a-range had to be clipped to the admissible
  // shock-strength window
  std::string truncated_reason;
};

ShockTrace trace_single_shock(const ShockPathSpec& spec, const gas::GasModel& g);

}  // namespace gasdyn::scenarios
