#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gasdyn/gas.hpp"
#include "gasdyn/mesh.hpp"
#include "gasdyn/moc.hpp"

// Builds eventually-noninteracting shock-free initial data for an entropy
// profile with two increasing jumps.  Cauchy data (z, u) = (Z(t), -Z(t)) is
// prescribed at the left jump and evolved spatially through both blocks; the
// t = 0 trace of that evolution is the initial data.  A certificate of
// focusing and range inequalities guarantees ahead of time that the spatial
// evolution stays smooth in the region the trace depends on.

namespace gasdyn::construct {

struct CertEntry {
  std::string name;
  double lhs = 0.0;  // inequality is lhs <= rhs
  double rhs = 0.0;
  bool pass = false;
};

struct Certificate {
  std::vector<CertEntry> entries;
  bool certified = false;

  // derived quantities, reported for diagnostics
  double m1 = 0.0, m2 = 0.0;           // block entropies (m = 1 on the left)
  double z_mid_lo = 0.0, z_mid_hi = 0.0;
  double z_right_lo = 0.0, z_right_hi = 0.0;
  double c_bar2 = 0.0;  // forward wave speed at the tail of the data, x0+
  double c_bar3 = 0.0;  // speed bound for the reflected wave, right block
  double t_star = 0.0;  // when the forward wave from (x0, T) clears x1
  double x_star = 0.0;  // right edge of the wave support at t = 0
  double min_r = 0.0, max_k = 0.0, max_slope = 0.0;

  std::string first_failure() const;
};

struct ConstructSpec {
  double q0 = 2.0;  // contact strengths, both > 1
  double q1 = 2.0;
  double x0 = 0.0;  // jump locations
  double x1 = 1.0;
  double T = 1.0;   // data support [0, T]
  double z_star_lo = 0.0;  // certified data range: z_star_lo <= Z <= z_star_hi
  double z_star_hi = 0.0;
  std::function<double(double)> Z;     // positive, monotone decreasing
  std::function<double(double)> Zdot;
  int nt = 256;            // marching rows per data interval T
  double cfl = 0.8;
  double pad_right = 1.0;  // constant tail appended past the wave support
};

struct ConstructResult {
  Certificate cert;
  // populated only when cert.certified
  mesh::EntropyProfile profile;
  std::vector<moc::BlockInit> data;
  std::vector<double> trace_x, trace_z, trace_u;  // t = 0 trace right of x0
};

// Certificate evaluation alone; pure in the spec.
Certificate check_certificate(const ConstructSpec& spec, const gas::GasModel& g);

// Certificate plus the spatial march that extracts the t = 0 trace.
// A failed certificate returns with cert.certified = false and no data.
ConstructResult construct_shockfree_two_contacts(const ConstructSpec& spec,
                                                 const gas::GasModel& g);

}  // namespace gasdyn::construct
