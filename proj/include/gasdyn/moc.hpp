#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "gasdyn/gas.hpp"
#include "gasdyn/mesh.hpp"
#include "gasdyn/waves.hpp"

// Method-of-characteristics solver for the Cauchy problem on a piecewise
// isentropic background.  The mesh is event driven: an advancing front of
// nodes is kept as a left-to-right linked list, every adjacent pair that can
// interact is scheduled in a global time-ordered queue, and firing an event
// creates the intersection node of the pair's characteristics (or, at a
// contact, the reflected/transmitted pair of characteristics).
//
// Within a block the Riemann invariants are carried exactly; only node
// positions and wave strengths carry discretization error.  Outermost blocks
// whose data is constant are not meshed at all: every characteristic that
// enters them from outside carries the far-field invariant exactly, so the
// adjoining contact sees exact incoming values for all time.

namespace gasdyn::moc {

struct InitSample {
  double x;
  double z;
  double u;
  // NaN means "not supplied": slopes are then filled by finite differences
  // on the sample grid (which must be uniform within the block).
  double z_x = std::numeric_limits<double>::quiet_NaN();
  double u_x = std::numeric_limits<double>::quiet_NaN();
};

struct BlockInit {
  std::vector<InitSample> samples;  // strictly increasing x, inside the block
};

struct SolveOptions {
  double horizon = 1.0;
  double blowup_threshold = 1e8;
  // implicit trapezoid fixed point for wave-strength transport
  double fp_tol = 1e-11;
  int fp_max_iter = 50;
  // relative tolerance for the u, p continuity check of the initial data at
  // each contact
  double contact_continuity_tol = 1e-6;
  // opposite arrivals at a contact closer in time than this fraction of
  // their final characteristic legs are solved as one joint crossing; the
  // one-sided update would otherwise couple them through a one-event lag
  double pair_frac = 0.5;
  long max_nodes = 2'000'000;
};

enum class RunStatus {
  shock_formed,
  asymptotic_vacuum,
  eventually_noninteracting,
  shock_free_to_horizon,
};

struct ShockInfo {
  enum class Cause { gradient_blowup, char_crossing };
  Cause cause;
  double t;
  double x;
  int block;
  double alpha;
  double beta;
};

struct RunOutcome {
  RunStatus status;  // solve_ibvp reports shock_formed or shock_free_to_horizon
  double reached_t;
  bool exhausted;  // queue drained before the horizon (finite meshed domain)
  std::optional<ShockInfo> shock;
  mesh::CharMesh mesh;
  long cells_fired = 0;
  long column_events = 0;
  // ids of the initial nodes, per meshed block, in x order (empty vector for
  // unmeshed blocks)
  std::vector<std::vector<mesh::NodeId>> initial_nodes;
};

RunOutcome solve_ibvp(const mesh::EntropyProfile& profile,
                      const std::vector<BlockInit>& data, const gas::GasModel& g,
                      const SolveOptions& opt = {});

// Samples callables on each block of the profile restricted to
// [x_lo, x_hi], inset half a spacing from block edges.  Slope callables are
// optional; when absent the samples are left for finite-difference filling.
std::vector<BlockInit> sample_blocks(
    const mesh::EntropyProfile& profile, double x_lo, double x_hi, double dx,
    const std::function<double(double)>& z0, const std::function<double(double)>& u0,
    const std::function<double(double)>& z0_x = nullptr,
    const std::function<double(double)>& u0_x = nullptr);

// Largest sound speed over the sampled data; c_max * horizon is the padding
// needed on a meshed far field for the observation window to be causal.
double max_sound_speed(const mesh::EntropyProfile& profile,
                       const std::vector<BlockInit>& data, const gas::GasModel& g);

// --- post-run classification -------------------------------------------

struct QuietReport {
  bool noninteracting = false;
  double quiet_time = 0.0;  // last contact activity above tolerance
  double residual = 0.0;    // strength level after quiet_time, relative
  bool boundary_verified = false;
};

// A run is eventually noninteracting when contact activity dies out before
// the horizon: every column event after some T carries wave strengths below
// tol_rel times the initial strength scale, the invariants transmitted into
// the far fields settle to the far-field constants, and the forward
// characteristic leaving the last interaction sweeps every contact to its
// right without further activity behind it (the interaction boundary).
// The default tolerance sits well below physical wave strengths but above
// the residue the crossing solver leaves once the exact waves cancel.
QuietReport detect_noninteracting(const RunOutcome& run, const gas::GasModel& g,
                                  double tol_rel = 1e-6);

struct VacuumOptions {
  double contact_slope = -0.25;   // vacuum needs a z decay at least this steep
  double c_drop = 0.25;           // required total sound-speed decay along a char
  // stalling needs a tail slope <= -(1 + margin); the margin only has to
  // reject the critical 1/t decay, where the travel still diverges
  double exponent_margin = 0.1;
  // x-progress over the final quarter of the horizon, as a fraction of the
  // total travel so far; a characteristic below this has stopped arriving
  double stall_frac = 0.05;
  int min_nodes = 8;
  int min_events = 6;
};

struct VacuumReport {
  bool vacuum = false;
  double z_slope = 0.0;           // steepest log z vs log t tail fit per contact
  int stalled_chars = 0;          // data-born backward chars that never arrive
  double c_decay_exponent = 0.0;  // log c vs log t tail fit, longest stalled char
  // smallest launch x among the stalled characteristics
  double bwd_start_min = std::numeric_limits<double>::quiet_NaN();
};

// Asymptotic vacuum is read off the contact traces: when wave matching at a
// contact fails, z there decays persistently (a power of t), while a contact
// that can absorb its incoming stream settles to a constant state.  The
// census of stalled backward characteristics (those whose remaining travel
// converges) then locates where the data stops being able to arrive.
VacuumReport detect_asymptotic_vacuum(const RunOutcome& run, const gas::GasModel& g,
                                      const VacuumOptions& opt = {});

// Combined verdict with the precedence
// shock > vacuum > noninteracting > shock-free-to-horizon.
struct Classification {
  RunStatus status;
  double T;  // shock time, quiet time, or horizon
  QuietReport quiet;
  VacuumReport vacuum;
};

Classification classify(const RunOutcome& run, const gas::GasModel& g,
                        double quiet_tol_rel = 1e-6, const VacuumOptions& vopt = {});

// --- reflection chains ---------------------------------------------------

struct Reflection {
  double t;
  int column;
  double z_strip;  // z on the arrival side of the contact, after the solve
  double u_strip;
  std::size_t event_index;
  mesh::CharId in_char;
};

// Follows a characteristic into its terminating column event and then the
// chain of reflected characteristics, recording one entry per bounce.
// `family` is the family of `start`.
std::vector<Reflection> trace_reflections(const RunOutcome& run, mesh::CharId start,
                                          waves::CharFamily family);

}  // namespace gasdyn::moc
