#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "gasdyn/gas.hpp"

// Characteristic mesh for piecewise-isentropic flow: the entropy profile is
// piecewise constant in the material coordinate, so the field is a sequence
// of uniform-entropy blocks separated by stationary contacts.  Mesh nodes
// live on intersections of forward and backward characteristics inside
// blocks; everything that happens at a contact is recorded as a column
// event.

namespace gasdyn::mesh {

using NodeId = std::int64_t;
using CharId = std::int64_t;
inline constexpr NodeId kNoNode = -1;
inline constexpr CharId kNoChar = -1;

struct EntropyBlock {
  double x_lo;  // -infinity for the leftmost block
  double x_hi;  // +infinity for the rightmost block
  double m;
};

struct EntropyJump {
  double x;
  double m_left;
  double m_right;
  double q;  // contact strength (m_right/m_left)^((d-1)/(d+1))
};

class EntropyProfile {
 public:
  // n break positions (strictly increasing) and n+1 entropy values.
  static EntropyProfile piecewise_constant(const std::vector<double>& breaks,
                                           const std::vector<double>& m_values,
                                           const gas::GasModel& g);
  static EntropyProfile uniform(double m);

  const std::vector<EntropyBlock>& blocks() const { return blocks_; }
  const std::vector<EntropyJump>& jumps() const { return jumps_; }

  // Right-continuous: at a break the value of the block to the right.
  double m_at(double x) const;
  std::size_t block_of(double x) const;

  bool non_decreasing() const;
  bool non_increasing() const;
  bool constant() const;

 private:
  std::vector<EntropyBlock> blocks_;
  std::vector<EntropyJump> jumps_;
};

struct MeshNode {
  double x = 0.0;
  double t = 0.0;
  double z = 0.0;
  double u = 0.0;
  double alpha = 0.0;  // forward wave strength
  double beta = 0.0;   // backward wave strength
  int block = 0;
  CharId fwd_char = kNoChar;
  CharId bwd_char = kNoChar;
  NodeId parent_left = kNoNode;   // supplied the forward characteristic
  NodeId parent_right = kNoNode;  // supplied the backward characteristic
  // A node leaves the advancing front once both its outgoing
  // characteristics have been used by a cell or terminated at a contact.
  bool fwd_used = false;
  bool bwd_used = false;
};

// One side of a contact at one instant, after the transmission solve.
struct SideTrace {
  double t = 0.0;
  double r = 0.0;
  double s = 0.0;
  double z = 0.0;
  double u = 0.0;
  double alpha = 0.0;
  double beta = 0.0;
};

struct ColumnEvent {
  int column = 0;  // index into EntropyProfile::jumps()
  double t = 0.0;
  bool from_left = true;  // true: forward characteristic arrived from the left
  CharId in_char = kNoChar;
  // set when two opposite arrivals were close enough in time to be resolved
  // as one joint crossing; holds the other family's incoming characteristic
  CharId paired_in_char = kNoChar;
  CharId reflected_char = kNoChar;    // new characteristic on the arrival side
  CharId transmitted_char = kNoChar;  // new characteristic on the far side
  SideTrace left;
  SideTrace right;
  NodeId spawned_left = kNoNode;   // kNoNode when that side is not meshed
  NodeId spawned_right = kNoNode;
};

struct CharMesh {
  EntropyProfile profile;
  std::vector<MeshNode> nodes;
  // Node ids in increasing time per characteristic id.
  std::vector<std::vector<NodeId>> fwd_chars;
  std::vector<std::vector<NodeId>> bwd_chars;
  std::vector<ColumnEvent> events;                   // in firing order
  std::vector<std::vector<std::size_t>> by_column;   // event indices per contact
  double initial_strength_scale = 0.0;               // max |alpha|,|beta| at t = 0
};

}  // namespace gasdyn::mesh
