#pragma once

#include <string>
#include <vector>

#include "gasdyn/gradients.hpp"
#include "gasdyn/mesh.hpp"
#include "gasdyn/waves.hpp"

// Structural admissibility of a wave-strength pattern against a monotone
// entropy profile.  Where the character (rarefactive/compressive) of one
// family changes along x, the opposite family has a required character; the
// requirement flips with the direction of entropy monotonicity.  At a
// contact the required character must hold on both sides.  A sample only
// violates the rule when it shows the character opposite to the required
// one; neutral passes.

namespace gasdyn::rc {

struct RcSample {
  double x;
  double alpha;
  double beta;
};

struct RcViolation {
  double x;  // transition location (contact position or bracketing midpoint)
  waves::CharFamily family;  // the family whose character changes
  gradients::RcLabel from;
  gradients::RcLabel to;
  gradients::RcLabel required;  // required character of the opposite family
  bool at_contact;
  std::string detail;
};

// Samples must cover the profile left to right; they are sorted internally.
// Non-monotone profiles are outside the hypothesis of the pattern rule.
// Constant profiles impose no constraint.
std::vector<RcViolation> check_global_rc(const mesh::EntropyProfile& profile,
                                         std::vector<RcSample> samples,
                                         double neutral_tol_rel = 1e-9);

}  // namespace gasdyn::rc
