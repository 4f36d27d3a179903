#include "gasdyn/mesh.hpp"

#include <algorithm>
#include <cmath>

#include "gasdyn/errors.hpp"
#include "gasdyn/waves.hpp"

namespace gasdyn::mesh {

EntropyProfile EntropyProfile::piecewise_constant(const std::vector<double>& breaks,
                                                  const std::vector<double>& m_values,
                                                  const gas::GasModel& g) {
  if (m_values.empty())
    throw config_error("entropy profile: need at least one block value");
  if (breaks.size() + 1 != m_values.size())
    throw config_error("entropy profile: need one more block value than breaks");
  for (std::size_t i = 1; i < breaks.size(); ++i)
    if (!(breaks[i] > breaks[i - 1]))
      throw config_error("entropy profile: breaks must be strictly increasing");
  for (double m : m_values)
    if (!(m > 0.0) || !std::isfinite(m))
      throw config_error("entropy profile: block values must be positive");

  EntropyProfile p;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m_values.size(); ++i) {
    const double lo = i == 0 ? -inf : breaks[i - 1];
    const double hi = i == breaks.size() ? inf : breaks[i];
    p.blocks_.push_back({lo, hi, m_values[i]});
  }
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    const double ml = m_values[i];
    const double mr = m_values[i + 1];
    p.jumps_.push_back({breaks[i], ml, mr, waves::contact_q(ml, mr, g)});
  }
  return p;
}

EntropyProfile EntropyProfile::uniform(double m) {
  if (!(m > 0.0) || !std::isfinite(m))
    throw config_error("entropy profile: block value must be positive");
  EntropyProfile p;
  const double inf = std::numeric_limits<double>::infinity();
  p.blocks_.push_back({-inf, inf, m});
  return p;
}

std::size_t EntropyProfile::block_of(double x) const {
  std::size_t i = 0;
  while (i < jumps_.size() && x >= jumps_[i].x) ++i;
  return i;
}

double EntropyProfile::m_at(double x) const { return blocks_[block_of(x)].m; }

bool EntropyProfile::non_decreasing() const {
  for (std::size_t i = 1; i < blocks_.size(); ++i)
    if (blocks_[i].m < blocks_[i - 1].m) return false;
  return true;
}

bool EntropyProfile::non_increasing() const {
  for (std::size_t i = 1; i < blocks_.size(); ++i)
    if (blocks_[i].m > blocks_[i - 1].m) return false;
  return true;
}

bool EntropyProfile::constant() const { return jumps_.empty(); }

}  // namespace gasdyn::mesh
