#include "gasdyn/rc_check.hpp"

#include <algorithm>
#include <cmath>

#include "gasdyn/errors.hpp"

namespace gasdyn::rc {

namespace {

using gradients::RcLabel;

RcLabel label_with_tol(double v, double tol) {
  if (v > tol) return RcLabel::rarefactive;
  if (v < -tol) return RcLabel::compressive;
  return RcLabel::neutral;
}

RcLabel flip(RcLabel l) {
  switch (l) {
    case RcLabel::rarefactive:
      return RcLabel::compressive;
    case RcLabel::compressive:
      return RcLabel::rarefactive;
    default:
      return RcLabel::neutral;
  }
}

// Required character of the opposite family for a transition from -> to,
// under non-decreasing entropy:
//   forward family:  req = to   (or flip(from) when the character vanishes)
//   backward family: req = from (or flip(to) when it appears from neutral)
RcLabel required_for(waves::CharFamily fam, RcLabel from, RcLabel to, bool increasing) {
  RcLabel req;
  if (fam == waves::CharFamily::forward)
    req = to != RcLabel::neutral ? to : flip(from);
  else
    req = from != RcLabel::neutral ? from : flip(to);
  return increasing ? req : flip(req);
}

const char* label_name(RcLabel l) {
  switch (l) {
    case RcLabel::rarefactive:
      return "R";
    case RcLabel::compressive:
      return "C";
    default:
      return "0";
  }
}

}  // namespace

std::vector<RcViolation> check_global_rc(const mesh::EntropyProfile& profile,
                                         std::vector<RcSample> samples,
                                         double neutral_tol_rel) {
  const bool up = profile.non_decreasing();
  const bool down = profile.non_increasing();
  if (!up && !down)
    throw hypothesis_error("check_global_rc: entropy profile is not monotone");
  std::vector<RcViolation> out;
  if (profile.constant() || samples.size() < 2) return out;

  std::sort(samples.begin(), samples.end(),
            [](const RcSample& a, const RcSample& b) { return a.x < b.x; });

  double peak = 0.0;
  for (const auto& s : samples)
    peak = std::max({peak, std::abs(s.alpha), std::abs(s.beta)});
  const double tol = neutral_tol_rel * peak;

  auto check_family = [&](waves::CharFamily fam) {
    auto own = [&](const RcSample& s) { return fam == waves::CharFamily::forward ? s.alpha : s.beta; };
    auto opp = [&](const RcSample& s) { return fam == waves::CharFamily::forward ? s.beta : s.alpha; };

    for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
      const RcSample& a = samples[i];
      const RcSample& b = samples[i + 1];
      const RcLabel la = label_with_tol(own(a), tol);
      const RcLabel lb = label_with_tol(own(b), tol);
      if (la == lb) continue;
      const RcLabel req = required_for(fam, la, lb, up);
      const RcLabel forbidden = flip(req);
      const RcLabel oa = label_with_tol(opp(a), tol);
      const RcLabel ob = label_with_tol(opp(b), tol);

      const bool crosses_contact = profile.block_of(a.x) != profile.block_of(b.x);
      bool bad;
      if (crosses_contact) {
        // at a contact the required character must hold on both sides
        bad = oa == forbidden || ob == forbidden;
      } else {
        // in a block the transition passes if either bracketing sample shows
        // the required character, or the opposite family is neutral there
        bad = !(oa == req || ob == req || (oa == RcLabel::neutral && ob == RcLabel::neutral));
      }
      if (bad) {
        RcViolation v;
        v.x = crosses_contact
                  ? profile.jumps()[std::min(profile.block_of(a.x),
                                             profile.jumps().size() - 1)]
                        .x
                  : 0.5 * (a.x + b.x);
        v.family = fam;
        v.from = la;
        v.to = lb;
        v.required = req;
        v.at_contact = crosses_contact;
        v.detail = std::string(fam == waves::CharFamily::forward ? "forward" : "backward") +
                   " transition " + label_name(la) + "->" + label_name(lb) +
                   " needs opposite " + label_name(req) +
                   (crosses_contact ? " on both sides of the contact" : "");
        out.push_back(std::move(v));
      }
    }
  };
  check_family(waves::CharFamily::forward);
  check_family(waves::CharFamily::backward);
  std::sort(out.begin(), out.end(),
            [](const RcViolation& a, const RcViolation& b) { return a.x < b.x; });
  return out;
}

}  // namespace gasdyn::rc
