#include "gasdyn/moc.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>

#include "gasdyn/errors.hpp"
#include "gasdyn/gradients.hpp"

namespace gasdyn::moc {

namespace {

constexpr std::size_t kNpos = static_cast<std::size_t>(-1);

double k1_of(double z, double d) { return 0.5 * d * std::pow(z, d - 1.0); }

// in-block transport right-hand side (m_x = 0): d(own)/dt = k1 (own*other - own^2)
double strength_rhs(double own, double other, double k1) {
  return k1 * (own * other - own * own);
}

struct Slot {
  mesh::NodeId node = mesh::kNoNode;  // kNoNode marks a column slot
  int column = -1;
  std::size_t prev = kNpos;
  std::size_t next = kNpos;
  bool alive = true;
};

struct SideLedger {
  bool constant = false;
  std::vector<mesh::SideTrace> entries;
};

struct Column {
  int index = 0;
  double x = 0.0;
  double m_l = 0.0, m_r = 0.0, q = 1.0;
  SideLedger left, right;
  bool dormant = false;  // pulled to vacuum; stops transmitting
  std::size_t slot = kNpos;
};

enum class EvKind { cell, arrive_left, arrive_right, shock_candidate };

struct Ev {
  double t = 0.0;
  long seq = 0;
  EvKind kind = EvKind::cell;
  std::size_t ls = kNpos, rs = kNpos;
  int retries = 0;
  ShockInfo shock{};
};

struct EvAfter {
  bool operator()(const Ev& a, const Ev& b) const {
    if (a.t != b.t) return a.t > b.t;
    return a.seq > b.seq;
  }
};

// Fill NaN slopes by finite differences on a uniform grid; order drops with
// the stencil room available.
void fill_slopes(std::vector<InitSample>& v) {
  const std::size_t n = v.size();
  bool need = false;
  for (const auto& s : v) need |= std::isnan(s.z_x) || std::isnan(s.u_x);
  if (!need) return;
  if (n == 1) {
    if (std::isnan(v[0].z_x)) v[0].z_x = 0.0;
    if (std::isnan(v[0].u_x)) v[0].u_x = 0.0;
    return;
  }
  const double h = v[1].x - v[0].x;
  for (std::size_t i = 1; i + 1 < n; ++i)
    if (std::abs((v[i + 1].x - v[i].x) - h) > 1e-6 * std::abs(h))
      throw config_error("initial samples: finite-difference slopes need uniform spacing");

  auto deriv = [&](auto get) {
    std::vector<double> f(n), out(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = get(v[i]);
    if (n >= 5) {
      out[0] = (-25 * f[0] + 48 * f[1] - 36 * f[2] + 16 * f[3] - 3 * f[4]) / (12 * h);
      out[1] = (-3 * f[0] - 10 * f[1] + 18 * f[2] - 6 * f[3] + f[4]) / (12 * h);
      for (std::size_t i = 2; i + 2 < n; ++i)
        out[i] = (f[i - 2] - 8 * f[i - 1] + 8 * f[i + 1] - f[i + 2]) / (12 * h);
      out[n - 2] = (3 * f[n - 1] + 10 * f[n - 2] - 18 * f[n - 3] + 6 * f[n - 4] - f[n - 5]) / (12 * h);
      out[n - 1] = (25 * f[n - 1] - 48 * f[n - 2] + 36 * f[n - 3] - 16 * f[n - 4] + 3 * f[n - 5]) / (12 * h);
    } else if (n == 4) {
      out[0] = (-11 * f[0] + 18 * f[1] - 9 * f[2] + 2 * f[3]) / (6 * h);
      out[1] = (-2 * f[0] - 3 * f[1] + 6 * f[2] - f[3]) / (6 * h);
      out[2] = (f[0] - 6 * f[1] + 3 * f[2] + 2 * f[3]) / (6 * h);
      out[3] = (-2 * f[0] + 9 * f[1] - 18 * f[2] + 11 * f[3]) / (6 * h);
    } else if (n == 3) {
      out[0] = (-3 * f[0] + 4 * f[1] - f[2]) / (2 * h);
      out[1] = (f[2] - f[0]) / (2 * h);
      out[2] = (f[0] - 4 * f[1] + 3 * f[2]) / (2 * h);
    } else {
      out[0] = out[1] = (f[1] - f[0]) / h;
    }
    return out;
  };
  const auto dz = deriv([](const InitSample& s) { return s.z; });
  const auto du = deriv([](const InitSample& s) { return s.u; });
  for (std::size_t i = 0; i < n; ++i) {
    if (std::isnan(v[i].z_x)) v[i].z_x = dz[i];
    if (std::isnan(v[i].u_x)) v[i].u_x = du[i];
  }
}

class Solver {
 public:
  Solver(const mesh::EntropyProfile& profile, std::vector<BlockInit> data,
         const gas::GasModel& g, const SolveOptions& opt)
      : g_(g), opt_(opt), data_(std::move(data)) {
    out_.mesh.profile = profile;
    build_initial();
  }

  RunOutcome run() {
    while (!pq_.empty() && !shock_hit_) {
      Ev ev = pq_.top();
      pq_.pop();
      if (ev.t > opt_.horizon) {
        hit_horizon_ = true;
        break;
      }
      if (!valid(ev)) continue;
      switch (ev.kind) {
        case EvKind::cell:
          fire_cell(ev);
          break;
        case EvKind::arrive_left:
          fire_arrival(ev, true);
          break;
        case EvKind::arrive_right:
          fire_arrival(ev, false);
          break;
        case EvKind::shock_candidate:
          out_.shock = ev.shock;
          shock_hit_ = true;
          break;
      }
    }
    finish();
    return std::move(out_);
  }

 private:
  gas::GasModel g_;
  SolveOptions opt_;
  std::vector<BlockInit> data_;
  RunOutcome out_{};
  std::vector<Slot> slots_;
  std::size_t head_ = kNpos;
  std::vector<Column> cols_;
  std::priority_queue<Ev, std::vector<Ev>, EvAfter> pq_;
  long seq_ = 0;
  bool shock_hit_ = false;
  bool hit_horizon_ = false;
  bool all_constant_ = false;
  double last_fired_t_ = 0.0;

  const mesh::EntropyProfile& profile() const { return out_.mesh.profile; }

  double block_m(int b) const { return profile().blocks()[b].m; }
  double c_of(const mesh::MeshNode& n) const {
    return block_m(n.block) * std::pow(n.z, g_.d);
  }
  double node_r(const mesh::MeshNode& n) const { return n.u - block_m(n.block) * n.z; }
  double node_s(const mesh::MeshNode& n) const { return n.u + block_m(n.block) * n.z; }

  // --- construction ------------------------------------------------------

  void build_initial() {
    const auto& blocks = profile().blocks();
    const auto& jumps = profile().jumps();
    if (data_.size() != blocks.size())
      throw config_error("solve_ibvp: need one data set per entropy block");

    for (std::size_t b = 0; b < blocks.size(); ++b) {
      auto& v = data_[b].samples;
      if (v.empty()) throw config_error("solve_ibvp: every block needs at least one sample");
      const bool interior = b > 0 && b + 1 < blocks.size();
      if (interior && v.size() < 2)
        throw config_error("solve_ibvp: interior blocks need at least two samples");
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (!(v[i].z > 0.0) || !std::isfinite(v[i].z) || !std::isfinite(v[i].u))
          throw config_error("solve_ibvp: samples need finite u and positive z");
        if (!(v[i].x > blocks[b].x_lo && v[i].x < blocks[b].x_hi))
          throw config_error("solve_ibvp: sample outside its block");
        if (i > 0 && !(v[i].x > v[i - 1].x))
          throw config_error("solve_ibvp: samples must be strictly increasing in x");
      }
      fill_slopes(v);
    }

    // Constant outermost blocks are left unmeshed: the far field feeds the
    // adjoining contact exactly for all time.
    std::vector<bool> meshed(blocks.size(), true);
    auto is_const = [&](const BlockInit& bi) {
      for (const auto& s : bi.samples)
        if (s.z != bi.samples[0].z || s.u != bi.samples[0].u || s.z_x != 0.0 || s.u_x != 0.0)
          return false;
      return true;
    };
    if (blocks.size() >= 1 && is_const(data_.front())) meshed.front() = false;
    if (blocks.size() >= 1 && is_const(data_.back())) meshed.back() = false;
    all_constant_ = true;
    for (std::size_t b = 0; b < blocks.size(); ++b)
      all_constant_ = all_constant_ && !meshed[b];

    out_.initial_nodes.resize(blocks.size());
    out_.mesh.by_column.resize(jumps.size());

    // nodes, slots and columns, left to right
    double scale = 0.0;
    std::size_t prev_slot = kNpos;
    auto link = [&](std::size_t s) {
      slots_[s].prev = prev_slot;
      if (prev_slot != kNpos) slots_[prev_slot].next = s;
      else head_ = s;
      prev_slot = s;
    };

    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (meshed[b]) {
        const double m = blocks[b].m;
        for (const auto& smp : data_[b].samples) {
          const double alpha = smp.u_x + m * smp.z_x;
          const double beta = smp.u_x - m * smp.z_x;
          scale = std::max({scale, std::abs(alpha), std::abs(beta)});
          const CharIdPair ch = fresh_char_pair();
          const mesh::NodeId id =
              add_node(smp.x, 0.0, smp.z, smp.u, alpha, beta, static_cast<int>(b),
                       ch.fwd, ch.bwd, mesh::kNoNode, mesh::kNoNode);
          out_.initial_nodes[b].push_back(id);
          slots_.push_back(Slot{id, -1, kNpos, kNpos, true});
          link(slots_.size() - 1);
        }
      }
      if (b < jumps.size()) {
        Column c;
        c.index = static_cast<int>(b);
        c.x = jumps[b].x;
        c.m_l = jumps[b].m_left;
        c.m_r = jumps[b].m_right;
        c.q = jumps[b].q;
        c.left = initial_ledger(b, meshed[b], true);
        c.right = initial_ledger(b + 1, meshed[b + 1], false);
        check_continuity(c);
        slots_.push_back(Slot{mesh::kNoNode, static_cast<int>(b), kNpos, kNpos, true});
        c.slot = slots_.size() - 1;
        cols_.push_back(c);
        link(c.slot);

        // synthetic event recording the initial side states
        mesh::ColumnEvent e;
        e.column = c.index;
        e.t = 0.0;
        e.from_left = true;
        e.left = c.left.entries.front();
        e.right = c.right.entries.front();
        record_event(std::move(e));
      }
    }
    out_.mesh.initial_strength_scale = scale;

    for (std::size_t s = head_; s != kNpos; s = slots_[s].next)
      if (slots_[s].next != kNpos) try_schedule(s, slots_[s].next);
  }

  struct CharIdPair {
    mesh::CharId fwd, bwd;
  };
  CharIdPair fresh_char_pair() {
    out_.mesh.fwd_chars.emplace_back();
    out_.mesh.bwd_chars.emplace_back();
    return {static_cast<mesh::CharId>(out_.mesh.fwd_chars.size() - 1),
            static_cast<mesh::CharId>(out_.mesh.bwd_chars.size() - 1)};
  }
  mesh::CharId fresh_fwd() {
    out_.mesh.fwd_chars.emplace_back();
    return static_cast<mesh::CharId>(out_.mesh.fwd_chars.size() - 1);
  }
  mesh::CharId fresh_bwd() {
    out_.mesh.bwd_chars.emplace_back();
    return static_cast<mesh::CharId>(out_.mesh.bwd_chars.size() - 1);
  }

  mesh::NodeId add_node(double x, double t, double z, double u, double alpha,
                        double beta, int block, mesh::CharId fc, mesh::CharId bc,
                        mesh::NodeId pl, mesh::NodeId pr) {
    if (static_cast<long>(out_.mesh.nodes.size()) >= opt_.max_nodes)
      throw numerical_error("solve_ibvp: node budget exceeded");
    mesh::MeshNode n;
    n.x = x;
    n.t = t;
    n.z = z;
    n.u = u;
    n.alpha = alpha;
    n.beta = beta;
    n.block = block;
    n.fwd_char = fc;
    n.bwd_char = bc;
    n.parent_left = pl;
    n.parent_right = pr;
    const mesh::NodeId id = static_cast<mesh::NodeId>(out_.mesh.nodes.size());
    out_.mesh.nodes.push_back(n);
    if (fc != mesh::kNoChar) out_.mesh.fwd_chars[fc].push_back(id);
    if (bc != mesh::kNoChar) out_.mesh.bwd_chars[bc].push_back(id);
    return id;
  }

  // One-sided initial values at a contact, extended linearly from the
  // nearest sample.  `left_side` selects the side of the contact, i.e. the
  // last sample of the block to its left or the first of the block to its
  // right.
  SideLedger initial_ledger(std::size_t block, bool is_meshed, bool left_side) {
    const auto& v = data_[block].samples;
    const InitSample& smp = left_side ? v.back() : v.front();
    const double m = block_m(static_cast<int>(block));
    const double x_c = left_side ? profile().blocks()[block].x_hi : profile().blocks()[block].x_lo;
    SideLedger led;
    led.constant = !is_meshed;
    mesh::SideTrace tr;
    tr.t = 0.0;
    const double dx = led.constant ? 0.0 : x_c - smp.x;
    tr.z = smp.z + smp.z_x * dx;
    tr.u = smp.u + smp.u_x * dx;
    tr.r = tr.u - m * tr.z;
    tr.s = tr.u + m * tr.z;
    tr.alpha = led.constant ? 0.0 : smp.u_x + m * smp.z_x;
    tr.beta = led.constant ? 0.0 : smp.u_x - m * smp.z_x;
    if (!(tr.z > 0.0))
      throw config_error("solve_ibvp: initial data reaches vacuum at a contact");
    led.entries.push_back(tr);
    return led;
  }

  void check_continuity(const Column& c) const {
    const auto& l = c.left.entries.front();
    const auto& r = c.right.entries.front();
    const double p_l = c.m_l * c.m_l * std::pow(l.z, g_.d + 1.0) / (g_.d + 1.0);
    const double p_r = c.m_r * c.m_r * std::pow(r.z, g_.d + 1.0) / (g_.d + 1.0);
    const double u_scale = std::max({1.0, std::abs(l.u), std::abs(r.u)});
    const double p_scale = std::max({p_l, p_r, 1e-300});
    if (std::abs(l.u - r.u) > opt_.contact_continuity_tol * u_scale ||
        std::abs(p_l - p_r) > opt_.contact_continuity_tol * p_scale)
      throw config_error("solve_ibvp: initial data breaks u, p continuity at contact x=" +
                         std::to_string(c.x));
  }

  void record_event(mesh::ColumnEvent e) {
    out_.mesh.by_column[e.column].push_back(out_.mesh.events.size());
    out_.mesh.events.push_back(std::move(e));
  }

  // --- front bookkeeping --------------------------------------------------

  void insert_between(std::size_t left, std::size_t right, std::size_t s) {
    slots_[s].prev = left;
    slots_[s].next = right;
    if (left != kNpos) slots_[left].next = s;
    else head_ = s;
    if (right != kNpos) slots_[right].prev = s;
  }

  void unlink(std::size_t s) {
    Slot& sl = slots_[s];
    sl.alive = false;
    if (sl.prev != kNpos) slots_[sl.prev].next = sl.next;
    else head_ = sl.next;
    if (sl.next != kNpos) slots_[sl.next].prev = sl.prev;
  }

  void retire_if_done(std::size_t s) {
    const Slot& sl = slots_[s];
    if (sl.node == mesh::kNoNode) return;  // columns stay
    const mesh::MeshNode& n = out_.mesh.nodes[sl.node];
    if (n.fwd_used && n.bwd_used) {
      const std::size_t p = sl.prev, q = sl.next;
      unlink(s);
      if (p != kNpos && q != kNpos) try_schedule(p, q);
    }
  }

  bool valid(const Ev& ev) const {
    if (ev.ls == kNpos || ev.rs == kNpos) return false;
    const Slot& L = slots_[ev.ls];
    const Slot& R = slots_[ev.rs];
    if (!L.alive || !R.alive || L.next != ev.rs) return false;
    if (L.node != mesh::kNoNode && out_.mesh.nodes[L.node].fwd_used) return false;
    if (R.node != mesh::kNoNode && out_.mesh.nodes[R.node].bwd_used) return false;
    if (L.node == mesh::kNoNode && cols_[L.column].dormant) return false;
    if (R.node == mesh::kNoNode && cols_[R.column].dormant) return false;
    return true;
  }

  // --- scheduling ----------------------------------------------------------

  void try_schedule(std::size_t ls, std::size_t rs) {
    const Slot& L = slots_[ls];
    const Slot& R = slots_[rs];
    if (!L.alive || !R.alive) return;
    const bool l_node = L.node != mesh::kNoNode;
    const bool r_node = R.node != mesh::kNoNode;
    if (l_node && out_.mesh.nodes[L.node].fwd_used) return;
    if (r_node && out_.mesh.nodes[R.node].bwd_used) return;

    if (l_node && r_node) {
      schedule_cell(ls, rs);
    } else if (l_node) {
      if (cols_[R.column].dormant) return;
      const mesh::MeshNode& n = out_.mesh.nodes[L.node];
      Ev ev;
      ev.kind = EvKind::arrive_left;
      ev.ls = ls;
      ev.rs = rs;
      ev.t = arrival_time(n, cols_[R.column], true);
      ev.seq = seq_++;
      pq_.push(ev);
    } else if (r_node) {
      if (cols_[L.column].dormant) return;
      const mesh::MeshNode& n = out_.mesh.nodes[R.node];
      Ev ev;
      ev.kind = EvKind::arrive_right;
      ev.ls = ls;
      ev.rs = rs;
      ev.t = arrival_time(n, cols_[L.column], false);
      ev.seq = seq_++;
      pq_.push(ev);
    }
    // column-column adjacency cannot happen: interior blocks carry samples
  }

  struct CellGeom {
    double s, r, z, u, c;
    double t, x;
    bool vacuum = false;
    bool crossed = false;
  };

  CellGeom cell_geometry(const mesh::MeshNode& A, const mesh::MeshNode& B) const {
    CellGeom geo{};
    const double m = block_m(A.block);
    geo.s = node_s(A);
    geo.r = node_r(B);
    geo.z = (geo.s - geo.r) / (2.0 * m);
    geo.u = 0.5 * (geo.s + geo.r);
    if (!(geo.z > 0.0)) {
      geo.vacuum = true;  // characteristics diverge, no intersection
      return geo;
    }
    geo.c = m * std::pow(geo.z, g_.d);
    const double cf = 0.5 * (c_of(A) + geo.c);
    const double cb = 0.5 * (c_of(B) + geo.c);
    geo.t = (B.x - A.x + cf * A.t + cb * B.t) / (cf + cb);
    const double t_floor = std::max(A.t, B.t);
    if (geo.t < t_floor - 1e-13 * (1.0 + std::abs(t_floor))) {
      geo.crossed = true;
      geo.t = t_floor;
      geo.x = 0.5 * (A.x + B.x);
      return geo;
    }
    geo.t = std::max(geo.t, t_floor);
    geo.x = A.x + cf * (geo.t - A.t);
    return geo;
  }

  void schedule_cell(std::size_t ls, std::size_t rs) {
    const mesh::MeshNode& A = out_.mesh.nodes[slots_[ls].node];
    const mesh::MeshNode& B = out_.mesh.nodes[slots_[rs].node];
    assert(A.block == B.block);
    const CellGeom geo = cell_geometry(A, B);
    if (geo.vacuum) return;  // permanent gap; the pair never interacts
    Ev ev;
    ev.ls = ls;
    ev.rs = rs;
    ev.seq = seq_++;
    if (geo.crossed) {
      ev.kind = EvKind::shock_candidate;
      ev.t = geo.t;
      ev.shock = ShockInfo{ShockInfo::Cause::char_crossing, geo.t, geo.x,
                           A.block, A.alpha, B.beta};
    } else {
      ev.kind = EvKind::cell;
      ev.t = geo.t;
    }
    pq_.push(ev);
  }

  // --- cell firing ----------------------------------------------------------

  void fire_cell(const Ev& ev) {
    const mesh::NodeId idA = slots_[ev.ls].node;
    const mesh::NodeId idB = slots_[ev.rs].node;
    const mesh::MeshNode A = out_.mesh.nodes[idA];
    const mesh::MeshNode B = out_.mesh.nodes[idB];
    const CellGeom geo = cell_geometry(A, B);
    if (geo.vacuum) return;
    if (geo.crossed) {
      out_.shock = ShockInfo{ShockInfo::Cause::char_crossing, geo.t, geo.x,
                             A.block, A.alpha, B.beta};
      shock_hit_ = true;
      return;
    }
    last_fired_t_ = std::max(last_fired_t_, geo.t);

    const double d = g_.d;
    const double k1A = k1_of(A.z, d);
    const double k1B = k1_of(B.z, d);
    const double k1P = k1_of(geo.z, d);
    const double dtA = geo.t - A.t;
    const double dtB = geo.t - B.t;
    const double fA = strength_rhs(A.alpha, A.beta, k1A);
    const double gB = strength_rhs(B.beta, B.alpha, k1B);

    double a = A.alpha, b = B.beta;
    bool converged = false, blew = false;
    for (int it = 0; it < opt_.fp_max_iter; ++it) {
      const double na = A.alpha + 0.5 * dtA * (fA + strength_rhs(a, b, k1P));
      const double nb = B.beta + 0.5 * dtB * (gB + strength_rhs(b, a, k1P));
      if (std::abs(na) > opt_.blowup_threshold || std::abs(nb) > opt_.blowup_threshold) {
        a = na;
        b = nb;
        blew = true;
        break;
      }
      const bool done = std::abs(na - a) <= opt_.fp_tol * std::max(1.0, std::abs(na)) &&
                        std::abs(nb - b) <= opt_.fp_tol * std::max(1.0, std::abs(nb));
      a = na;
      b = nb;
      if (done) {
        converged = true;
        break;
      }
    }
    if (blew || std::abs(a) > opt_.blowup_threshold || std::abs(b) > opt_.blowup_threshold) {
      out_.shock = ShockInfo{ShockInfo::Cause::gradient_blowup, geo.t, geo.x,
                             A.block, a, b};
      shock_hit_ = true;
      return;
    }
    if (!converged)
      throw numerical_error(
          "solve_ibvp: wave-strength transport did not converge; refine the sampling");

    const mesh::NodeId idP = add_node(geo.x, geo.t, geo.z, geo.u, a, b, A.block,
                                      A.fwd_char, B.bwd_char, idA, idB);
    out_.cells_fired++;

    slots_.push_back(Slot{idP, -1, kNpos, kNpos, true});
    const std::size_t sp = slots_.size() - 1;
    insert_between(ev.ls, ev.rs, sp);
    out_.mesh.nodes[idA].fwd_used = true;
    out_.mesh.nodes[idB].bwd_used = true;
    retire_if_done(ev.ls);
    retire_if_done(ev.rs);
    const std::size_t lp = slots_[sp].prev;
    const std::size_t rn = slots_[sp].next;
    if (lp != kNpos) try_schedule(lp, sp);
    if (rn != kNpos) try_schedule(sp, rn);
  }

  // --- contact handling -------------------------------------------------------

  static mesh::SideTrace ledger_eval(const SideLedger& led, double t) {
    mesh::SideTrace tr = led.entries.back();
    if (led.constant || led.entries.size() < 2) {
      tr.t = t;
      return tr;
    }
    const mesh::SideTrace& a = led.entries[led.entries.size() - 2];
    const mesh::SideTrace& b = led.entries.back();
    const double dt = b.t - a.t;
    if (!(dt > 1e-12 * (1.0 + std::abs(b.t)))) {
      tr.t = t;
      return tr;
    }
    // clamp: events fire at or past the newest entry, and extrapolating the
    // opposite side's trace feeds each event's output back into the next
    // event's input, which turns roundoff into a geometric oscillation
    const double w = std::clamp((t - a.t) / dt, 0.0, 1.0);
    auto mix = [&](double pa, double pb) { return pa + w * (pb - pa); };
    tr.t = t;
    tr.r = mix(a.r, b.r);
    tr.s = mix(a.s, b.s);
    tr.z = mix(a.z, b.z);
    tr.u = mix(a.u, b.u);
    tr.alpha = mix(a.alpha, b.alpha);
    tr.beta = mix(a.beta, b.beta);
    return tr;
  }

  double arrival_time(const mesh::MeshNode& n, const Column& c, bool from_left) const {
    const double dx = std::abs(c.x - n.x);
    const double cn = c_of(n);
    const double m_side = from_left ? c.m_l : c.m_r;
    double t = n.t + dx / cn;
    for (int it = 0; it < 20; ++it) {
      const mesh::SideTrace tr = ledger_eval(from_left ? c.left : c.right, t);
      const double c_col = tr.z > 0.0 ? m_side * std::pow(tr.z, g_.d) : cn;
      const double t_new = n.t + dx / (0.5 * (cn + c_col));
      if (std::abs(t_new - t) <= 1e-13 * (1.0 + std::abs(t_new))) {
        t = t_new;
        break;
      }
      t = t_new;
    }
    return std::max(t, n.t);
  }

  void fire_arrival(Ev ev, bool from_left) {
    Column& c = cols_[from_left ? slots_[ev.rs].column : slots_[ev.ls].column];
    const std::size_t node_slot = from_left ? ev.ls : ev.rs;
    const mesh::NodeId idN = slots_[node_slot].node;
    const mesh::MeshNode N = out_.mesh.nodes[idN];

    // The opposite ledger may have advanced since scheduling; recompute and
    // push back if the arrival now lands later than the next pending event.
    const double t_arr0 = arrival_time(N, c, from_left);
    if (ev.retries < 64 && !pq_.empty() &&
        t_arr0 > ev.t + 1e-12 * (1.0 + std::abs(ev.t)) && t_arr0 > pq_.top().t) {
      ev.t = t_arr0;
      ev.retries++;
      ev.seq = seq_++;
      pq_.push(ev);
      return;
    }
    double t_arr = t_arr0;

    // When the opposite family's next characteristic reaches the contact at
    // nearly the same time, resolve the two arrivals as one joint crossing.
    // The one-sided update reads the other side from its last event, and
    // during a dense two-sided crossing that one-event lag is the dominant
    // error at the column.
    if (opt_.pair_frac > 0.0) {
      const std::size_t opp = from_left ? slots_[c.slot].next : slots_[c.slot].prev;
      if (opp != kNpos && slots_[opp].alive && slots_[opp].node != mesh::kNoNode) {
        const mesh::MeshNode& M = out_.mesh.nodes[slots_[opp].node];
        if (from_left ? !M.bwd_used : !M.fwd_used) {
          const double t_opp = arrival_time(M, c, !from_left);
          const double leg = std::min(t_arr - N.t, t_opp - M.t);
          if (std::abs(t_opp - t_arr) <= opt_.pair_frac * leg) {
            if (from_left)
              fire_joint(c, node_slot, opp, std::max(t_arr, t_opp));
            else
              fire_joint(c, opp, node_slot, std::max(t_arr, t_opp));
            return;
          }
        }
      }
    }

    // keep ledger times non-decreasing
    t_arr = std::max({t_arr, c.left.entries.back().t, c.right.entries.back().t});
    last_fired_t_ = std::max(last_fired_t_, t_arr);

    const double Q = c.q;
    const mesh::SideTrace lext = ledger_eval(c.left, t_arr);
    const mesh::SideTrace rext = ledger_eval(c.right, t_arr);
    const double s_l = from_left ? node_s(N) : lext.s;
    const double r_r = from_left ? rext.r : node_r(N);
    const double r_l = (2.0 * r_r - (1.0 - Q) * s_l) / (1.0 + Q);
    const double s_r = 0.5 * ((1.0 - Q) * r_l + (1.0 + Q) * s_l);
    const double z_l = (s_l - r_l) / (2.0 * c.m_l);
    const double z_r = (s_r - r_r) / (2.0 * c.m_r);
    const double u_c = 0.5 * (r_l + s_l);
    if (!(z_l > 0.0) || !(z_r > 0.0)) {
      // the contact is being pulled into vacuum; it stops transmitting
      c.dormant = true;
      auto& n = out_.mesh.nodes[idN];
      (from_left ? n.fwd_used : n.bwd_used) = true;
      retire_if_done(node_slot);
      return;
    }

    // Wave strengths: transport the arriving strength along its final leg
    // (implicit trapezoid) coupled to the contact relations
    //   c_l (alpha_l - beta_l) = c_r (alpha_r - beta_r)      (du/dt matches)
    //   c_l^2 (alpha_l + beta_l) = c_r^2 (alpha_r + beta_r)  (dp/dt matches)
    // with rho = c_r/c_l = 1/Q.
    const double rho = 1.0 / Q;
    const double dt_leg = t_arr - N.t;
    const double k1N = k1_of(N.z, g_.d);
    const double k1_end = k1_of(from_left ? z_l : z_r, g_.d);
    double in_str = from_left ? N.alpha : N.beta;  // value at the column end of the leg
    const double rhs_start = from_left ? strength_rhs(N.alpha, N.beta, k1N)
                                       : strength_rhs(N.beta, N.alpha, k1N);
    double alpha_l = 0.0, beta_l = 0.0, alpha_r = 0.0, beta_r = 0.0;
    bool converged = false;
    for (int it = 0; it < opt_.fp_max_iter; ++it) {
      if (from_left) {
        alpha_l = in_str;
        beta_r = rext.beta;
      } else {
        beta_r = in_str;
        alpha_l = lext.alpha;
      }
      beta_l = ((rho - 1.0) * alpha_l + 2.0 * rho * rho * beta_r) / (1.0 + rho);
      alpha_r = (alpha_l - beta_l) / rho + beta_r;
      const double other_end = from_left ? beta_l : alpha_r;
      const double ni = (from_left ? N.alpha : N.beta) +
                        0.5 * dt_leg * (rhs_start + strength_rhs(in_str, other_end, k1_end));
      if (std::abs(ni) > opt_.blowup_threshold) {
        in_str = ni;
        break;
      }
      const bool done = std::abs(ni - in_str) <= opt_.fp_tol * std::max(1.0, std::abs(ni));
      in_str = ni;
      if (done) {
        converged = true;
        break;
      }
    }
    if (from_left) alpha_l = in_str;
    else beta_r = in_str;
    beta_l = ((rho - 1.0) * alpha_l + 2.0 * rho * rho * beta_r) / (1.0 + rho);
    alpha_r = (alpha_l - beta_l) / rho + beta_r;
    const double biggest = std::max({std::abs(alpha_l), std::abs(beta_l),
                                     std::abs(alpha_r), std::abs(beta_r)});
    if (biggest > opt_.blowup_threshold) {
      out_.shock = ShockInfo{ShockInfo::Cause::gradient_blowup, t_arr, c.x,
                             N.block, alpha_l, beta_r};
      shock_hit_ = true;
      return;
    }
    if (!converged)
      throw numerical_error(
          "solve_ibvp: contact strength transport did not converge; refine the sampling");

    mesh::ColumnEvent e;
    e.column = c.index;
    e.t = t_arr;
    e.from_left = from_left;
    e.in_char = from_left ? N.fwd_char : N.bwd_char;
    e.left = mesh::SideTrace{t_arr, r_l, s_l, z_l, u_c, alpha_l, beta_l};
    e.right = mesh::SideTrace{t_arr, r_r, s_r, z_r, u_c, alpha_r, beta_r};

    if (!c.left.constant) c.left.entries.push_back(e.left);
    if (!c.right.constant) c.right.entries.push_back(e.right);

    auto& n_arr = out_.mesh.nodes[idN];
    (from_left ? n_arr.fwd_used : n_arr.bwd_used) = true;

    // spawn the continuation nodes
    const int lblk = c.index;
    const int rblk = c.index + 1;
    std::size_t slot_l = kNpos, slot_r = kNpos;
    if (from_left) {
      const mesh::CharId refl = fresh_bwd();
      const mesh::CharId trans = fresh_fwd();
      e.reflected_char = refl;
      e.transmitted_char = trans;
      if (!c.left.constant) {
        const mesh::NodeId id = add_node(c.x, t_arr, z_l, u_c, alpha_l, beta_l, lblk,
                                         N.fwd_char, refl, idN, mesh::kNoNode);
        out_.mesh.nodes[id].fwd_used = true;
        e.spawned_left = id;
        slots_.push_back(Slot{id, -1, kNpos, kNpos, true});
        slot_l = slots_.size() - 1;
      }
      if (!c.right.constant) {
        const mesh::NodeId id = add_node(c.x, t_arr, z_r, u_c, alpha_r, beta_r, rblk,
                                         trans, mesh::kNoChar, mesh::kNoNode, idN);
        out_.mesh.nodes[id].bwd_used = true;
        e.spawned_right = id;
        slots_.push_back(Slot{id, -1, kNpos, kNpos, true});
        slot_r = slots_.size() - 1;
      }
    } else {
      const mesh::CharId refl = fresh_fwd();
      const mesh::CharId trans = fresh_bwd();
      e.reflected_char = refl;
      e.transmitted_char = trans;
      if (!c.right.constant) {
        const mesh::NodeId id = add_node(c.x, t_arr, z_r, u_c, alpha_r, beta_r, rblk,
                                         refl, N.bwd_char, mesh::kNoNode, idN);
        out_.mesh.nodes[id].bwd_used = true;
        e.spawned_right = id;
        slots_.push_back(Slot{id, -1, kNpos, kNpos, true});
        slot_r = slots_.size() - 1;
      }
      if (!c.left.constant) {
        const mesh::NodeId id = add_node(c.x, t_arr, z_l, u_c, alpha_l, beta_l, lblk,
                                         mesh::kNoChar, trans, idN, mesh::kNoNode);
        out_.mesh.nodes[id].fwd_used = true;
        e.spawned_left = id;
        slots_.push_back(Slot{id, -1, kNpos, kNpos, true});
        slot_l = slots_.size() - 1;
      }
    }
    out_.column_events++;
    record_event(std::move(e));

    if (slot_l != kNpos) insert_between(slots_[c.slot].prev, c.slot, slot_l);
    if (slot_r != kNpos) insert_between(c.slot, slots_[c.slot].next, slot_r);
    retire_if_done(node_slot);
    if (slot_l != kNpos && slots_[slot_l].prev != kNpos)
      try_schedule(slots_[slot_l].prev, slot_l);
    if (slot_r != kNpos && slots_[slot_r].next != kNpos)
      try_schedule(slot_r, slots_[slot_r].next);
  }

  // Joint crossing: a forward characteristic from slot_nl and a backward one
  // from slot_nr meet the column together, so both incoming strengths are
  // transported and the contact relations close the system with no lagged
  // ledger input.  One characteristic of each family is consumed and one of
  // each is emitted.
  void fire_joint(Column& c, std::size_t slot_nl, std::size_t slot_nr, double t_arr) {
    const mesh::NodeId idL = slots_[slot_nl].node;
    const mesh::NodeId idR = slots_[slot_nr].node;
    const mesh::MeshNode L = out_.mesh.nodes[idL];
    const mesh::MeshNode R = out_.mesh.nodes[idR];
    t_arr = std::max({t_arr, c.left.entries.back().t, c.right.entries.back().t});
    last_fired_t_ = std::max(last_fired_t_, t_arr);

    const double Q = c.q;
    const double s_l = node_s(L);
    const double r_r = node_r(R);
    const double r_l = (2.0 * r_r - (1.0 - Q) * s_l) / (1.0 + Q);
    const double s_r = 0.5 * ((1.0 - Q) * r_l + (1.0 + Q) * s_l);
    const double z_l = (s_l - r_l) / (2.0 * c.m_l);
    const double z_r = (s_r - r_r) / (2.0 * c.m_r);
    const double u_c = 0.5 * (r_l + s_l);
    if (!(z_l > 0.0) || !(z_r > 0.0)) {
      c.dormant = true;
      out_.mesh.nodes[idL].fwd_used = true;
      out_.mesh.nodes[idR].bwd_used = true;
      retire_if_done(slot_nl);
      retire_if_done(slot_nr);
      return;
    }

    const double rho = 1.0 / Q;
    const double dtL = t_arr - L.t;
    const double dtR = t_arr - R.t;
    const double rhsL = strength_rhs(L.alpha, L.beta, k1_of(L.z, g_.d));
    const double rhsR = strength_rhs(R.beta, R.alpha, k1_of(R.z, g_.d));
    const double k1l = k1_of(z_l, g_.d);
    const double k1r = k1_of(z_r, g_.d);
    double alpha_l = L.alpha, beta_r = R.beta, beta_l = 0.0, alpha_r = 0.0;
    bool converged = false;
    for (int it = 0; it < opt_.fp_max_iter; ++it) {
      beta_l = ((rho - 1.0) * alpha_l + 2.0 * rho * rho * beta_r) / (1.0 + rho);
      alpha_r = (alpha_l - beta_l) / rho + beta_r;
      const double na =
          L.alpha + 0.5 * dtL * (rhsL + strength_rhs(alpha_l, beta_l, k1l));
      const double nb =
          R.beta + 0.5 * dtR * (rhsR + strength_rhs(beta_r, alpha_r, k1r));
      if (std::abs(na) > opt_.blowup_threshold || std::abs(nb) > opt_.blowup_threshold) {
        alpha_l = na;
        beta_r = nb;
        break;
      }
      const bool done =
          std::abs(na - alpha_l) <= opt_.fp_tol * std::max(1.0, std::abs(na)) &&
          std::abs(nb - beta_r) <= opt_.fp_tol * std::max(1.0, std::abs(nb));
      alpha_l = na;
      beta_r = nb;
      if (done) {
        converged = true;
        break;
      }
    }
    beta_l = ((rho - 1.0) * alpha_l + 2.0 * rho * rho * beta_r) / (1.0 + rho);
    alpha_r = (alpha_l - beta_l) / rho + beta_r;
    const double biggest = std::max({std::abs(alpha_l), std::abs(beta_l),
                                     std::abs(alpha_r), std::abs(beta_r)});
    if (biggest > opt_.blowup_threshold) {
      out_.shock = ShockInfo{ShockInfo::Cause::gradient_blowup, t_arr, c.x,
                             L.block, alpha_l, beta_r};
      shock_hit_ = true;
      return;
    }
    if (!converged)
      throw numerical_error(
          "solve_ibvp: contact strength transport did not converge; refine the sampling");

    mesh::ColumnEvent e;
    e.column = c.index;
    e.t = t_arr;
    e.from_left = true;
    e.in_char = L.fwd_char;
    e.paired_in_char = R.bwd_char;
    e.left = mesh::SideTrace{t_arr, r_l, s_l, z_l, u_c, alpha_l, beta_l};
    e.right = mesh::SideTrace{t_arr, r_r, s_r, z_r, u_c, alpha_r, beta_r};
    if (!c.left.constant) c.left.entries.push_back(e.left);
    if (!c.right.constant) c.right.entries.push_back(e.right);

    out_.mesh.nodes[idL].fwd_used = true;
    out_.mesh.nodes[idR].bwd_used = true;

    const int lblk = c.index;
    const int rblk = c.index + 1;
    const mesh::CharId refl = fresh_bwd();
    const mesh::CharId trans = fresh_fwd();
    e.reflected_char = refl;
    e.transmitted_char = trans;
    std::size_t slot_l = kNpos, slot_r = kNpos;
    if (!c.left.constant) {
      const mesh::NodeId id = add_node(c.x, t_arr, z_l, u_c, alpha_l, beta_l, lblk,
                                       L.fwd_char, refl, idL, mesh::kNoNode);
      out_.mesh.nodes[id].fwd_used = true;
      e.spawned_left = id;
      slots_.push_back(Slot{id, -1, kNpos, kNpos, true});
      slot_l = slots_.size() - 1;
    }
    if (!c.right.constant) {
      const mesh::NodeId id = add_node(c.x, t_arr, z_r, u_c, alpha_r, beta_r, rblk,
                                       trans, R.bwd_char, mesh::kNoNode, idR);
      out_.mesh.nodes[id].bwd_used = true;
      e.spawned_right = id;
      slots_.push_back(Slot{id, -1, kNpos, kNpos, true});
      slot_r = slots_.size() - 1;
    }
    out_.column_events++;
    record_event(std::move(e));

    if (slot_l != kNpos) insert_between(slots_[c.slot].prev, c.slot, slot_l);
    if (slot_r != kNpos) insert_between(c.slot, slots_[c.slot].next, slot_r);
    retire_if_done(slot_nl);
    retire_if_done(slot_nr);
    if (slot_l != kNpos && slots_[slot_l].prev != kNpos)
      try_schedule(slots_[slot_l].prev, slot_l);
    if (slot_r != kNpos && slots_[slot_r].next != kNpos)
      try_schedule(slot_r, slots_[slot_r].next);
  }

  void finish() {
    if (out_.shock) {
      out_.status = RunStatus::shock_formed;
      out_.reached_t = out_.shock->t;
      out_.exhausted = false;
      return;
    }
    out_.status = RunStatus::shock_free_to_horizon;
    if (hit_horizon_ || all_constant_) {
      out_.reached_t = opt_.horizon;
      out_.exhausted = false;
    } else {
      out_.reached_t = last_fired_t_;
      out_.exhausted = true;
    }
  }
};

}  // namespace

RunOutcome solve_ibvp(const mesh::EntropyProfile& profile,
                      const std::vector<BlockInit>& data, const gas::GasModel& g,
                      const SolveOptions& opt) {
  if (!(opt.horizon > 0.0)) throw config_error("solve_ibvp: horizon must be positive");
  Solver s(profile, data, g, opt);
  return s.run();
}

std::vector<BlockInit> sample_blocks(const mesh::EntropyProfile& profile, double x_lo,
                                     double x_hi, double dx,
                                     const std::function<double(double)>& z0,
                                     const std::function<double(double)>& u0,
                                     const std::function<double(double)>& z0_x,
                                     const std::function<double(double)>& u0_x) {
  if (!(x_hi > x_lo)) throw config_error("sample_blocks: empty domain");
  if (!(dx > 0.0)) throw config_error("sample_blocks: spacing must be positive");
  std::vector<BlockInit> out;
  for (const auto& blk : profile.blocks()) {
    const double a = std::max(blk.x_lo, x_lo);
    const double b = std::min(blk.x_hi, x_hi);
    BlockInit bi;
    if (b > a) {
      const int n = std::max(1, static_cast<int>(std::lround((b - a) / dx)));
      const double h = (b - a) / n;
      for (int i = 0; i < n; ++i) {
        InitSample s;
        s.x = a + (i + 0.5) * h;
        s.z = z0(s.x);
        s.u = u0(s.x);
        if (z0_x) s.z_x = z0_x(s.x);
        if (u0_x) s.u_x = u0_x(s.x);
        bi.samples.push_back(s);
      }
    }
    out.push_back(std::move(bi));
  }
  return out;
}

double max_sound_speed(const mesh::EntropyProfile& profile,
                       const std::vector<BlockInit>& data, const gas::GasModel& g) {
  double c = 0.0;
  for (std::size_t b = 0; b < data.size() && b < profile.blocks().size(); ++b)
    for (const auto& s : data[b].samples)
      c = std::max(c, profile.blocks()[b].m * std::pow(s.z, g.d));
  return c;
}

// --- detectors --------------------------------------------------------------

QuietReport detect_noninteracting(const RunOutcome& run, const gas::GasModel& g,
                                  double tol_rel) {
  (void)g;
  QuietReport rep;
  const auto& mesh = run.mesh;
  if (run.status == RunStatus::shock_formed) return rep;
  if (mesh.nodes.empty()) {
    // exactly constant data: nothing ever interacts
    rep.noninteracting = true;
    rep.quiet_time = 0.0;
    rep.boundary_verified = true;
    return rep;
  }
  if (mesh.profile.jumps().empty()) return rep;  // nothing to interact with

  const double tol = tol_rel * std::max(mesh.initial_strength_scale, 1e-300);
  double quiet_t = 0.0;
  for (const auto& e : mesh.events) {
    const double act = std::max({std::abs(e.left.alpha), std::abs(e.left.beta),
                                 std::abs(e.right.alpha), std::abs(e.right.beta)});
    if (act > tol) quiet_t = std::max(quiet_t, e.t);
  }
  rep.quiet_time = quiet_t;

  // every contact must have confirmed quiet arrivals after quiet_t
  bool confirmed = true;
  double residual = 0.0;
  for (const auto& per_col : mesh.by_column) {
    bool saw_later = false;
    for (std::size_t idx : per_col) {
      const auto& e = mesh.events[idx];
      if (e.t <= quiet_t) continue;
      saw_later = true;
      residual = std::max({residual, std::abs(e.left.alpha), std::abs(e.left.beta),
                           std::abs(e.right.alpha), std::abs(e.right.beta)});
    }
    confirmed = confirmed && saw_later;
  }
  rep.residual = mesh.initial_strength_scale > 0.0
                     ? residual / mesh.initial_strength_scale
                     : residual;
  rep.noninteracting = confirmed && quiet_t < run.reached_t;

  // the invariants carried out of the outermost contacts must settle: after
  // quiet_time nothing may still be transmitted into the far fields
  if (rep.noninteracting) {
    bool ok = true;
    auto far_check = [&](int col, bool right_side) {
      const auto& per_col = mesh.by_column[col];
      if (per_col.empty()) return;
      const auto& fin = mesh.events[per_col.back()];
      const double inv_end = right_side ? fin.right.s : fin.left.r;
      for (std::size_t idx : per_col) {
        const auto& e = mesh.events[idx];
        if (e.t <= rep.quiet_time) continue;
        const double inv = right_side ? e.right.s : e.left.r;
        if (std::abs(inv - inv_end) > 10.0 * tol) ok = false;
      }
    };
    far_check(0, false);
    far_check(static_cast<int>(mesh.by_column.size()) - 1, true);

    // the upper boundary of the interaction region must be a forward
    // characteristic: follow the forward wave leaving the last loud event at
    // the leftmost active column and require every contact to its right to
    // have fallen quiet by the time that characteristic sweeps through
    constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::vector<std::size_t> last_loud(mesh.by_column.size(), npos);
    for (std::size_t col = 0; col < mesh.by_column.size(); ++col)
      for (std::size_t idx : mesh.by_column[col]) {
        const auto& e = mesh.events[idx];
        const double act = std::max({std::abs(e.left.alpha), std::abs(e.left.beta),
                                     std::abs(e.right.alpha), std::abs(e.right.beta)});
        if (act > tol) last_loud[col] = idx;  // per-column events are time ordered
      }
    std::size_t start = 0;
    while (start < last_loud.size() && last_loud[start] == npos) ++start;
    if (start < last_loud.size()) {
      const mesh::ColumnEvent* cur = &mesh.events[last_loud[start]];
      for (std::size_t col = start + 1; col < mesh.by_column.size(); ++col) {
        const mesh::CharId gamma =
            cur->from_left ? cur->transmitted_char : cur->reflected_char;
        const mesh::ColumnEvent* arrived = nullptr;
        for (std::size_t idx : mesh.by_column[col]) {
          const auto& e = mesh.events[idx];
          if (e.from_left && e.in_char == gamma) {
            arrived = &e;
            break;
          }
        }
        if (!arrived ||
            (last_loud[col] != npos && mesh.events[last_loud[col]].t > arrived->t)) {
          ok = false;
          break;
        }
        cur = arrived;
      }
    }
    rep.boundary_verified = ok;
  }
  return rep;
}

VacuumReport detect_asymptotic_vacuum(const RunOutcome& run, const gas::GasModel& g,
                                      const VacuumOptions& opt) {
  VacuumReport rep;
  if (run.status == RunStatus::shock_formed) return rep;
  if (!(run.reached_t > 0.0)) return rep;
  const auto& mesh = run.mesh;
  const auto& nodes = mesh.nodes;

  std::size_t longest = 0;
  for (const auto& ids : mesh.bwd_chars) {
    if (ids.size() < static_cast<std::size_t>(opt.min_nodes)) continue;
    // only characteristics launched with the data carry position information
    // about the initial profile; reflected pieces born at contacts do not
    if (nodes[ids.front()].t != 0.0) continue;
    // a characteristic that terminated at a contact was consumed, not stalled
    if (nodes[ids.back()].bwd_used) continue;
    auto c_at = [&](mesh::NodeId id) {
      const auto& n = nodes[id];
      return mesh.profile.blocks()[n.block].m * std::pow(n.z, g.d);
    };
    const double c_first = c_at(ids.front());
    const double c_last = c_at(ids.back());
    if (!(c_last < opt.c_drop * c_first)) continue;
    bool monotone = true;
    for (std::size_t i = 1; i < ids.size() && monotone; ++i)
      monotone = c_at(ids[i]) <= c_at(ids[i - 1]) * (1.0 + 1e-9);
    if (!monotone) continue;

    // a slow characteristic still in transit keeps making x-progress; a
    // stalled one does not, so compare the travel over the final quarter
    // of the horizon with the total travel so far
    const double t_q = 0.75 * run.reached_t;
    if (!(nodes[ids.front()].t < t_q)) continue;
    double x_q = nodes[ids.front()].x;
    for (std::size_t i = 1; i < ids.size() && nodes[ids[i]].t <= t_q; ++i)
      x_q = nodes[ids[i]].x;
    const double total = nodes[ids.front()].x - nodes[ids.back()].x;
    const double late = x_q - nodes[ids.back()].x;
    if (!(total > 0.0) || late > opt.stall_frac * total) continue;

    // least-squares slope of log c against log t over the tail half
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int cnt = 0;
    for (std::size_t i = ids.size() / 2; i < ids.size(); ++i) {
      const double cc = c_at(ids[i]);
      const double tt = nodes[ids[i]].t;
      if (!(tt > 0.0) || !(cc > 0.0)) continue;
      const double lx = std::log(tt), ly = std::log(cc);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++cnt;
    }
    if (cnt < 2 || !(sxx * cnt - sx * sx > 0.0)) continue;
    const double slope = (sxy * cnt - sx * sy) / (sxx * cnt - sx * sx);
    if (!(slope <= -(1.0 + opt.exponent_margin))) continue;

    ++rep.stalled_chars;
    const double x0 = nodes[ids.front()].x;
    if (std::isnan(rep.bwd_start_min) || x0 < rep.bwd_start_min)
      rep.bwd_start_min = x0;
    if (ids.size() > longest) {
      longest = ids.size();
      rep.c_decay_exponent = slope;
    }
  }
  // contact traces: fit log z against log t over the trailing half of each
  // column's events and keep the steepest slope.  The trailing half is taken
  // by event count, so the fit follows the arrivals even when they go sparse.
  bool have_fit = false;
  double steepest = 0.0;
  for (const auto& per_col : mesh.by_column) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t idx : per_col) {
      const auto& e = mesh.events[idx];
      const double z = std::min(e.left.z, e.right.z);
      if (e.t > 0.0 && z > 0.0) pts.emplace_back(e.t, z);
    }
    if (pts.size() < static_cast<std::size_t>(opt.min_events)) continue;
    std::sort(pts.begin(), pts.end());
    // trailing half by time; a settled contact keeps firing dense arrivals,
    // so a starved window (vacuum arrivals go sparse) falls back to count
    std::size_t k0 = pts.size();
    const double t_half = 0.5 * pts.back().first;
    while (k0 > 0 && pts[k0 - 1].first >= t_half) --k0;
    if (pts.size() - k0 < 3) k0 = pts.size() / 2;
    if (!(pts.back().first > 1.3 * pts[k0].first)) continue;  // thin log t span
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double cnt = static_cast<double>(pts.size() - k0);
    for (std::size_t i = k0; i < pts.size(); ++i) {
      const double lx = std::log(pts[i].first), ly = std::log(pts[i].second);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    if (!(sxx * cnt - sx * sx > 0.0)) continue;
    const double slope = (sxy * cnt - sx * sy) / (sxx * cnt - sx * sx);
    if (!have_fit || slope < steepest) steepest = slope;
    have_fit = true;
  }
  if (have_fit) rep.z_slope = steepest;
  // a drained queue under a still-decaying contact is the starved form of the
  // same verdict: the next crossing diverged, leaving waves frozen in transit.
  // Those are the unconsumed characteristics whose last position is inside an
  // interior block; outer-block ones free-stream away and never stall.
  if (run.exhausted && have_fit && steepest <= opt.contact_slope &&
      rep.stalled_chars == 0) {
    const int nblocks = static_cast<int>(mesh.profile.blocks().size());
    auto starved = [&](const auto& chars, bool bwd_family) {
      for (const auto& ids : chars) {
        if (ids.empty()) continue;
        const auto& last = nodes[ids.back()];
        if (bwd_family ? last.bwd_used : last.fwd_used) continue;
        if (last.block <= 0 || last.block + 1 >= nblocks) continue;
        ++rep.stalled_chars;
        if (std::isnan(rep.bwd_start_min) || last.x < rep.bwd_start_min)
          rep.bwd_start_min = last.x;
      }
    };
    starved(mesh.bwd_chars, true);
    starved(mesh.fwd_chars, false);
  }
  // the defining feature is the characteristic that stops arriving; a decaying
  // contact trace alone also happens when the data drains to vacuum in the
  // limit without any characteristic actually stalling
  rep.vacuum = have_fit && steepest <= opt.contact_slope && rep.stalled_chars > 0;
  return rep;
}

Classification classify(const RunOutcome& run, const gas::GasModel& g,
                        double quiet_tol_rel, const VacuumOptions& vopt) {
  Classification out;
  out.quiet = detect_noninteracting(run, g, quiet_tol_rel);
  out.vacuum = detect_asymptotic_vacuum(run, g, vopt);
  if (run.status == RunStatus::shock_formed) {
    out.status = RunStatus::shock_formed;
    out.T = run.shock->t;
  } else if (out.vacuum.vacuum) {
    out.status = RunStatus::asymptotic_vacuum;
    out.T = run.reached_t;
  } else if (out.quiet.noninteracting) {
    out.status = RunStatus::eventually_noninteracting;
    out.T = out.quiet.quiet_time;
  } else {
    out.status = RunStatus::shock_free_to_horizon;
    out.T = run.reached_t;
  }
  return out;
}

std::vector<Reflection> trace_reflections(const RunOutcome& run, mesh::CharId start,
                                          waves::CharFamily family) {
  const auto& mesh = run.mesh;
  std::vector<std::size_t> fwd_term(mesh.fwd_chars.size(), kNpos);
  std::vector<std::size_t> bwd_term(mesh.bwd_chars.size(), kNpos);
  for (std::size_t i = 0; i < mesh.events.size(); ++i) {
    const auto& e = mesh.events[i];
    if (e.in_char == mesh::kNoChar) continue;
    if (e.from_left) fwd_term[e.in_char] = i;
    else bwd_term[e.in_char] = i;
  }
  std::vector<Reflection> out;
  mesh::CharId cur = start;
  waves::CharFamily fam = family;
  while (cur != mesh::kNoChar) {
    const auto& term = fam == waves::CharFamily::forward ? fwd_term : bwd_term;
    if (cur >= static_cast<mesh::CharId>(term.size())) break;
    const std::size_t idx = term[cur];
    if (idx == kNpos) break;
    const auto& e = mesh.events[idx];
    const auto& side = e.from_left ? e.left : e.right;
    out.push_back(Reflection{e.t, e.column, side.z, side.u, idx, cur});
    cur = e.reflected_char;
    fam = fam == waves::CharFamily::forward ? waves::CharFamily::backward
                                            : waves::CharFamily::forward;
  }
  return out;
}

}  // namespace gasdyn::moc
