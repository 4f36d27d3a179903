#include "gasdyn/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "gasdyn/config.hpp"
#include "gasdyn/construct.hpp"
#include "gasdyn/csv.hpp"
#include "gasdyn/errors.hpp"
#include "gasdyn/gas.hpp"
#include "gasdyn/gradients.hpp"
#include "gasdyn/moc.hpp"
#include "gasdyn/scenarios.hpp"
#include "gasdyn/shock_trace.hpp"
#include "gasdyn/waves.hpp"

namespace gasdyn::cli {

namespace {

namespace fs = std::filesystem;

class Summary {
 public:
  void add(const std::string& key, const std::string& value) {
    lines_.emplace_back(key, value);
  }
  void add(const std::string& key, double value) { add(key, csv::format_value(value)); }
  void add(const std::string& key, long value) { add(key, std::to_string(value)); }
  void add(const std::string& key, int value) { add(key, std::to_string(value)); }
  void add_bool(const std::string& key, bool value) { add(key, value ? "yes" : "no"); }

  void write(const fs::path& dir) const {
    std::string body;
    for (const auto& [k, v] : lines_) body += k + ": " + v + "\n";
    std::ofstream out(dir / "summary.txt", std::ios::binary);
    if (!out) throw config_error("cannot write summary in '" + dir.string() + "'");
    out.write(body.data(), static_cast<std::streamsize>(body.size()));
    std::cout << body;
  }

 private:
  std::vector<std::pair<std::string, std::string>> lines_;
};

gas::GasModel gas_from(const config::Config& cfg) {
  const double gamma = cfg.number("gas", "gamma");
  if (cfg.has("gas", "K") || cfg.has("gas", "c_v"))
    return gas::make_gas(gamma, cfg.number_or("gas", "K", 1.0),
                         cfg.number_or("gas", "c_v", 1.0));
  return gas::unit_gas(gamma);
}

std::string status_name(moc::RunStatus s) {
  switch (s) {
    case moc::RunStatus::shock_formed: return "shock-formed";
    case moc::RunStatus::asymptotic_vacuum: return "asymptotic-vacuum";
    case moc::RunStatus::eventually_noninteracting: return "eventually-noninteracting";
    case moc::RunStatus::shock_free_to_horizon: return "shock-free-to-horizon";
  }
  return "unknown";
}

std::string regime_name(scenarios::ReflectRegime r) {
  switch (r) {
    case scenarios::ReflectRegime::bounded_reflection: return "bounded-reflection";
    case scenarios::ReflectRegime::vacuum_in_the_limit: return "vacuum-in-the-limit";
    case scenarios::ReflectRegime::asymptotic_vacuum: return "asymptotic-vacuum";
  }
  return "unknown";
}

// flag wins, then the scenario's own section, then a [run] default
double resolve_horizon(const Options& opt, const config::Config& cfg,
                       const std::string& section, double fallback) {
  if (opt.horizon > 0.0) return opt.horizon;
  return cfg.number_or(section, "horizon", cfg.number_or("run", "horizon", fallback));
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

int cmd_gas_eval(const Options& opt, const config::Config& cfg, const fs::path& out,
                 Summary& sum) {
  (void)opt;
  const auto g = gas_from(cfg);
  gas::ThermoState q;
  if (cfg.has("state", "tau")) {
    q = gas::state_from_physical(cfg.number("state", "tau"), cfg.number("state", "u"),
                                 cfg.number_or("state", "S", 0.0), g);
  } else {
    q = {cfg.number("state", "z"), cfg.number("state", "u"),
         cfg.number_or("state", "m", 1.0)};
  }
  const auto der = gas::derived(q, g);
  csv::Table t({"z", "u", "m", "tau", "p", "c", "r", "s", "e"});
  t.add({q.z, q.u, q.m, der.tau, der.p, der.c, der.r, der.s, der.e});
  csv::emit(t, (out / "state.csv").string());
  sum.add("d", g.d);
  sum.add("z", q.z);
  sum.add("u", q.u);
  sum.add("m", q.m);
  sum.add("tau", der.tau);
  sum.add("p", der.p);
  sum.add("c", der.c);
  sum.add("r", der.r);
  sum.add("s", der.s);
  sum.add("e", der.e);
  return 0;
}

int cmd_hugoniot_curve(const Options& opt, const config::Config& cfg,
                       const fs::path& out, Summary& sum) {
  (void)opt;
  const auto g = gas_from(cfg);
  const auto [dom_lo, dom_hi] = waves::hugoniot_domain(g.d);
  const long n = cfg.integer_or("hugoniot", "n", 100);
  if (n < 2) throw config_error("[hugoniot] n: need at least 2 grid points");
  const double z_lo = cfg.number_or("hugoniot", "z_lo", 1.0);
  const double z_hi = cfg.number_or("hugoniot", "z_hi", dom_hi - 1e-3 * (dom_hi - 1.0));
  if (!(z_lo < z_hi)) throw config_error("[hugoniot] need z_lo < z_hi");

  csv::Table t({"Z", "f", "g", "h"});
  for (long i = 0; i < n; ++i) {
    const double Z = z_lo + (z_hi - z_lo) * static_cast<double>(i) /
                                static_cast<double>(n - 1);
    const double f = waves::hugoniot_f(Z, g.d);
    const auto gh = waves::hugoniot_gh(Z, g.d);
    t.add({Z, f, gh.g, gh.h});
  }
  csv::emit(t, (out / "curve.csv").string());
  sum.add("d", g.d);
  sum.add("rows", n);
  sum.add("domain_lo", dom_lo);
  sum.add("domain_hi", dom_hi);
  return 0;
}

int cmd_contact_jump(const Options& opt, const config::Config& cfg,
                     const fs::path& out, Summary& sum) {
  (void)opt;
  const auto g = gas_from(cfg);
  const double m_l = cfg.number("contact", "m_left");
  const double m_r = cfg.number("contact", "m_right");
  const gas::ThermoState left{cfg.number("contact", "z_left"),
                              cfg.number_or("contact", "u", 0.0), m_l};
  const double q = waves::contact_q(m_l, m_r, g);
  const gas::ThermoState right = waves::contact_apply(left, m_r, g);
  csv::Table t({"q", "m_left", "m_right", "z_left", "z_right", "u", "p_left",
                "p_right", "c_left", "c_right"});
  t.add({q, m_l, m_r, left.z, right.z, left.u, gas::pressure(left, g),
         gas::pressure(right, g), gas::sound_speed(left, g), gas::sound_speed(right, g)});
  csv::emit(t, (out / "jump.csv").string());
  sum.add("q", q);
  sum.add("z_left", left.z);
  sum.add("z_right", right.z);
  sum.add("u", left.u);
  sum.add("p", gas::pressure(left, g));
  return 0;
}

int cmd_vacuum_check(const Options& opt, const config::Config& cfg,
                     const fs::path& out, Summary& sum) {
  (void)opt;
  (void)out;
  gas_from(cfg);  // validates the gas section
  const auto v = scenarios::vacuum_condition(
      cfg.number("vacuum", "u_left"), cfg.number("vacuum", "u_right"),
      cfg.number("vacuum", "m_left"), cfg.number("vacuum", "m_right"),
      cfg.number("vacuum", "z_left"), cfg.number("vacuum", "z_right"));
  sum.add_bool("holds", v.holds);
  sum.add("margin", v.margin);
  return 0;
}

int cmd_reflect(const Options& opt, const config::Config& cfg, const fs::path& out,
                Summary& sum) {
  (void)opt;
  const auto g = gas_from(cfg);
  const auto tr = scenarios::reflect_recurrence(
      cfg.number("reflect", "z0"), cfg.number("reflect", "z1"),
      cfg.number("reflect", "q"), cfg.number_or("reflect", "x0", 0.0),
      cfg.number_or("reflect", "x1", 1.0), g,
      static_cast<int>(cfg.integer_or("reflect", "n_max", 200)),
      cfg.number_or("reflect", "m_out", 1.0));

  csv::Table t({"n", "z", "t_lower", "t_upper"});
  for (std::size_t n = 0; n < tr.z.size(); ++n)
    t.add({static_cast<double>(n), tr.z[n], tr.t_lower[n], tr.t_upper[n]});
  csv::emit(t, (out / "reflect.csv").string());

  sum.add("eta", tr.eta);
  sum.add("zeta", tr.zeta);
  sum.add("z_limit", tr.z_limit);
  sum.add("regime", regime_name(tr.regime));
  sum.add("terminal_n", tr.terminal_n);
  sum.add("m_strip", tr.m_strip);
  sum.add("width", tr.width);
  sum.add("c0", tr.c0);
  if (tr.regime == scenarios::ReflectRegime::vacuum_in_the_limit && tr.z.size() > 13) {
    const std::size_t hi = std::min<std::size_t>(40, tr.z.size() - 1);
    const auto fit = scenarios::reflect_decay_fit(tr, 10, hi, g);
    sum.add("decay_exponent", fit.exponent);
    sum.add_bool("sandwich_ok", fit.sandwich_ok);
  }
  return 0;
}

struct ScenarioRun {
  std::string kind;
  mesh::EntropyProfile profile;
  std::vector<moc::BlockInit> data;
  double horizon = 0.0;
};

ScenarioRun build_scenario(const Options& opt, const config::Config& cfg,
                           const gas::GasModel& g) {
  ScenarioRun s;
  s.kind = cfg.str("simulate", "scenario");
  const double scale = std::pow(2.0, opt.refine);
  if (s.kind == "single-contact") {
    scenarios::SingleContactSpec sc;
    sc.x_contact = cfg.number_or("single-contact", "x_contact", sc.x_contact);
    sc.m_left = cfg.number_or("single-contact", "m_left", sc.m_left);
    sc.m_right = cfg.number_or("single-contact", "m_right", sc.m_right);
    sc.z_m = cfg.number_or("single-contact", "z_m", sc.z_m);
    sc.z_inf = cfg.number_or("single-contact", "z_inf", sc.z_inf);
    sc.u_left = cfg.number_or("single-contact", "u_left", sc.u_left);
    sc.ramp_lo = cfg.number_or("single-contact", "ramp_lo", sc.ramp_lo);
    sc.ramp_hi = cfg.number_or("single-contact", "ramp_hi", sc.ramp_hi);
    const double dx = cfg.number_or("single-contact", "dx", 0.05) / scale;
    s.horizon = resolve_horizon(opt, cfg, "single-contact", 10.0);
    auto setup = scenarios::make_single_contact(sc, g, dx, s.horizon);
    s.profile = setup.profile;
    s.data = std::move(setup.data);
  } else if (s.kind == "reflection-strip") {
    scenarios::StripSpec sp;
    sp.x0 = cfg.number_or("reflection-strip", "x0", sp.x0);
    sp.x1 = cfg.number_or("reflection-strip", "x1", sp.x1);
    sp.z_end = cfg.number_or("reflection-strip", "z_end", sp.z_end);
    sp.zeta = cfg.number_or("reflection-strip", "zeta", sp.zeta);
    sp.q = cfg.number_or("reflection-strip", "q", sp.q);
    sp.m_out = cfg.number_or("reflection-strip", "m_out", sp.m_out);
    sp.flat_frac = cfg.number_or("reflection-strip", "flat_frac", sp.flat_frac);
    const int samples = static_cast<int>(
        std::lround(cfg.integer_or("reflection-strip", "samples", 64) * scale));
    s.horizon = resolve_horizon(opt, cfg, "reflection-strip", 10.0);
    auto setup = scenarios::make_reflection_strip(sp, g, samples);
    s.profile = setup.profile;
    s.data = std::move(setup.data);
  } else {
    throw config_error("[simulate] scenario: unknown scenario '" + s.kind + "'");
  }
  return s;
}

void emit_mesh(const moc::RunOutcome& run, const fs::path& out) {
  csv::Table nodes({"id", "x", "t", "z", "u", "alpha", "beta", "block"});
  for (std::size_t i = 0; i < run.mesh.nodes.size(); ++i) {
    const auto& n = run.mesh.nodes[i];
    nodes.add({static_cast<double>(i), n.x, n.t, n.z, n.u, n.alpha, n.beta,
               static_cast<double>(n.block)});
  }
  csv::emit(nodes, (out / "nodes.csv").string());

  csv::Table events({"index", "column", "t", "from_left", "z_left", "u_left",
                     "alpha_left", "beta_left", "z_right", "u_right", "alpha_right",
                     "beta_right"});
  for (std::size_t i = 0; i < run.mesh.events.size(); ++i) {
    const auto& e = run.mesh.events[i];
    events.add({static_cast<double>(i), static_cast<double>(e.column), e.t,
                e.from_left ? 1.0 : 0.0, e.left.z, e.left.u, e.left.alpha,
                e.left.beta, e.right.z, e.right.u, e.right.alpha, e.right.beta});
  }
  csv::emit(events, (out / "events.csv").string());
}

int cmd_simulate(const Options& opt, const config::Config& cfg, const fs::path& out,
                 Summary& sum) {
  const auto g = gas_from(cfg);
  auto s = build_scenario(opt, cfg, g);
  moc::SolveOptions so;
  so.horizon = s.horizon;
  const auto run = moc::solve_ibvp(s.profile, s.data, g, so);
  emit_mesh(run, out);
  sum.add("scenario", s.kind);
  sum.add("horizon", s.horizon);
  sum.add("status", status_name(run.status));
  sum.add("reached_t", run.reached_t);
  sum.add_bool("exhausted", run.exhausted);
  sum.add("cells_fired", run.cells_fired);
  sum.add("column_events", run.column_events);
  sum.add("nodes", static_cast<long>(run.mesh.nodes.size()));
  if (run.shock) {
    sum.add("shock_t", run.shock->t);
    sum.add("shock_x", run.shock->x);
    sum.add("shock_block", run.shock->block);
    sum.add("shock_cause", run.shock->cause == moc::ShockInfo::Cause::gradient_blowup
                               ? "gradient-blowup"
                               : "characteristic-crossing");
  }
  return 0;
}

int cmd_classify(const Options& opt, const config::Config& cfg, const fs::path& out,
                 Summary& sum) {
  (void)out;
  const auto g = gas_from(cfg);
  const std::string kind = cfg.str("simulate", "scenario");
  if (kind == "single-contact") {
    scenarios::SingleContactSpec sc;
    sc.x_contact = cfg.number_or("single-contact", "x_contact", sc.x_contact);
    sc.m_left = cfg.number_or("single-contact", "m_left", sc.m_left);
    sc.m_right = cfg.number_or("single-contact", "m_right", sc.m_right);
    sc.z_m = cfg.number_or("single-contact", "z_m", sc.z_m);
    sc.z_inf = cfg.number_or("single-contact", "z_inf", sc.z_inf);
    sc.u_left = cfg.number_or("single-contact", "u_left", sc.u_left);
    sc.ramp_lo = cfg.number_or("single-contact", "ramp_lo", sc.ramp_lo);
    sc.ramp_hi = cfg.number_or("single-contact", "ramp_hi", sc.ramp_hi);
    const double scale = std::pow(2.0, opt.refine);
    const double dx = cfg.number_or("single-contact", "dx", 0.05) / scale;
    const double horizon = resolve_horizon(opt, cfg, "single-contact", 10.0);
    const auto v = scenarios::classify_single_contact(sc, g, dx, horizon);
    sum.add("scenario", kind);
    sum.add("q", v.q);
    sum.add("z_left", v.z_left);
    sum.add("threshold", v.threshold);
    sum.add("margin", v.margin);
    sum.add("x_star", v.x_star);
    sum.add_bool("vacuum_predicted", v.vacuum_predicted);
    sum.add("status", status_name(v.classification.status));
    sum.add("T", v.classification.T);
    sum.add_bool("agrees", v.agrees);
    if (v.classification.status == moc::RunStatus::asymptotic_vacuum) {
      sum.add("stalled_chars", v.classification.vacuum.stalled_chars);
      sum.add("x_star_observed", v.classification.vacuum.bwd_start_min);
      sum.add("c_decay_exponent", v.classification.vacuum.c_decay_exponent);
    }
    return 0;
  }
  if (kind == "reflection-strip") {
    scenarios::StripSpec sp;
    sp.x0 = cfg.number_or("reflection-strip", "x0", sp.x0);
    sp.x1 = cfg.number_or("reflection-strip", "x1", sp.x1);
    sp.z_end = cfg.number_or("reflection-strip", "z_end", sp.z_end);
    sp.zeta = cfg.number_or("reflection-strip", "zeta", sp.zeta);
    sp.q = cfg.number_or("reflection-strip", "q", sp.q);
    sp.m_out = cfg.number_or("reflection-strip", "m_out", sp.m_out);
    sp.flat_frac = cfg.number_or("reflection-strip", "flat_frac", sp.flat_frac);
    const double scale = std::pow(2.0, opt.refine);
    const int samples = static_cast<int>(
        std::lround(cfg.integer_or("reflection-strip", "samples", 64) * scale));
    const double horizon = resolve_horizon(opt, cfg, "reflection-strip", 10.0);
    const auto v = scenarios::classify_strip(sp, g, samples, horizon);
    sum.add("scenario", kind);
    sum.add("regime", regime_name(v.regime));
    sum.add("eta", v.eta);
    sum.add("zeta", v.zeta);
    if (v.regime == scenarios::ReflectRegime::bounded_reflection)
      sum.add("z_limit", v.z_limit);
    sum.add_bool("vacuum_predicted", v.vacuum_predicted);
    sum.add("status", status_name(v.classification.status));
    sum.add("T", v.classification.T);
    sum.add("quiet_time", v.classification.quiet.quiet_time);
    sum.add_bool("vacuum", v.classification.vacuum.vacuum);
    if (v.classification.vacuum.vacuum) {
      sum.add("x_star_observed", v.classification.vacuum.bwd_start_min);
      sum.add("stalled_chars", v.classification.vacuum.stalled_chars);
      sum.add("c_decay_exponent", v.classification.vacuum.c_decay_exponent);
    }
    sum.add_bool("agrees", v.agrees);
    return 0;
  }
  auto s = build_scenario(opt, cfg, g);
  moc::SolveOptions so;
  so.horizon = s.horizon;
  const auto run = moc::solve_ibvp(s.profile, s.data, g, so);
  const auto cls = moc::classify(run, g);
  sum.add("scenario", s.kind);
  sum.add("status", status_name(cls.status));
  sum.add("T", cls.T);
  sum.add_bool("noninteracting", cls.quiet.noninteracting);
  sum.add("quiet_time", cls.quiet.quiet_time);
  sum.add_bool("vacuum", cls.vacuum.vacuum);
  if (cls.vacuum.vacuum) {
    sum.add("x_star_observed", cls.vacuum.bwd_start_min);
    sum.add("stalled_chars", cls.vacuum.stalled_chars);
    sum.add("c_decay_exponent", cls.vacuum.c_decay_exponent);
  }
  return 0;
}

int cmd_construct(const Options& opt, const config::Config& cfg, const fs::path& out,
                  Summary& sum) {
  const auto g = gas_from(cfg);
  construct::ConstructSpec cs;
  cs.q0 = cfg.number("construct", "q0");
  cs.q1 = cfg.number("construct", "q1");
  cs.x0 = cfg.number_or("construct", "x0", 0.0);
  cs.x1 = cfg.number_or("construct", "x1", 1.0);
  cs.T = cfg.number_or("construct", "T", 1.0);
  const double z_begin = cfg.number("construct", "z_begin");
  const double z_end = cfg.number("construct", "z_end");
  const double e2 = 2.0 / (g.d - 1.0);
  cs.z_star_hi = cfg.number_or("construct", "z_star_hi", z_begin);
  cs.z_star_lo =
      cfg.number_or("construct", "z_star_lo", z_end * std::pow(cs.q0 * cs.q1, -e2));
  cs.nt = static_cast<int>(cfg.integer_or("construct", "nt", 256)) << std::max(0, opt.refine);
  cs.cfl = cfg.number_or("construct", "cfl", 0.8);
  cs.pad_right = cfg.number_or("construct", "pad_right", 1.0);

  const std::string shape = cfg.str_or("construct", "shape", "smoothstep");
  const double T = cs.T, dz = z_end - z_begin;
  if (shape == "smoothstep") {
    cs.Z = [=](double t) { return z_begin + dz * scenarios::smoothstep01(t / T); };
    cs.Zdot = [=](double t) { return dz / T * scenarios::smoothstep01_deriv(t / T); };
  } else if (shape == "linear") {
    cs.Z = [=](double t) { return z_begin + dz * t / T; };
    cs.Zdot = [=](double t) { (void)t; return dz / T; };
  } else {
    throw config_error("[construct] shape: expected smoothstep or linear");
  }

  const auto res = construct::construct_shockfree_two_contacts(cs, g);

  std::string cert_text;
  for (const auto& e : res.cert.entries)
    cert_text += e.name + ": " + csv::format_value(e.lhs) +
                 " <= " + csv::format_value(e.rhs) + " -> " +
                 (e.pass ? "PASS" : "FAIL") + "\n";
  cert_text += std::string("certified: ") + (res.cert.certified ? "yes" : "no") + "\n";
  {
    std::ofstream cf(out / "certificate.txt", std::ios::binary);
    if (!cf) throw config_error("cannot write certificate file");
    cf.write(cert_text.data(), static_cast<std::streamsize>(cert_text.size()));
  }

  sum.add_bool("certified", res.cert.certified);
  if (!res.cert.certified) {
    sum.add("first_failure", res.cert.first_failure());
    std::cerr << "construction rejected: inequality '" << res.cert.first_failure()
              << "' fails\n";
    return 4;
  }
  csv::Table t({"x", "z", "u"});
  for (std::size_t i = 0; i < res.trace_x.size(); ++i)
    t.add({res.trace_x[i], res.trace_z[i], res.trace_u[i]});
  csv::emit(t, (out / "trace.csv").string());
  sum.add("m1", res.cert.m1);
  sum.add("m2", res.cert.m2);
  sum.add("max_slope", res.cert.max_slope);
  sum.add("min_r", res.cert.min_r);
  sum.add("max_k", res.cert.max_k);
  sum.add("t_star", res.cert.t_star);
  sum.add("x_star", res.cert.x_star);
  sum.add("trace_columns", static_cast<long>(res.trace_x.size()));
  long n_samples = 0;
  for (const auto& b : res.data) n_samples += static_cast<long>(b.samples.size());
  sum.add("data_samples", n_samples);
  return 0;
}

int cmd_shock_trace(const Options& opt, const config::Config& cfg, const fs::path& out,
                    Summary& sum) {
  (void)opt;
  const auto g = gas_from(cfg);
  scenarios::ShockPathSpec sp;
  sp.a_lo = cfg.number("shock", "a_lo");
  sp.a_hi = cfg.number("shock", "a_hi");
  sp.u1 = cfg.number_or("shock", "u1", 0.0);
  sp.p1 = cfg.number_or("shock", "p1", 1.0);
  sp.m0 = cfg.number_or("shock", "m0", 1.0);
  sp.t0 = cfg.number_or("shock", "t0", 0.0);
  sp.samples = static_cast<int>(cfg.integer_or("shock", "samples", 129));
  sp.focusing_bound = cfg.number_or("shock", "focusing_bound",
                                    std::numeric_limits<double>::infinity());
  sp.quad_tol = cfg.number_or("shock", "quad_tol", 1e-10);
  const std::string family = cfg.str_or("shock", "family", "backward");
  if (family == "backward") {
    sp.family = waves::CharFamily::backward;
  } else if (family == "forward") {
    sp.family = waves::CharFamily::forward;
  } else {
    throw config_error("[shock] family: expected backward or forward");
  }

  const std::string kind = cfg.str_or("path", "kind", "log");
  const double x_ref = cfg.number_or("path", "x_ref", 0.0);
  if (kind == "log") {
    const double nu = cfg.number("path", "nu");
    sp.x = [=](double a) { return x_ref + nu * std::log(a - 1.0); };
    sp.dxda = [=](double a) { return nu / (a - 1.0); };
  } else if (kind == "linear") {
    const double slope = cfg.number("path", "slope");
    sp.x = [=](double a) { return x_ref + slope * a; };
    sp.dxda = [=](double a) { (void)a; return slope; };
  } else {
    throw config_error("[path] kind: expected log or linear");
  }

  const auto tr = scenarios::trace_single_shock(sp, g);

  csv::Table t({"a", "x", "t", "z0", "u0", "m0", "z1", "u1", "m1", "xi", "r_x",
                "s_x", "rh_residual"});
  double t_focus = std::numeric_limits<double>::infinity();
  for (const auto& smp : tr.samples) {
    const double rh = waves::rh_residual(smp.ahead, smp.behind, smp.xi, g);
    t.add({smp.a, smp.x, smp.t, smp.ahead.z, smp.ahead.u, smp.ahead.m, smp.behind.z,
           smp.behind.u, smp.behind.m, smp.xi, smp.r_x, smp.s_x, rh});
    const double k1 = gradients::riccati_coeffs(smp.ahead.z, 0.0, g).k1;
    // compressive strengths focus in finite time; rarefactive ones never do
    if (smp.s_x < 0.0) t_focus = std::min(t_focus, 1.0 / (k1 * -smp.s_x));
    if (smp.r_x < 0.0) t_focus = std::min(t_focus, 1.0 / (k1 * -smp.r_x));
  }
  csv::emit(t, (out / "shock.csv").string());

  sum.add("samples", static_cast<long>(tr.samples.size()));
  sum.add("truncated", tr.truncated_reason.empty() ? "none" : tr.truncated_reason);
  sum.add("max_abs_rx", tr.max_abs_rx);
  sum.add("max_abs_sx", tr.max_abs_sx);
  sum.add_bool("gradients_bounded", tr.gradients_bounded);
  sum.add("focusing_bound", sp.focusing_bound);
  sum.add("lax_focusing_time", t_focus);
  return 0;
}

int dispatch(const Options& opt) {
  if (opt.config_path.empty()) throw config_error("--config is required");
  const auto cfg = config::Config::parse_file(opt.config_path);
  const fs::path out(opt.out_dir.empty() ? "." : opt.out_dir);
  fs::create_directories(out);

  Summary sum;
  sum.add("tool", std::string("gasdyn ") + kVersion);
  sum.add("command", opt.command);
  const long seed = opt.seed >= 0 ? opt.seed : cfg.integer_or("run", "seed", 0);
  sum.add("seed", seed);

  int rc;
  if (opt.command == "gas-eval") rc = cmd_gas_eval(opt, cfg, out, sum);
  else if (opt.command == "hugoniot-curve") rc = cmd_hugoniot_curve(opt, cfg, out, sum);
  else if (opt.command == "contact-jump") rc = cmd_contact_jump(opt, cfg, out, sum);
  else if (opt.command == "vacuum-check") rc = cmd_vacuum_check(opt, cfg, out, sum);
  else if (opt.command == "reflect") rc = cmd_reflect(opt, cfg, out, sum);
  else if (opt.command == "simulate") rc = cmd_simulate(opt, cfg, out, sum);
  else if (opt.command == "classify") rc = cmd_classify(opt, cfg, out, sum);
  else if (opt.command == "construct") rc = cmd_construct(opt, cfg, out, sum);
  else if (opt.command == "shock-trace") rc = cmd_shock_trace(opt, cfg, out, sum);
  else throw config_error("unknown command '" + opt.command + "'");

  sum.write(out);
  return rc;
}

}  // namespace

int run(const Options& opt) {
  try {
    return dispatch(opt);
  } catch (const config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const hypothesis_error& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return 4;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace gasdyn::cli
