#include "minkflow/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "minkflow/cli/output.hpp"
#include "minkflow/errors.hpp"
#include "minkflow/frenet.hpp"
#include "minkflow/solitons.hpp"
#include "minkflow/surfaces.hpp"
#include "minkflow/version.hpp"

namespace minkflow::cli {

namespace {

using nlohmann::json;

CurvatureProfile sample_profile(const SGrid& grid, const Expr& kappa, const Expr& tau) {
  std::vector<double> k, t;
  k.reserve(grid.size());
  t.reserve(grid.size());
  for (double s : grid.points()) {
    k.push_back(kappa.eval(s));
    t.push_back(tau.eval(s));
  }
  return CurvatureProfile(grid, std::move(k), std::move(t));
}

json config_json(const RunConfig& c) {
  json cfg = json::object();
  for (const auto& [k, v] : c.values) cfg[k] = v;
  return cfg;
}

void write_meta(const OutputDir& out, const RunConfig& c, const json& extra = json::object()) {
  json meta = {{"command", std::string(to_string(c.command))},
               {"version", kVersion},
               {"config", config_json(c)}};
  for (const auto& [k, v] : extra.items()) meta[k] = v;
  write_json(out.file("run_meta.json"), meta);
}

std::string_view boundary_name(Boundary b) { return b == Boundary::Periodic ? "periodic" : "one-sided"; }

void write_long(const OutputDir& out, std::string_view name, const std::vector<EvolutionState>& states,
                bool kappa) {
  CsvWriter csv(out.file(name), "s,t,value");
  for (const auto& st : states) {
    const auto& g = st.profile.grid;
    const auto& v = kappa ? st.profile.kappa : st.profile.tau;
    for (std::size_t i = 0; i < g.size(); ++i) csv.row({g.at(i), st.t, v[i]});
  }
  csv.close();
}

void write_window(const OutputDir& out, std::string_view name, const SolitonWindow& w,
                  const std::vector<double>& values) {
  CsvWriter csv(out.file(name), "s,t,value");
  for (std::size_t j = 0; j < w.nt; ++j)
    for (std::size_t i = 0; i < w.ns; ++i) csv.row({w.s_at(i), w.t_at(j), values[j * w.ns + i]});
  csv.close();
}

json drift_json(const FrameDriftReport& r) {
  return {{"max_defect", r.max_defect}, {"TT", r.tt}, {"NN", r.nn}, {"BB", r.bb},
          {"TN", r.tn},                 {"TB", r.tb}, {"NB", r.nb}};
}

}  // namespace

VelocityPreset make_preset(const FlowSettings& flow) {
  if (flow.preset == "type1") return type1_preset(flow.eps_kappa);
  if (flow.preset == "type2") return type2_preset(flow.eps_kappa);
  if (flow.preset == "static") return static_preset(flow.eps_kappa);
  if (!flow.alpha || !flow.beta)
    throw ConfigError({"preset: custom needs alpha and beta expressions"});
  const Expr alpha = *flow.alpha;
  const Expr beta = *flow.beta;
  const double eps = flow.eps_kappa;
  return {"custom", [alpha, beta, eps](const CurvatureProfile& p, double t) {
            const auto ks = fd::d1(p.kappa, p.grid);
            const auto ts = fd::d1(p.tau, p.grid);
            const auto kss = fd::d2(p.kappa, p.grid);
            std::vector<double> a(p.grid.size()), b(p.grid.size());
            for (std::size_t i = 0; i < p.grid.size(); ++i) {
              const double vars[] = {p.grid.at(i), t, p.kappa[i], p.tau[i], ks[i], ts[i], kss[i]};
              a[i] = alpha.eval(vars);
              b[i] = beta.eval(vars);
            }
            return VelocityTriple::from_fields(p, std::move(a), std::move(b), eps);
          }};
}

void run_evolve(const RunConfig& c) {
  const EvolveSettings s = evolve_settings(c);
  OutputDir out(c.at("out"));
  const auto profile = sample_profile(s.grid.grid(), s.kappa, s.tau);
  const auto preset = make_preset(s.flow);
  EvolutionOptions opts;
  opts.blowup = s.flow.blowup;
  opts.stride = s.stride;
  const auto traj = evolve({0.0, profile}, preset, s.dt, s.steps, opts);

  write_long(out, "kappa_grid.csv", traj.states, true);
  write_long(out, "tau_grid.csv", traj.states, false);

  json res = {{"preset", preset.name},
              {"dt_levels", s.dt * static_cast<double>(s.stride)},
              {"boundary", boundary_name(s.grid.boundary)}};
  if (traj.states.size() >= 3) {
    const auto r = compatibility_residuals(traj, preset);
    res["max_kappa_residual"] = r.max_kappa;
    res["max_tau_residual"] = r.max_tau;
    res["interior_time_levels"] = r.t.size();
  } else {
    res["max_kappa_residual"] = nullptr;
    res["max_tau_residual"] = nullptr;
    res["note"] = "compatibility residuals need at least 3 recorded time levels";
  }
  write_json(out.file("residuals.json"), res);
  write_meta(out, c, {{"warnings", traj.meta.warnings}, {"stencil_order", traj.meta.stencil_order}});
  out.commit();
}

void run_soliton(const RunConfig& c) {
  const SolitonSettings s = soliton_settings(c);
  json summary;
  SolitonGrid grid;
  ResidualGrid res;
  if (s.family == "kink") {
    KinkOptions o;
    o.eta_sign = s.eta_sign;
    o.upsilon_override = s.upsilon_override;
    const auto p = kink_params(s.A1, s.A2, o);
    grid = eval_kink_grid(p, s.window);
    res = residual_type1(p, s.window);
    summary["params"] = {{"A1", p.A1},
                         {"A2", p.A2},
                         {"eta", p.eta},
                         {"upsilon", p.upsilon},
                         {"upsilon_stated", p.upsilon_stated()},
                         {"upsilon_alternative", p.upsilon_balanced()}};
    summary["closed_form"] = {{"R1_sup", kink_r1_sup(p)}, {"R1_at_xi0", kink_r1_closed_form(p, 0.0)}};
  } else {
    BellOptions o;
    o.upsilon_override = s.upsilon_override;
    const auto p = bell_params(s.B1, s.B2, o);
    grid = eval_bell_grid(p, s.window);
    res = residual_type2(p, s.window);
    const double constraint = -p.B2 / p.B1;
    summary["params"] = {{"B1", p.B1},
                         {"B2", p.B2},
                         {"eta", p.eta},
                         {"upsilon", p.upsilon},
                         {"upsilon_constraint", constraint}};
    double grid_max = 0.0;
    for (std::size_t j = 0; j < s.window.nt; ++j)
      for (std::size_t i = 0; i < s.window.ns; ++i)
        grid_max = std::max(grid_max, std::abs(bell_r1_closed_form(
                                          p, wave_variable(p.eta, p.upsilon, s.window.s_at(i),
                                                           s.window.t_at(j)))));
    summary["closed_form"] = {
        {"R1_max", p.upsilon == constraint ? json(bell_r1_max_balanced(p)) : json(nullptr)},
        {"R1_grid_max", grid_max}};
  }
  summary["family"] = s.family;
  summary["max_abs_R1"] = res.max_abs_R1;
  summary["max_abs_R2"] = res.max_abs_R2;
  summary["R2_excluded_points"] = res.excluded.size();

  OutputDir out(c.at("out"));
  write_window(out, "kappa_grid.csv", s.window, grid.kappa);
  write_window(out, "tau_grid.csv", s.window, grid.tau);
  write_window(out, "residual_R1.csv", s.window, res.R1);
  write_window(out, "residual_R2.csv", s.window, res.R2);
  write_json(out.file("summary.json"), summary);
  write_meta(out, c);
  out.commit();
}

void run_surface(const RunConfig& c) {
  const SurfaceSettings s = surface_settings(c);
  const SGrid grid = s.grid.grid();
  OutputDir out(c.at("out"));
  const auto profile = sample_profile(grid, s.kappa, s.tau);
  const auto curve = reconstruct_curve(profile, FrenetFrame{});
  const auto ks = fd::d1(profile.kappa, grid);
  const auto ts = fd::d1(profile.tau, grid);
  const auto preset = make_preset(s.flow);
  const auto rates = evolution_rhs(profile, preset.make(profile, 0.0));
  const bool normal = s.kind == "normal";

  CsvWriter csv(out.file("surface.csv"),
                "s,u_or_v,E,F,G,e,f,g,K_paper,H_paper,K_numeric,H_numeric,inext_residual");
  double dK = 0.0, dH = 0.0, richardson = 0.0;
  std::size_t rows = 0;
  for (std::size_t i = 2; i + 2 < grid.size(); i += s.stride) {
    const CurveJet jet{profile.kappa[i], ks[i], profile.tau[i], ts[i]};
    for (double w : s.rulings) {
      try {
        const auto forms = normal ? paper_forms_normal(jet, w) : paper_forms_binormal(jet, w);
        const auto paper = normal ? paper_curvatures_normal(jet, w) : paper_curvatures_binormal(jet, w);
        const auto patch = normal ? normal_patch(curve, i, w, s.dw) : binormal_patch(curve, i, w, s.dw);
        const auto numeric = curvatures_from_forms(numeric_forms(patch));
        const double inext =
            normal ? inext_residual_normal(jet.kappa, jet.tau, rates.kappa_t[i], rates.tau_t[i], w)
                   : inext_residual_binormal(jet.tau, rates.tau_t[i], w);
        csv.row({grid.at(i), w, forms.E, forms.F, forms.G, forms.e, forms.f, forms.g, paper.K,
                 paper.H, numeric.K, numeric.H, inext});
        dK = std::max(dK, std::abs(paper.K - numeric.K));
        dH = std::max(dH, std::abs(paper.H - numeric.H));
        richardson = std::max(richardson, numeric_gauss_error_estimate(patch));
        ++rows;
      } catch (const Error& e) {
        std::ostringstream msg;
        msg << "s=" << grid.at(i) << ", " << (normal ? "u" : "v") << "=" << w << ": " << e.detail();
        throw Error(e.code(), msg.str(), i);
      }
    }
  }
  csv.close();
  write_json(out.file("summary.json"), {{"kind", s.kind},
                                        {"rows", rows},
                                        {"preset", preset.name},
                                        {"max_abs_K_paper_minus_numeric", dK},
                                        {"max_abs_H_paper_minus_numeric", dH},
                                        {"max_numeric_K_error_estimate", richardson}});
  write_meta(out, c);
  out.commit();
}

void run_reconstruct(const RunConfig& c) {
  const ReconstructSettings s = reconstruct_settings(c);
  OutputDir out(c.at("out"));
  const auto profile = sample_profile(s.grid.grid(), s.kappa, s.tau);
  std::vector<EvolutionState> states{{0.0, profile}};
  std::vector<std::string> warnings;
  if (s.steps > 0) {
    EvolutionOptions opts;
    opts.blowup = s.flow.blowup;
    opts.stride = s.stride;
    auto traj = evolve({0.0, profile}, make_preset(s.flow), s.dt, s.steps, opts);
    states = std::move(traj.states);
    warnings = std::move(traj.meta.warnings);
  }
  FrameIntegrationOptions fopts;
  fopts.drift_limit = s.drift_limit;
  fopts.reorthonormalize = s.reorthonormalize;

  CsvWriter csv(out.file("curve.csv"), "t,s,x1,x2,x3");
  json snapshots = json::array();
  double worst = 0.0;
  for (const auto& st : states) {
    const auto curve = reconstruct_curve(st.profile, FrenetFrame{}, {}, fopts);
    for (std::size_t i = 0; i < curve.points.size(); ++i) {
      const Vec3M& x = curve.points[i];
      csv.row({st.t, curve.grid.at(i), x.x1, x.x2, x.x3});
    }
    const auto drift = measure_drift(curve.frames);
    worst = std::max(worst, drift.max_defect);
    json entry = drift_json(drift);
    entry["t"] = st.t;
    snapshots.push_back(entry);
  }
  csv.close();
  write_json(out.file("frame_drift.json"), {{"max_defect", worst}, {"snapshots", snapshots}});
  write_meta(out, c, {{"warnings", warnings}});
  out.commit();
}

void run_frame_check(const RunConfig& c) {
  const FrameCheckSettings s = frame_check_settings(c);
  OutputDir out(c.at("out"));
  FrameIntegrationOptions fopts;
  fopts.drift_limit = std::nullopt;
  fopts.reorthonormalize = s.reorthonormalize;
  const SGrid coarse = s.grid.grid();
  const SGrid fine(coarse.s_min(), coarse.s_max(), 2 * coarse.size() - 1, Boundary::OneSided);
  const auto at = [&](const SGrid& g) {
    return measure_drift(integrate_frame_s(sample_profile(g, s.kappa, s.tau), FrenetFrame{}, fopts));
  };
  const auto dc = at(coarse);
  const auto df = at(fine);
  write_json(out.file("frame_drift.json"),
             {{"ds", coarse.spacing()},
              {"coarse", drift_json(dc)},
              {"ds_half", fine.spacing()},
              {"fine", drift_json(df)},
              {"ratio", df.max_defect > 0.0 ? json(dc.max_defect / df.max_defect) : json(nullptr)}});
  write_meta(out, c);
  out.commit();
}

void run(const RunConfig& config) {
  switch (config.command) {
    case Command::Evolve: return run_evolve(config);
    case Command::Soliton: return run_soliton(config);
    case Command::Surface: return run_surface(config);
    case Command::Reconstruct: return run_reconstruct(config);
    case Command::FrameCheck: return run_frame_check(config);
  }
}

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const SyntaxError*>(&e) ||
      dynamic_cast<const EvalError*>(&e))
    return kExitConfig;
  if (dynamic_cast<const IoError*>(&e) || dynamic_cast<const std::filesystem::filesystem_error*>(&e))
    return kExitIo;
  if (const auto* err = dynamic_cast<const Error*>(&e)) {
    switch (err->code()) {
      case ErrorCode::InvalidArgument:
      case ErrorCode::ConstraintViolation: return kExitConfig;
      default: return kExitNumerical;
    }
  }
  return kExitInternal;
}

}  // namespace minkflow::cli
