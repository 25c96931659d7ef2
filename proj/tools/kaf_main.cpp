// SPDX-License-Identifier: Apache-2.0
//
// kaf: command-line front end. Subcommands:
//   run                integrate the gradient flow, emit CSV + grid + heatmaps
//   check-identities   algebraic and residual identity suites, pass/fail lines
//   check-ellipticity  principal-symbol determinant sampling
//   convergence-order  h-refinement studies, observed orders

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kaf/kaf.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_override;
  std::uint64_t seed_override = 0;
  bool has_seed = false;
};

kaf::RunConfig load_config(const CommonArgs& a) {
  kaf::RunConfig cfg;
  if (!a.config_path.empty()) {
    std::ifstream in(a.config_path);
    if (!in) throw kaf::IoError("cannot open config file " + a.config_path);
    std::ostringstream ss;
    ss << in.rdbuf();
    cfg = kaf::parse_config(ss.str());
  }
  if (!a.out_override.empty()) cfg.out_dir = a.out_override;
  if (a.has_seed) cfg.seed = a.seed_override;
  return cfg;
}

int failures = 0;

void report(const std::string& name, bool pass, double value, double tol) {
  if (pass) {
    std::printf("PASS %s (max deviation %.3g, tolerance %.3g)\n", name.c_str(), value, tol);
  } else {
    std::printf("FAIL %s (max deviation %.3g exceeds tolerance %.3g)\n", name.c_str(), value,
                tol);
    ++failures;
  }
}

kaf::SecondJet random_second_jet(kaf::Rng& rng) {
  const kaf::FirstJet j1 = kaf::sample_symplectic_jet(rng);
  return kaf::make_second_jet(j1.fx, j1.fy, j1.gx, j1.gy, rng.uniform(-1.5, 1.5),
                              rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                              rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                              rng.uniform(-1.5, 1.5));
}

int cmd_run(const CommonArgs& a) {
  const kaf::RunConfig cfg = load_config(a);
  const kaf::GraphSurface s0 = kaf::build_surface(cfg);
  kaf::FlowRunParams p;
  p.kappa = cfg.kappa;
  p.t_end = cfg.t_end;
  p.record_every = cfg.record_every;
  p.tol_converged = cfg.tol_converged;
  const kaf::RunResult res = kaf::run(kaf::FlowState{s0, 0.0, 0}, p);

  std::filesystem::create_directories(cfg.out_dir);
  const std::string dir = cfg.out_dir + "/";
  kaf::write_csv(dir + "flow.csv", res.records);
  kaf::write_kaf(dir + "final.kaf", res.final_state.surface);
  kaf::write_heatmap(dir + "cos_alpha.ppm", res.final_state.surface,
                     kaf::HeatmapField::CosAlpha);
  kaf::write_heatmap(dir + "residual.ppm", res.final_state.surface,
                     kaf::HeatmapField::Residual);
  kaf::write_heatmap(dir + "gauss_curvature.ppm", res.final_state.surface,
                     kaf::HeatmapField::GaussCurvature);

  const kaf::DiagnosticsRecord& last = res.records.back();
  std::printf("run complete: %zu records, t = %.6g, steps = %ld\n", res.records.size(),
              res.final_state.t, res.final_state.step_count);
  std::printf("  L = %.12g  area = %.12g  symplectic_area = %.12g\n", last.L, last.area,
              last.symplectic_area);
  std::printf("  min cos_alpha = %.12g  residual_linf = %.3g\n", last.min_cos_alpha,
              last.residual_linf);
  std::printf("  outputs in %s\n", cfg.out_dir.c_str());
  return 0;
}

int cmd_check_identities(const CommonArgs& a) {
  kaf::RunConfig cfg = load_config(a);
  if (a.config_path.empty()) {
    cfg.preset = "perturbed_torus";
    cfg.nx = cfg.ny = 32;
    cfg.eps = 0.05;
    cfg.eps_g = 0.03;
  }
  kaf::Rng rng(cfg.seed);

  {  // Jet algebra: detg decomposition and the angle identity.
    double dev = 0.0;
    for (int k = 0; k < 100000; ++k) {
      const kaf::FirstJet j = kaf::make_first_jet(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5),
                                                  rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5));
      dev = std::max(dev, std::fabs(j.detg - (j.a * j.a + j.b * j.b + j.c * j.c)));
      dev = std::max(dev,
                     std::fabs(j.cos_alpha * j.cos_alpha + j.sin2_alpha - 1.0));
    }
    report("jet-identities (detg = a^2+b^2+c^2, cos^2+sin^2 = 1)", dev <= 1e-12, dev, 1e-12);
  }

  {  // Dual-path Euler-Lagrange residual.
    double dev = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const kaf::SecondJet j2 = random_second_jet(rng);
      const auto direct = kaf::el_residual_graph(j2);
      const auto viaco = kaf::el_contract(kaf::el_coefficients(j2), j2);
      dev = std::max(dev, std::fabs(direct.first - viaco.first));
      dev = std::max(dev, std::fabs(direct.second - viaco.second));
    }
    report("dual-path-el (coefficient contraction vs direct)", dev <= 1e-9, dev, 1e-9);
  }

  {  // Frame-form to graph-form weight conversion.
    double dev = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const kaf::SecondJet j2 = random_second_jet(rng);
      const auto graph = kaf::el_residual_graph(j2);
      const auto bridged = kaf::el_frame_to_graph(kaf::ambient_el(j2), j2);
      dev = std::max(dev, std::fabs(graph.first - bridged.first));
      dev = std::max(dev, std::fabs(graph.second - bridged.second));
    }
    report("frame-to-graph-bridge", dev <= 1e-10, dev, 1e-10);
  }

  {  // Adapted-frame invariants.
    double dev = 0.0;
    int used = 0;
    while (used < 10000) {
      const kaf::FirstJet j = kaf::sample_symplectic_jet(rng);
      if (j.sin2_alpha < 1e-6) continue;
      ++used;
      const kaf::AdaptedFrame F = kaf::adapted_frame(j);
      dev = std::max(dev, std::fabs(kaf::omega(F.e1, F.e2) - F.cos_alpha));
      dev = std::max(dev, std::fabs(kaf::omega(F.v3, F.v4) - F.cos_alpha));
      dev = std::max(dev, std::fabs(kaf::omega(F.e1, F.v3) - F.sin_alpha));
      dev = std::max(dev, std::fabs(kaf::omega(F.e2, F.v4) + F.sin_alpha));
      const kaf::Vec4 r1 =
          kaf::apply_J(F.e1) - (F.cos_alpha * F.e2 + F.sin_alpha * F.v3);
      const kaf::Vec4 r2 =
          kaf::apply_J(F.e2) + (F.cos_alpha * F.e1 + F.sin_alpha * F.v4);
      dev = std::max(dev, kaf::norm(r1));
      dev = std::max(dev, kaf::norm(r2));
    }
    report("frame-invariants (pairings and J-relations)", dev <= 1e-9, dev, 1e-9);
  }

  const kaf::GraphSurface s = kaf::build_surface(cfg);

  {  // Velocity normality on the configured surface.
    double dev = 0.0;
    const std::vector<kaf::Vec4> vel = kaf::flow_velocity(s);
    for (int i = 0; i < s.nx; ++i)
      for (int j = 0; j < s.ny; ++j) {
        if (!s.interior(i, j, 2)) continue;
        const kaf::FirstJet fj = kaf::first_jet(s, i, j);
        const kaf::Vec4& v = vel[s.idx(i, j)];
        dev = std::max(dev, std::fabs(kaf::dot(v, kaf::tangent1(fj))));
        dev = std::max(dev, std::fabs(kaf::dot(v, kaf::tangent2(fj))));
      }
    report("velocity-normality", dev <= 1e-10, dev, 1e-10);
  }

  {  // Fixed point: flat torus velocity vanishes; code-path identity with the
     // frame-form residual on the configured surface.
    const kaf::GraphSurface flat = kaf::make_flat_torus(32, 32);
    double dev = kaf::residual_linf(kaf::flow_velocity(flat));
    const std::vector<kaf::Vec4> vel = kaf::flow_velocity(s);
    for (int i = 2; i < s.nx - 2; ++i)
      for (int j = 2; j < s.ny - 2; ++j) {
        const kaf::Vec4 d = vel[s.idx(i, j)] - kaf::el_residual_frame(s, i, j);
        dev = std::max(dev, kaf::norm(d));
      }
    report("fixed-point (flat velocity = 0; velocity = frame residual)", dev <= 1e-12, dev,
           1e-12);
  }

  {  // Complex-form round trip of the second fundamental form.
    double dev = 0.0;
    for (int k = 0; k < 10000; ++k) {
      kaf::SecondFundamentalForm S{};
      S.h311 = rng.uniform(-2, 2);
      S.h312 = rng.uniform(-2, 2);
      S.h322 = rng.uniform(-2, 2);
      S.h411 = rng.uniform(-2, 2);
      S.h412 = rng.uniform(-2, 2);
      S.h422 = rng.uniform(-2, 2);
      S.H3 = S.h311 + S.h322;
      S.H4 = S.h411 + S.h422;
      const kaf::SffComponents R = kaf::reassemble_sff(kaf::complex_sff(S));
      dev = std::max({dev, std::fabs(R.h311 - S.h311), std::fabs(R.h312 - S.h312),
                      std::fabs(R.h322 - S.h322), std::fabs(R.h411 - S.h411),
                      std::fabs(R.h412 - S.h412), std::fabs(R.h422 - S.h422)});
    }
    report("complex-sff-round-trip", dev <= 1e-12, dev, 1e-12);
  }

  return failures == 0 ? 0 : 1;
}

int cmd_check_ellipticity(const CommonArgs& a, long samples_cli) {
  kaf::RunConfig cfg = load_config(a);
  if (samples_cli > 0) cfg.samples = samples_cli;
  kaf::Rng rng(cfg.seed);
  double min_det = 0.0;
  double dual_dev = 0.0;
  bool any = false;
  for (long k = 0; k < cfg.samples; ++k) {
    const kaf::FirstJet j = kaf::sample_symplectic_jet(rng);
    const double th = rng.uniform(0.0, 2.0 * kaf::kPi);
    const double xi = std::cos(th), eta = std::sin(th);
    const double d = kaf::symbol(j, xi, eta).det();
    const double closed = kaf::symbol_det_closed_form(j, xi, eta);
    dual_dev = std::max(dual_dev, std::fabs(d - closed) / std::max(1.0, std::fabs(d)));
    min_det = any ? std::min(min_det, d) : d;
    any = true;
  }
  const bool pass = any && min_det > 0.0 && dual_dev <= 1e-9;
  if (pass) {
    std::printf("min det σ = %.6g, PASS\n", min_det);
    std::printf("closed-form agreement: max relative deviation %.3g (tolerance 1e-09)\n",
                dual_dev);
    return 0;
  }
  std::printf("min det σ = %.6g, FAIL (positivity or closed-form agreement violated; "
              "closed-form deviation %.3g)\n",
              min_det, dual_dev);
  return 1;
}

double max_abs_laplacian_residual(const kaf::GraphSurface& s) {
  double m = 0.0;
  for (int i = 0; i < s.nx; ++i)
    for (int j = 0; j < s.ny; ++j) {
      if (!s.interior(i, j, 3)) continue;
      m = std::max(m, std::fabs(kaf::laplacian_cos_alpha_residual(s, i, j)));
    }
  return m;
}

int cmd_convergence_order(const CommonArgs& a) {
  load_config(a);  // validate the config if one was given

  {  // Angle-Laplacian identity residual under h-refinement.
    double e[3];
    const int ns[3] = {32, 64, 128};
    for (int k = 0; k < 3; ++k) e[k] = max_abs_laplacian_residual(kaf::make_reference_torus(ns[k]));
    const double o1 = std::log2(e[0] / e[1]);
    const double o2 = std::log2(e[1] / e[2]);
    std::printf("angle-laplacian residual: max|r| = %.3g / %.3g / %.3g at n = 32/64/128; "
                "observed orders %.2f, %.2f\n",
                e[0], e[1], e[2], o1, o2);
    if (o1 >= 1.8 && o1 <= 2.2 && o2 >= 1.8 && o2 <= 2.2) {
      std::printf("PASS angle-laplacian residual order in [1.8, 2.2]\n");
    } else {
      std::printf("FAIL angle-laplacian residual order outside [1.8, 2.2]\n");
      ++failures;
    }
  }

  {  // Area-rate and angle-rate evolution identities, dt proportional to h^2.
    double ea[3], ec[3];
    const int ns[3] = {16, 32, 64};
    for (int k = 0; k < 3; ++k) {
      const kaf::GraphSurface s = kaf::make_reference_torus(ns[k]);
      const double dt = 0.1 * s.hx * s.hx;
      const kaf::FlowState st{s, 0.0, 0};
      const auto [obs, pred] = kaf::area_evolution_check(st, dt);
      ea[k] = std::fabs(obs - pred);
      const std::vector<kaf::Vec4> vel = kaf::flow_velocity(s);
      const kaf::GraphSurface s1 = kaf::step(st, dt).surface;
      double worst = 0.0;
      for (int i = 0; i < ns[k]; ++i)
        for (int j = 0; j < ns[k]; ++j)
          worst = std::max(worst, std::fabs(kaf::cos_alpha_evolution_residual(
                                      s, s1, dt, vel[s.idx(i, j)], i, j)));
      ec[k] = worst;
    }
    const double oa1 = std::log2(ea[0] / ea[1]), oa2 = std::log2(ea[1] / ea[2]);
    const double oc1 = std::log2(ec[0] / ec[1]), oc2 = std::log2(ec[1] / ec[2]);
    std::printf("area-rate identity: gaps %.3g / %.3g / %.3g; orders %.2f, %.2f\n", ea[0],
                ea[1], ea[2], oa1, oa2);
    std::printf("angle-rate identity: residuals %.3g / %.3g / %.3g; orders %.2f, %.2f\n",
                ec[0], ec[1], ec[2], oc1, oc2);
    const bool pass = oa1 >= 1.6 && oa1 <= 2.4 && oa2 >= 1.6 && oa2 <= 2.4 && oc1 >= 1.6 &&
                      oc1 <= 2.4 && oc2 >= 1.6 && oc2 <= 2.4;
    if (pass) {
      std::printf("PASS evolution-identity orders in [1.6, 2.4]\n");
    } else {
      std::printf("FAIL evolution-identity orders outside [1.6, 2.4]\n");
      ++failures;
    }
  }

  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph surfaces in C^2: Kahler-angle functional, Euler-Lagrange system, "
               "gradient flow"};
  app.require_subcommand(1);

  CommonArgs args;
  long samples_cli = 0;

  auto add_common = [&](CLI::App* cmd, bool config_required) {
    auto* opt = cmd->add_option("--config", args.config_path, "key=value config file");
    if (config_required) opt->required();
    cmd->add_option("--out", args.out_override, "output directory override");
    cmd->add_option("--seed", args.seed_override, "seed override")
        ->each([&](const std::string&) { args.has_seed = true; });
  };

  auto* run_cmd = app.add_subcommand("run", "integrate the gradient flow");
  add_common(run_cmd, true);
  auto* ident_cmd = app.add_subcommand("check-identities", "algebraic/residual suites");
  add_common(ident_cmd, false);
  auto* ellip_cmd = app.add_subcommand("check-ellipticity", "symbol determinant sampling");
  add_common(ellip_cmd, false);
  ellip_cmd->add_option("--samples", samples_cli, "number of sampled jets");
  auto* conv_cmd = app.add_subcommand("convergence-order", "h-refinement studies");
  add_common(conv_cmd, false);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return cmd_run(args);
    if (ident_cmd->parsed()) return cmd_check_identities(args);
    if (ellip_cmd->parsed()) return cmd_check_ellipticity(args, samples_cli);
    return cmd_convergence_order(args);
  } catch (const kaf::ValidationError& e) {
    std::fprintf(stderr, "validation error: %s\n", e.what());
    return 2;
  } catch (const kaf::ParseError& e) {
    std::fprintf(stderr, "parse error: %s\n", e.what());
    return 2;
  } catch (const kaf::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 1;
  }
}
