#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dw/diagnostics.hpp"
#include "dw/errors.hpp"
#include "dw/harness.hpp"
#include "dw/specfun.hpp"
#include "dw/weights.hpp"

namespace {

int specfun_check() {
  using dw::specfun::kummer_m;
  int failures = 0;
  const auto check = [&](const std::string& what, bool ok) {
    std::printf("%-52s %s\n", what.c_str(), ok ? "PASS" : "FAIL");
    if (!ok) ++failures;
  };
  for (double s : {0.1, 1.0, 5.0, 10.0, 30.0}) {
    for (double b : {0.36, 1.0, 2.0}) {
      const double rel = std::abs(kummer_m(b, b, s) - std::exp(s)) / std::exp(s);
      std::ostringstream what;
      what << "M(b,b;s) = e^s  b=" << b << " s=" << s;
      check(what.str(), rel < 1e-12);
    }
  }
  // phi recurrence beta phi_beta + s phi_beta' = beta phi_{beta+1} and the
  // ODE s phi'' + (gamma + s) phi' + beta phi = 0.
  const double gamma = 0.42;
  for (double beta : {0.1, 0.3, 0.41}) {
    double worst_rec = 0.0, worst_ode = 0.0;
    for (double s = 0.25; s <= 40.0; s += 0.25) {
      const auto p = dw::specfun::phi_eval({beta, gamma}, s);
      const auto p1 = dw::specfun::phi_eval({beta + 1.0, gamma}, s);
      worst_rec = std::max(
          worst_rec, std::abs(beta * p.phi + s * p.dphi - beta * p1.phi));
      worst_ode = std::max(
          worst_ode,
          std::abs(s * p.d2phi + (gamma + s) * p.dphi + beta * p.phi));
    }
    std::ostringstream what;
    what << "phi recurrence/ODE  beta=" << beta;
    check(what.str(), worst_rec < 1e-12 && worst_ode < 1e-12);
  }
  return failures == 0 ? 0 : 1;
}

dw::DampingProfile shipped_profile(int which) {
  dw::DampingProfile p;
  switch (which) {
    case 0:  // constant on the line
      p.shape = dw::ProfileShape::constant;
      p.a0 = 1.0;
      p.dim = 1;
      break;
    case 1:  // smooth power, whole space N = 3
      p.shape = dw::ProfileShape::smooth_power;
      p.a0 = 1.0;
      p.alpha = 0.5;
      p.dim = 3;
      break;
    default:  // pure power, exterior N = 3
      p.shape = dw::ProfileShape::pure_power;
      p.a0 = 1.0;
      p.alpha = 0.5;
      p.dim = 3;
      p.r_min = 1.0;
      break;
  }
  return p;
}

int weights_verify() {
  int failures = 0;
  for (int which = 0; which < 3; ++which) {
    const dw::DampingProfile p = shipped_profile(which);
    const double r_max = 60.0;
    const dw::WeightFamily w = dw::build_A(p, 0.1, r_max, 50.0);
    std::vector<double> samples;
    const double r0 = p.shape == dw::ProfileShape::pure_power ? p.r_min : 0.0;
    for (int i = 0; i <= 400; ++i) {
      samples.push_back(r0 + (r_max - r0) * i / 400.0);
    }
    const dw::AReport rep = dw::verify_A_properties(w, samples);
    const bool ok = rep.A1_margin < 1e-6 && rep.A2_constants.first > 0.0 &&
                    rep.A3_worst_ratio <
                        (2.0 - p.alpha) / (p.dim - p.alpha) + 0.1 / 2.0 + 1e-9;
    std::printf(
        "profile %d: A1_margin=%.3e  A2=[%.4g, %.4g]  A3=%.6f  %s\n", which,
        rep.A1_margin, rep.A2_constants.first, rep.A2_constants.second,
        rep.A3_worst_ratio, ok ? "PASS" : "FAIL");
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"damped-wave cascade verification toolkit"};
  app.require_subcommand(1);

  auto* sf = app.add_subcommand("specfun", "Kummer/profile evaluations");
  sf->require_subcommand(1);
  double b = 1.0, c = 1.0, s = 0.0;
  auto* sf_eval = sf->add_subcommand("eval", "evaluate M(b,c;s)");
  sf_eval->add_option("--b", b)->required();
  sf_eval->add_option("--c", c)->required();
  sf_eval->add_option("--s", s)->required();
  auto* sf_check = sf->add_subcommand("check", "run the identity battery");

  auto* wt = app.add_subcommand("weights", "weight-family construction");
  wt->require_subcommand(1);
  auto* wt_build = wt->add_subcommand("build", "tabulate A, Psi for a profile");
  std::string shape = "constant", out_path = "weights.csv";
  double a0 = 1.0, alpha = 0.0, r_min = 0.0, eps = 0.1, t0 = 10.0,
         r_max = 50.0;
  int N = 1;
  wt_build->add_option("--shape", shape,
                       "constant|smooth_power|pure_power");
  wt_build->add_option("--a0", a0);
  wt_build->add_option("--alpha", alpha);
  wt_build->add_option("--N", N);
  wt_build->add_option("--r-min", r_min);
  wt_build->add_option("--eps", eps);
  wt_build->add_option("--t0", t0);
  wt_build->add_option("--r-max", r_max);
  wt_build->add_option("--out", out_path);
  auto* wt_verify =
      wt->add_subcommand("verify", "audit the shipped profiles");

  auto* ca = app.add_subcommand("cascade", "experiments");
  ca->require_subcommand(1);
  std::string cfg_path, out_dir;
  auto* ca_run = ca->add_subcommand("run", "run one experiment");
  ca_run->add_option("config", cfg_path)->required();
  ca_run->add_option("--out-dir", out_dir);
  auto* ca_sweep = ca->add_subcommand("sweep", "axis sweep over a base config");
  std::vector<std::string> axis_specs;
  std::string sweep_cfg, sweep_out = "sweep_out";
  ca_sweep->add_option("config", sweep_cfg)->required();
  ca_sweep->add_option("--axis", axis_specs, "key=v1,v2,...")->required();
  ca_sweep->add_option("--out-dir", sweep_out);
  auto* ca_fit = ca->add_subcommand("fit", "log-log slope of a trace column");
  std::string trace_path, window = "0,0", column = "l2_V0";
  ca_fit->add_option("trace", trace_path)->required();
  ca_fit->add_option("--window", window, "t_a,t_b")->required();
  ca_fit->add_option("--column", column);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sf_eval->parsed()) {
      std::printf("%.15g\n", dw::specfun::kummer_m(b, c, s));
      return 0;
    }
    if (sf_check->parsed()) return specfun_check();

    if (wt_build->parsed()) {
      dw::DampingProfile p;
      if (shape == "constant") p.shape = dw::ProfileShape::constant;
      else if (shape == "smooth_power") p.shape = dw::ProfileShape::smooth_power;
      else if (shape == "pure_power") p.shape = dw::ProfileShape::pure_power;
      else throw dw::ConfigError("unknown shape '" + shape + "'");
      p.a0 = a0;
      p.alpha = alpha;
      p.dim = N;
      p.r_min = r_min;
      const dw::WeightFamily w = dw::build_A(p, eps, r_max, t0);
      std::ofstream csv(out_path);
      csv << "r,a,A,dA,Psi0\n";
      const double r0 = p.shape == dw::ProfileShape::pure_power ? r_min : 0.0;
      for (int i = 0; i <= 1000; ++i) {
        const double r = r0 + (r_max - r0) * i / 1000.0;
        char line[200];
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", r,
                      p.a(r), w.A(r), w.dA(r), w.psi(r, 0.0));
        csv << line;
      }
      std::printf("wrote %s (offset A0 = %.17g)\n", out_path.c_str(),
                  w.offset());
      return 0;
    }
    if (wt_verify->parsed()) return weights_verify();

    if (ca_run->parsed()) {
      const dw::ExperimentConfig cfg = dw::parse_config_file(cfg_path);
      const dw::ExperimentResult res = dw::run_experiment(cfg, out_dir);
      for (const auto& f : res.fits) {
        std::printf("%-12s slope=%+.4f bound=%+.4f tol=%.2f  %s\n",
                    f.label.c_str(), f.slope, f.bound, f.tol,
                    f.pass ? "PASS" : "FAIL");
      }
      std::printf("traces:  %s\nsummary: %s\n", res.trace_path.c_str(),
                  res.summary_path.c_str());
      return res.all_pass ? 0 : 1;
    }
    if (ca_sweep->parsed()) {
      const dw::ExperimentConfig base = dw::parse_config_file(sweep_cfg);
      std::vector<dw::SweepAxis> axes;
      for (const auto& spec : axis_specs) {
        const auto eq = spec.find('=');
        if (eq == std::string::npos) {
          throw dw::ConfigError("--axis expects key=v1,v2,..., got '" + spec +
                                "'");
        }
        dw::SweepAxis axis;
        axis.key = spec.substr(0, eq);
        std::istringstream vals(spec.substr(eq + 1));
        std::string v;
        while (std::getline(vals, v, ',')) axis.values.push_back(v);
        axes.push_back(std::move(axis));
      }
      const auto rows = dw::sweep(base, axes, sweep_out);
      dw::write_sweep_csv(rows, axes, sweep_out + "/sweep.csv");
      bool ok = true;
      for (const auto& row : rows) {
        ok = ok && row.error.empty() && row.all_pass;
      }
      std::printf("%zu rows -> %s/sweep.csv\n", rows.size(),
                  sweep_out.c_str());
      return ok ? 0 : 1;
    }
    if (ca_fit->parsed()) {
      std::ifstream in(trace_path);
      if (!in) throw dw::ConfigError("cannot open '" + trace_path + "'");
      std::string header;
      std::getline(in, header);
      std::vector<std::string> cols;
      {
        std::istringstream hs(header);
        std::string c0;
        while (std::getline(hs, c0, ',')) cols.push_back(c0);
      }
      std::size_t col = cols.size();
      for (std::size_t i = 0; i < cols.size(); ++i) {
        if (cols[i] == column) col = i;
      }
      if (col == cols.size()) {
        throw dw::ConfigError("column '" + column + "' not in " + trace_path);
      }
      std::vector<double> times, series;
      std::string line;
      while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string cell;
        std::size_t i = 0;
        double t = 0.0, y = 0.0;
        while (std::getline(ls, cell, ',')) {
          if (i == 0) t = std::stod(cell);
          if (i == col) y = std::stod(cell);
          ++i;
        }
        times.push_back(t);
        series.push_back(y);
      }
      double ta = 0.0, tb = 0.0;
      if (std::sscanf(window.c_str(), "%lf,%lf", &ta, &tb) != 2) {
        throw dw::ConfigError("--window expects a,b");
      }
      const dw::RateFit fit = dw::fit_decay_rate(times, series, ta, tb);
      std::printf("slope=%.6f stderr=%.2e points=%zu\n", fit.slope,
                  fit.stderr_slope, fit.n_points);
      return 0;
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
