#include "dw/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include <json.hpp>

#include "dw/errors.hpp"
#include "dw/specfun.hpp"

namespace dw {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "geometry", "dim",    "r_lo",   "r_hi",  "h",      "bc_lo",
      "shape",    "a0",     "alpha",  "r_min", "eps",    "delta",
      "t0",       "lambda", "nu",     "n",     "T",      "dt",
      "fit_a",    "fit_b",  "tol",    "out_dir", "name",
      "u0_kind",  "u0_amp", "u0_center", "u0_width", "u0_p", "u0_index",
      "u1_kind",  "u1_amp", "u1_center", "u1_width", "u1_p", "u1_index"};
  return keys;
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config: key '" + key + "' has non-numeric value '" + v +
                      "'");
  }
}

int to_int(const std::string& key, const std::string& v) {
  const double x = to_double(key, v);
  const int i = static_cast<int>(std::llround(x));
  if (std::abs(x - i) > 1e-12) {
    throw ConfigError("config: key '" + key + "' must be an integer, got '" +
                      v + "'");
  }
  return i;
}

DataKind to_data_kind(const std::string& key, const std::string& v) {
  if (v == "zero") return DataKind::zero;
  if (v == "gaussian") return DataKind::gaussian;
  if (v == "power_tail") return DataKind::power_tail;
  if (v == "mode") return DataKind::mode;
  throw ConfigError("config: key '" + key + "' must be one of "
                    "zero|gaussian|power_tail|mode, got '" + v + "'");
}

void fill_data_spec(const std::map<std::string, std::string>& kv,
                    const std::string& prefix, DataSpec& spec) {
  const auto get = [&](const char* suffix) -> const std::string* {
    const auto it = kv.find(prefix + suffix);
    return it == kv.end() ? nullptr : &it->second;
  };
  if (const auto* v = get("_kind")) spec.kind = to_data_kind(prefix + "_kind", *v);
  if (const auto* v = get("_amp")) spec.amp = to_double(prefix + "_amp", *v);
  if (const auto* v = get("_center")) spec.center = to_double(prefix + "_center", *v);
  if (const auto* v = get("_width")) spec.width = to_double(prefix + "_width", *v);
  if (const auto* v = get("_p")) spec.p = to_double(prefix + "_p", *v);
  if (const auto* v = get("_index")) spec.index = to_int(prefix + "_index", *v);
}

std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Quintic smoothstep: C^2, 0 at 0, 1 at 1.
double smoothstep(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return x * x * x * (10.0 + x * (-15.0 + 6.0 * x));
}

}  // namespace

DampingProfile ExperimentConfig::profile() const {
  DampingProfile p;
  p.shape = shape;
  p.a0 = a0;
  p.alpha = shape == ProfileShape::constant ? 0.0 : alpha;
  p.dim = dim;
  p.r_min = r_min;
  return p;
}

Grid ExperimentConfig::make_grid() const {
  return Grid::make(geometry, dim, r_lo, r_hi, h, bc_lo, Bc::dirichlet);
}

ExperimentConfig config_from_map(const std::map<std::string, std::string>& kv) {
  std::vector<std::string> unknown;
  for (const auto& [k, v] : kv) {
    if (!known_keys().count(k)) unknown.push_back(k);
  }
  if (!unknown.empty()) {
    std::string msg = "config: unknown key(s):";
    for (const auto& k : unknown) msg += " '" + k + "'";
    throw ConfigError(msg);
  }

  ExperimentConfig cfg;
  cfg.raw = kv;
  const auto get = [&](const char* key) -> const std::string* {
    const auto it = kv.find(key);
    return it == kv.end() ? nullptr : &it->second;
  };

  if (const auto* v = get("geometry")) {
    if (*v == "line") cfg.geometry = Geometry::line;
    else if (*v == "radial") cfg.geometry = Geometry::radial;
    else throw ConfigError("config: geometry must be line|radial, got '" + *v + "'");
  }
  if (const auto* v = get("dim")) cfg.dim = to_int("dim", *v);
  if (const auto* v = get("r_lo")) cfg.r_lo = to_double("r_lo", *v);
  if (const auto* v = get("r_hi")) cfg.r_hi = to_double("r_hi", *v);
  if (const auto* v = get("h")) cfg.h = to_double("h", *v);
  if (const auto* v = get("bc_lo")) {
    if (*v == "dirichlet") cfg.bc_lo = Bc::dirichlet;
    else if (*v == "neumann_regular") cfg.bc_lo = Bc::neumann_regular;
    else throw ConfigError(
        "config: bc_lo must be dirichlet|neumann_regular, got '" + *v + "'");
  } else if (cfg.geometry == Geometry::radial && cfg.r_lo == 0.0) {
    cfg.bc_lo = Bc::neumann_regular;
  }
  if (const auto* v = get("shape")) {
    if (*v == "constant") cfg.shape = ProfileShape::constant;
    else if (*v == "smooth_power") cfg.shape = ProfileShape::smooth_power;
    else if (*v == "pure_power") cfg.shape = ProfileShape::pure_power;
    else throw ConfigError(
        "config: shape must be constant|smooth_power|pure_power, got '" + *v + "'");
  }
  if (const auto* v = get("a0")) cfg.a0 = to_double("a0", *v);
  if (const auto* v = get("alpha")) cfg.alpha = to_double("alpha", *v);
  if (const auto* v = get("r_min")) cfg.r_min = to_double("r_min", *v);
  if (const auto* v = get("eps")) cfg.eps = to_double("eps", *v);
  if (const auto* v = get("delta")) cfg.delta = to_double("delta", *v);
  if (const auto* v = get("t0")) cfg.t0 = to_double("t0", *v);
  if (const auto* v = get("lambda")) cfg.lambda = to_double("lambda", *v);
  if (const auto* v = get("nu")) cfg.nu = to_double("nu", *v);
  if (const auto* v = get("n")) cfg.n = to_int("n", *v);
  if (const auto* v = get("T")) cfg.T = to_double("T", *v);
  if (const auto* v = get("dt")) cfg.dt = to_double("dt", *v);
  if (const auto* v = get("fit_a")) cfg.fit_a = to_double("fit_a", *v);
  if (const auto* v = get("fit_b")) cfg.fit_b = to_double("fit_b", *v);
  if (const auto* v = get("tol")) cfg.tol = to_double("tol", *v);
  if (const auto* v = get("out_dir")) cfg.out_dir = *v;
  if (const auto* v = get("name")) cfg.name = *v;
  fill_data_spec(kv, "u0", cfg.u0);
  fill_data_spec(kv, "u1", cfg.u1);
  return cfg;
}

ExperimentConfig parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto strip = [](std::string s) {
      const auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_no) +
                        " is not key=value: '" + line + "'");
    }
    const std::string key = strip(line.substr(0, eq));
    const std::string val = strip(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("config: empty key on line " + std::to_string(line_no));
    }
    if (kv.count(key)) {
      throw ConfigError("config: duplicate key '" + key + "'");
    }
    kv[key] = val;
  }
  return config_from_map(kv);
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  ExperimentConfig cfg = parse_config_text(ss.str());
  if (cfg.name == "experiment") {
    cfg.name = std::filesystem::path(path).stem().string();
  }
  return cfg;
}

std::vector<std::string> validate(const ExperimentConfig& cfg) {
  std::vector<std::string> errs;
  const auto req = [&](bool ok, const std::string& msg) {
    if (!ok) errs.push_back(msg);
  };
  req(cfg.dim >= 1, "dim >= 1 violated");
  req(cfg.geometry != Geometry::line || cfg.dim == 1,
      "line geometry requires dim = 1");
  req(cfg.h > 0.0, "h > 0 violated");
  req(cfg.r_hi > cfg.r_lo, "r_hi > r_lo violated");
  req(cfg.a0 > 0.0, "a0 > 0 violated");
  req(cfg.alpha >= 0.0 && cfg.alpha < 1.0, "alpha in [0,1) violated");
  req(cfg.delta > 0.0 && cfg.delta < 0.5, "0 < delta < 1/2 violated");
  req(cfg.eps > 0.0 && cfg.eps < 0.5, "0 < eps < 1/2 violated");
  req(cfg.t0 >= 1.0, "t0 >= 1 violated");
  req(cfg.nu > 0.0, "nu > 0 violated");
  req(cfg.n >= 0, "n >= 0 violated");
  req(cfg.T > 0.0, "T > 0 violated");
  req(cfg.dt > 0.0, "dt > 0 violated");
  req(cfg.dt <= 0.9 * cfg.h * (1.0 + 1e-12),
      "CFL dt <= 0.9 h violated (wave stepping at unit speed)");
  if (cfg.shape == ProfileShape::pure_power) {
    req(cfg.r_min > 0.0, "pure_power profile requires r_min > 0");
    req(cfg.r_lo >= cfg.r_min - 1e-12,
        "pure_power profile requires r_lo >= r_min (exterior domain)");
  }
  const double alpha = cfg.shape == ProfileShape::constant ? 0.0 : cfg.alpha;
  if (errs.empty()) {
    try {
      const auto gp = specfun::gamma_pair(cfg.dim, alpha, cfg.eps);
      const double lam_lo = 2.0 * alpha * (cfg.n + 1) / (2.0 - alpha);
      const double lam_hi = (1.0 - 2.0 * cfg.delta) * gp.gamma;
      req(cfg.lambda >= lam_lo - 1e-12,
          "lambda >= 2 alpha (n+1)/(2-alpha) violated (lambda_{n+1} >= 0): "
          "lambda = " + fmt17(cfg.lambda) + " < " + fmt17(lam_lo));
      req(cfg.lambda < lam_hi,
          "lambda < (1-2 delta) gamma_eps violated: lambda = " +
              fmt17(cfg.lambda) + " >= " + fmt17(lam_hi));
    } catch (const std::exception& e) {
      errs.push_back(std::string("gamma_eps construction failed: ") + e.what());
    }
    if (alpha > 0.0) {
      req(cfg.n + 1 < (cfg.dim - alpha) / (2.0 * alpha),
          "n+1 < (N-alpha)/(2 alpha) violated");
    }
  }
  const double fa = cfg.fit_a > 0.0 ? cfg.fit_a : cfg.T / 10.0;
  const double fb = cfg.fit_b > 0.0 ? cfg.fit_b : cfg.T;
  req(fb >= 4.0 * fa, "fit window t_b >= 4 t_a violated");
  req(cfg.tol > 0.0, "tol > 0 violated");
  return errs;
}

std::vector<double> generate_data(const Grid& g, const DataSpec& spec) {
  std::vector<double> f(g.m, 0.0);
  switch (spec.kind) {
    case DataKind::zero:
      return f;
    case DataKind::gaussian:
      for (std::size_t i = 0; i < g.m; ++i) {
        const double x = (g.r[i] - spec.center) / spec.width;
        f[i] = spec.amp * std::exp(-x * x);
      }
      break;
    case DataKind::power_tail:
      for (std::size_t i = 0; i < g.m; ++i) {
        const double x = g.r[i] - spec.center;
        f[i] = spec.amp * std::pow(1.0 + x * x, -spec.p / 2.0);
      }
      break;
    case DataKind::mode: {
      const double L = g.r_hi - g.r_lo;
      for (std::size_t i = 0; i < g.m; ++i) {
        f[i] = spec.amp *
               std::sin(spec.index * M_PI * (g.r[i] - g.r_lo) / L);
      }
      return f;  // satisfies the walls exactly; no ramp
    }
  }
  const double ramp_len = 10.0 * g.h;
  for (std::size_t i = 0; i < g.m; ++i) {
    double s = smoothstep((g.r_hi - g.r[i]) / ramp_len);
    if (g.bc_lo == Bc::dirichlet) {
      s *= smoothstep((g.r[i] - g.r_lo) / ramp_len);
    }
    f[i] *= s;
  }
  return f;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg,
                                const std::string& out_dir_override) {
  {
    const auto errs = validate(cfg);
    if (!errs.empty()) {
      std::string msg = "config invalid:";
      for (const auto& e : errs) msg += "\n  - " + e;
      throw ConfigError(msg);
    }
  }
  ExperimentResult res;
  res.cfg = cfg;

  const Grid g = cfg.make_grid();
  const DampingProfile prof = cfg.profile();
  const double r_max = std::max(std::abs(cfg.r_lo), std::abs(cfg.r_hi));
  const WeightFamily w = build_A(prof, cfg.eps, r_max, cfg.t0);

  const std::vector<double> d0 = generate_data(g, cfg.u0);
  const std::vector<double> d1 = generate_data(g, cfg.u1);

  CascadeOptions opt;
  opt.n = cfg.n;
  opt.T = cfg.T;
  opt.dt = cfg.dt;
  opt.lambda = cfg.lambda;
  opt.build_U1 = true;
  const CascadeBundle b = build_cascade(g, prof, d0, d1, opt);

  const double lam1 = b.lambda_schedule[cfg.n + 1];
  EnergyParams ep;
  ep.lambda = cfg.lambda;
  ep.delta = cfg.delta;
  ep.nu = cfg.nu;

  ep.kind = EnergyKind::weighted_l2;
  const std::vector<double> heat0 = energy_trace(b.W[0][0], w, ep);
  ep.lambda = cfg.lambda + 2.0;
  const std::vector<double> heat1 = energy_trace(b.W[0][1], w, ep);
  ep.lambda = cfg.lambda;
  ep.kind = EnergyKind::grad_l2;
  const std::vector<double> grad0 = energy_trace(b.W[0][0], w, ep);
  const std::vector<double> cum_grad = cumulative_trapezoid(grad0, cfg.dt);

  ep.lambda = lam1;
  std::vector<double> e0_u1, e1_u1, e_u1;
  ep.kind = EnergyKind::E0;
  e0_u1 = energy_trace(*b.U1, w, ep);
  ep.kind = EnergyKind::E1;
  e1_u1 = energy_trace(*b.U1, w, ep);
  ep.kind = EnergyKind::E;
  e_u1 = energy_trace(*b.U1, w, ep);

  // int a |dt U1|^2 Psi^{lam1+1}: feed the co-states as a value trajectory.
  FieldTrajectory dU1;
  dU1.grid = &g;
  dU1.dt = cfg.dt;
  dU1.values = b.U1->dvalues;
  ep.kind = EnergyKind::weighted_l2;
  ep.lambda = lam1 + 1.0;
  const std::vector<double> dtU1 = energy_trace(dU1, w, ep);
  const std::vector<double> cum_dtU1 = cumulative_trapezoid(dtU1, cfg.dt);

  const double fa = cfg.fit_a > 0.0 ? cfg.fit_a : cfg.T / 10.0;
  const double fb = cfg.fit_b > 0.0 ? cfg.fit_b : cfg.T;
  const auto rates = theoretical_rates(cfg.n, prof.alpha, cfg.lambda);
  res.rates_V = rates.rate_V;
  res.rate_residual = rates.rate_residual;

  const auto record_fit = [&](const std::string& label,
                              const std::vector<double>& series, double bound) {
    FitRecord rec;
    rec.label = label;
    rec.tol = cfg.tol;
    const RateFit fit = fit_decay_rate(b.times, series, fa, fb);
    rec.slope = fit.slope;
    rec.stderr_slope = fit.stderr_slope;
    rec.bound = bound;
    rec.pass = fit.slope <= bound + cfg.tol;
    res.fits.push_back(rec);
    return fit.slope;
  };

  std::vector<double> v_slopes, r_slopes;
  for (int j = 0; j <= cfg.n; ++j) {
    const std::string label =
        j == 0 ? "l2_V0" : "l2_dt" + std::to_string(j) + "V" + std::to_string(j);
    v_slopes.push_back(record_fit(label, b.l2[j], rates.rate_V[j]));
  }
  for (int k = 0; k <= cfg.n; ++k) {
    const auto partial = theoretical_rates(k, prof.alpha, cfg.lambda);
    r_slopes.push_back(record_fit("res_" + std::to_string(k), b.res[k],
                                  partial.rate_residual));
  }
  // Ordering gaps: each residual improves by at least (1-alpha)/(2-alpha)
  // over its predecessor (and over V0 for the first one).
  const double gap = (1.0 - prof.alpha) / (2.0 - prof.alpha);
  for (int k = 0; k <= cfg.n; ++k) {
    FitRecord rec;
    rec.label = "gap_res_" + std::to_string(k);
    rec.tol = cfg.tol;
    rec.slope = r_slopes[k];
    rec.bound = (k == 0 ? v_slopes[0] : r_slopes[k - 1]) - gap;
    rec.pass = rec.slope <= rec.bound + cfg.tol;
    res.fits.push_back(rec);
  }

  const auto record_bound = [&](const std::string& label,
                                const std::vector<double>& series) {
    BoundednessRecord rec;
    rec.label = label;
    const std::size_t half = series.size() / 2;
    for (std::size_t k = 0; k < series.size(); ++k) {
      const double v = std::abs(series[k]);
      if (k < half) rec.early_max = std::max(rec.early_max, v);
      else rec.late_max = std::max(rec.late_max, v);
    }
    res.bounds.push_back(rec);
  };
  record_bound("heat0", heat0);
  record_bound("heat1", heat1);
  record_bound("E_U1", e_u1);
  const auto record_tail = [&](const std::string& label,
                               const std::vector<double>& cum) {
    BoundednessRecord rec;
    rec.label = label;
    rec.cumulative = true;
    const std::size_t last = cum.size() - 1;
    const std::size_t decade = last / 10;
    const double total = cum[last];
    rec.late_max = total;
    rec.early_max = cum[decade];
    rec.tail_gain = total > 0.0 ? (total - cum[decade]) / total : 0.0;
    res.bounds.push_back(rec);
  };
  record_tail("cum_grad", cum_grad);
  record_tail("cum_dtU1", cum_dtU1);

  res.truncation = truncation_monitor(b.u, 5);
  res.consistency = tower_consistency_residual(b, prof);
  res.all_pass = true;
  for (const auto& f : res.fits) res.all_pass = res.all_pass && f.pass;

  const std::string out =
      !out_dir_override.empty()
          ? out_dir_override
          : (cfg.out_dir.empty() ? std::string("out/") + cfg.name : cfg.out_dir);
  std::filesystem::create_directories(out);

  {
    std::ofstream csv(out + "/traces.csv");
    csv << "t,l2_u";
    for (int j = 0; j <= cfg.n; ++j) {
      csv << (j == 0 ? ",l2_V0"
                     : ",l2_dt" + std::to_string(j) + "V" + std::to_string(j));
    }
    for (int k = 0; k <= cfg.n; ++k) csv << ",res_" << k;
    csv << ",heat0,heat1,grad0,cum_grad,E0,E1,E,dtU1,cum_dtU1\n";
    for (std::size_t k = 0; k < b.times.size(); ++k) {
      csv << fmt17(b.times[k]) << ',' << fmt17(b.l2_u[k]);
      for (int j = 0; j <= cfg.n; ++j) csv << ',' << fmt17(b.l2[j][k]);
      for (int j = 0; j <= cfg.n; ++j) csv << ',' << fmt17(b.res[j][k]);
      csv << ',' << fmt17(heat0[k]) << ',' << fmt17(heat1[k]) << ','
          << fmt17(grad0[k]) << ',' << fmt17(cum_grad[k]) << ','
          << fmt17(e0_u1[k]) << ',' << fmt17(e1_u1[k]) << ','
          << fmt17(e_u1[k]) << ',' << fmt17(dtU1[k]) << ','
          << fmt17(cum_dtU1[k]) << '\n';
    }
    res.trace_path = out + "/traces.csv";
  }

  {
    nlohmann::ordered_json j;
    j["name"] = cfg.name;
    j["config"] = cfg.raw;
    const auto& gp = w.gammas();
    j["gamma_tilde"] = gp.gamma_tilde;
    j["gamma"] = gp.gamma;
    j["lambda_schedule"] = b.lambda_schedule;
    j["rate_V"] = rates.rate_V;
    j["rate_residual"] = rates.rate_residual;
    nlohmann::ordered_json fits = nlohmann::ordered_json::array();
    for (const auto& f : res.fits) {
      fits.push_back({{"label", f.label},
                      {"slope", f.slope},
                      {"stderr", f.stderr_slope},
                      {"bound", f.bound},
                      {"tol", f.tol},
                      {"verdict", f.pass ? "bound satisfied" : "violated"}});
    }
    j["fits"] = fits;
    nlohmann::ordered_json bounds = nlohmann::ordered_json::array();
    for (const auto& rec : res.bounds) {
      bounds.push_back({{"label", rec.label},
                        {"early_max", rec.early_max},
                        {"late_max", rec.late_max},
                        {"tail_gain", rec.tail_gain},
                        {"cumulative", rec.cumulative}});
    }
    j["boundedness"] = bounds;
    j["truncation"] = res.truncation;
    j["tower_consistency"] = res.consistency;
    j["all_pass"] = res.all_pass;
    std::ofstream js(out + "/summary.json");
    js << j.dump(2) << '\n';
    res.summary_path = out + "/summary.json";
  }
  return res;
}

std::vector<SweepRow> sweep(const ExperimentConfig& base,
                            const std::vector<SweepAxis>& axes,
                            const std::string& out_dir) {
  std::vector<std::map<std::string, std::string>> combos;
  combos.push_back({});
  for (const auto& axis : axes) {
    if (axis.values.empty()) {
      throw ConfigError("sweep: axis '" + axis.key + "' has no values");
    }
    std::vector<std::map<std::string, std::string>> next;
    for (const auto& c : combos) {
      for (const auto& v : axis.values) {
        auto c2 = c;
        c2[axis.key] = v;
        next.push_back(std::move(c2));
      }
    }
    combos = std::move(next);
  }

  std::vector<std::future<SweepRow>> futures;
  for (std::size_t idx = 0; idx < combos.size(); ++idx) {
    futures.push_back(std::async(std::launch::async, [&, idx]() {
      SweepRow row;
      row.params = combos[idx];
      try {
        auto kv = base.raw;
        for (const auto& [k, v] : combos[idx]) kv[k] = v;
        kv.erase("out_dir");
        ExperimentConfig cfg = config_from_map(kv);
        cfg.name = base.name + "_row" + std::to_string(idx);
        const ExperimentResult r = run_experiment(
            cfg, out_dir + "/row" + std::to_string(idx));
        row.fits = r.fits;
        row.all_pass = r.all_pass;
      } catch (const std::exception& e) {
        row.error = e.what();
      }
      return row;
    }));
  }
  std::vector<SweepRow> rows;
  for (auto& f : futures) rows.push_back(f.get());
  std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    return a.params < b.params;
  });
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows,
                     const std::vector<SweepAxis>& axes,
                     const std::string& path) {
  std::ofstream csv(path);
  for (const auto& axis : axes) csv << axis.key << ',';
  csv << "label,slope,bound,tol,verdict,error\n";
  for (const auto& row : rows) {
    const auto prefix = [&]() {
      std::string s;
      for (const auto& axis : axes) s += row.params.at(axis.key) + ",";
      return s;
    }();
    if (!row.error.empty()) {
      std::string err = row.error;
      std::replace(err.begin(), err.end(), ',', ';');
      std::replace(err.begin(), err.end(), '\n', ' ');
      csv << prefix << ",,,,," << err << '\n';
      continue;
    }
    for (const auto& f : row.fits) {
      csv << prefix << f.label << ',' << fmt17(f.slope) << ','
          << fmt17(f.bound) << ',' << fmt17(f.tol) << ','
          << (f.pass ? "bound satisfied" : "violated") << ",\n";
    }
  }
}

}  // namespace dw
