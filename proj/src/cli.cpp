#include "coarma/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "coarma/arma.hpp"
#include "coarma/csv.hpp"
#include "coarma/dependence.hpp"
#include "coarma/errors.hpp"
#include "coarma/estimation.hpp"
#include "coarma/evaluation.hpp"
#include "coarma/garch.hpp"
#include "coarma/gaussian_equiv.hpp"
#include "coarma/model_string.hpp"
#include "coarma/rng.hpp"
#include "coarma/special.hpp"
#include "coarma/stats.hpp"
#include "coarma/version.hpp"

namespace coarma {

namespace {

NumericOptions env_numeric_options() {
  NumericOptions opts;
  if (const char* eps = std::getenv("COARMA_CLAMP_EPS")) opts.clamp_eps = std::atof(eps);
  return opts;
}

QuadOptions env_quad_options() {
  QuadOptions opts;
  if (const char* nodes = std::getenv("COARMA_GL_NODES")) {
    const int n = std::atoi(nodes);
    if (n >= 16) {
      opts.nodes_dim1 = n;
      opts.nodes_dim2 = n;
    }
  }
  return opts;
}

std::vector<std::string> header_comments(const std::string& command, std::uint64_t seed) {
  return {std::string("coarma ") + kVersion, "command=" + command,
          "seed=" + std::to_string(seed)};
}

std::vector<double> parse_grid(const std::string& text) {
  // "lo:hi:count"
  double lo, hi;
  int count;
  if (std::sscanf(text.c_str(), "%lf:%lf:%d", &lo, &hi, &count) != 3 || count < 1)
    throw parse_error("grid must be 'lo:hi:count'", 0);
  std::vector<double> grid;
  for (int i = 0; i < count; ++i)
    grid.push_back(count == 1 ? lo : lo + (hi - lo) * i / (count - 1.0));
  return grid;
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string piece;
  while (std::getline(ss, piece, ',')) {
    if (piece.empty()) continue;
    out.push_back(std::stod(piece));
  }
  return out;
}

// Minimal reader for the models file: collects the quoted strings of
// the `models = [ ... ]` array.
std::vector<std::string> read_models_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  const auto key = text.find("models");
  if (key == std::string::npos) throw parse_error("models file: missing 'models = [...]'", 0);
  const auto open = text.find('[', key);
  const auto close = text.find(']', open);
  if (open == std::string::npos || close == std::string::npos)
    throw parse_error("models file: missing '[...]'", key);
  std::vector<std::string> models;
  std::size_t pos = open;
  while (true) {
    const auto q1 = text.find('"', pos);
    if (q1 == std::string::npos || q1 > close) break;
    const auto q2 = text.find('"', q1 + 1);
    if (q2 == std::string::npos || q2 > close) break;
    models.push_back(text.substr(q1 + 1, q2 - q1 - 1));
    pos = q2 + 1;
  }
  if (models.empty()) throw parse_error("models file: empty model list", open);
  return models;
}

double mixture_cdf(double x) {
  return 0.6 * special::norm_cdf((x + 1.0) / 0.5) + 0.4 * special::norm_cdf((x - 1.5) / 0.8);
}

double mixture_quantile(double p) {
  double lo = -8.0, hi = 9.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mixture_cdf(mid) < p) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// ---- subcommand bodies -----------------------------------------------------

int cmd_simulate(const std::string& model_text, const std::string& preset, std::size_t n,
                 std::uint64_t seed, int burn_in, const std::string& out) {
  NumericOptions opts = env_numeric_options();
  opts.burn_in = burn_in;
  std::vector<double> values;
  std::string label = "u";
  if (!preset.empty()) {
    label = "value";
    if (preset == "armalike") {
      const ParsedModel m = parse_model_string("n-CoARMA(2,1)-(n:0.5,n:0.2)-(n:0.3)");
      const auto u = simulate(m.spec, n, seed, opts);
      for (double v : u) values.push_back(special::norm_quantile(v));
    } else if (preset == "mixture") {
      const ParsedModel m = parse_model_string("n-CoARMA(1,1)-(n:0.6)-(n:0.3)");
      const auto u = simulate(m.spec, n, seed, opts);
      for (double v : u) values.push_back(mixture_quantile(v));
    } else {
      throw parse_error("unknown preset '" + preset + "'", 0);
    }
  } else {
    const ParsedModel parsed = parse_model_string(model_text);
    if (parsed.has_free())
      throw parse_error("simulate needs fully specified parameters", 0);
    values = simulate(parsed.spec, n, seed, opts);
  }
  csv::Table table;
  table.header_comments = header_comments("simulate", seed);
  table.columns = {label};
  for (double v : values) table.rows.push_back({v});
  csv::write_table(out, table);
  std::cout << "wrote " << values.size() << " values to " << out << "\n";
  return 0;
}

int cmd_fit(const std::string& model_text, const std::string& data_path,
            std::uint64_t seed, int restarts, bool relax_mag, const std::string& out) {
  const ParsedModel parsed = parse_model_string(model_text);
  const auto raw = csv::read_column(data_path);
  const MarginModel margin = MarginModel::fit(parsed.margin, raw);
  const auto pit = stats::pobs(raw);
  FitConfig cfg = make_fit_config(parsed.spec, parsed.free_params, seed, relax_mag);
  cfg.restarts = restarts;
  cfg.numeric = env_numeric_options();
  const FitResult res = fit(cfg, pit);

  ParsedModel fitted = parsed;
  fitted.spec = res.spec;
  fitted.free_params.clear();
  std::cout << "model:      " << format_model_string(fitted) << "\n";
  std::cout << "nll:        " << csv::format_value(res.nll) << "\n";
  std::cout << "converged:  " << (res.converged ? "yes" : "no") << "\n";
  std::cout << "underflows: " << res.underflow_count << "\n";
  std::cout << "nll evals:  " << res.eval_count << "\n";
  for (std::size_t i = 0; i < res.estimates.size(); ++i)
    std::cout << "param[" << i << "]:   " << csv::format_value(res.estimates[i]) << "\n";

  if (!out.empty()) {
    nlohmann::json j;
    j["version"] = kVersion;
    j["seed"] = seed;
    j["model"] = format_model_string(fitted);
    j["template"] = model_text;
    j["nll"] = res.nll;
    j["converged"] = res.converged;
    j["underflow_count"] = res.underflow_count;
    j["eval_count"] = res.eval_count;
    j["estimates"] = res.estimates;
    std::ofstream os(out);
    if (!os) throw io_error("cannot write '" + out + "'");
    os << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_forecast(const std::string& model_text, const std::string& data_path,
                 const std::string& new_path, std::uint64_t seed, const std::string& out) {
  const ParsedModel parsed = parse_model_string(model_text);
  const auto train = csv::read_column(data_path);
  const auto fresh = csv::read_column(new_path);
  const MarginModel margin = MarginModel::fit(parsed.margin, train);
  CoarmaSpec spec = parsed.spec;
  if (parsed.has_free()) {
    FitConfig cfg = make_fit_config(parsed.spec, parsed.free_params, seed);
    cfg.numeric = env_numeric_options();
    spec = fit(cfg, stats::pobs(train)).spec;
  }
  const ForecastGrid grid =
      forecast_percentiles(spec, margin, train, fresh, env_numeric_options());
  csv::Table table;
  table.header_comments = header_comments("forecast", seed);
  table.columns = {"t"};
  for (int m = 1; m <= 99; ++m) {
    char buf[8];
    std::snprintf(buf, sizeof(buf), "p%02d", m);
    table.columns.push_back(buf);
  }
  for (std::size_t k = 0; k < grid.values.size(); ++k) {
    std::vector<double> row{static_cast<double>(k)};
    row.insert(row.end(), grid.values[k].begin(), grid.values[k].end());
    table.rows.push_back(std::move(row));
  }
  csv::write_table(out, table);
  std::cout << "wrote " << grid.values.size() << " forecast rows to " << out
            << " (clamped " << grid.clamp_count << " new PIT values)\n";
  return 0;
}

int cmd_evaluate(const std::string& models_path, const std::string& data_path,
                 double train_frac, double val_frac, std::uint64_t seed,
                 const std::string& out) {
  const auto models = read_models_file(models_path);
  const auto series = csv::read_column(data_path);
  const BacktestResult res = backtest(models, series, train_frac, val_frac, seed);

  std::printf("%-42s %-7s %8s %9s %8s %8s %8s %8s sel\n", "model", "class", "CRPS",
              "NLL", "PBS05", "PBS95", "RMSE", "MAE");
  const auto print_row = [](const BacktestRow& row, const MetricsReport& m,
                            const char* window) {
    std::printf("%-42s %-7s %8.4f %9.2f %8.4f %8.4f %8.4f %8.4f %s [%s]\n",
                row.name.c_str(), row.model_class.c_str(), m.crps, m.nll, m.pbs05,
                m.pbs95, m.rmse, m.mae, row.selected ? "*" : " ", window);
  };
  for (const auto& row : res.rows) print_row(row, row.validation, "val");
  std::printf("--- test window (validation-selected models first) ---\n");
  for (const auto& row : res.rows)
    if (row.selected) print_row(row, row.test, "test");
  for (const auto& row : res.rows)
    if (!row.selected) print_row(row, row.test, "test");

  if (!out.empty()) {
    csv::Table table;
    table.header_comments = header_comments("evaluate", seed);
    table.header_comments.push_back(
        "split: train=" + std::to_string(res.n_train) + " val=" + std::to_string(res.n_val) +
        " test=" + std::to_string(res.n_test));
    table.columns = {"model_index", "window",  "crps", "nll",  "pbs05",
                     "pbs95",       "rmse",    "mae",  "n_eval", "selected"};
    for (std::size_t i = 0; i < res.rows.size(); ++i) {
      const auto& row = res.rows[i];
      table.header_comments.push_back("model " + std::to_string(i) + ": " + row.name);
      for (int w = 0; w < 2; ++w) {
        const MetricsReport& m = w == 0 ? row.validation : row.test;
        table.rows.push_back({static_cast<double>(i), static_cast<double>(w), m.crps,
                              m.nll, m.pbs05, m.pbs95, m.rmse, m.mae,
                              static_cast<double>(m.n_eval), row.selected ? 1.0 : 0.0});
      }
    }
    csv::write_table(out, table);
  }
  return 0;
}

int cmd_depmeasure(const std::string& family_code, const std::string& grid_text, double u,
                   std::size_t sim_n, int reps, std::uint64_t seed, bool coarma11,
                   const std::string& mag_token, const std::string& out) {
  const QuadOptions qopts = env_quad_options();
  const auto grid = parse_grid(grid_text);
  std::vector<DepScanRow> rows;
  if (coarma11) {
    const CopulaSpec mag_pair = CopulaSpec::from_token(mag_token);
    CopulaSpec ar_template = CopulaSpec::from_token(family_code + ":" +
                                                    csv::format_value(grid.front()));
    rows = scan_coarma11(ar_template, grid, mag_pair, sim_n, reps, seed,
                         /*with_quadrature=*/true, qopts);
  } else {
    const Family family = CopulaSpec::from_token(family_code + ":" +
                                                 csv::format_value(grid.front()))
                              .family;
    rows = scan_mag1(family, grid, u, sim_n, reps, seed, qopts);
  }
  csv::Table table;
  table.header_comments = header_comments("depmeasure", seed);
  table.columns = {"parameter", "rho_quad", "rho_sim",  "rho_sim_se",
                   "tdc_l",     "tdc_u",    "order_l",  "order_u"};
  for (const auto& r : rows)
    table.rows.push_back({r.parameter, r.rho_quad, r.rho_sim, r.rho_sim_se, r.tdc_lower,
                          r.tdc_upper, r.order_lower, r.order_upper});
  csv::write_table(out, table);
  std::cout << "wrote " << rows.size() << " rows to " << out << "\n";
  return 0;
}

int cmd_equiv(const std::string& alphas_text, const std::string& betas_text, bool verify,
              std::size_t n, std::uint64_t seed, const std::string& out) {
  const auto alphas = parse_number_list(alphas_text);
  const auto betas = parse_number_list(betas_text);
  const ArmaCoeffs coef = coarma_psi(alphas, betas);
  std::cout << "phi: ";
  for (double v : coef.phi) std::cout << csv::format_value(v) << " ";
  std::cout << "\npsi: ";
  for (double v : coef.psi) std::cout << csv::format_value(v) << " ";
  std::cout << "\ninnovation sd: " << csv::format_value(coef.innovation_sd) << "\n";
  const auto gamma = arma_autocov(coef.phi, coef.psi, coef.innovation_sd, 0);
  std::cout << "implied variance: " << csv::format_value(gamma[0]) << "\n";

  csv::Table table;
  table.header_comments = header_comments("equiv", seed);
  table.columns = {"kind", "lag", "value"};
  for (std::size_t i = 0; i < coef.phi.size(); ++i)
    table.rows.push_back({0.0, static_cast<double>(i + 1), coef.phi[i]});
  for (std::size_t i = 0; i < coef.psi.size(); ++i)
    table.rows.push_back({1.0, static_cast<double>(i + 1), coef.psi[i]});
  table.rows.push_back({2.0, 0.0, coef.innovation_sd});

  if (verify) {
    const EquivalenceReport rep = verify_equivalence(alphas, betas, n, seed);
    std::cout << "simulation check: max |z| = " << csv::format_value(rep.max_abs_z)
              << ", variance = " << csv::format_value(rep.sample_variance)
              << (rep.pass ? "  [pass]" : "  [FAIL]") << "\n";
    for (std::size_t i = 0; i < rep.lag.size(); ++i)
      table.rows.push_back({3.0, rep.lag[i], rep.z_score[i]});
    if (!out.empty()) {
      csv::Table t2 = table;
      csv::write_table(out, t2);
    }
    return rep.pass ? 0 : 3;
  }
  if (!out.empty()) csv::write_table(out, table);
  return 0;
}

int cmd_garch_copula(double alpha0, double alpha1, double beta1, std::size_t nsim,
                     std::uint64_t seed, const std::string& out) {
  const GarchParams params{alpha0, alpha1, beta1};
  if (!params.is_stationary()) throw domain_error("garch parameters are non-stationary");
  const TabulatedCdf psi = build_psi(params, nsim, seed);
  csv::Table table;
  table.header_comments = header_comments("garch-copula", seed);
  table.columns = {"u", "v", "ar_ccdf", "mag_ccdf"};
  if (params.arch_mode()) {
    for (int i = 1; i <= 19; ++i)
      for (int j = 1; j <= 19; ++j) {
        const double u = i / 20.0, v = j / 20.0;
        const double c = arch_ccdf(params, psi, u, v);
        table.rows.push_back({u, v, c, c});
      }
  } else {
    const TabulatedCdf gamma = build_gamma(params, nsim, seed + 1);
    const GarchCopulaPair pair = garch_copula_pair(params, psi, gamma);
    for (int i = 1; i <= 19; ++i)
      for (int j = 1; j <= 19; ++j) {
        const double u = i / 20.0, v = j / 20.0;
        table.rows.push_back({u, v, pair.ar_ccdf(u, v), pair.mag_ccdf(u, v)});
      }
  }
  csv::write_table(out, table);
  std::cout << "wrote conditional CDF grid to " << out << "\n";
  return 0;
}

int cmd_nll_scan(const std::string& model_text, const std::string& data_path,
                 const std::string& grid_text, std::uint64_t seed, const std::string& out) {
  const ParsedModel parsed = parse_model_string(model_text);
  if (parsed.free_params.size() != 1)
    throw parse_error("nll-scan needs exactly one '?' parameter", 0);
  const auto raw = csv::read_column(data_path);
  const auto pit = stats::pobs(raw);
  const auto grid = parse_grid(grid_text);
  const auto points =
      nll_scan(parsed.spec, parsed.free_params[0], pit, grid, env_numeric_options());
  csv::Table table;
  table.header_comments = header_comments("nll-scan", seed);
  table.columns = {"parameter", "nll"};
  double best_param = points.front().parameter, best_nll = points.front().nll;
  for (const auto& pt : points) {
    table.rows.push_back({pt.parameter, pt.nll});
    if (pt.nll < best_nll) {
      best_nll = pt.nll;
      best_param = pt.parameter;
    }
  }
  csv::write_table(out, table);
  std::cout << "argmin " << csv::format_value(best_param) << " (nll "
            << csv::format_value(best_nll) << "), wrote " << points.size() << " rows to "
            << out << "\n";
  return 0;
}

int cmd_residuals(const std::string& model_text, const std::string& data_path,
                  std::uint64_t seed, const std::string& out) {
  const ParsedModel parsed = parse_model_string(model_text);
  if (parsed.has_free()) throw parse_error("residuals needs fixed parameters", 0);
  const auto raw = csv::read_column(data_path);
  // Data already on the unit scale passes through; otherwise PIT it.
  const bool unit_scale =
      std::all_of(raw.begin(), raw.end(), [](double v) { return v > 0.0 && v < 1.0; });
  const std::vector<double> pit = unit_scale ? raw : stats::pobs(raw);
  const NumericOptions opts = env_numeric_options();
  const ResidualReport rep = residual_diagnostics(parsed.spec, pit, opts);
  std::cout << "lag1 autocorr:    " << csv::format_value(rep.lag1_autocorr) << "\n"
            << "var lag1 diff:    " << csv::format_value(rep.var_lag1_diff) << "\n"
            << "sign flip rate:   " << csv::format_value(rep.sign_flip_rate) << "\n"
            << "KS stat/p:        " << csv::format_value(rep.ks_stat) << " / "
            << csv::format_value(rep.ks_pvalue) << "\n"
            << "mean drift:       " << csv::format_value(rep.mean_drift) << "\n"
            << "boundary frac:    " << csv::format_value(rep.boundary_fraction) << "\n"
            << "oscillation flag: " << (rep.oscillation_flag ? "RAISED" : "clear") << "\n";
  if (!out.empty()) {
    const FilterResult f = filter(parsed.spec, pit, opts);
    csv::Table table;
    table.header_comments = header_comments("residuals", seed);
    table.columns = {"t", "eps", "w"};
    for (std::size_t t = 0; t < f.eps.size(); ++t)
      table.rows.push_back({static_cast<double>(t), f.eps[t], f.w[t]});
    csv::write_table(out, table);
  }
  return rep.oscillation_flag ? 0 : 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
  CLI::App app{"copula-based CoARMA(p,q) time series toolkit"};
  app.require_subcommand(1);

  std::string model, data_path, new_path, out_path = "out.csv", preset, models_path;
  std::string grid_text = "0.05:0.9:18", family_code = "n", mag_token = "gaussian:0.25";
  std::string alphas_text, betas_text;
  std::uint64_t seed = 0;
  std::size_t n = 1000, nsim = 1000000, sim_n = 10000;
  int burn_in = 500, restarts = 5, reps = 10;
  double train_frac = 0.7, val_frac = 0.15, u_level = 0.05;
  double alpha0 = 0.1, alpha1 = 0.1, beta1 = 0.8;
  bool relax_mag = false, verify = false, coarma11 = false;

  auto* sim = app.add_subcommand("simulate", "simulate a model to CSV");
  sim->add_option("--model", model);
  sim->add_option("--preset", preset)->description("armalike | mixture");
  sim->add_option("--n", n)->required();
  sim->add_option("--seed", seed)->required();
  sim->add_option("--burn-in", burn_in);
  sim->add_option("--out", out_path);

  auto* fit_cmd = app.add_subcommand("fit", "two-step maximum likelihood fit");
  fit_cmd->add_option("--model", model)->required();
  fit_cmd->add_option("--data", data_path)->required();
  fit_cmd->add_option("--seed", seed)->required();
  fit_cmd->add_option("--restarts", restarts);
  fit_cmd->add_flag("--relax-mag-bounds", relax_mag);
  fit_cmd->add_option("--out", out_path)->default_val("");

  auto* fc = app.add_subcommand("forecast", "one-step-ahead percentile forecasts");
  fc->add_option("--model", model)->required();
  fc->add_option("--data", data_path)->required();
  fc->add_option("--new", new_path)->required();
  fc->add_option("--seed", seed)->required();
  fc->add_option("--out", out_path);

  auto* ev = app.add_subcommand("evaluate", "backtest a list of models");
  ev->add_option("--models", models_path)->required();
  ev->add_option("--data", data_path)->required();
  ev->add_option("--train", train_frac);
  ev->add_option("--val", val_frac);
  ev->add_option("--seed", seed)->required();
  ev->add_option("--out", out_path)->default_val("");

  auto* dep = app.add_subcommand("depmeasure", "dependence-measure scans");
  dep->add_option("--family", family_code);
  dep->add_option("--grid", grid_text);
  dep->add_option("--u", u_level);
  dep->add_option("--sim-n", sim_n);
  dep->add_option("--reps", reps);
  dep->add_option("--seed", seed)->required();
  dep->add_flag("--coarma11", coarma11);
  dep->add_option("--mag", mag_token);
  dep->add_option("--out", out_path);

  auto* eq = app.add_subcommand("equiv", "Gaussian-ARMA coefficient maps");
  eq->add_option("--alphas", alphas_text);
  eq->add_option("--betas", betas_text);
  eq->add_flag("--verify", verify);
  eq->add_option("--n", n);
  eq->add_option("--seed", seed);
  eq->add_option("--out", out_path)->default_val("");

  auto* gc = app.add_subcommand("garch-copula", "(G)ARCH-mimicking copula grids");
  gc->add_option("--alpha0", alpha0)->required();
  gc->add_option("--alpha1", alpha1)->required();
  gc->add_option("--beta1", beta1);
  gc->add_option("--nsim", nsim);
  gc->add_option("--seed", seed)->required();
  gc->add_option("--out", out_path);

  auto* scan = app.add_subcommand("nll-scan", "1-D likelihood profile");
  scan->add_option("--model", model)->required();
  scan->add_option("--data", data_path)->required();
  scan->add_option("--grid", grid_text)->required();
  scan->add_option("--seed", seed);
  scan->add_option("--out", out_path);

  auto* res = app.add_subcommand("residuals", "recovered-innovation diagnostics");
  res->add_option("--model", model)->required();
  res->add_option("--data", data_path)->required();
  res->add_option("--seed", seed);
  res->add_option("--out", out_path)->default_val("");

  std::vector<std::string> argv_rev(args.rbegin(), args.rend());
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate(model, preset, n, seed, burn_in, out_path);
    if (fit_cmd->parsed()) return cmd_fit(model, data_path, seed, restarts, relax_mag, out_path);
    if (fc->parsed()) return cmd_forecast(model, data_path, new_path, seed, out_path);
    if (ev->parsed())
      return cmd_evaluate(models_path, data_path, train_frac, val_frac, seed, out_path);
    if (dep->parsed())
      return cmd_depmeasure(family_code, grid_text, u_level, sim_n, reps, seed, coarma11,
                            mag_token, out_path);
    if (eq->parsed()) return cmd_equiv(alphas_text, betas_text, verify, n, seed, out_path);
    if (gc->parsed()) return cmd_garch_copula(alpha0, alpha1, beta1, nsim, seed, out_path);
    if (scan->parsed()) return cmd_nll_scan(model, data_path, grid_text, seed, out_path);
    if (res->parsed()) return cmd_residuals(model, data_path, seed, out_path);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const domain_error& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return 2;
  } catch (const shape_error& e) {
    std::cerr << "shape error: " << e.what() << "\n";
    return 2;
  } catch (const io_error& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args);
}

}  // namespace coarma
