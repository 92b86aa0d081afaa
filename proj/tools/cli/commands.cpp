#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gsteer/errors.hpp"
#include "gsteer/io.hpp"
#include "gsteer/oracle.hpp"
#include "gsteer/steering.hpp"
#include "gsteer/suites.hpp"
#include "gsteer/symplectic.hpp"
#include "gsteer/twomode.hpp"

namespace gsteer::cli {
namespace {

using io::format_number;

Tolerances tolerances_from(const RunConfig& cfg) {
  Tolerances tol;
  tol.psd = cfg.tol;
  return tol;
}

bool config_ok(const RunConfig& cfg, std::ostream& err) {
  if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
    err << "config error: --tol must be positive (got " << cfg.tol << ")\n";
    return false;
  }
  if (cfg.format != "json" && cfg.format != "csv") {
    err << "config error: --format must be json or csv\n";
    return false;
  }
  return true;
}

std::vector<double> linspace(const GridSpec& g) {
  std::vector<double> v(static_cast<std::size_t>(g.steps));
  for (int i = 0; i < g.steps; ++i) {
    v[static_cast<std::size_t>(i)] = g.min + (g.max - g.min) * static_cast<double>(i) / (g.steps - 1);
  }
  return v;
}

// Runs body(i) for i in [0, n) across workers; callers store results by index
// so output order never depends on scheduling.
template <typename Body>
void parallel_for(std::size_t n, unsigned workers, Body body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) body(i);
    });
  }
  for (auto& t : pool) t.join();
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

nlohmann::json full_report(const CovarianceMatrix& sigma, const BonaFideCheck& physical,
                           const RunConfig& cfg) {
  const Tolerances tol = tolerances_from(cfg);
  const SteeringReport rep = steering_report(sigma, tol);

  nlohmann::json j;
  j["partition"] = {{"n_a", sigma.n_a()}, {"n_b", sigma.n_b()}};
  j["steering"] = io::to_json(rep);
  j["marginal"] = {{"a_to_b", rep.marginal_a_to_b}, {"b_to_a", rep.marginal_b_to_a},
                   {"bona_fide", physical.marginal}};
  j["bona_fide"] = {{"min_eigenvalue", physical.min_eigenvalue}, {"threshold", physical.threshold}};
  j["ppt"] = is_ppt(sigma, tol.psd);
  j["key_rate"] = {
      {"direct", io::to_json(key_rate_bound(rep.g_b_to_a, Reconciliation::Direct), cfg.bits)},
      {"reverse", io::to_json(key_rate_bound(rep.g_a_to_b, Reconciliation::Reverse), cfg.bits)},
  };

  if (sigma.n_a() == 1 && sigma.n_b() == 1) {
    const PurityProfile profile = purity_profile(sigma);
    const StateClassification cls = classify_state(sigma, tol);
    j["purity"] = io::to_json(profile);
    j["classification"] = io::to_json(cls.label);
    j["classification"]["resolved_separable"] = cls.ppt;
    j["entanglement"] = io::to_json(entanglement_renyi2(sigma, tol));
    j["bounds"] = io::to_json(steering_bounds_check(sigma, tol));
    const StandardFormParams sf = to_standard_form(sigma, tol);
    j["standard_form"] = {{"a", sf.a}, {"b", sf.b}, {"c", sf.c}, {"d", sf.d}};
  }
  return j;
}

void flatten(const nlohmann::json& j, const std::string& prefix, std::ostream& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
  } else if (j.is_number_float()) {
    out << prefix << ',' << format_number(j.get<double>()) << '\n';
  } else if (j.is_string()) {
    out << prefix << ',' << j.get<std::string>() << '\n';
  } else {
    out << prefix << ',' << (j.is_null() ? "" : j.dump()) << '\n';
  }
}

}  // namespace

std::optional<GridSpec> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::string part;
  std::istringstream ss(text);
  while (std::getline(ss, part, ':')) parts.push_back(part);
  if (parts.size() != 3) return std::nullopt;
  try {
    std::size_t used = 0;
    GridSpec g;
    g.min = std::stod(parts[0], &used);
    if (used != parts[0].size()) return std::nullopt;
    g.max = std::stod(parts[1], &used);
    if (used != parts[1].size()) return std::nullopt;
    const long steps = std::stol(parts[2], &used);
    if (used != parts[2].size() || steps > 100000) return std::nullopt;
    g.steps = static_cast<int>(steps);
    return g;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int cmd_report(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!config_ok(cfg, err)) return kConfigError;
  if (cfg.input.empty()) {
    err << "config error: report needs --input\n";
    return kConfigError;
  }
  std::optional<CovarianceMatrix> sigma;
  try {
    sigma = io::read_cm_file(cfg.input);
  } catch (const Error& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  }
  const BonaFideCheck physical = check_bona_fide(*sigma, cfg.tol);
  if (!physical.ok) {
    err << "bona fide violation: sigma + i Omega has minimum eigenvalue "
        << format_number(physical.min_eigenvalue) << " < -" << format_number(physical.threshold) << '\n';
    return kUnphysical;
  }
  try {
    const nlohmann::json j = full_report(*sigma, physical, cfg);
    if (cfg.format == "csv") {
      flatten(j, "", out);
    } else {
      out << io::dump_json(j) << '\n';
    }
  } catch (const Error& e) {
    err << "unphysical input: " << e.what() << '\n';
    return kUnphysical;
  }
  return kOk;
}

int cmd_scan_regions(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!config_ok(cfg, err)) return kConfigError;
  const auto grid = parse_grid(cfg.grid.empty() ? "0.005:1:200" : cfg.grid);
  if (!grid || grid->steps < 2 || !(grid->min > 0.0) || !(grid->max <= 1.0) || !(grid->min < grid->max)) {
    err << "config error: scan-regions needs --grid MIN:MAX:STEPS with 0 < MIN < MAX <= 1, STEPS >= 2\n";
    return kConfigError;
  }
  if (!(cfg.eta > 0.0) || !(cfg.eta <= 1.0)) {
    err << "config error: --eta must lie in (0, 1]\n";
    return kConfigError;
  }
  const Tolerances tol = tolerances_from(cfg);
  const std::vector<double> axis = linspace(*grid);
  const std::size_t n = axis.size();
  std::vector<std::string> rows(n * n);

  parallel_for(n * n, cfg.workers, [&](std::size_t idx) {
    const double mu_a = axis[idx / n];
    const double mu_b = axis[idx % n];
    const PurityProfile p = PurityProfile::from_ratio(mu_a, mu_b, cfg.eta);
    const RegionLabel label = classify_two_mode(p, tol.psd);
    std::string row = format_number(mu_a) + ',' + format_number(mu_b) + ',' + format_number(cfg.eta) + ',' +
                      to_string(label.physicality) + ',' +
                      (label.separability ? to_string(*label.separability) : std::string()) + ',' +
                      bool_str(label.steer_a_to_b) + ',' + bool_str(label.steer_b_to_a) + ',';
    if (auto witness = witness_state(p, tol)) {
      const double gab = steering_measure(*witness, Direction::AtoB, tol);
      const double gba = steering_measure(*witness, Direction::BtoA, tol);
      row += format_number(gab) + ',' + format_number(gba) + ',' + format_number(std::max(gab, gba));
    } else {
      row += ",,";
    }
    rows[idx] = std::move(row);
  });

  out << "mu_a,mu_b,eta,physicality,separability,steer_a_to_b,steer_b_to_a,g_a_to_b,g_b_to_a,g_sym\n";
  for (const auto& r : rows) out << r << '\n';
  return kOk;
}

int cmd_scan_bounds(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!config_ok(cfg, err)) return kConfigError;
  if (!(cfg.s_max >= 1.0) || !(cfg.a >= cfg.s_max)) {
    err << "config error: scan-bounds needs --s-max >= 1 and --a >= --s-max\n";
    return kConfigError;
  }
  const std::string default_grid = "1:" + format_number(cfg.s_max) + ":50";
  const auto grid = parse_grid(cfg.grid.empty() ? default_grid : cfg.grid);
  if (!grid || grid->steps < 2 || !(grid->min >= 1.0) || !(grid->max <= cfg.s_max) || !(grid->min < grid->max)) {
    err << "config error: --grid must satisfy 1 <= MIN < MAX <= s-max, STEPS >= 2\n";
    return kConfigError;
  }
  const Tolerances tol = tolerances_from(cfg);

  auto e_floor = [](double e) { return std::max(0.0, std::log(0.5 * std::expm1(e))); };
  auto sandwich_floor = [](double g) {
    const double em1 = std::expm1(g);
    return em1 > 1.0 ? std::log(em1) : 0.0;
  };
  auto emit = [&](const char* family, double s, double a, const CovarianceMatrix& sigma) {
    const double gab = steering_measure(sigma, Direction::AtoB, tol);
    const double gba = steering_measure(sigma, Direction::BtoA, tol);
    const EntanglementEstimate e = entanglement_renyi2(sigma, tol);
    out << family << ',' << format_number(s) << ',' << format_number(a) << ',';
    if (e.value) {
      out << format_number(*e.value) << ',';
    } else {
      out << ',';
    }
    out << format_number(gab) << ',' << format_number(gba) << ',';
    if (e.value) out << format_number(e_floor(*e.value));
    out << ',' << format_number(sandwich_floor(gab)) << ',' << format_number(std::log(std::exp(gab) + 1.0))
        << '\n';
  };

  out << "family,s,a,e,g_a_to_b,g_b_to_a,e_floor,sandwich_floor,sandwich_ceiling\n";
  for (double s : linspace(*grid)) {
    emit("extremal", s, cfg.a, extremal_state(s, cfg.a));
    emit("extremal_swapped", s, cfg.a, extremal_state(s, cfg.a).swapped());
    // Pure state with the same entanglement ln(2s + 1).
    emit("pure", s, 2.0 * s + 1.0, tmsv_state(2.0 * s + 1.0));
  }
  return kOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!config_ok(cfg, err)) return kConfigError;
  if (cfg.trials < 1 || cfg.samples < kMinReidSamples) {
    err << "config error: verify needs --trials >= 1 and --samples >= " << kMinReidSamples << '\n';
    return kConfigError;
  }
  suites::SuiteConfig sc;
  sc.seed = cfg.seed;
  sc.trials = cfg.trials;
  sc.samples = cfg.samples;
  sc.tol = tolerances_from(cfg);
  const auto results = suites::run_all(sc);
  out << io::dump_json(suites::summary_json(results, sc)) << '\n';
  bool ok = true;
  for (const auto& r : results) {
    if (!r.passed) {
      err << "verification failed: " << r.name << " (" << r.violations << " violations, worst "
          << format_number(r.worst) << ")\n";
      ok = false;
    }
  }
  return ok ? kOk : kVerificationFailed;
}

int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (!config_ok(cfg, err)) return kConfigError;
  if (cfg.input.empty() || cfg.samples < 1) {
    err << "config error: sample needs --input and --samples >= 1\n";
    return kConfigError;
  }
  std::optional<CovarianceMatrix> sigma;
  try {
    sigma = io::read_cm_file(cfg.input);
  } catch (const Error& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  }
  if (!is_bona_fide(*sigma, cfg.tol)) {
    err << "bona fide violation: input is not a physical covariance matrix\n";
    return kUnphysical;
  }
  try {
    const SampleBatch batch =
        sample_gaussian(*sigma, static_cast<Eigen::Index>(cfg.samples), cfg.seed, cfg.workers);
    write_batch_csv(batch, out);
  } catch (const Error& e) {
    err << "unphysical input: " << e.what() << '\n';
    return kUnphysical;
  }
  return kOk;
}

int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gaussian EPR steering toolkit", "gsteer"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI/TOML file with default option values")->envname("GSTEER_CONFIG");

  // Options live on the top-level app so a config file can set them with
  // plain "key = value" lines; subcommands fall through to them.
  app.fallthrough();
  RunConfig cfg;
  app.add_option("--input", cfg.input, "CM file (JSON or CSV)");
  app.add_option("--output", cfg.output, "Write output to PATH instead of stdout");
  app.add_option("--format", cfg.format, "Report format (json or csv)");
  app.add_option("--tol", cfg.tol, "PSD / eigenvalue tolerance");
  app.add_option("--seed", cfg.seed, "Random seed");
  app.add_option("--samples", cfg.samples, "Monte Carlo samples (per state for verify)");
  app.add_option("--trials", cfg.trials, "Base number of random trials per suite");
  app.add_option("--eta", cfg.eta, "Fixed ratio eta = mu_A mu_B / mu for scan-regions");
  app.add_option("--grid", cfg.grid, "MIN:MAX:STEPS (purity axes or s range)");
  app.add_option("--s-max", cfg.s_max, "Largest extremal parameter s for scan-bounds");
  app.add_option("--a", cfg.a, "Finite a standing in for a -> infinity");
  app.add_flag("--bits", cfg.bits, "Report key rates in bits");
  app.add_option("--workers", cfg.workers, "Worker threads (0 = all cores)");

  auto* report = app.add_subcommand("report", "Steering report for one covariance matrix");
  auto* regions = app.add_subcommand("scan-regions", "Two-mode classification over a (mu_A, mu_B) grid");
  auto* bounds = app.add_subcommand("scan-bounds", "Steering vs entanglement along extremal and pure families");
  auto* verify = app.add_subcommand("verify", "Run every property suite");
  app.add_subcommand("sample", "Draw phase-space samples from a CM as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  std::ofstream file;
  std::ostream* sink = &out;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      err << "config error: cannot write '" << cfg.output << "'\n";
      return kConfigError;
    }
    sink = &file;
  }

  if (report->parsed()) return cmd_report(cfg, *sink, err);
  if (regions->parsed()) return cmd_scan_regions(cfg, *sink, err);
  if (bounds->parsed()) return cmd_scan_bounds(cfg, *sink, err);
  if (verify->parsed()) return cmd_verify(cfg, *sink, err);
  return cmd_sample(cfg, *sink, err);
}

}  // namespace gsteer::cli
