#include "hamest/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "hamest/format.hpp"
#include "hamest/policy.hpp"

namespace hamest::cli {

namespace {

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(trim(item));
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

double parse_number(const std::string& token, const char* what) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (token.empty() || ec != std::errc() || ptr != last || !std::isfinite(value))
    throw std::invalid_argument(std::string("cannot parse ") + what + " '" + token + "'");
  return value;
}

bool is_simulation_strategy(const std::string& name) {
  return name == "greedy-negvar" || name == "greedy-infogain" || name == "nyquist-bayes" ||
         name == "schedule";
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw std::runtime_error("failed writing to standard output");
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "'");
  file << text;
  if (!file.flush()) throw std::runtime_error("failed writing output file '" + path + "'");
}

}  // namespace

std::pair<double, double> RunConfig::support_bounds() const {
  const auto parts = split(support, ',');
  if (parts.size() != 2) throw std::invalid_argument("support must be 'a,b'");
  return {parse_number(parts[0], "support bound"), parse_number(parts[1], "support bound")};
}

LikelihoodModel RunConfig::make_model() const {
  if (model == "ideal") return LikelihoodModel::ideal();
  if (model == "noisy") return LikelihoodModel::noisy(visibility, t2);
  throw std::invalid_argument("unknown model '" + model + "' (expected ideal|noisy)");
}

Distribution RunConfig::make_prior() const {
  const auto [a, b] = support_bounds();
  return Distribution::uniform(prior_points, a, b);
}

DesignDomain RunConfig::make_domain() const {
  DesignDomain d;
  d.t_min = 0.0;
  d.t_max = t_max.value_or(n_max * std::numbers::pi);
  d.n_grid = n_grid;
  d.validate();
  return d;
}

void RunConfig::validate() const {
  make_model();
  make_prior();
  if (n_max < 1) throw std::invalid_argument("nmax must be >= 1");
  make_domain();
  parse_utility(utility);
  for (const auto& s : strategies)
    if (s != "schedule") parse_strategy(s);
  parse_history(history);
  if (!times.empty()) parse_times(times);
}

History parse_history(const std::string& text) {
  History out;
  if (trim(text).empty()) return out;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("history entry '" + item + "' is not of the form t:d");
    const double t = parse_number(trim(item.substr(0, colon)), "history time");
    if (t < 0.0) throw std::invalid_argument("history time must be non-negative");
    const std::string d = trim(item.substr(colon + 1));
    if (d != "0" && d != "1")
      throw std::invalid_argument("history outcome '" + d + "' must be 0 or 1");
    out.emplace_back(t, d == "0" ? Outcome::Zero : Outcome::One);
  }
  return out;
}

std::vector<double> parse_times(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split(text, ',')) {
    const double t = parse_number(item, "time");
    if (t < 0.0) throw std::invalid_argument("times must be non-negative");
    out.push_back(t);
  }
  if (out.empty()) throw std::invalid_argument("times list is empty");
  return out;
}

bool write_risk_curve(const RunConfig& config, std::ostream& out, std::ostream& err) {
  config.validate();
  const auto model = config.make_model();
  const auto prior = config.make_prior();
  RiskConfig rc;
  rc.domain = config.make_domain();

  out << "strategy,n,bayes_risk,model,notes\n";
  bool ok = true;
  for (const auto& name : config.strategies) {
    const Strategy strategy = parse_strategy(name);
    try {
      const RiskCurve curve = risk_curve(strategy, prior, model, config.n_max, rc);
      for (const auto& e : curve.entries)
        out << curve.strategy << ',' << e.n_measurements << ',' << format_double(e.bayes_risk)
            << ',' << curve.model_descriptor << ',' << curve.config_descriptor << '\n';
    } catch (const ResourceError& ex) {
      ok = false;
      err << "risk-curve: strategy " << name << ": " << ex.what() << '\n';
      std::string msg = ex.what();
      for (char& c : msg)
        if (c == ',' || c == '\n') c = ';';
      out << name << ",,," << model.descriptor() << ",error: " << msg << '\n';
    }
  }
  return ok;
}

void write_utility_scan(const RunConfig& config, std::ostream& out) {
  config.validate();
  const auto model = config.make_model();
  const auto utility = parse_utility(config.utility);
  Distribution dist = config.make_prior();
  for (const auto& [t, d] : parse_history(config.history)) dist = bayes_update(dist, model, t, d);

  out << "t,expected_utility\n";
  for (double t : config.make_domain().coarse_grid())
    out << format_double(t) << ',' << format_double(expected_utility(dist, model, t, utility))
        << '\n';
}

void write_simulation(const RunConfig& config, std::ostream& out) {
  config.validate();
  if (config.strategies.size() != 1)
    throw std::invalid_argument("simulate takes exactly one strategy");
  const std::string& name = config.strategies.front();
  if (!is_simulation_strategy(name))
    throw std::invalid_argument("strategy '" + name + "' cannot be simulated");

  const auto model = config.make_model();
  const auto prior = config.make_prior();
  TrajectoryRecord rec;
  if (name == "greedy-negvar" || name == "greedy-infogain") {
    const auto utility =
        name == "greedy-negvar" ? UtilityKind::NegVariance : UtilityKind::InfoGain;
    rec = run_adaptive(config.true_omega, model, prior, config.n_max, utility,
                       config.make_domain(), config.seed);
  } else if (name == "nyquist-bayes") {
    rec = run_schedule(config.true_omega, model, prior,
                       nyquist_schedule(config.n_max, prior.support_hi()), config.seed);
  } else {
    if (config.times.empty()) throw std::invalid_argument("schedule strategy requires --times");
    rec = run_schedule(config.true_omega, model, prior, Schedule{parse_times(config.times)},
                       config.seed);
  }

  out << "step,t,outcome,posterior_mean,posterior_variance\n";
  for (std::size_t k = 0; k < rec.steps.size(); ++k) {
    const auto& s = rec.steps[k];
    out << (k + 1) << ',' << format_double(s.time) << ',' << to_int(s.outcome) << ','
        << format_double(s.posterior_mean) << ',' << format_double(s.posterior_variance) << '\n';
  }
}

int run(int argc, const char* const* argv, std::ostream& err) {
  CLI::App app{"Adaptive Bayesian experimental design for qubit frequency estimation"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  RunConfig cfg;
  double t_max = 0.0;
  std::string strategies;
  app.add_option("--model", cfg.model, "ideal|noisy")->check(CLI::IsMember({"ideal", "noisy"}));
  app.add_option("--visibility", cfg.visibility, "Noisy-model contrast in [0,1]");
  app.add_option("--t2", cfg.t2, "Noisy-model decay time (> 0)");
  app.add_option("--prior-points", cfg.prior_points, "Grid points of the uniform prior");
  app.add_option("--support", cfg.support, "Prior support as 'a,b'");
  auto* tmax_opt = app.add_option("--tmax", t_max, "Largest design time (default nmax*pi)");
  app.add_option("--ngrid", cfg.n_grid, "Coarse design grid size");
  app.add_option("--nmax", cfg.n_max, "Number of measurements");
  app.add_option("--strategies", strategies,
                 "Comma-separated: greedy-negvar,greedy-infogain,nyquist-bayes,global "
                 "(simulate also accepts schedule)");
  app.add_option("--utility", cfg.utility, "infogain|negvar");
  app.add_option("--history", cfg.history, "Prior data as 't:d,t:d,...'");
  app.add_option("--times", cfg.times, "Fixed times 't,t,...' for the schedule strategy");
  app.add_option("--true-omega", cfg.true_omega, "Simulated true frequency");
  app.add_option("--seed", cfg.seed, "Simulation seed");
  app.add_option("--out", cfg.output_path, "Output CSV path ('-' for stdout)");

  auto* risk_cmd = app.add_subcommand("risk-curve", "Exact Bayes risk versus n per strategy");
  auto* scan_cmd = app.add_subcommand("utility-scan", "Expected utility over the design grid");
  auto* sim_cmd = app.add_subcommand("simulate", "Simulate one seeded trajectory");
  for (auto* sub : {risk_cmd, scan_cmd, sim_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return e.get_exit_code() != 0 ? e.get_exit_code() : 2;
  }

  try {
    if (tmax_opt->count() > 0) cfg.t_max = t_max;
    if (!strategies.empty())
      cfg.strategies = split(strategies, ',');
    else if (sim_cmd->parsed())
      cfg.strategies = {"greedy-negvar"};
    cfg.validate();

    std::ostringstream out;
    int status = 0;
    if (risk_cmd->parsed()) {
      if (!write_risk_curve(cfg, out, err)) status = 3;
    } else if (scan_cmd->parsed()) {
      write_utility_scan(cfg, out);
    } else {
      write_simulation(cfg, out);
    }
    emit(cfg.output_path, out.str());
    return status;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace hamest::cli
