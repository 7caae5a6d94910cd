#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hbtfisher/coherent.hpp"
#include "hbtfisher/crb.hpp"
#include "hbtfisher/errors.hpp"
#include "hbtfisher/fisher.hpp"
#include "hbtfisher/grid.hpp"
#include "hbtfisher/mc.hpp"
#include "hbtfisher/psf.hpp"
#include "hbtfisher/version.hpp"

namespace {

using nlohmann::json;
using Params = std::map<std::string, std::string>;
using OptionMap = std::map<std::string, CLI::Option*>;

/// Command-line misuse distinct from model errors; exits with code 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

// Every emitted number passes through a 9-significant-digit round trip so
// JSON and CSV agree and golden files stay stable across platforms.
double round9(double v) { return std::strtod(fmt9(v).c_str(), nullptr); }

void parse_into(const std::string& key, const std::string& raw, double& out) {
  std::size_t pos = 0;
  out = std::stod(raw, &pos);
  if (pos != raw.size())
    throw UsageError("config: bad number for " + key + ": " + raw);
}

void parse_into(const std::string& key, const std::string& raw,
                std::int64_t& out) {
  std::size_t pos = 0;
  out = std::stoll(raw, &pos);
  if (pos != raw.size())
    throw UsageError("config: bad integer for " + key + ": " + raw);
}

void parse_into(const std::string& key, const std::string& raw,
                std::uint64_t& out) {
  std::size_t pos = 0;
  out = std::stoull(raw, &pos);
  if (pos != raw.size())
    throw UsageError("config: bad integer for " + key + ": " + raw);
}

void parse_into(const std::string&, const std::string& raw, std::string& out) {
  out = raw;
}

void parse_into(const std::string& key, const std::string& raw, bool& out) {
  if (raw == "true" || raw == "1")
    out = true;
  else if (raw == "false" || raw == "0")
    out = false;
  else
    throw UsageError("config: bad boolean for " + key + ": " + raw);
}

/// Flat key=value file mirroring the long flag names. Merged after parsing,
/// so command-line flags always override file values.
class FlatConfig {
 public:
  FlatConfig() = default;

  static FlatConfig load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot open " + path);
    FlatConfig cfg;
    std::string line;
    int lineno = 0;
    const auto strip = [](const std::string& s) {
      const auto b = s.find_first_not_of(" \t\r");
      const auto e = s.find_last_not_of(" \t\r");
      return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
      ++lineno;
      const std::string t = strip(line);
      if (t.empty() || t[0] == '#') continue;
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw UsageError("config: line " + std::to_string(lineno) +
                         " is not key=value");
      cfg.kv_[strip(t.substr(0, eq))] = strip(t.substr(eq + 1));
    }
    return cfg;
  }

  template <class T>
  void merge(const OptionMap& opts, const std::string& key, T& target) {
    known_.insert(key);
    const auto it = kv_.find(key);
    if (it == kv_.end()) return;
    if (opts.at(key)->count() > 0) return;
    parse_into(key, it->second, target);
  }

  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  void reject_unknown() const {
    for (const auto& [key, value] : kv_)
      if (!known_.count(key)) throw UsageError("config: unknown key " + key);
  }

 private:
  std::map<std::string, std::string> kv_;
  std::set<std::string> known_;
};

void require_given(const OptionMap& opts, const FlatConfig& cfg,
                   const std::string& key) {
  if (opts.at(key)->count() == 0 && !cfg.has(key))
    throw UsageError("missing required option --" + key);
}

void require_member(const std::string& value,
                    std::initializer_list<const char*> allowed,
                    const std::string& key) {
  for (const char* a : allowed)
    if (value == a) return;
  std::string msg = "--" + key + " must be one of:";
  for (const char* a : allowed) msg += std::string(" ") + a;
  throw UsageError(msg + ", got " + value);
}

hbtfisher::EventSet parse_events(const std::string& s) {
  return s == "ab" ? hbtfisher::EventSet::AB : hbtfisher::EventSet::ABG;
}

hbtfisher::Routing parse_routing(const std::string& s) {
  return s == "classical" ? hbtfisher::Routing::ClassicalRouting
                          : hbtfisher::Routing::PaperModel;
}

hbtfisher::PrefactorConvention parse_prefactor(const std::string& s) {
  return s == "derived" ? hbtfisher::PrefactorConvention::DerivedCascade
                        : hbtfisher::PrefactorConvention::PaperVerbatim;
}

json make_manifest(const std::string& subcommand, const Params& params,
                   std::optional<std::uint64_t> seed = std::nullopt) {
  json manifest;
  manifest["subcommand"] = subcommand;
  manifest["tool-version"] = hbtfisher::kVersion;
  manifest["parameters"] = json(params);
  if (seed) manifest["seed"] = *seed;
  return manifest;
}

void print_json(const json& manifest, const json& result) {
  json out;
  out["manifest"] = manifest;
  out["result"] = result;
  std::fputs(out.dump(2).c_str(), stdout);
  std::fputc('\n', stdout);
}

void write_csv(std::ostream& os, const std::string& subcommand,
               const Params& params, const std::string& header,
               const std::vector<std::string>& rows) {
  os << "# subcommand=" << subcommand << '\n';
  for (const auto& [key, value] : params)
    os << "# " << key << '=' << value << '\n';
  os << "# tool-version=" << hbtfisher::kVersion << '\n';
  os << header << '\n';
  for (const auto& row : rows) os << row << '\n';
}

json fisher_result_json(const hbtfisher::FisherResult& fr) {
  json r;
  r["fisher"] = round9(fr.fisher);
  r["crb"] = round9(1.0 / std::sqrt(fr.fisher));
  r["n_eff"] = round9(fr.n_eff);
  r["f_normalized"] = round9(fr.f_normalized);
  r["normalization"] = round9(fr.normalization);
  r["quad_error_estimate"] = round9(fr.quad_error_estimate);
  return r;
}

struct FisherOpts {
  double d = 0.0;
  double eta = 0.0;
  double sigma = 1.0;
  std::int64_t m = 1;
  std::string events = "abg";
  std::string format = "json";
  std::string routing = "paper";
  std::string config;
};

struct SweepOpts {
  std::string axis;
  double min = 0.0;
  double max = 0.0;
  std::int64_t steps = 1;
  double d = 1.0;
  double eta = 1.0;
  double sigma = 1.0;
  std::int64_t m = 1;
  std::string events = "abg";
  std::string format = "csv";
  std::string routing = "paper";
  std::string out;
  std::string config;
};

struct CriticalOpts {
  double eta = 0.0;
  std::string events = "abg";
  double bracket_lo = 0.2;
  double bracket_hi = 3.0;
  double tol = 1e-4;
  double sigma = 1.0;
  std::int64_t m = 1;
  std::string routing = "paper";
  std::string config;
};

struct McOpts {
  std::int64_t trials = 1;
  std::uint64_t seed = 0;
  double x = 0.0;
  double d = 0.0;
  double eta = 1.0;
  double sigma = 1.0;
  bool ml_study = false;
  std::int64_t samples = 0;
  std::string config;
};

struct CoherentOpts {
  std::int64_t n = 0;
  double x = 0.0;
  double d = 0.0;
  double sigma = 1.0;
  double mean_photons = 1.0;
  std::string prefactor = "paper";
  std::int64_t sweep_n = 0;
  std::string format = "json";
  std::string config;
};

int run_fisher(const FisherOpts& o) {
  const hbtfisher::ExperimentConfig cfg{
      hbtfisher::GaussianPsfPair(o.sigma, o.d),
      hbtfisher::DetectionModel{o.eta, parse_events(o.events),
                                parse_routing(o.routing)},
      o.m};
  const hbtfisher::FisherResult fr = hbtfisher::fisher_information(cfg);

  Params params{{"d", fmt9(o.d)},        {"eta", fmt9(o.eta)},
                {"sigma", fmt9(o.sigma)}, {"m", std::to_string(o.m)},
                {"events", o.events},    {"format", o.format},
                {"routing", o.routing}};
  if (o.format == "csv") {
    const std::string header =
        "fisher,crb,n_eff,f_normalized,normalization,quad_error_estimate";
    const std::string row = fmt9(fr.fisher) + "," +
                            fmt9(1.0 / std::sqrt(fr.fisher)) + "," +
                            fmt9(fr.n_eff) + "," + fmt9(fr.f_normalized) +
                            "," + fmt9(fr.normalization) + "," +
                            fmt9(fr.quad_error_estimate);
    write_csv(std::cout, "fisher", params, header, {row});
  } else {
    print_json(make_manifest("fisher", params), fisher_result_json(fr));
  }
  return 0;
}

int run_sweep(const SweepOpts& o) {
  if (o.min > o.max) throw UsageError("sweep: --min must not exceed --max");
  const hbtfisher::SweepAxis axis =
      o.axis == "eta" ? hbtfisher::SweepAxis::Eta : hbtfisher::SweepAxis::D;
  const hbtfisher::ExperimentConfig base{
      hbtfisher::GaussianPsfPair(o.sigma, o.d),
      hbtfisher::DetectionModel{o.eta, parse_events(o.events),
                                parse_routing(o.routing)},
      o.m};
  const std::vector<double> grid = hbtfisher::linspace(o.min, o.max, o.steps);
  const std::vector<hbtfisher::FisherSweepRow> rows =
      hbtfisher::fisher_sweep(base, axis, grid);

  Params params{{"axis", o.axis},
                {"min", fmt9(o.min)},
                {"max", fmt9(o.max)},
                {"steps", std::to_string(o.steps)},
                {"sigma", fmt9(o.sigma)},
                {"m", std::to_string(o.m)},
                {"events", o.events},
                {"format", o.format},
                {"routing", o.routing}};
  if (axis == hbtfisher::SweepAxis::Eta)
    params.emplace("d", fmt9(o.d));
  else
    params.emplace("eta", fmt9(o.eta));

  if (o.format == "json") {
    json result;
    result["rows"] = json::array();
    for (const auto& row : rows) {
      json r = fisher_result_json(row.result);
      r.erase("normalization");
      r.erase("quad_error_estimate");
      r["axis_value"] = round9(row.value);
      r["event_set"] = o.events;
      result["rows"].push_back(std::move(r));
    }
    print_json(make_manifest("sweep", params), result);
    return 0;
  }

  const std::string header =
      "axis_value,fisher,crb,n_eff,f_normalized,event_set";
  std::vector<std::string> lines;
  lines.reserve(rows.size());
  for (const auto& row : rows)
    lines.push_back(fmt9(row.value) + "," + fmt9(row.result.fisher) + "," +
                    fmt9(1.0 / std::sqrt(row.result.fisher)) + "," +
                    fmt9(row.result.n_eff) + "," +
                    fmt9(row.result.f_normalized) + "," + o.events);

  if (o.out.empty()) {
    write_csv(std::cout, "sweep", params, header, lines);
  } else {
    std::ofstream file(o.out);
    if (!file) throw UsageError("sweep: cannot open " + o.out + " for writing");
    write_csv(file, "sweep", params, header, lines);
  }
  return 0;
}

int run_critical(const CriticalOpts& o) {
  const hbtfisher::CriticalDistanceResult res = hbtfisher::critical_distance(
      o.eta, parse_events(o.events), o.sigma, o.m, o.bracket_lo, o.bracket_hi,
      o.tol, parse_routing(o.routing));

  Params params{{"eta", fmt9(o.eta)},
                {"events", o.events},
                {"bracket_lo", fmt9(o.bracket_lo)},
                {"bracket_hi", fmt9(o.bracket_hi)},
                {"tol", fmt9(o.tol)},
                {"sigma", fmt9(o.sigma)},
                {"m", std::to_string(o.m)},
                {"routing", o.routing}};
  json result;
  result["d_star"] = round9(res.d_star);
  result["iterations"] = res.iterations;
  result["residual"] = round9(res.residual);
  result["sign_changes_detected"] = res.sign_changes_detected;
  print_json(make_manifest("critical-distance", params), result);
  return 0;
}

json estimate_json(const hbtfisher::McEstimate& est) {
  json outcomes;
  for (std::size_t e = 0; e < 4; ++e) {
    json entry;
    entry["count"] = est.counts[e];
    entry["freq"] = round9(est.freq[e]);
    entry["ci_halfwidth"] = round9(est.ci_halfwidth[e]);
    outcomes[hbtfisher::kMcOutcomeNames[e]] = std::move(entry);
  }
  json r;
  r["trials"] = est.trials;
  r["outcomes"] = std::move(outcomes);
  return r;
}

int run_mc(const McOpts& o) {
  Params params{{"trials", std::to_string(o.trials)},
                {"x", fmt9(o.x)},
                {"d", fmt9(o.d)},
                {"eta", fmt9(o.eta)},
                {"sigma", fmt9(o.sigma)}};

  if (o.ml_study) {
    if (o.samples < 2)
      throw UsageError("mc: --ml-study requires --samples >= 2");
    params.emplace("ml_study", "true");
    params.emplace("samples", std::to_string(o.samples));
    const hbtfisher::MlStudyResult res = hbtfisher::ml_variance_study(
        o.d, o.eta, o.samples, o.trials, o.seed, o.sigma);
    json result;
    result["variance"] = round9(res.variance);
    result["crb_reference"] = round9(res.crb_reference);
    result["variance_to_crb_ratio"] = round9(res.variance / res.crb_reference);
    result["mean_estimate"] = round9(res.mean_estimate);
    result["samples"] = res.samples;
    result["trials_per_sample"] = res.trials_per_sample;
    json grid = json::array();
    for (const double x : res.grid) grid.push_back(round9(x));
    result["grid"] = std::move(grid);
    print_json(make_manifest("mc", params, o.seed), result);
    return 0;
  }

  const hbtfisher::McConfig cfg{o.trials, o.seed, o.x,
                                hbtfisher::GaussianPsfPair(o.sigma, o.d),
                                o.eta};
  const hbtfisher::ValidationReport report =
      hbtfisher::validate_against_analytic(cfg);

  json validation;
  validation["pass"] = report.pass;
  validation["rows"] = json::array();
  for (const auto& row : report.rows) {
    json r;
    r["event"] = row.event;
    r["count"] = row.count;
    r["freq"] = round9(row.freq);
    r["ci_halfwidth"] = round9(row.ci_halfwidth);
    r["classical"] = round9(row.classical);
    r["paper"] = round9(row.paper);
    r["paper_delta"] = round9(row.paper_delta);
    r["pass"] = row.pass;
    validation["rows"].push_back(std::move(r));
  }
  json result;
  result["estimate"] = estimate_json(report.estimate);
  result["validation"] = std::move(validation);
  print_json(make_manifest("mc", params, o.seed), result);
  return 0;
}

int run_coherent(const CoherentOpts& o, bool n_given) {
  if (!n_given && o.sweep_n < 1)
    throw UsageError("coherent: provide --n or --sweep-n");
  const hbtfisher::GaussianPsfPair pair(o.sigma, o.d);
  const hbtfisher::PrefactorConvention convention =
      parse_prefactor(o.prefactor);

  std::vector<std::int64_t> ns;
  if (o.sweep_n >= 1)
    for (std::int64_t n = 1; n <= o.sweep_n; ++n) ns.push_back(n);
  else
    ns.push_back(o.n);

  Params params{{"x", fmt9(o.x)},
                {"d", fmt9(o.d)},
                {"sigma", fmt9(o.sigma)},
                {"mean_photons", fmt9(o.mean_photons)},
                {"prefactor", o.prefactor},
                {"format", o.format}};
  if (o.sweep_n >= 1)
    params.emplace("sweep_n", std::to_string(o.sweep_n));
  else
    params.emplace("n", std::to_string(o.n));

  struct Row {
    std::int64_t n;
    double ratio;
    double intensity;
    double interior;
  };
  std::vector<Row> rows;
  rows.reserve(ns.size());
  for (const std::int64_t n : ns) {
    const hbtfisher::CoherentConfig cfg{static_cast<int>(n), o.mean_photons,
                                        pair, convention, 1.0};
    rows.push_back({n,
                    hbtfisher::overlap_ratio(o.x, static_cast<int>(n), pair),
                    hbtfisher::nth_order_intensity(o.x, cfg),
                    hbtfisher::interior_weight_sum(static_cast<int>(n))});
  }

  if (o.format == "csv") {
    const std::string header =
        "n,overlap_ratio,nth_order_intensity,interior_weight_sum";
    std::vector<std::string> lines;
    lines.reserve(rows.size());
    for (const auto& row : rows)
      lines.push_back(std::to_string(row.n) + "," + fmt9(row.ratio) + "," +
                      fmt9(row.intensity) + "," + fmt9(row.interior));
    write_csv(std::cout, "coherent", params, header, lines);
    return 0;
  }

  const auto row_json = [](const Row& row) {
    json r;
    r["n"] = row.n;
    r["overlap_ratio"] = round9(row.ratio);
    r["nth_order_intensity"] = round9(row.intensity);
    r["interior_weight_sum"] = round9(row.interior);
    return r;
  };
  json result;
  if (o.sweep_n >= 1) {
    result["rows"] = json::array();
    for (const auto& row : rows) result["rows"].push_back(row_json(row));
  } else {
    result = row_json(rows.front());
  }
  print_json(make_manifest("coherent", params), result);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Detection-event probabilities, Fisher information, and "
               "Cramer-Rao bounds for two-emitter separation estimation"};
  app.require_subcommand(1);
  constexpr const char* kConfigHelp =
      "flat key=value file mirroring the long flags; flags override it";

  FisherOpts fo;
  OptionMap fk;
  auto* fisher_cmd =
      app.add_subcommand("fisher", "Fisher information at one parameter point");
  fk["d"] = fisher_cmd->add_option("--d", fo.d, "emitter separation");
  fk["eta"] =
      fisher_cmd->add_option("--eta", fo.eta, "detector quantum efficiency");
  fk["sigma"] =
      fisher_cmd->add_option("--sigma", fo.sigma, "PSF width")
          ->capture_default_str();
  fk["m"] = fisher_cmd->add_option("--m", fo.m, "scan repetitions")
                ->capture_default_str();
  fk["events"] = fisher_cmd->add_option("--events", fo.events, "event set")
                     ->capture_default_str();
  fk["format"] = fisher_cmd->add_option("--format", fo.format, "output format")
                     ->capture_default_str();
  fk["routing"] =
      fisher_cmd->add_option("--routing", fo.routing, "coincidence weighting")
          ->capture_default_str();
  fisher_cmd->add_option("--config", fo.config, kConfigHelp);

  SweepOpts so;
  OptionMap sk;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "Fisher information along one axis");
  sk["axis"] = sweep_cmd->add_option("--axis", so.axis, "swept axis");
  sk["min"] = sweep_cmd->add_option("--min", so.min, "axis start");
  sk["max"] = sweep_cmd->add_option("--max", so.max, "axis end");
  sk["steps"] =
      sweep_cmd->add_option("--steps", so.steps, "number of grid points");
  sk["d"] = sweep_cmd->add_option("--d", so.d, "fixed separation");
  sk["eta"] =
      sweep_cmd->add_option("--eta", so.eta, "fixed quantum efficiency");
  sk["sigma"] = sweep_cmd->add_option("--sigma", so.sigma, "PSF width")
                    ->capture_default_str();
  sk["m"] = sweep_cmd->add_option("--m", so.m, "scan repetitions")
                ->capture_default_str();
  sk["events"] = sweep_cmd->add_option("--events", so.events, "event set")
                     ->capture_default_str();
  sk["format"] = sweep_cmd->add_option("--format", so.format, "output format")
                     ->capture_default_str();
  sk["routing"] =
      sweep_cmd->add_option("--routing", so.routing, "coincidence weighting")
          ->capture_default_str();
  sk["out"] = sweep_cmd->add_option("--out", so.out, "write CSV to this path");
  sweep_cmd->add_option("--config", so.config, kConfigHelp);

  CriticalOpts co;
  OptionMap ck;
  auto* critical_cmd = app.add_subcommand(
      "critical-distance", "Separation at which the bound equals the signal");
  ck["eta"] = critical_cmd->add_option("--eta", co.eta,
                                       "detector quantum efficiency");
  ck["events"] = critical_cmd->add_option("--events", co.events, "event set")
                     ->capture_default_str();
  ck["bracket-lo"] =
      critical_cmd->add_option("--bracket-lo", co.bracket_lo, "scan start")
          ->capture_default_str();
  ck["bracket-hi"] =
      critical_cmd->add_option("--bracket-hi", co.bracket_hi, "scan end")
          ->capture_default_str();
  ck["tol"] = critical_cmd->add_option("--tol", co.tol, "bisection tolerance")
                  ->capture_default_str();
  ck["sigma"] = critical_cmd->add_option("--sigma", co.sigma, "PSF width")
                    ->capture_default_str();
  ck["m"] = critical_cmd->add_option("--m", co.m, "scan repetitions")
                ->capture_default_str();
  ck["routing"] = critical_cmd
                      ->add_option("--routing", co.routing,
                                   "coincidence weighting")
                      ->capture_default_str();
  critical_cmd->add_option("--config", co.config, kConfigHelp);

  McOpts mo;
  OptionMap mk;
  auto* mc_cmd = app.add_subcommand(
      "mc", "Monte Carlo oracle and analytic-model validation");
  mk["trials"] = mc_cmd->add_option("--trials", mo.trials, "trials per run");
  mk["seed"] =
      mc_cmd->add_option("--seed", mo.seed, "RNG seed")->capture_default_str();
  mk["x"] = mc_cmd->add_option("--x", mo.x, "detector scan position");
  mk["d"] = mc_cmd->add_option("--d", mo.d, "emitter separation");
  mk["eta"] =
      mc_cmd->add_option("--eta", mo.eta, "detector quantum efficiency");
  mk["sigma"] =
      mc_cmd->add_option("--sigma", mo.sigma, "PSF width")
          ->capture_default_str();
  mk["ml-study"] = mc_cmd->add_flag(
      "--ml-study", mo.ml_study,
      "estimator variance study instead of a single run");
  mk["samples"] = mc_cmd->add_option(
      "--samples", mo.samples, "number of estimation samples for --ml-study");
  mc_cmd->add_option("--config", mo.config, kConfigHelp);

  CoherentOpts oo;
  OptionMap ok;
  auto* coherent_cmd = app.add_subcommand(
      "coherent", "n-detector coherent-state overlap diagnostics");
  ok["n"] = coherent_cmd->add_option("--n", oo.n, "number of detectors");
  ok["x"] = coherent_cmd->add_option("--x", oo.x, "detector scan position");
  ok["d"] = coherent_cmd->add_option("--d", oo.d, "emitter separation");
  ok["sigma"] = coherent_cmd->add_option("--sigma", oo.sigma, "PSF width")
                    ->capture_default_str();
  ok["mean-photons"] = coherent_cmd
                           ->add_option("--mean-photons", oo.mean_photons,
                                        "mean photon number of the source")
                           ->capture_default_str();
  ok["prefactor"] = coherent_cmd
                        ->add_option("--prefactor", oo.prefactor,
                                     "cascade prefactor convention")
                        ->capture_default_str();
  ok["sweep-n"] = coherent_cmd->add_option(
      "--sweep-n", oo.sweep_n, "emit one row per n from 1 to this value");
  ok["format"] =
      coherent_cmd->add_option("--format", oo.format, "output format")
          ->capture_default_str();
  coherent_cmd->add_option("--config", oo.config, kConfigHelp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(fisher_cmd)) {
      FlatConfig cfg =
          fo.config.empty() ? FlatConfig() : FlatConfig::load(fo.config);
      cfg.merge(fk, "d", fo.d);
      cfg.merge(fk, "eta", fo.eta);
      cfg.merge(fk, "sigma", fo.sigma);
      cfg.merge(fk, "m", fo.m);
      cfg.merge(fk, "events", fo.events);
      cfg.merge(fk, "format", fo.format);
      cfg.merge(fk, "routing", fo.routing);
      cfg.reject_unknown();
      require_given(fk, cfg, "d");
      require_given(fk, cfg, "eta");
      require_member(fo.events, {"ab", "abg"}, "events");
      require_member(fo.format, {"json", "csv"}, "format");
      require_member(fo.routing, {"paper", "classical"}, "routing");
      return run_fisher(fo);
    }
    if (app.got_subcommand(sweep_cmd)) {
      FlatConfig cfg =
          so.config.empty() ? FlatConfig() : FlatConfig::load(so.config);
      cfg.merge(sk, "axis", so.axis);
      cfg.merge(sk, "min", so.min);
      cfg.merge(sk, "max", so.max);
      cfg.merge(sk, "steps", so.steps);
      cfg.merge(sk, "d", so.d);
      cfg.merge(sk, "eta", so.eta);
      cfg.merge(sk, "sigma", so.sigma);
      cfg.merge(sk, "m", so.m);
      cfg.merge(sk, "events", so.events);
      cfg.merge(sk, "format", so.format);
      cfg.merge(sk, "routing", so.routing);
      cfg.merge(sk, "out", so.out);
      cfg.reject_unknown();
      require_given(sk, cfg, "axis");
      require_given(sk, cfg, "min");
      require_given(sk, cfg, "max");
      require_given(sk, cfg, "steps");
      require_member(so.axis, {"eta", "d"}, "axis");
      if (so.steps < 1) throw UsageError("sweep: --steps must be >= 1");
      if (so.axis == "eta") require_given(sk, cfg, "d");
      if (so.axis == "d") require_given(sk, cfg, "eta");
      require_member(so.events, {"ab", "abg"}, "events");
      require_member(so.format, {"json", "csv"}, "format");
      require_member(so.routing, {"paper", "classical"}, "routing");
      return run_sweep(so);
    }
    if (app.got_subcommand(critical_cmd)) {
      FlatConfig cfg =
          co.config.empty() ? FlatConfig() : FlatConfig::load(co.config);
      cfg.merge(ck, "eta", co.eta);
      cfg.merge(ck, "events", co.events);
      cfg.merge(ck, "bracket-lo", co.bracket_lo);
      cfg.merge(ck, "bracket-hi", co.bracket_hi);
      cfg.merge(ck, "tol", co.tol);
      cfg.merge(ck, "sigma", co.sigma);
      cfg.merge(ck, "m", co.m);
      cfg.merge(ck, "routing", co.routing);
      cfg.reject_unknown();
      require_given(ck, cfg, "eta");
      require_member(co.events, {"ab", "abg"}, "events");
      require_member(co.routing, {"paper", "classical"}, "routing");
      return run_critical(co);
    }
    if (app.got_subcommand(mc_cmd)) {
      FlatConfig cfg =
          mo.config.empty() ? FlatConfig() : FlatConfig::load(mo.config);
      cfg.merge(mk, "trials", mo.trials);
      cfg.merge(mk, "seed", mo.seed);
      cfg.merge(mk, "x", mo.x);
      cfg.merge(mk, "d", mo.d);
      cfg.merge(mk, "eta", mo.eta);
      cfg.merge(mk, "sigma", mo.sigma);
      cfg.merge(mk, "ml-study", mo.ml_study);
      cfg.merge(mk, "samples", mo.samples);
      cfg.reject_unknown();
      require_given(mk, cfg, "trials");
      require_given(mk, cfg, "x");
      require_given(mk, cfg, "d");
      require_given(mk, cfg, "eta");
      if (mo.trials < 1) throw UsageError("mc: --trials must be >= 1");
      return run_mc(mo);
    }
    if (app.got_subcommand(coherent_cmd)) {
      FlatConfig cfg =
          oo.config.empty() ? FlatConfig() : FlatConfig::load(oo.config);
      cfg.merge(ok, "n", oo.n);
      cfg.merge(ok, "x", oo.x);
      cfg.merge(ok, "d", oo.d);
      cfg.merge(ok, "sigma", oo.sigma);
      cfg.merge(ok, "mean-photons", oo.mean_photons);
      cfg.merge(ok, "prefactor", oo.prefactor);
      cfg.merge(ok, "sweep-n", oo.sweep_n);
      cfg.merge(ok, "format", oo.format);
      cfg.reject_unknown();
      require_given(ok, cfg, "x");
      require_given(ok, cfg, "d");
      require_member(oo.prefactor, {"paper", "derived"}, "prefactor");
      require_member(oo.format, {"json", "csv"}, "format");
      const bool n_given = ok.at("n")->count() > 0 || cfg.has("n");
      return run_coherent(oo, n_given);
    }
  } catch (const UsageError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return 2;
  } catch (const hbtfisher::NoSignChangeError& e) {
    std::fprintf(stderr, "%s: %s\n", e.name().c_str(), e.what());
    std::fprintf(stderr, "# scanned d, g(d) = crb(d) - d\n");
    for (const auto& [d, g] : e.scan())
      std::fprintf(stderr, "%s %s\n", fmt9(d).c_str(), fmt9(g).c_str());
    return 4;
  } catch (const hbtfisher::ModelError& e) {
    std::fprintf(stderr, "%s: %s\n", e.name().c_str(), e.what());
    return 3;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "invalid argument: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  }
  return 0;
}
