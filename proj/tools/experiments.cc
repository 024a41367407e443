#include "experiments.h"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "crn/errors.h"
#include "crn/estimators.h"
#include "crn/planner.h"
#include "crn/synthetic.h"
#include "crn/uct.h"

namespace crn::experiments {

void Config::Validate() const {
  if (schemes.empty()) throw ConfigError("no seeding schemes given");
  if (n_values.empty()) throw ConfigError("empty simulation sweep");
  for (int n : n_values) {
    if (n < 1) throw ConfigError("simulation counts must be >= 1");
  }
  if (runs < 1) throw ConfigError("runs must be >= 1");
  if (num_policies < 1) throw ConfigError("need at least one policy");
  if (depth_limit < 1) throw ConfigError("depth limit must be >= 1");
  if (!(exploration >= 0.0)) throw ConfigError("exploration must be >= 0");
}

Config DefaultConfig(const std::string& experiment) {
  Config c;
  if (experiment == "synthetic-fixed") {
    c.schemes = {SeedScheme::Independent(), SeedScheme::Dependent(),
                 SeedScheme::DepthDependent(2)};
    c.n_values = {1, 2, 4, 8, 16, 32, 64, 128};
  } else if (experiment == "synthetic-uct") {
    c.schemes = {SeedScheme::Independent(), SeedScheme::Dependent(),
                 SeedScheme::DepthDependent(2)};
    c.n_values = {2, 4, 8, 16, 32, 64};
  } else if (experiment == "counterexample") {
    c.schemes = {SeedScheme::Independent(), SeedScheme::Dependent(),
                 SeedScheme::DepthDependent(2)};
    c.n_values = {1, 2, 3, 4, 6, 8, 10, 16, 24, 32};
    c.runs = 2000;
  } else if (experiment == "ftvaf") {
    c.schemes = {SeedScheme::Independent(), SeedScheme::Dependent(),
                 SeedScheme::DepthDependent(1)};
    c.n_values = {24, 32};
  } else if (experiment == "ludo") {
    c.schemes = {SeedScheme::Independent(), SeedScheme::Dependent(),
                 SeedScheme::DepthDependent(2)};
    c.n_values = {8, 32};
    c.runs = 500;
  } else {
    throw ConfigError("unknown experiment '" + experiment + "'");
  }
  return c;
}

const std::vector<std::string>& ExperimentNames() {
  static const std::vector<std::string> names = {
      "synthetic-fixed", "synthetic-uct", "counterexample", "ftvaf", "ludo"};
  return names;
}

std::string SchemeLabel(const SeedScheme& scheme) {
  return std::string(scheme.Name());
}

namespace {

std::string RunSalt(const Config& config, int run) {
  return config.salt + "/run/" + std::to_string(run);
}

SyntheticSpec SpecFor(const Config& config, const std::string& run_salt) {
  SyntheticSpec spec;
  spec.num_states = config.num_states;
  spec.num_actions = config.num_actions;
  spec.horizon = config.horizon;
  spec.generator_seed = config.mdp_seed.value_or(Fnv1a64Hash(run_salt));
  return spec;
}

SweepResult Allocate(const std::string& name, const Config& config) {
  config.Validate();
  SweepResult result{name, config, {}};
  result.values.assign(
      config.schemes.size(),
      std::vector<std::vector<double>>(config.n_values.size(),
                                       std::vector<double>(config.runs, 0.0)));
  return result;
}

}  // namespace

SweepResult RunSyntheticFixed(const Config& config) {
  SweepResult result = Allocate("synthetic-fixed", config);
  for (int r = 0; r < config.runs; ++r) {
    const std::string salt = RunSalt(config, r);
    const SyntheticSpec spec = SpecFor(config, salt);
    const TabularMdp mdp = GenerateMdp(spec);
    const std::vector<Policy> policies = GenerateAgreeingPolicies(
        spec, config.num_policies, config.agreement_depth, spec.generator_seed);
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
      const auto reports = SelectBestPolicySweep(mdp, policies, config.n_values,
                                                 config.schemes[s], salt);
      for (std::size_t k = 0; k < reports.size(); ++k) {
        result.values[s][k][r] = reports[k].true_utility_of_chosen;
      }
    }
  }
  return result;
}

SweepResult RunSyntheticUct(const Config& config) {
  SweepResult result = Allocate("synthetic-uct", config);
  for (int r = 0; r < config.runs; ++r) {
    const std::string salt = RunSalt(config, r);
    const TabularMdp mdp = GenerateMdp(SpecFor(config, salt));
    const TabularEnvironment env(mdp);
    const std::uint64_t real_seed =
        DeriveSeed({salt, "uct-real", "", 0, 0, std::nullopt});
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
      for (std::size_t k = 0; k < config.n_values.size(); ++k) {
        PlanningConfig planning;
        planning.depth_limit = config.depth_limit;
        planning.num_simulations = config.n_values[k];
        planning.exploration_constant = config.exploration;
        planning.scheme = config.schemes[s];
        StreamChance real(real_seed);
        result.values[s][k][r] =
            RunEpisodeWithPlanner(env, env.Initial(), 1, planning, salt, real)
                .total_return;
      }
    }
  }
  return result;
}

SweepResult RunCounterexample(const Config& config) {
  SweepResult result = Allocate("counterexample", config);
  const CounterexampleSetup setup =
      CounterexampleMdp(config.r0, config.r1, config.r2, config.r3);
  const std::vector<Policy> policies = {setup.pi1, setup.pi2};
  for (int r = 0; r < config.runs; ++r) {
    const std::string salt = RunSalt(config, r);
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
      const auto reports = SelectBestPolicySweep(setup.mdp, policies,
                                                 config.n_values,
                                                 config.schemes[s], salt);
      for (std::size_t k = 0; k < reports.size(); ++k) {
        result.values[s][k][r] = reports[k].true_utility_of_chosen;
      }
    }
  }
  return result;
}

SweepResult RunFtvaf(const Config& config) {
  SweepResult result = Allocate("ftvaf", config);
  for (int r = 0; r < config.runs; ++r) {
    const std::string salt = RunSalt(config, r);
    for (std::size_t s = 0; s < config.schemes.size(); ++s) {
      for (std::size_t k = 0; k < config.n_values.size(); ++k) {
        result.values[s][k][r] =
            ftvaf::RunEpisode(config.ftvaf, config.n_values[k],
                              config.schemes[s], salt)
                .total_return;
      }
    }
  }
  return result;
}

SweepResult RunLudo(const Config& config) {
  SweepResult result = Allocate("ludo", config);
  const ludo::LudoEnvironment env(config.board);
  for (std::size_t s = 0; s < config.schemes.size(); ++s) {
    for (std::size_t k = 0; k < config.n_values.size(); ++k) {
      PlanningConfig planning;
      planning.depth_limit = config.depth_limit;
      planning.num_simulations = config.n_values[k];
      planning.exploration_constant = config.exploration;
      planning.scheme = config.schemes[s];
      for (int g = 0; g < config.runs; ++g) {
        const ludo::GameResult game = ludo::PlayUctGame(
            env, planning, static_cast<std::uint64_t>(g) + 1, config.salt);
        result.values[s][k][g] = game.winner == ludo::kAgent ? 1.0 : 0.0;
      }
    }
  }
  return result;
}

SweepResult Run(const std::string& experiment, const Config& config) {
  if (experiment == "synthetic-fixed") return RunSyntheticFixed(config);
  if (experiment == "synthetic-uct") return RunSyntheticUct(config);
  if (experiment == "counterexample") return RunCounterexample(config);
  if (experiment == "ftvaf") return RunFtvaf(config);
  if (experiment == "ludo") return RunLudo(config);
  throw ConfigError("unknown experiment '" + experiment + "'");
}

Summary Summarize(const std::vector<double>& values) {
  Summary out;
  if (values.empty()) {
    out.mean = out.std_error = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / values.size();
  if (values.size() < 2) {
    out.std_error = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  double sq = 0.0;
  for (double v : values) sq += (v - out.mean) * (v - out.mean);
  out.std_error = std::sqrt(sq / (values.size() - 1) / values.size());
  return out;
}

Summary PairedDifference(const std::vector<double>& a,
                         const std::vector<double>& b) {
  if (a.size() != b.size()) throw ConfigError("paired samples differ in size");
  std::vector<double> d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
  return Summarize(d);
}

namespace {

std::string FormatNumber(double v) {
  if (std::isnan(v)) return "NaN";
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

}  // namespace

void WriteCsv(std::ostream& out, const SweepResult& result) {
  const Config& c = result.config;
  out << "experiment,scheme,n_simulations,mean,std_error,num_runs,salt\n";
  for (std::size_t s = 0; s < c.schemes.size(); ++s) {
    for (std::size_t k = 0; k < c.n_values.size(); ++k) {
      const Summary sm = Summarize(result.values[s][k]);
      out << result.experiment << ',' << SchemeLabel(c.schemes[s]) << ','
          << c.n_values[k] << ',' << FormatNumber(sm.mean) << ','
          << FormatNumber(sm.std_error) << ',' << c.runs << ',' << c.salt
          << '\n';
    }
  }
}

void WriteGnuplotScript(std::ostream& out, const std::string& csv_path,
                        const std::string& title) {
  out << "# gnuplot script; plots mean +- one standard error per scheme.\n"
      << "set datafile separator ','\n"
      << "set key left top\n"
      << "set logscale x 2\n"
      << "set xlabel 'number of simulations n'\n"
      << "set ylabel 'mean'\n"
      << "set title '" << title << "'\n"
      << "csv = '" << csv_path << "'\n"
      << "plot for [s in 'independent dependent depth-dependent'] \\\n"
      << "  '< grep \",'.s.',\" '.csv using 3:4:5 with yerrorlines title s\n";
}

}  // namespace crn::experiments
