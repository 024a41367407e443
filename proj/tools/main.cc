// crn: runs the seeding-scheme experiments and writes their CSV summaries.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "crn/errors.h"
#include "experiments.h"
#include "fixtures.h"

#ifndef CRN_DATA_DIR
#define CRN_DATA_DIR "data"
#endif

namespace {

using crn::experiments::Config;

struct CommonFlags {
  std::vector<std::string> schemes;
  std::vector<int> n_sims;
  int runs = 0;
  std::string salt;
  std::string out;
};

struct Overrides {
  int states = 0, actions = 0, horizon = 0, policies = 0, depth = -1;
  std::uint64_t mdp_seed = 0;
  int depth_limit = 0;
  double exploration = -1.0;
  std::vector<double> rewards;
  double mu = 0.15, sigma = 0.2, c1 = 5.0, c2 = 0.03, rollout = 0.11;
  int years = 20, population = 1000, grid = 101;
  std::string mortality;
  std::string board;
};

int DefaultSchemeDepth(const std::string& experiment) {
  return experiment == "ftvaf" ? 1 : 2;
}

void AddCommon(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--scheme", f.schemes,
                  "Seeding schemes: independent, dependent, depth-dependent[:d]")
      ->delimiter(',');
  cmd->add_option("--n-sims", f.n_sims, "Simulation counts to sweep")
      ->delimiter(',');
  cmd->add_option("--runs", f.runs, "Runs (games for ludo)");
  cmd->add_option("--salt", f.salt, "Master run salt");
  cmd->add_option("--out", f.out,
                  "CSV path (default: $CRN_OUTPUT_DIR/<experiment>.csv, else stdout)");
}

Config BuildConfig(const std::string& experiment, const CommonFlags& f,
                   const Overrides& o, CLI::App* cmd) {
  Config c = crn::experiments::DefaultConfig(experiment);
  if (!f.schemes.empty()) {
    c.schemes.clear();
    for (const auto& s : f.schemes) {
      c.schemes.push_back(
          crn::SeedScheme::Parse(s, DefaultSchemeDepth(experiment)));
    }
  }
  if (!f.n_sims.empty()) c.n_values = f.n_sims;
  if (cmd->count("--runs") > 0) c.runs = f.runs;
  if (!f.salt.empty()) c.salt = f.salt;
  if (o.states > 0) c.num_states = o.states;
  if (o.actions > 0) c.num_actions = o.actions;
  if (o.horizon > 0) c.horizon = o.horizon;
  if (o.policies > 0) c.num_policies = o.policies;
  if (o.depth >= 0) c.agreement_depth = o.depth;
  if (cmd->get_option_no_throw("--mdp-seed") != nullptr &&
      cmd->count("--mdp-seed") > 0) {
    c.mdp_seed = o.mdp_seed;
  }
  if (o.depth_limit > 0) c.depth_limit = o.depth_limit;
  if (o.exploration >= 0.0) c.exploration = o.exploration;
  if (!o.rewards.empty()) {
    if (o.rewards.size() != 4) throw crn::ConfigError("--rewards takes r0 r1 r2 r3");
    c.r0 = o.rewards[0];
    c.r1 = o.rewards[1];
    c.r2 = o.rewards[2];
    c.r3 = o.rewards[3];
  }
  if (experiment == "ftvaf") {
    c.ftvaf.mu = o.mu;
    c.ftvaf.sigma = o.sigma;
    c.ftvaf.c1 = o.c1;
    c.ftvaf.c2 = o.c2;
    c.ftvaf.rollout_fraction = o.rollout;
    c.ftvaf.horizon = o.years;
    c.ftvaf.population = o.population;
    c.ftvaf.grid_size = o.grid;
    if (!o.mortality.empty()) {
      c.ftvaf.mortality = crn::ftvaf::LoadMortalityTable(o.mortality);
    }
    c.ftvaf.Validate();
  }
  if (experiment == "ludo" && !o.board.empty()) {
    c.board = crn::ludo::LoadBoardMap(o.board);
  }
  c.Validate();
  return c;
}

std::string OutputPath(const std::string& experiment, const std::string& out) {
  if (!out.empty()) return out;
  if (const char* dir = std::getenv("CRN_OUTPUT_DIR"); dir != nullptr && *dir) {
    return std::string(dir) + "/" + experiment + ".csv";
  }
  return "";
}

int RunExperiment(const std::string& experiment, const CommonFlags& f,
                  const Overrides& o, CLI::App* cmd) {
  const Config config = BuildConfig(experiment, f, o, cmd);
  const auto result = crn::experiments::Run(experiment, config);
  const std::string path = OutputPath(experiment, f.out);
  if (path.empty()) {
    crn::experiments::WriteCsv(std::cout, result);
    return 0;
  }
  std::ofstream file(path);
  if (!file) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return 1;
  }
  crn::experiments::WriteCsv(file, result);
  std::cerr << "wrote " << path << "\n";
  return file.good() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Common-random-number seeding experiments"};
  app.require_subcommand(1);

  CommonFlags common;
  Overrides o;
  std::vector<std::pair<std::string, CLI::App*>> experiments;

  for (const std::string& name : crn::experiments::ExperimentNames()) {
    CLI::App* cmd = app.add_subcommand(name, "Run the " + name + " experiment");
    AddCommon(cmd, common);
    experiments.emplace_back(name, cmd);
  }
  for (const char* name : {"synthetic-fixed", "synthetic-uct"}) {
    CLI::App* cmd = app.get_subcommand(name);
    cmd->add_option("--states", o.states, "|S| (default 7)");
    cmd->add_option("--actions", o.actions, "|A| (default 4)");
    cmd->add_option("--horizon", o.horizon, "H (default 20)");
    cmd->add_option("--mdp-seed", o.mdp_seed,
                    "Use one generated MDP for every run");
  }
  app.get_subcommand("synthetic-fixed")
      ->add_option("--policies,-m", o.policies, "Number of policies m (default 100)");
  app.get_subcommand("synthetic-fixed")
      ->add_option("--agreement-depth", o.depth,
                   "Policies agree after this many steps (default 2)");
  for (const char* name : {"synthetic-uct", "ludo"}) {
    CLI::App* cmd = app.get_subcommand(name);
    cmd->add_option("--depth-limit", o.depth_limit, "UCB depth (default 2)");
    cmd->add_option("--exploration", o.exploration, "UCB1 constant (default sqrt 2)");
  }
  app.get_subcommand("counterexample")
      ->add_option("--rewards", o.rewards, "r0 r1 r2 r3 (default 2 4 3 2)")
      ->expected(4)
      ->delimiter(',');
  {
    CLI::App* cmd = app.get_subcommand("ftvaf");
    cmd->add_option("--mu", o.mu, "Drift")->capture_default_str();
    cmd->add_option("--sigma", o.sigma, "Volatility")->capture_default_str();
    cmd->add_option("--years", o.years, "Fund term H")->capture_default_str();
    cmd->add_option("--population", o.population, "Initial members N")
        ->capture_default_str();
    cmd->add_option("--c1", o.c1, "Insolvency penalty scale")->capture_default_str();
    cmd->add_option("--c2", o.c2, "Terminal wealth penalty scale")
        ->capture_default_str();
    cmd->add_option("--grid", o.grid, "Number of payout fractions")
        ->capture_default_str();
    cmd->add_option("--rollout-fraction", o.rollout, "Rollout payout fraction")
        ->capture_default_str();
    cmd->add_option("--mortality", o.mortality, "Mortality table (`age lambda` rows)");
  }
  app.get_subcommand("ludo")->add_option("--board", o.board, "Board-map file");

  std::string data_dir = CRN_DATA_DIR;
  CLI::App* verify =
      app.add_subcommand("verify-fixtures", "Check seed vectors, tiny-MDP oracle and Ludo rules");
  verify->add_option("--data-dir", data_dir, "Directory with the board map and game log")
      ->capture_default_str();

  std::string plot_csv, plot_out, plot_title = "crn experiment";
  CLI::App* plots = app.add_subcommand("emit-plots", "Write a gnuplot script for a CSV");
  plots->add_option("--csv", plot_csv, "CSV produced by an experiment")->required();
  plots->add_option("--out", plot_out, "Script path (default stdout)");
  plots->add_option("--title", plot_title, "Plot title");

  CLI11_PARSE(app, argc, argv);

  try {
    for (const auto& [name, cmd] : experiments) {
      if (cmd->parsed()) return RunExperiment(name, common, o, cmd);
    }
    if (verify->parsed()) {
      return crn::fixtures::VerifyAll(data_dir, std::cout) == 0 ? 0 : 1;
    }
    if (plots->parsed()) {
      if (plot_out.empty()) {
        crn::experiments::WriteGnuplotScript(std::cout, plot_csv, plot_title);
        return 0;
      }
      std::ofstream file(plot_out);
      if (!file) {
        std::cerr << "error: cannot write '" << plot_out << "'\n";
        return 1;
      }
      crn::experiments::WriteGnuplotScript(file, plot_csv, plot_title);
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
