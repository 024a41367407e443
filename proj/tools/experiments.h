#ifndef CRN_TOOLS_EXPERIMENTS_H_
#define CRN_TOOLS_EXPERIMENTS_H_

// Experiment drivers behind the `crn` command. Each driver returns the raw
// per-run values so callers can do paired comparisons between schemes: run r
// of every scheme shares the salt  <salt>/run/<r>, hence the same MDP
// instance, initial population or real dice.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crn/ftvaf.h"
#include "crn/ludo.h"
#include "crn/seeding.h"

namespace crn::experiments {

struct Config {
  std::vector<SeedScheme> schemes;
  std::vector<int> n_values;
  int runs = 200;
  std::string salt = "crn";

  // Synthetic MDPs.
  int num_states = 7;
  int num_actions = 4;
  int horizon = 20;
  int num_policies = 100;    // m
  int agreement_depth = 2;   // d for the policy set
  // When set, every run uses this generator seed; otherwise run r derives
  // its own instance from its salt.
  std::optional<std::uint64_t> mdp_seed;

  // UCT.
  int depth_limit = 2;
  double exploration = 1.4142135623730951;

  // Counterexample rewards.
  double r0 = 2.0, r1 = 4.0, r2 = 3.0, r3 = 2.0;

  ftvaf::Params ftvaf;
  ludo::BoardMap board = ludo::DefaultBoard();

  void Validate() const;  // throws ConfigError
};

// Defaults for each experiment (schemes, sweep and runs).
Config DefaultConfig(const std::string& experiment);

struct SweepResult {
  std::string experiment;
  Config config;
  // values[scheme][k][run]: outcome of run `run` at n = config.n_values[k].
  std::vector<std::vector<std::vector<double>>> values;
};

// true value of the policy selected from m agreeing policies.
SweepResult RunSyntheticFixed(const Config& config);
// return of a UCT-controlled episode on a synthetic MDP.
SweepResult RunSyntheticUct(const Config& config);
// true value of the policy selected between pi1 and pi2.
SweepResult RunCounterexample(const Config& config);
// episodic reward of the lookahead annuity planner.
SweepResult RunFtvaf(const Config& config);
// per-game win indicator of UCT against the random opponent; `runs`
// is the number of games.
SweepResult RunLudo(const Config& config);

// Dispatch by experiment name; throws ConfigError on an unknown name.
SweepResult Run(const std::string& experiment, const Config& config);
const std::vector<std::string>& ExperimentNames();

// The seed scheme label used in CSV output, e.g. "depth-dependent".
std::string SchemeLabel(const SeedScheme& scheme);

struct Summary {
  double mean = 0.0;
  double std_error = 0.0;  // NaN with a single run
};
Summary Summarize(const std::vector<double>& values);
// Mean and standard error of a[i] - b[i].
Summary PairedDifference(const std::vector<double>& a,
                         const std::vector<double>& b);

// Header `experiment,scheme,n_simulations,mean,std_error,num_runs,salt`, then
// one row per (scheme, n) in configuration order. Numbers use %.10g.
void WriteCsv(std::ostream& out, const SweepResult& result);

// A gnuplot script plotting mean +- one standard error per scheme.
void WriteGnuplotScript(std::ostream& out, const std::string& csv_path,
                        const std::string& title);

}  // namespace crn::experiments

#endif  // CRN_TOOLS_EXPERIMENTS_H_
