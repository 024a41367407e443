#ifndef CRN_FTVAF_H_
#define CRN_FTVAF_H_

// Fixed-term variable annuity fund.
//
// Each year h the fund pays out a fraction a of its wealth W, members die
// according to Poisson mortality, the deceased members' share leaves the
// fund, and the remainder grows under geometric Brownian motion:
//
//   W' = W (1 - a) (l' / l) exp((mu - sigma^2 / 2) + sigma Z).
//
// Wealth is a fraction of the initial corpus (W_1 = 1) and l is the fraction
// of the initial members still alive.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crn/seeding.h"

namespace crn::ftvaf {

class MortalityTable {
 public:
  MortalityTable(int first_age, std::vector<double> rates);

  // lambda_x; ages below the first row use the first row, ages above the
  // last row use the last row.
  double Rate(int age) const;
  int first_age() const { return first_age_; }
  const std::vector<double>& rates() const { return rates_; }

 private:
  int first_age_;
  std::vector<double> rates_;
};

// Gompertz approximation of 2003 US period mortality, ages 60..110. Identical
// to data/mortality_us2003_approx.txt.
MortalityTable DefaultMortalityTable();

// `age lambda` rows, '#' comments. Ages must be consecutive. Throws ParseError.
MortalityTable ReadMortalityTable(std::istream& in);
MortalityTable LoadMortalityTable(const std::string& path);

struct Params {
  double mu = 0.15;
  double sigma = 0.2;
  int horizon = 20;
  double solvency_threshold = 0.05;
  double c1 = 5.0;
  double c2 = 0.03;
  int min_initial_age = 60;
  int max_initial_age = 70;
  int population = 1000;
  int grid_size = 101;  // candidate fractions 0, 1/(g-1), ..., 1
  double rollout_fraction = 0.11;
  MortalityTable mortality = DefaultMortalityTable();

  void Validate() const;  // throws ConfigError
  // Number of dense age slots: min_initial_age .. max_initial_age + horizon.
  int num_age_slots() const { return max_initial_age + horizon - min_initial_age + 1; }
};

struct State {
  double wealth = 1.0;
  int year = 1;
  int population = 0;          // initial member count N
  std::vector<int> counts;     // living members by age slot
  int alive() const;
  // l = sum(counts) / N.
  double alive_fraction() const;
  // L(x) = counts[x] / N.
  std::vector<double> age_distribution() const;
};

// Ages uniform on the integers [min_initial_age, max_initial_age], one
// generator draw per member from the stream seeded by `seed`.
State InitPopulation(const Params& params, std::uint64_t seed);

// Randomness consumed by one year: the market shock and one uniform per age
// slot for the Poisson mortality draws.
struct YearNoise {
  double z = 0.0;
  std::vector<double> mortality_uniforms;
};

// Stream seeded by `seed`: Z from Box-Muller on the first two draws, then one
// uniform per age slot in slot order.
YearNoise MakeYearNoise(const Params& params, std::uint64_t seed);

// Accounting of one step: payout + beneficiary_outflow + retained = W, and
// retained * growth = next wealth.
struct Ledger {
  double payout = 0.0;
  double beneficiary_outflow = 0.0;
  double retained = 0.0;
  double growth = 1.0;
};

struct StepOutcome {
  State next;
  double reward = 0.0;  // payout plus any terminal penalty
  double penalty = 0.0;
  bool terminated = false;
  Ledger ledger;
};

// One year. Throws DomainError if `action` is outside [0, 1] and
// TerminalStateError past the horizon. Termination, checked in order:
//   year == H:                         penalty -W' C2;
//   nobody left alive:                 no penalty;
//   W' / l' < solvency_threshold:      penalty l' ((h + 1) - (H + 1)) C1.
StepOutcome Step(const Params& params, const State& state, double action,
                 const YearNoise& noise);

// Evaluates every grid fraction with n simulations each: the candidate for
// the first year, then the constant rollout fraction to the horizon. The
// noise for simulation j in year y comes from
// Derive("ftvaf", "year", y, j, key) where key = candidate index, included
// iff scheme.IncludesPolicyKey(y - state.year + 1). Returns the grid
// fraction with the highest mean return, lowest index on ties.
struct LookaheadResult {
  double action = 0.0;
  int index = 0;
  std::vector<double> mean_returns;
};
LookaheadResult Lookahead(const Params& params, const State& state,
                          int num_simulations, const SeedScheme& scheme,
                          std::string_view run_salt);

double LookaheadPolicy(const Params& params, const State& state,
                       int num_simulations, const SeedScheme& scheme,
                       std::string_view run_salt);

// One fund lifetime controlled by the lookahead planner. The population and
// the real market/mortality noise are functions of `run_salt` only, so runs
// with the same salt face the same real scenario under every scheme.
EpisodeRecord RunEpisode(const Params& params, int num_simulations,
                         const SeedScheme& scheme, std::string_view run_salt);

}  // namespace crn::ftvaf

#endif  // CRN_FTVAF_H_
