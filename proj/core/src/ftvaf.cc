#include "crn/ftvaf.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <sstream>

#include "crn/distribution.h"
#include "crn/errors.h"

namespace crn::ftvaf {

MortalityTable::MortalityTable(int first_age, std::vector<double> rates)
    : first_age_(first_age), rates_(std::move(rates)) {
  if (rates_.empty()) throw ConfigError("empty mortality table");
  for (double r : rates_) {
    if (!(r >= 0.0) || !std::isfinite(r)) {
      throw ConfigError("mortality rates must be finite and >= 0");
    }
  }
}

double MortalityTable::Rate(int age) const {
  const long k = static_cast<long>(age) - first_age_;
  if (k <= 0) return rates_.front();
  if (k >= static_cast<long>(rates_.size())) return rates_.back();
  return rates_[static_cast<std::size_t>(k)];
}

MortalityTable DefaultMortalityTable() {
  // Matches the rounding used for the bundled data file.
  std::vector<double> rates;
  for (int x = 60; x <= 110; ++x) {
    const double q = std::min(0.95, 0.0097 * std::exp(0.0924 * (x - 60)));
    rates.push_back(std::round(-std::log(1.0 - q) * 1e6) / 1e6);
  }
  return MortalityTable(60, std::move(rates));
}

MortalityTable ReadMortalityTable(std::istream& in) {
  std::string line;
  int line_no = 0;
  int first_age = 0;
  std::vector<double> rates;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    int age = 0;
    double rate = 0.0;
    std::string extra;
    if (!(fields >> age >> rate) || (fields >> extra)) {
      throw ParseError("mortality table line " + std::to_string(line_no) +
                       ": expected `age lambda`");
    }
    if (rates.empty()) {
      first_age = age;
    } else if (age != first_age + static_cast<int>(rates.size())) {
      throw ParseError("mortality table line " + std::to_string(line_no) +
                       ": ages must be consecutive");
    }
    if (!(rate >= 0.0) || !std::isfinite(rate)) {
      throw ParseError("mortality table line " + std::to_string(line_no) +
                       ": rate must be finite and >= 0");
    }
    rates.push_back(rate);
  }
  if (rates.empty()) throw ParseError("mortality table has no rows");
  return MortalityTable(first_age, std::move(rates));
}

MortalityTable LoadMortalityTable(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open mortality table '" + path + "'");
  return ReadMortalityTable(in);
}

void Params::Validate() const {
  if (!(sigma > 0.0)) throw ConfigError("sigma must be > 0");
  if (horizon < 1) throw ConfigError("horizon must be >= 1");
  if (population < 1) throw ConfigError("population must be >= 1");
  if (grid_size < 2) throw ConfigError("grid size must be >= 2");
  if (max_initial_age < min_initial_age) {
    throw ConfigError("empty initial age range");
  }
  if (!(rollout_fraction >= 0.0 && rollout_fraction <= 1.0)) {
    throw ConfigError("rollout fraction must lie in [0, 1]");
  }
  if (!(solvency_threshold >= 0.0)) {
    throw ConfigError("solvency threshold must be >= 0");
  }
}

int State::alive() const { return std::accumulate(counts.begin(), counts.end(), 0); }

double State::alive_fraction() const {
  return static_cast<double>(alive()) / population;
}

std::vector<double> State::age_distribution() const {
  std::vector<double> out(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) {
    out[i] = static_cast<double>(counts[i]) / population;
  }
  return out;
}

State InitPopulation(const Params& params, std::uint64_t seed) {
  params.Validate();
  State state;
  state.population = params.population;
  state.counts.assign(static_cast<std::size_t>(params.num_age_slots()), 0);
  const int span = params.max_initial_age - params.min_initial_age + 1;
  SplitMix64 rng(seed);
  for (int i = 0; i < params.population; ++i) {
    int k = static_cast<int>(rng.NextUnit() * span);
    if (k >= span) k = span - 1;
    ++state.counts[static_cast<std::size_t>(k)];
  }
  return state;
}

namespace {

void FillYearNoise(const Params& params, std::uint64_t seed, YearNoise& noise) {
  SplitMix64 rng(seed);
  const double u1 = rng.NextUnit();
  const double u2 = rng.NextUnit();
  noise.z = BoxMuller(u1, u2);
  noise.mortality_uniforms.resize(static_cast<std::size_t>(params.num_age_slots()));
  for (double& u : noise.mortality_uniforms) u = rng.NextUnit();
}

// Step without argument checks, updating `state` in place.
void StepInPlace(const Params& params, State& state, double action,
                 const YearNoise& noise, StepOutcome& out) {
  const double wealth = state.wealth;
  const int alive_before = state.alive();
  const double l = static_cast<double>(alive_before) / state.population;

  const int slots = static_cast<int>(state.counts.size());
  int alive_after = 0;
  for (int x = slots - 1; x >= 0; --x) {
    const int n = state.counts[x];
    int survivors = 0;
    if (n > 0) {
      const double mean = n * params.mortality.Rate(params.min_initial_age + x);
      survivors = n - PoissonInverseCdf(mean, noise.mortality_uniforms[x], n);
    }
    state.counts[x] = 0;
    if (x + 1 < slots) {
      state.counts[x + 1] = survivors;
    } else {
      state.counts[x] += survivors;  // oldest slot absorbs
    }
    alive_after += survivors;
  }
  const double l_next = static_cast<double>(alive_after) / state.population;

  Ledger& ledger = out.ledger;
  ledger.payout = wealth * action;
  const double before_mortality = wealth * (1.0 - action);
  ledger.retained = l > 0.0 ? before_mortality * (l_next / l) : 0.0;
  ledger.beneficiary_outflow = before_mortality - ledger.retained;
  ledger.growth = std::exp((params.mu - 0.5 * params.sigma * params.sigma) +
                           params.sigma * noise.z);

  const int h = state.year;
  state.wealth = ledger.retained * ledger.growth;
  state.year = h + 1;

  out.penalty = 0.0;
  out.terminated = false;
  if (h == params.horizon) {
    out.terminated = true;
    out.penalty = -state.wealth * params.c2;
  } else if (alive_after == 0) {
    out.terminated = true;
  } else if (state.wealth / l_next < params.solvency_threshold) {
    out.terminated = true;
    out.penalty = l_next * static_cast<double>((h + 1) - (params.horizon + 1)) *
                  params.c1;
  }
  out.reward = ledger.payout + out.penalty;
}

}  // namespace

YearNoise MakeYearNoise(const Params& params, std::uint64_t seed) {
  YearNoise noise;
  FillYearNoise(params, seed, noise);
  return noise;
}

StepOutcome Step(const Params& params, const State& state, double action,
                 const YearNoise& noise) {
  if (!(action >= 0.0 && action <= 1.0)) {
    throw DomainError("payout fraction must lie in [0, 1]");
  }
  if (state.year < 1 || state.year > params.horizon) {
    throw TerminalStateError("year outside [1, H]");
  }
  if (static_cast<int>(state.counts.size()) != params.num_age_slots() ||
      noise.mortality_uniforms.size() != state.counts.size()) {
    throw ConfigError("age vector does not match the parameters");
  }
  StepOutcome out;
  out.next = state;
  StepInPlace(params, out.next, action, noise, out);
  return out;
}

LookaheadResult Lookahead(const Params& params, const State& state,
                          int num_simulations, const SeedScheme& scheme,
                          std::string_view run_salt) {
  params.Validate();
  if (num_simulations < 1) throw ConfigError("num_simulations must be >= 1");
  if (state.year < 1 || state.year > params.horizon) {
    throw TerminalStateError("lookahead from a finished fund");
  }
  const SeedDeriver deriver(run_salt);
  const int grid = params.grid_size;
  LookaheadResult result;
  result.mean_returns.assign(static_cast<std::size_t>(grid), 0.0);

  // Noise that carries no candidate key is the same for every candidate, so
  // it is generated once per (year offset, simulation).
  const int years_left = params.horizon - state.year + 1;
  std::vector<YearNoise> shared(
      static_cast<std::size_t>(years_left) * num_simulations);
  std::vector<char> shared_ready(shared.size(), 0);

  YearNoise noise;
  State sim;
  StepOutcome out;
  for (int c = 0; c < grid; ++c) {
    const double first = static_cast<double>(c) / (grid - 1);
    const std::string key = std::to_string(c);
    const std::string_view key_view = key;
    double total = 0.0;
    for (int j = 1; j <= num_simulations; ++j) {
      sim = state;
      double ret = 0.0;
      for (int step = 1;; ++step) {
        const YearNoise* year_noise = &noise;
        if (scheme.IncludesPolicyKey(step)) {
          FillYearNoise(params,
                        deriver.Derive("ftvaf", "year", sim.year,
                                       static_cast<std::uint64_t>(j), &key_view),
                        noise);
        } else {
          const std::size_t slot =
              static_cast<std::size_t>(step - 1) * num_simulations + (j - 1);
          if (!shared_ready[slot]) {
            FillYearNoise(params,
                          deriver.Derive("ftvaf", "year", sim.year,
                                         static_cast<std::uint64_t>(j), nullptr),
                          shared[slot]);
            shared_ready[slot] = 1;
          }
          year_noise = &shared[slot];
        }
        StepInPlace(params, sim, step == 1 ? first : params.rollout_fraction,
                    *year_noise, out);
        ret += out.reward;
        if (out.terminated) break;
      }
      total += ret;
    }
    result.mean_returns[c] = total / num_simulations;
  }
  for (int c = 1; c < grid; ++c) {
    if (result.mean_returns[c] > result.mean_returns[result.index]) {
      result.index = c;
    }
  }
  result.action = static_cast<double>(result.index) / (grid - 1);
  return result;
}

double LookaheadPolicy(const Params& params, const State& state,
                       int num_simulations, const SeedScheme& scheme,
                       std::string_view run_salt) {
  return Lookahead(params, state, num_simulations, scheme, run_salt).action;
}

EpisodeRecord RunEpisode(const Params& params, int num_simulations,
                         const SeedScheme& scheme, std::string_view run_salt) {
  params.Validate();
  const std::string salt(run_salt);
  State state = InitPopulation(
      params, DeriveSeed({salt, "ftvaf-population", "", 0, 0, std::nullopt}));
  EpisodeRecord record;
  YearNoise noise;
  StepOutcome out;
  for (;;) {
    const int year = state.year;
    const LookaheadResult plan =
        Lookahead(params, state, num_simulations, scheme,
                  salt + "/plan/" + std::to_string(year));
    FillYearNoise(params,
                  DeriveSeed({salt, "ftvaf-real", "year", year, 0, std::nullopt}),
                  noise);
    StepInPlace(params, state, plan.action, noise, out);
    record.steps.push_back({static_cast<std::uint64_t>(year), plan.index,
                            out.reward, 0});
    record.total_return += out.reward;
    if (out.terminated) break;
  }
  return record;
}

}  // namespace crn::ftvaf
