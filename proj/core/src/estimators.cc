#include "crn/estimators.h"

#include <cmath>
#include <functional>
#include <set>
#include <tuple>

#include "crn/errors.h"
#include "crn/log.h"

namespace crn {

EstimatorKind EstimatorKind::XDD(int depth) {
  if (depth < 0) throw ConfigError("XDD depth must be >= 0");
  return EstimatorKind(Kind::kXDD, depth);
}

SeedScheme EstimatorKind::ToScheme() const {
  switch (kind_) {
    case Kind::kXI:
      return SeedScheme::Independent();
    case Kind::kXD:
      return SeedScheme::Dependent();
    case Kind::kXDD:
      return SeedScheme::DepthDependent(depth_);
  }
  return SeedScheme::Independent();
}

std::string EstimatorKind::ToString() const {
  switch (kind_) {
    case Kind::kXI:
      return "XI";
    case Kind::kXD:
      return "XD";
    case Kind::kXDD:
      return "XDD(" + std::to_string(depth_) + ")";
  }
  return "?";
}

EstimatorStats CollectStats(std::span<const double> values) {
  if (values.size() < 2) {
    throw InsufficientData("need at least two samples, got " +
                           std::to_string(values.size()));
  }
  EstimatorStats stats;
  stats.n = values.size();
  double sum = 0.0;
  for (double v : values) sum += v;
  stats.mean = sum / static_cast<double>(stats.n);
  double squares = 0.0;
  for (double v : values) squares += (v - stats.mean) * (v - stats.mean);
  stats.variance = squares / static_cast<double>(stats.n - 1);
  stats.std_error = std::sqrt(stats.variance / static_cast<double>(stats.n));
  return stats;
}

EstimatorStats CollectStats(std::span<const EstimateSample> samples) {
  std::vector<double> values;
  values.reserve(samples.size());
  for (const auto& s : samples) values.push_back(s.value);
  return CollectStats(values);
}

namespace {

void CheckPolicies(const TabularMdp& mdp, const Policy& p1, const Policy& p2,
                   const EstimatorKind& kind) {
  if (!p1.Fits(mdp) || !p2.Fits(mdp)) {
    throw ConfigError("policy shape does not match the MDP");
  }
  if (kind.kind() == EstimatorKind::Kind::kXDD && kind.depth() > mdp.horizon()) {
    throw ConfigError("XDD depth exceeds the horizon");
  }
}

void WarnIfDisagree(const Policy& p1, const Policy& p2,
                    const EstimatorKind& kind) {
  if (kind.kind() == EstimatorKind::Kind::kXDD &&
      !PoliciesAgreeAfter(p1, p2, kind.depth())) {
    log::Warn("XDD(" + std::to_string(kind.depth()) +
              "): policies do not agree after depth " +
              std::to_string(kind.depth()) +
              "; the estimator no longer reduces variance relative to XI");
  }
}

SplitMix64 BackwardStream(std::string_view run_salt, std::string_view which,
                          std::uint64_t simulation_index) {
  return SplitMix64(DeriveSeed(SeedContext{std::string(run_salt), "backward",
                                           std::string(which), 0,
                                           simulation_index, std::nullopt}));
}

}  // namespace

BackwardPair SampleBackwardPair(const TabularMdp& mdp,
                                std::uint64_t simulation_index,
                                std::string_view run_salt) {
  SplitMix64 rng1 = BackwardStream(run_salt, "M1", simulation_index);
  SplitMix64 rng2 = BackwardStream(run_salt, "M2", simulation_index);
  return BackwardPair{SampleSuccessors(mdp, rng1), SampleSuccessors(mdp, rng2)};
}

double EstimateFromPair(const TabularMdp& mdp, const Policy& p1,
                        const Policy& p2, const EstimatorKind& kind,
                        const BackwardPair& pair) {
  const double u1 = UtilityOnSuccessors(mdp, pair.m1, p1);
  switch (kind.kind()) {
    case EstimatorKind::Kind::kXI:
      return u1 - UtilityOnSuccessors(mdp, pair.m2, p2);
    case EstimatorKind::Kind::kXD:
      return u1 - UtilityOnSuccessors(mdp, pair.m1, p2);
    case EstimatorKind::Kind::kXDD: {
      const SuccessorTable m3 = SpliceSuccessors(pair.m2, pair.m1, kind.depth());
      return u1 - UtilityOnSuccessors(mdp, m3, p2);
    }
  }
  return 0.0;
}

EstimateSample DrawBackward(const TabularMdp& mdp, const Policy& p1,
                            const Policy& p2, const EstimatorKind& kind,
                            std::uint64_t simulation_index,
                            std::string_view run_salt) {
  CheckPolicies(mdp, p1, p2, kind);
  WarnIfDisagree(p1, p2, kind);
  const BackwardPair pair = SampleBackwardPair(mdp, simulation_index, run_salt);
  return {EstimateFromPair(mdp, p1, p2, kind, pair), kind, simulation_index};
}

namespace {

double ForwardValue(const TabularMdp& mdp, const Policy& p1, const Policy& p2,
                    const SeedScheme& scheme, std::uint64_t simulation_index,
                    const SeedDeriver& deriver) {
  return EvaluateReturn(mdp, p1, scheme, simulation_index, deriver) -
         EvaluateReturn(mdp, p2, scheme, simulation_index, deriver);
}

}  // namespace

EstimateSample DrawForward(const TabularMdp& mdp, const Policy& p1,
                           const Policy& p2, const EstimatorKind& kind,
                           std::uint64_t simulation_index,
                           std::string_view run_salt) {
  CheckPolicies(mdp, p1, p2, kind);
  WarnIfDisagree(p1, p2, kind);
  const SeedDeriver deriver(run_salt);
  return {ForwardValue(mdp, p1, p2, kind.ToScheme(), simulation_index, deriver),
          kind, simulation_index};
}

std::vector<EstimateSample> DrawBatch(const TabularMdp& mdp, const Policy& p1,
                                      const Policy& p2,
                                      const EstimatorKind& kind, Process process,
                                      std::size_t n, std::string_view run_salt) {
  CheckPolicies(mdp, p1, p2, kind);
  WarnIfDisagree(p1, p2, kind);
  std::vector<EstimateSample> out;
  out.reserve(n);
  if (process == Process::kForward) {
    const SeedDeriver deriver(run_salt);
    const SeedScheme scheme = kind.ToScheme();
    for (std::uint64_t i = 1; i <= n; ++i) {
      out.push_back({ForwardValue(mdp, p1, p2, scheme, i, deriver), kind, i});
    }
  } else {
    for (std::uint64_t i = 1; i <= n; ++i) {
      const BackwardPair pair = SampleBackwardPair(mdp, i, run_salt);
      out.push_back({EstimateFromPair(mdp, p1, p2, kind, pair), kind, i});
    }
  }
  return out;
}

CounterexampleSetup CounterexampleMdp(double r0, double r1, double r2,
                                      double r3) {
  constexpr int kS1 = 0, kS2 = 1, kS3 = 2;
  MdpBuilder builder(/*num_states=*/3, /*num_actions=*/2, /*horizon=*/2, kS1);
  const std::vector<double> coin = {0.0, 0.5, 0.5};
  for (int a = 0; a < 2; ++a) builder.SetTransition(kS1, a, 1, coin);
  builder.SetReward(kS2, 0, 2, r0)
      .SetReward(kS2, 1, 2, r1)
      .SetReward(kS3, 0, 2, r2)
      .SetReward(kS3, 1, 2, r3);
  std::vector<int> second(3 * 2, 0);
  for (int s = 0; s < 3; ++s) second[3 + s] = 1;
  return CounterexampleSetup{builder.Build(), Policy::Constant(3, 2, 2, 0),
                             Policy(3, 2, 2, std::move(second))};
}

double AnalyticCounterexampleCovariance(double r0, double r1, double r2,
                                        double r3) {
  return (r0 - r2) * (r1 - r3) / 4.0;
}

namespace {

// One random transition entry of M1 or M2 with its support.
struct EntryVariable {
  int table;  // 1 or 2
  std::size_t row;
  std::vector<std::pair<int, double>> support;
};

using Entry = std::tuple<int, int, int>;  // (s, a, t)

std::set<Entry> EntriesRead(const Policy& p, int t_from, int t_to) {
  std::set<Entry> out;
  for (int t = t_from; t <= t_to; ++t) {
    for (int s = 0; s < p.num_states(); ++s) out.insert({s, p.action(s, t), t});
  }
  return out;
}

// Visits every joint outcome of `vars` with its probability. Tables start
// from the deterministic default (row successor 0, sink at t = H) and only
// the enumerated rows change.
void Enumerate(const TabularMdp& mdp, const std::vector<EntryVariable>& vars,
               std::uint64_t max_outcomes,
               const std::function<void(const SuccessorTable&,
                                        const SuccessorTable&, double)>& visit,
               std::uint64_t* count) {
  double total = 1.0;
  for (const auto& v : vars) total *= static_cast<double>(v.support.size());
  if (total > static_cast<double>(max_outcomes)) {
    throw ConfigError("joint support too large to enumerate");
  }
  SuccessorTable base{mdp.num_states(), mdp.num_actions(), mdp.horizon(), {}};
  base.next.assign(static_cast<std::size_t>(mdp.num_states()) *
                       mdp.num_actions() * mdp.horizon(),
                   0);
  const std::size_t per_step =
      static_cast<std::size_t>(mdp.num_states()) * mdp.num_actions();
  for (std::size_t r = (mdp.horizon() - 1) * per_step; r < base.next.size(); ++r) {
    base.next[r] = mdp.terminal_state();
  }
  SuccessorTable tables[2] = {base, base};
  std::vector<std::size_t> digit(vars.size(), 0);
  for (;;) {
    double weight = 1.0;
    for (std::size_t k = 0; k < vars.size(); ++k) {
      const auto& [next, p] = vars[k].support[digit[k]];
      tables[vars[k].table - 1].next[vars[k].row] = next;
      weight *= p;
    }
    visit(tables[0], tables[1], weight);
    ++*count;
    std::size_t k = 0;
    while (k < vars.size() && ++digit[k] == vars[k].support.size()) {
      digit[k] = 0;
      ++k;
    }
    if (k == vars.size()) break;
  }
}

EntryVariable MakeVariable(const TabularMdp& mdp, int table, const Entry& e) {
  const auto [s, a, t] = e;
  EntryVariable v{table,
                  (static_cast<std::size_t>(t - 1) * mdp.num_states() + s) *
                          mdp.num_actions() +
                      a,
                  {}};
  const auto row = mdp.transition(s, a, t);
  for (int k = 0; k < mdp.num_states(); ++k) {
    if (row[k] > 0.0) v.support.emplace_back(k, row[k]);
  }
  return v;
}

// Mean and variance of f over the enumeration, two passes.
template <typename F>
std::pair<double, double> ExactMeanVar(const TabularMdp& mdp,
                                       const std::vector<EntryVariable>& vars,
                                       std::uint64_t max_outcomes, F f,
                                       std::uint64_t* count) {
  long double mean = 0.0L;
  Enumerate(
      mdp, vars, max_outcomes,
      [&](const SuccessorTable& m1, const SuccessorTable& m2, double w) {
        mean += static_cast<long double>(w) * f(m1, m2);
      },
      count);
  long double var = 0.0L;
  Enumerate(
      mdp, vars, max_outcomes,
      [&](const SuccessorTable& m1, const SuccessorTable& m2, double w) {
        const long double d = f(m1, m2) - mean;
        var += static_cast<long double>(w) * d * d;
      },
      count);
  return {static_cast<double>(mean), static_cast<double>(var)};
}

}  // namespace

ExactEstimatorMoments EnumerateEstimatorMoments(const TabularMdp& mdp,
                                                const Policy& p1,
                                                const Policy& p2, int depth,
                                                std::uint64_t max_outcomes) {
  CheckPolicies(mdp, p1, p2, EstimatorKind::XDD(depth));
  const int last = mdp.horizon() - 1;  // rows at t = H are deterministic
  ExactEstimatorMoments out;
  std::uint64_t count = 0;

  auto vars_for = [&](const std::set<Entry>& entries, int table) {
    std::vector<EntryVariable> vars;
    for (const auto& e : entries) vars.push_back(MakeVariable(mdp, table, e));
    return vars;
  };

  // XI and XD need the joint law of a single M over entries either policy
  // reads.
  std::set<Entry> both = EntriesRead(p1, 1, last);
  both.merge(EntriesRead(p2, 1, last));
  const auto single = vars_for(both, 1);
  const auto [mean1, var1] = ExactMeanVar(
      mdp, single, max_outcomes,
      [&](const SuccessorTable& m, const SuccessorTable&) {
        return UtilityOnSuccessors(mdp, m, p1);
      },
      &count);
  const auto [mean2, var2] = ExactMeanVar(
      mdp, single, max_outcomes,
      [&](const SuccessorTable& m, const SuccessorTable&) {
        return UtilityOnSuccessors(mdp, m, p2);
      },
      &count);
  const auto [mean_d, var_d] = ExactMeanVar(
      mdp, single, max_outcomes,
      [&](const SuccessorTable& m, const SuccessorTable&) {
        return UtilityOnSuccessors(mdp, m, p1) - UtilityOnSuccessors(mdp, m, p2);
      },
      &count);
  out.mean_difference = mean1 - mean2;
  out.var_xi = var1 + var2;
  out.var_xd = var_d;

  // XDD: M1 entries read by p1 anywhere or by p2 after d; M2 entries read by
  // p2 up to d.
  std::set<Entry> from_m1 = EntriesRead(p1, 1, last);
  from_m1.merge(EntriesRead(p2, depth + 1, last));
  auto vars = vars_for(from_m1, 1);
  for (auto& v : vars_for(EntriesRead(p2, 1, std::min(depth, last)), 2)) {
    vars.push_back(std::move(v));
  }
  const auto [mean_dd, var_dd] = ExactMeanVar(
      mdp, vars, max_outcomes,
      [&](const SuccessorTable& m1, const SuccessorTable& m2) {
        const SuccessorTable m3 = SpliceSuccessors(m2, m1, depth);
        return UtilityOnSuccessors(mdp, m1, p1) -
               UtilityOnSuccessors(mdp, m3, p2);
      },
      &count);
  (void)mean_dd;
  out.var_xdd = var_dd;
  out.outcomes_enumerated = count;
  return out;
}

}  // namespace crn
