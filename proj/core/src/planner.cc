#include "crn/planner.h"

#include <algorithm>

#include "crn/errors.h"
#include "crn/log.h"

namespace crn {

void PlanningConfig::Validate() const {
  if (depth_limit < 1) throw ConfigError("depth_limit must be >= 1");
  if (num_simulations < 1) throw ConfigError("num_simulations must be >= 1");
  if (!(exploration_constant >= 0.0)) {
    throw ConfigError("exploration constant must be >= 0");
  }
  if (rollout_policy != "uniform-random") {
    throw ConfigError("unknown rollout policy '" + rollout_policy + "'");
  }
}

namespace {

void CheckSelectionArgs(const TabularMdp& mdp, std::span<const Policy> policies,
                        const SeedScheme& scheme) {
  if (policies.empty()) throw ConfigError("empty policy set");
  for (const Policy& p : policies) {
    if (!p.Fits(mdp)) throw ConfigError("policy shape does not match the MDP");
  }
  if (scheme.kind() != SeedScheme::Kind::kDepthDependent) return;
  for (std::size_t i = 1; i < policies.size(); ++i) {
    if (!PoliciesAgreeAfter(policies[0], policies[i], scheme.depth())) {
      log::Warn("policy " + std::to_string(i) + " does not agree with policy 0 after depth " +
                std::to_string(scheme.depth()));
      return;
    }
  }
}

int ArgMax(const std::vector<double>& values) {
  return static_cast<int>(std::max_element(values.begin(), values.end()) -
                          values.begin());
}

}  // namespace

PolicySelectionReport SelectBestPolicy(const TabularMdp& mdp,
                                       std::span<const Policy> policies, int n,
                                       const SeedScheme& scheme,
                                       std::string_view run_salt) {
  const int sweep[] = {n};
  return SelectBestPolicySweep(mdp, policies, sweep, scheme, run_salt).front();
}

std::vector<PolicySelectionReport> SelectBestPolicySweep(
    const TabularMdp& mdp, std::span<const Policy> policies,
    std::span<const int> sweep, const SeedScheme& scheme,
    std::string_view run_salt) {
  CheckSelectionArgs(mdp, policies, scheme);
  if (sweep.empty()) throw ConfigError("empty simulation sweep");
  int max_n = 0;
  for (int n : sweep) {
    if (n < 1) throw ConfigError("number of simulations must be >= 1");
    max_n = std::max(max_n, n);
  }
  const std::size_t m = policies.size();
  // sums[i * m + k]: total return of policy k over indices 1..i.
  std::vector<double> sums((static_cast<std::size_t>(max_n) + 1) * m, 0.0);
  const SeedDeriver deriver(run_salt);
  for (int i = 1; i <= max_n; ++i) {
    for (std::size_t k = 0; k < m; ++k) {
      sums[i * m + k] = sums[(i - 1) * m + k] +
                        EvaluateReturn(mdp, policies[k], scheme,
                                       static_cast<std::uint64_t>(i), deriver);
    }
  }
  std::vector<double> truth(m, 0.0);
  std::vector<bool> known(m, false);
  std::vector<PolicySelectionReport> reports;
  reports.reserve(sweep.size());
  for (int n : sweep) {
    PolicySelectionReport report;
    report.estimated_utilities.resize(m);
    for (std::size_t k = 0; k < m; ++k) {
      report.estimated_utilities[k] = sums[n * m + k] / n;
    }
    report.chosen_index = ArgMax(report.estimated_utilities);
    const auto c = static_cast<std::size_t>(report.chosen_index);
    if (!known[c]) {
      truth[c] = Utility(mdp, policies[c]);
      known[c] = true;
    }
    report.true_utility_of_chosen = truth[c];
    reports.push_back(std::move(report));
  }
  return reports;
}

}  // namespace crn
