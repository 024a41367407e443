#ifndef CRN_PLANNER_H_
#define CRN_PLANNER_H_

// Simulation-based selection among a fixed set of policies.

#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crn/mdp.h"
#include "crn/seeding.h"

namespace crn {

struct PlanningConfig {
  int depth_limit = 2;  // decision nodes at depth <= depth_limit use UCB1
  int num_simulations = 1;
  double exploration_constant = std::sqrt(2.0);
  SeedScheme scheme = SeedScheme::Dependent();
  std::string rollout_policy = "uniform-random";

  // Throws ConfigError.
  void Validate() const;
};

struct PolicySelectionReport {
  int chosen_index = 0;
  std::vector<double> estimated_utilities;
  double true_utility_of_chosen = 0.0;
};

// Runs every policy n times (simulation indices 1..n) through the forward
// process under `scheme`, and picks the highest average return with the
// lowest index winning ties. Under DepthDependent(d) a warning is logged if
// the policies do not all agree after d steps. Throws ConfigError on an empty
// policy set or n < 1.
PolicySelectionReport SelectBestPolicy(const TabularMdp& mdp,
                                       std::span<const Policy> policies, int n,
                                       const SeedScheme& scheme,
                                       std::string_view run_salt);

// SelectBestPolicy for every n in `sweep` from a single pass over simulation
// indices 1..max(sweep). Entry k equals SelectBestPolicy(..., sweep[k], ...).
std::vector<PolicySelectionReport> SelectBestPolicySweep(
    const TabularMdp& mdp, std::span<const Policy> policies,
    std::span<const int> sweep, const SeedScheme& scheme,
    std::string_view run_salt);

}  // namespace crn

#endif  // CRN_PLANNER_H_
