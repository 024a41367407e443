#include "crn/synthetic.h"

#include <cmath>
#include <set>

#include "crn/errors.h"
#include "crn/log.h"
#include "crn/seeding.h"

namespace crn {

void SyntheticSpec::Validate() const {
  if (num_states < 1 || num_actions < 1 || horizon < 1) {
    throw ConfigError("synthetic spec dimensions must be positive");
  }
}

namespace {

SplitMix64 TaggedStream(std::string_view tag, std::uint64_t seed) {
  return SplitMix64(DeriveSeed(SeedContext{std::string(tag), "", "", 0, seed,
                                           std::nullopt}));
}

int UniformAction(SplitMix64& rng, int num_actions) {
  const int a = static_cast<int>(rng.NextUnit() * num_actions);
  return a < num_actions ? a : num_actions - 1;
}

}  // namespace

TabularMdp GenerateMdp(const SyntheticSpec& spec) {
  spec.Validate();
  const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;
  SplitMix64 rng = TaggedStream("synthetic-mdp", spec.generator_seed);
  const std::size_t row_len = static_cast<std::size_t>(S) + 1;
  std::vector<double> transitions(static_cast<std::size_t>(H) * S * A * row_len,
                                  0.0);
  for (int t = 1; t <= H; ++t) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        double* row = &transitions[((static_cast<std::size_t>(t - 1) * S + s) * A + a) *
                                   row_len];
        if (t == H) {
          row[S] = 1.0;
          continue;
        }
        double total = 0.0;
        for (int k = 0; k < S; ++k) {
          row[k] = rng.NextUnit();
          total += row[k];
        }
        if (total <= 0.0) {
          row[s] = 1.0;  // all-zero draw; probability 2^-53S
          continue;
        }
        for (int k = 0; k < S; ++k) row[k] /= total;
      }
    }
  }
  std::vector<double> rewards(static_cast<std::size_t>(H) * S * A);
  for (double& r : rewards) r = rng.NextUnit();
  return TabularMdp(S, A, H, /*start_state=*/0, std::move(transitions),
                    std::move(rewards));
}

std::vector<Policy> GenerateAgreeingPolicies(const SyntheticSpec& spec, int m,
                                             int depth,
                                             std::uint64_t generator_seed) {
  spec.Validate();
  if (m < 1) throw ConfigError("need at least one policy");
  if (depth < 0 || depth > spec.horizon) {
    throw ConfigError("agreement depth must lie in [0, H]");
  }
  const int S = spec.num_states, A = spec.num_actions, H = spec.horizon;
  SplitMix64 rng = TaggedStream("synthetic-policies", generator_seed);

  const std::size_t prefix_len = static_cast<std::size_t>(S) * depth;
  std::vector<int> suffix(static_cast<std::size_t>(S) * (H - depth));
  for (int& a : suffix) a = UniformAction(rng, A);

  // Distinct prefixes are possible iff m <= A^(S d).
  const double log_count = static_cast<double>(prefix_len) * std::log(A);
  const bool distinct = log_count >= std::log(static_cast<double>(m)) - 1e-9;
  if (!distinct) {
    log::Warn("only " + std::to_string(A) + "^" + std::to_string(prefix_len) +
              " distinct prefixes exist for " + std::to_string(m) +
              " policies; duplicates allowed");
  }

  std::set<std::vector<int>> seen;
  std::vector<Policy> policies;
  policies.reserve(m);
  while (static_cast<int>(policies.size()) < m) {
    std::vector<int> prefix(prefix_len);
    for (int& a : prefix) a = UniformAction(rng, A);
    if (distinct && !seen.insert(prefix).second) continue;
    std::vector<int> actions = prefix;
    actions.insert(actions.end(), suffix.begin(), suffix.end());
    policies.emplace_back(S, A, H, std::move(actions));
  }
  return policies;
}

}  // namespace crn
