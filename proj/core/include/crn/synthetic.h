#ifndef CRN_SYNTHETIC_H_
#define CRN_SYNTHETIC_H_

// Random tabular MDPs and sets of policies that agree after a given depth.

#include <cstdint>
#include <vector>

#include "crn/mdp.h"

namespace crn {

struct SyntheticSpec {
  int num_states = 7;
  int num_actions = 4;
  int horizon = 20;
  std::uint64_t generator_seed = 0;

  void Validate() const;  // throws ConfigError
};

// Rewards i.i.d. U[0, 1]; transition rows i.i.d. U[0, 1] then normalised;
// rows at t = H go to the sink. Draws come from a splitmix64 stream seeded by
// DeriveSeed({"synthetic-mdp", "", "", 0, generator_seed}): first all
// transition entries in (t, s, a, s') order for t < H, then all rewards in
// (t, s, a) order.
TabularMdp GenerateMdp(const SyntheticSpec& spec);

// m policies sharing one random suffix (t > d) with independent random
// prefixes (t <= d). Prefixes are redrawn until pairwise distinct when
// m <= |A|^(|S| d); otherwise duplicates are allowed and a warning is logged.
// The stream is seeded from the "synthetic-policies" tag, separate from the
// MDP stream. Throws ConfigError if m < 1 or d is outside [0, H].
std::vector<Policy> GenerateAgreeingPolicies(const SyntheticSpec& spec, int m,
                                             int depth,
                                             std::uint64_t generator_seed);

}  // namespace crn

#endif  // CRN_SYNTHETIC_H_
