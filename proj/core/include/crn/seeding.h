#ifndef CRN_SEEDING_H_
#define CRN_SEEDING_H_

// Seed derivation for common random numbers.
//
// Every random outcome in a simulation is produced from a seed derived from
// the string key
//
//   run_salt US state US action US time US simulation_index [US policy_key]
//
// (US = 0x1F), hashed with 64-bit FNV-1a. The outcome consumes exactly one
// splitmix64 draw from that seed. Whether policy_key is part of the key is
// what distinguishes the independent, dependent and depth-dependent regimes:
// the key is included for every step under Independent, never under
// Dependent, and only for steps t <= d under DepthDependent(d).

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "crn/mdp.h"
#include "crn/random.h"

namespace crn {

inline constexpr char kFieldSeparator = '\x1f';

class SeedScheme {
 public:
  enum class Kind { kIndependent, kDependent, kDepthDependent };

  static SeedScheme Independent() { return SeedScheme(Kind::kIndependent, 0); }
  static SeedScheme Dependent() { return SeedScheme(Kind::kDependent, 0); }
  static SeedScheme DepthDependent(int depth);

  // Accepts "independent", "dependent", "depth-dependent:<d>", and
  // "depth-dependent" (which takes `default_depth`). Throws ConfigError.
  static SeedScheme Parse(std::string_view text, int default_depth = 0);

  Kind kind() const { return kind_; }
  int depth() const { return depth_; }

  // Whether the policy key enters the seed at 1-based step `step` (counted
  // from the point where the compared policies start).
  bool IncludesPolicyKey(int step) const {
    return kind_ == Kind::kIndependent ||
           (kind_ == Kind::kDepthDependent && step <= depth_);
  }

  // "independent", "dependent" or "depth-dependent:<d>".
  std::string ToString() const;
  // "independent", "dependent" or "depth-dependent"; used in CSV output.
  std::string_view Name() const;

  friend bool operator==(const SeedScheme&, const SeedScheme&) = default;

 private:
  SeedScheme(Kind kind, int depth) : kind_(kind), depth_(depth) {}

  Kind kind_;
  int depth_;
};

struct SeedContext {
  std::string run_salt;
  std::string state_key;
  std::string action_key;
  std::int64_t time = 0;
  std::uint64_t simulation_index = 0;
  std::optional<std::string> policy_key;
};

// The exact key string hashed by DeriveSeed.
std::string SeedKey(const SeedContext& context);
std::uint64_t DeriveSeed(const SeedContext& context);

// DeriveSeed with the salt prefix hashed once. Produces identical seeds to
// DeriveSeed for identical field values; integer overloads feed the decimal
// rendering without allocating.
class SeedDeriver {
 public:
  explicit SeedDeriver(std::string_view run_salt);

  std::uint64_t Derive(std::string_view state_key, std::string_view action_key,
                       std::int64_t time, std::uint64_t simulation_index,
                       const std::string_view* policy_key) const;
  std::uint64_t Derive(std::int64_t state, std::int64_t action,
                       std::int64_t time, std::uint64_t simulation_index,
                       const std::string_view* policy_key) const;
  std::uint64_t Derive(std::string_view state_key, std::int64_t action,
                       std::int64_t time, std::uint64_t simulation_index,
                       const std::string_view* policy_key) const;

 private:
  Fnv1a64 prefix_;
};

// Inverse-CDF sample of `distribution` from one splitmix64 draw of `seed`.
int NextState(std::span<const double> distribution, std::uint64_t seed);

struct EpisodeStep {
  std::uint64_t state = 0;
  int action = 0;
  double reward = 0.0;
  std::uint64_t seed = 0;
};

struct EpisodeRecord {
  std::vector<EpisodeStep> steps;
  double total_return = 0.0;
};

// The forward process for one simulation of `policy` under `scheme`. The
// policy key used is policy.key(). Throws ConfigError on shape mismatch or
// a depth-dependent depth outside [0, H].
EpisodeRecord Evaluate(const TabularMdp& mdp, const Policy& policy,
                       const SeedScheme& scheme, std::uint64_t simulation_index,
                       std::string_view run_salt);

// Same as Evaluate, returning only the total return.
double EvaluateReturn(const TabularMdp& mdp, const Policy& policy,
                      const SeedScheme& scheme, std::uint64_t simulation_index,
                      const SeedDeriver& deriver);

// Source of seeds for environment randomness inside a simulator step. The
// caller (a planner or an episode runner) decides which context fields are
// bound; the environment only names the quantity being drawn.
class ChanceSource {
 public:
  virtual ~ChanceSource() = default;
  virtual std::uint64_t Seed(std::string_view state_key,
                             std::string_view action_key) = 0;
  virtual std::uint64_t Seed(std::string_view state_key, std::int64_t action) = 0;
  virtual std::uint64_t Seed(std::int64_t state, std::int64_t action) = 0;

  double Uniform(std::string_view state_key, std::int64_t action) {
    return ToUnit(FirstDraw(Seed(state_key, action)));
  }
  double Uniform(std::int64_t state, std::int64_t action) {
    return ToUnit(FirstDraw(Seed(state, action)));
  }
};

// Scheme-aware seeds for planning simulations: the salt, simulation index,
// time and (optionally) the policy key are bound by the planner before each
// simulated step.
class SeededChance final : public ChanceSource {
 public:
  explicit SeededChance(std::string_view run_salt) : deriver_(run_salt) {}

  void Bind(std::int64_t time, std::uint64_t simulation_index,
            std::optional<std::string_view> policy_key) {
    time_ = time;
    simulation_index_ = simulation_index;
    policy_key_ = policy_key.value_or(std::string_view());
    has_policy_key_ = policy_key.has_value();
  }

  std::uint64_t Seed(std::string_view state_key,
                     std::string_view action_key) override;
  std::uint64_t Seed(std::string_view state_key, std::int64_t action) override;
  std::uint64_t Seed(std::int64_t state, std::int64_t action) override;

 private:
  const std::string_view* key() const {
    return has_policy_key_ ? &policy_key_ : nullptr;
  }

  SeedDeriver deriver_;
  std::int64_t time_ = 0;
  std::uint64_t simulation_index_ = 0;
  std::string_view policy_key_;
  bool has_policy_key_ = false;
};

// Fresh, non-shared randomness (the "real" environment): each call returns
// the next value of a splitmix64 stream and ignores the key fields.
class StreamChance final : public ChanceSource {
 public:
  explicit StreamChance(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t Seed(std::string_view, std::string_view) override { return rng_(); }
  std::uint64_t Seed(std::string_view, std::int64_t) override { return rng_(); }
  std::uint64_t Seed(std::int64_t, std::int64_t) override { return rng_(); }

 private:
  SplitMix64 rng_;
};

}  // namespace crn

#endif  // CRN_SEEDING_H_
