#include "crn/seeding.h"

#include <charconv>

#include "crn/distribution.h"
#include "crn/errors.h"

namespace crn {

SeedScheme SeedScheme::DepthDependent(int depth) {
  if (depth < 0) throw ConfigError("depth-dependent depth must be >= 0");
  return SeedScheme(Kind::kDepthDependent, depth);
}

SeedScheme SeedScheme::Parse(std::string_view text, int default_depth) {
  if (text == "independent") return Independent();
  if (text == "dependent") return Dependent();
  constexpr std::string_view kDepth = "depth-dependent";
  if (text == kDepth) return DepthDependent(default_depth);
  if (text.starts_with(kDepth) && text.size() > kDepth.size() + 1 &&
      text[kDepth.size()] == ':') {
    const std::string_view digits = text.substr(kDepth.size() + 1);
    int depth = 0;
    const auto [end, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), depth);
    if (ec == std::errc() && end == digits.data() + digits.size()) {
      return DepthDependent(depth);
    }
  }
  throw ConfigError("unknown seeding scheme '" + std::string(text) + "'");
}

std::string SeedScheme::ToString() const {
  if (kind_ == Kind::kDepthDependent) {
    return "depth-dependent:" + std::to_string(depth_);
  }
  return std::string(Name());
}

std::string_view SeedScheme::Name() const {
  switch (kind_) {
    case Kind::kIndependent:
      return "independent";
    case Kind::kDependent:
      return "dependent";
    case Kind::kDepthDependent:
      return "depth-dependent";
  }
  return "unknown";
}

std::string SeedKey(const SeedContext& context) {
  std::string key = context.run_salt;
  key += kFieldSeparator;
  key += context.state_key;
  key += kFieldSeparator;
  key += context.action_key;
  key += kFieldSeparator;
  key += std::to_string(context.time);
  key += kFieldSeparator;
  key += std::to_string(context.simulation_index);
  if (context.policy_key) {
    key += kFieldSeparator;
    key += *context.policy_key;
  }
  return key;
}

std::uint64_t DeriveSeed(const SeedContext& context) {
  return Fnv1a64Hash(SeedKey(context));
}

SeedDeriver::SeedDeriver(std::string_view run_salt) {
  prefix_.Update(run_salt);
  prefix_.Update(kFieldSeparator);
}

namespace {

std::uint64_t Finish(Fnv1a64 h, std::int64_t time,
                     std::uint64_t simulation_index,
                     const std::string_view* policy_key) {
  h.UpdateDecimal(time);
  h.Update(kFieldSeparator);
  h.UpdateDecimal(simulation_index);
  if (policy_key != nullptr) {
    h.Update(kFieldSeparator);
    h.Update(*policy_key);
  }
  return h.digest();
}

}  // namespace

std::uint64_t SeedDeriver::Derive(std::string_view state_key,
                                  std::string_view action_key,
                                  std::int64_t time,
                                  std::uint64_t simulation_index,
                                  const std::string_view* policy_key) const {
  Fnv1a64 h = prefix_;
  h.Update(state_key);
  h.Update(kFieldSeparator);
  h.Update(action_key);
  h.Update(kFieldSeparator);
  return Finish(h, time, simulation_index, policy_key);
}

std::uint64_t SeedDeriver::Derive(std::int64_t state, std::int64_t action,
                                  std::int64_t time,
                                  std::uint64_t simulation_index,
                                  const std::string_view* policy_key) const {
  Fnv1a64 h = prefix_;
  h.UpdateDecimal(state);
  h.Update(kFieldSeparator);
  h.UpdateDecimal(action);
  h.Update(kFieldSeparator);
  return Finish(h, time, simulation_index, policy_key);
}

std::uint64_t SeedDeriver::Derive(std::string_view state_key,
                                  std::int64_t action, std::int64_t time,
                                  std::uint64_t simulation_index,
                                  const std::string_view* policy_key) const {
  Fnv1a64 h = prefix_;
  h.Update(state_key);
  h.Update(kFieldSeparator);
  h.UpdateDecimal(action);
  h.Update(kFieldSeparator);
  return Finish(h, time, simulation_index, policy_key);
}

int NextState(std::span<const double> distribution, std::uint64_t seed) {
  return InverseCdf(distribution, ToUnit(FirstDraw(seed)));
}

namespace {

void CheckEvaluateArgs(const TabularMdp& mdp, const Policy& policy,
                       const SeedScheme& scheme) {
  if (!policy.Fits(mdp)) throw ConfigError("policy shape does not match the MDP");
  if (scheme.kind() == SeedScheme::Kind::kDepthDependent &&
      scheme.depth() > mdp.horizon()) {
    throw ConfigError("depth-dependent depth exceeds the horizon");
  }
}

template <typename OnStep>
double RunForward(const TabularMdp& mdp, const Policy& policy,
                  const SeedScheme& scheme, std::uint64_t simulation_index,
                  const SeedDeriver& deriver, OnStep&& on_step) {
  const std::string_view key = policy.key();
  int s = mdp.start_state();
  double total = 0.0;
  for (int t = 1; t <= mdp.horizon(); ++t) {
    const int a = policy.action(s, t);
    const double r = mdp.reward(s, a, t);
    total += r;
    const std::uint64_t seed = deriver.Derive(
        s, a, t, simulation_index, scheme.IncludesPolicyKey(t) ? &key : nullptr);
    on_step(s, a, r, seed);
    s = NextState(mdp.transition(s, a, t), seed);
  }
  return total;
}

}  // namespace

EpisodeRecord Evaluate(const TabularMdp& mdp, const Policy& policy,
                       const SeedScheme& scheme, std::uint64_t simulation_index,
                       std::string_view run_salt) {
  CheckEvaluateArgs(mdp, policy, scheme);
  EpisodeRecord record;
  record.steps.reserve(mdp.horizon());
  const SeedDeriver deriver(run_salt);
  record.total_return =
      RunForward(mdp, policy, scheme, simulation_index, deriver,
                 [&](int s, int a, double r, std::uint64_t seed) {
                   record.steps.push_back(
                       {static_cast<std::uint64_t>(s), a, r, seed});
                 });
  return record;
}

double EvaluateReturn(const TabularMdp& mdp, const Policy& policy,
                      const SeedScheme& scheme, std::uint64_t simulation_index,
                      const SeedDeriver& deriver) {
  CheckEvaluateArgs(mdp, policy, scheme);
  return RunForward(mdp, policy, scheme, simulation_index, deriver,
                    [](int, int, double, std::uint64_t) {});
}

std::uint64_t SeededChance::Seed(std::string_view state_key,
                                 std::string_view action_key) {
  return deriver_.Derive(state_key, action_key, time_, simulation_index_, key());
}

std::uint64_t SeededChance::Seed(std::string_view state_key,
                                 std::int64_t action) {
  return deriver_.Derive(state_key, action, time_, simulation_index_, key());
}

std::uint64_t SeededChance::Seed(std::int64_t state, std::int64_t action) {
  return deriver_.Derive(state, action, time_, simulation_index_, key());
}

}  // namespace crn
