#ifndef CRN_UCT_H_
#define CRN_UCT_H_

// Depth-limited UCT with scheme-controlled seeding.
//
// The tree holds decision nodes down to depth `depth_limit` (the root is at
// depth 1) and a chance node under every (decision node, action) pair, whose
// children are keyed by the sampled outcome. Below the depth limit a
// uniform-random rollout plays to the end of the episode.
//
// Seeding. Simulation j of root action a uses simulation index j, i.e. the
// j-th visit to each root action is paired with the j-th visit to every
// other. Every environment draw at relative depth k (k = 1 for the root
// transition) is made with time = root_time + k - 1 and carries the policy
// key "a" (the root action) iff scheme.IncludesPolicyKey(k).
//
// An environment type E must provide:
//
//   using State = ...;
//   std::vector<int> LegalActions(const State&) const;   // sorted, may be empty
//   bool IsTerminal(const State&) const;
//   StepResult<State> Step(const State&, int action, ChanceSource&) const;
//   std::uint64_t OutcomeId(const State&) const;         // chance-node key
//   std::string StateKey(const State&) const;            // key for rollout draws

#include <cmath>
#include <concepts>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crn/errors.h"
#include "crn/planner.h"
#include "crn/seeding.h"

namespace crn {

template <typename State>
struct StepResult {
  State next;
  double reward = 0.0;
  bool terminal = false;
};

template <typename E>
concept PlanningEnvironment = requires(const E& env, const typename E::State& s,
                                       int a, ChanceSource& chance) {
  { env.LegalActions(s) } -> std::convertible_to<std::vector<int>>;
  { env.IsTerminal(s) } -> std::convertible_to<bool>;
  { env.Step(s, a, chance) } -> std::same_as<StepResult<typename E::State>>;
  { env.OutcomeId(s) } -> std::convertible_to<std::uint64_t>;
  { env.StateKey(s) } -> std::convertible_to<std::string>;
};

struct UctRootStats {
  int action = 0;
  std::vector<int> actions;       // legal root actions
  std::vector<int> visits;        // per legal root action
  std::vector<double> means;      // per legal root action
  int root_visits = 0;
  bool searched = false;          // false when a single legal action was forced
};

namespace internal {

// Index of the uniform choice among `count` options from one seed.
inline int UniformIndex(std::uint64_t seed, std::size_t count) {
  const auto k = static_cast<std::size_t>(ToUnit(FirstDraw(seed)) *
                                          static_cast<double>(count));
  return static_cast<int>(k < count ? k : count - 1);
}

template <PlanningEnvironment E>
class UctSearch {
 public:
  using State = typename E::State;

  UctSearch(const E& env, const PlanningConfig& config, std::int64_t root_time,
            std::string_view run_salt)
      : env_(env), config_(config), root_time_(root_time), chance_(run_salt) {}

  UctRootStats Run(const State& root) {
    UctRootStats stats;
    stats.actions = env_.LegalActions(root);
    if (stats.actions.empty()) {
      throw TerminalStateError("no legal actions at the planning root");
    }
    if (stats.actions.size() == 1) {
      stats.action = stats.actions.front();
      stats.visits = {0};
      stats.means = {0.0};
      return stats;
    }
    stats.searched = true;
    nodes_.clear();
    nodes_.push_back(MakeDecision(root, stats.actions));
    std::vector<std::string> root_keys;
    for (int a : stats.actions) root_keys.push_back(std::to_string(a));
    for (int sim = 0; sim < config_.num_simulations; ++sim) {
      const int slot = SelectSlot(0);
      Edge& edge = nodes_[0].edges[slot];
      // The j-th visit to this root action is simulation j.
      const std::uint64_t index = static_cast<std::uint64_t>(edge.visits) + 1;
      const std::string_view key = root_keys[slot];
      Simulate(0, slot, root, 1, index, key);
    }
    stats.root_visits = nodes_[0].visits;
    int best = 0;
    double best_mean = 0.0;
    for (std::size_t i = 0; i < stats.actions.size(); ++i) {
      const Edge& e = nodes_[0].edges[i];
      const double mean = e.visits > 0 ? e.total / e.visits : 0.0;
      stats.visits.push_back(e.visits);
      stats.means.push_back(mean);
      if (i == 0 || mean > best_mean) {
        best = static_cast<int>(i);
        best_mean = mean;
      }
    }
    stats.action = stats.actions[best];
    return stats;
  }

 private:
  struct Edge {
    int action = 0;
    int visits = 0;
    double total = 0.0;
    // Chance node: decision children keyed by outcome id.
    std::vector<std::pair<std::uint64_t, int>> children;
  };
  struct Decision {
    State state;
    int visits = 0;
    std::vector<Edge> edges;
  };

  Decision MakeDecision(const State& state, const std::vector<int>& actions) {
    Decision node{state, 0, {}};
    node.edges.reserve(actions.size());
    for (int a : actions) node.edges.push_back(Edge{a, 0, 0.0, {}});
    return node;
  }

  int SelectSlot(int node_index) const {
    const Decision& node = nodes_[node_index];
    for (std::size_t i = 0; i < node.edges.size(); ++i) {
      if (node.edges[i].visits == 0) return static_cast<int>(i);
    }
    const double log_n = std::log(static_cast<double>(node.visits));
    int best = 0;
    double best_score = 0.0;
    for (std::size_t i = 0; i < node.edges.size(); ++i) {
      const Edge& e = node.edges[i];
      const double score =
          e.total / e.visits +
          config_.exploration_constant * std::sqrt(log_n / e.visits);
      if (i == 0 || score > best_score) {
        best = static_cast<int>(i);
        best_score = score;
      }
    }
    return best;
  }

  void Bind(int depth, std::uint64_t index, std::string_view key) {
    chance_.Bind(root_time_ + depth - 1, index,
                 config_.scheme.IncludesPolicyKey(depth)
                     ? std::optional<std::string_view>(key)
                     : std::nullopt);
  }

  // Takes edge `slot` of decision node `node_index` (holding `state` at
  // relative depth `depth`) and returns the sampled return from there on.
  double Simulate(int node_index, int slot, const State& state, int depth,
                  std::uint64_t index, std::string_view key) {
    const int action = nodes_[node_index].edges[slot].action;
    Bind(depth, index, key);
    StepResult<State> step = env_.Step(state, action, chance_);
    double value = step.reward;
    if (!step.terminal && !env_.IsTerminal(step.next)) {
      if (depth + 1 <= config_.depth_limit) {
        std::vector<int> actions = env_.LegalActions(step.next);
        if (!actions.empty()) {
          const int child = ChildFor(node_index, slot, step.next, actions);
          const int child_slot = SelectSlot(child);
          value += Simulate(child, child_slot, step.next, depth + 1, index, key);
        }
      } else {
        value += Rollout(step.next, depth + 1, index, key);
      }
    }
    Decision& node = nodes_[node_index];
    ++node.visits;
    ++node.edges[slot].visits;
    node.edges[slot].total += value;
    return value;
  }

  int ChildFor(int node_index, int slot, const State& next,
               const std::vector<int>& actions) {
    const std::uint64_t id = env_.OutcomeId(next);
    for (const auto& [outcome, child] : nodes_[node_index].edges[slot].children) {
      if (outcome == id) return child;
    }
    const int child = static_cast<int>(nodes_.size());
    nodes_.push_back(MakeDecision(next, actions));
    nodes_[node_index].edges[slot].children.emplace_back(id, child);
    return child;
  }

  double Rollout(State state, int depth, std::uint64_t index,
                 std::string_view key) {
    double value = 0.0;
    for (;;) {
      if (env_.IsTerminal(state)) break;
      const std::vector<int> actions = env_.LegalActions(state);
      if (actions.empty()) break;
      Bind(depth, index, key);
      const std::uint64_t seed = chance_.Seed(env_.StateKey(state), "rollout");
      const int action = actions[UniformIndex(seed, actions.size())];
      StepResult<State> step = env_.Step(state, action, chance_);
      value += step.reward;
      if (step.terminal) break;
      state = std::move(step.next);
      ++depth;
    }
    return value;
  }

  const E& env_;
  const PlanningConfig& config_;
  std::int64_t root_time_;
  SeededChance chance_;
  std::vector<Decision> nodes_;
};

}  // namespace internal

// Root statistics of one UCT search from `root`, whose time step is
// `root_time`. Throws TerminalStateError when `root` has no legal action.
template <PlanningEnvironment E>
UctRootStats UctSearchRoot(const E& env, const typename E::State& root,
                           std::int64_t root_time, const PlanningConfig& config,
                           std::string_view run_salt) {
  config.Validate();
  internal::UctSearch<E> search(env, config, root_time, run_salt);
  return search.Run(root);
}

// The root action with the highest mean value (lowest index on ties).
template <PlanningEnvironment E>
int UctPlan(const E& env, const typename E::State& root, std::int64_t root_time,
            const PlanningConfig& config, std::string_view run_salt) {
  return UctSearchRoot(env, root, root_time, config, run_salt).action;
}

// Plays one episode from `start`, replanning with UCT at every step. The
// executed transitions draw from `real`, never from the planning seeds.
// Planning at decision k (1-based) uses the salt run_salt + "/decision/" + k.
template <PlanningEnvironment E>
EpisodeRecord RunEpisodeWithPlanner(const E& env,
                                    const typename E::State& start,
                                    std::int64_t start_time,
                                    const PlanningConfig& config,
                                    std::string_view run_salt,
                                    ChanceSource& real) {
  config.Validate();
  EpisodeRecord record;
  typename E::State state = start;
  std::int64_t time = start_time;
  for (std::int64_t decision = 1; !env.IsTerminal(state); ++decision, ++time) {
    const std::vector<int> actions = env.LegalActions(state);
    if (actions.empty()) break;
    const std::string salt =
        std::string(run_salt) + "/decision/" + std::to_string(decision);
    const int action = UctPlan(env, state, time, config, salt);
    StepResult<typename E::State> step = env.Step(state, action, real);
    record.steps.push_back({env.OutcomeId(state), action, step.reward, 0});
    record.total_return += step.reward;
    if (step.terminal) break;
    state = std::move(step.next);
  }
  return record;
}

// A TabularMdp as a planning environment. States are (s, t); the draw for
// (s, a) at time t uses the same seed Evaluate would, so a one-step search
// reproduces forward-process seeding exactly.
class TabularEnvironment {
 public:
  struct State {
    int s = 0;
    int t = 1;
    friend bool operator==(const State&, const State&) = default;
  };

  explicit TabularEnvironment(const TabularMdp& mdp) : mdp_(mdp) {}

  State Initial() const { return State{mdp_.start_state(), 1}; }
  std::vector<int> LegalActions(const State& state) const;
  bool IsTerminal(const State& state) const {
    return state.t > mdp_.horizon() || state.s == mdp_.terminal_state();
  }
  StepResult<State> Step(const State& state, int action,
                         ChanceSource& chance) const;
  std::uint64_t OutcomeId(const State& state) const {
    return static_cast<std::uint64_t>(state.s);
  }
  std::string StateKey(const State& state) const {
    return std::to_string(state.s);
  }

  const TabularMdp& mdp() const { return mdp_; }

 private:
  const TabularMdp& mdp_;
};

}  // namespace crn

#endif  // CRN_UCT_H_
