#include "crn/uct.h"

#include <numeric>

namespace crn {

std::vector<int> TabularEnvironment::LegalActions(const State& state) const {
  if (IsTerminal(state)) return {};
  std::vector<int> actions(static_cast<std::size_t>(mdp_.num_actions()));
  std::iota(actions.begin(), actions.end(), 0);
  return actions;
}

StepResult<TabularEnvironment::State> TabularEnvironment::Step(
    const State& state, int action, ChanceSource& chance) const {
  if (IsTerminal(state)) throw TerminalStateError("step from a terminal state");
  if (action < 0 || action >= mdp_.num_actions()) {
    throw ConfigError("action out of range");
  }
  const double reward = mdp_.reward(state.s, action, state.t);
  const int next =
      NextState(mdp_.transition(state.s, action, state.t), chance.Seed(state.s, action));
  const State next_state{next, state.t + 1};
  return {next_state, reward, IsTerminal(next_state)};
}

}  // namespace crn
