#ifndef CRN_MDP_H_
#define CRN_MDP_H_

// Finite-horizon tabular MDPs (S, A, P, R, H, s1), exact policy evaluation by
// backward induction, and the "backward process" that samples a deterministic
// MDP M' ~ M.
//
// Conventions used throughout the library:
//   * states are 0..S-1 and the terminal sink is state S;
//   * time steps are 1-based, t in [1, H];
//   * every transition from t = H lands on the sink, and no transition from
//     t < H may.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "crn/random.h"

namespace crn {

class TabularMdp {
 public:
  // Tolerance on a row's total mass. Rows within kRenormalizeTolerance of 1
  // are rescaled; anything further off is rejected.
  static constexpr double kRowTolerance = 1e-12;
  static constexpr double kRenormalizeTolerance = 1e-9;

  // `transitions` is dense over (t, s, a, s') with s' in [0, S], row-major in
  // that order; `rewards` is dense over (t, s, a). Throws ConfigError if
  // any invariant fails.
  TabularMdp(int num_states, int num_actions, int horizon, int start_state,
             std::vector<double> transitions, std::vector<double> rewards);

  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int horizon() const { return horizon_; }
  int start_state() const { return start_state_; }
  int terminal_state() const { return num_states_; }

  // Distribution P(s, a, t, .) over S + 1 entries (last is the sink).
  std::span<const double> transition(int state, int action, int time) const;
  double reward(int state, int action, int time) const {
    return rewards_[RowIndex(state, action, time)];
  }

  bool is_deterministic() const;
  // Successor of a point-mass row. Throws ConfigError if the row is not one.
  int successor(int state, int action, int time) const;

  bool SameShape(const TabularMdp& other) const;

  const std::vector<double>& transitions() const { return transitions_; }
  const std::vector<double>& rewards() const { return rewards_; }

  friend bool operator==(const TabularMdp&, const TabularMdp&) = default;

 private:
  std::size_t RowIndex(int state, int action, int time) const {
    return (static_cast<std::size_t>(time - 1) * num_states_ + state) *
               num_actions_ +
           action;
  }

  int num_states_;
  int num_actions_;
  int horizon_;
  int start_state_;
  std::vector<double> transitions_;
  std::vector<double> rewards_;
};

// Incremental construction of a TabularMdp. Rows at t = H default to the sink;
// rows at t < H default to a self-loop; rewards default to 0.
class MdpBuilder {
 public:
  MdpBuilder(int num_states, int num_actions, int horizon, int start_state);

  MdpBuilder& SetTransition(int state, int action, int time,
                            std::span<const double> distribution_over_states);
  MdpBuilder& SetSuccessor(int state, int action, int time, int next_state);
  MdpBuilder& SetReward(int state, int action, int time, double reward);

  TabularMdp Build() const;

 private:
  std::size_t RowIndex(int state, int action, int time) const;
  void CheckIndex(int state, int action, int time) const;

  int num_states_;
  int num_actions_;
  int horizon_;
  int start_state_;
  std::vector<double> transitions_;
  std::vector<double> rewards_;
};

// Deterministic time-dependent policy pi: S x [H] -> A.
class Policy {
 public:
  // `actions` is dense over (t, s), row-major.
  Policy(int num_states, int num_actions, int horizon, std::vector<int> actions);
  static Policy Constant(int num_states, int num_actions, int horizon,
                         int action);

  int action(int state, int time) const {
    return actions_[static_cast<std::size_t>(time - 1) * num_states_ + state];
  }
  int num_states() const { return num_states_; }
  int num_actions() const { return num_actions_; }
  int horizon() const { return horizon_; }
  const std::vector<int>& actions() const { return actions_; }

  // Action table as text: one comma-separated row per time step, rows
  // separated by ';'.
  std::string CanonicalString() const;
  // Seed key identifying this policy: "pi:" followed by the 16 hex digits of
  // FNV-1a over CanonicalString(). Computed once at construction.
  const std::string& key() const { return key_; }

  bool Fits(const TabularMdp& mdp) const;

  friend bool operator==(const Policy& a, const Policy& b) {
    return a.num_states_ == b.num_states_ && a.num_actions_ == b.num_actions_ &&
           a.horizon_ == b.horizon_ && a.actions_ == b.actions_;
  }

 private:
  int num_states_;
  int num_actions_;
  int horizon_;
  std::vector<int> actions_;
  std::string key_;
};

// V(s, t) for t in [1, H + 1]; V(., H + 1) = 0.
class ValueTable {
 public:
  ValueTable(int num_states, int horizon);

  double value(int state, int time) const {
    return values_[static_cast<std::size_t>(time - 1) * num_states_ + state];
  }
  double& value(int state, int time) {
    return values_[static_cast<std::size_t>(time - 1) * num_states_ + state];
  }
  int num_states() const { return num_states_; }
  int horizon() const { return horizon_; }

 private:
  int num_states_;
  int horizon_;
  std::vector<double> values_;
};

// Backward induction of the Bellman recursion for a fixed policy.
ValueTable ExactValue(const TabularMdp& mdp, const Policy& policy);

// U(pi, M) = V(s1, 1).
double Utility(const TabularMdp& mdp, const Policy& policy);

// next(s, a, t) for every (s, a, t), dense over (t, s, a). This is the compact
// form of a deterministic MDP sampled from M.
struct SuccessorTable {
  int num_states = 0;
  int num_actions = 0;
  int horizon = 0;
  std::vector<int> next;

  int at(int state, int action, int time) const {
    return next[(static_cast<std::size_t>(time - 1) * num_states + state) *
                    num_actions +
                action];
  }
};

// Draws next(s, a, t) ~ P(s, a, t, .) for every (s, a, t) in (t, s, a) order,
// one generator draw per entry, including unreachable entries.
SuccessorTable SampleSuccessors(const TabularMdp& mdp, SplitMix64& rng);

// M' ~ M as a full TabularMdp with point-mass rows.
TabularMdp SampleDeterministic(const TabularMdp& mdp, SplitMix64& rng);
TabularMdp ToDeterministicMdp(const TabularMdp& mdp,
                              const SuccessorTable& successors);

// U(pi, M') for M' given by `successors` and rewards of `mdp`: the return of
// the single trajectory from s1.
double UtilityOnSuccessors(const TabularMdp& mdp,
                           const SuccessorTable& successors,
                           const Policy& policy);

// M2(1:d) . M1(d+1:H): rows t <= d from m2, rows t > d from m1.
TabularMdp SpliceMdps(const TabularMdp& m2, const TabularMdp& m1, int depth);
SuccessorTable SpliceSuccessors(const SuccessorTable& m2,
                                const SuccessorTable& m1, int depth);

// True iff p1(s, t) == p2(s, t) for all s and all t in [d + 1, H].
bool PoliciesAgreeAfter(const Policy& p1, const Policy& p2, int depth);

// Plain-text tabular format; see docs/formats.md.
void WriteMdp(std::ostream& out, const TabularMdp& mdp);
TabularMdp ReadMdp(std::istream& in);

void WritePolicy(std::ostream& out, const Policy& policy);
Policy ReadPolicy(std::istream& in);

}  // namespace crn

#endif  // CRN_MDP_H_
