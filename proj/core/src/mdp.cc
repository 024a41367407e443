#include "crn/mdp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>

#include "crn/distribution.h"
#include "crn/errors.h"

namespace crn {
namespace {

std::string Where(int state, int action, int time) {
  return "(s=" + std::to_string(state) + ", a=" + std::to_string(action) +
         ", t=" + std::to_string(time) + ")";
}

void CheckDims(int num_states, int num_actions, int horizon, int start_state) {
  if (num_states < 1 || num_actions < 1 || horizon < 1) {
    throw ConfigError("MDP dimensions must be positive");
  }
  if (start_state < 0 || start_state >= num_states) {
    throw ConfigError("start state out of range");
  }
}

}  // namespace

TabularMdp::TabularMdp(int num_states, int num_actions, int horizon,
                       int start_state, std::vector<double> transitions,
                       std::vector<double> rewards)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      start_state_(start_state),
      transitions_(std::move(transitions)),
      rewards_(std::move(rewards)) {
  CheckDims(num_states, num_actions, horizon, start_state);
  const std::size_t rows =
      static_cast<std::size_t>(num_states) * num_actions * horizon;
  const std::size_t width = static_cast<std::size_t>(num_states) + 1;
  if (transitions_.size() != rows * width) {
    throw ConfigError("transition table has wrong size");
  }
  if (rewards_.size() != rows) {
    throw ConfigError("reward table has wrong size");
  }
  for (int t = 1; t <= horizon_; ++t) {
    for (int s = 0; s < num_states_; ++s) {
      for (int a = 0; a < num_actions_; ++a) {
        const std::size_t row = RowIndex(s, a, t);
        if (!std::isfinite(rewards_[row])) {
          throw ConfigError("non-finite reward at " + Where(s, a, t));
        }
        double* p = transitions_.data() + row * width;
        double total = 0.0;
        for (std::size_t k = 0; k < width; ++k) {
          if (!std::isfinite(p[k]) || p[k] < 0.0) {
            throw ConfigError("negative or non-finite probability at " +
                              Where(s, a, t));
          }
          total += p[k];
        }
        const double off = std::abs(total - 1.0);
        if (off > kRenormalizeTolerance) {
          throw ConfigError("transition row does not sum to 1 at " +
                            Where(s, a, t));
        }
        if (off > kRowTolerance) {
          for (std::size_t k = 0; k < width; ++k) p[k] /= total;
        }
        const double sink = p[num_states_];
        if (t == horizon_) {
          if (sink != 1.0 && std::abs(sink - 1.0) > kRenormalizeTolerance) {
            throw ConfigError("rows at t = H must lead to the terminal sink " +
                              Where(s, a, t));
          }
          for (std::size_t k = 0; k < width; ++k) p[k] = 0.0;
          p[num_states_] = 1.0;
        } else if (sink != 0.0) {
          throw ConfigError("rows at t < H may not reach the terminal sink " +
                            Where(s, a, t));
        }
      }
    }
  }
}

std::span<const double> TabularMdp::transition(int state, int action,
                                               int time) const {
  const std::size_t width = static_cast<std::size_t>(num_states_) + 1;
  return {transitions_.data() + RowIndex(state, action, time) * width, width};
}

bool TabularMdp::is_deterministic() const {
  for (double p : transitions_) {
    if (p != 0.0 && p != 1.0) return false;
  }
  return true;
}

int TabularMdp::successor(int state, int action, int time) const {
  const auto row = transition(state, action, time);
  for (std::size_t k = 0; k < row.size(); ++k) {
    if (row[k] == 1.0) return static_cast<int>(k);
  }
  throw ConfigError("row is not a point mass at " + Where(state, action, time));
}

bool TabularMdp::SameShape(const TabularMdp& other) const {
  return num_states_ == other.num_states_ &&
         num_actions_ == other.num_actions_ && horizon_ == other.horizon_ &&
         start_state_ == other.start_state_;
}

MdpBuilder::MdpBuilder(int num_states, int num_actions, int horizon,
                       int start_state)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      start_state_(start_state) {
  CheckDims(num_states, num_actions, horizon, start_state);
  const std::size_t rows =
      static_cast<std::size_t>(num_states) * num_actions * horizon;
  transitions_.assign(rows * (num_states + 1), 0.0);
  rewards_.assign(rows, 0.0);
  for (int t = 1; t <= horizon; ++t) {
    for (int s = 0; s < num_states; ++s) {
      for (int a = 0; a < num_actions; ++a) {
        const int target = t == horizon ? num_states : s;
        transitions_[RowIndex(s, a, t) * (num_states + 1) + target] = 1.0;
      }
    }
  }
}

std::size_t MdpBuilder::RowIndex(int state, int action, int time) const {
  return (static_cast<std::size_t>(time - 1) * num_states_ + state) *
             num_actions_ +
         action;
}

void MdpBuilder::CheckIndex(int state, int action, int time) const {
  if (state < 0 || state >= num_states_ || action < 0 ||
      action >= num_actions_ || time < 1 || time > horizon_) {
    throw ConfigError("index out of range " + Where(state, action, time));
  }
}

MdpBuilder& MdpBuilder::SetTransition(
    int state, int action, int time,
    std::span<const double> distribution_over_states) {
  CheckIndex(state, action, time);
  if (time == horizon_) {
    throw ConfigError("rows at t = H are fixed to the terminal sink");
  }
  if (distribution_over_states.size() != static_cast<std::size_t>(num_states_)) {
    throw ConfigError("distribution must have one entry per state");
  }
  double* row = transitions_.data() + RowIndex(state, action, time) * (num_states_ + 1);
  for (int k = 0; k < num_states_; ++k) row[k] = distribution_over_states[k];
  row[num_states_] = 0.0;
  return *this;
}

MdpBuilder& MdpBuilder::SetSuccessor(int state, int action, int time,
                                     int next_state) {
  CheckIndex(state, action, time);
  if (next_state < 0 || next_state >= num_states_) {
    throw ConfigError("successor out of range");
  }
  std::vector<double> row(num_states_, 0.0);
  row[next_state] = 1.0;
  return SetTransition(state, action, time, row);
}

MdpBuilder& MdpBuilder::SetReward(int state, int action, int time,
                                  double reward) {
  CheckIndex(state, action, time);
  rewards_[RowIndex(state, action, time)] = reward;
  return *this;
}

TabularMdp MdpBuilder::Build() const {
  return TabularMdp(num_states_, num_actions_, horizon_, start_state_,
                    transitions_, rewards_);
}

Policy::Policy(int num_states, int num_actions, int horizon,
               std::vector<int> actions)
    : num_states_(num_states),
      num_actions_(num_actions),
      horizon_(horizon),
      actions_(std::move(actions)) {
  if (num_states < 1 || num_actions < 1 || horizon < 1) {
    throw ConfigError("policy dimensions must be positive");
  }
  if (actions_.size() != static_cast<std::size_t>(num_states) * horizon) {
    throw ConfigError("policy table has wrong size");
  }
  for (int a : actions_) {
    if (a < 0 || a >= num_actions) throw ConfigError("policy action out of range");
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(Fnv1a64Hash(CanonicalString())));
  key_ = std::string("pi:") + hex;
}

Policy Policy::Constant(int num_states, int num_actions, int horizon,
                        int action) {
  return Policy(num_states, num_actions, horizon,
                std::vector<int>(static_cast<std::size_t>(num_states) * horizon,
                                 action));
}

std::string Policy::CanonicalString() const {
  std::string out;
  out.reserve(actions_.size() * 3);
  for (int t = 1; t <= horizon_; ++t) {
    if (t > 1) out += ';';
    for (int s = 0; s < num_states_; ++s) {
      if (s > 0) out += ',';
      out += std::to_string(action(s, t));
    }
  }
  return out;
}

bool Policy::Fits(const TabularMdp& mdp) const {
  return num_states_ == mdp.num_states() && horizon_ == mdp.horizon() &&
         num_actions_ <= mdp.num_actions();
}

ValueTable::ValueTable(int num_states, int horizon)
    : num_states_(num_states),
      horizon_(horizon),
      values_(static_cast<std::size_t>(num_states) * (horizon + 1), 0.0) {}

ValueTable ExactValue(const TabularMdp& mdp, const Policy& policy) {
  if (!policy.Fits(mdp)) {
    throw ConfigError("policy shape does not match the MDP");
  }
  const int num_states = mdp.num_states();
  ValueTable v(num_states, mdp.horizon());
  for (int t = mdp.horizon(); t >= 1; --t) {
    for (int s = 0; s < num_states; ++s) {
      const int a = policy.action(s, t);
      const auto row = mdp.transition(s, a, t);
      double expected = 0.0;
      if (t < mdp.horizon()) {
        for (int next = 0; next < num_states; ++next) {
          if (row[next] != 0.0) expected += row[next] * v.value(next, t + 1);
        }
      }
      v.value(s, t) = mdp.reward(s, a, t) + expected;
    }
  }
  return v;
}

double Utility(const TabularMdp& mdp, const Policy& policy) {
  return ExactValue(mdp, policy).value(mdp.start_state(), 1);
}

SuccessorTable SampleSuccessors(const TabularMdp& mdp, SplitMix64& rng) {
  SuccessorTable table{mdp.num_states(), mdp.num_actions(), mdp.horizon(), {}};
  table.next.resize(static_cast<std::size_t>(mdp.num_states()) *
                    mdp.num_actions() * mdp.horizon());
  std::size_t i = 0;
  for (int t = 1; t <= mdp.horizon(); ++t) {
    for (int s = 0; s < mdp.num_states(); ++s) {
      for (int a = 0; a < mdp.num_actions(); ++a) {
        table.next[i++] = InverseCdf(mdp.transition(s, a, t), rng.NextUnit());
      }
    }
  }
  return table;
}

TabularMdp ToDeterministicMdp(const TabularMdp& mdp,
                              const SuccessorTable& successors) {
  if (successors.num_states != mdp.num_states() ||
      successors.num_actions != mdp.num_actions() ||
      successors.horizon != mdp.horizon()) {
    throw ConfigError("successor table shape does not match the MDP");
  }
  const std::size_t width = static_cast<std::size_t>(mdp.num_states()) + 1;
  std::vector<double> transitions(successors.next.size() * width, 0.0);
  for (std::size_t row = 0; row < successors.next.size(); ++row) {
    transitions[row * width + successors.next[row]] = 1.0;
  }
  return TabularMdp(mdp.num_states(), mdp.num_actions(), mdp.horizon(),
                    mdp.start_state(), std::move(transitions), mdp.rewards());
}

TabularMdp SampleDeterministic(const TabularMdp& mdp, SplitMix64& rng) {
  return ToDeterministicMdp(mdp, SampleSuccessors(mdp, rng));
}

double UtilityOnSuccessors(const TabularMdp& mdp,
                           const SuccessorTable& successors,
                           const Policy& policy) {
  int s = mdp.start_state();
  double total = 0.0;
  for (int t = 1; t <= mdp.horizon(); ++t) {
    const int a = policy.action(s, t);
    total += mdp.reward(s, a, t);
    s = successors.at(s, a, t);
  }
  return total;
}

TabularMdp SpliceMdps(const TabularMdp& m2, const TabularMdp& m1, int depth) {
  if (!m1.SameShape(m2)) throw ConfigError("cannot splice MDPs of different shape");
  if (m1.rewards() != m2.rewards()) {
    throw ConfigError("cannot splice MDPs with different rewards");
  }
  if (depth < 0 || depth > m1.horizon()) throw ConfigError("splice depth out of range");
  const std::size_t prefix = static_cast<std::size_t>(depth) * m1.num_states() *
                             m1.num_actions() * (m1.num_states() + 1);
  std::vector<double> transitions = m1.transitions();
  std::copy(m2.transitions().begin(), m2.transitions().begin() + prefix,
            transitions.begin());
  return TabularMdp(m1.num_states(), m1.num_actions(), m1.horizon(),
                    m1.start_state(), std::move(transitions), m1.rewards());
}

SuccessorTable SpliceSuccessors(const SuccessorTable& m2,
                                const SuccessorTable& m1, int depth) {
  if (m1.num_states != m2.num_states || m1.num_actions != m2.num_actions ||
      m1.horizon != m2.horizon) {
    throw ConfigError("cannot splice successor tables of different shape");
  }
  if (depth < 0 || depth > m1.horizon) throw ConfigError("splice depth out of range");
  SuccessorTable out = m1;
  const std::size_t prefix =
      static_cast<std::size_t>(depth) * m1.num_states * m1.num_actions;
  std::copy(m2.next.begin(), m2.next.begin() + prefix, out.next.begin());
  return out;
}

bool PoliciesAgreeAfter(const Policy& p1, const Policy& p2, int depth) {
  if (p1.num_states() != p2.num_states() || p1.horizon() != p2.horizon()) {
    throw ConfigError("policies have different shapes");
  }
  for (int t = depth + 1; t <= p1.horizon(); ++t) {
    for (int s = 0; s < p1.num_states(); ++s) {
      if (p1.action(s, t) != p2.action(s, t)) return false;
    }
  }
  return true;
}

namespace {

std::string FormatReal(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Next line that is neither blank nor a '#' comment.
bool NextDataLine(std::istream& in, std::string& line, int& line_number) {
  while (std::getline(in, line)) {
    ++line_number;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

[[noreturn]] void Fail(int line_number, const std::string& what) {
  throw ParseError("line " + std::to_string(line_number) + ": " + what);
}

void ExpectEnd(std::istringstream& fields, int line_number) {
  std::string extra;
  if (fields >> extra) Fail(line_number, "unexpected trailing field '" + extra + "'");
}

}  // namespace

void WriteMdp(std::ostream& out, const TabularMdp& mdp) {
  const int S = mdp.num_states(), A = mdp.num_actions(), H = mdp.horizon();
  out << "# crn tabular MDP: 'S A H s1', then 'P s a t p_0 .. p_S' rows "
         "(p_S is the terminal sink), then 'R s a t r' rows\n";
  out << S << ' ' << A << ' ' << H << ' ' << mdp.start_state() << '\n';
  for (int t = 1; t <= H; ++t) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        out << "P " << s << ' ' << a << ' ' << t;
        for (double p : mdp.transition(s, a, t)) out << ' ' << FormatReal(p);
        out << '\n';
      }
    }
  }
  for (int t = 1; t <= H; ++t) {
    for (int s = 0; s < S; ++s) {
      for (int a = 0; a < A; ++a) {
        out << "R " << s << ' ' << a << ' ' << t << ' '
            << FormatReal(mdp.reward(s, a, t)) << '\n';
      }
    }
  }
}

TabularMdp ReadMdp(std::istream& in) {
  std::string line;
  int line_number = 0;
  if (!NextDataLine(in, line, line_number)) Fail(line_number, "missing dims line");
  int S = 0, A = 0, H = 0, start = 0;
  {
    std::istringstream fields(line);
    if (!(fields >> S >> A >> H >> start)) Fail(line_number, "expected 'S A H s1'");
    ExpectEnd(fields, line_number);
  }
  if (S < 1 || A < 1 || H < 1 || start < 0 || start >= S) {
    Fail(line_number, "invalid dimensions");
  }
  const std::size_t rows = static_cast<std::size_t>(S) * A * H;
  const std::size_t width = static_cast<std::size_t>(S) + 1;
  std::vector<double> transitions(rows * width, 0.0);
  std::vector<double> rewards(rows, 0.0);
  std::vector<char> seen_p(rows, 0), seen_r(rows, 0);
  auto row_of = [&](int s, int a, int t) {
    return (static_cast<std::size_t>(t - 1) * S + s) * A + a;
  };
  for (std::size_t k = 0; k < 2 * rows; ++k) {
    if (!NextDataLine(in, line, line_number)) Fail(line_number, "unexpected end of input");
    std::istringstream fields(line);
    std::string tag;
    int s = -1, a = -1, t = 0;
    if (!(fields >> tag >> s >> a >> t)) Fail(line_number, "expected 'P|R s a t ...'");
    if (s < 0 || s >= S || a < 0 || a >= A || t < 1 || t > H) {
      Fail(line_number, "index out of range");
    }
    const std::size_t row = row_of(s, a, t);
    if (tag == "P") {
      if (seen_p[row]++) Fail(line_number, "duplicate transition row");
      for (std::size_t j = 0; j < width; ++j) {
        if (!(fields >> transitions[row * width + j])) {
          Fail(line_number, "expected " + std::to_string(width) + " probabilities");
        }
      }
    } else if (tag == "R") {
      if (seen_r[row]++) Fail(line_number, "duplicate reward row");
      if (!(fields >> rewards[row])) Fail(line_number, "expected a reward");
    } else {
      Fail(line_number, "unknown row tag '" + tag + "'");
    }
    ExpectEnd(fields, line_number);
  }
  if (NextDataLine(in, line, line_number)) Fail(line_number, "trailing data");
  try {
    return TabularMdp(S, A, H, start, std::move(transitions), std::move(rewards));
  } catch (const ConfigError& e) {
    throw ParseError(std::string("invalid MDP: ") + e.what());
  }
}

void WritePolicy(std::ostream& out, const Policy& policy) {
  out << "# crn policy: 'S A H', then one row of S actions per time step\n";
  out << policy.num_states() << ' ' << policy.num_actions() << ' '
      << policy.horizon() << '\n';
  for (int t = 1; t <= policy.horizon(); ++t) {
    for (int s = 0; s < policy.num_states(); ++s) {
      if (s > 0) out << ' ';
      out << policy.action(s, t);
    }
    out << '\n';
  }
}

Policy ReadPolicy(std::istream& in) {
  std::string line;
  int line_number = 0;
  if (!NextDataLine(in, line, line_number)) Fail(line_number, "missing dims line");
  int S = 0, A = 0, H = 0;
  {
    std::istringstream fields(line);
    if (!(fields >> S >> A >> H)) Fail(line_number, "expected 'S A H'");
    ExpectEnd(fields, line_number);
  }
  if (S < 1 || A < 1 || H < 1) Fail(line_number, "invalid dimensions");
  std::vector<int> actions(static_cast<std::size_t>(S) * H);
  for (int t = 1; t <= H; ++t) {
    if (!NextDataLine(in, line, line_number)) Fail(line_number, "unexpected end of input");
    std::istringstream fields(line);
    for (int s = 0; s < S; ++s) {
      if (!(fields >> actions[static_cast<std::size_t>(t - 1) * S + s])) {
        Fail(line_number, "expected " + std::to_string(S) + " actions");
      }
    }
    ExpectEnd(fields, line_number);
  }
  try {
    return Policy(S, A, H, std::move(actions));
  } catch (const ConfigError& e) {
    throw ParseError(std::string("invalid policy: ") + e.what());
  }
}

}  // namespace crn
