#ifndef CRN_TOOLS_FIXTURES_H_
#define CRN_TOOLS_FIXTURES_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "crn/mdp.h"

namespace crn::fixtures {

// A tiny MDP with two policies that agree after `depth` steps.
struct TinyInstance {
  std::string name;
  TabularMdp mdp;
  Policy p1;
  Policy p2;
  int depth;
};

// Instances with |S| <= 3 and H <= 3: the counterexample and a handful of
// generated MDPs.
std::vector<TinyInstance> TinyInstances();

struct SeedVector {
  const char* salt;
  const char* state;
  const char* action;
  long time;
  unsigned long simulation_index;
  const char* policy_key;  // nullptr when absent
  unsigned long long hash;
  unsigned long long first_draw;
  double uniform;
  int successor;  // drawn from (0.5, 0.5)
};
const std::vector<SeedVector>& SeedVectors();

// Runs every fixture group and prints one line per check. Returns the number
// of failures. `data_dir` holds ludo_board.txt and ludo_fixture_game.log.
int VerifyAll(const std::string& data_dir, std::ostream& out);

}  // namespace crn::fixtures

#endif  // CRN_TOOLS_FIXTURES_H_
