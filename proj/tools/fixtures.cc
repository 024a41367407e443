#include "fixtures.h"

#include <cmath>
#include <exception>
#include <fstream>
#include <functional>
#include <ostream>

#include "crn/estimators.h"
#include "crn/ludo.h"
#include "crn/seeding.h"
#include "crn/synthetic.h"

namespace crn::fixtures {

std::vector<TinyInstance> TinyInstances() {
  std::vector<TinyInstance> out;
  const CounterexampleSetup ce = CounterexampleMdp(2, 4, 3, 2);
  out.push_back({"counterexample", ce.mdp, ce.pi1, ce.pi2, 2});
  struct Shape {
    int states, horizon, depth;
  };
  const Shape shapes[] = {{2, 2, 1}, {2, 3, 1}, {3, 2, 1}, {3, 3, 1},
                          {2, 3, 2}, {3, 3, 2}};
  std::uint64_t seed = 101;
  for (const Shape& shape : shapes) {
    SyntheticSpec spec{shape.states, 2, shape.horizon, seed};
    auto policies = GenerateAgreeingPolicies(spec, 2, shape.depth, seed);
    out.push_back({"synthetic-s" + std::to_string(shape.states) + "-h" +
                       std::to_string(shape.horizon) + "-d" +
                       std::to_string(shape.depth),
                   GenerateMdp(spec), policies[0], policies[1], shape.depth});
    ++seed;
  }
  return out;
}

const std::vector<SeedVector>& SeedVectors() {
  static const std::vector<SeedVector> vectors = {
      {"run-0", "0", "0", 1, 1, nullptr, 0xf8966bf1f8c5e3a7ULL,
       0x5a9722487635774dULL, 0.35386862057767643, 0},
      {"run-0", "3", "1", 2, 7, nullptr, 0xd1ed484b43c039aeULL,
       0x4db93cf3ab4d7729ULL, 0.30360775898889414, 0},
      {"run-0", "31", "", 2, 7, nullptr, 0xae376f57a21ca9b2ULL,
       0x6ee71b5b0a7f3fcfULL, 0.4332139107959819, 0},
      {"run-0", "3", "1", 2, 7, "pi:00000000deadbeef", 0xe0767ec143b62f2aULL,
       0xefcd5d165fc091c3ULL, 0.9367273501991369, 1},
      {"exp/run/199", "6", "3", 20, 128, "2", 0x53010e23931aa381ULL,
       0xf7a7b05cde9f4c13ULL, 0.9674024798138109, 1},
  };
  return vectors;
}

namespace {

class Checker {
 public:
  explicit Checker(std::ostream& out) : out_(out) {}

  void Check(const std::string& name, const std::function<std::string()>& body) {
    std::string problem;
    try {
      problem = body();
    } catch (const std::exception& e) {
      problem = std::string("exception: ") + e.what();
    }
    if (problem.empty()) {
      out_ << "PASS " << name << "\n";
    } else {
      out_ << "FAIL " << name << ": " << problem << "\n";
      ++failures_;
    }
  }
  int failures() const { return failures_; }

 private:
  std::ostream& out_;
  int failures_ = 0;
};

void CheckEnumeration(Checker& checker) {
  bool any_strict = false;
  for (const TinyInstance& inst : TinyInstances()) {
    checker.Check("enumeration/" + inst.name, [&]() -> std::string {
      const ExactEstimatorMoments m =
          EnumerateEstimatorMoments(inst.mdp, inst.p1, inst.p2, inst.depth);
      const double slack = 1e-12 * (1.0 + m.var_xi);
      if (m.var_xdd > m.var_xi + slack) {
        return "var(XDD) = " + std::to_string(m.var_xdd) + " > var(XI) = " +
               std::to_string(m.var_xi);
      }
      if (m.var_xdd < m.var_xi - slack) any_strict = true;
      return "";
    });
  }
  checker.Check("enumeration/strict-somewhere", [&]() -> std::string {
    return any_strict ? "" : "no instance with var(XDD) < var(XI)";
  });
}

void CheckSeedVectors(Checker& checker) {
  int k = 0;
  for (const SeedVector& v : SeedVectors()) {
    checker.Check("seed-vector/" + std::to_string(++k), [&]() -> std::string {
      SeedContext ctx{v.salt, v.state, v.action, v.time, v.simulation_index,
                      std::nullopt};
      if (v.policy_key != nullptr) ctx.policy_key = v.policy_key;
      const std::uint64_t seed = DeriveSeed(ctx);
      if (seed != v.hash) return "hash mismatch";
      if (FirstDraw(seed) != v.first_draw) return "draw mismatch";
      if (ToUnit(FirstDraw(seed)) != v.uniform) return "uniform mismatch";
      const double half[] = {0.5, 0.5};
      if (NextState(half, seed) != v.successor) return "successor mismatch";
      return "";
    });
  }
}

std::string ExpectMoves(const std::vector<int>& got,
                        const std::vector<int>& want) {
  if (got == want) return "";
  std::string s = "got {";
  for (int g : got) s += " " + std::to_string(g);
  return s + " }";
}

void CheckLudo(Checker& checker, const std::string& data_dir) {
  using namespace ludo;
  BoardMap board;
  bool loaded = false;
  checker.Check("ludo/board-map", [&]() -> std::string {
    board = LoadBoardMap(data_dir + "/ludo_board.txt");
    loaded = true;
    return "";
  });
  if (!loaded) return;

  checker.Check("ludo/start-needs-six", [&]() -> std::string {
    return ExpectMoves(LegalMoves(board, Pieces{}, kAgent, 5), {});
  });
  checker.Check("ludo/six-frees-all", [&]() -> std::string {
    return ExpectMoves(LegalMoves(board, Pieces{}, kAgent, 6), {0, 1, 2, 3});
  });
  checker.Check("ludo/overshoot", [&]() -> std::string {
    Pieces p{};
    p[kAgent] = {55, 57, 0, 0};
    const std::string a = ExpectMoves(LegalMoves(board, p, kAgent, 3), {});
    if (!a.empty()) return "die 3: " + a;
    return ExpectMoves(LegalMoves(board, p, kAgent, 2), {0});
  });
  checker.Check("ludo/capture", [&]() -> std::string {
    // Agent rel 7 (square 32) + 3 -> rel 10 (square 35); opponent rel 36 is
    // square 35, not safe.
    Pieces p{};
    p[kAgent] = {7, 0, 0, 0};
    p[kOpponent] = {36, 0, 0, 0};
    const MoveOutcome o = ApplyMove(board, p, kAgent, 0, 3);
    if (o.captures != 1 || o.pieces[kOpponent][0] != 0 ||
        o.pieces[kAgent][0] != 10) {
      return "expected one capture at square 35";
    }
    return "";
  });
  checker.Check("ludo/safe-square", [&]() -> std::string {
    // Agent rel 6 + 3 -> rel 9 (square 34, safe); opponent rel 35 is there.
    Pieces p{};
    p[kAgent] = {6, 0, 0, 0};
    p[kOpponent] = {35, 0, 0, 0};
    const MoveOutcome o = ApplyMove(board, p, kAgent, 0, 3);
    if (o.captures != 0 || o.pieces[kOpponent][0] != 35) {
      return "capture on a safe square";
    }
    return "";
  });
  checker.Check("ludo/fixture-game", [&]() -> std::string {
    const std::string path = data_dir + "/ludo_fixture_game.log";
    std::ifstream in(path);
    if (!in) return "cannot open " + path;
    return ValidateGameLog(board, ReadGameLog(in));
  });
}

}  // namespace

int VerifyAll(const std::string& data_dir, std::ostream& out) {
  Checker checker(out);
  CheckSeedVectors(checker);
  CheckEnumeration(checker);
  CheckLudo(checker, data_dir);
  out << (checker.failures() == 0 ? "all fixtures passed"
                                  : std::to_string(checker.failures()) +
                                        " fixture(s) failed")
      << "\n";
  return checker.failures();
}

}  // namespace crn::fixtures
