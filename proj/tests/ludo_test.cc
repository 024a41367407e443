#include "crn/ludo.h"

#include <fstream>
#include <sstream>

#include "crn/errors.h"
#include "gtest/gtest.h"

namespace crn::ludo {
namespace {

const BoardMap& Board() {
  static const BoardMap board = DefaultBoard();
  return board;
}

TEST(BoardMapTest, DefaultGeometry) {
  const BoardMap& b = Board();
  EXPECT_EQ(b.home(), 57);
  EXPECT_EQ(b.Square(kOpponent, 1), 0);
  EXPECT_EQ(b.Square(kAgent, 1), 26);
  EXPECT_EQ(b.Square(kAgent, 27), 0);
  EXPECT_EQ(b.Square(kAgent, 51), 24);
  EXPECT_TRUE(b.IsSafe(8));
  EXPECT_FALSE(b.IsSafe(9));
  EXPECT_TRUE(b.OnMainTrack(51));
  EXPECT_FALSE(b.OnMainTrack(52));
  EXPECT_FALSE(b.OnMainTrack(0));
}

TEST(BoardMapTest, DataFileMatchesDefault) {
  const BoardMap b = LoadBoardMap(std::string(CRN_DATA_DIR) + "/ludo_board.txt");
  EXPECT_EQ(b.track_length, 52);
  EXPECT_EQ(b.home_column, 5);
  EXPECT_EQ(b.safe, Board().safe);
  EXPECT_EQ(b.entry, Board().entry);
}

TEST(BoardMapTest, RoundTrip) {
  std::stringstream text;
  WriteBoardMap(text, Board());
  const BoardMap b = ReadBoardMap(text);
  EXPECT_EQ(b.safe, Board().safe);
  EXPECT_EQ(b.entry, Board().entry);
  EXPECT_EQ(b.home(), Board().home());
}

TEST(BoardMapTest, CorruptedFilesAreRejected) {
  const char* bad[] = {
      "track_length 52\nhome_column 5\nsafe 0 8\n",                   // no entry
      "track_length 52\nhome_column 5\nsafe 0 99\nentry 0 26\n",      // safe range
      "track_length 52\nhome_column 5\nsafe 0\nentry 0 0\n",          // shared
      "track_length 52\nhome_column 5\nsafe 0\nentry 0 26\ncolor 3\n",  // key
      "track_length x\nhome_column 5\nsafe 0\nentry 0 26\n",
      "track_length 52\nhome_column 5\nsafe 0\nentry 0 26 13\n",
  };
  for (const char* text : bad) {
    std::istringstream in(text);
    EXPECT_THROW(ReadBoardMap(in), ParseError) << text;
  }
  EXPECT_THROW(LoadBoardMap("/nonexistent/board.txt"), ParseError);
}

Pieces Position(std::array<int, 4> agent, std::array<int, 4> opponent) {
  Pieces p{};
  p[kAgent] = agent;
  p[kOpponent] = opponent;
  return p;
}

TEST(RulesTest, LeavingStartNeedsSix) {
  for (int die = 1; die <= 5; ++die) {
    EXPECT_TRUE(LegalMoves(Board(), Pieces{}, kAgent, die).empty()) << die;
  }
  EXPECT_EQ(LegalMoves(Board(), Pieces{}, kAgent, 6),
            (std::vector<int>{0, 1, 2, 3}));
  const MoveOutcome o = ApplyMove(Board(), Pieces{}, kAgent, 2, 6);
  EXPECT_EQ(o.pieces[kAgent][2], 1);
  EXPECT_TRUE(o.extra_turn);
}

TEST(RulesTest, NoOvershootAndHomeIsFinal) {
  const Pieces p = Position({55, 57, 0, 0}, {});
  EXPECT_TRUE(LegalMoves(Board(), p, kAgent, 3).empty());
  EXPECT_EQ(LegalMoves(Board(), p, kAgent, 2), (std::vector<int>{0}));
  EXPECT_EQ(LegalMoves(Board(), p, kAgent, 6), (std::vector<int>{2, 3}));
  EXPECT_THROW(ApplyMove(Board(), p, kAgent, 1, 1), RuleViolation);
  EXPECT_THROW(ApplyMove(Board(), p, kAgent, 0, 3), RuleViolation);
}

TEST(RulesTest, CaptureOnPlainSquare) {
  // Agent rel 7 + 3 = rel 10, square 35; opponent rel 36 is square 35.
  const MoveOutcome o =
      ApplyMove(Board(), Position({7, 0, 0, 0}, {36, 0, 0, 0}), kAgent, 0, 3);
  EXPECT_EQ(o.captures, 1);
  EXPECT_EQ(o.pieces[kOpponent][0], 0);
  EXPECT_EQ(o.pieces[kAgent][0], 10);
  EXPECT_FALSE(o.extra_turn);
}

TEST(RulesTest, CaptureSendsEveryPieceOnTheSquareHome) {
  const MoveOutcome o = ApplyMove(
      Board(), Position({7, 0, 0, 0}, {36, 36, 5, 0}), kAgent, 0, 3);
  EXPECT_EQ(o.captures, 2);
  EXPECT_EQ(o.pieces[kOpponent], (std::array<int, 4>{0, 0, 5, 0}));
}

TEST(RulesTest, NoCaptureOnSafeSquare) {
  // Agent rel 6 + 3 = rel 9, square 34 (safe); opponent rel 35 is square 34.
  const MoveOutcome o =
      ApplyMove(Board(), Position({6, 0, 0, 0}, {35, 0, 0, 0}), kAgent, 0, 3);
  EXPECT_EQ(o.captures, 0);
  EXPECT_EQ(o.pieces[kOpponent][0], 35);
}

TEST(RulesTest, EnteringOntoOccupiedEntrySquareIsSafe) {
  // Opponent rel 27 is square 26, the agent's entry.
  const MoveOutcome o =
      ApplyMove(Board(), Position({0, 0, 0, 0}, {27, 0, 0, 0}), kAgent, 0, 6);
  EXPECT_EQ(o.captures, 0);
  EXPECT_EQ(o.pieces[kOpponent][0], 27);
}

TEST(RulesTest, HomeColumnIsPrivate) {
  // Agent rel 50 + 4 = rel 54 (home column); opponent sits on any square.
  const MoveOutcome o =
      ApplyMove(Board(), Position({50, 0, 0, 0}, {28, 0, 0, 0}), kAgent, 0, 4);
  EXPECT_EQ(o.captures, 0);
  EXPECT_EQ(o.pieces[kAgent][0], 54);
}

TEST(RulesTest, WinningMove) {
  const MoveOutcome o =
      ApplyMove(Board(), Position({57, 57, 57, 54}, {}), kAgent, 3, 3);
  EXPECT_TRUE(o.mover_won);
  const MoveOutcome not_yet =
      ApplyMove(Board(), Position({57, 57, 50, 54}, {}), kAgent, 3, 3);
  EXPECT_FALSE(not_yet.mover_won);
}

TEST(RandomGameTest, LogsValidateAndGamesEnd) {
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const GameResult g = PlayRandomGame(Board(), seed, true);
    EXPECT_EQ(ValidateGameLog(Board(), g.log), "") << seed;
    EXPECT_EQ(static_cast<int>(g.log.size()), g.rolls);
    EXPECT_LE(g.rolls, kMoveCap);
    if (!g.capped) {
      EXPECT_TRUE(g.winner == kAgent || g.winner == kOpponent);
    }
  }
}

TEST(RandomGameTest, RoughlySymmetric) {
  const int n = 4000;
  int first_player = 0, capped = 0;
  for (int seed = 1; seed <= n; ++seed) {
    const GameResult g = PlayRandomGame(Board(), seed);
    first_player += g.winner == kOpponent;
    capped += g.capped;
  }
  const double rate = static_cast<double>(first_player) / (n - capped);
  EXPECT_GT(rate, 0.45);
  EXPECT_LT(rate, 0.55);
  EXPECT_LT(capped, n / 100);
}

TEST(GameLogTest, RoundTripAndCorruption) {
  const GameResult g = PlayRandomGame(Board(), 7, true);
  std::stringstream text;
  WriteGameLog(text, g.log);
  std::vector<LogEntry> back = ReadGameLog(text);
  ASSERT_EQ(back.size(), g.log.size());
  EXPECT_EQ(ValidateGameLog(Board(), back), "");

  std::vector<LogEntry> wrong_die = back;
  wrong_die[5].after[wrong_die[5].player][0] += 1;
  EXPECT_NE(ValidateGameLog(Board(), wrong_die), "");

  std::vector<LogEntry> wrong_turn = back;
  wrong_turn[0].player = 1 - wrong_turn[0].player;
  EXPECT_NE(ValidateGameLog(Board(), wrong_turn), "");

  std::istringstream garbage("1 0 3\n");
  EXPECT_THROW(ReadGameLog(garbage), ParseError);
}

TEST(GameLogTest, FixtureGameValidates) {
  std::ifstream in(std::string(CRN_DATA_DIR) + "/ludo_fixture_game.log");
  ASSERT_TRUE(in);
  const std::vector<LogEntry> log = ReadGameLog(in);
  EXPECT_EQ(log.size(), 176u);
  EXPECT_EQ(ValidateGameLog(Board(), log), "");
  // The fixture is the random game with seed 2026.
  const GameResult g = PlayRandomGame(Board(), 2026, true);
  EXPECT_EQ(g.winner, kAgent);
  ASSERT_EQ(g.log.size(), log.size());
  for (std::size_t i = 0; i < log.size(); ++i) {
    EXPECT_EQ(g.log[i].after, log[i].after) << i;
  }
}

TEST(LudoEnvironmentTest, StepsAreDeterministicUnderSeeds) {
  const LudoEnvironment env;
  StreamChance real(3);
  const LudoState start = env.Reset(real);
  ASSERT_FALSE(env.LegalActions(start).empty());
  EXPECT_EQ(start.winner, -1);
  EXPECT_GE(start.rolls, 1);

  SeededChance a("env"), b("env");
  a.Bind(1, 1, std::nullopt);
  b.Bind(1, 1, std::nullopt);
  const int action = env.LegalActions(start).front();
  const auto s1 = env.Step(start, action, a);
  const auto s2 = env.Step(start, action, b);
  EXPECT_EQ(s1.next, s2.next);
  EXPECT_EQ(env.OutcomeId(s1.next), env.OutcomeId(s2.next));
  if (!s1.terminal) {
    EXPECT_FALSE(env.LegalActions(s1.next).empty());
  }
  EXPECT_THROW(env.Step(start, 99, a), RuleViolation);
}

TEST(LudoEnvironmentTest, LoggedEpisodeValidates) {
  const LudoEnvironment env;
  StreamChance chance(11);
  std::vector<LogEntry> log;
  LudoState s = env.Reset(chance, &log);
  SplitMix64 pick(5);
  double reward = 0.0;
  while (!env.IsTerminal(s)) {
    const auto actions = env.LegalActions(s);
    const auto step =
        env.Step(s, actions[pick() % actions.size()], chance, &log);
    reward += step.reward;
    s = step.next;
  }
  EXPECT_EQ(ValidateGameLog(Board(), log), "");
  EXPECT_EQ(reward, s.winner == kAgent ? 1.0 : 0.0);
  EXPECT_THROW(env.Step(s, 0, chance), TerminalStateError);
}

TEST(PlayUctGameTest, DeterministicAndValid) {
  const LudoEnvironment env;
  PlanningConfig config;
  config.num_simulations = 4;
  const GameResult a = PlayUctGame(env, config, 1, "uct", true);
  const GameResult b = PlayUctGame(env, config, 1, "uct", true);
  EXPECT_EQ(a.winner, b.winner);
  EXPECT_EQ(a.rolls, b.rolls);
  EXPECT_EQ(ValidateGameLog(Board(), a.log), "");
}

}  // namespace
}  // namespace crn::ludo
