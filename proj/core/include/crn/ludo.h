#ifndef CRN_LUDO_H_
#define CRN_LUDO_H_

// Two-player Ludo with a uniform-random opponent folded into the
// environment.
//
// Rules (pinned; see data/ludo_board.txt for the geometry):
//   * A piece leaves the start area only on a 6, onto relative square 1.
//   * A move that would overshoot home is illegal; home pieces never move.
//   * Landing on a main-track square that is not safe sends every opposing
//     piece there back to start. There are no blockades.
//   * A 6 earns another roll if a piece moved. A third consecutive 6 in one
//     turn forfeits the rest of the turn.
//   * No legal move ends the turn.
//   * The first player to bring all four pieces home wins. A game is also
//     stopped after kMoveCap die rolls (both players counted).
//
// Player 0 is the opponent and always moves first; player 1 is the agent.
// Pieces are indexed 0..3.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "crn/planner.h"
#include "crn/seeding.h"
#include "crn/uct.h"

namespace crn::ludo {

inline constexpr int kOpponent = 0;
inline constexpr int kAgent = 1;
inline constexpr int kNumPieces = 4;
inline constexpr int kMoveCap = 300;

struct BoardMap {
  int track_length = 52;
  int home_column = 5;
  std::vector<int> safe = {0, 8, 13, 21, 26, 34, 39, 47};
  std::array<int, 2> entry = {0, 26};

  int home() const { return track_length + home_column; }
  bool OnMainTrack(int rel) const { return rel >= 1 && rel < track_length; }
  // Absolute main-track square of relative position `rel` for `player`.
  int Square(int player, int rel) const {
    return (entry[player] + rel - 1) % track_length;
  }
  bool IsSafe(int square) const;

  void Validate() const;  // throws ParseError
};

BoardMap DefaultBoard();
// `key values...` lines (track_length, home_column, safe, entry) with '#'
// comments. Throws ParseError on unknown keys, missing keys or bad values.
BoardMap ReadBoardMap(std::istream& in);
BoardMap LoadBoardMap(const std::string& path);
void WriteBoardMap(std::ostream& out, const BoardMap& board);

using Pieces = std::array<std::array<int, kNumPieces>, 2>;

struct LudoState {
  Pieces pieces{};      // relative positions, [player][piece]
  int die = 0;          // agent's pending roll when awaiting a decision
  int sixes = 0;        // consecutive 6s in the agent's current turn, incl. `die`
  int rolls = 0;        // die rolls so far, both players
  int winner = -1;      // kOpponent, kAgent, or -1
  bool capped = false;  // stopped at kMoveCap

  bool terminal() const { return winner >= 0 || capped; }
  friend bool operator==(const LudoState&, const LudoState&) = default;
};

// Piece indices that may legally move `die` squares, ascending.
std::vector<int> LegalMoves(const BoardMap& board, const Pieces& pieces,
                            int player, int die);
std::vector<int> LegalMoves(const BoardMap& board, const LudoState& state,
                            bool for_agent);

struct MoveOutcome {
  Pieces pieces{};
  bool extra_turn = false;  // die == 6
  int captures = 0;
  bool mover_won = false;
};

// Throws RuleViolation if the move is not legal.
MoveOutcome ApplyMove(const BoardMap& board, const Pieces& pieces, int player,
                      int piece, int die);

// One line of a game log: the roll, the piece moved (-1 for a pass or a
// forfeited third 6) and the positions after the move.
struct LogEntry {
  int turn = 0;  // 1-based roll counter
  int player = 0;
  int die = 0;
  int piece = -1;
  Pieces after{};
};

// `turn player die piece a1 a2 a3 a4 o1 o2 o3 o4`, where a* are the agent's
// and o* the opponent's positions.
void WriteGameLog(std::ostream& out, const std::vector<LogEntry>& log);
std::vector<LogEntry> ReadGameLog(std::istream& in);  // throws ParseError

// Replays a log from the initial position and checks every entry against the
// rules: turn order (including 6 repeats and forfeits), legality, passes only
// without legal moves, and the recorded positions. Returns an empty string if
// the log is consistent, otherwise a description of the first problem.
std::string ValidateGameLog(const BoardMap& board,
                            const std::vector<LogEntry>& log);

// The agent's MDP. States awaiting a decision always have at least one legal
// agent move; Step applies the agent's move and then plays out rolls and
// opponent moves until the agent must decide again or the game ends.
//
// Chance draws inside one Step are keyed ("die", k) and ("opponent", k) with
// separate counters k = 0, 1, ..., so a planner that fixes the time and
// simulation index fixes the sequence of die outcomes and opponent choices.
class LudoEnvironment {
 public:
  using State = LudoState;

  explicit LudoEnvironment(BoardMap board = DefaultBoard());

  // Initial position; the opponent moves first.
  LudoState Reset(ChanceSource& chance) const;

  std::vector<int> LegalActions(const LudoState& state) const;
  bool IsTerminal(const LudoState& state) const { return state.terminal(); }
  // Reward 1 when the agent wins, else 0. Throws RuleViolation on an illegal
  // agent move and TerminalStateError on a finished game.
  StepResult<LudoState> Step(const LudoState& state, int action,
                             ChanceSource& chance) const;
  std::uint64_t OutcomeId(const LudoState& state) const;
  // Rollout draws depend on the round only, not on the position.
  std::string StateKey(const LudoState&) const { return "ludo"; }

  const BoardMap& board() const { return board_; }

  // As Step/Reset, additionally appending log entries.
  StepResult<LudoState> Step(const LudoState& state, int action,
                             ChanceSource& chance,
                             std::vector<LogEntry>* log) const;
  LudoState Reset(ChanceSource& chance, std::vector<LogEntry>* log) const;

 private:
  BoardMap board_;
};

struct GameResult {
  int winner = -1;  // -1 if capped
  int rolls = 0;
  bool capped = false;
  std::vector<LogEntry> log;
};

// Both players uniform random, player 0 first. Draws from a splitmix64
// stream seeded by `seed`.
GameResult PlayRandomGame(const BoardMap& board, std::uint64_t seed,
                          bool keep_log = false);

// UCT agent against the random opponent. The real dice and opponent moves of
// game g come from a stream seeded by DeriveSeed({run_salt, "ludo-real",
// "game", 0, g}); planning at agent decision k of game g uses the salt
// run_salt + "/game/" + g + "/decision/" + k and root time k. UCT is only
// invoked with at least two legal moves.
GameResult PlayUctGame(const LudoEnvironment& env, const PlanningConfig& config,
                       std::uint64_t game_index, std::string_view run_salt,
                       bool keep_log = false);

struct MatchResult {
  int games = 0;
  int wins = 0;
  int capped = 0;
  double win_rate = 0.0;
  double std_error = 0.0;  // binomial, sqrt(p (1 - p) / games)
};

MatchResult PlayMatch(const LudoEnvironment& env, const PlanningConfig& config,
                      int num_games, std::string_view run_salt);

}  // namespace crn::ludo

#endif  // CRN_LUDO_H_
