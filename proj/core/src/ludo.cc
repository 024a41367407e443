#include "crn/ludo.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "crn/errors.h"

namespace crn::ludo {

bool BoardMap::IsSafe(int square) const {
  return std::find(safe.begin(), safe.end(), square) != safe.end();
}

void BoardMap::Validate() const {
  if (track_length < 2) throw ParseError("board: track_length must be >= 2");
  if (home_column < 0) throw ParseError("board: home_column must be >= 0");
  for (int s : safe) {
    if (s < 0 || s >= track_length) {
      throw ParseError("board: safe square " + std::to_string(s) +
                       " is off the track");
    }
  }
  for (int e : entry) {
    if (e < 0 || e >= track_length) {
      throw ParseError("board: entry square " + std::to_string(e) +
                       " is off the track");
    }
  }
  if (entry[0] == entry[1]) throw ParseError("board: players share an entry");
}

BoardMap DefaultBoard() { return BoardMap{}; }

BoardMap ReadBoardMap(std::istream& in) {
  BoardMap board;
  board.safe.clear();
  bool seen_track = false, seen_column = false, seen_safe = false,
       seen_entry = false;
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) {
    throw ParseError("board map line " + std::to_string(line_no) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    std::string key;
    fields >> key;
    std::vector<int> values;
    std::string token;
    while (fields >> token) {
      try {
        std::size_t used = 0;
        values.push_back(std::stoi(token, &used));
        if (used != token.size()) fail("bad integer '" + token + "'");
      } catch (const std::logic_error&) {
        fail("bad integer '" + token + "'");
      }
    }
    if (key == "track_length" || key == "home_column") {
      if (values.size() != 1) fail(key + " takes one value");
      (key == "track_length" ? board.track_length : board.home_column) =
          values[0];
      (key == "track_length" ? seen_track : seen_column) = true;
    } else if (key == "safe") {
      board.safe = values;
      seen_safe = true;
    } else if (key == "entry") {
      if (values.size() != 2) fail("entry takes two values");
      board.entry = {values[0], values[1]};
      seen_entry = true;
    } else {
      fail("unknown key '" + key + "'");
    }
  }
  if (!seen_track || !seen_column || !seen_safe || !seen_entry) {
    throw ParseError("board map: missing track_length, home_column, safe or entry");
  }
  board.Validate();
  return board;
}

BoardMap LoadBoardMap(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open board map '" + path + "'");
  return ReadBoardMap(in);
}

void WriteBoardMap(std::ostream& out, const BoardMap& board) {
  out << "track_length " << board.track_length << "\n";
  out << "home_column " << board.home_column << "\n";
  out << "safe";
  for (int s : board.safe) out << ' ' << s;
  out << "\nentry " << board.entry[0] << ' ' << board.entry[1] << "\n";
}

std::vector<int> LegalMoves(const BoardMap& board, const Pieces& pieces,
                            int player, int die) {
  std::vector<int> out;
  if (die < 1 || die > 6) return out;
  const int home = board.home();
  for (int i = 0; i < kNumPieces; ++i) {
    const int p = pieces[player][i];
    if (p == home) continue;
    if (p == 0) {
      if (die == 6) out.push_back(i);
    } else if (p + die <= home) {
      out.push_back(i);
    }
  }
  return out;
}

std::vector<int> LegalMoves(const BoardMap& board, const LudoState& state,
                            bool for_agent) {
  return LegalMoves(board, state.pieces, for_agent ? kAgent : kOpponent,
                    state.die);
}

MoveOutcome ApplyMove(const BoardMap& board, const Pieces& pieces, int player,
                      int piece, int die) {
  if (player != kAgent && player != kOpponent) {
    throw RuleViolation("unknown player " + std::to_string(player));
  }
  const auto legal = LegalMoves(board, pieces, player, die);
  if (std::find(legal.begin(), legal.end(), piece) == legal.end()) {
    throw RuleViolation("illegal move: player " + std::to_string(player) +
                        " piece " + std::to_string(piece) + " die " +
                        std::to_string(die));
  }
  MoveOutcome out;
  out.pieces = pieces;
  int& p = out.pieces[player][piece];
  p = p == 0 ? 1 : p + die;
  out.extra_turn = die == 6;
  if (board.OnMainTrack(p)) {
    const int square = board.Square(player, p);
    if (!board.IsSafe(square)) {
      const int other = 1 - player;
      for (int& q : out.pieces[other]) {
        if (board.OnMainTrack(q) && board.Square(other, q) == square) {
          q = 0;
          ++out.captures;
        }
      }
    }
  }
  out.mover_won = std::all_of(out.pieces[player].begin(),
                              out.pieces[player].end(),
                              [&](int q) { return q == board.home(); });
  return out;
}

void WriteGameLog(std::ostream& out, const std::vector<LogEntry>& log) {
  for (const LogEntry& e : log) {
    out << e.turn << ' ' << e.player << ' ' << e.die << ' ' << e.piece;
    for (int q : e.after[kAgent]) out << ' ' << q;
    for (int q : e.after[kOpponent]) out << ' ' << q;
    out << '\n';
  }
}

std::vector<LogEntry> ReadGameLog(std::istream& in) {
  std::vector<LogEntry> log;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::istringstream fields(line);
    LogEntry e;
    fields >> e.turn >> e.player >> e.die >> e.piece;
    for (int& q : e.after[kAgent]) fields >> q;
    for (int& q : e.after[kOpponent]) fields >> q;
    std::string extra;
    if (!fields || (fields >> extra)) {
      throw ParseError("game log line " + std::to_string(line_no) +
                       ": expected 12 integers");
    }
    log.push_back(e);
  }
  return log;
}

std::string ValidateGameLog(const BoardMap& board,
                            const std::vector<LogEntry>& log) {
  Pieces pieces{};
  int player = kOpponent;
  int sixes = 0;
  for (std::size_t k = 0; k < log.size(); ++k) {
    const LogEntry& e = log[k];
    const std::string where = "entry " + std::to_string(k + 1) + ": ";
    if (e.turn != static_cast<int>(k) + 1) return where + "turn out of sequence";
    if (e.player != player) return where + "wrong player to move";
    if (e.die < 1 || e.die > 6) return where + "die out of range";
    const int run = e.die == 6 ? sixes + 1 : 0;
    bool turn_over = true;
    if (run == 3) {
      if (e.piece != -1) return where + "move recorded on a forfeited third 6";
    } else {
      const auto legal = LegalMoves(board, pieces, player, e.die);
      if (e.piece == -1) {
        if (!legal.empty()) return where + "pass with a legal move available";
      } else {
        if (std::find(legal.begin(), legal.end(), e.piece) == legal.end()) {
          return where + "illegal move";
        }
        const MoveOutcome out = ApplyMove(board, pieces, player, e.piece, e.die);
        pieces = out.pieces;
        if (out.mover_won && k + 1 != log.size()) {
          return where + "game continues after a win";
        }
        turn_over = !out.extra_turn;
      }
    }
    if (e.after != pieces) return where + "recorded positions differ";
    if (turn_over) {
      player = 1 - player;
      sixes = 0;
    } else {
      sixes = run;
    }
  }
  return "";
}

namespace {

// Die rolls and opponent choices drawn from a chance source with separate
// per-call counters.
class Draws {
 public:
  explicit Draws(ChanceSource& chance) : chance_(chance) {}

  int Roll() {
    const int d = static_cast<int>(chance_.Uniform("die", die_count_++) * 6.0);
    return 1 + std::min(d, 5);
  }
  int Choose(std::size_t n) {
    return internal::UniformIndex(chance_.Seed("opponent", choice_count_++), n);
  }

 private:
  ChanceSource& chance_;
  std::int64_t die_count_ = 0;
  std::int64_t choice_count_ = 0;
};

class Game {
 public:
  Game(const BoardMap& board, LudoState& state, Draws& draws,
       std::vector<LogEntry>* log)
      : board_(board), state_(state), draws_(draws), log_(log) {}

  // Rolls for `player`; false (and capped) when the cap is reached.
  bool Roll(int& die) {
    if (state_.rolls >= kMoveCap) {
      state_.capped = true;
      return false;
    }
    die = draws_.Roll();
    ++state_.rolls;
    return true;
  }

  void Record(int player, int die, int piece) {
    if (log_ != nullptr) {
      log_->push_back({state_.rolls, player, die, piece, state_.pieces});
    }
  }

  // Moves `piece` and records it. Returns true if the move ended the game.
  bool Move(int player, int piece, int die, bool& extra) {
    const MoveOutcome out = ApplyMove(board_, state_.pieces, player, piece, die);
    state_.pieces = out.pieces;
    Record(player, die, piece);
    extra = out.extra_turn;
    if (out.mover_won) state_.winner = player;
    return out.mover_won;
  }

  // A full turn for a uniform-random player.
  void RandomTurn(int player) {
    int sixes = 0;
    for (;;) {
      int die = 0;
      if (!Roll(die)) return;
      sixes = die == 6 ? sixes + 1 : 0;
      if (sixes == 3) {
        Record(player, die, -1);
        return;
      }
      const auto legal = LegalMoves(board_, state_.pieces, player, die);
      if (legal.empty()) {
        Record(player, die, -1);
        return;
      }
      bool extra = false;
      if (Move(player, legal[draws_.Choose(legal.size())], die, extra)) return;
      if (!extra) return;
    }
  }

  // Plays until the agent holds a roll with a legal move, or the game ends.
  // `agent_continues` is set when the agent just moved on a 6.
  void AdvanceToAgentDecision(bool agent_continues) {
    for (;;) {
      int prior_sixes = state_.sixes;
      if (!agent_continues) {
        RandomTurn(kOpponent);
        if (state_.terminal()) return;
        prior_sixes = 0;
      }
      agent_continues = false;
      int die = 0;
      if (!Roll(die)) return;
      const int sixes = die == 6 ? prior_sixes + 1 : 0;
      if (sixes == 3) {
        Record(kAgent, die, -1);
        continue;
      }
      if (LegalMoves(board_, state_.pieces, kAgent, die).empty()) {
        Record(kAgent, die, -1);
        continue;
      }
      state_.die = die;
      state_.sixes = sixes;
      return;
    }
  }

 private:
  const BoardMap& board_;
  LudoState& state_;
  Draws& draws_;
  std::vector<LogEntry>* log_;
};

}  // namespace

LudoEnvironment::LudoEnvironment(BoardMap board) : board_(std::move(board)) {
  board_.Validate();
}

LudoState LudoEnvironment::Reset(ChanceSource& chance) const {
  return Reset(chance, nullptr);
}

LudoState LudoEnvironment::Reset(ChanceSource& chance,
                                 std::vector<LogEntry>* log) const {
  LudoState state;
  Draws draws(chance);
  Game game(board_, state, draws, log);
  game.AdvanceToAgentDecision(false);
  return state;
}

std::vector<int> LudoEnvironment::LegalActions(const LudoState& state) const {
  if (state.terminal()) return {};
  return LegalMoves(board_, state.pieces, kAgent, state.die);
}

StepResult<LudoState> LudoEnvironment::Step(const LudoState& state, int action,
                                            ChanceSource& chance) const {
  return Step(state, action, chance, nullptr);
}

StepResult<LudoState> LudoEnvironment::Step(const LudoState& state, int action,
                                            ChanceSource& chance,
                                            std::vector<LogEntry>* log) const {
  if (state.terminal()) throw TerminalStateError("the game is over");
  StepResult<LudoState> result{state, 0.0, false};
  LudoState& next = result.next;
  Draws draws(chance);
  Game game(board_, next, draws, log);
  bool extra = false;
  if (game.Move(kAgent, action, state.die, extra)) {
    result.reward = 1.0;
    result.terminal = true;
    return result;
  }
  game.AdvanceToAgentDecision(extra);
  result.terminal = next.terminal();
  return result;
}

std::uint64_t LudoEnvironment::OutcomeId(const LudoState& state) const {
  Fnv1a64 h;
  for (const auto& side : state.pieces) {
    for (int q : side) h.Update(static_cast<char>(q));
  }
  h.Update(static_cast<char>(state.die));
  h.Update(static_cast<char>(state.sixes));
  h.Update(static_cast<char>(state.winner + 1));
  h.Update(static_cast<char>(state.capped));
  return h.digest();
}

GameResult PlayRandomGame(const BoardMap& board, std::uint64_t seed,
                          bool keep_log) {
  StreamChance chance(seed);
  Draws draws(chance);
  LudoState state;
  GameResult result;
  Game game(board, state, draws, keep_log ? &result.log : nullptr);
  for (int player = kOpponent; !state.terminal(); player = 1 - player) {
    game.RandomTurn(player);
  }
  result.winner = state.winner;
  result.rolls = state.rolls;
  result.capped = state.capped;
  return result;
}

GameResult PlayUctGame(const LudoEnvironment& env, const PlanningConfig& config,
                       std::uint64_t game_index, std::string_view run_salt,
                       bool keep_log) {
  const std::string salt(run_salt);
  StreamChance real(
      DeriveSeed({salt, "ludo-real", "game", 0, game_index, std::nullopt}));
  GameResult result;
  std::vector<LogEntry>* log = keep_log ? &result.log : nullptr;
  LudoState state = env.Reset(real, log);
  const std::string prefix = salt + "/game/" + std::to_string(game_index) +
                             "/decision/";
  for (std::int64_t k = 1; !state.terminal(); ++k) {
    const std::vector<int> legal = env.LegalActions(state);
    const int action =
        legal.size() >= 2
            ? UctPlan(env, state, k, config, prefix + std::to_string(k))
            : legal.front();
    state = env.Step(state, action, real, log).next;
  }
  result.winner = state.winner;
  result.rolls = state.rolls;
  result.capped = state.capped;
  return result;
}

MatchResult PlayMatch(const LudoEnvironment& env, const PlanningConfig& config,
                      int num_games, std::string_view run_salt) {
  if (num_games < 1) throw ConfigError("need at least one game");
  config.Validate();
  MatchResult match;
  match.games = num_games;
  for (int g = 1; g <= num_games; ++g) {
    const GameResult game =
        PlayUctGame(env, config, static_cast<std::uint64_t>(g), run_salt);
    if (game.winner == kAgent) ++match.wins;
    if (game.capped) ++match.capped;
  }
  match.win_rate = static_cast<double>(match.wins) / num_games;
  match.std_error =
      std::sqrt(match.win_rate * (1.0 - match.win_rate) / num_games);
  return match;
}

}  // namespace crn::ludo
