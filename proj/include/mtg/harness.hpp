#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtg/compiler.hpp"
#include "mtg/engine.hpp"
#include "mtg/tm.hpp"

// Forced-run executor, end-game detector, bounded mate-in-n solver with a
// brute-force truth oracle, and the engine-vs-interpreter bisimulation
// verifier. Also the board/trace serializers used by the CLI.
namespace mtg::harness {

struct HarnessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Per-round integers for whichever player decides that round.
struct InputScript {
  std::vector<uint64_t> values;
  enum class Source { Scripted, ExhaustiveSearch } source = Source::Scripted;
};

struct Verdict {
  enum class Outcome { FirstPlayerWin, NoWinWithinHorizon };
  Outcome outcome = Outcome::NoWinWithinHorizon;
  int64_t turn = 0;  // win turn, or the horizon that was exhausted
  // |legal_actions| tally at unscripted decision points; any key >= 2
  // is a forcedness violation
  std::map<int, int64_t> forcedness_histogram;
  // (turn, active player, turn controller) at each consumed script value,
  // so control attribution on swapped rounds is directly assertable
  struct RoundDecision {
    int64_t turn;
    engine::PlayerId active;
    engine::PlayerId decider;
    uint64_t value;
  };
  std::vector<RoundDecision> round_decisions;
};

// Plays out every forced decision, consuming `script` at the open integer
// choice points. Throws HarnessError when more than one action is legal
// outside a scripted point, when the script runs dry at a choice point, or
// when `step_budget` actions pass without the game ending. Pass a log to
// capture the full trace.
Verdict run_forced(const engine::GameState& start, const InputScript& script,
                   int64_t max_turns, int64_t step_budget = 2'000'000,
                   engine::Log* log = nullptr);

struct EndGameProbe {
  enum class Kind { InEndGame, NotEndGame, Unknown };
  Kind kind = Kind::Unknown;
  int64_t turn = 0;         // where the first unforced point sits (NotEndGame)
  std::string step;         // its phase step name
  int64_t horizon = 0;      // turns examined (Unknown)
};

// Bounded approximation of "no unforced moves for either player remaining":
// simulates forward up to `horizon` turns, reporting the first point with two
// or more legal actions. The exact predicate is undecidable; only this
// bounded probe is offered.
EndGameProbe detect_end_game(const engine::GameState& start, int64_t horizon);

// Brute-force sentence truth with every quantifier (the searched x included)
// restricted to 0..bound. Quantifier order matches the game: the y rounds
// outermost, the x search innermost.
bool solve_bounded(const tm::ArithmeticSentence& sentence, int64_t bound);

struct SolveResult {
  bool mate_exists = false;
  std::optional<InputScript> witness;  // a winning script when one exists
  bool oracle_truth = false;
  bool agreement = false;  // mate_exists == oracle_truth
  int64_t leaves_evaluated = 0;
  std::map<int, int64_t> forcedness_histogram;  // merged over all leaves
  // true iff every universal round's value was chosen while the opponent
  // controlled the first player's turn, across every evaluated leaf
  bool swap_attribution_ok = false;
};

// Minimax over the round choices of a board compiled from a sentence:
// existential rounds maximize (the first player picks), universal rounds
// minimize (the opponent picks via the control swap). Leaves run forced with
// a horizon covering the x search up to `bound`; the result is cross-checked
// against solve_bounded.
SolveResult solve_game(const engine::GameState& start, int64_t bound);

struct BisimulationReport {
  bool ok = false;
  int64_t cycles_checked = 0;
  int64_t divergence_cycle = -1;
  tm::MachineConfig engine_config, reference_config;
  std::map<int, int64_t> forcedness_histogram;
  bool halted = false;  // machine halted before k cycles (still ok)
};

// Runs a compiled zero-player board k machine cycles against the reference
// interpreter, comparing decoded tape banks at every cycle boundary. Pass a
// pre-built board to check a hand-modified one (negative controls).
BisimulationReport verify_bisimulation(const tm::TuringMachineSpec& tm,
                                       const tm::MachineConfig& cfg,
                                       int64_t k,
                                       const engine::GameState* board = nullptr);

// ---------------------------------------------------------------------------
// Serialization: deterministic-key-order JSON board states and
// line-delimited trace records.

std::string state_to_json(const engine::GameState& s);
engine::GameState state_from_json(const std::string& text);

std::string trace_to_jsonl(const engine::Log& log);

}  // namespace mtg::harness
