#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mtg/engine.hpp"
#include "mtg/tm.hpp"

// Board emitters: a zero-player machine board for a TuringMachineSpec, and
// the full mate-in-n board (countdown, input gadget, control-swap schedule,
// cleanup chain) for an ArithmeticSentence.
namespace mtg::compiler {

// Countdown and control attribution for a compiled mate-in-n board.
struct GadgetPlan {
  int n = 0;                             // input rounds
  std::vector<bool> swapped_round;       // [r-1]: round r is opponent-run
  std::map<std::string, int64_t> countdown;  // card -> counter assignment
};

struct BoardLayout {
  std::map<int64_t, int> tape_cells;  // cell index -> symbol
  int64_t head = 0;
  int machine_state = 0;
  std::vector<std::string> machine_permanents;
  std::vector<std::string> gadget_permanents;
  // (card, time counters) for everything placed in exile with suspend
  std::vector<std::pair<std::string, int64_t>> exile_schedule;
  std::map<int, std::string> symbol_types;  // symbol -> creature type tag
};

struct CompilationReport {
  BoardLayout layout;
  GadgetPlan plan;
  std::string sentence;  // empty for plain machine boards
  int states = 0;
  int symbols = 0;
  int watcher_count = 0;  // always states * symbols
  int64_t permanent_count = 0;
  int64_t tape_length = 0;  // number of nonblank cells
  bool audit_ok = false;
  std::vector<std::string> problems;
};

struct CapacityError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The creature types available as tape-symbol tags, in symbol order
// (blank first, then the divider's Elemental).
const std::vector<std::string>& symbol_type_pool();

// Zero-player board: every subsequent move is forced and each machine cycle
// advances the encoded tape by exactly one step of `tm` from `cfg`.
engine::GameState compile_machine(const tm::TuringMachineSpec& tm,
                                  const tm::MachineConfig& cfg,
                                  CompilationReport* report = nullptr);

// Full mate-in-n board for a prenex sentence: dormant search machine plus
// countdown, write gadget, control-swap schedule, and cleanup chain.
engine::GameState compile_mate_in_n(const tm::ArithmeticSentence& sentence,
                                    CompilationReport* report = nullptr);

// Reads the tape bank back out of a board. Only defined at cycle
// boundaries (untap, empty stack); anywhere else is a DecodeError.
tm::MachineConfig decode_board_tape(const engine::GameState& s);

// Re-derives the board inventory and checks it against the report:
// every card known, counts matching, countdowns as planned.
CompilationReport audit(const engine::GameState& s,
                        const CompilationReport& report);

}  // namespace mtg::compiler
