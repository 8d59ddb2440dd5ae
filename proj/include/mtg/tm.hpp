#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

// Reference Turing-machine interpreter, the inverse-unary input codec, and
// the sentence -> search-machine builder. Everything here is pure and value
// based; it is the oracle the game engine is checked against.
namespace mtg::tm {

using BigInt = boost::multiprecision::cpp_int;

using StateId = int;
using Symbol = int;  // index into TuringMachineSpec::alphabet

enum class Dir { Left, Right };

struct Transition {
  StateId next_state;
  Symbol write;
  Dir dir;
};

// One-sided tape machine. Halting = reaching a (state, symbol) pair with no
// transition. The head may never move left of cell 0.
struct TuringMachineSpec {
  std::vector<std::string> states;           // index = StateId
  std::vector<std::string> alphabet;         // index = Symbol; [0] is blank
  std::map<std::pair<StateId, Symbol>, Transition> transitions;
  StateId initial_state = 0;

  static constexpr Symbol kBlank = 0;

  int num_states() const { return static_cast<int>(states.size()); }
  int num_symbols() const { return static_cast<int>(alphabet.size()); }
  const Transition* find(StateId s, Symbol a) const {
    auto it = transitions.find({s, a});
    return it == transitions.end() ? nullptr : &it->second;
  }
  void validate() const;
};

struct MachineConfig {
  std::map<int64_t, Symbol> tape;  // sparse, default blank; never stores blank
  int64_t head = 0;
  StateId state = 0;
  int64_t steps_taken = 0;

  Symbol read(int64_t cell) const {
    auto it = tape.find(cell);
    return it == tape.end() ? TuringMachineSpec::kBlank : it->second;
  }
  void write(int64_t cell, Symbol a) {
    if (a == TuringMachineSpec::kBlank)
      tape.erase(cell);
    else
      tape[cell] = a;
  }
  bool operator==(const MachineConfig&) const = default;
};

struct StepError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One transition, or nullopt when no transition exists (halted).
// Throws StepError on a left move from cell 0.
std::optional<MachineConfig> step(const TuringMachineSpec& tm,
                                  const MachineConfig& cfg);

struct RunTrace {
  std::vector<MachineConfig> configs;  // configs[0] is the start config
  bool halted = false;
};

RunTrace run(const TuringMachineSpec& tm, const MachineConfig& start,
             int64_t max_steps);

// Runs without keeping intermediate configs; returns the final config.
MachineConfig run_to(const TuringMachineSpec& tm, const MachineConfig& start,
                     int64_t max_steps, bool* halted = nullptr);

// ---------------------------------------------------------------------------
// Arithmetic sentences

enum class Quantifier { Exists, ForAll };

// Expression tree over x, y1..yn with integer coefficients and +, -, *.
struct Poly {
  enum class Kind { Const, Var, Add, Sub, Mul };
  Kind kind = Kind::Const;
  BigInt value;    // Const
  int var = -1;    // Var: 0 = x, i >= 1 = y_i
  std::vector<Poly> args;

  static Poly constant(BigInt v) {
    Poly p;
    p.kind = Kind::Const;
    p.value = std::move(v);
    return p;
  }
  static Poly variable(int v) {
    Poly p;
    p.kind = Kind::Var;
    p.var = v;
    return p;
  }
  static Poly node(Kind k, Poly a, Poly b) {
    Poly p;
    p.kind = k;
    p.args = {std::move(a), std::move(b)};
    return p;
  }
};

// Prenex sentence (Ex)(Q1 y1)...(Qn yn) P(x, y1..yn) = 0 over the naturals.
// x is always the machine-searched existential and is implicit in the
// quantifier list; quantifiers[0] must be Exists and the tags alternate.
struct ArithmeticSentence {
  std::vector<Quantifier> quantifiers;  // length n
  Poly polynomial;
  std::string source;  // original text, when parsed

  int n() const { return static_cast<int>(quantifiers.size()); }
  void validate() const;
};

struct InputAssignment {
  std::vector<int64_t> values;  // c_1 .. c_n, natural numbers
};

// Exact evaluation. vals.size() must equal the number of y variables used.
BigInt eval_polynomial(const ArithmeticSentence& s, const BigInt& x,
                       const std::vector<BigInt>& vals);

// Parses the prenex grammar `E y1 A y2 : (y1*y2 - y2 = 0)`. `x` may appear
// in the polynomial and is implicitly existential.
ArithmeticSentence parse_sentence(const std::string& text);

// ---------------------------------------------------------------------------
// Inverse-unary input codec

// The divider symbol used by the codec and the search machine. Symbol 1 in
// every machine produced by build_search_machine.
inline constexpr Symbol kDivider = 1;

// m -> m blank cells followed by one divider cell, concatenated in order.
std::vector<Symbol> encode_inputs(const InputAssignment& vals);

// Exact inverse; throws std::invalid_argument when the cells do not end with
// a divider.
InputAssignment decode_inputs(const std::vector<Symbol>& cells);

// ---------------------------------------------------------------------------
// Search machine

// Extra structure reported by build_search_machine so callers can bound runs.
struct SearchMachineInfo {
  StateId x_bump_state = -1;  // entering this state increments the x candidate
};

// Builds a machine that reads n inverse-unary inputs from the left end of the
// tape (physically ordered c_n .. c_1, the order the game's write gadget
// produces), then enumerates x = 0, 1, 2, ... and halts iff P(x, c) = 0 for
// some x. The input region must start at cell 0 with the head on cell 0.
TuringMachineSpec build_search_machine(const ArithmeticSentence& s,
                                       SearchMachineInfo* info = nullptr);

// Initial config for a compiled search machine: encoded inputs in reverse
// round order starting at cell 0, head at 0.
MachineConfig search_start_config(const InputAssignment& vals);

// Steps until the machine has exhausted all candidates x <= bound without
// halting (returns the step count at which x is bumped past `bound`), or -1
// if the machine halts first. Used to pick run horizons that cover exactly
// the x-search up to `bound`.
int64_t steps_to_exhaust(const TuringMachineSpec& tm,
                         const SearchMachineInfo& info,
                         const MachineConfig& start, int64_t bound,
                         int64_t max_steps);

// ---------------------------------------------------------------------------
// Machine spec file format (JSON): states, alphabet, transition 5-tuples,
// initial state.
std::string machine_to_json(const TuringMachineSpec& tm);
TuringMachineSpec machine_from_json(const std::string& json_text);

}  // namespace mtg::tm
