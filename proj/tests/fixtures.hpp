#pragma once

#include "mtg/tm.hpp"

// Small hand-run machines shared by the unit and acceptance suites.
namespace fixtures {

using namespace mtg::tm;

// Appends one mark to a unary string and halts. States: scan, done.
inline TuringMachineSpec unary_incrementer() {
  TuringMachineSpec m;
  m.states = {"scan", "done"};
  m.alphabet = {"_", "1"};
  m.transitions[{0, 1}] = {0, 1, Dir::Right};
  m.transitions[{0, 0}] = {1, 1, Dir::Right};
  return m;
}

// Writes a mark and moves right forever; never halts, tape grows.
inline TuringMachineSpec perpetual_incrementer() {
  TuringMachineSpec m;
  m.states = {"go"};
  m.alphabet = {"_", "1"};
  m.transitions[{0, 0}] = {0, 1, Dir::Right};
  m.transitions[{0, 1}] = {0, 1, Dir::Right};
  return m;
}

// Scans right over a 0/1 string toggling parity, writes E or O after the
// string, and halts. States: even, odd, done.
inline TuringMachineSpec parity_marker() {
  TuringMachineSpec m;
  m.states = {"even", "odd", "done"};
  m.alphabet = {"_", "0", "1", "E", "O"};
  m.transitions[{0, 1}] = {0, 1, Dir::Right};   // even, '0'
  m.transitions[{0, 2}] = {1, 2, Dir::Right};   // even, '1'
  m.transitions[{1, 1}] = {1, 1, Dir::Right};
  m.transitions[{1, 2}] = {0, 2, Dir::Right};
  m.transitions[{0, 0}] = {2, 3, Dir::Right};   // blank -> E
  m.transitions[{1, 0}] = {2, 4, Dir::Right};   // blank -> O
  return m;
}

// Bounces forever between a wall at cell 0 and the right end of a growing
// mark string. States: right, left; alphabet: _, W, M.
inline TuringMachineSpec wall_bouncer() {
  TuringMachineSpec m;
  m.states = {"right", "left"};
  m.alphabet = {"_", "W", "M"};
  m.transitions[{0, 1}] = {0, 1, Dir::Right};  // over wall
  m.transitions[{0, 2}] = {0, 2, Dir::Right};  // over marks
  m.transitions[{0, 0}] = {1, 2, Dir::Left};   // write mark, turn
  m.transitions[{1, 2}] = {1, 2, Dir::Left};
  m.transitions[{1, 1}] = {0, 1, Dir::Right};  // wall, turn
  return m;
}

inline MachineConfig wall_bouncer_start() {
  MachineConfig cfg;
  cfg.write(0, 1);  // W
  return cfg;
}

// Three states cycling over cells 0 and 1 forever.
inline TuringMachineSpec three_state_loop() {
  TuringMachineSpec m;
  m.states = {"q0", "q1", "q2"};
  m.alphabet = {"_", "a", "b"};
  // 'a' only ever sits at cell 0 and 'b' at cell 1, so the symbol fixes
  // the direction and the states just cycle.
  m.transitions[{0, 0}] = {1, 1, Dir::Right};
  m.transitions[{0, 1}] = {1, 1, Dir::Right};
  m.transitions[{0, 2}] = {1, 2, Dir::Left};
  m.transitions[{1, 0}] = {2, 2, Dir::Left};
  m.transitions[{1, 1}] = {2, 1, Dir::Right};
  m.transitions[{1, 2}] = {2, 2, Dir::Left};
  m.transitions[{2, 1}] = {0, 1, Dir::Right};
  m.transitions[{2, 2}] = {0, 2, Dir::Left};
  return m;
}

inline MachineConfig tape_of(const std::string& cells,
                             const TuringMachineSpec& m) {
  MachineConfig cfg;
  for (size_t i = 0; i < cells.size(); ++i) {
    std::string s(1, cells[i]);
    for (int a = 0; a < m.num_symbols(); ++a)
      if (m.alphabet[a] == s) cfg.write(static_cast<int64_t>(i), a);
  }
  return cfg;
}

inline std::string tape_string(const MachineConfig& cfg,
                               const TuringMachineSpec& m, int64_t len) {
  std::string out;
  for (int64_t i = 0; i < len; ++i) out += m.alphabet[cfg.read(i)];
  return out;
}

}  // namespace fixtures
