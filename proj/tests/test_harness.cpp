#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fixtures.hpp"
#include "mtg/harness.hpp"

using namespace mtg;
using namespace mtg::engine;
using namespace mtg::harness;

namespace {

InputScript script_of(std::vector<uint64_t> vals) {
  InputScript s;
  s.values = std::move(vals);
  return s;
}

GameState mate_board(const std::string& sentence) {
  return compiler::compile_mate_in_n(tm::parse_sentence(sentence));
}

void check_all_ones(const std::map<int, int64_t>& histogram) {
  for (const auto& [arity, count] : histogram) {
    CHECK(arity == 1);
    CHECK(count > 0);
  }
}

}  // namespace

TEST_CASE("a correct input wins the one-round board") {
  GameState s = mate_board("E y1 : (y1 - 2 = 0)");
  Verdict v = run_forced(s, script_of({2}), 1200);
  CHECK(v.outcome == Verdict::Outcome::FirstPlayerWin);
  check_all_ones(v.forcedness_histogram);
  REQUIRE(v.round_decisions.size() == 1);
  CHECK(v.round_decisions[0].active == 0);
  CHECK(v.round_decisions[0].decider == 0);
  CHECK(v.round_decisions[0].value == 2);
}

TEST_CASE("a wrong input never reaches a win") {
  GameState s = mate_board("E y1 : (y1 - 2 = 0)");
  Verdict v = run_forced(s, script_of({3}), 120);
  CHECK(v.outcome == Verdict::Outcome::NoWinWithinHorizon);
  CHECK(v.turn == 120);
  check_all_ones(v.forcedness_histogram);
}

TEST_CASE("a winning script found late still wins with a larger horizon") {
  GameState s = mate_board("E y1 : (y1 - 2 = 0)");
  Verdict tight = run_forced(s, script_of({2}), 8);
  CHECK(tight.outcome == Verdict::Outcome::NoWinWithinHorizon);
  Verdict wide = run_forced(s, script_of({2}), 1200);
  CHECK(wide.outcome == Verdict::Outcome::FirstPlayerWin);
  CHECK(wide.turn > 8);
}

TEST_CASE("a zero-player halting board wins with an empty script") {
  GameState s = compiler::compile_machine(fixtures::unary_incrementer(),
                                          fixtures::tape_of(
                                              "11", fixtures::unary_incrementer()));
  Verdict v = run_forced(s, script_of({}), 200);
  CHECK(v.outcome == Verdict::Outcome::FirstPlayerWin);
  CHECK(v.round_decisions.empty());
  check_all_ones(v.forcedness_histogram);
}

TEST_CASE("the script must not run dry at an open choice") {
  GameState s = mate_board("E y1 : (y1 - 2 = 0)");
  CHECK_THROWS_AS(run_forced(s, script_of({}), 1200), HarnessError);
}

TEST_CASE("end-game probe reports the first unforced point") {
  GameState s = mate_board("E y1 : (y1 - 1 = 0)");
  EndGameProbe probe = detect_end_game(s, 50);
  CHECK(probe.kind == EndGameProbe::Kind::NotEndGame);
  CHECK(probe.step == "combat_damage");
}

TEST_CASE("end-game probe finds no unforced point on a running machine") {
  GameState s = compiler::compile_machine(fixtures::perpetual_incrementer(),
                                          tm::MachineConfig{});
  EndGameProbe probe = detect_end_game(s, 30);
  CHECK(probe.kind == EndGameProbe::Kind::Unknown);
  CHECK(probe.horizon == 30);
}

TEST_CASE("a finished game is an end game") {
  GameState s;
  s.players[1].lost_flag = true;
  EndGameProbe probe = detect_end_game(s, 10);
  CHECK(probe.kind == EndGameProbe::Kind::InEndGame);
}

TEST_CASE("the bounded oracle evaluates alternating quantifiers") {
  CHECK(solve_bounded(tm::parse_sentence("E y1 A y2 : (y1*y2 - y2 = 0)"), 4));
  CHECK_FALSE(solve_bounded(tm::parse_sentence("E y1 : (y1 + 1 = 0)"), 6));
  CHECK(solve_bounded(tm::parse_sentence("E y1 : (0 = 0)"), 0));
  // x participates as the innermost existential search
  CHECK(solve_bounded(tm::parse_sentence("E y1 : (x - 3 = 0)"), 4));
  CHECK_FALSE(solve_bounded(tm::parse_sentence("E y1 : (x - 9 = 0)"), 4));
}

TEST_CASE("the solver agrees with the oracle on a winnable board") {
  GameState s = mate_board("E y1 : (y1 - 2 = 0)");
  SolveResult r = solve_game(s, 3);
  CHECK(r.mate_exists);
  CHECK(r.oracle_truth);
  CHECK(r.agreement);
  REQUIRE(r.witness);
  CHECK(r.witness->values == std::vector<uint64_t>{2});
  check_all_ones(r.forcedness_histogram);
  CHECK(r.swap_attribution_ok);
}

TEST_CASE("the solver agrees with the oracle on an unwinnable board") {
  GameState s = mate_board("E y1 : (y1 + 1 = 0)");
  SolveResult r = solve_game(s, 2);
  CHECK_FALSE(r.mate_exists);
  CHECK_FALSE(r.oracle_truth);
  CHECK(r.agreement);
  CHECK_FALSE(r.witness);
  CHECK(r.leaves_evaluated == 3);  // every first-player choice loses
}

TEST_CASE("a universal round is decided by the opponent") {
  // true: y1 = 1 forces y1*y2 - y2 = 0 for every y2
  GameState s = mate_board("E y1 A y2 : (y1*y2 - y2 = 0)");
  SolveResult r = solve_game(s, 2);
  CHECK(r.mate_exists);
  CHECK(r.agreement);
  CHECK(r.swap_attribution_ok);
  check_all_ones(r.forcedness_histogram);
  REQUIRE(r.witness);
  CHECK(r.witness->values[0] == 1);
}

TEST_CASE("a universal round can refute the sentence") {
  // false: whatever y1, the opponent picks y2 = y1 + 1
  GameState s = mate_board("E y1 A y2 : (y1 - y2 = 0)");
  SolveResult r = solve_game(s, 2);
  CHECK_FALSE(r.mate_exists);
  CHECK(r.agreement);
  CHECK(r.swap_attribution_ok);
}

TEST_CASE("bisimulation holds on halting and non-halting machines") {
  BisimulationReport bounce = verify_bisimulation(
      fixtures::wall_bouncer(), fixtures::wall_bouncer_start(), 40);
  CHECK(bounce.ok);
  CHECK(bounce.cycles_checked == 40);
  CHECK_FALSE(bounce.halted);
  check_all_ones(bounce.forcedness_histogram);

  BisimulationReport inc = verify_bisimulation(
      fixtures::unary_incrementer(),
      fixtures::tape_of("111", fixtures::unary_incrementer()), 50);
  CHECK(inc.ok);
  CHECK(inc.halted);  // halts long before 50 cycles; the board must win
}

TEST_CASE("a corrupted watcher diverges at the first cycle") {
  tm::TuringMachineSpec m = fixtures::wall_bouncer();
  tm::MachineConfig cfg = fixtures::wall_bouncer_start();
  GameState board = compiler::compile_machine(m, cfg);
  for (auto& p : board.battlefield)
    if (p.watch_bank >= 0 && !p.halt_watcher) p.write_sym = 0;
  BisimulationReport r = verify_bisimulation(m, cfg, 5, &board);
  CHECK_FALSE(r.ok);
  CHECK(r.divergence_cycle == 1);
}

TEST_CASE("board states survive a serialization roundtrip byte for byte") {
  GameState s = mate_board("E y1 A y2 : (y1*y2 - y2 = 0)");
  std::string one = state_to_json(s);
  GameState back = state_from_json(one);
  std::string two = state_to_json(back);
  CHECK(one == two);
  // the reloaded board plays identically
  Verdict a = run_forced(s, script_of({1, 2}), 2200);
  Verdict b = run_forced(back, script_of({1, 2}), 2200);
  CHECK(a.outcome == b.outcome);
  CHECK(a.turn == b.turn);
}

TEST_CASE("identical runs emit byte-identical traces") {
  GameState s = mate_board("E y1 : (y1 - 1 = 0)");
  Log log1, log2;
  run_forced(s, script_of({1}), 1200, 2'000'000, &log1);
  run_forced(s, script_of({1}), 1200, 2'000'000, &log2);
  std::string t1 = trace_to_jsonl(log1), t2 = trace_to_jsonl(log2);
  CHECK(t1 == t2);
  CHECK(t1.find('\n') != std::string::npos);
}
