// Command-line front end: compile boards, simulate machines, replay scripted
// runs, solve bounded mate-in-n instances, and verify bisimulation.
#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>

#include "mtg/harness.hpp"

using namespace mtg;
using ojson = nlohmann::ordered_json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

ojson config_to_json(const tm::MachineConfig& cfg) {
  ojson tape = ojson::array();
  for (const auto& [cell, sym] : cfg.tape) tape.push_back({cell, sym});
  return {{"tape", std::move(tape)},
          {"head", cfg.head},
          {"state", cfg.state},
          {"steps", cfg.steps_taken}};
}

ojson report_to_json(const compiler::CompilationReport& rep) {
  ojson j;
  j["sentence"] = rep.sentence;
  j["states"] = rep.states;
  j["symbols"] = rep.symbols;
  j["watchers"] = rep.watcher_count;
  j["permanents"] = rep.permanent_count;
  j["tape_length"] = rep.tape_length;
  j["rounds"] = rep.plan.n;
  ojson swapped = ojson::array();
  for (bool b : rep.plan.swapped_round) swapped.push_back(b);
  j["swapped_rounds"] = std::move(swapped);
  j["countdown"] = rep.plan.countdown;
  ojson syms = ojson::object();
  for (const auto& [sym, type] : rep.layout.symbol_types)
    syms[std::to_string(sym)] = type;
  j["symbol_types"] = std::move(syms);
  return j;
}

std::vector<uint64_t> parse_inputs(const std::string& csv) {
  std::vector<uint64_t> out;
  std::istringstream is(csv);
  std::string item;
  while (std::getline(is, item, ','))
    if (!item.empty()) out.push_back(std::stoull(item));
  return out;
}

int cmd_simulate(const std::string& machine_file, int64_t steps,
                 const std::string& trace_out) {
  tm::TuringMachineSpec machine = tm::machine_from_json(slurp(machine_file));
  engine::GameState s = compiler::compile_machine(machine, tm::MachineConfig{});
  engine::Log log;
  int64_t cap = steps * 4096 + 4096;
  // run to the cycle boundary so the tape bank is decodable
  while (!s.game_over() &&
         !(s.machine_steps >= steps && s.stack.empty() &&
           s.phase_step == engine::Step::Untap)) {
    if (cap-- <= 0) throw std::runtime_error("simulation stalled");
    auto acts = engine::legal_actions(s, engine::current_decider(s));
    if (acts.size() != 1) {
      std::cerr << "forcedness violation: " << acts.size()
                << " legal actions\n";
      return 1;
    }
    engine::apply_action_inplace(s, acts[0], &log);
  }
  if (!trace_out.empty()) spit(trace_out, harness::trace_to_jsonl(log));
  ojson out;
  out["machine_steps"] = s.machine_steps;
  out["game_over"] = s.game_over();
  out["first_player_won"] = s.won_by == 0;
  if (!s.game_over())
    out["tape"] = config_to_json(compiler::decode_board_tape(s));
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_compile(const std::string& sentence, const std::string& machine_file,
                const std::string& out_file) {
  compiler::CompilationReport rep;
  engine::GameState s;
  if (!sentence.empty()) {
    s = compiler::compile_mate_in_n(tm::parse_sentence(sentence), &rep);
  } else {
    tm::TuringMachineSpec machine = tm::machine_from_json(slurp(machine_file));
    s = compiler::compile_machine(machine, tm::MachineConfig{}, &rep);
  }
  spit(out_file, harness::state_to_json(s));
  std::cout << report_to_json(rep).dump(2) << "\n";
  return 0;
}

int cmd_run(const std::string& state_file, const std::string& inputs,
            int64_t max_turns, const std::string& trace_out) {
  engine::GameState s = harness::state_from_json(slurp(state_file));
  harness::InputScript script;
  script.values = parse_inputs(inputs);
  engine::Log log;
  harness::Verdict v = harness::run_forced(s, script, max_turns, 50'000'000,
                                           trace_out.empty() ? nullptr : &log);
  if (!trace_out.empty()) spit(trace_out, harness::trace_to_jsonl(log));
  ojson out;
  out["outcome"] = v.outcome == harness::Verdict::Outcome::FirstPlayerWin
                       ? "first_player_win"
                       : "no_win_within_horizon";
  out["turn"] = v.turn;
  ojson rounds = ojson::array();
  for (const auto& d : v.round_decisions)
    rounds.push_back({{"turn", d.turn},
                      {"active", d.active},
                      {"decider", d.decider},
                      {"value", d.value}});
  out["rounds"] = std::move(rounds);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int cmd_solve(const std::string& state_file, int64_t bound) {
  engine::GameState s = harness::state_from_json(slurp(state_file));
  harness::SolveResult r = harness::solve_game(s, bound);
  ojson out;
  out["mate_exists"] = r.mate_exists;
  out["oracle_truth"] = r.oracle_truth;
  out["agreement"] = r.agreement;
  out["leaves_evaluated"] = r.leaves_evaluated;
  out["swap_attribution_ok"] = r.swap_attribution_ok;
  if (r.witness) out["witness"] = r.witness->values;
  std::cout << out.dump(2) << "\n";
  return r.agreement && r.swap_attribution_ok ? 0 : 1;
}

int cmd_verify(const std::string& machine_file, int64_t cycles) {
  tm::TuringMachineSpec machine = tm::machine_from_json(slurp(machine_file));
  harness::BisimulationReport r =
      harness::verify_bisimulation(machine, tm::MachineConfig{}, cycles);
  ojson out;
  out["ok"] = r.ok;
  out["cycles_checked"] = r.cycles_checked;
  out["halted"] = r.halted;
  if (r.divergence_cycle >= 0) {
    out["divergence_cycle"] = r.divergence_cycle;
    out["engine_config"] = config_to_json(r.engine_config);
    out["reference_config"] = config_to_json(r.reference_config);
  }
  ojson hist = ojson::object();
  for (const auto& [arity, count] : r.forcedness_histogram)
    hist[std::to_string(arity)] = count;
  out["forcedness_histogram"] = std::move(hist);
  std::cout << out.dump(2) << "\n";
  return r.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"deterministic rules engine, board compiler, and verifiers"};
  app.require_subcommand(1);

  std::string machine_file, sentence, state_file, out_file, trace_out, inputs;
  int64_t steps = 0, max_turns = 0, bound = 0, cycles = 0;

  auto* simulate = app.add_subcommand(
      "simulate", "run a compiled machine board a number of machine steps");
  simulate->add_option("--machine", machine_file)->required();
  simulate->add_option("--steps", steps)->required();
  simulate->add_option("--trace", trace_out);

  auto* compile = app.add_subcommand(
      "compile", "emit a board state from a sentence or a machine file");
  compile->add_option("--sentence", sentence);
  compile->add_option("--machine", machine_file);
  compile->add_option("--out", out_file)->required();

  auto* run = app.add_subcommand(
      "run", "replay a board with scripted round inputs");
  run->add_option("--state", state_file)->required();
  run->add_option("--inputs", inputs);
  run->add_option("--max-turns", max_turns)->required();
  run->add_option("--trace", trace_out);

  auto* solve = app.add_subcommand(
      "solve", "bounded mate-in-n search cross-checked against the oracle");
  solve->add_option("--state", state_file)->required();
  solve->add_option("--bound", bound)->required();

  auto* verify = app.add_subcommand(
      "verify", "engine-vs-interpreter bisimulation for a machine file");
  verify->add_option("--machine", machine_file)->required();
  verify->add_option("--cycles", cycles)->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return cmd_simulate(machine_file, steps, trace_out);
    if (compile->parsed()) {
      if (sentence.empty() == machine_file.empty()) {
        std::cerr << "compile needs exactly one of --sentence, --machine\n";
        return 2;
      }
      return cmd_compile(sentence, machine_file, out_file);
    }
    if (run->parsed()) return cmd_run(state_file, inputs, max_turns, trace_out);
    if (solve->parsed()) return cmd_solve(state_file, bound);
    if (verify->parsed()) return cmd_verify(machine_file, cycles);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
