#include "mtg/harness.hpp"

#include <algorithm>
#include <functional>
#include <json.hpp>
#include <sstream>

namespace mtg::harness {

using namespace mtg::engine;
using ojson = nlohmann::ordered_json;

namespace {

bool at_open_choice(const GameState& s) {
  return s.pump_pending && s.phase_step == Step::CombatDamage;
}

std::string point_label(const GameState& s) {
  std::ostringstream os;
  os << "turn " << s.turn_number << " " << step_name(s.phase_step);
  return os.str();
}

}  // namespace

Verdict run_forced(const GameState& start, const InputScript& script,
                   int64_t max_turns, int64_t step_budget, Log* log) {
  GameState s = start;
  Verdict v;
  size_t next_value = 0;
  while (true) {
    if (s.game_over()) {
      v.turn = s.turn_number;
      v.outcome = (s.players[1].lost_flag && !s.players[0].lost_flag)
                      ? Verdict::Outcome::FirstPlayerWin
                      : Verdict::Outcome::NoWinWithinHorizon;
      return v;
    }
    if (s.turn_number >= max_turns) {
      v.turn = max_turns;
      v.outcome = Verdict::Outcome::NoWinWithinHorizon;
      return v;
    }
    if (step_budget-- <= 0)
      throw HarnessError("step budget exceeded at " + point_label(s));
    auto acts = legal_actions(s, current_decider(s));
    if (acts.empty())
      throw HarnessError("no legal action at " + point_label(s));
    if (at_open_choice(s)) {
      if (next_value >= script.values.size())
        throw HarnessError("input script exhausted at " + point_label(s));
      uint64_t val = script.values[next_value++];
      v.round_decisions.push_back(
          {s.turn_number, s.active_player, s.turn_controller, val});
      apply_action_inplace(s, Action::choose_integer(val), log);
      continue;
    }
    v.forcedness_histogram[int(acts.size())] += 1;
    if (acts.size() != 1)
      throw HarnessError("forcedness violation: " +
                         std::to_string(acts.size()) + " legal actions at " +
                         point_label(s));
    apply_action_inplace(s, acts[0], log);
  }
}

EndGameProbe detect_end_game(const GameState& start, int64_t horizon) {
  GameState s = start;
  const int64_t first_turn = s.turn_number;
  int64_t action_cap = horizon * 4096 + 4096;
  EndGameProbe probe;
  while (s.turn_number - first_turn < horizon && action_cap-- > 0) {
    if (s.game_over()) {
      probe.kind = EndGameProbe::Kind::InEndGame;
      return probe;
    }
    auto acts = legal_actions(s, current_decider(s));
    if (acts.size() >= 2) {
      probe.kind = EndGameProbe::Kind::NotEndGame;
      probe.turn = s.turn_number;
      probe.step = step_name(s.phase_step);
      return probe;
    }
    apply_action_inplace(s, acts[0]);
  }
  probe.kind = EndGameProbe::Kind::Unknown;
  probe.horizon = horizon;
  return probe;
}

bool solve_bounded(const tm::ArithmeticSentence& sentence, int64_t bound) {
  std::vector<tm::BigInt> ys;
  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == sentence.quantifiers.size()) {
      for (int64_t x = 0; x <= bound; ++x)
        if (tm::eval_polynomial(sentence, x, ys) == 0) return true;
      return false;
    }
    bool exists = sentence.quantifiers[i] == tm::Quantifier::Exists;
    for (int64_t c = 0; c <= bound; ++c) {
      ys.push_back(c);
      bool sub = rec(i + 1);
      ys.pop_back();
      if (sub == exists) return exists;
    }
    return !exists;
  };
  return rec(0);
}

namespace {

// horizon for one leaf: enough game turns for the input rounds plus the
// x search up to `bound` (one machine step per two of the first player's
// turns), with slack for the cleanup chain
int64_t leaf_turn_horizon(const tm::TuringMachineSpec& machine,
                          const tm::SearchMachineInfo& info,
                          const std::vector<uint64_t>& script, int64_t bound) {
  constexpr int64_t kStepCap = 5'000'000;
  tm::InputAssignment vals;
  for (uint64_t c : script) vals.values.push_back(int64_t(c));
  tm::MachineConfig cfg = tm::search_start_config(vals);
  int64_t machine_steps = tm::steps_to_exhaust(machine, info, cfg, bound,
                                               kStepCap);
  if (machine_steps < 0) {
    bool halted = false;
    tm::MachineConfig fin = tm::run_to(machine, cfg, kStepCap, &halted);
    if (!halted)
      throw HarnessError("machine neither halts nor exhausts the bound");
    machine_steps = fin.steps_taken;
  }
  int64_t n = int64_t(script.size());
  return 2 * (n + 2) + 4 * (machine_steps + 4) + 24;
}

}  // namespace

SolveResult solve_game(const GameState& start, int64_t bound) {
  auto meta = [&](const std::string& key) -> const std::string& {
    auto it = start.meta.find(key);
    if (it == start.meta.end())
      throw HarnessError("board lacks required metadata: " + key);
    return it->second;
  };
  const int n = std::stoi(meta("rounds"));
  const std::string quants = meta("quantifiers");
  tm::TuringMachineSpec machine = tm::machine_from_json(meta("machine"));
  tm::SearchMachineInfo info;
  info.x_bump_state = std::stoi(meta("x_bump_state"));
  tm::ArithmeticSentence sentence = tm::parse_sentence(meta("sentence"));

  SolveResult result;
  result.swap_attribution_ok = true;
  std::vector<uint64_t> prefix;

  std::function<bool(size_t)> rec = [&](size_t i) -> bool {
    if (i == size_t(n)) {
      InputScript script;
      script.values = prefix;
      script.source = InputScript::Source::ExhaustiveSearch;
      int64_t horizon = leaf_turn_horizon(machine, info, prefix, bound);
      Verdict v = run_forced(start, script, horizon, horizon * 512 + 65536);
      result.leaves_evaluated += 1;
      for (auto& [k, c] : v.forcedness_histogram)
        result.forcedness_histogram[k] += c;
      if (v.round_decisions.size() != size_t(n))
        throw HarnessError("leaf consumed a wrong number of script values");
      for (int r = 0; r < n; ++r) {
        bool swapped = quants[size_t(r)] == 'A';
        const auto& d = v.round_decisions[size_t(r)];
        if (d.active != 0 || (d.decider == d.active) == swapped)
          result.swap_attribution_ok = false;
      }
      return v.outcome == Verdict::Outcome::FirstPlayerWin;
    }
    bool maximizing = quants[i] == 'E';
    for (int64_t c = 0; c <= bound; ++c) {
      prefix.push_back(uint64_t(c));
      bool sub = rec(i + 1);
      prefix.pop_back();
      if (sub == maximizing) return maximizing;
    }
    return !maximizing;
  };

  result.mate_exists = rec(0);
  if (result.mate_exists) {
    // principal variation: the first winning choice at maximizing rounds,
    // 0 at minimizing rounds (every choice there leads to a win)
    InputScript witness;
    witness.source = InputScript::Source::ExhaustiveSearch;
    for (int i = 0; i < n; ++i) {
      bool maximizing = quants[size_t(i)] == 'E';
      int64_t pick = 0;
      if (maximizing) {
        for (int64_t c = 0; c <= bound; ++c) {
          prefix.push_back(uint64_t(c));
          bool sub = rec(size_t(i) + 1);
          prefix.pop_back();
          if (sub) {
            pick = c;
            break;
          }
        }
      }
      prefix.push_back(uint64_t(pick));
      witness.values.push_back(uint64_t(pick));
    }
    prefix.clear();
    result.witness = std::move(witness);
  }
  result.oracle_truth = solve_bounded(sentence, bound);
  result.agreement = result.mate_exists == result.oracle_truth;
  return result;
}

BisimulationReport verify_bisimulation(const tm::TuringMachineSpec& machine,
                                       const tm::MachineConfig& cfg,
                                       int64_t k,
                                       const engine::GameState* board) {
  BisimulationReport report;
  GameState s = board ? *board : compiler::compile_machine(machine, cfg);
  tm::MachineConfig ref = cfg;

  // runs the board forward to the next cycle boundary (or game end),
  // tallying how many actions were legal at every decision point
  auto advance_engine = [&](int64_t target_steps) -> bool {
    int64_t cap = 1'000'000;
    while (!s.game_over() &&
           !(s.machine_steps >= target_steps && s.stack.empty() &&
             s.phase_step == Step::Untap)) {
      if (cap-- <= 0) throw HarnessError("bisimulation cycle did not close");
      auto acts = legal_actions(s, current_decider(s));
      report.forcedness_histogram[int(acts.size())] += 1;
      if (acts.size() != 1) return false;
      apply_action_inplace(s, acts[0]);
    }
    return true;
  };

  for (int64_t cycle = 1; cycle <= k; ++cycle) {
    auto next = tm::step(machine, ref);
    if (!next) {
      // reference halted; the board must reach the forced win
      report.halted = true;
      if (!advance_engine(ref.steps_taken + 1) && !s.game_over()) {
        report.divergence_cycle = cycle;
        return report;
      }
      int64_t cap = 1'000'000;
      while (!s.game_over() && cap-- > 0) {
        auto acts = legal_actions(s, current_decider(s));
        report.forcedness_histogram[int(acts.size())] += 1;
        if (acts.size() != 1) {
          report.divergence_cycle = cycle;
          return report;
        }
        apply_action_inplace(s, acts[0]);
      }
      report.ok = s.won_by == 0;
      if (!report.ok) report.divergence_cycle = cycle;
      report.cycles_checked = cycle;
      return report;
    }
    ref = *next;
    if (!advance_engine(ref.steps_taken)) {
      report.divergence_cycle = cycle;
      report.engine_config = compiler::decode_board_tape(s);
      report.reference_config = ref;
      return report;
    }
    tm::MachineConfig decoded = compiler::decode_board_tape(s);
    report.cycles_checked = cycle;
    if (!(decoded == ref)) {
      report.divergence_cycle = cycle;
      report.engine_config = decoded;
      report.reference_config = ref;
      return report;
    }
  }
  report.ok = true;
  return report;
}

// ---------------------------------------------------------------------------
// serialization

namespace {

ojson edits_to_json(const std::vector<TextEdit>& edits) {
  ojson arr = ojson::array();
  for (const auto& e : edits)
    arr.push_back({{"kind", int(e.kind)},
                   {"from", e.from_tag},
                   {"to", e.to_tag}});
  return arr;
}

std::vector<TextEdit> edits_from_json(const ojson& arr) {
  std::vector<TextEdit> out;
  for (const auto& j : arr) {
    TextEdit e;
    e.kind = TextEdit::Kind(j.at("kind").get<int>());
    e.from_tag = j.at("from").get<std::string>();
    e.to_tag = j.at("to").get<std::string>();
    out.push_back(std::move(e));
  }
  return out;
}

ojson opt_to_json(const std::optional<int64_t>& v) {
  if (v) return *v;
  return nullptr;
}

ojson strings_to_json(const std::set<std::string>& xs) {
  ojson arr = ojson::array();
  for (const auto& x : xs) arr.push_back(x);
  return arr;
}

std::set<std::string> strings_from_json(const ojson& arr) {
  std::set<std::string> out;
  for (const auto& x : arr) out.insert(x.get<std::string>());
  return out;
}

}  // namespace

std::string state_to_json(const GameState& s) {
  ojson root;
  root["schema"] = "game-state/1";
  ojson players = ojson::array();
  for (const auto& pl : s.players)
    players.push_back({{"life", pl.life},
                       {"poison", pl.poison},
                       {"hand", pl.hand},
                       {"library", pl.library},
                       {"graveyard", pl.graveyard},
                       {"lost", pl.lost_flag}});
  root["players"] = std::move(players);

  ojson field = ojson::array();
  for (const auto& p : s.battlefield) {
    ojson j;
    j["id"] = p.id;
    j["card"] = p.card;
    j["controller"] = p.controller;
    j["creature"] = p.is_creature;
    j["land"] = p.is_land;
    j["aura"] = p.is_aura;
    j["equipment"] = p.is_equipment;
    j["power"] = opt_to_json(p.base_power);
    j["toughness"] = opt_to_json(p.base_toughness);
    j["counters"] = p.counters;
    j["creature_types"] = strings_to_json(p.creature_types);
    j["colors"] = strings_to_json(p.colors);
    j["token"] = p.is_token;
    j["phased_out"] = p.phased_out;
    j["has_phasing"] = p.has_phasing;
    j["bits"] = p.bits;
    j["attached_to"] = p.attached_to ? ojson(*p.attached_to) : ojson(nullptr);
    j["text_edits"] = edits_to_json(p.text_edits);
    j["watch_bank"] = p.watch_bank;
    j["watch_sym"] = p.watch_sym;
    j["write_sym"] = p.write_sym;
    j["next_bank"] = p.next_bank;
    j["move_dir"] = p.move_dir;
    j["halt_watcher"] = p.halt_watcher;
    j["tape_sym"] = p.tape_sym;
    j["head"] = p.is_head;
    j["params"] = p.params;
    j["eot_power"] = p.eot_power;
    j["eot_toughness"] = p.eot_toughness;
    j["gadget_priority"] = p.gadget_priority;
    field.push_back(std::move(j));
  }
  root["battlefield"] = std::move(field);

  ojson stack = ojson::array();
  for (const auto& e : s.stack) {
    ojson targets = ojson::array();
    for (const auto& t : e.targets)
      targets.push_back({{"kind", int(t.kind)}, {"id", t.id}});
    stack.push_back({{"id", e.id},
                     {"script", e.script},
                     {"source", e.source_card},
                     {"controller", e.controller},
                     {"targets", std::move(targets)},
                     {"params", e.params},
                     {"copy", e.is_copy},
                     {"triggered", e.from_triggered}});
  }
  root["stack"] = std::move(stack);

  ojson exile = ojson::array();
  for (const auto& x : s.exile)
    exile.push_back({{"id", x.id},
                     {"card", x.card},
                     {"owner", x.owner},
                     {"time", x.time_counters},
                     {"suspended", x.suspended},
                     {"ticks_on", x.ticks_on}});
  root["exile"] = std::move(exile);

  root["turn"] = s.turn_number;
  root["active"] = s.active_player;
  root["turn_controller"] = s.turn_controller;
  root["step"] = int(s.phase_step);
  root["priority"] = s.priority;
  root["passes"] = s.passes;
  ojson pend = ojson::array();
  for (const auto& p : s.pending_turn_controller)
    pend.push_back(p ? ojson(*p) : ojson(nullptr));
  root["pending_turn_controller"] = std::move(pend);
  root["attackers"] = s.attackers;
  root["pump_pending"] = s.pump_pending;
  root["damage_done"] = s.damage_done;
  ojson rets = ojson::array();
  for (const auto& r : s.pending_returns)
    rets.push_back({{"card", r.card},
                    {"to_controller", r.to_controller},
                    {"edits", edits_to_json(r.edits)}});
  root["pending_returns"] = std::move(rets);
  root["won_by"] = s.won_by ? ojson(*s.won_by) : ojson(nullptr);
  root["machine_steps"] = s.machine_steps;
  root["meta"] = s.meta;
  root["next_id"] = s.next_id;
  return root.dump(2) + "\n";
}

GameState state_from_json(const std::string& text) {
  ojson root = ojson::parse(text);
  if (root.value("schema", "") != "game-state/1")
    throw HarnessError("unrecognized board-state schema");
  GameState s;
  for (int i = 0; i < 2; ++i) {
    const ojson& j = root.at("players").at(i);
    PlayerState& pl = s.players[size_t(i)];
    pl.life = j.at("life").get<int64_t>();
    pl.poison = j.at("poison").get<int64_t>();
    pl.hand = j.at("hand").get<std::vector<std::string>>();
    pl.library = j.at("library").get<std::vector<std::string>>();
    pl.graveyard = j.at("graveyard").get<std::vector<std::string>>();
    pl.lost_flag = j.at("lost").get<bool>();
  }
  for (const ojson& j : root.at("battlefield")) {
    Permanent p;
    p.id = j.at("id").get<ObjId>();
    p.card = j.at("card").get<std::string>();
    p.controller = j.at("controller").get<PlayerId>();
    p.is_creature = j.at("creature").get<bool>();
    p.is_land = j.at("land").get<bool>();
    p.is_aura = j.at("aura").get<bool>();
    p.is_equipment = j.at("equipment").get<bool>();
    if (!j.at("power").is_null()) p.base_power = j.at("power").get<int64_t>();
    if (!j.at("toughness").is_null())
      p.base_toughness = j.at("toughness").get<int64_t>();
    p.counters = j.at("counters").get<std::array<int64_t, kCounterKinds>>();
    p.creature_types = strings_from_json(j.at("creature_types"));
    p.colors = strings_from_json(j.at("colors"));
    p.is_token = j.at("token").get<bool>();
    p.phased_out = j.at("phased_out").get<bool>();
    p.has_phasing = j.at("has_phasing").get<bool>();
    p.bits = j.at("bits").get<uint32_t>();
    if (!j.at("attached_to").is_null())
      p.attached_to = j.at("attached_to").get<ObjId>();
    p.text_edits = edits_from_json(j.at("text_edits"));
    p.watch_bank = j.at("watch_bank").get<int16_t>();
    p.watch_sym = j.at("watch_sym").get<int16_t>();
    p.write_sym = j.at("write_sym").get<int16_t>();
    p.next_bank = j.at("next_bank").get<int16_t>();
    p.move_dir = j.at("move_dir").get<int8_t>();
    p.halt_watcher = j.at("halt_watcher").get<bool>();
    p.tape_sym = j.at("tape_sym").get<int16_t>();
    p.is_head = j.at("head").get<bool>();
    p.params = j.at("params").get<std::map<std::string, std::string>>();
    p.eot_power = j.at("eot_power").get<int64_t>();
    p.eot_toughness = j.at("eot_toughness").get<int64_t>();
    p.gadget_priority = j.at("gadget_priority").get<int64_t>();
    s.battlefield.push_back(std::move(p));
  }
  for (const ojson& j : root.at("stack")) {
    StackEntry e;
    e.id = j.at("id").get<ObjId>();
    e.script = j.at("script").get<std::string>();
    e.source_card = j.at("source").get<std::string>();
    e.controller = j.at("controller").get<PlayerId>();
    for (const ojson& t : j.at("targets")) {
      TargetRef ref;
      ref.kind = TargetRef::Kind(t.at("kind").get<int>());
      ref.id = t.at("id").get<int>();
      e.targets.push_back(ref);
    }
    e.params = j.at("params").get<std::map<std::string, std::string>>();
    e.is_copy = j.at("copy").get<bool>();
    e.from_triggered = j.at("triggered").get<bool>();
    s.stack.push_back(std::move(e));
  }
  for (const ojson& j : root.at("exile")) {
    ExiledCard x;
    x.id = j.at("id").get<ObjId>();
    x.card = j.at("card").get<std::string>();
    x.owner = j.at("owner").get<PlayerId>();
    x.time_counters = j.at("time").get<int64_t>();
    x.suspended = j.at("suspended").get<bool>();
    x.ticks_on = j.at("ticks_on").get<PlayerId>();
    s.exile.push_back(std::move(x));
  }
  s.turn_number = root.at("turn").get<int64_t>();
  s.active_player = root.at("active").get<PlayerId>();
  s.turn_controller = root.at("turn_controller").get<PlayerId>();
  s.phase_step = Step(root.at("step").get<int>());
  s.priority = root.at("priority").get<PlayerId>();
  s.passes = root.at("passes").get<int>();
  for (int i = 0; i < 2; ++i) {
    const ojson& p = root.at("pending_turn_controller").at(i);
    if (!p.is_null()) s.pending_turn_controller[size_t(i)] = p.get<PlayerId>();
  }
  s.attackers = root.at("attackers").get<std::vector<ObjId>>();
  s.pump_pending = root.at("pump_pending").get<bool>();
  s.damage_done = root.at("damage_done").get<bool>();
  for (const ojson& j : root.at("pending_returns")) {
    GameState::PendingReturn r;
    r.card = j.at("card").get<std::string>();
    r.to_controller = j.at("to_controller").get<PlayerId>();
    r.edits = edits_from_json(j.at("edits"));
    s.pending_returns.push_back(std::move(r));
  }
  if (!root.at("won_by").is_null())
    s.won_by = root.at("won_by").get<PlayerId>();
  s.machine_steps = root.at("machine_steps").get<int64_t>();
  s.meta = root.at("meta").get<std::map<std::string, std::string>>();
  s.next_id = root.at("next_id").get<ObjId>();
  return s;
}

std::string trace_to_jsonl(const Log& log) {
  std::string out;
  for (const auto& ev : log.events) {
    ojson j;
    j["turn"] = ev.turn;
    j["active"] = ev.active;
    j["decider"] = ev.decider;
    j["kind"] = ev.kind;
    j["detail"] = ev.detail;
    j["digest"] = ev.digest;
    out += j.dump();
    out += '\n';
  }
  return out;
}

}  // namespace mtg::harness
