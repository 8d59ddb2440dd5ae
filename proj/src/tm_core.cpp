#include "mtg/tm.hpp"

#include <json.hpp>

namespace mtg::tm {

void TuringMachineSpec::validate() const {
  if (states.empty()) throw std::invalid_argument("machine has no states");
  if (alphabet.empty()) throw std::invalid_argument("machine has no alphabet");
  if (initial_state < 0 || initial_state >= num_states())
    throw std::invalid_argument("bad initial state");
  for (const auto& [key, t] : transitions) {
    auto [s, a] = key;
    if (s < 0 || s >= num_states() || a < 0 || a >= num_symbols() ||
        t.next_state < 0 || t.next_state >= num_states() || t.write < 0 ||
        t.write >= num_symbols())
      throw std::invalid_argument("transition out of range");
  }
}

std::optional<MachineConfig> step(const TuringMachineSpec& tm,
                                  const MachineConfig& cfg) {
  const Transition* t = tm.find(cfg.state, cfg.read(cfg.head));
  if (t == nullptr) return std::nullopt;  // halted
  MachineConfig next = cfg;
  next.write(cfg.head, t->write);
  if (t->dir == Dir::Left) {
    if (cfg.head == 0)
      throw StepError("left move at cell 0 (one-sided tape violated) in state " +
                      tm.states[cfg.state]);
    next.head = cfg.head - 1;
  } else {
    next.head = cfg.head + 1;
  }
  next.state = t->next_state;
  next.steps_taken = cfg.steps_taken + 1;
  return next;
}

RunTrace run(const TuringMachineSpec& tm, const MachineConfig& start,
             int64_t max_steps) {
  RunTrace trace;
  trace.configs.push_back(start);
  MachineConfig cur = start;
  for (int64_t i = 0; i < max_steps; ++i) {
    auto next = step(tm, cur);
    if (!next) {
      trace.halted = true;
      return trace;
    }
    cur = *next;
    trace.configs.push_back(cur);
  }
  return trace;
}

MachineConfig run_to(const TuringMachineSpec& tm, const MachineConfig& start,
                     int64_t max_steps, bool* halted) {
  MachineConfig cur = start;
  if (halted) *halted = false;
  for (int64_t i = 0; i < max_steps; ++i) {
    // In-place variant of step(); this loop dominates oracle runtime.
    const Transition* t = tm.find(cur.state, cur.read(cur.head));
    if (t == nullptr) {
      if (halted) *halted = true;
      return cur;
    }
    cur.write(cur.head, t->write);
    if (t->dir == Dir::Left) {
      if (cur.head == 0) throw StepError("left move at cell 0");
      --cur.head;
    } else {
      ++cur.head;
    }
    cur.state = t->next_state;
    ++cur.steps_taken;
  }
  return cur;
}

std::string machine_to_json(const TuringMachineSpec& tm) {
  nlohmann::ordered_json j;
  j["states"] = tm.states;
  j["alphabet"] = tm.alphabet;
  j["initial_state"] = tm.states.at(tm.initial_state);
  auto& ts = j["transitions"] = nlohmann::ordered_json::array();
  for (const auto& [key, t] : tm.transitions) {
    auto [s, a] = key;
    ts.push_back({tm.states.at(s), tm.alphabet.at(a),
                  tm.states.at(t.next_state), tm.alphabet.at(t.write),
                  t.dir == Dir::Left ? "L" : "R"});
  }
  return j.dump(2);
}

TuringMachineSpec machine_from_json(const std::string& json_text) {
  auto j = nlohmann::json::parse(json_text);
  TuringMachineSpec tm;
  tm.states = j.at("states").get<std::vector<std::string>>();
  tm.alphabet = j.at("alphabet").get<std::vector<std::string>>();
  auto state_id = [&](const std::string& name) {
    for (int i = 0; i < tm.num_states(); ++i)
      if (tm.states[i] == name) return i;
    throw std::invalid_argument("unknown state: " + name);
  };
  auto symbol_id = [&](const std::string& name) {
    for (int i = 0; i < tm.num_symbols(); ++i)
      if (tm.alphabet[i] == name) return i;
    throw std::invalid_argument("unknown symbol: " + name);
  };
  tm.initial_state = state_id(j.at("initial_state").get<std::string>());
  for (const auto& t : j.at("transitions")) {
    if (t.size() != 5) throw std::invalid_argument("transition is not a 5-tuple");
    std::string d = t.at(4).get<std::string>();
    if (d != "L" && d != "R") throw std::invalid_argument("bad direction: " + d);
    Transition tr{state_id(t.at(2).get<std::string>()),
                  symbol_id(t.at(3).get<std::string>()),
                  d == "L" ? Dir::Left : Dir::Right};
    auto key = std::make_pair(state_id(t.at(0).get<std::string>()),
                              symbol_id(t.at(1).get<std::string>()));
    if (!tm.transitions.emplace(key, tr).second)
      throw std::invalid_argument("duplicate transition");
  }
  tm.validate();
  return tm;
}

}  // namespace mtg::tm
