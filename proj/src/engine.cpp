#include "mtg/engine.hpp"

#include <algorithm>

namespace mtg::engine {

const char* step_name(Step s) {
  switch (s) {
    case Step::Untap: return "untap";
    case Step::Upkeep: return "upkeep";
    case Step::Draw: return "draw";
    case Step::Main1: return "main1";
    case Step::BeginCombat: return "begin_combat";
    case Step::DeclareAttackers: return "declare_attackers";
    case Step::DeclareBlockers: return "declare_blockers";
    case Step::CombatDamage: return "combat_damage";
    case Step::EndCombat: return "end_combat";
    case Step::Main2: return "main2";
    case Step::End: return "end";
  }
  return "?";
}

void Permanent::add_counter(CounterKind k, int64_t delta) {
  int64_t& v = counters[static_cast<int>(k)];
  v += delta;
  if (v < 0) throw std::logic_error("counter count went negative");
}

Action Action::choose_integer(uint64_t k) {
  Action a;
  a.kind = Kind::ChooseInteger;
  if (k == 0) {
    a.payload_bits = "0";
  } else {
    while (k) {
      a.payload_bits.insert(a.payload_bits.begin(), char('0' + (k & 1)));
      k >>= 1;
    }
  }
  return a;
}

uint64_t Action::integer() const {
  if (payload_bits.empty()) throw std::invalid_argument("empty integer payload");
  if (payload_bits.size() > 1 && payload_bits[0] == '0')
    throw std::invalid_argument("ambiguous binary encoding");
  uint64_t v = 0;
  for (char c : payload_bits) {
    if (c != '0' && c != '1') throw std::invalid_argument("bad binary digit");
    v = (v << 1) | uint64_t(c - '0');
  }
  return v;
}

// ---------------------------------------------------------------------------
// text edits

static void apply_edit_to_tag(std::string& tag, const TextEdit& e) {
  if (e.kind == TextEdit::Kind::ReplaceCreatureType ||
      e.kind == TextEdit::Kind::ReplaceColorWord) {
    if (tag == e.from_tag) tag = e.to_tag;
  }
}

std::string effective_tag(const Permanent& p, const std::string& raw) {
  std::string tag = raw;
  for (const auto& e : p.text_edits) apply_edit_to_tag(tag, e);
  return tag;
}

// Replacement edits rewrite rules text only (what the object refers to),
// never its own type line or colors; those change through the add-type and
// set-colors edits.
std::set<std::string> effective_types(const Permanent& p) {
  std::set<std::string> out = p.creature_types;
  for (const auto& e : p.text_edits)
    if (e.kind == TextEdit::Kind::AddCreatureType) out.insert(e.to_tag);
  return out;
}

std::set<std::string> effective_colors(const Permanent& p) {
  std::set<std::string> cur = p.colors;
  for (const auto& e : p.text_edits) {
    if (e.kind == TextEdit::Kind::SetColors) {
      cur.clear();
      std::string item;
      for (char c : e.to_tag + ",") {
        if (c == ',') {
          if (!item.empty()) cur.insert(item);
          item.clear();
        } else {
          item += c;
        }
      }
    }
  }
  return cur;
}

static bool word_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
         (c >= '0' && c <= '9') || c == '\'';
}

static std::string replace_word(const std::string& text,
                                const std::string& from,
                                const std::string& to) {
  std::string out;
  size_t i = 0;
  while (i < text.size()) {
    bool boundary = (i == 0) || !word_char(text[i - 1]);
    if (boundary && text.compare(i, from.size(), from) == 0 &&
        (i + from.size() == text.size() || !word_char(text[i + from.size()]))) {
      out += to;
      i += from.size();
    } else {
      out += text[i++];
    }
  }
  return out;
}

std::string render_text(const Permanent& p, const std::string& raw_text) {
  std::string text = raw_text;
  for (const auto& e : p.text_edits)
    if (e.kind == TextEdit::Kind::ReplaceCreatureType ||
        e.kind == TextEdit::Kind::ReplaceColorWord)
      text = replace_word(text, e.from_tag, e.to_tag);
  return text;
}

Permanent apply_text_edit(const Permanent& p, const TextEdit& e) {
  if (e.kind == TextEdit::Kind::ReplaceCreatureType && e.to_tag == "Wall")
    throw std::invalid_argument("creature type replacement can't produce Wall");
  Permanent out = p;
  out.text_edits.push_back(e);
  return out;
}

// ---------------------------------------------------------------------------
// state lookups and statics

Permanent* GameState::find(ObjId id) {
  for (auto& p : battlefield)
    if (p.id == id) return &p;
  return nullptr;
}
const Permanent* GameState::find(ObjId id) const {
  for (const auto& p : battlefield)
    if (p.id == id) return &p;
  return nullptr;
}

bool GameState::game_over() const {
  return players[0].lost_flag || players[1].lost_flag;
}

uint32_t active_bits(const GameState& s) {
  uint32_t b = 0;
  for (const auto& p : s.battlefield)
    if (!p.phased_out) b |= p.bits;
  return b;
}

bool has_static(const GameState& s, uint32_t mask) {
  for (const auto& p : s.battlefield)
    if (!p.phased_out && (p.bits & mask)) return true;
  return false;
}

int64_t global_pt_delta(const GameState& s) {
  int64_t d = 0;
  for (const auto& p : s.battlefield)
    if (!p.phased_out && (p.bits & sb::GlobalPtMinus1)) d -= 1;
  return d;
}

bool players_cant_draw(const GameState& s) {
  return has_static(s, sb::NoDraw);
}
bool players_cant_search(const GameState& s) {
  return has_static(s, sb::NoSearch);
}
bool attack_filter_flying_only(const GameState& s) {
  return has_static(s, sb::FlyingOnlyAttack);
}

bool must_attack(const GameState& s, PlayerId controller) {
  for (const auto& p : s.battlefield)
    if (!p.phased_out && p.controller == controller &&
        (p.bits & sb::AttackIfAble))
      return true;
  return false;
}

bool needle_blocks(const GameState& s, const std::string& card_name) {
  for (const auto& p : s.battlefield) {
    if (p.phased_out) continue;
    const std::string* v = p.param("needle_names");
    if (v && *v == card_name) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// tracing

void note(Log* log, const GameState& s, const std::string& kind,
          const std::string& detail) {
  if (!log) return;
  TraceEvent ev;
  ev.turn = s.turn_number;
  ev.active = s.active_player;
  ev.decider = s.turn_controller;
  ev.kind = kind;
  ev.detail = detail;
  uint64_t h = 1469598103934665603ull;
  auto mix = [&h](uint64_t v) {
    h ^= v;
    h *= 1099511628211ull;
  };
  for (char c : kind) mix(uint64_t(uint8_t(c)));
  for (char c : detail) mix(uint64_t(uint8_t(c)));
  mix(uint64_t(s.turn_number));
  mix(uint64_t(s.players[0].life));
  mix(uint64_t(s.players[1].life));
  mix(s.battlefield.size());
  mix(s.stack.size());
  mix(uint64_t(s.machine_steps));
  ev.digest = h;
  log->events.push_back(ev);
}

// ---------------------------------------------------------------------------
// state-based actions

std::pair<int64_t, int64_t> effective_stats(const GameState& s,
                                            const Permanent& p) {
  if (!p.is_creature)
    throw std::invalid_argument("effective_stats on a non-creature");
  // layering: base -> type/color changers (stat-neutral here) -> counters ->
  // global continuous effects -> until-end-of-turn
  int64_t cdelta = p.counter(CounterKind::PlusOne) -
                   p.counter(CounterKind::MinusOne);
  int64_t g = global_pt_delta(s);
  return {p.base_power.value_or(0) + cdelta + g + p.eot_power,
          p.base_toughness.value_or(0) + cdelta + g + p.eot_toughness};
}

std::vector<DeathEvent> apply_state_based_actions_inplace(GameState& s,
                                                          Log* log) {
  std::vector<DeathEvent> all_deaths;
  bool changed = true;
  while (changed) {
    changed = false;
    // player loss and game win
    for (PlayerId pl = 0; pl < 2; ++pl) {
      auto& ps = s.players[pl];
      if (!ps.lost_flag && (ps.life <= 0 || ps.poison >= 10)) {
        ps.lost_flag = true;
        changed = true;
        note(log, s, "sba", "player " + std::to_string(pl) + " loses");
      }
    }
    if (s.won_by && !s.players[1 - *s.won_by].lost_flag) {
      s.players[1 - *s.won_by].lost_flag = true;
      changed = true;
      note(log, s, "sba",
           "player " + std::to_string(*s.won_by) + " wins the game");
    }
    int64_t g = global_pt_delta(s);
    std::vector<size_t> doomed;
    for (size_t i = 0; i < s.battlefield.size(); ++i) {
      auto& p = s.battlefield[i];
      // counter annihilation
      int64_t plus = p.counter(CounterKind::PlusOne);
      int64_t minus = p.counter(CounterKind::MinusOne);
      int64_t k = std::min(plus, minus);
      if (k > 0) {
        p.add_counter(CounterKind::PlusOne, -k);
        p.add_counter(CounterKind::MinusOne, -k);
        plus -= k;
        minus -= k;
        changed = true;
      }
      // deaths: zero-toughness creatures and dangling auras; one pass,
      // simultaneous removal
      if (p.is_creature) {
        int64_t tough = p.base_toughness.value_or(0) + plus - minus + g +
                        p.eot_toughness;
        if (tough <= 0) doomed.push_back(i);
      } else if (p.is_aura) {
        if (!p.attached_to || !s.find(*p.attached_to)) doomed.push_back(i);
      }
    }
    if (!doomed.empty()) {
      changed = true;
      std::vector<Permanent> snap;
      snap.reserve(doomed.size());
      for (size_t idx : doomed) snap.push_back(std::move(s.battlefield[idx]));
      for (auto it = doomed.rbegin(); it != doomed.rend(); ++it)
        s.battlefield.erase(s.battlefield.begin() + *it);
      // detach equipment that pointed at the dead
      for (auto& dead : snap)
        for (auto& p : s.battlefield)
          if (p.attached_to && *p.attached_to == dead.id)
            p.attached_to.reset();
      for (auto& dead : snap) {
        note(log, s, "sba",
             "dies: " + dead.card + (dead.is_token ? " (token)" : ""));
        if (!dead.is_token)
          card_to_graveyard(s, dead.card, dead.controller, log);
        all_deaths.push_back(DeathEvent{std::move(dead)});
      }
    }
  }
  return all_deaths;
}

std::pair<GameState, std::vector<DeathEvent>> apply_state_based_actions(
    const GameState& s) {
  GameState out = s;
  auto deaths = apply_state_based_actions_inplace(out);
  return {std::move(out), std::move(deaths)};
}

// ---------------------------------------------------------------------------
// triggers

void push_triggers_inplace(GameState& s, std::vector<TriggerInstance> batch,
                           Log* log) {
  if (batch.empty()) return;
  // APNAP: the active player's triggers are put on the stack first so the
  // nonactive player's resolve first; same-controller ties use the fixed
  // gadget priority index.
  std::stable_sort(batch.begin(), batch.end(),
                   [&s](const TriggerInstance& a, const TriggerInstance& b) {
                     bool aa = a.controller == s.active_player;
                     bool bb = b.controller == s.active_player;
                     if (aa != bb) return aa > bb;
                     return a.gadget_priority < b.gadget_priority;
                   });
  for (auto& t : batch) {
    StackEntry e;
    e.id = s.fresh_id();
    e.script = t.script;
    e.source_card = t.source_card;
    e.controller = t.controller;
    e.targets = std::move(t.targets);
    e.params = std::move(t.params);
    e.from_triggered = true;
    note(log, s, "trigger", e.script + " from " + e.source_card);
    s.stack.push_back(std::move(e));
  }
  s.passes = 0;
  s.priority = s.active_player;
}

GameState push_triggers(const GameState& s, std::vector<TriggerInstance> b) {
  GameState out = s;
  push_triggers_inplace(out, std::move(b));
  return out;
}

void process_deaths(GameState& s, const std::vector<DeathEvent>& deaths,
                    Log* log) {
  if (deaths.empty()) return;
  std::vector<TriggerInstance> batch;
  for (const auto& d : deaths) {
    auto ts = cards::death_triggers(s, d);
    batch.insert(batch.end(), std::make_move_iterator(ts.begin()),
                 std::make_move_iterator(ts.end()));
  }
  push_triggers_inplace(s, std::move(batch), log);
}

// ---------------------------------------------------------------------------
// battlefield helpers

ObjId create_token(GameState& s, const TokenSpec& spec, Log* log) {
  Permanent p;
  p.id = s.fresh_id();
  p.card = spec.card;
  p.controller = spec.controller;
  p.is_creature = spec.is_creature;
  p.is_land = spec.is_land;
  p.base_power = spec.power;
  p.base_toughness = spec.toughness;
  p.creature_types = spec.creature_types;
  p.colors = spec.colors;
  p.counters = spec.counters;
  p.bits = spec.bits;
  p.tape_sym = spec.tape_sym;
  p.params = spec.params;
  p.is_token = true;
  note(log, s, "token", "create " + p.card);
  s.battlefield.push_back(std::move(p));
  return s.battlefield.back().id;
}

void card_to_graveyard(GameState& s, const std::string& card, PlayerId owner,
                       Log* log) {
  // graveyard replacement (recycle to library bottom) if the owner is
  // enchanted by one
  for (const auto& p : s.battlefield) {
    if (!p.phased_out && (p.bits & sb::RecycleGraveyard) &&
        p.controller == owner) {
      s.players[owner].library.push_back(card);
      note(log, s, "note", card + " recycled to library bottom");
      return;
    }
  }
  s.players[owner].graveyard.push_back(card);
}

void destroy_permanent(GameState& s, ObjId id, Log* log) {
  Permanent* p = s.find(id);
  if (!p) return;
  Permanent dead = std::move(*p);
  s.battlefield.erase(
      std::find_if(s.battlefield.begin(), s.battlefield.end(),
                   [id](const Permanent& q) { return q.id == id; }));
  for (auto& q : s.battlefield)
    if (q.attached_to && *q.attached_to == dead.id && q.is_equipment)
      q.attached_to.reset();
  note(log, s, "destroy", dead.card + (dead.is_token ? " (token)" : ""));
  if (!dead.is_token) card_to_graveyard(s, dead.card, dead.controller, log);
  std::vector<DeathEvent> deaths{DeathEvent{std::move(dead)}};
  // dangling auras fall off via SBA and join the same trigger batch
  auto more = apply_state_based_actions_inplace(s, log);
  deaths.insert(deaths.end(), std::make_move_iterator(more.begin()),
                std::make_move_iterator(more.end()));
  process_deaths(s, deaths, log);
}

// ---------------------------------------------------------------------------
// stack

void resolve_top_inplace(GameState& s, Log* log) {
  if (s.stack.empty()) throw std::logic_error("resolve_top on empty stack");
  StackEntry e = std::move(s.stack.back());
  s.stack.pop_back();
  s.passes = 0;
  s.priority = s.active_player;
  // fizzle if any permanent target has left the battlefield
  bool fizzled = false;
  for (const auto& t : e.targets)
    if (t.kind == TargetRef::Kind::Permanent && !s.find(t.id)) fizzled = true;
  if (fizzled) {
    note(log, s, "resolve", e.script + " fizzles (target gone)");
  } else {
    note(log, s, "resolve", e.script + " from " + e.source_card);
    cards::run_effect_script(s, e, log);
  }
  if (!e.from_triggered && !e.is_copy) {
    // instant/sorcery cards head for the graveyard after resolving unless
    // the script moved the card to the battlefield ("stays")
    if (fizzled || !e.params.count("stays"))
      card_to_graveyard(s, e.source_card, e.controller, log);
  }
  auto deaths = apply_state_based_actions_inplace(s, log);
  process_deaths(s, deaths, log);
}

GameState resolve_top(const GameState& s) {
  GameState out = s;
  resolve_top_inplace(out);
  return out;
}

// ---------------------------------------------------------------------------
// combat

static bool pump_available(const GameState& s) {
  // an attacker enchanted by an aura granting the integer pump
  for (ObjId id : s.attackers)
    for (const auto& p : s.battlefield)
      if (!p.phased_out && (p.bits & sb::GrantsPump) && p.attached_to &&
          *p.attached_to == id)
        return true;
  return false;
}

void resolve_combat_inplace(GameState& s, uint64_t pump_count, Log* log) {
  if (s.phase_step != Step::DeclareAttackers &&
      s.phase_step != Step::DeclareBlockers &&
      s.phase_step != Step::CombatDamage)
    throw std::logic_error("resolve_combat outside the combat phase");
  if (s.damage_done) throw std::logic_error("combat damage already dealt");
  s.damage_done = true;
  s.pump_pending = false;
  if (s.attackers.empty()) return;
  if (pump_count > 0) {
    for (ObjId id : s.attackers) {
      Permanent* a = s.find(id);
      if (!a) continue;
      bool pumped = false;
      for (const auto& p : s.battlefield)
        if (!p.phased_out && (p.bits & sb::GrantsPump) && p.attached_to &&
            *p.attached_to == id)
          pumped = true;
      if (pumped) {
        a->eot_power += int64_t(pump_count);
        a->eot_toughness += int64_t(pump_count);
        note(log, s, "action",
             "pump x" + std::to_string(pump_count) + " on " + a->card);
      }
    }
  }
  PlayerId defender = 1 - s.active_player;
  std::vector<TriggerInstance> lifegain_batch;
  for (ObjId id : s.attackers) {
    Permanent* a = s.find(id);
    if (!a) continue;
    int64_t power = effective_stats(s, *a).first;
    if (power <= 0) continue;
    if (a->bits & sb::Infect) {
      s.players[defender].poison += power;
      note(log, s, "combat",
           a->card + " deals " + std::to_string(power) + " infect damage");
    } else {
      s.players[defender].life -= power;
      note(log, s, "combat",
           a->card + " deals " + std::to_string(power) + " damage");
    }
    if (a->bits & sb::Lifelink) {
      s.players[a->controller].life += power;
      // life-gain triggers (counter accumulators) for that player
      for (const auto& p : s.battlefield) {
        if (!p.phased_out && (p.bits & sb::OnLifegainCounters) &&
            p.controller == a->controller) {
          TriggerInstance t;
          t.controller = p.controller;
          t.gadget_priority = p.id;
          t.script = "gain_counters";
          t.source_card = p.card;
          t.params["amount"] = std::to_string(power);
          t.targets.push_back({TargetRef::Kind::Permanent, p.id});
          lifegain_batch.push_back(std::move(t));
        }
      }
    }
  }
  auto deaths = apply_state_based_actions_inplace(s, log);
  process_deaths(s, deaths, log);
  push_triggers_inplace(s, std::move(lifegain_batch), log);
}

GameState resolve_combat(const GameState& s, uint64_t pump_count) {
  GameState out = s;
  resolve_combat_inplace(out, pump_count);
  return out;
}

// ---------------------------------------------------------------------------
// turn structure

static void enter_step(GameState& s, Log* log);

void advance_step_inplace(GameState& s, Log* log) {
  if (!s.stack.empty())
    throw std::logic_error("advance_step with a nonempty stack");
  if (s.game_over()) throw std::logic_error("advance_step after game end");
  if (s.phase_step == Step::End) {
    // cleanup, then the next player's turn
    for (auto& p : s.battlefield) {
      p.eot_power = 0;
      p.eot_toughness = 0;
    }
    s.attackers.clear();
    s.damage_done = false;
    s.pump_pending = false;
    s.turn_number += 1;
    s.active_player = 1 - s.active_player;
    auto& pend = s.pending_turn_controller[s.active_player];
    s.turn_controller = pend.value_or(s.active_player);
    pend.reset();
    s.phase_step = Step::Untap;
  } else {
    s.phase_step = static_cast<Step>(static_cast<int>(s.phase_step) + 1);
  }
  s.passes = 0;
  s.priority = s.active_player;
  note(log, s, "step", step_name(s.phase_step));
  enter_step(s, log);
}

GameState advance_step(const GameState& s) {
  GameState out = s;
  advance_step_inplace(out);
  return out;
}

static void enter_step(GameState& s, Log* log) {
  switch (s.phase_step) {
    case Step::Untap: {
      // phasing first, then untap (untapped status itself is not tracked)
      for (auto& p : s.battlefield) {
        if (p.has_phasing && p.controller == s.active_player) {
          p.phased_out = !p.phased_out;
          note(log, s, "note",
               p.card + (p.phased_out ? " phases out" : " phases in"));
        }
      }
      break;
    }
    case Step::Upkeep: {
      std::vector<TriggerInstance> batch;
      // suspend countdown in exile
      for (auto& e : s.exile) {
        if (!e.suspended || e.ticks_on != s.active_player) continue;
        if (e.time_counters == 0) continue;
        e.time_counters -= 1;
        note(log, s, "note",
             e.card + " loses a time counter (" +
                 std::to_string(e.time_counters) + " left)");
        if (e.time_counters == 0) {
          TriggerInstance t;
          t.controller = e.owner;
          t.gadget_priority = e.id;
          t.script = "cast_from_suspend";
          t.source_card = e.card;
          t.params["exile_id"] = std::to_string(e.id);
          batch.push_back(std::move(t));
        }
      }
      // vanishing countdown on the battlefield
      for (auto& p : s.battlefield) {
        if (p.phased_out || p.controller != s.active_player) continue;
        int64_t v = p.counter(CounterKind::Vanishing);
        if (v == 0) continue;
        p.add_counter(CounterKind::Vanishing, -1);
        note(log, s, "note", p.card + " loses a vanishing counter");
        if (v == 1) {
          TriggerInstance t;
          t.controller = p.controller;
          t.gadget_priority = p.id;
          t.script = "vanishing_sacrifice";
          t.source_card = p.card;
          t.targets.push_back({TargetRef::Kind::Permanent, p.id});
          batch.push_back(std::move(t));
        }
      }
      // upkeep triggers from permanents
      for (const auto& p : s.battlefield) {
        if (p.phased_out) continue;
        if ((p.bits & sb::UpkeepForceCast) &&
            !s.players[s.active_player].hand.empty()) {
          // fires at each player's upkeep for that player
          TriggerInstance t;
          t.controller = s.active_player;
          t.gadget_priority = p.id;
          t.script = "forced_cast_from_hand";
          t.source_card = p.card;
          batch.push_back(std::move(t));
        }
        if ((p.bits & sb::UpkeepImprintCast) &&
            p.controller == s.active_player) {
          TriggerInstance t;
          t.controller = p.controller;
          t.gadget_priority = p.id;
          t.script = "cast_imprinted_copy";
          t.source_card = p.card;
          t.params = p.params;
          batch.push_back(std::move(t));
        }
      }
      push_triggers_inplace(s, std::move(batch), log);
      break;
    }
    case Step::Draw: {
      auto& ps = s.players[s.active_player];
      if (players_cant_draw(s)) {
        // replacement: lose 3 life and search, the search itself being
        // fizzled by the no-search lock
        ps.life -= 3;
        note(log, s, "note",
             "draw replaced: player " + std::to_string(s.active_player) +
                 " loses 3 life" +
                 (players_cant_search(s) ? ", search fizzles" : ""));
        auto deaths = apply_state_based_actions_inplace(s, log);
        process_deaths(s, deaths, log);
      } else if (!ps.library.empty()) {
        ps.hand.push_back(ps.library.front());
        ps.library.erase(ps.library.begin());
        note(log, s, "note", "draws " + ps.hand.back());
      } else {
        // empty library: auxiliary end conditions are out of scope, the
        // draw simply yields nothing
        note(log, s, "note", "draw from empty library: no card");
      }
      break;
    }
    case Step::BeginCombat: {
      std::vector<TriggerInstance> batch;
      for (const auto& p : s.battlefield) {
        if (p.phased_out || !(p.bits & sb::CombatCopyEquipped)) continue;
        if (p.attached_to && s.find(*p.attached_to) &&
            s.find(*p.attached_to)->controller == s.active_player) {
          TriggerInstance t;
          t.controller = s.active_player;
          t.gadget_priority = p.id;
          t.script = "copy_equipped";
          t.source_card = p.card;
          t.params = p.params;
          t.targets.push_back({TargetRef::Kind::Permanent, *p.attached_to});
          batch.push_back(std::move(t));
        }
      }
      push_triggers_inplace(s, std::move(batch), log);
      break;
    }
    case Step::DeclareAttackers: {
      s.attackers.clear();
      if (must_attack(s, s.active_player)) {
        bool flying_only = attack_filter_flying_only(s);
        for (const auto& p : s.battlefield) {
          if (p.phased_out || !p.is_creature ||
              p.controller != s.active_player)
            continue;
          if (flying_only && !(p.bits & sb::Flying)) continue;
          s.attackers.push_back(p.id);
        }
      }
      if (!s.attackers.empty() && log) {
        std::string names;
        for (ObjId id : s.attackers) names += s.find(id)->card + " ";
        note(log, s, "action", "forced attack: " + names);
      }
      break;
    }
    case Step::DeclareBlockers:
      // the construction never produces a legal block; blocking unmodeled
      break;
    case Step::CombatDamage: {
      if (s.attackers.empty()) {
        s.damage_done = true;
      } else if (pump_available(s)) {
        s.pump_pending = true;  // wait for the integer choice
      } else {
        resolve_combat_inplace(s, 0, log);
      }
      break;
    }
    case Step::End: {
      // delayed battlefield returns scheduled by death triggers
      std::vector<TriggerInstance> batch;
      auto pend = std::move(s.pending_returns);
      s.pending_returns.clear();
      for (auto& r : pend) {
        TriggerInstance t;
        t.controller = r.to_controller;
        t.script = "delayed_return";
        t.source_card = r.card;
        for (size_t i = 0; i < r.edits.size(); ++i) {
          const auto& ed = r.edits[i];
          t.params["edit_" + std::to_string(i)] =
              std::to_string(int(ed.kind)) + "|" + ed.from_tag + "|" +
              ed.to_tag;
        }
        batch.push_back(std::move(t));
      }
      push_triggers_inplace(s, std::move(batch), log);
      break;
    }
    default:
      break;
  }
}

// ---------------------------------------------------------------------------
// priority and actions

PlayerId current_decider(const GameState& s) {
  // the turn controller decides for the active player; the nonactive
  // player's own choices remain their own
  if (s.priority == s.active_player) return s.turn_controller;
  return s.priority;
}

std::vector<Action> legal_actions(const GameState& s, PlayerId decider) {
  if (s.game_over()) return {};
  std::vector<Action> out;
  if (s.phase_step == Step::CombatDamage && s.pump_pending &&
      s.priority == s.active_player && decider == current_decider(s)) {
    // the open integer choice: one parameterized action plus declining
    out.push_back(Action::choose_integer(0));
    out.push_back(Action::pass());
    return out;
  }
  out.push_back(Action::pass());
  return out;
}

void apply_action_inplace(GameState& s, const Action& a, Log* log) {
  if (s.game_over()) throw std::logic_error("action after game end");
  switch (a.kind) {
    case Action::Kind::ChooseInteger: {
      if (!(s.phase_step == Step::CombatDamage && s.pump_pending))
        throw std::logic_error("integer choice with no open choice point");
      note(log, s, "action", "choose_integer 0b" + a.payload_bits);
      resolve_combat_inplace(s, a.integer(), log);
      break;
    }
    case Action::Kind::PassPriority: {
      if (s.phase_step == Step::CombatDamage && s.pump_pending &&
          s.priority == s.active_player) {
        // declining the pump resolves combat unmodified
        resolve_combat_inplace(s, 0, log);
        break;
      }
      s.passes += 1;
      s.priority = 1 - s.priority;
      if (s.passes >= 2) {
        if (!s.stack.empty())
          resolve_top_inplace(s, log);
        else
          advance_step_inplace(s, log);
      }
      break;
    }
    default:
      throw std::logic_error("unsupported action kind in this build");
  }
}

GameState apply_action(const GameState& s, const Action& a) {
  GameState out = s;
  apply_action_inplace(out, a);
  return out;
}

}  // namespace mtg::engine
