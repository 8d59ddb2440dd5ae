#include "mtg/compiler.hpp"

#include <algorithm>

#include "mtg/cards.hpp"

namespace mtg::compiler {

using namespace engine;

const std::vector<std::string>& symbol_type_pool() {
  // blank maps to Aetherborn and the divider to Elemental; the rest of the
  // pool deliberately avoids every creature type the gadget cards use or
  // that edits can introduce (Imp, Goblin, Wizard, Human, Sliver, Dinosaur,
  // Treefolk, Elf, Plant, Avatar, Assembly-Worker)
  static const std::vector<std::string> pool = {
      "Aetherborn", "Elemental",  "Basilisk", "Cephalid", "Demon",
      "Faerie",     "Giant",      "Harpy",    "Illusion", "Juggernaut",
      "Kavu",       "Leviathan",  "Myr",      "Noggle",   "Orc",
      "Pegasus",    "Rhino",      "Zombie"};
  return pool;
}

namespace {

Permanent& put(GameState& s, const std::string& card, PlayerId ctl,
               bool token, uint32_t bits = 0) {
  Permanent p;
  p.id = s.fresh_id();
  p.card = card;
  p.controller = ctl;
  p.is_token = token;
  p.bits = bits;
  p.gadget_priority = p.id;
  s.battlefield.push_back(std::move(p));
  return s.battlefield.back();
}

Permanent& put_creature(GameState& s, const std::string& card, PlayerId ctl,
                        bool token, int64_t pw, int64_t to,
                        std::set<std::string> types,
                        std::set<std::string> colors, uint32_t bits = 0) {
  Permanent& p = put(s, card, ctl, token, bits);
  p.is_creature = true;
  p.base_power = pw;
  p.base_toughness = to;
  p.creature_types = std::move(types);
  p.colors = std::move(colors);
  return p;
}

std::string join_types(int count) {
  const auto& pool = symbol_type_pool();
  std::string out;
  for (int i = 0; i < count; ++i) {
    if (i) out += ",";
    out += pool[size_t(i)];
  }
  return out;
}

// machine core: tape bank, head marker, watcher banks, and the upkeep
// cast/recycle loop that drives one machine step per two of Alice's turns
void add_machine(GameState& s, const tm::TuringMachineSpec& machine,
                 const tm::MachineConfig& cfg, BoardLayout& layout) {
  const auto& pool = symbol_type_pool();
  if (size_t(machine.num_symbols()) > pool.size())
    throw CapacityError("alphabet needs " +
                        std::to_string(machine.num_symbols()) +
                        " creature types but only " +
                        std::to_string(pool.size()) + " are usable");
  if (cfg.state < 0 || cfg.state >= machine.num_states())
    throw std::invalid_argument("start state outside the machine");
  if (cfg.head < 0) throw std::invalid_argument("head left of cell 0");

  s.meta["sym_types"] = join_types(machine.num_symbols());
  for (int a = 0; a < machine.num_symbols(); ++a)
    layout.symbol_types[a] = pool[size_t(a)];

  Permanent& head = put_creature(s, "head marker", 0, true, 2, 2,
                                 {"Assembly-Worker"}, {"black"});
  head.is_head = true;
  head.counters[int(CounterKind::PlusOne)] = cfg.head;
  layout.head = cfg.head;
  layout.machine_permanents.push_back("head marker");

  for (const auto& [cell, sym] : cfg.tape) {
    if (cell < 0) throw std::invalid_argument("tape cell left of cell 0");
    if (sym <= 0 || sym >= machine.num_symbols())
      throw std::invalid_argument("tape symbol outside the alphabet");
    Permanent& t = put_creature(s, "tape cell", 0, true, 2, 2,
                                {pool[size_t(sym)]}, {"black"});
    t.tape_sym = int16_t(sym);
    t.counters[int(CounterKind::PlusOne)] = cell + 1;
    layout.tape_cells[cell] = sym;
  }

  // one watcher per (state, symbol); missing transitions become the halt
  // watchers that cash the computation out into the win line
  for (int q = 0; q < machine.num_states(); ++q) {
    for (int a = 0; a < machine.num_symbols(); ++a) {
      Permanent& w = put_creature(s, "watcher", 0, true, 2, 2,
                                  {"Assembly-Worker"}, {"black"});
      w.watch_bank = int16_t(q);
      w.watch_sym = int16_t(a);
      w.phased_out = (q != cfg.state);
      if (const tm::Transition* tr = machine.find(q, a)) {
        w.write_sym = int16_t(tr->write);
        w.next_bank = int16_t(tr->next_state);
        w.move_dir = (tr->dir == tm::Dir::Right) ? 1 : -1;
      } else {
        w.halt_watcher = true;
      }
    }
  }
  layout.machine_state = cfg.state;
  layout.machine_permanents.push_back("watcher bank");
  s.machine_steps = cfg.steps_taken;

  // the cast loop and the win-condition support
  put(s, "Wild Evocation", 1, false, sb::UpkeepForceCast);
  put(s, "Wheel of Sun and Moon", 0, false, sb::RecycleGraveyard);
  put(s, "Prismatic Omen", 0, false, sb::LandsAllBasics);
  put(s, "Ancient Tomb", 0, true).is_land = true;
  layout.machine_permanents.insert(
      layout.machine_permanents.end(),
      {"Wild Evocation", "Wheel of Sun and Moon", "Prismatic Omen",
       "Ancient Tomb"});
  s.players[0].hand = {"Infest"};
  s.players[0].library = {"Coalition Victory"};
}

void fill_counts(const GameState& s, const tm::TuringMachineSpec& machine,
                 CompilationReport& rep) {
  rep.states = machine.num_states();
  rep.symbols = machine.num_symbols();
  rep.watcher_count = machine.num_states() * machine.num_symbols();
  rep.permanent_count = int64_t(s.battlefield.size());
  rep.tape_length = int64_t(rep.layout.tape_cells.size());
}

}  // namespace

GameState compile_machine(const tm::TuringMachineSpec& machine,
                          const tm::MachineConfig& cfg,
                          CompilationReport* report) {
  machine.validate();
  GameState s;
  CompilationReport rep;
  add_machine(s, machine, cfg, rep.layout);
  s.meta["machine"] = tm::machine_to_json(machine);
  fill_counts(s, machine, rep);
  if (report) *report = std::move(rep);
  return s;
}

GameState compile_mate_in_n(const tm::ArithmeticSentence& sentence,
                            CompilationReport* report) {
  sentence.validate();
  const int n = sentence.n();
  if (n < 1) throw std::invalid_argument("sentence has no input rounds");

  tm::SearchMachineInfo info;
  tm::TuringMachineSpec machine = tm::build_search_machine(sentence, &info);

  // dormant machine: empty tape, head on cell 0; the input rounds write the
  // inverse-unary tape through the combat gadget before activation
  tm::MachineConfig cfg;
  cfg.state = machine.initial_state;
  GameState s;
  CompilationReport rep;
  add_machine(s, machine, cfg, rep.layout);
  s.meta["machine"] = tm::machine_to_json(machine);
  s.meta["sentence"] = sentence.source;
  s.meta["rounds"] = std::to_string(n);
  s.meta["x_bump_state"] = std::to_string(info.x_bump_state);
  {
    std::string q;
    for (auto t : sentence.quantifiers)
      q += (t == tm::Quantifier::Exists) ? 'E' : 'A';
    s.meta["quantifiers"] = q;
  }

  // generous buffers: Alice pays 3 life per locked draw, Bob absorbs the
  // bounded input-round combat damage
  s.players[0].life = 1'000'000'000'000ll + 3ll * n;
  s.players[1].life = 1'000'000'000'000'000ll;

  rep.plan.n = n;
  for (auto q : sentence.quantifiers)
    rep.plan.swapped_round.push_back(q == tm::Quantifier::ForAll);

  auto gadget = [&rep](const std::string& name) {
    rep.layout.gadget_permanents.push_back(name);
  };

  // countdown: three suspended cards ticking on Alice's upkeeps
  auto suspend = [&](const std::string& card, int64_t ticks) {
    ExiledCard x;
    x.id = s.fresh_id();
    x.card = card;
    x.owner = 1;  // resolved spells must stay clear of Alice's recycler
    x.suspended = true;
    x.time_counters = ticks;
    x.ticks_on = 0;
    s.exile.push_back(std::move(x));
    rep.layout.exile_schedule.push_back({card, ticks});
    rep.plan.countdown[card] = ticks;
  };
  suspend("Human Frailty", n);
  suspend("Choke", n);
  suspend("Infernal Reckoning", n + 1);

  // the draw lock, dissolved by vanishing right before Alice needs a card
  Permanent& maralen =
      put_creature(s, "Maralen of the Mornsong", 0, true, 2, 3,
                   {"Elf", "Wizard"}, {"black"}, sb::NoDraw);
  maralen.counters[int(CounterKind::Vanishing)] = n;
  maralen.counters[int(CounterKind::Prey)] = 1;
  rep.plan.countdown["Maralen of the Mornsong"] = n;
  put(s, "Timelock Orb", 0, false, sb::NoSearch);
  gadget("Maralen of the Mornsong");
  gadget("Timelock Orb");

  // cleanup chain: the kill spell's unique target, its return under Bob,
  // and the acid that dissolves the returner afterwards
  Permanent& tetzimoc =
      put_creature(s, "Tetzimoc, Primal Death", 0, false, 6, 6,
                   {"Elder", "Dinosaur"}, {"black"});
  tetzimoc.text_edits.push_back(
      {TextEdit::Kind::AddCreatureType, "", "Human"});
  Permanent& betrayal = put(s, "Grave Betrayal", 1, false);
  Permanent& acid =
      put(s, "Reality Acid", 1, false, sb::LeaveSacEnchanted);
  acid.is_aura = true;
  acid.attached_to = betrayal.id;
  acid.counters[int(CounterKind::Vanishing)] = n;
  rep.plan.countdown["Reality Acid"] = n;
  Permanent& ghost = put_creature(s, "Ghostflame Sliver", 1, false, 2, 2,
                                  {"Sliver"}, {"black"},
                                  sb::SliversColorless);
  ghost.text_edits.push_back(
      {TextEdit::Kind::ReplaceCreatureType, "Sliver", "Dinosaur"});
  // outlives the exile spell by one opposing upkeep, then vanishes so no
  // gadget creature survives into the machine phase
  ghost.counters[int(CounterKind::Vanishing)] = n + 1;
  rep.plan.countdown["Ghostflame Sliver"] = n + 1;
  gadget("Tetzimoc, Primal Death");
  gadget("Grave Betrayal");
  gadget("Reality Acid");
  gadget("Ghostflame Sliver");

  // write gadget: the flyer whose pumped lifelink damage mints tape counters
  Permanent& imp =
      put_creature(s, "Daggerdrome Imp", 0, true, 1, 1, {"Imp"}, {"black"},
                   sb::Flying | sb::Lifelink);
  imp.counters[int(CounterKind::PlusOne)] = 1;
  imp.counters[int(CounterKind::Prey)] = 1;
  Permanent& shade = put(s, "Shade's Form", 0, true, sb::GrantsPump);
  shade.is_aura = true;
  shade.attached_to = imp.id;
  Permanent& cloak = put(s, "Cloak of Mists", 0, true, sb::Unblockable);
  cloak.is_aura = true;
  cloak.attached_to = imp.id;
  Permanent& goblin = put_creature(s, "Hellraiser Goblin", 0, true, 2, 2,
                                   {"Goblin", "Berserker"}, {"red"},
                                   sb::AttackIfAble);
  goblin.counters[int(CounterKind::Prey)] = 1;
  // type line sanitized to keep the kill spell's Human target unique
  Permanent& magus = put_creature(s, "Magus of the Coffers", 0, true, 4, 4,
                                  {"Wizard"}, {"black"});
  magus.counters[int(CounterKind::Prey)] = 1;
  Permanent& mantle = put(s, "Umbral Mantle", 0, false);
  mantle.is_equipment = true;
  mantle.attached_to = magus.id;
  Permanent& entity =
      put_creature(s, "Ageless Entity", 0, true, 4, 4, {"Treefolk"},
                   {"green"}, sb::OnLifegainCounters);
  entity.counters[int(CounterKind::Prey)] = 1;
  Permanent& helm =
      put(s, "Helm of the Host", 0, false, sb::CombatCopyEquipped);
  helm.is_equipment = true;
  helm.attached_to = entity.id;
  helm.params["copy_tape_sym"] = std::to_string(tm::kDivider);
  Permanent& needle = put(s, "Pithing Needle", 0, false);
  needle.params["needle_names"] = "Helm of the Host";
  for (int i = 0; i < 6; ++i) {
    Permanent& tomb = put_creature(s, "Ancient Tomb", 0, true, 2, 2,
                                   {"Plant"}, {"green"});
    tomb.is_land = true;
    tomb.counters[int(CounterKind::Prey)] = 1;
  }
  put(s, "Night of Souls' Betrayal", 1, false, sb::GlobalPtMinus1);
  put(s, "Moat", 1, false, sb::FlyingOnlyAttack);
  for (const char* g :
       {"Daggerdrome Imp", "Shade's Form", "Cloak of Mists",
        "Hellraiser Goblin", "Magus of the Coffers", "Umbral Mantle",
        "Ageless Entity", "Helm of the Host", "Pithing Needle",
        "Ancient Tomb x6", "Night of Souls' Betrayal", "Moat"})
    gadget(g);

  // control swap: the mirror is phased in on Bob's turns before each
  // opponent-run round and force-casts the imprinted swap
  Permanent& mirror =
      put(s, "Panoptic Mirror", 1, false, sb::UpkeepImprintCast);
  mirror.has_phasing = true;
  mirror.phased_out = true;  // phases in at Bob's first untap
  mirror.params["imprint"] = "Cruel Entertainment";
  Permanent& curse = put(s, "Teferi's Curse", 1, false);
  curse.is_aura = true;
  curse.attached_to = mirror.id;
  gadget("Panoptic Mirror");
  gadget("Teferi's Curse");

  // the draw lock holds until round n, so the hand starts empty
  s.players[0].hand.clear();
  s.players[0].library = {"Infest", "Coalition Victory"};

  rep.sentence = sentence.source;
  fill_counts(s, machine, rep);
  if (report) *report = std::move(rep);
  return s;
}

tm::MachineConfig decode_board_tape(const GameState& s) {
  if (!s.stack.empty() || s.phase_step != Step::Untap)
    throw DecodeError(
        "mid-cycle: the tape bank is only defined at a turn boundary "
        "(untap step, empty stack)");
  tm::MachineConfig cfg;
  const Permanent* head = nullptr;
  int bank = -1;
  for (const auto& p : s.battlefield) {
    if (p.is_head) {
      if (head) throw DecodeError("unrecognizable tape bank: two heads");
      head = &p;
    }
    if (p.tape_sym > 0) {
      int64_t cell = p.counter(CounterKind::PlusOne) - 1;
      if (cell < 0)
        throw DecodeError("unrecognizable tape bank: cell below zero");
      if (cfg.tape.count(cell))
        throw DecodeError("unrecognizable tape bank: duplicate cell " +
                          std::to_string(cell));
      cfg.tape[cell] = p.tape_sym;
    }
    if (p.watch_bank >= 0 && !p.phased_out) {
      if (bank >= 0 && bank != p.watch_bank)
        throw DecodeError(
            "unrecognizable tape bank: multiple watcher banks phased in");
      bank = p.watch_bank;
    }
  }
  if (!head) throw DecodeError("unrecognizable tape bank: no head marker");
  if (bank < 0)
    throw DecodeError("unrecognizable tape bank: no watcher bank phased in");
  cfg.head = head->counter(CounterKind::PlusOne);
  cfg.state = bank;
  cfg.steps_taken = s.machine_steps;
  return cfg;
}

CompilationReport audit(const GameState& s, const CompilationReport& report) {
  CompilationReport out = report;
  out.problems.clear();
  auto problem = [&out](const std::string& msg) {
    out.problems.push_back(msg);
  };

  static const std::set<std::string> synthetic = {
      "head marker", "watcher", "tape cell", "victory herald token",
      "Zombie token"};
  auto known = [&](const std::string& card) {
    return synthetic.count(card) || cards::find_card(card) != nullptr;
  };

  int watchers = 0;
  for (const auto& p : s.battlefield) {
    if (!known(p.card)) problem("unknown card: " + p.card);
    if (p.watch_bank >= 0) ++watchers;
    // everything of Alice's that is a creature token outside the machine
    // must be marked for the cleanup sweep
    bool machine_part = p.is_head || p.tape_sym >= 0 || p.watch_bank >= 0 ||
                        p.card == "victory herald token";
    if (p.is_token && p.is_creature && p.controller == 0 && !machine_part &&
        p.counter(CounterKind::Prey) == 0)
      problem("unmarked gadget creature: " + p.card);
  }
  for (const auto& x : s.exile)
    if (!known(x.card)) problem("unknown card in exile: " + x.card);
  for (const auto& pl : s.players) {
    for (const auto& c : pl.hand)
      if (!known(c)) problem("unknown card in hand: " + c);
    for (const auto& c : pl.library)
      if (!known(c)) problem("unknown card in library: " + c);
    for (const auto& c : pl.graveyard)
      if (!known(c)) problem("unknown card in graveyard: " + c);
  }

  if (watchers != report.watcher_count)
    problem("watcher count " + std::to_string(watchers) + " != planned " +
            std::to_string(report.watcher_count));
  if (int64_t(s.battlefield.size()) != report.permanent_count)
    problem("permanent count " + std::to_string(s.battlefield.size()) +
            " != planned " + std::to_string(report.permanent_count));

  // countdowns: check whatever the plan mentions and is still present
  for (const auto& [card, value] : report.plan.countdown) {
    for (const auto& x : s.exile)
      if (x.card == card && x.suspended && x.time_counters != value)
        problem(card + " has " + std::to_string(x.time_counters) +
                " time counters, planned " + std::to_string(value));
    for (const auto& p : s.battlefield) {
      int64_t v = p.counter(CounterKind::Vanishing);
      if (p.card == card && v > 0 && v != value)
        problem(card + " has " + std::to_string(v) +
                " vanishing counters, planned " + std::to_string(value));
    }
  }

  out.audit_ok = out.problems.empty();
  return out;
}

}  // namespace mtg::compiler
