#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "mtg/cards.hpp"

using namespace mtg::engine;
using namespace mtg::cards;

namespace {

Permanent& add_perm(GameState& s, const std::string& card, PlayerId ctl,
                    uint32_t bits = 0) {
  s.battlefield.reserve(32);  // keep references stable across additions
  Permanent p;
  p.id = s.fresh_id();
  p.card = card;
  p.controller = ctl;
  p.bits = bits;
  s.battlefield.push_back(std::move(p));
  return s.battlefield.back();
}

Permanent& add_creature(GameState& s, const std::string& card, PlayerId ctl,
                        int64_t pw, int64_t to, uint32_t bits = 0) {
  Permanent& p = add_perm(s, card, ctl, bits);
  p.is_creature = true;
  p.base_power = pw;
  p.base_toughness = to;
  return p;
}

Permanent& add_watcher(GameState& s, PlayerId ctl, const std::string& watch,
                       const std::string& token_type,
                       const std::string& token_color) {
  Permanent& w = add_creature(s, "Rotlung Reanimator", ctl, 2, 2);
  w.creature_types = {"Zombie", "Cleric"};
  w.params["watch_type"] = watch;
  w.params["token_type"] = token_type;
  w.params["token_color"] = token_color;
  return w;
}

void resolve_all(GameState& s) {
  while (!s.stack.empty()) resolve_top_inplace(s);
}

}  // namespace

TEST_CASE("the deck list has exactly sixty cards") {
  DeckList d = instantiate_deck();
  CHECK(d.total() == 60);
  int petals = 0;
  for (const auto& e : d.entries) {
    CHECK(find_card(e.name) != nullptr);
    if (e.name == "Lotus Petal") petals = e.count;
  }
  CHECK(petals == 3);
  CHECK(d.entries.size() == 58);  // 57 singletons plus the petal triple
}

TEST_CASE("raw deck spellings and prose aliases resolve to definitions") {
  CHECK(find_card("Priviledged Position") ==
        find_card("Privileged Position"));
  CHECK(find_card("Xanthrid Necromancer") ==
        find_card("Xathrid Necromancer"));
  CHECK(find_card("Tetzimoc Primal Death") ==
        find_card("Tetzimoc, Primal Death"));
  CHECK(find_card("Choak") == find_card("Choke"));
  CHECK(find_card("Blazing Archeon") == find_card("Blazing Archon"));
  CHECK(normalize_name("Xanthrid Necromancer") == "Xathrid Necromancer");
  CHECK(normalize_name("Choke") == "Choke");
  CHECK(find_card("No Such Card") == nullptr);
}

TEST_CASE("supplemental cards are defined but outside the deck") {
  for (const char* name :
       {"Night of Souls' Betrayal", "Human Frailty", "Shade's Form",
        "Olivia Voldaren", "Blazing Archon"}) {
    const CardDefinition* c = find_card(name);
    REQUIRE(c);
    CHECK(c->supplemental);
  }
  DeckList d = instantiate_deck();
  for (const auto& e : d.entries) CHECK_FALSE(find_card(e.name)->supplemental);
}

TEST_CASE("a death watcher produces its token when the watched type dies") {
  GameState s;
  add_watcher(s, 1, "Cleric", "Zombie", "black");
  Permanent& victim = add_creature(s, "victim", 0, 1, 1);
  victim.creature_types = {"Human", "Cleric"};
  destroy_permanent(s, victim.id);
  resolve_all(s);
  int tokens = 0;
  for (const auto& p : s.battlefield)
    if (p.is_token && p.creature_types.count("Zombie")) ++tokens;
  CHECK(tokens == 1);
}

TEST_CASE("a watcher sees its own death") {
  GameState s;
  Permanent& w = add_watcher(s, 0, "Cleric", "Zombie", "black");
  destroy_permanent(s, w.id);
  resolve_all(s);
  REQUIRE(s.battlefield.size() == 1);
  CHECK(s.battlefield[0].is_token);
  CHECK(s.battlefield[0].creature_types.count("Zombie") == 1);
}

TEST_CASE("watch tags and produced tokens go through text edits") {
  GameState s;
  Permanent& w = add_watcher(s, 1, "Cleric", "Zombie", "black");
  w.text_edits.push_back(
      {TextEdit::Kind::ReplaceCreatureType, "Cleric", "Aetherborn"});
  w.text_edits.push_back(
      {TextEdit::Kind::ReplaceCreatureType, "Zombie", "Sliver"});
  w.text_edits.push_back(
      {TextEdit::Kind::ReplaceColorWord, "black", "white"});
  Permanent& miss = add_creature(s, "cleric", 0, 1, 1);
  miss.creature_types = {"Cleric"};
  auto specs = death_trigger_tokens(s, *s.find(miss.id));
  CHECK(specs.empty());  // the edited watcher no longer watches Clerics
  Permanent& hit = add_creature(s, "aetherborn", 0, 1, 1);
  hit.creature_types = {"Aetherborn"};
  specs = death_trigger_tokens(s, *s.find(hit.id));
  REQUIRE(specs.size() == 1);
  CHECK(specs[0].creature_types == std::set<std::string>{"Sliver"});
  CHECK(specs[0].colors == std::set<std::string>{"white"});
}

TEST_CASE("phased-out watchers are silent") {
  GameState s;
  Permanent& w = add_watcher(s, 1, "Cleric", "Zombie", "black");
  w.phased_out = true;
  Permanent& victim = add_creature(s, "cleric", 0, 1, 1);
  victim.creature_types = {"Cleric"};
  CHECK(death_trigger_tokens(s, *s.find(victim.id)).empty());
}

TEST_CASE("counter tweaking adjusts battlefield and suspended counters") {
  GameState s;
  Permanent& p = add_creature(s, "subject", 0, 2, 2);
  p.add_counter(CounterKind::PlusOne, 2);
  GameState t = clockspinning_adjust(
      s, {TargetRef::Kind::Permanent, p.id}, CounterKind::PlusOne, true);
  CHECK(t.find(p.id)->counter(CounterKind::PlusOne) == 3);
  t = clockspinning_adjust(t, {TargetRef::Kind::Permanent, p.id},
                           CounterKind::PlusOne, false);
  CHECK(t.find(p.id)->counter(CounterKind::PlusOne) == 2);
  CHECK_THROWS_AS(
      clockspinning_adjust(s, {TargetRef::Kind::Permanent, p.id},
                           CounterKind::Time, true),
      std::invalid_argument);

  ExiledCard x;
  x.id = s.fresh_id();
  x.card = "Choke";
  x.suspended = true;
  x.time_counters = 3;
  s.exile.push_back(x);
  t = clockspinning_adjust(s, {TargetRef::Kind::Permanent, x.id},
                           CounterKind::Time, true);
  // permanents are checked first; the id only matches the exile zone
  CHECK(t.exile[0].time_counters == 4);
}

TEST_CASE("the mutual turn swap covers both players' next turns") {
  GameState s;
  s.active_player = 0;
  GameState t = cruel_entertainment_swap(s);
  CHECK(t.pending_turn_controller[0] == 1);
  CHECK(t.pending_turn_controller[1] == 0);
  t.phase_step = Step::End;
  advance_step_inplace(t);
  CHECK(t.active_player == 1);
  CHECK(t.turn_controller == 0);
  while (t.phase_step != Step::End) {
    resolve_all(t);
    advance_step_inplace(t);
  }
  resolve_all(t);
  advance_step_inplace(t);
  CHECK(t.active_player == 0);
  CHECK(t.turn_controller == 1);
}

TEST_CASE("the imprint upkeep trigger casts the swap copy") {
  GameState s;
  Permanent& mirror = add_perm(s, "Panoptic Mirror", 1, sb::UpkeepImprintCast);
  mirror.params["imprint"] = "Cruel Entertainment";
  s.active_player = 0;
  s.phase_step = Step::End;
  advance_step_inplace(s);  // player 1 untap
  advance_step_inplace(s);  // player 1 upkeep: imprint trigger
  REQUIRE(s.stack.size() == 1);
  resolve_top_inplace(s);  // trigger pushes the spell copy
  REQUIRE(s.stack.size() == 1);
  CHECK(s.stack.back().is_copy);
  resolve_top_inplace(s);
  CHECK(s.pending_turn_controller[0] == 1);
  CHECK(s.pending_turn_controller[1] == 0);
  CHECK(s.players[1].graveyard.empty());  // copies never hit the graveyard
}

TEST_CASE("forced random casts require a one-card hand") {
  GameState s;
  add_perm(s, "Wild Evocation", 1, sb::UpkeepForceCast);
  s.players[0].hand = {"Infest", "Coalition Victory"};
  s.active_player = 0;
  s.phase_step = Step::Untap;
  advance_step_inplace(s);  // upkeep
  REQUIRE(s.stack.size() == 1);
  CHECK_THROWS_AS(resolve_top_inplace(s), ForcednessError);
}

TEST_CASE("the win-condition spell fizzles until the board qualifies") {
  GameState s;
  s.players[0].hand = {"Coalition Victory"};
  add_perm(s, "Wild Evocation", 1, sb::UpkeepForceCast);
  s.active_player = 0;
  s.phase_step = Step::Untap;
  advance_step_inplace(s);
  resolve_all(s);
  CHECK_FALSE(s.won_by.has_value());
  CHECK_FALSE(s.game_over());
  REQUIRE(s.players[0].graveyard.size() == 1);
  CHECK(s.players[0].graveyard[0] == "Coalition Victory");
}

TEST_CASE("the win-condition spell wins with lands, basics, five colors") {
  GameState s;
  s.players[0].hand = {"Coalition Victory"};
  add_perm(s, "Wild Evocation", 1, sb::UpkeepForceCast);
  add_perm(s, "Prismatic Omen", 0, sb::LandsAllBasics);
  Permanent& land = add_perm(s, "Ancient Tomb", 0);
  land.is_land = true;
  Permanent& herald = add_creature(s, "victory herald token", 0, 2, 2);
  herald.colors = {"white", "blue", "black", "red", "green"};
  herald.is_token = true;
  s.active_player = 0;
  s.phase_step = Step::Untap;
  advance_step_inplace(s);
  resolve_all(s);
  CHECK(s.won_by == 0);
  CHECK(s.players[1].lost_flag);
}

TEST_CASE("a suspended kill spell resolves against the unique Human") {
  GameState s;
  Permanent& tz = add_creature(s, "Tetzimoc, Primal Death", 0, 6, 6);
  tz.creature_types = {"Elder", "Dinosaur"};
  tz.text_edits.push_back({TextEdit::Kind::AddCreatureType, "", "Human"});
  ObjId tz_id = tz.id;
  add_creature(s, "bystander", 1, 2, 2).creature_types = {"Goblin"};
  ExiledCard x;
  x.id = s.fresh_id();
  x.card = "Human Frailty";
  x.owner = 1;
  x.suspended = true;
  x.time_counters = 1;
  x.ticks_on = 0;
  s.exile.push_back(x);
  s.active_player = 1;
  s.phase_step = Step::End;
  advance_step_inplace(s);  // player 0 untap
  advance_step_inplace(s);  // player 0 upkeep: final tick, cast
  resolve_all(s);
  CHECK_FALSE(s.find(tz_id));
  CHECK(s.players[0].graveyard ==
        std::vector<std::string>{"Tetzimoc, Primal Death"});
}

TEST_CASE("the suspended kill spell objects to ambiguous targets") {
  GameState s;
  add_creature(s, "a", 0, 2, 2).creature_types = {"Human"};
  add_creature(s, "b", 1, 2, 2).creature_types = {"Human"};
  StackEntry e;
  e.id = s.fresh_id();
  e.script = "cast_from_suspend";
  e.controller = 1;
  ExiledCard x;
  x.id = s.fresh_id();
  x.card = "Human Frailty";
  x.owner = 1;
  x.suspended = true;
  s.exile.push_back(x);
  e.params["exile_id"] = std::to_string(x.id);
  s.stack.push_back(e);
  CHECK_THROWS_AS(resolve_top_inplace(s), ForcednessError);
}

TEST_CASE("the exile spell hits the creature made colorless by the field") {
  GameState s;
  Permanent& ghost = add_creature(s, "Ghostflame Sliver", 1, 2, 2,
                                  sb::SliversColorless);
  ghost.creature_types = {"Sliver"};
  ghost.colors = {"black"};
  ghost.text_edits.push_back(
      {TextEdit::Kind::ReplaceCreatureType, "Sliver", "Dinosaur"});
  // the field now reads "Dinosaurs are colorless", so it no longer covers
  // the Sliver that carries it
  Permanent& tz = add_creature(s, "Tetzimoc, Primal Death", 1, 6, 6);
  tz.creature_types = {"Elder", "Dinosaur", "Zombie"};
  tz.colors = {"black"};
  ObjId tz_id = tz.id, ghost_id = ghost.id;
  ExiledCard x;
  x.id = s.fresh_id();
  x.card = "Infernal Reckoning";
  x.owner = 0;
  x.suspended = true;
  x.time_counters = 1;
  x.ticks_on = 0;
  s.exile.push_back(x);
  s.active_player = 1;
  s.phase_step = Step::End;
  advance_step_inplace(s);
  advance_step_inplace(s);
  resolve_all(s);
  CHECK_FALSE(s.find(tz_id));
  CHECK(s.find(ghost_id));
  CHECK(s.players[0].life == 26);  // gained life equal to its power
  REQUIRE(s.exile.size() == 1);    // exiled, not destroyed
  CHECK(s.exile[0].card == "Tetzimoc, Primal Death");
  CHECK_FALSE(s.exile[0].suspended);
  CHECK(s.players[1].graveyard.empty());
}

TEST_CASE("a dead nontoken creature returns under the enemy enchantment") {
  GameState s;
  add_perm(s, "Grave Betrayal", 1);
  Permanent& tz = add_creature(s, "Tetzimoc, Primal Death", 0, 6, 6);
  tz.creature_types = {"Elder", "Dinosaur"};
  Permanent& prey1 = add_creature(s, "hacked mana rock", 0, 2, 2);
  prey1.is_token = true;
  prey1.add_counter(CounterKind::Prey, 1);
  Permanent& safe = add_creature(s, "marked ally", 1, 2, 2);
  safe.add_counter(CounterKind::Prey, 1);
  Permanent& unmarked = add_creature(s, "clean bystander", 0, 3, 3);
  unmarked.is_token = true;
  ObjId tz_id = tz.id, prey1_id = prey1.id, safe_id = safe.id,
        unmarked_id = unmarked.id;

  s.active_player = 0;
  destroy_permanent(s, tz_id);
  REQUIRE(s.stack.size() == 1);  // the return is scheduled by a trigger
  resolve_all(s);
  CHECK(s.pending_returns.size() == 1);
  CHECK(s.players[0].graveyard ==
        std::vector<std::string>{"Tetzimoc, Primal Death"});

  s.phase_step = Step::Main2;
  advance_step_inplace(s);  // end step fires the delayed return
  resolve_all(s);
  const Permanent* back = nullptr;
  for (const auto& p : s.battlefield)
    if (p.card == "Tetzimoc, Primal Death") back = &p;
  REQUIRE(back);
  CHECK(back->controller == 1);
  CHECK_FALSE(back->is_token);
  CHECK(back->counter(CounterKind::PlusOne) == 1);
  CHECK(back->creature_types.count("Zombie") == 1);
  CHECK(back->colors.count("black") == 1);
  CHECK(s.players[0].graveyard.empty());  // the card left the graveyard
  // its arrival sweeps the enemy creatures marked as prey, nothing else
  CHECK_FALSE(s.find(prey1_id));
  CHECK(s.find(safe_id));
  CHECK(s.find(unmarked_id));
}

TEST_CASE("the delayed return finds cards the recycler moved to a library") {
  GameState s;
  add_perm(s, "Grave Betrayal", 1);
  add_perm(s, "Wheel of Sun and Moon", 0, sb::RecycleGraveyard);
  s.players[0].library = {"Coalition Victory"};
  Permanent& tz = add_creature(s, "Tetzimoc, Primal Death", 0, 6, 6);
  ObjId tz_id = tz.id;
  s.active_player = 0;
  destroy_permanent(s, tz_id);
  resolve_all(s);
  // the recycler intercepted the card on the way to the graveyard
  CHECK(s.players[0].graveyard.empty());
  CHECK(s.players[0].library ==
        std::vector<std::string>{"Coalition Victory", "Tetzimoc, Primal Death"});
  s.phase_step = Step::Main2;
  advance_step_inplace(s);  // end step fires the delayed return
  resolve_all(s);
  bool back = false;
  for (const auto& p : s.battlefield)
    if (p.card == "Tetzimoc, Primal Death") back = true;
  CHECK(back);
  // the physical card came out of the library, not just the graveyard
  CHECK(s.players[0].library == std::vector<std::string>{"Coalition Victory"});
}

TEST_CASE("tokens that die never come back") {
  GameState s;
  add_perm(s, "Grave Betrayal", 1);
  Permanent& tok = add_creature(s, "maralen stand-in", 0, 2, 3);
  tok.is_token = true;
  destroy_permanent(s, tok.id);
  resolve_all(s);
  CHECK(s.pending_returns.empty());
}

TEST_CASE("the leave-trigger aura drags its host down with it") {
  GameState s;
  Permanent& host = add_perm(s, "Grave Betrayal", 1);
  Permanent& acid = add_perm(s, "Reality Acid", 1, sb::LeaveSacEnchanted);
  acid.is_aura = true;
  acid.attached_to = host.id;
  ObjId host_id = host.id, acid_id = acid.id;
  destroy_permanent(s, acid_id);
  REQUIRE(s.stack.size() == 1);
  resolve_all(s);
  CHECK_FALSE(s.find(host_id));
}

TEST_CASE("a machine step probes the head cell and applies the transition") {
  GameState s;
  s.meta["sym_types"] = "Aetherborn,Elemental,Basilisk";
  // head at cell 2, cell 2 holds symbol 1
  Permanent& head = add_creature(s, "head marker", 0, 2, 2);
  head.is_head = true;
  head.is_token = true;
  head.counters[int(CounterKind::PlusOne)] = 2;
  Permanent& cell = add_creature(s, "tape cell", 0, 2, 2);
  cell.is_token = true;
  cell.tape_sym = 1;
  cell.counters[int(CounterKind::PlusOne)] = 3;  // cell index plus one
  // bank 0 watcher: on symbol 1 write symbol 2, move right, stay in bank 0
  Permanent& w = add_creature(s, "watcher", 1, 2, 2);
  w.is_token = true;
  w.watch_bank = 0;
  w.watch_sym = 1;
  w.write_sym = 2;
  w.next_bank = 0;
  w.move_dir = 1;
  // a phased-out bank 1 watcher that must stay silent
  Permanent& w2 = add_creature(s, "watcher", 1, 2, 2);
  w2.is_token = true;
  w2.watch_bank = 1;
  w2.watch_sym = 1;
  w2.write_sym = 0;
  w2.next_bank = 1;
  w2.move_dir = -1;
  w2.phased_out = true;

  StackEntry e;
  e.id = s.fresh_id();
  e.script = "machine_step";
  e.source_card = "Infest";
  e.controller = 0;
  s.stack.push_back(e);
  resolve_top_inplace(s);  // probe kills the cell; the watcher trigger stacks
  REQUIRE(s.stack.size() == 1);
  resolve_top_inplace(s);
  CHECK(s.machine_steps == 1);
  CHECK(s.find(head.id)->counter(CounterKind::PlusOne) == 3);  // moved right
  const Permanent* written = nullptr;
  for (const auto& p : s.battlefield)
    if (p.tape_sym >= 0) written = &p;
  REQUIRE(written);
  CHECK(written->tape_sym == 2);
  CHECK(written->counter(CounterKind::PlusOne) == 3);  // same cell index
  CHECK(written->creature_types == std::set<std::string>{"Basilisk"});
}

TEST_CASE("probing an absent cell materializes the blank first") {
  GameState s;
  s.meta["sym_types"] = "Aetherborn,Elemental";
  Permanent& head = add_creature(s, "head marker", 0, 2, 2);
  head.is_head = true;
  head.is_token = true;
  head.counters[int(CounterKind::PlusOne)] = 5;
  // blank-watching bank 0 watcher: write symbol 1, move left
  Permanent& w = add_creature(s, "watcher", 1, 2, 2);
  w.is_token = true;
  w.watch_bank = 0;
  w.watch_sym = 0;
  w.write_sym = 1;
  w.next_bank = 0;
  w.move_dir = -1;
  StackEntry e;
  e.id = s.fresh_id();
  e.script = "machine_step";
  e.source_card = "Infest";
  e.controller = 0;
  s.stack.push_back(e);
  resolve_top_inplace(s);
  resolve_all(s);
  CHECK(s.machine_steps == 1);
  CHECK(s.find(head.id)->counter(CounterKind::PlusOne) == 4);
  const Permanent* written = nullptr;
  for (const auto& p : s.battlefield)
    if (p.tape_sym >= 0) written = &p;
  REQUIRE(written);
  CHECK(written->tape_sym == 1);
  // the cell with index h carries h + 1 counters
  CHECK(written->counter(CounterKind::PlusOne) == 6);
}

TEST_CASE("a halting transition restores the cell and spawns the herald") {
  GameState s;
  s.meta["sym_types"] = "Aetherborn,Elemental";
  Permanent& head = add_creature(s, "head marker", 0, 2, 2);
  head.is_head = true;
  head.is_token = true;
  head.counters[int(CounterKind::PlusOne)] = 1;
  Permanent& cell = add_creature(s, "tape cell", 0, 2, 2);
  cell.is_token = true;
  cell.tape_sym = 1;
  cell.counters[int(CounterKind::PlusOne)] = 2;
  Permanent& w = add_creature(s, "watcher", 1, 2, 2);
  w.is_token = true;
  w.watch_bank = 0;
  w.watch_sym = 1;
  w.halt_watcher = true;
  StackEntry e;
  e.id = s.fresh_id();
  e.script = "machine_step";
  e.source_card = "Infest";
  e.controller = 0;
  s.stack.push_back(e);
  resolve_top_inplace(s);
  resolve_all(s);
  CHECK(s.machine_steps == 0);  // halting is not a transition
  CHECK(s.find(head.id)->counter(CounterKind::PlusOne) == 1);  // no move
  const Permanent* restored = nullptr;
  const Permanent* herald = nullptr;
  for (const auto& p : s.battlefield) {
    if (p.tape_sym == 1) restored = &p;
    if (p.colors.size() == 5) herald = &p;
  }
  REQUIRE(restored);
  CHECK(restored->counter(CounterKind::PlusOne) == 2);
  REQUIRE(herald);
  CHECK(herald->is_creature);
}

TEST_CASE("the combat copy trigger mints a divider accumulator") {
  GameState s;
  s.meta["sym_types"] = "Aetherborn,Elemental";
  Permanent& ent = add_creature(s, "Ageless Entity", 0, 4, 4,
                                sb::OnLifegainCounters);
  ent.creature_types = {"Treefolk"};
  Permanent& helm = add_perm(s, "Helm of the Host", 0,
                             sb::CombatCopyEquipped);
  helm.is_equipment = true;
  helm.attached_to = ent.id;
  helm.params["copy_tape_sym"] = "1";
  s.active_player = 0;
  s.phase_step = Step::Draw;
  advance_step_inplace(s);  // first main
  advance_step_inplace(s);  // begin combat: copy trigger
  REQUIRE(s.stack.size() == 1);
  resolve_all(s);
  const Permanent* copy = nullptr;
  for (const auto& p : s.battlefield)
    if (p.is_token) copy = &p;
  REQUIRE(copy);
  CHECK(copy->card == "Ageless Entity");
  CHECK(copy->tape_sym == 1);
  CHECK(copy->counter(CounterKind::PlusOne) == 0);
  CHECK((copy->bits & sb::OnLifegainCounters) != 0);
  CHECK(copy->creature_types == std::set<std::string>{"Elemental"});
}

TEST_CASE("the forced chain resolver drains the stack") {
  GameState s;
  Permanent& victim = add_creature(s, "bystander", 0, 1, 1);
  StackEntry e;
  e.id = s.fresh_id();
  e.script = "destroy_target";
  e.source_card = "Infest";
  e.controller = 1;
  e.targets.push_back({TargetRef::Kind::Permanent, victim.id});
  s.stack.push_back(e);
  GameState t = cleanup_chain_effects(s);
  CHECK(t.stack.empty());
  CHECK_FALSE(t.find(victim.id));
  CHECK(s.find(victim.id));  // the input state is untouched
}

TEST_CASE("unknown effect scripts are loud failures") {
  GameState s;
  StackEntry e;
  e.id = s.fresh_id();
  e.script = "definitely_not_a_script";
  s.stack.push_back(e);
  CHECK_THROWS_AS(resolve_top_inplace(s), std::logic_error);
}

TEST_CASE("the committed card data files match the registry") {
  namespace fs = std::filesystem;
  const fs::path dir = CARD_DATA_DIR;
  REQUIRE(fs::is_directory(dir));
  size_t files = 0;
  for (const auto& entry : fs::directory_iterator(dir)) ++files;
  CHECK(files == all_cards().size());
  for (const auto& d : all_cards()) {
    std::ifstream in(dir / card_file_name(d));
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    CHECK(os.str() == card_to_json(d));
  }
}
