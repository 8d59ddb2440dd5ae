#include "mtg/cards.hpp"


#include <json.hpp>
#include <algorithm>

namespace mtg::cards {

using namespace engine;

// ---------------------------------------------------------------------------
// card registry

int DeckList::total() const {
  int t = 0;
  for (const auto& e : entries) t += e.count;
  return t;
}

namespace {

struct Reg {
  std::vector<CardDefinition> cards;
  std::map<std::string, size_t> by_name;  // normalized, raw, and aliases
  std::map<std::string, std::string> normalizations;

  void add(CardDefinition c, std::vector<std::string> aliases = {}) {
    size_t idx = cards.size();
    by_name[c.name] = idx;
    if (!c.table_name.empty() && c.table_name != c.name) {
      by_name[c.table_name] = idx;
      normalizations[c.table_name] = c.name;
    }
    for (auto& a : aliases) {
      by_name[a] = idx;
      normalizations[a] = c.name;
    }
    cards.push_back(std::move(c));
  }
};

CardDefinition def(std::string name, std::set<std::string> types,
                   std::string text = "",
                   std::vector<std::string> abilities = {}) {
  CardDefinition c;
  c.name = std::move(name);
  c.types = std::move(types);
  c.rules_text = std::move(text);
  c.abilities = std::move(abilities);
  return c;
}

CardDefinition creature(std::string name, std::set<std::string> ctypes,
                        int64_t pw, int64_t to, std::set<std::string> colors,
                        std::string text = "",
                        std::vector<std::string> abilities = {}) {
  CardDefinition c = def(std::move(name), {"creature"}, std::move(text),
                         std::move(abilities));
  c.creature_types = std::move(ctypes);
  c.power = pw;
  c.toughness = to;
  c.colors = std::move(colors);
  return c;
}

const Reg& registry() {
  static const Reg reg = [] {
    Reg r;
    // device set-up column 1
    r.add(def("Ancient Tomb", {"land"},
              "T: Add CC. Ancient Tomb deals 2 damage to you."));
    r.add(def("Grim Monolith", {"artifact"}));
    r.add(def("Power Artifact", {"enchantment", "aura"}));
    r.add(def("Gemstone Array", {"artifact"}));
    r.add(def("Staff of Domination", {"artifact"}));
    r.add(def("Karn Liberated", {"planeswalker"}));
    {
      auto c = creature("Fathom Feeder", {"Eldrazi", "Drone"}, 1, 1, {});
      c.types = {"creature"};
      r.add(std::move(c));
    }
    r.add(def("Cloak of Mists", {"enchantment", "aura"},
              "Enchanted creature can't be blocked.", {"unblockable"}));
    r.add(def("Lotus Petal", {"artifact"}, "T, Sacrifice Lotus Petal: Add "
                                           "one mana of any color."));
    r.add(creature("Ghostflame Sliver", {"Sliver"}, 2, 2, {"black"},
                   "All Slivers are colorless.", {"slivers_colorless"}));
    r.add(def("Infernal Reckoning", {"instant"},
              "Exile target colorless creature. You gain life equal to its "
              "power.",
              {"exile_target_gain_life"}));
    r.add(def("Reality Acid", {"enchantment", "aura"},
              "Enchant permanent. Vanishing 3. When Reality Acid leaves the "
              "battlefield, enchanted permanent's controller sacrifices it.",
              {"vanishing", "leave_sac_enchanted"}));
    r.add(def("Cloak of Invisibility", {"enchantment", "aura"},
              "Enchanted creature has phasing and can't be blocked except by "
              "Walls."));
    r.add(def("Rings of Brighthearth", {"artifact"}));
    // device set-up column 2
    r.add(creature("Memnarch", {"Wizard"}, 4, 5, {}));
    r.add(def("Artificial Evolution", {"instant"},
              "Change the text of target spell or permanent by replacing all "
              "instances of one creature type with another. The new creature "
              "type can't be Wall.",
              {"text_edit_creature_type"}));
    r.add(def("Dread of Night", {"enchantment"},
              "White creatures get -1/-1."));
    r.add(def("Glamerdye", {"instant"},
              "Change the text of target spell or permanent by replacing all "
              "instances of one color word with another.",
              {"text_edit_color_word"}));
    r.add(def("Prismatic Lace", {"instant"},
              "Target permanent becomes the color or colors of your choice."));
    r.add(def("Donate", {"sorcery"}));
    r.add(def("Reality Ripple", {"instant"},
              "Target artifact, creature, or land phases out."));
    r.add(def("Riptide Replicator", {"artifact"}));
    r.add(def("Stolen Identity", {"sorcery"}));
    r.add(def("Capsize", {"instant"}));
    r.add(def("Clockspinning", {"instant"},
              "Choose target permanent or suspended card. Remove a counter "
              "from it or put another of those counters on it.",
              {"counter_adjust"}));
    r.add(def("Delay", {"instant"},
              "Counter target spell. If the spell is countered this way, "
              "exile it with three time counters on it instead of putting it "
              "into its owner's graveyard. If it doesn't have suspend, it "
              "gains suspend.",
              {"suspend_grant"}));
    r.add(def("Wheel of Sun and Moon", {"enchantment", "aura"},
              "If a card would be put into enchanted player's graveyard from "
              "anywhere, instead that card is revealed and put on the bottom "
              "of its owner's library.",
              {"recycle_graveyard"}));
    r.add(def("Teferi's Curse", {"enchantment", "aura"},
              "Enchanted artifact or creature has phasing.",
              {"grants_phasing"}));
    r.add(creature("Fungus Sliver", {"Fungus", "Sliver"}, 2, 2, {"green"}));
    // Magic Turing machine column
    r.add(creature("Rotlung Reanimator", {"Zombie", "Cleric"}, 2, 2,
                   {"black"},
                   "Whenever Rotlung Reanimator or another Cleric dies, "
                   "create a 2/2 black Zombie creature token.",
                   {"death_watcher"}));
    r.add(def("Infest", {"sorcery"},
              "All creatures get -2/-2 until end of turn.", {"machine_step"}));
    r.add(def("Cleansing Beam", {"instant"}));
    r.add(creature("Soul Snuffers", {"Nightmare"}, 3, 3, {"black"}));
    r.add(def("Illusionary Gains", {"enchantment", "aura"}));
    {
      auto c = def("Privileged Position", {"enchantment"});
      c.table_name = "Priviledged Position";
      r.add(std::move(c));
    }
    r.add(def("Steely Resolve", {"enchantment"}));
    r.add(def("Wild Evocation", {"enchantment"},
              "At the beginning of each player's upkeep, that player reveals "
              "a card at random from their hand and casts it without paying "
              "its mana cost if able.",
              {"upkeep_force_cast"}));
    r.add(def("Shared Triumph", {"enchantment"}));
    {
      auto c = creature("Xathrid Necromancer", {"Human", "Cleric"}, 2, 2,
                        {"black"},
                        "Whenever Xathrid Necromancer or another Human you "
                        "control dies, create a tapped 2/2 black Zombie "
                        "creature token.",
                        {"death_watcher"});
      c.table_name = "Xanthrid Necromancer";
      r.add(std::move(c));
    }
    r.add(def("Mesmeric Orb", {"artifact"}));
    r.add(def("Coalition Victory", {"sorcery"},
              "You win the game if you control a land of each basic land "
              "type and a creature of each color.",
              {"coalition_victory"}));
    r.add(def("Choke", {"enchantment"},
              "Islands don't untap during their controllers' untap steps."),
          {"Choak"});
    r.add(creature("Vigor", {"Elemental", "Incarnation"}, 6, 6, {"green"}));
    r.add(def("Prismatic Omen", {"enchantment"},
              "Lands you control are every basic land type in addition to "
              "their other types.",
              {"lands_all_basics"}));
    // arithmetic sentences column
    {
      auto c = creature("Tetzimoc, Primal Death", {"Elder", "Dinosaur"}, 6, 6,
                        {"black"},
                        "When Tetzimoc, Primal Death enters the battlefield, "
                        "destroy each creature your opponents control with a "
                        "prey counter on it.",
                        {"prey_sweep"});
      r.add(std::move(c), {"Tetzimoc Primal Death"});
    }
    r.add(def("Grave Betrayal", {"enchantment"},
              "Whenever a creature you don't control dies, return it to the "
              "battlefield under your control with an additional +1/+1 "
              "counter on it at the beginning of the next end step. That "
              "creature is a black Zombie in addition to its other colors "
              "and types.",
              {"grave_betrayal"}));
    r.add(creature("Maralen of the Mornsong", {"Elf", "Wizard"}, 2, 3,
                   {"black"},
                   "Players can't draw cards. At the beginning of each "
                   "player's draw step, that player loses 3 life and "
                   "searches their library for a card, puts it into their "
                   "hand, then shuffles.",
                   {"no_draw", "draw_replacement"}));
    r.add(def("Timelock Orb", {"artifact"},
              "Players can't search libraries.", {"no_search"}));
    r.add(creature("Ageless Entity", {"Treefolk"}, 4, 4, {"green"},
                   "Whenever you gain life, put that many +1/+1 counters on "
                   "Ageless Entity.",
                   {"lifegain_counters"}));
    r.add(def("Helm of the Host", {"artifact", "equipment"},
              "At the beginning of combat on your turn, create a token "
              "that's a copy of equipped creature. Equip 5.",
              {"combat_copy"}));
    r.add(creature("Daggerdrome Imp", {"Imp"}, 1, 1, {"black"},
                   "Flying, lifelink.", {"flying", "lifelink"}));
    r.add(def("Umbral Mantle", {"artifact", "equipment"},
              "Equipped creature has \"3, Q: This creature gets +2/+2 until "
              "end of turn.\""));
    r.add(creature("Hellraiser Goblin", {"Goblin", "Berserker"}, 2, 2,
                   {"red"},
                   "Creatures you control have haste and attack each combat "
                   "if able.",
                   {"attack_if_able"}));
    r.add(creature("Magus of the Coffers", {"Human", "Wizard"}, 4, 4,
                   {"black"}, "2, T: Add B for each Swamp you control."));
    r.add(def("Moat", {"enchantment"},
              "Creatures without flying can't attack.",
              {"flying_only_attack"}));
    r.add(def("Cruel Entertainment", {"sorcery"},
              "Choose target player and another target player. The first "
              "player controls the second player during the second player's "
              "next turn, and the second player controls the first player "
              "during the first player's next turn.",
              {"cruel_entertainment"}));
    r.add(def("Panoptic Mirror", {"artifact"},
              "Imprint - X, T: Exile an instant or sorcery card with "
              "converted mana cost X from your hand. At the beginning of "
              "your upkeep, you may cast a copy of a card imprinted on "
              "Panoptic Mirror without paying its mana cost.",
              {"upkeep_imprint_cast"}));
    r.add(def("Pithing Needle", {"artifact"},
              "As Pithing Needle enters the battlefield, choose a card name. "
              "Activated abilities of sources with the chosen name can't be "
              "activated unless they're mana abilities.",
              {"needle"}));
    // supplemental cards quoted in prose but absent from the deck list
    auto supp = [&r](CardDefinition c, std::vector<std::string> al = {}) {
      c.supplemental = true;
      r.add(std::move(c), std::move(al));
    };
    supp(def("Night of Souls' Betrayal", {"enchantment"},
             "All creatures get -1/-1.", {"global_pt_minus1"}));
    supp(def("Human Frailty", {"instant"}, "Destroy target Human creature.",
             {"destroy_target_human"}));
    supp(def("Shade's Form", {"enchantment", "aura"},
             "Enchanted creature has \"B: This creature gets +1/+1 until "
             "end of turn.\"",
             {"grants_pump"}));
    supp(creature("Olivia Voldaren", {"Vampire"}, 3, 3, {"black", "red"},
                  "1R: Olivia Voldaren deals 1 damage to another target "
                  "creature. That creature becomes a Vampire in addition to "
                  "its other types."));
    supp(creature("Blazing Archon", {"Archon"}, 5, 6, {"white"},
                  "Flying. Creatures can't attack you.", {"flying"}),
         {"Blazing Archeon"});
    return r;
  }();
  return reg;
}

}  // namespace

const std::vector<CardDefinition>& all_cards() { return registry().cards; }

const CardDefinition* find_card(const std::string& name) {
  const auto& r = registry();
  auto it = r.by_name.find(name);
  return it == r.by_name.end() ? nullptr : &r.cards[it->second];
}

std::string normalize_name(const std::string& name) {
  const auto& n = registry().normalizations;
  auto it = n.find(name);
  return it == n.end() ? name : it->second;
}

const std::map<std::string, std::string>& spelling_normalizations() {
  return registry().normalizations;
}

DeckList instantiate_deck() {
  DeckList d;
  for (const auto& c : registry().cards) {
    if (c.supplemental) continue;
    d.entries.push_back({c.name, c.name == "Lotus Petal" ? 3 : 1});
  }
  return d;
}

// ---------------------------------------------------------------------------
// helpers

namespace {

const CardDefinition& require_card(const std::string& name) {
  const CardDefinition* c = find_card(name);
  if (!c) throw std::invalid_argument("unknown card: " + name);
  return *c;
}

// colorless either inherently or through a type-restricted colorless field
bool is_colorless(const GameState& s, const Permanent& p) {
  auto colors = effective_colors(p);
  if (colors.empty()) return true;
  auto types = effective_types(p);
  for (const auto& q : s.battlefield) {
    if (q.phased_out || !(q.bits & sb::SliversColorless)) continue;
    if (types.count(effective_tag(q, "Sliver"))) return true;
  }
  return false;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  for (char c : text + ",") {
    if (c == ',') {
      if (!item.empty()) out.push_back(item);
      item.clear();
    } else {
      item += c;
    }
  }
  return out;
}

std::string sym_type(const GameState& s, int sym) {
  auto it = s.meta.find("sym_types");
  if (it == s.meta.end()) return "Symbol" + std::to_string(sym);
  auto list = split_list(it->second);
  if (sym < 0 || size_t(sym) >= list.size())
    throw std::logic_error("symbol index outside the compiled alphabet");
  return list[size_t(sym)];
}

int param_int(const StackEntry& e, const std::string& key) {
  auto it = e.params.find(key);
  if (it == e.params.end())
    throw std::logic_error("missing script parameter: " + key);
  return std::stoi(it->second);
}

Permanent* require_target(GameState& s, const StackEntry& e) {
  if (e.targets.empty() || e.targets[0].kind != TargetRef::Kind::Permanent)
    throw std::logic_error(e.script + " without a permanent target");
  Permanent* p = s.find(e.targets[0].id);
  if (!p) throw std::logic_error(e.script + " target vanished unexpectedly");
  return p;
}

// a graveyard recycler may already have moved the card to a library bottom,
// so the delayed return has to look there too
void remove_from_graveyard(GameState& s, const std::string& card) {
  for (auto& pl : s.players) {
    auto it = std::find(pl.graveyard.rbegin(), pl.graveyard.rend(), card);
    if (it != pl.graveyard.rend()) {
      pl.graveyard.erase(std::next(it).base());
      return;
    }
  }
  for (auto& pl : s.players) {
    auto it = std::find(pl.library.rbegin(), pl.library.rend(), card);
    if (it != pl.library.rend()) {
      pl.library.erase(std::next(it).base());
      return;
    }
  }
}

// pushes a real spell for a card; permanents are marked to stay out of the
// graveyard when they resolve onto the battlefield
void push_spell(GameState& s, const std::string& card, PlayerId controller,
                const std::string& script, std::vector<TargetRef> targets,
                Log* log) {
  const CardDefinition& d = require_card(card);
  StackEntry e;
  e.id = s.fresh_id();
  e.script = script;
  e.source_card = card;
  e.controller = controller;
  e.targets = std::move(targets);
  if (d.types.count("enchantment") || d.types.count("artifact") ||
      d.types.count("creature") || d.types.count("land"))
    e.params["stays"] = "1";
  note(log, s, "cast", card + " (" + script + ")");
  s.stack.push_back(std::move(e));
  s.passes = 0;
  s.priority = s.active_player;
}

ObjId unique_creature(const GameState& s, const std::string& what,
                      bool (*pred)(const GameState&, const Permanent&)) {
  ObjId found = 0;
  int count = 0;
  for (const auto& p : s.battlefield) {
    if (p.phased_out || !p.is_creature) continue;
    if (pred(s, p)) {
      found = p.id;
      ++count;
    }
  }
  if (count != 1)
    throw ForcednessError("forced targeting of " + what + " found " +
                          std::to_string(count) + " candidates");
  return found;
}

void bank_switch(GameState& s, int next_bank) {
  for (auto& p : s.battlefield)
    if (p.watch_bank >= 0) p.phased_out = (p.watch_bank != next_bank);
}

Permanent* head_marker(GameState& s) {
  for (auto& p : s.battlefield)
    if (p.is_head) return &p;
  throw std::logic_error("no head marker on the battlefield");
}

Permanent* tape_cell_at(GameState& s, int64_t cell) {
  for (auto& p : s.battlefield)
    if (p.tape_sym >= 0 && p.counter(CounterKind::PlusOne) == cell + 1)
      return &p;
  return nullptr;
}

}  // namespace

// ---------------------------------------------------------------------------
// death triggers

std::vector<TokenSpec> death_trigger_tokens(const GameState& s,
                                            const Permanent& dead) {
  std::vector<TokenSpec> out;
  auto dead_types = effective_types(dead);
  auto consider = [&](const Permanent& w) {
    if (w.phased_out) return;
    const std::string* watch = w.param("watch_type");
    if (!watch) return;
    if (!dead_types.count(effective_tag(w, *watch))) return;
    TokenSpec t;
    const std::string* tt = w.param("token_type");
    const std::string* tc = w.param("token_color");
    t.card = "Zombie token";
    t.creature_types = {effective_tag(w, tt ? *tt : "Zombie")};
    t.colors = {effective_tag(w, tc ? *tc : "black")};
    t.power = 2;
    t.toughness = 2;
    t.controller = w.controller;
    out.push_back(std::move(t));
  };
  // a watcher triggers on its own death too ("or another Cleric")
  consider(dead);
  for (const auto& p : s.battlefield) consider(p);
  return out;
}

std::vector<TriggerInstance> death_triggers(const GameState& s,
                                            const DeathEvent& ev) {
  std::vector<TriggerInstance> out;
  const Permanent& dead = ev.perm;

  // machine watcher for a tape-cell death (at most one bank is phased in)
  if (dead.tape_sym >= 0) {
    for (const auto& p : s.battlefield) {
      if (p.phased_out || p.watch_bank < 0) continue;
      if (p.watch_sym != dead.tape_sym) continue;
      TriggerInstance t;
      t.controller = p.controller;
      t.gadget_priority = p.id;
      t.script = "machine_write";
      t.source_card = p.card;
      t.params["halt"] = p.halt_watcher ? "1" : "0";
      t.params["write_sym"] = std::to_string(p.write_sym);
      t.params["dir"] = std::to_string(int(p.move_dir));
      t.params["next_bank"] = std::to_string(p.next_bank);
      t.params["cell_count"] =
          std::to_string(dead.counter(CounterKind::PlusOne));
      t.params["dead_sym"] = std::to_string(dead.tape_sym);
      out.push_back(std::move(t));
      break;
    }
  }

  // Rotlung-style creature-type watchers (token creation)
  for (auto& spec : death_trigger_tokens(s, dead)) {
    TriggerInstance t;
    t.controller = spec.controller;
    t.script = "create_watch_token";
    t.source_card = "death watcher";
    t.params["token_type"] = *spec.creature_types.begin();
    t.params["token_color"] = *spec.colors.begin();
    out.push_back(std::move(t));
  }

  // delayed battlefield return for nontoken creatures an opponent controls
  if (!dead.is_token && dead.is_creature) {
    for (const auto& p : s.battlefield) {
      if (p.phased_out || p.card != "Grave Betrayal") continue;
      if (p.controller == dead.controller) continue;
      TriggerInstance t;
      t.controller = p.controller;
      t.gadget_priority = p.id;
      t.script = "grave_betrayal_mark";
      t.source_card = p.card;
      t.params["card"] = dead.card;
      out.push_back(std::move(t));
    }
  }

  // leave-the-battlefield: enchanted permanent's controller sacrifices it
  if ((dead.bits & sb::LeaveSacEnchanted) && dead.attached_to &&
      s.find(*dead.attached_to)) {
    const Permanent* host = s.find(*dead.attached_to);
    TriggerInstance t;
    t.controller = host->controller;
    t.gadget_priority = dead.id;
    t.script = "sacrifice_permanent";
    t.source_card = dead.card;
    t.targets.push_back({TargetRef::Kind::Permanent, host->id});
    out.push_back(std::move(t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// effect scripts

void run_effect_script(GameState& s, const StackEntry& e, Log* log) {
  const std::string& k = e.script;

  if (k == "noop") return;

  if (k == "cast_from_suspend") {
    int exile_id = param_int(e, "exile_id");
    auto it = std::find_if(s.exile.begin(), s.exile.end(),
                           [exile_id](const ExiledCard& x) {
                             return x.id == exile_id;
                           });
    if (it == s.exile.end())
      throw std::logic_error("suspended card missing from exile");
    std::string card = it->card;
    PlayerId owner = it->owner;
    s.exile.erase(it);
    if (card == "Human Frailty") {
      ObjId t = unique_creature(s, "a Human creature",
                                [](const GameState&, const Permanent& p) {
                                  return effective_types(p).count("Human") > 0;
                                });
      push_spell(s, card, owner, "destroy_target",
                 {{TargetRef::Kind::Permanent, t}}, log);
    } else if (card == "Infernal Reckoning") {
      ObjId t = unique_creature(s, "a colorless creature", is_colorless);
      push_spell(s, card, owner, "exile_target_gain_life",
                 {{TargetRef::Kind::Permanent, t}}, log);
    } else {
      push_spell(s, card, owner, "enter_battlefield", {}, log);
    }
    return;
  }

  if (k == "enter_battlefield") {
    const CardDefinition& d = require_card(e.source_card);
    Permanent p;
    p.id = s.fresh_id();
    p.card = d.name;
    p.controller = e.controller;
    p.is_creature = d.types.count("creature") > 0;
    p.is_land = d.types.count("land") > 0;
    p.base_power = d.power;
    p.base_toughness = d.toughness;
    p.creature_types = d.creature_types;
    p.colors = d.colors;
    note(log, s, "note", d.name + " enters the battlefield");
    s.battlefield.push_back(std::move(p));
    return;
  }

  if (k == "destroy_target") {
    destroy_permanent(s, require_target(s, e)->id, log);
    return;
  }

  if (k == "sacrifice_permanent") {
    destroy_permanent(s, require_target(s, e)->id, log);
    return;
  }

  if (k == "vanishing_sacrifice") {
    destroy_permanent(s, require_target(s, e)->id, log);
    return;
  }

  if (k == "exile_target_gain_life") {
    Permanent* t = require_target(s, e);
    int64_t power = effective_stats(s, *t).first;
    ObjId id = t->id;
    Permanent gone = *t;
    s.battlefield.erase(
        std::find_if(s.battlefield.begin(), s.battlefield.end(),
                     [id](const Permanent& q) { return q.id == id; }));
    s.players[e.controller].life += std::max<int64_t>(power, 0);
    note(log, s, "note",
         gone.card + " exiled; " + std::to_string(std::max<int64_t>(power, 0)) +
             " life gained");
    if (!gone.is_token) {
      ExiledCard x;
      x.id = s.fresh_id();
      x.card = gone.card;
      x.owner = gone.controller;
      s.exile.push_back(std::move(x));
    }
    // auras on the exiled creature fall off through state-based actions
    auto deaths = apply_state_based_actions_inplace(s, log);
    process_deaths(s, deaths, log);
    return;
  }

  if (k == "grave_betrayal_mark") {
    GameState::PendingReturn r;
    r.card = e.params.at("card");
    r.to_controller = e.controller;
    note(log, s, "note", r.card + " will return at the next end step");
    s.pending_returns.push_back(std::move(r));
    return;
  }

  if (k == "delayed_return") {
    const CardDefinition& d = require_card(e.source_card);
    remove_from_graveyard(s, d.name);
    Permanent p;
    p.id = s.fresh_id();
    p.card = d.name;
    p.controller = e.controller;
    p.is_creature = d.types.count("creature") > 0;
    p.base_power = d.power;
    p.base_toughness = d.toughness;
    p.creature_types = d.creature_types;
    p.creature_types.insert("Zombie");  // returns as a black Zombie as well
    p.colors = d.colors;
    p.colors.insert("black");
    p.add_counter(CounterKind::PlusOne, 1);
    ObjId id = p.id;
    note(log, s, "note",
         d.name + " returns to the battlefield under player " +
             std::to_string(e.controller));
    s.battlefield.push_back(std::move(p));
    if (d.name == "Tetzimoc, Primal Death") {
      std::vector<TriggerInstance> batch(1);
      batch[0].controller = e.controller;
      batch[0].script = "prey_sweep";
      batch[0].source_card = d.name;
      batch[0].targets.push_back({TargetRef::Kind::Permanent, id});
      push_triggers_inplace(s, std::move(batch), log);
    }
    return;
  }

  if (k == "prey_sweep") {
    std::vector<ObjId> doomed;
    for (const auto& p : s.battlefield)
      if (p.is_creature && !p.phased_out && p.controller != e.controller &&
          p.counter(CounterKind::Prey) > 0)
        doomed.push_back(p.id);
    note(log, s, "note",
         "prey sweep destroys " + std::to_string(doomed.size()) +
             " creatures");
    for (ObjId id : doomed)
      if (s.find(id)) destroy_permanent(s, id, log);
    return;
  }

  if (k == "forced_cast_from_hand") {
    auto& hand = s.players[e.controller].hand;
    if (hand.size() != 1)
      throw ForcednessError(
          "forced random cast requires a one-card hand, found " +
          std::to_string(hand.size()));
    std::string card = hand.front();
    hand.clear();
    if (card == "Infest") {
      push_spell(s, card, e.controller, "machine_step", {}, log);
    } else if (card == "Coalition Victory") {
      push_spell(s, card, e.controller, "coalition_victory", {}, log);
    } else {
      throw std::logic_error("no forced-cast script for " + card);
    }
    return;
  }

  if (k == "machine_step") {
    // the computation macro: the cell under the head dies, waking exactly
    // one watcher in the phased-in bank
    Permanent* head = head_marker(s);
    int64_t h = head->counter(CounterKind::PlusOne);
    Permanent* cell = tape_cell_at(s, h);
    ObjId victim;
    if (cell) {
      victim = cell->id;
    } else {
      TokenSpec blank;
      blank.card = "tape cell";
      blank.controller = e.controller;
      blank.power = 2;
      blank.toughness = 2;
      blank.creature_types = {sym_type(s, 0)};
      blank.colors = {"black"};
      blank.tape_sym = 0;
      blank.counters[int(CounterKind::PlusOne)] = h + 1;
      victim = create_token(s, blank, log);
    }
    destroy_permanent(s, victim, log);
    return;
  }

  if (k == "machine_write") {
    if (param_int(e, "halt") == 1) {
      // restore the probed cell so the board still encodes the halting
      // configuration, then produce the five-color win enabler
      int dead_sym = param_int(e, "dead_sym");
      int64_t cc = param_int(e, "cell_count");
      if (dead_sym != 0) {
        TokenSpec back;
        back.card = "tape cell";
        back.controller = e.controller;
        back.power = 2;
        back.toughness = 2;
        back.creature_types = {sym_type(s, dead_sym)};
        back.colors = {"black"};
        back.tape_sym = int16_t(dead_sym);
        back.counters[int(CounterKind::PlusOne)] = cc;
        create_token(s, back, log);
      }
      TokenSpec win;
      win.card = "victory herald token";
      win.controller = e.controller;
      win.power = 2;
      win.toughness = 2;
      win.creature_types = {"Avatar"};
      win.colors = {"white", "blue", "black", "red", "green"};
      create_token(s, win, log);
      note(log, s, "note", "machine halted");
      return;
    }
    int write_sym = param_int(e, "write_sym");
    int64_t cc = param_int(e, "cell_count");
    if (write_sym != 0) {
      TokenSpec t;
      t.card = "tape cell";
      t.controller = e.controller;
      t.power = 2;
      t.toughness = 2;
      t.creature_types = {sym_type(s, write_sym)};
      t.colors = {"black"};
      t.tape_sym = int16_t(write_sym);
      t.counters[int(CounterKind::PlusOne)] = cc;
      create_token(s, t, log);
    }
    Permanent* head = head_marker(s);
    head->add_counter(CounterKind::PlusOne, param_int(e, "dir"));
    bank_switch(s, param_int(e, "next_bank"));
    s.machine_steps += 1;
    return;
  }

  if (k == "coalition_victory") {
    bool lands_all = has_static(s, sb::LandsAllBasics);
    bool has_land = false, five_color = false;
    for (const auto& p : s.battlefield) {
      if (p.phased_out || p.controller != e.controller) continue;
      if (p.is_land) has_land = true;
      if (p.is_creature && effective_colors(p).size() == 5) five_color = true;
    }
    if (lands_all && has_land && five_color) {
      s.won_by = e.controller;
      note(log, s, "note",
           "coalition victory: player " + std::to_string(e.controller) +
               " wins");
    } else {
      note(log, s, "note", "coalition victory: condition not met");
    }
    return;
  }

  if (k == "copy_equipped") {
    const Permanent* src = require_target(s, e);
    TokenSpec t;
    t.card = src->card;
    t.controller = e.controller;
    t.power = src->base_power;
    t.toughness = src->base_toughness;
    t.bits = src->bits;
    auto it = e.params.find("copy_tape_sym");
    if (it != e.params.end()) {
      t.tape_sym = int16_t(std::stoi(it->second));
      t.creature_types = {sym_type(s, t.tape_sym)};
    } else {
      t.creature_types = src->creature_types;
    }
    t.colors = src->colors;
    create_token(s, t, log);
    return;
  }

  if (k == "gain_counters") {
    Permanent* t = require_target(s, e);
    t->add_counter(CounterKind::PlusOne, param_int(e, "amount"));
    return;
  }

  if (k == "create_watch_token") {
    TokenSpec t;
    t.card = "Zombie token";
    t.controller = e.controller;
    t.power = 2;
    t.toughness = 2;
    t.creature_types = {e.params.at("token_type")};
    t.colors = {e.params.at("token_color")};
    create_token(s, t, log);
    return;
  }

  if (k == "cast_imprinted_copy") {
    auto it = e.params.find("imprint");
    if (it == e.params.end() || it->second != "Cruel Entertainment")
      throw std::logic_error("unsupported imprint");
    StackEntry copy;
    copy.id = s.fresh_id();
    copy.script = "cruel_entertainment";
    copy.source_card = it->second;
    copy.controller = e.controller;
    copy.is_copy = true;
    copy.targets.push_back({TargetRef::Kind::Player, 0});
    copy.targets.push_back({TargetRef::Kind::Player, 1});
    note(log, s, "cast", "copy of " + it->second);
    s.stack.push_back(std::move(copy));
    s.passes = 0;
    s.priority = s.active_player;
    return;
  }

  if (k == "cruel_entertainment") {
    cruel_entertainment_swap_inplace(s);
    note(log, s, "note", "turn control of both next turns swapped");
    return;
  }

  throw std::logic_error("unknown effect script: " + k);
}

// ---------------------------------------------------------------------------
// module operations

GameState clockspinning_adjust(const GameState& s, TargetRef target,
                               CounterKind kind, bool add) {
  GameState out = s;
  if (Permanent* p = out.find(target.id)) {
    if (p->counter(kind) == 0)
      throw std::invalid_argument("target has no counter of that kind");
    p->add_counter(kind, add ? 1 : -1);
    return out;
  }
  for (auto& x : out.exile) {
    if (x.id != target.id) continue;
    if (kind != CounterKind::Time || x.time_counters == 0)
      throw std::invalid_argument("target has no counter of that kind");
    x.time_counters += add ? 1 : -1;
    return out;
  }
  throw std::invalid_argument("no such counter target");
}

void cruel_entertainment_swap_inplace(GameState& s) {
  s.pending_turn_controller[0] = 1;
  s.pending_turn_controller[1] = 0;
}

GameState cruel_entertainment_swap(const GameState& s) {
  GameState out = s;
  cruel_entertainment_swap_inplace(out);
  return out;
}

std::string card_to_json(const CardDefinition& d) {
  nlohmann::ordered_json j;
  j["name"] = d.name;
  j["table_name"] = d.table_name.empty() ? d.name : d.table_name;
  j["types"] = std::vector<std::string>(d.types.begin(), d.types.end());
  j["power"] = d.power ? nlohmann::ordered_json(*d.power)
                       : nlohmann::ordered_json(nullptr);
  j["toughness"] = d.toughness ? nlohmann::ordered_json(*d.toughness)
                               : nlohmann::ordered_json(nullptr);
  j["creature_types"] = std::vector<std::string>(d.creature_types.begin(),
                                                 d.creature_types.end());
  j["colors"] = std::vector<std::string>(d.colors.begin(), d.colors.end());
  j["abilities"] = d.abilities;
  j["rules_text"] = d.rules_text;
  j["legacy_legal"] = d.legacy_legal;
  j["supplemental"] = d.supplemental;
  return j.dump(2) + "\n";
}

std::string card_file_name(const CardDefinition& d) {
  std::string out;
  for (char c : d.name) {
    if (std::isalnum(static_cast<unsigned char>(c)))
      out += char(std::tolower(static_cast<unsigned char>(c)));
    else if (!out.empty() && out.back() != '-')
      out += '-';
  }
  while (!out.empty() && out.back() == '-') out.pop_back();
  return out + ".json";
}

GameState cleanup_chain_effects(const GameState& s) {
  GameState out = s;
  int guard = 0;
  while (!out.stack.empty() && !out.game_over()) {
    if (++guard > 100000)
      throw std::logic_error("cleanup chain failed to terminate");
    auto acts = legal_actions(out, current_decider(out));
    if (acts.size() != 1)
      throw ForcednessError("unforced branch inside the cleanup chain");
    apply_action_inplace(out, acts[0], nullptr);
  }
  return out;
}

}  // namespace mtg::cards
