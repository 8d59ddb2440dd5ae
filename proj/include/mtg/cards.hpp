#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtg/engine.hpp"

// Scripted behavior for the 60-card deck plus the handful of supplemental
// cards quoted in prose. Card definitions are static data; all effect
// scripts are pure procedures invoked by the engine's resolver.
namespace mtg::cards {

struct CardDefinition {
  std::string name;        // normalized name (definition key)
  std::string table_name;  // raw deck-list spelling when it differs
  std::set<std::string> types;  // creature, artifact, enchantment, instant,
                                // sorcery, land, aura, equipment
  std::optional<int64_t> power, toughness;
  std::set<std::string> creature_types;
  std::set<std::string> colors;
  std::vector<std::string> abilities;  // script identifiers, for audit
  std::string rules_text;              // quoted text used for edit rendering
  bool legacy_legal = true;
  bool supplemental = false;  // quoted in prose but not in the deck list
};

struct DeckEntry {
  std::string name;  // normalized
  int count = 1;
};

struct DeckList {
  std::vector<DeckEntry> entries;
  int total() const;
};

// The deck list verbatim (normalized names, raw spellings preserved in the
// definitions). Total is exactly 60 with three copies of Lotus Petal.
DeckList instantiate_deck();

// Lookup by normalized name, raw deck spelling, or prose alias.
const CardDefinition* find_card(const std::string& name);
std::string normalize_name(const std::string& name);
// raw/alias spelling -> normalized name, for the audit documentation
const std::map<std::string, std::string>& spelling_normalizations();
const std::vector<CardDefinition>& all_cards();

// Data-file rendering: one JSON document per card, and the file name it is
// stored under, so the committed card data stays auditable against the code.
std::string card_to_json(const CardDefinition& d);
std::string card_file_name(const CardDefinition& d);

// Death watcher query: token specs produced by Rotlung-style watchers for
// this death (edited watch type and edited token spec; phased-out watchers
// produce nothing).
std::vector<engine::TokenSpec> death_trigger_tokens(
    const engine::GameState& s, const engine::Permanent& dead);

// Counter adjustment (Clockspinning): one counter of the chosen kind added
// or removed from a battlefield permanent or a suspended exile card.
engine::GameState clockspinning_adjust(const engine::GameState& s,
                                       engine::TargetRef target,
                                       engine::CounterKind kind, bool add);

// Mutual turn-control swap: each player's next turn is decided by the other.
engine::GameState cruel_entertainment_swap(const engine::GameState& s);
void cruel_entertainment_swap_inplace(engine::GameState& s);

// Resolves the pending forced chain: takes the unique legal action while
// anything remains on the stack. Throws if an unforced branch appears.
engine::GameState cleanup_chain_effects(const engine::GameState& s);

// Thrown when a supposedly forced choice is not uniquely determined.
struct ForcednessError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mtg::cards
