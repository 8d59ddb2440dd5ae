#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

// Rules core: turn structure, priority, stack, triggers, state-based
// actions, combat, counters, phasing, suspend/vanishing, tokens, and
// text edits. Pure value-semantics wrappers are provided around in-place
// workers so long runs avoid per-action state copies. Hot-path data
// (counters, static abilities, watcher wiring) lives in plain fields;
// the params map is reserved for cold, cosmetic data.
namespace mtg::engine {

using PlayerId = int;  // 0 = first player (Alice), 1 = second player (Bob)
using ObjId = int;

enum class Step {
  Untap,
  Upkeep,
  Draw,
  Main1,
  BeginCombat,
  DeclareAttackers,
  DeclareBlockers,
  CombatDamage,
  EndCombat,
  Main2,
  End,
};

const char* step_name(Step s);

enum class CounterKind { PlusOne = 0, MinusOne, Prey, Time, Vanishing };
inline constexpr int kCounterKinds = 5;

// static abilities, keywords, and trigger hooks as bit flags
namespace sb {
inline constexpr uint32_t GlobalPtMinus1 = 1u << 0;    // all creatures -1/-1
inline constexpr uint32_t NoDraw = 1u << 1;            // players can't draw
inline constexpr uint32_t NoSearch = 1u << 2;          // players can't search
inline constexpr uint32_t FlyingOnlyAttack = 1u << 3;  // Moat-style filter
inline constexpr uint32_t AttackIfAble = 1u << 4;      // your creatures must
inline constexpr uint32_t RecycleGraveyard = 1u << 5;  // grave -> library
inline constexpr uint32_t SliversColorless = 1u << 6;
inline constexpr uint32_t LandsAllBasics = 1u << 7;
inline constexpr uint32_t Flying = 1u << 8;
inline constexpr uint32_t Lifelink = 1u << 9;
inline constexpr uint32_t Infect = 1u << 10;
inline constexpr uint32_t OnLifegainCounters = 1u << 11;  // gain -> +1/+1s
inline constexpr uint32_t UpkeepForceCast = 1u << 12;     // cast from hand
inline constexpr uint32_t UpkeepImprintCast = 1u << 13;   // cast imprint copy
inline constexpr uint32_t CombatCopyEquipped = 1u << 14;  // Helm-style copy
inline constexpr uint32_t LeaveSacEnchanted = 1u << 15;
inline constexpr uint32_t GrantsPump = 1u << 16;  // integer pump on bearer
inline constexpr uint32_t Unblockable = 1u << 17;
}  // namespace sb

struct TextEdit {
  enum class Kind {
    ReplaceCreatureType,
    ReplaceColorWord,
    SetColors,
    AddCreatureType,
  };
  Kind kind;
  std::string from_tag;
  std::string to_tag;  // for SetColors: comma-joined color list
};

struct Permanent {
  ObjId id = 0;
  std::string card;  // definition key (normalized name)
  PlayerId controller = 0;
  bool is_creature = false, is_land = false, is_aura = false,
       is_equipment = false;
  std::optional<int64_t> base_power, base_toughness;
  std::array<int64_t, kCounterKinds> counters{};
  std::set<std::string> creature_types;  // pre-edit
  std::set<std::string> colors;          // pre-edit
  bool is_token = false;
  bool phased_out = false;
  bool has_phasing = false;  // toggles at controller's untap
  uint32_t bits = 0;         // sb:: flags
  std::optional<ObjId> attached_to;
  std::vector<TextEdit> text_edits;
  // machine wiring (compile-time): watcher transition, tape symbol, head
  int16_t watch_bank = -1, watch_sym = -1, write_sym = -1, next_bank = -1;
  int8_t move_dir = 0;  // -1 left, +1 right
  bool halt_watcher = false;
  int16_t tape_sym = -1;  // >= 0 marks a tape cell token
  bool is_head = false;   // head-position marker
  std::map<std::string, std::string> params;  // cold/cosmetic only
  int64_t eot_power = 0, eot_toughness = 0;   // until-end-of-turn deltas
  int64_t gadget_priority = 0;  // canonical same-controller trigger order

  int64_t counter(CounterKind k) const {
    return counters[static_cast<int>(k)];
  }
  void add_counter(CounterKind k, int64_t delta);
  const std::string* param(const std::string& key) const {
    auto it = params.find(key);
    return it == params.end() ? nullptr : &it->second;
  }
};

// Effective views with text edits applied.
std::set<std::string> effective_types(const Permanent& p);
std::set<std::string> effective_colors(const Permanent& p);
std::string effective_tag(const Permanent& p, const std::string& raw);
std::string render_text(const Permanent& p, const std::string& raw_text);

struct PlayerState {
  int64_t life = 20;
  int64_t poison = 0;
  std::vector<std::string> hand, library, graveyard;  // card keys, ordered
  bool lost_flag = false;
};

struct TargetRef {
  enum class Kind { Permanent, Player } kind = Kind::Permanent;
  int id = 0;
  bool operator==(const TargetRef&) const = default;
};

struct StackEntry {
  ObjId id = 0;
  std::string script;  // effect dispatch key
  std::string source_card;
  PlayerId controller = 0;
  std::vector<TargetRef> targets;
  std::map<std::string, std::string> params;
  bool is_copy = false;  // spell copies never touch the graveyard
  bool from_triggered = false;
};

struct ExiledCard {
  ObjId id = 0;
  std::string card;
  PlayerId owner = 0;
  int64_t time_counters = 0;
  bool suspended = false;
  PlayerId ticks_on = 0;  // whose upkeep removes a counter
};

struct TriggerInstance {
  PlayerId controller = 0;
  int64_t gadget_priority = 0;
  std::string script;
  std::string source_card;
  std::map<std::string, std::string> params;
  std::vector<TargetRef> targets;
};

struct DeathEvent {
  Permanent perm;  // snapshot at death
};

struct Action {
  enum class Kind {
    Cast,
    ActivateAbility,
    ChooseInteger,
    ChooseTarget,
    PassPriority,
    DeclareAttackers,
    DeclareBlockers,
    OrderTriggers,
  };
  Kind kind = Kind::PassPriority;
  std::vector<ObjId> objects;
  std::string payload_bits;  // natural number in binary notation

  static Action pass() { return {}; }
  static Action choose_integer(uint64_t k);
  uint64_t integer() const;  // decodes payload_bits
};

struct TraceEvent {
  int64_t turn = 0;
  PlayerId active = 0;
  PlayerId decider = 0;
  std::string kind;  // action | trigger | resolve | sba | step | note | ...
  std::string detail;
  uint64_t digest = 0;  // deterministic state fingerprint
};

struct Log {
  std::vector<TraceEvent> events;
};

struct GameState {
  std::array<PlayerState, 2> players;
  std::vector<Permanent> battlefield;  // ordered
  std::vector<StackEntry> stack;       // back() is the top
  std::vector<ExiledCard> exile;
  int64_t turn_number = 0;  // increments every turn, both players
  PlayerId active_player = 0;
  PlayerId turn_controller = 0;
  Step phase_step = Step::Untap;
  PlayerId priority = 0;
  int passes = 0;
  std::array<std::optional<PlayerId>, 2> pending_turn_controller;
  std::vector<ObjId> attackers;
  bool pump_pending = false;  // write-gadget integer choice is open
  bool damage_done = false;
  // nontoken creatures awaiting a battlefield return at the next end step
  struct PendingReturn {
    std::string card;
    PlayerId to_controller;
    std::vector<TextEdit> edits;
  };
  std::vector<PendingReturn> pending_returns;
  std::optional<PlayerId> won_by;
  int64_t machine_steps = 0;  // watcher transitions executed so far
  std::map<std::string, std::string> meta;  // compiler-stamped metadata
  ObjId next_id = 1;

  Permanent* find(ObjId id);
  const Permanent* find(ObjId id) const;
  bool game_over() const;
  ObjId fresh_id() { return next_id++; }
};

// --------------------------------------------------------------------------
// static-ability queries (battlefield scans; phased-out objects ignored)

uint32_t active_bits(const GameState& s);  // OR of all phased-in bits
bool has_static(const GameState& s, uint32_t mask);
int64_t global_pt_delta(const GameState& s);  // e.g. the -1/-1 field
bool players_cant_draw(const GameState& s);
bool players_cant_search(const GameState& s);
bool attack_filter_flying_only(const GameState& s);
bool must_attack(const GameState& s, PlayerId controller);
bool needle_blocks(const GameState& s, const std::string& card_name);

// --------------------------------------------------------------------------
// core operations

std::vector<DeathEvent> apply_state_based_actions_inplace(GameState& s,
                                                          Log* log = nullptr);
std::pair<GameState, std::vector<DeathEvent>> apply_state_based_actions(
    const GameState& s);

std::pair<int64_t, int64_t> effective_stats(const GameState& s,
                                            const Permanent& p);

void push_triggers_inplace(GameState& s, std::vector<TriggerInstance> batch,
                           Log* log = nullptr);
GameState push_triggers(const GameState& s, std::vector<TriggerInstance> batch);

void advance_step_inplace(GameState& s, Log* log = nullptr);
GameState advance_step(const GameState& s);

PlayerId current_decider(const GameState& s);
std::vector<Action> legal_actions(const GameState& s, PlayerId decider);

void resolve_top_inplace(GameState& s, Log* log = nullptr);
GameState resolve_top(const GameState& s);

void resolve_combat_inplace(GameState& s, uint64_t pump_count,
                            Log* log = nullptr);
GameState resolve_combat(const GameState& s, uint64_t pump_count);

Permanent apply_text_edit(const Permanent& p, const TextEdit& e);

void apply_action_inplace(GameState& s, const Action& a, Log* log = nullptr);
GameState apply_action(const GameState& s, const Action& a);

// battlefield mutation helpers shared with the card scripts
struct TokenSpec {
  std::string card;  // definition key, may be synthetic
  PlayerId controller = 0;
  std::optional<int64_t> power, toughness;
  std::set<std::string> creature_types;
  std::set<std::string> colors;
  std::array<int64_t, kCounterKinds> counters{};
  uint32_t bits = 0;
  int16_t tape_sym = -1;
  std::map<std::string, std::string> params;
  bool is_creature = true;
  bool is_land = false;
};

ObjId create_token(GameState& s, const TokenSpec& spec, Log* log = nullptr);
// destroys a permanent (and its dangling auras via SBA), firing death triggers
void destroy_permanent(GameState& s, ObjId id, Log* log = nullptr);
// moves a nontoken card to its owner's graveyard honoring recycle effects
void card_to_graveyard(GameState& s, const std::string& card, PlayerId owner,
                       Log* log = nullptr);
// processes a batch of deaths: pushes the resulting triggers (APNAP)
void process_deaths(GameState& s, const std::vector<DeathEvent>& deaths,
                    Log* log = nullptr);

void note(Log* log, const GameState& s, const std::string& kind,
          const std::string& detail);

}  // namespace mtg::engine

// implemented by the cards module (effect scripts and trigger sources)
namespace mtg::cards {
void run_effect_script(engine::GameState& s, const engine::StackEntry& e,
                       engine::Log* log);
std::vector<engine::TriggerInstance> death_triggers(
    const engine::GameState& s, const engine::DeathEvent& dead);
}  // namespace mtg::cards
