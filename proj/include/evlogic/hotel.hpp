#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "evlogic/formula.hpp"

namespace evlogic {

// Grand Hotel models. A world assigns a state to every room n = 0, 1, ...;
// examining room n is one piece of evidence, and two worlds are
// indistinguishable by it iff room n has the same state in both.
//
// Variant I: rooms are occupied or vacant.
// Variant II: rooms may also be infested, and an infested room anywhere
// evicts every guest, so no world has both occupied and infested rooms.
//
// Only cofinite worlds are represented: a default state plus finitely many
// exceptions.

enum class RoomState : std::uint8_t { occupied, vacant, infested };
enum class HotelVariant { one, two };

std::string_view state_name(RoomState s);
std::optional<RoomState> state_from_name(std::string_view name);
std::span<const RoomState> variant_states(HotelVariant v);
std::string_view variant_name(HotelVariant v);  // "I" / "II"
std::optional<HotelVariant> variant_from_name(std::string_view name);

using RoomIndex = std::uint64_t;

struct HotelWorld {
  RoomState default_state = RoomState::vacant;
  std::map<RoomIndex, RoomState> exceptions;

  RoomState at(RoomIndex room) const {
    auto it = exceptions.find(room);
    return it == exceptions.end() ? default_state : it->second;
  }
  friend bool operator==(const HotelWorld&, const HotelWorld&) = default;
};

/// "default=<state>; <room>=<state>; ..." Throws ParseError.
HotelWorld parse_world_literal(std::string_view text);
std::string world_literal(const HotelWorld& w);

/// Empty when w is canonical and admissible for the variant; otherwise the
/// reason it is not.
std::optional<std::string> validate_world(HotelVariant v, const HotelWorld& w);

/// `exists_<state>` or `room_<index>_<state>`.
struct HotelAtom {
  enum class Kind { exists, room };
  Kind kind;
  RoomState state;
  RoomIndex room = 0;
};

/// Throws ModelError for spellings outside the two families or states
/// outside the variant.
HotelAtom parse_hotel_atom(std::string_view name, HotelVariant v);

/// Finite evidence set: every tracked room plus `fresh_count` further rooms
/// that are neither tracked nor exceptions of the world.
struct EvidenceWitness {
  std::set<RoomIndex> tracked;
  std::size_t fresh_count = 0;
  friend bool operator==(const EvidenceWitness&, const EvidenceWitness&) = default;
};

struct HotelVerdict {
  bool value = false;
  /// Present when the formula is [.]g and true: the evidence establishing it.
  std::optional<EvidenceWitness> witness;
  std::size_t cap = 0;
};

inline constexpr std::size_t hotel_max_modal_depth = 4;
inline constexpr std::size_t hotel_max_atoms = 6;

/// modal depth + number of distinct exists_* atoms + 2.
std::size_t default_cap(const Formula& f);

/// Decides a formula over one hotel family.
///
/// Truth only depends on the exact states of the rooms the formula names
/// and, for the remaining rooms, on the default state and how many rooms
/// hold each other state. Those counts are saturated at the cap. The states
/// of named rooms never change along an evaluation because every useful
/// evidence set contains them, so results are cached per assignment to the
/// named rooms. [] is the identity here: examining every room pins the world.
///
/// Caches are guarded internally; one evaluator may be shared by threads.
class HotelEvaluator {
 public:
  /// Throws CapacityError (depth/atom bounds) or ModelError (atom spelling).
  HotelEvaluator(HotelVariant v, Formula f, std::optional<std::size_t> cap = std::nullopt);
  ~HotelEvaluator();
  HotelEvaluator(HotelEvaluator&&) noexcept;
  HotelEvaluator& operator=(HotelEvaluator&&) noexcept;

  HotelVariant variant() const;
  const Formula& formula() const;
  std::size_t cap() const;

  /// Throws ModelError for an invalid world.
  HotelVerdict eval(const HotelWorld& w) const;

  /// True iff the formula holds at every world that agrees with w on the
  /// evidence set described by `ev`. `ev.tracked` must contain every room
  /// the formula names.
  bool holds_on_class(const HotelWorld& w, const EvidenceWitness& ev) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

HotelVerdict hotel_eval(HotelVariant v, const HotelWorld& w, const Formula& f,
                        std::optional<std::size_t> cap = std::nullopt);

struct ReportRow {
  std::string world;
  std::string formula;
  bool verdict;
  bool expected;
  std::optional<EvidenceWitness> witness;
};

struct CounterexampleReport {
  std::string name;
  HotelVariant variant;
  HotelWorld world;
  Formula formula;
  bool verdict;
  std::vector<ReportRow> rows;

  bool reproduced() const;
};

std::vector<std::string> counterexample_names();

/// "negative-introspection" or "weak-negative-introspection".
/// Throws std::invalid_argument for other names.
CounterexampleReport counterexample_report(std::string_view which);

}  // namespace evlogic
