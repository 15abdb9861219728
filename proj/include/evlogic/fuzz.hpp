#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "evlogic/finite_model.hpp"
#include "evlogic/hotel.hpp"
#include "evlogic/random.hpp"

namespace evlogic {

struct FuzzConfig {
  std::uint64_t seed = 42;
  std::size_t num_theorems = 10000;
  std::size_t num_models = 300;
  std::size_t max_worlds = 6;     // <= 8
  std::size_t max_evidence = 4;   // <= 6
  std::size_t max_proof_steps = 12;
  std::size_t max_formula_depth = 2;
  std::size_t num_atoms = 4;      // atoms drawn from p, q, r, s
  std::size_t hotel_panel = 50;   // hotel worlds per variant; 0 disables
  std::size_t threads = 0;        // 0: hardware concurrency
  TheoremOptions theorem_options{};  // atom_pool and formula_depth are overwritten
};

/// Throws std::invalid_argument when a bound is out of range.
void validate_config(const FuzzConfig& cfg);

/// Uniform set partitions per evidence item; each atom holds at each world
/// with probability 1/2. Deterministic per seed.
ModelDocument random_model(std::uint64_t seed, const FuzzConfig& bounds);

HotelWorld random_hotel_world(Rng& rng, HotelVariant v, std::size_t max_exceptions = 3, RoomIndex rooms = 8);

/// Fixed, seed-independent panel of admissible worlds.
std::vector<HotelWorld> hotel_panel(HotelVariant v, std::size_t count);

/// Atom pool over hotel atoms of the variant, used when testing the hotel
/// evaluator directly.
const std::vector<std::string>& hotel_atom_pool(HotelVariant v);

/// Maps the kernel's atoms p, q, r, s to hotel atoms of the variant.
Formula to_hotel_atoms(const Formula& f, HotelVariant v);

struct FuzzViolation {
  std::size_t theorem_index;
  std::string theorem;
  std::string location;  // model index and world, or hotel variant and world
};

struct FuzzReport {
  std::size_t theorems_checked = 0;
  std::size_t skipped_theorems = 0;      // generator capacity errors
  std::size_t generator_rejections = 0;  // generated derivations the kernel rejects
  std::size_t models_checked = 0;
  std::size_t evaluations = 0;           // (theorem, world) pairs on finite models
  std::size_t violations = 0;
  std::optional<FuzzViolation> first_violation;
  std::size_t hotel_evaluations = 0;
  std::size_t hotel_skipped = 0;         // (theorem, variant) pairs over hotel capacity
  std::size_t hotel_violations = 0;
  std::optional<FuzzViolation> first_hotel_violation;
  std::chrono::milliseconds elapsed{0};

  std::size_t total_violations() const { return violations + hotel_violations; }
};

/// Every generated theorem is evaluated at every world of every model and at
/// every panel world of both hotel variants. Capacity problems are counted,
/// not fatal. Results do not depend on the thread count.
FuzzReport run_soundness_fuzz(const FuzzConfig& cfg);

}  // namespace evlogic
