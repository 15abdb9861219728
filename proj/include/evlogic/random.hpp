#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "evlogic/formula.hpp"
#include "evlogic/proof.hpp"

namespace evlogic {

using Rng = std::mt19937_64;

/// Independent stream for item `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

inline const std::vector<std::string>& default_atom_pool() {
  static const std::vector<std::string> pool = {"p", "q", "r", "s"};
  return pool;
}

/// Depth-bounded random formula: 40% implication, 20% negation,
/// 10% [.], 10% [], 20% atom; atoms are forced at depth 0.
Formula random_formula(Rng& rng, std::size_t depth, std::span<const std::string> atom_pool);

struct TheoremOptions {
  std::size_t formula_depth = 2;   // depth of fresh random subformulas
  std::size_t max_modal_depth = 3;
  std::size_t max_size = 48;       // node count bound on every step
  std::vector<std::string> atom_pool = default_atom_pool();
  /// Schema instantiation used for axiom steps; empty means instantiate().
  /// Tests replace it to check that unsound axioms are caught downstream.
  std::function<Formula(AxiomSchema, const Formula&, const Formula&)> axiom_instance;
};

struct GeneratedTheorem {
  Derivation derivation;
  Formula conclusion;
};

/// Builds an accepted, hypothesis-free derivation of at most `max_steps`
/// steps by chaining schema instances, tautology instances, modus ponens
/// and attainable necessitation. Deterministic per seed.
/// Throws CapacityError if the retry budget is exhausted.
GeneratedTheorem random_theorem(std::uint64_t seed, std::size_t max_steps,
                                const TheoremOptions& options = {});

}  // namespace evlogic
