#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evlogic/formula.hpp"

namespace evlogic {

enum class AxiomSchema { truth, neg_intro, dist, mono, att_pos_intro, att_dist };

inline constexpr std::array<AxiomSchema, 6> all_schemas = {
    AxiomSchema::truth, AxiomSchema::neg_intro,     AxiomSchema::dist,
    AxiomSchema::mono,  AxiomSchema::att_pos_intro, AxiomSchema::att_dist};

/// Script spelling: "truth", "neg-intro", "dist", "mono", "att-pos-intro", "att-dist".
std::string_view schema_name(AxiomSchema s);
std::optional<AxiomSchema> schema_from_name(std::string_view name);

/// Metavariable name -> instance. Metavariables are "phi" and "psi".
using Substitution = std::map<std::string, Formula>;

/// The schema template; every atom in it is a metavariable.
const Formula& schema_template(AxiomSchema s);
Formula instantiate(AxiomSchema s, const Formula& phi, const Formula& psi);

std::optional<Substitution> match_schema(const Formula& candidate, AxiomSchema schema);

/// Generic template matching: atoms of `pattern` are metavariables.
std::optional<Substitution> match_pattern(const Formula& candidate, const Formula& pattern);
Formula instantiate_pattern(const Formula& pattern, const Substitution& sub);

/// Atoms and maximal modal subformulas, in first-occurrence order.
std::vector<Formula> opaque_letters(const Formula& f);

inline constexpr std::size_t max_tautology_letters = 20;

/// Propositional validity with modal subformulas treated as letters.
/// Throws CapacityError beyond max_tautology_letters letters.
bool is_tautology(const Formula& f);

struct Justification {
  enum class Kind { taut, axiom, modus_ponens, att_nec, hypothesis };
  Kind kind = Kind::taut;
  AxiomSchema schema = AxiomSchema::truth;
  // 0-based references: mp uses (first, second) = (antecedent, implication);
  // anec and hyp use first.
  std::size_t first = 0;
  std::size_t second = 0;

  static Justification taut() { return {Kind::taut}; }
  static Justification axiom(AxiomSchema s) { return {Kind::axiom, s}; }
  static Justification mp(std::size_t antecedent, std::size_t implication) {
    return {Kind::modus_ponens, AxiomSchema::truth, antecedent, implication};
  }
  static Justification anec(std::size_t premise) {
    return {Kind::att_nec, AxiomSchema::truth, premise};
  }
  static Justification hyp(std::size_t k) { return {Kind::hypothesis, AxiomSchema::truth, k}; }
};

struct ProofStep {
  Formula formula;
  Justification why;
};

struct Derivation {
  std::vector<Formula> hypotheses;
  std::vector<ProofStep> steps;
};

struct StepError {
  std::size_t step;  // 0-based
  std::string reason;
};

struct CheckReport {
  bool accepted = false;
  std::optional<StepError> first_error;
  std::optional<Formula> conclusion;
  bool conclusion_is_theorem = false;
  /// Purity of each checked step (prefix up to the first error).
  std::vector<bool> pure;
};

CheckReport check_derivation(const Derivation& d);

struct NamedDerivation {
  std::string name;
  std::string description;
  Derivation derivation;
};

/// Bundled derivations: positive-introspection, mixed-negative-introspection, att-truth, box-nec.
const std::vector<NamedDerivation>& corpus();

}  // namespace evlogic
