#include <array>
#include <optional>

#include "evlogic/errors.hpp"
#include "evlogic/random.hpp"

namespace evlogic {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 over the pair
  std::uint64_t z = seed * 0x9e3779b97f4a7c15ULL + index + 0x632be59bd9b4e019ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

std::size_t pick(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

}  // namespace

Formula random_formula(Rng& rng, std::size_t depth, std::span<const std::string> atom_pool) {
  auto leaf = [&] { return Formula::atom(atom_pool[pick(rng, atom_pool.size())]); };
  if (depth == 0) return leaf();
  auto roll = pick(rng, 100);
  if (roll < 40) {
    Formula left = random_formula(rng, depth - 1, atom_pool);
    return Formula::implies(std::move(left), random_formula(rng, depth - 1, atom_pool));
  }
  if (roll < 60) return Formula::negation(random_formula(rng, depth - 1, atom_pool));
  if (roll < 70) return Formula::attain(random_formula(rng, depth - 1, atom_pool));
  if (roll < 80) return Formula::know(random_formula(rng, depth - 1, atom_pool));
  return leaf();
}

namespace {

// Propositional tautology templates over metavariables a, b, c.
const std::array<Formula, 9>& taut_templates() {
  static const std::array<Formula, 9> t = {
      parse("a -> (b -> a)"),
      parse("(a -> (b -> c)) -> ((a -> b) -> (a -> c))"),
      parse("(!a -> !b) -> (b -> a)"),
      parse("a -> a"),
      parse("!!a -> a"),
      parse("a -> !!a"),
      parse("(a -> b) -> ((b -> c) -> (a -> c))"),
      parse("a -> (!a -> b)"),
      parse("(a -> b) -> (!b -> !a)"),
  };
  return t;
}

class TheoremBuilder {
 public:
  TheoremBuilder(std::uint64_t seed, const TheoremOptions& opt) : rng_(seed), opt_(opt) {}

  GeneratedTheorem run(std::size_t max_steps) {
    if (max_steps == 0) throw std::invalid_argument("max_steps must be at least 1");
    constexpr std::size_t retry_budget = 256;
    std::size_t failures = 0;
    while (d_.steps.size() < max_steps) {
      std::size_t remaining = max_steps - d_.steps.size();
      if (!attempt(remaining) && ++failures > retry_budget)
        throw CapacityError("theorem generator exhausted its retry budget");
    }
    return {d_, d_.steps.back().formula};
  }

 private:
  bool acceptable(const Formula& f) const {
    return f.size() <= opt_.max_size && modal_depth(f) <= opt_.max_modal_depth;
  }

  Formula axiom_instance(AxiomSchema s, const Formula& phi, const Formula& psi) const {
    return opt_.axiom_instance ? opt_.axiom_instance(s, phi, psi) : instantiate(s, phi, psi);
  }

  Formula fresh() { return random_formula(rng_, opt_.formula_depth, opt_.atom_pool); }

  // Existing step formula or a fresh one, evenly.
  Formula operand() {
    if (!d_.steps.empty() && pick(rng_, 2) == 0) return d_.steps[pick(rng_, d_.steps.size())].formula;
    return fresh();
  }

  bool push(Formula f, Justification j) {
    if (!acceptable(f)) return false;
    d_.steps.push_back({std::move(f), j});
    return true;
  }

  bool push_taut(const Formula& f) {
    if (!acceptable(f) || opaque_letters(f).size() > max_tautology_letters) return false;
    d_.steps.push_back({f, Justification::taut()});
    return true;
  }

  bool attempt(std::size_t remaining) {
    std::size_t roll = pick(rng_, 100);
    if (d_.steps.empty()) roll = roll % 40;
    if (roll < 25) return axiom();
    if (roll < 40) return taut();
    if (roll < 55) return anec();
    if (roll < 90) return remaining >= 2 ? bridge() : axiom();
    return mp_existing();
  }

  bool axiom() {
    auto s = all_schemas[pick(rng_, all_schemas.size())];
    Formula phi = operand();
    return push(axiom_instance(s, phi, operand()), Justification::axiom(s));
  }

  bool taut() {
    const auto& t = taut_templates()[pick(rng_, taut_templates().size())];
    return push_taut(instantiate_pattern(t, {{"a", operand()}, {"b", operand()}, {"c", operand()}}));
  }

  bool anec() {
    std::size_t i = pick(rng_, d_.steps.size());
    return push(Formula::attain(d_.steps[i].formula), Justification::anec(i));
  }

  // Adds an axiom or tautology whose antecedent is an existing step, then
  // detaches its consequent with modus ponens.
  bool bridge() {
    std::size_t i = pick(rng_, d_.steps.size());
    const Formula a = d_.steps[i].formula;
    std::vector<std::pair<Formula, Justification>> options;
    auto ax = [&](AxiomSchema s, const Formula& phi, const Formula& psi) {
      options.emplace_back(axiom_instance(s, phi, psi), Justification::axiom(s));
    };
    auto tt = [&](std::size_t k, Substitution sub) {
      options.emplace_back(instantiate_pattern(taut_templates()[k], sub), Justification::taut());
    };
    Formula b = fresh();
    if (a.is(Op::know)) {
      ax(AxiomSchema::truth, a.child(), b);
      if (a.child().is(Op::implication)) ax(AxiomSchema::dist, a.child().left(), a.child().right());
    }
    if (a.is(Op::negation) && a.child().is(Op::know)) ax(AxiomSchema::neg_intro, a.child().child(), b);
    if (a.is(Op::attain)) {
      ax(AxiomSchema::mono, a.child(), b);
      ax(AxiomSchema::att_pos_intro, a.child(), b);
      if (a.child().is(Op::implication)) ax(AxiomSchema::att_dist, a.child().left(), a.child().right());
    }
    tt(0, {{"a", a}, {"b", b}});
    tt(5, {{"a", a}});
    tt(7, {{"a", a}, {"b", b}});
    if (a.is(Op::negation) && a.child().is(Op::negation)) tt(4, {{"a", a.child().child()}});
    if (a.is(Op::implication)) {
      tt(6, {{"a", a.left()}, {"b", a.right()}, {"c", operand()}});
      tt(8, {{"a", a.left()}, {"b", a.right()}});
      if (a.right().is(Op::implication))
        tt(1, {{"a", a.left()}, {"b", a.right().left()}, {"c", a.right().right()}});
    }
    auto& [imp, why] = options[pick(rng_, options.size())];
    if (!imp.is(Op::implication) || imp.left() != a || !acceptable(imp.right())) return false;
    if (why.kind == Justification::Kind::taut ? !push_taut(imp) : !push(imp, why)) return false;
    d_.steps.push_back({imp.right(), Justification::mp(i, d_.steps.size() - 1)});
    return true;
  }

  bool mp_existing() {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = 0; j < d_.steps.size(); ++j) {
      const Formula& imp = d_.steps[j].formula;
      if (!imp.is(Op::implication)) continue;
      for (std::size_t i = 0; i < d_.steps.size(); ++i)
        if (d_.steps[i].formula == imp.left()) pairs.emplace_back(i, j);
    }
    if (pairs.empty()) return false;
    auto [i, j] = pairs[pick(rng_, pairs.size())];
    return push(d_.steps[j].formula.right(), Justification::mp(i, j));
  }

  Rng rng_;
  const TheoremOptions& opt_;
  Derivation d_;
};

}  // namespace

GeneratedTheorem random_theorem(std::uint64_t seed, std::size_t max_steps,
                                const TheoremOptions& options) {
  return TheoremBuilder(seed, options).run(max_steps);
}

}  // namespace evlogic
