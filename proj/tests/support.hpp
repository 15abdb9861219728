#pragma once

// Helpers shared by the unit and acceptance suites. Nothing here calls into
// the evaluators under test.

#include <functional>
#include <random>
#include <vector>

#include "evlogic/finite_model.hpp"
#include "evlogic/formula.hpp"
#include "evlogic/proof.hpp"

namespace evlogic::testing {

inline std::vector<Formula> nodes_of(const Formula& f) {
  std::vector<Formula> out{f};
  if (f.is(Op::implication)) {
    for (auto& n : nodes_of(f.left())) out.push_back(n);
    for (auto& n : nodes_of(f.right())) out.push_back(n);
  } else if (!f.is(Op::atom)) {
    for (auto& n : nodes_of(f.child())) out.push_back(n);
  }
  return out;
}

// Local edit of one node: rename an atom, drop a negation, swap implication
// sides, or switch between [.] and []; falls back to negating the node.
inline Formula mutate_node(const Formula& n) {
  Formula m = n;
  switch (n.op()) {
    case Op::atom: m = Formula::atom(n.name() == "q" ? "p" : "q"); break;
    case Op::negation: m = n.child(); break;
    case Op::implication: m = Formula::implies(n.right(), n.left()); break;
    case Op::attain: m = Formula::know(n.child()); break;
    case Op::know: m = Formula::attain(n.child()); break;
  }
  if (m == n) m = Formula::negation(n);
  return m;
}

// Replaces the node at pre-order position `target`.
inline Formula replace_at(const Formula& f, std::size_t& position, std::size_t target) {
  if (position++ == target) return mutate_node(f);
  switch (f.op()) {
    case Op::atom: return f;
    case Op::negation: return Formula::negation(replace_at(f.child(), position, target));
    case Op::attain: return Formula::attain(replace_at(f.child(), position, target));
    case Op::know: return Formula::know(replace_at(f.child(), position, target));
    case Op::implication: {
      Formula l = replace_at(f.left(), position, target);
      return Formula::implies(l, replace_at(f.right(), position, target));
    }
  }
  return f;
}

inline Formula mutate_random_node(const Formula& f, std::mt19937_64& rng) {
  std::size_t target = std::uniform_int_distribution<std::size_t>(0, f.size() - 1)(rng);
  std::size_t position = 0;
  return replace_at(f, position, target);
}

/// Flips one node of one randomly chosen step.
inline Derivation mutate_derivation(const Derivation& d, std::mt19937_64& rng) {
  Derivation m = d;
  std::size_t step = std::uniform_int_distribution<std::size_t>(0, d.steps.size() - 1)(rng);
  m.steps[step].formula = mutate_random_node(d.steps[step].formula, rng);
  return m;
}

/// Truth table by direct recursion, letters resolved through `letter`.
inline bool eval_skeleton(const Formula& f, const std::function<bool(const Formula&)>& letter) {
  switch (f.op()) {
    case Op::negation: return !eval_skeleton(f.child(), letter);
    case Op::implication: return !eval_skeleton(f.left(), letter) || eval_skeleton(f.right(), letter);
    default: return letter(f);
  }
}

/// Independent tautology oracle: collects letters by its own walk and
/// enumerates every assignment.
inline bool brute_force_tautology(const Formula& f) {
  std::vector<Formula> letters;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.is(Op::atom) || g.is_modal()) {
      for (const auto& l : letters)
        if (l == g) return;
      letters.push_back(g);
    } else if (g.is(Op::implication)) {
      walk(g.left());
      walk(g.right());
    } else {
      walk(g.child());
    }
  };
  walk(f);
  for (std::uint64_t row = 0; row < (std::uint64_t{1} << letters.size()); ++row) {
    auto letter = [&](const Formula& g) {
      for (std::size_t k = 0; k < letters.size(); ++k)
        if (letters[k] == g) return ((row >> k) & 1u) != 0;
      return false;
    };
    if (!eval_skeleton(f, letter)) return false;
  }
  return true;
}

/// Satisfaction by the definition, read off a ModelDocument: two worlds are
/// F-related when every e in F puts them in one block. Returns one truth
/// value per world, in world order.
inline std::vector<bool> naive_extension(const ModelDocument& m, const Formula& f) {
  const std::size_t n = m.worlds.size();
  auto index = [&](const std::string& w) {
    for (std::size_t i = 0; i < n; ++i)
      if (m.worlds[i] == w) return i;
    return n;
  };
  std::vector<std::vector<std::size_t>> block_of;  // evidence -> world -> block
  for (const auto& [id, blocks] : m.evidence) {
    std::vector<std::size_t> b(n);
    for (std::size_t k = 0; k < blocks.size(); ++k)
      for (const auto& w : blocks[k]) b[index(w)] = k;
    block_of.push_back(b);
  }
  auto related = [&](std::uint64_t mask, std::size_t a, std::size_t b) {
    for (std::size_t e = 0; e < block_of.size(); ++e)
      if (((mask >> e) & 1u) && block_of[e][a] != block_of[e][b]) return false;
    return true;
  };
  auto holds_for = [&](std::uint64_t mask, const std::vector<bool>& inner, std::size_t w) {
    for (std::size_t v = 0; v < n; ++v)
      if (related(mask, w, v) && !inner[v]) return false;
    return true;
  };
  const std::uint64_t full = (std::uint64_t{1} << block_of.size()) - 1;
  std::vector<bool> out(n);
  switch (f.op()) {
    case Op::atom: {
      auto it = m.valuation.find(f.name());
      if (it != m.valuation.end())
        for (const auto& w : it->second) out[index(w)] = true;
      break;
    }
    case Op::negation: {
      auto a = naive_extension(m, f.child());
      for (std::size_t w = 0; w < n; ++w) out[w] = !a[w];
      break;
    }
    case Op::implication: {
      auto a = naive_extension(m, f.left()), b = naive_extension(m, f.right());
      for (std::size_t w = 0; w < n; ++w) out[w] = !a[w] || b[w];
      break;
    }
    case Op::know: {
      auto a = naive_extension(m, f.child());
      for (std::size_t w = 0; w < n; ++w) out[w] = holds_for(full, a, w);
      break;
    }
    case Op::attain: {
      auto a = naive_extension(m, f.child());
      for (std::size_t w = 0; w < n; ++w)
        for (std::uint64_t mask = 0; mask <= full && !out[w]; ++mask) out[w] = holds_for(mask, a, w);
      break;
    }
  }
  return out;
}

}  // namespace evlogic::testing
