#include "evlogic/proof.hpp"

#include <unordered_map>

#include "evlogic/errors.hpp"

namespace evlogic {

namespace {

struct SchemaInfo {
  AxiomSchema schema;
  std::string_view name;
  std::string_view text;
};

constexpr std::array<SchemaInfo, 6> schema_table = {{
    {AxiomSchema::truth, "truth", "[]phi -> phi"},
    {AxiomSchema::neg_intro, "neg-intro", "![]phi -> []![]phi"},
    {AxiomSchema::dist, "dist", "[](phi -> psi) -> ([]phi -> []psi)"},
    {AxiomSchema::mono, "mono", "[.]phi -> []phi"},
    {AxiomSchema::att_pos_intro, "att-pos-intro", "[.]phi -> [.][.]phi"},
    {AxiomSchema::att_dist, "att-dist", "[.](phi -> psi) -> ([.]phi -> [.]psi)"},
}};

}  // namespace

std::string_view schema_name(AxiomSchema s) {
  return schema_table[static_cast<std::size_t>(s)].name;
}

std::optional<AxiomSchema> schema_from_name(std::string_view name) {
  for (const auto& info : schema_table)
    if (info.name == name) return info.schema;
  return std::nullopt;
}

const Formula& schema_template(AxiomSchema s) {
  static const std::array<Formula, 6> templates = [] {
    auto make = [](std::size_t i) { return parse(schema_table[i].text); };
    return std::array<Formula, 6>{make(0), make(1), make(2), make(3), make(4), make(5)};
  }();
  return templates[static_cast<std::size_t>(s)];
}

Formula instantiate_pattern(const Formula& pattern, const Substitution& sub) {
  return substitute(pattern, [&](const std::string& name) -> std::optional<Formula> {
    auto it = sub.find(name);
    if (it == sub.end()) return std::nullopt;
    return it->second;
  });
}

Formula instantiate(AxiomSchema s, const Formula& phi, const Formula& psi) {
  return instantiate_pattern(schema_template(s), {{"phi", phi}, {"psi", psi}});
}

namespace {

bool match_into(const Formula& f, const Formula& pattern, Substitution& sub) {
  if (pattern.is(Op::atom)) {
    auto [it, inserted] = sub.try_emplace(pattern.name(), f);
    return inserted || it->second == f;
  }
  if (f.op() != pattern.op()) return false;
  if (f.is(Op::implication))
    return match_into(f.left(), pattern.left(), sub) && match_into(f.right(), pattern.right(), sub);
  return match_into(f.child(), pattern.child(), sub);
}

}  // namespace

std::optional<Substitution> match_pattern(const Formula& candidate, const Formula& pattern) {
  Substitution sub;
  if (!match_into(candidate, pattern, sub)) return std::nullopt;
  return sub;
}

std::optional<Substitution> match_schema(const Formula& candidate, AxiomSchema schema) {
  return match_pattern(candidate, schema_template(schema));
}

namespace {

void collect_letters(const Formula& f, std::vector<Formula>& out,
                     std::unordered_map<Formula, std::size_t, FormulaHash>& index) {
  if (f.is(Op::atom) || f.is_modal()) {
    if (index.try_emplace(f, out.size()).second) out.push_back(f);
    return;
  }
  if (f.is(Op::implication)) {
    collect_letters(f.left(), out, index);
    collect_letters(f.right(), out, index);
  } else {
    collect_letters(f.child(), out, index);
  }
}

// Propositional skeleton compiled to letter indices.
struct Skeleton {
  struct Node {
    Op op;
    int a;
    int b;
  };
  std::vector<Node> nodes;  // children precede parents; root last

  int build(const Formula& f, const std::unordered_map<Formula, std::size_t, FormulaHash>& index) {
    if (f.is(Op::atom) || f.is_modal()) {
      nodes.push_back({Op::atom, static_cast<int>(index.at(f)), 0});
    } else if (f.is(Op::implication)) {
      int l = build(f.left(), index);
      int r = build(f.right(), index);
      nodes.push_back({Op::implication, l, r});
    } else {
      int c = build(f.child(), index);
      nodes.push_back({Op::negation, c, 0});
    }
    return static_cast<int>(nodes.size()) - 1;
  }

  bool eval(std::uint32_t assignment, std::vector<char>& scratch) const {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      switch (n.op) {
        case Op::atom: scratch[i] = (assignment >> n.a) & 1u; break;
        case Op::negation: scratch[i] = !scratch[n.a]; break;
        default: scratch[i] = !scratch[n.a] || scratch[n.b]; break;
      }
    }
    return scratch.back();
  }
};

}  // namespace

std::vector<Formula> opaque_letters(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_map<Formula, std::size_t, FormulaHash> index;
  collect_letters(f, out, index);
  return out;
}

bool is_tautology(const Formula& f) {
  std::vector<Formula> letters;
  std::unordered_map<Formula, std::size_t, FormulaHash> index;
  collect_letters(f, letters, index);
  if (letters.size() > max_tautology_letters)
    throw CapacityError("tautology check over " + std::to_string(letters.size()) +
                        " opaque letters exceeds limit of " + std::to_string(max_tautology_letters));
  Skeleton sk;
  sk.build(f, index);
  std::vector<char> scratch(sk.nodes.size());
  const std::uint32_t rows = 1u << letters.size();
  for (std::uint32_t a = 0; a < rows; ++a)
    if (!sk.eval(a, scratch)) return false;
  return true;
}

CheckReport check_derivation(const Derivation& d) {
  CheckReport report;
  auto reject = [&](std::size_t step, std::string reason) {
    report.accepted = false;
    report.first_error = StepError{step, std::move(reason)};
    return report;
  };
  if (d.steps.empty()) return reject(0, "derivation has no steps");

  auto ref = [](std::size_t i) { return std::to_string(i + 1); };
  for (std::size_t n = 0; n < d.steps.size(); ++n) {
    const auto& [formula, why] = d.steps[n];
    bool pure = true;
    using K = Justification::Kind;
    switch (why.kind) {
      case K::taut: {
        bool ok = false;
        try {
          ok = is_tautology(formula);
        } catch (const CapacityError& e) {
          return reject(n, e.what());
        }
        if (!ok) return reject(n, "not a propositional tautology");
        break;
      }
      case K::axiom:
        if (!match_schema(formula, why.schema))
          return reject(n, "not an instance of axiom " + std::string(schema_name(why.schema)));
        break;
      case K::modus_ponens: {
        if (why.first >= n || why.second >= n)
          return reject(n, "mp references step " + ref(std::max(why.first, why.second)) +
                               " which is not an earlier step");
        const Formula& antecedent = d.steps[why.first].formula;
        const Formula& implication = d.steps[why.second].formula;
        if (!implication.is(Op::implication) || implication.left() != antecedent ||
            implication.right() != formula)
          return reject(n, "step " + ref(why.second) + " is not step " + ref(why.first) +
                               " -> current formula");
        pure = report.pure[why.first] && report.pure[why.second];
        break;
      }
      case K::att_nec: {
        if (why.first >= n)
          return reject(n, "anec references step " + ref(why.first) + " which is not an earlier step");
        if (!report.pure[why.first])
          return reject(n, "anec applied to step " + ref(why.first) + " which depends on hypotheses");
        if (!formula.is(Op::attain) || formula.child() != d.steps[why.first].formula)
          return reject(n, "formula is not [.] of step " + ref(why.first));
        break;
      }
      case K::hypothesis:
        if (why.first >= d.hypotheses.size())
          return reject(n, "no hypothesis " + ref(why.first));
        if (d.hypotheses[why.first] != formula)
          return reject(n, "formula differs from hypothesis " + ref(why.first));
        pure = false;
        break;
    }
    report.pure.push_back(pure);
  }
  report.accepted = true;
  report.conclusion = d.steps.back().formula;
  report.conclusion_is_theorem = report.pure.back();
  return report;
}

}  // namespace evlogic
