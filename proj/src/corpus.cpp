#include <string_view>

#include "evlogic/proof.hpp"
#include "evlogic/proof_script.hpp"

namespace evlogic {

namespace {

struct ScriptEntry {
  std::string_view name;
  std::string_view script;
};

// Generated from data/proofs/*.proof at configure time.
#include "corpus_scripts.inc"

std::string_view describe(std::string_view name) {
  if (name == "positive-introspection") return "positive introspection: []p -> [][]p";
  if (name == "mixed-negative-introspection") return "mixed negative introspection: ![.]p -> []![.]p";
  if (name == "att-truth") return "attainable truth: [.]p -> p";
  if (name == "box-nec") return "[]-necessitation of a theorem: []([]p -> p)";
  return "";
}

}  // namespace

const std::vector<NamedDerivation>& corpus() {
  static const std::vector<NamedDerivation> entries = [] {
    std::vector<NamedDerivation> out;
    for (const auto& e : corpus_scripts)
      out.push_back({std::string(e.name), std::string(describe(e.name)), parse_proof_script(e.script)});
    return out;
  }();
  return entries;
}

}  // namespace evlogic
