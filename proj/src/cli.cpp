#include "evlogic/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "evlogic/errors.hpp"
#include "evlogic/finite_model.hpp"
#include "evlogic/fuzz.hpp"
#include "evlogic/hotel.hpp"
#include "evlogic/model_io.hpp"
#include "evlogic/proof.hpp"
#include "evlogic/proof_script.hpp"
#include "evlogic/unravel.hpp"

namespace evlogic {

namespace {

using nlohmann::json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json witness_json(const std::optional<EvidenceWitness>& w) {
  if (!w) return nullptr;
  return {{"tracked", w->tracked}, {"fresh_count", w->fresh_count}};
}

std::string witness_text(const EvidenceWitness& w) {
  std::string rooms;
  for (auto r : w.tracked) rooms += (rooms.empty() ? "" : ", ") + std::to_string(r);
  return "examine rooms {" + rooms + "} plus " + std::to_string(w.fresh_count) + " fresh room(s)";
}

json report_json(const CheckReport& r) {
  json j;
  j["accepted"] = r.accepted;
  j["error"] = r.first_error ? json{{"step", r.first_error->step + 1}, {"reason", r.first_error->reason}} : json(nullptr);
  j["conclusion"] = r.conclusion ? json(print(*r.conclusion)) : json(nullptr);
  j["theorem"] = r.conclusion_is_theorem;
  return j;
}

void report_text(std::ostream& out, const CheckReport& r) {
  if (r.accepted) {
    out << "accepted: " << print(*r.conclusion) << (r.conclusion_is_theorem ? " (theorem)" : " (from hypotheses)")
        << '\n';
  } else {
    out << "rejected at step " << r.first_error->step + 1 << ": " << r.first_error->reason << '\n';
  }
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Attainable and full evidence-based knowledge: parsing, proof checking, model checking"};
  app.name("evlogic");
  app.fallthrough();
  app.require_subcommand(1);
  bool as_json = false;
  app.add_flag("--json", as_json, "Structured JSON output");

  std::string formula_text, file, world;

  auto* parse_cmd = app.add_subcommand("parse", "Print the canonical form of a formula");
  parse_cmd->add_option("formula", formula_text)->required();

  auto* check_cmd = app.add_subcommand("check-proof", "Check a proof script");
  check_cmd->add_option("file", file)->required();

  auto* mc_cmd = app.add_subcommand("mc", "Evaluate a formula at one world of a finite model");
  mc_cmd->add_option("model", file)->required();
  mc_cmd->add_option("world", world)->required();
  mc_cmd->add_option("formula", formula_text)->required();

  auto* valid_cmd = app.add_subcommand("mc-valid", "Worlds of a finite model where a formula holds");
  valid_cmd->add_option("model", file)->required();
  valid_cmd->add_option("formula", formula_text)->required();

  std::string variant_text;
  std::optional<std::size_t> cap;
  auto* hotel_cmd = app.add_subcommand("hotel", "Evaluate a formula in a Grand Hotel world");
  hotel_cmd->add_option("--variant", variant_text, "I or II")->required();
  hotel_cmd->add_option("--world", world, "e.g. 'default=occupied; 7=vacant'")->required();
  hotel_cmd->add_option("--cap", cap, "Count saturation cap (default: derived from the formula)");
  hotel_cmd->add_option("formula", formula_text)->required();

  auto* cex_cmd = app.add_subcommand("counterexamples", "Reproduce the Grand Hotel counterexamples");

  FuzzConfig cfg;
  auto* fuzz_cmd = app.add_subcommand("fuzz", "Soundness fuzzing of generated theorems");
  fuzz_cmd->add_option("--seed", cfg.seed)->required();
  fuzz_cmd->add_option("--theorems", cfg.num_theorems)->capture_default_str();
  fuzz_cmd->add_option("--models", cfg.num_models)->capture_default_str();
  fuzz_cmd->add_option("--max-worlds", cfg.max_worlds)->capture_default_str();
  fuzz_cmd->add_option("--max-evidence", cfg.max_evidence)->capture_default_str();
  fuzz_cmd->add_option("--max-steps", cfg.max_proof_steps)->capture_default_str();
  fuzz_cmd->add_option("--max-depth", cfg.max_formula_depth)->capture_default_str();
  fuzz_cmd->add_option("--atoms", cfg.num_atoms)->capture_default_str();
  fuzz_cmd->add_option("--hotel-panel", cfg.hotel_panel)->capture_default_str();
  fuzz_cmd->add_option("--threads", cfg.threads, "0 = all cores")->capture_default_str();

  std::uint64_t useed = 0;
  unravel::UniverseParams uparams;
  std::size_t universes = 200;
  auto* unravel_cmd = app.add_subcommand("unravel-sim", "Property run over random sequence universes");
  unravel_cmd->add_option("--seed", useed)->required();
  unravel_cmd->add_option("--size", uparams.size)->required()->check(CLI::Range(1, 200));
  unravel_cmd->add_option("--universes", universes)->capture_default_str();

  auto* corpus_cmd = app.add_subcommand("corpus", "Check the bundled derivations");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*parse_cmd) {
      Formula f = parse(formula_text);
      if (as_json) {
        out << json{{"canonical", print(f)}, {"modal_depth", modal_depth(f)}, {"atoms", atoms(f)}}.dump(2) << '\n';
      } else {
        out << print(f) << '\n';
      }
      return 0;
    }

    if (*check_cmd) {
      Derivation d = parse_proof_script(read_file(file));
      CheckReport r = check_derivation(d);
      if (as_json) {
        out << report_json(r).dump(2) << '\n';
      } else {
        report_text(out, r);
      }
      return r.accepted ? 0 : 1;
    }

    if (*mc_cmd || *valid_cmd) {
      FiniteEvidenceModel m(load_model(file));
      Formula f = parse(formula_text);
      if (*mc_cmd) {
        bool v = m.satisfies(world, f);
        if (as_json) {
          out << json{{"world", world}, {"formula", print(f)}, {"verdict", v}}.dump(2) << '\n';
        } else {
          out << world << (v ? " |= " : " |/= ") << print(f) << '\n';
        }
        return v ? 0 : 1;
      }
      auto ext = m.extension_names(f);
      bool valid = ext.size() == m.world_count();
      if (as_json) {
        out << json{{"formula", print(f)}, {"extension", ext}, {"valid", valid}}.dump(2) << '\n';
      } else {
        out << "{";
        for (std::size_t i = 0; i < ext.size(); ++i) out << (i ? ", " : "") << ext[i];
        out << "}" << (valid ? " (valid in the model)" : "") << '\n';
      }
      return valid ? 0 : 1;
    }

    if (*hotel_cmd) {
      auto variant = variant_from_name(variant_text);
      if (!variant) throw InputError("--variant must be I or II");
      HotelWorld w = parse_world_literal(world);
      Formula f = parse(formula_text);
      HotelVerdict v = hotel_eval(*variant, w, f, cap);
      if (as_json) {
        out << json{{"variant", variant_name(*variant)}, {"world", world_literal(w)}, {"formula", print(f)},
                    {"verdict", v.value}, {"cap", v.cap}, {"witness", witness_json(v.witness)}}
                   .dump(2)
            << '\n';
      } else {
        out << (v.value ? "true" : "false") << '\n';
        if (v.witness) out << "witness: " << witness_text(*v.witness) << '\n';
      }
      return v.value ? 0 : 1;
    }

    if (*cex_cmd) {
      bool all = true;
      json reports = json::array();
      for (const auto& name : counterexample_names()) {
        auto r = counterexample_report(name);
        all &= r.reproduced() && !r.verdict;
        if (as_json) {
          json rows = json::array();
          for (const auto& row : r.rows)
            rows.push_back({{"world", row.world}, {"formula", row.formula}, {"verdict", row.verdict},
                            {"expected", row.expected}, {"witness", witness_json(row.witness)}});
          reports.push_back({{"name", r.name}, {"variant", variant_name(r.variant)}, {"world", world_literal(r.world)},
                             {"formula", print(r.formula)}, {"verdict", r.verdict}, {"reproduced", r.reproduced()},
                             {"rows", rows}});
        } else {
          out << r.name << " (variant " << variant_name(r.variant) << ", " << world_literal(r.world) << ")\n";
          out << "  " << print(r.formula) << " : " << (r.verdict ? "true" : "false") << '\n';
          for (const auto& row : r.rows) {
            out << "  [" << (row.verdict == row.expected ? "ok" : "MISMATCH") << "] " << row.world << " : "
                << row.formula << " = " << (row.verdict ? "true" : "false");
            if (row.witness) out << "  (" << witness_text(*row.witness) << ")";
            out << '\n';
          }
        }
      }
      if (as_json) out << json{{"reports", reports}, {"reproduced", all}}.dump(2) << '\n';
      return all ? 0 : 1;
    }

    if (*fuzz_cmd) {
      FuzzReport r = run_soundness_fuzz(cfg);
      auto violation = [](const std::optional<FuzzViolation>& v) -> json {
        if (!v) return nullptr;
        return {{"theorem_index", v->theorem_index}, {"theorem", v->theorem}, {"location", v->location}};
      };
      if (as_json) {
        // elapsed time is left out so equal flags give identical output
        out << json{{"seed", cfg.seed},
                    {"theorems_checked", r.theorems_checked},
                    {"skipped_theorems", r.skipped_theorems},
                    {"generator_rejections", r.generator_rejections},
                    {"models_checked", r.models_checked},
                    {"evaluations", r.evaluations},
                    {"violations", r.violations},
                    {"first_violation", violation(r.first_violation)},
                    {"hotel_evaluations", r.hotel_evaluations},
                    {"hotel_skipped", r.hotel_skipped},
                    {"hotel_violations", r.hotel_violations},
                    {"first_hotel_violation", violation(r.first_hotel_violation)}}
                   .dump(2)
            << '\n';
      } else {
        out << "theorems checked:     " << r.theorems_checked << " (skipped " << r.skipped_theorems << ")\n"
            << "models checked:       " << r.models_checked << '\n'
            << "evaluations:          " << r.evaluations << '\n'
            << "violations:           " << r.violations << '\n'
            << "hotel evaluations:    " << r.hotel_evaluations << " (skipped " << r.hotel_skipped << ")\n"
            << "hotel violations:     " << r.hotel_violations << '\n'
            << "generator rejections: " << r.generator_rejections << '\n'
            << "elapsed:              " << r.elapsed.count() << " ms\n";
        if (r.first_violation)
          out << "first violation: " << r.first_violation->theorem << " at " << r.first_violation->location << '\n';
        if (r.first_hotel_violation)
          out << "first hotel violation: " << r.first_hotel_violation->theorem << " at "
              << r.first_hotel_violation->location << '\n';
      }
      return r.total_violations() == 0 && r.generator_rejections == 0 ? 0 : 1;
    }

    if (*unravel_cmd) {
      auto r = unravel::check_unravel_properties(useed, universes, uparams);
      if (as_json) {
        out << json{{"universes", r.universes},
                    {"sequences", r.sequences},
                    {"pairs_checked", r.pairs_checked},
                    {"reflexivity_failures", r.reflexivity_failures},
                    {"symmetry_failures", r.symmetry_failures},
                    {"transitivity_failures", r.transitivity_failures},
                    {"well_foundedness_failures", r.well_foundedness_failures},
                    {"witness_failures", r.witness_failures}}
                   .dump(2)
            << '\n';
      } else {
        out << "universes: " << r.universes << ", sequences: " << r.sequences << ", pairs: " << r.pairs_checked << '\n'
            << "reflexivity failures:      " << r.reflexivity_failures << '\n'
            << "symmetry failures:         " << r.symmetry_failures << '\n'
            << "transitivity failures:     " << r.transitivity_failures << '\n'
            << "well-foundedness failures: " << r.well_foundedness_failures << '\n'
            << "witness failures:          " << r.witness_failures << '\n';
      }
      return r.failures() == 0 ? 0 : 1;
    }

    if (*corpus_cmd) {
      std::size_t accepted = 0;
      json entries = json::array();
      for (const auto& entry : corpus()) {
        CheckReport r = check_derivation(entry.derivation);
        bool ok = r.accepted && r.conclusion_is_theorem;
        accepted += ok;
        if (as_json) {
          json e = report_json(r);
          e["name"] = entry.name;
          e["steps"] = entry.derivation.steps.size();
          entries.push_back(e);
        } else {
          out << entry.name << ": ";
          report_text(out, r);
        }
      }
      if (as_json) {
        out << json{{"entries", entries}, {"accepted", accepted}, {"total", corpus().size()}}.dump(2) << '\n';
      } else {
        out << accepted << "/" << corpus().size() << " accepted\n";
      }
      return accepted == corpus().size() ? 0 : 1;
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const ModelError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace evlogic
