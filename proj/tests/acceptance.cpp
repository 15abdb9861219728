// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include "evlogic/cli.hpp"
#include "evlogic/errors.hpp"
#include "evlogic/finite_model.hpp"
#include "evlogic/fuzz.hpp"
#include "evlogic/hotel.hpp"
#include "evlogic/proof.hpp"
#include "evlogic/unravel.hpp"
#include "support.hpp"

using namespace evlogic;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int n, const char* title, const std::function<Outcome()>& body) {
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  failures += !o.pass;
  std::cout << (o.pass ? "PASS" : "FAIL") << " [" << n << "] " << title << ": " << o.detail << std::endl;
}

Outcome proof_corpus() {
  auto t0 = Clock::now();
  std::size_t good = 0;
  for (const auto& entry : corpus()) {
    auto r = check_derivation(entry.derivation);
    good += r.accepted && r.conclusion_is_theorem && r.pure.back();
  }
  const double took = seconds_since(t0);
  const bool expected_set = corpus().size() == 4 && *check_derivation(corpus()[0].derivation).conclusion ==
                                                        parse("[]p -> [][]p");
  std::mt19937_64 rng(400);
  std::size_t rejected = 0, total = 0;
  for (const auto& entry : corpus())
    for (int i = 0; i < 100; ++i, ++total)
      rejected += !check_derivation(testing::mutate_derivation(entry.derivation, rng)).accepted;
  const double rate = double(rejected) / double(total);
  std::ostringstream d;
  d << good << "/" << corpus().size() << " accepted pure theorems in " << took << " s; " << rejected << "/" << total
    << " mutations rejected (" << 100 * rate << "%)";
  return {expected_set && good == corpus().size() && took < 1.0 && total == 400 && rate >= 0.95, d.str()};
}

Outcome soundness_fuzz() {
  FuzzConfig cfg;  // seed 42, 10000 theorems, 300 models, <= 6 worlds, <= 4 evidence, 4 atoms
  cfg.hotel_panel = 0;
  auto t0 = Clock::now();
  FuzzReport r = run_soundness_fuzz(cfg);
  const double took = seconds_since(t0);
  std::ostringstream d;
  d << r.theorems_checked << " theorems (" << r.skipped_theorems << " skipped, " << r.generator_rejections
    << " rejected) x " << r.models_checked << " models, " << r.evaluations << " evaluations, " << r.violations
    << " violations in " << took << " s";
  return {r.theorems_checked == 10000 && r.models_checked == 300 && r.violations == 0 && r.generator_rejections == 0 &&
              took <= 300.0,
          d.str()};
}

Outcome finite_collapse() {
  FuzzConfig bounds;
  Rng rng(1000);
  std::size_t agree = 0, corollary = 0, oracle = 0;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    ModelDocument doc = random_model(derive_seed(1000, i), bounds);
    FiniteEvidenceModel m(doc);
    Formula f = random_formula(rng, 3, default_atom_pool());
    Formula att = Formula::attain(f), box = Formula::know(f);
    agree += m.extension(att) == m.extension(box);
    oracle += testing::naive_extension(doc, att) == testing::naive_extension(doc, box);
    Formula neg = Formula::negation(att);
    corollary += m.extension(Formula::implies(neg, Formula::attain(neg))).all();
  }
  std::ostringstream d;
  d << agree << "/1000 pairs agree, " << oracle << "/1000 by direct definition, negative introspection valid on "
    << corollary << "/1000";
  return {agree == 1000 && oracle == 1000 && corollary == 1000, d.str()};
}

Outcome counterexamples() {
  struct Expect {
    HotelVariant v;
    const char* world;
    const char* formula;
    bool value;
    std::optional<EvidenceWitness> witness;
  };
  const std::vector<Expect> listed = {
      {HotelVariant::one, "default=occupied", "!([.]exists_vacant)", true, std::nullopt},
      {HotelVariant::one, "default=occupied", "!([.](!([.]exists_vacant)))", true, std::nullopt},
      {HotelVariant::one, "default=occupied; 7=vacant", "[.]exists_vacant", true, EvidenceWitness{{7}, 0}},
      {HotelVariant::one, "default=occupied", "[](!exists_vacant)", true, std::nullopt},
      {HotelVariant::two, "default=vacant", "!([.](!exists_occupied))", true, std::nullopt},
      {HotelVariant::two, "default=vacant", "[.](!([.](!exists_occupied)))", false, std::nullopt},
      {HotelVariant::two, "default=vacant; 3=infested", "[.](!exists_occupied)", true, EvidenceWitness{{3}, 0}},
  };
  std::size_t matched = 0;
  for (const auto& e : listed) {
    auto v = hotel_eval(e.v, parse_world_literal(e.world), parse(e.formula));
    matched += v.value == e.value && v.witness == e.witness;
  }

  // the CLI report, checked row by row against fresh evaluations
  std::ostringstream out, err;
  const int code = run_cli({"counterexamples"}, out, err);
  std::size_t rows = 0, rows_ok = 0;
  bool tops = true;
  for (const auto& name : counterexample_names()) {
    auto r = counterexample_report(name);
    tops = tops && !r.verdict && r.reproduced();
    for (const auto& row : r.rows) {
      ++rows;
      rows_ok += row.verdict == row.expected &&
                 hotel_eval(r.variant, parse_world_literal(row.world), parse(row.formula)).value == row.expected;
    }
  }
  const bool tops_at =
      counterexample_report("negative-introspection").world == parse_world_literal("default=occupied") &&
      counterexample_report("weak-negative-introspection").world == parse_world_literal("default=vacant");

  const HotelWorld full = parse_world_literal("default=occupied");
  const bool separated = hotel_eval(HotelVariant::one, full, parse("[]!exists_vacant")).value &&
                         !hotel_eval(HotelVariant::one, full, parse("[.]!exists_vacant")).value;
  std::ostringstream d;
  d << matched << "/" << listed.size() << " listed verdicts, " << rows_ok << "/" << rows
    << " report rows, both principles false at their hotels: " << (tops && tops_at ? "yes" : "no")
    << ", cli exit " << code << ", separation at default=occupied: " << (separated ? "yes" : "no");
  return {matched == listed.size() && rows_ok == rows && rows > 0 && tops && tops_at && code == 0 && separated,
          d.str()};
}

Outcome hotel_soundness() {
  std::ostringstream d;
  bool pass = true;
  for (auto v : {HotelVariant::one, HotelVariant::two}) {
    auto panel = hotel_panel(v, 50);
    std::size_t evaluated = 0, skipped = 0, violations = 0, checks = 0;
    for (std::uint64_t i = 0; evaluated < 1000; ++i) {
      Formula f = to_hotel_atoms(random_theorem(derive_seed(5, i), 12).conclusion, v);
      std::optional<HotelEvaluator> ev;
      try {
        ev.emplace(v, f);
      } catch (const CapacityError&) {
        ++skipped;
        continue;
      }
      ++evaluated;
      for (const auto& w : panel) {
        ++checks;
        violations += !ev->eval(w).value;
      }
    }
    d << (v == HotelVariant::one ? "" : "; ") << "variant " << variant_name(v) << ": " << evaluated << " theorems x " << panel.size() << " worlds, "
      << violations << " violations (" << skipped << " over capacity)";
    pass = pass && violations == 0 && checks == 50000;
  }
  return {pass, d.str()};
}

Outcome cap_stability() {
  std::ostringstream d;
  bool pass = true;
  for (auto v : {HotelVariant::one, HotelVariant::two}) {
    Rng rng(v == HotelVariant::one ? 600 : 601);
    std::size_t stable = 0, n = 0;
    while (n < 500) {
      HotelWorld w = random_hotel_world(rng, v);
      Formula f = random_formula(rng, 3, hotel_atom_pool(v));
      if (modal_depth(f) > hotel_max_modal_depth) continue;
      ++n;
      const std::size_t b0 = default_cap(f);
      const bool base = hotel_eval(v, w, f, b0).value;
      bool same = true;
      for (std::size_t b = b0 + 1; b <= b0 + 3; ++b) same = same && hotel_eval(v, w, f, b).value == base;
      stable += same;
    }
    d << (v == HotelVariant::one ? "" : "; ") << "variant " << variant_name(v) << ": " << stable << "/" << n
      << " stable";
    pass = pass && stable == n;
  }
  return {pass, d.str()};
}

Outcome sequence_properties() {
  auto r = unravel::check_unravel_properties(7, 200, {30, 3, 2});
  std::ostringstream d;
  d << r.universes << " universes, " << r.sequences << " sequences, " << r.pairs_checked << " pairs; failures: reflexive "
    << r.reflexivity_failures << ", symmetric " << r.symmetry_failures << ", transitive " << r.transitivity_failures
    << ", well-founded " << r.well_foundedness_failures << ", witness " << r.witness_failures;
  return {r.universes == 200 && r.failures() == 0, d.str()};
}

Outcome round_trip() {
  Rng rng(8);
  std::size_t ok = 0;
  for (int i = 0; i < 10000; ++i) {
    Formula f = random_formula(rng, 1 + i % 7, default_atom_pool());
    ok += parse(print(f)) == f;
  }
  std::ostringstream d;
  d << ok << "/10000 formulas survive print then parse";
  return {ok == 10000, d.str()};
}

}  // namespace

int main() {
  criterion(1, "proof corpus", proof_corpus);
  criterion(2, "soundness fuzz", soundness_fuzz);
  criterion(3, "finite collapse", finite_collapse);
  criterion(4, "counterexamples and separation", counterexamples);
  criterion(5, "hotel soundness", hotel_soundness);
  criterion(6, "cap stability", cap_stability);
  criterion(7, "sequence relation properties", sequence_properties);
  criterion(8, "parser round trip", round_trip);
  std::cout << (failures ? "FAIL" : "PASS") << ": " << 8 - failures << "/8 criteria" << std::endl;
  return failures ? 1 : 0;
}
