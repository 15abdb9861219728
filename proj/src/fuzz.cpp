#include "evlogic/fuzz.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

#include "evlogic/errors.hpp"

namespace evlogic {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }

// Uniform set partition of n items as a restricted growth string. ways[i][m]
// counts completions of positions i.. when m blocks are already open.
std::vector<std::size_t> random_set_partition(Rng& rng, std::size_t n) {
  std::vector<std::vector<double>> ways(n + 1, std::vector<double>(n + 2, 0.0));
  for (std::size_t m = 0; m <= n + 1; ++m) ways[n][m] = 1.0;
  for (std::size_t i = n; i-- > 0;)
    for (std::size_t m = 0; m <= n; ++m) ways[i][m] = m * ways[i + 1][m] + ways[i + 1][m + 1];
  std::vector<std::size_t> block(n);
  std::size_t open = 0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    double x = unit(rng) * ways[i][open];
    double existing = open * ways[i + 1][open];
    if (x < existing) {
      block[i] = std::min(open - 1, static_cast<std::size_t>(x / ways[i + 1][open]));
    } else {
      block[i] = open++;
    }
  }
  return block;
}

// Hotel atoms standing in for p, q, r, s.
const std::vector<std::string>& hotel_substitutes(HotelVariant v) {
  static const std::vector<std::string> one = {"exists_vacant", "exists_occupied", "room_0_vacant", "room_1_occupied"};
  static const std::vector<std::string> two = {"exists_infested", "exists_occupied", "room_0_vacant",
                                               "room_1_infested"};
  return v == HotelVariant::one ? one : two;
}

}  // namespace

void validate_config(const FuzzConfig& cfg) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  need(cfg.num_models >= 1, "num_models must be positive");
  need(cfg.max_worlds >= 1 && cfg.max_worlds <= 8, "max_worlds must be in 1..8");
  need(cfg.max_evidence >= 1 && cfg.max_evidence <= 6, "max_evidence must be in 1..6");
  need(cfg.max_proof_steps >= 1, "max_proof_steps must be positive");
  need(cfg.max_formula_depth >= 1, "max_formula_depth must be positive");
  need(cfg.num_atoms >= 1 && cfg.num_atoms <= default_atom_pool().size(), "num_atoms must be in 1..4");
}

ModelDocument random_model(std::uint64_t seed, const FuzzConfig& bounds) {
  validate_config(bounds);
  Rng rng(seed);
  ModelDocument m;
  const std::size_t n = 1 + pick(rng, bounds.max_worlds);
  for (std::size_t i = 0; i < n; ++i) m.worlds.push_back("w" + std::to_string(i + 1));
  const std::size_t evidence = pick(rng, bounds.max_evidence + 1);
  for (std::size_t e = 0; e < evidence; ++e) {
    auto block = random_set_partition(rng, n);
    Partition p(*std::max_element(block.begin(), block.end()) + 1);
    for (std::size_t i = 0; i < n; ++i) p[block[i]].push_back(m.worlds[i]);
    m.evidence.emplace("e" + std::to_string(e + 1), std::move(p));
  }
  std::bernoulli_distribution coin(0.5);
  for (std::size_t a = 0; a < bounds.num_atoms; ++a) {
    std::vector<std::string> ws;
    for (const auto& w : m.worlds)
      if (coin(rng)) ws.push_back(w);
    m.valuation.emplace(default_atom_pool()[a], std::move(ws));
  }
  return m;
}

HotelWorld random_hotel_world(Rng& rng, HotelVariant v, std::size_t max_exceptions, RoomIndex rooms) {
  auto states = variant_states(v);
  for (;;) {
    HotelWorld w;
    w.default_state = states[pick(rng, states.size())];
    const std::size_t n = pick(rng, max_exceptions + 1);
    for (std::size_t i = 0; i < n; ++i) {
      RoomState s = states[pick(rng, states.size())];
      if (s != w.default_state) w.exceptions[pick(rng, rooms)] = s;
    }
    if (!validate_world(v, w)) return w;
  }
}

std::vector<HotelWorld> hotel_panel(HotelVariant v, std::size_t count) {
  Rng rng(v == HotelVariant::one ? 0x48544c31u : 0x48544c32u);
  std::vector<HotelWorld> panel;
  // Every uniform hotel first, then random ones.
  for (auto s : variant_states(v))
    if (panel.size() < count) panel.push_back({s, {}});
  while (panel.size() < count) panel.push_back(random_hotel_world(rng, v));
  return panel;
}

const std::vector<std::string>& hotel_atom_pool(HotelVariant v) {
  static const std::vector<std::string> one = {"exists_vacant", "exists_occupied", "room_0_vacant",
                                               "room_0_occupied", "room_2_vacant"};
  static const std::vector<std::string> two = {"exists_vacant", "exists_occupied", "exists_infested",
                                               "room_0_infested", "room_1_occupied", "room_2_vacant"};
  return v == HotelVariant::one ? one : two;
}

Formula to_hotel_atoms(const Formula& f, HotelVariant v) {
  const auto& pool = default_atom_pool();
  const auto& subs = hotel_substitutes(v);
  return substitute(f, [&](const std::string& name) -> std::optional<Formula> {
    auto it = std::find(pool.begin(), pool.end(), name);
    if (it == pool.end()) return std::nullopt;
    return Formula::atom(subs[static_cast<std::size_t>(it - pool.begin())]);
  });
}

namespace {

void merge_first(std::optional<FuzzViolation>& into, const std::optional<FuzzViolation>& from) {
  if (from && (!into || from->theorem_index < into->theorem_index)) into = from;
}

}  // namespace

FuzzReport run_soundness_fuzz(const FuzzConfig& cfg) {
  validate_config(cfg);
  const auto start = std::chrono::steady_clock::now();

  std::vector<FiniteEvidenceModel> models;
  models.reserve(cfg.num_models);
  for (std::size_t j = 0; j < cfg.num_models; ++j)
    models.emplace_back(random_model(derive_seed(cfg.seed ^ 0x6d6f64656cULL, j), cfg));

  const std::array<HotelVariant, 2> variants = {HotelVariant::one, HotelVariant::two};
  std::array<std::vector<HotelWorld>, 2> panels;
  for (std::size_t v = 0; v < 2; ++v) panels[v] = hotel_panel(variants[v], cfg.hotel_panel);

  TheoremOptions opts = cfg.theorem_options;
  opts.formula_depth = cfg.max_formula_depth;
  opts.atom_pool.assign(default_atom_pool().begin(), default_atom_pool().begin() + cfg.num_atoms);

  std::size_t threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::max<std::size_t>(1, std::min(threads, cfg.num_theorems));
  std::vector<FuzzReport> partial(threads);

  auto work = [&](std::size_t t) {
    FuzzReport& r = partial[t];
    for (std::size_t i = t; i < cfg.num_theorems; i += threads) {
      std::optional<GeneratedTheorem> g;
      try {
        g = random_theorem(derive_seed(cfg.seed, i), cfg.max_proof_steps, opts);
      } catch (const CapacityError&) {
        ++r.skipped_theorems;
        continue;
      }
      ++r.theorems_checked;
      if (!check_derivation(g->derivation).accepted) ++r.generator_rejections;

      for (std::size_t j = 0; j < models.size(); ++j) {
        const auto& m = models[j];
        WorldSet ext = m.extension(g->conclusion);
        r.evaluations += m.world_count();
        if (ext.all()) continue;
        ++r.violations;
        if (!r.first_violation) {
          std::size_t w = 0;
          while (ext.test(w)) ++w;
          r.first_violation = FuzzViolation{i, print(g->conclusion),
                                            "model " + std::to_string(j) + ", world " + m.document().worlds[w]};
        }
      }

      for (std::size_t v = 0; v < 2 && cfg.hotel_panel > 0; ++v) {
        std::optional<HotelEvaluator> ev;
        try {
          ev.emplace(variants[v], to_hotel_atoms(g->conclusion, variants[v]));
        } catch (const CapacityError&) {
          ++r.hotel_skipped;
          continue;
        }
        for (const auto& w : panels[v]) {
          ++r.hotel_evaluations;
          if (ev->eval(w).value) continue;
          ++r.hotel_violations;
          if (!r.first_hotel_violation)
            r.first_hotel_violation = FuzzViolation{
                i, print(ev->formula()),
                "hotel variant " + std::string(variant_name(variants[v])) + ", world " + world_literal(w)};
        }
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work, t);
    if (cfg.num_theorems > 0) work(0);
  }

  FuzzReport out;
  for (const auto& r : partial) {
    out.theorems_checked += r.theorems_checked;
    out.skipped_theorems += r.skipped_theorems;
    out.generator_rejections += r.generator_rejections;
    out.evaluations += r.evaluations;
    out.violations += r.violations;
    out.hotel_evaluations += r.hotel_evaluations;
    out.hotel_skipped += r.hotel_skipped;
    out.hotel_violations += r.hotel_violations;
    merge_first(out.first_violation, r.first_violation);
    merge_first(out.first_hotel_violation, r.first_hotel_violation);
  }
  if (out.theorems_checked > 0) out.models_checked = models.size();
  out.elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  return out;
}

}  // namespace evlogic
