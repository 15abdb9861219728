#include "evlogic/unravel.hpp"

#include <algorithm>
#include <random>

#include "evlogic/random.hpp"

namespace evlogic::unravel {

Edge Edge::of(std::vector<SeqId> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return {false, std::move(members)};
}

bool Edge::contains(SeqId e) const { return !star && std::binary_search(members.begin(), members.end(), e); }

SeqId SequenceUniverse::intern(LabeledSequence s) {
  if (auto it = index_.find(s); it != index_.end()) return it->second;
  SeqId id = seqs_.size();
  index_.emplace(s, id);
  seqs_.push_back(std::move(s));
  generation_.push_back(generations_);
  return id;
}

SeqId SequenceUniverse::singleton(NodeLabel x) {
  if (generations_ != 0) throw GenerationError("single-node sequences belong to stage 0");
  return intern({{x}, {}});
}

std::size_t SequenceUniverse::next_generation() { return ++generations_; }

void SequenceUniverse::require_earlier(SeqId id, const char* role) const {
  if (id >= seqs_.size())
    throw GenerationError(std::string(role) + " " + std::to_string(id) + " does not exist yet");
  if (generation_[id] >= generations_)
    throw GenerationError(std::string(role) + " " + std::to_string(id) + " is from stage " +
                          std::to_string(generation_[id]) + ", not before stage " + std::to_string(generations_));
}

SeqId SequenceUniverse::concat(SeqId w, const Edge& edge, NodeLabel y) {
  if (generations_ == 0) throw GenerationError("open a stage with next_generation() before extending");
  require_earlier(w, "sequence");
  if (!edge.star)
    for (auto m : edge.members) require_earlier(m, "edge member");
  LabeledSequence s = seqs_[w];
  s.edges.push_back(edge.star ? Edge::marker() : Edge::of(edge.members));
  s.nodes.push_back(y);
  return intern(std::move(s));
}

std::vector<SeqId> SequenceUniverse::members_of_generation(std::size_t g) const {
  std::vector<SeqId> out;
  for (SeqId i = 0; i < seqs_.size(); ++i)
    if (generation_[i] == g) out.push_back(i);
  return out;
}

NodeLabel head(const LabeledSequence& w) { return w.nodes.back(); }

std::size_t common_prefix(const LabeledSequence& w, const LabeledSequence& u) {
  if (w.nodes.front() != u.nodes.front()) return 0;
  std::size_t k = 0;
  const std::size_t limit = std::min(w.length(), u.length());
  while (k < limit && w.edges[k] == u.edges[k] && w.nodes[k + 1] == u.nodes[k + 1]) ++k;
  return k;
}

std::optional<std::size_t> sim_witness(const SequenceUniverse& U, SeqId w, SeqId u, SeqId e) {
  const auto& a = U.at(w);
  const auto& b = U.at(u);
  if (a.nodes.front() != b.nodes.front()) return std::nullopt;
  const std::size_t k = common_prefix(a, b);
  auto tail_ok = [&](const LabeledSequence& s) {
    for (std::size_t i = k; i < s.length(); ++i)
      if (!s.edges[i].star && !s.edges[i].contains(e)) return false;
    return true;
  };
  if (tail_ok(a) && tail_ok(b)) return k;
  return std::nullopt;
}

bool sim(const SequenceUniverse& U, SeqId w, SeqId u, SeqId e) { return sim_witness(U, w, u, e).has_value(); }

SequenceUniverse random_universe(std::uint64_t seed, const UniverseParams& params) {
  Rng rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  auto label = [&] { return NodeLabel{static_cast<std::uint32_t>(pick(params.label_pool))}; };

  SequenceUniverse U;
  const std::size_t roots = std::max<std::size_t>(1, std::min(params.size, 1 + pick(std::min(params.label_pool, params.size))));
  while (U.size() < roots) U.singleton(label());

  std::size_t stalls = 0;
  while (U.size() < params.size) {
    U.next_generation();
    // Everything built so far is from an earlier stage.
    const std::size_t available = U.size();
    const std::size_t batch = 1 + pick(3);
    for (std::size_t i = 0; i < batch && U.size() < params.size; ++i) {
      const SeqId w = pick(available);
      Edge edge;
      if (pick(3) == 0) {
        edge = Edge::marker();
      } else {
        std::vector<SeqId> members;
        const std::size_t n = pick(params.max_edge_members + 1);
        for (std::size_t m = 0; m < n; ++m) members.push_back(pick(available));
        edge = Edge::of(std::move(members));
      }
      const std::size_t before = U.size();
      U.concat(w, edge, label());
      stalls = U.size() == before ? stalls + 1 : 0;
      if (stalls > 1000) return U;
    }
  }
  return U;
}

namespace {

// The five conditions on k, checked literally.
bool conditions_hold(const LabeledSequence& w, const LabeledSequence& u, SeqId e, std::size_t k) {
  const std::size_t n = w.length(), m = u.length();
  if (k > std::min(n, m)) return false;
  for (std::size_t i = 0; i <= k; ++i)
    if (w.nodes[i] != u.nodes[i]) return false;
  for (std::size_t i = 1; i <= k; ++i)
    if (w.edges[i - 1] != u.edges[i - 1]) return false;
  for (std::size_t i = k + 1; i <= n; ++i)
    if (!w.edges[i - 1].star && !w.edges[i - 1].contains(e)) return false;
  for (std::size_t i = k + 1; i <= m; ++i)
    if (!u.edges[i - 1].star && !u.edges[i - 1].contains(e)) return false;
  return true;
}

}  // namespace

UnravelPropertyReport check_unravel_properties(std::uint64_t seed, std::size_t count, const UniverseParams& params) {
  UnravelPropertyReport r;
  for (std::size_t t = 0; t < count; ++t) {
    const SequenceUniverse U = random_universe(derive_seed(seed, t), params);
    const std::size_t n = U.size();
    ++r.universes;
    r.sequences += n;

    for (SeqId w = 0; w < n; ++w) {
      const auto& s = U.at(w);
      for (const auto& edge : s.edges)
        if (edge.contains(w)) ++r.well_foundedness_failures;
    }

    std::vector<char> rel(n * n);
    for (SeqId e = 0; e < n; ++e) {
      for (SeqId w = 0; w < n; ++w)
        for (SeqId u = 0; u < n; ++u) {
          auto k = sim_witness(U, w, u, e);
          rel[w * n + u] = k.has_value();
          const auto& a = U.at(w);
          const auto& b = U.at(u);
          const std::size_t lcp = common_prefix(a, b);
          bool any = false;
          for (std::size_t j = 0; j <= std::min(a.length(), b.length()); ++j)
            if (conditions_hold(a, b, e, j)) {
              any = true;
              if (j > lcp) ++r.witness_failures;
            }
          if (any != k.has_value()) ++r.witness_failures;
        }
      r.pairs_checked += n * n;
      for (SeqId w = 0; w < n; ++w) {
        if (!rel[w * n + w]) ++r.reflexivity_failures;
        for (SeqId u = 0; u < n; ++u) {
          if (rel[w * n + u] != rel[u * n + w]) ++r.symmetry_failures;
          if (!rel[w * n + u]) continue;
          for (SeqId v = 0; v < n; ++v)
            if (rel[u * n + v] && !rel[w * n + v]) ++r.transitivity_failures;
        }
      }
    }
  }
  return r;
}

}  // namespace evlogic::unravel
