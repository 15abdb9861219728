#include "evlogic/finite_model.hpp"

#include <algorithm>
#include <sstream>

#include "evlogic/errors.hpp"

namespace evlogic {

std::vector<Violation> validate_model(const ModelDocument& m) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  if (m.worlds.empty()) out.push_back({K::no_worlds, {}, {}, "model has no worlds"});

  std::set<std::string> known;
  for (const auto& w : m.worlds)
    if (!known.insert(w).second) out.push_back({K::duplicate_world, {}, w, "world '" + w + "' listed twice"});

  for (const auto& [id, blocks] : m.evidence) {
    std::map<std::string, std::size_t> owner;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      if (blocks[b].empty())
        out.push_back({K::empty_block, id, {}, "evidence '" + id + "' block " + std::to_string(b + 1) + " is empty"});
      for (const auto& w : blocks[b]) {
        if (!known.count(w)) {
          out.push_back({K::unknown_world, id, w, "evidence '" + id + "' mentions unknown world '" + w + "'"});
          continue;
        }
        auto [it, fresh] = owner.try_emplace(w, b);
        if (!fresh)
          out.push_back({K::overlapping_blocks, id, w,
                         "evidence '" + id + "': world '" + w + "' appears in blocks " +
                             std::to_string(it->second + 1) + " and " + std::to_string(b + 1)});
      }
    }
    for (const auto& w : known)
      if (!owner.count(w))
        out.push_back({K::non_exhaustive, id, w, "evidence '" + id + "' does not cover world '" + w + "'"});
  }

  for (const auto& [atom, ws] : m.valuation)
    for (const auto& w : ws)
      if (!known.count(w))
        out.push_back({K::unknown_world, {}, w, "valuation of '" + atom + "' mentions unknown world '" + w + "'"});
  return out;
}

std::pair<Partition, std::vector<std::string>> partition_from_pairs(
    const std::vector<std::string>& worlds, const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<std::string> errors;
  std::set<std::pair<std::string, std::string>> rel(pairs.begin(), pairs.end());
  std::set<std::string> known(worlds.begin(), worlds.end());
  for (const auto& [a, b] : rel) {
    if (!known.count(a)) errors.push_back("unknown world '" + a + "'");
    if (!known.count(b)) errors.push_back("unknown world '" + b + "'");
  }
  if (!errors.empty()) return {{}, errors};
  for (const auto& w : worlds)
    if (!rel.count({w, w})) errors.push_back("not reflexive: missing (" + w + ", " + w + ")");
  for (const auto& [a, b] : rel)
    if (!rel.count({b, a})) errors.push_back("not symmetric: (" + a + ", " + b + ") without (" + b + ", " + a + ")");
  for (const auto& [a, b] : rel)
    for (auto it = rel.lower_bound({b, std::string()}); it != rel.end() && it->first == b; ++it)
      if (!rel.count({a, it->second}))
        errors.push_back("not transitive: (" + a + ", " + b + ") and (" + b + ", " + it->second + ") without (" +
                         a + ", " + it->second + ")");
  if (!errors.empty()) return {{}, errors};

  Partition blocks;
  std::set<std::string> placed;
  for (const auto& w : worlds) {
    if (placed.count(w)) continue;
    Block b;
    for (const auto& u : worlds)
      if (rel.count({w, u})) {
        b.push_back(u);
        placed.insert(u);
      }
    blocks.push_back(std::move(b));
  }
  return {blocks, {}};
}

FiniteEvidenceModel::FiniteEvidenceModel(ModelDocument doc) : doc_(std::move(doc)) {
  auto violations = validate_model(doc_);
  if (!violations.empty()) {
    std::ostringstream os;
    os << "invalid model:";
    for (const auto& v : violations) os << "\n  " << v.message;
    throw ModelError(os.str());
  }
  const std::size_t n = doc_.worlds.size();
  for (std::size_t i = 0; i < n; ++i) world_index_.emplace(doc_.worlds[i], i);
  for (const auto& [id, blocks] : doc_.evidence) {
    evidence_ids_.push_back(id);
    BlockIds ids(n);
    for (std::size_t b = 0; b < blocks.size(); ++b)
      for (const auto& w : blocks[b]) ids[world_index_.at(w)] = static_cast<std::uint32_t>(b);
    evidence_blocks_.push_back(std::move(ids));
  }
  for (const auto& [atom, ws] : doc_.valuation) {
    WorldSet s(n);
    for (const auto& w : ws) s.set(world_index_.at(w));
    valuation_.emplace(atom, std::move(s));
  }
  BlockIds all(n, 0);
  for (const auto& e : evidence_blocks_) all = refine(all, e);
  full_blocks_ = blocks_of(all);
}

std::size_t FiniteEvidenceModel::world_index(std::string_view world) const {
  auto it = world_index_.find(world);
  if (it == world_index_.end()) throw ModelError("unknown world '" + std::string(world) + "'");
  return it->second;
}

FiniteEvidenceModel::BlockIds FiniteEvidenceModel::refine(const BlockIds& a, const BlockIds& b) const {
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> fresh;
  BlockIds out(a.size());
  for (std::size_t w = 0; w < a.size(); ++w) {
    auto [it, _] = fresh.try_emplace({a[w], b[w]}, static_cast<std::uint32_t>(fresh.size()));
    out[w] = it->second;
  }
  return out;
}

std::vector<WorldSet> FiniteEvidenceModel::blocks_of(const BlockIds& ids) const {
  std::vector<WorldSet> blocks;
  for (std::size_t w = 0; w < ids.size(); ++w) {
    if (ids[w] >= blocks.size()) blocks.resize(ids[w] + 1, WorldSet(ids.size()));
    blocks[ids[w]].set(w);
  }
  return blocks;
}

Partition FiniteEvidenceModel::indist(const EvidenceSubset& F) const {
  BlockIds ids(world_count(), 0);
  for (const auto& e : F) {
    auto it = std::find(evidence_ids_.begin(), evidence_ids_.end(), e);
    if (it == evidence_ids_.end()) throw ModelError("unknown evidence '" + e + "'");
    ids = refine(ids, evidence_blocks_[static_cast<std::size_t>(it - evidence_ids_.begin())]);
  }
  Partition out;
  for (const auto& block : blocks_of(ids)) {
    Block b;
    for (auto w = block.find_first(); w != WorldSet::npos; w = block.find_next(w)) b.push_back(doc_.worlds[w]);
    out.push_back(std::move(b));
  }
  return out;
}

const std::vector<std::vector<WorldSet>>& FiniteEvidenceModel::subset_blocks() const {
  std::call_once(lazy_->once, [this] {
    const std::size_t m = evidence_ids_.size();
    if (m > max_evidence_for_attain)
      throw CapacityError("[.] over " + std::to_string(m) + " evidence items exceeds limit of " +
                          std::to_string(max_evidence_for_attain));
    const std::size_t masks = std::size_t{1} << m;
    std::vector<BlockIds> ids(masks);
    ids[0] = BlockIds(world_count(), 0);
    auto& out = lazy_->by_mask;
    out.resize(masks);
    out[0] = blocks_of(ids[0]);
    for (std::size_t mask = 1; mask < masks; ++mask) {
      std::size_t top = 0;
      while ((mask >> (top + 1)) != 0) ++top;
      ids[mask] = refine(ids[mask & ~(std::size_t{1} << top)], evidence_blocks_[top]);
      out[mask] = blocks_of(ids[mask]);
    }
  });
  return lazy_->by_mask;
}

WorldSet FiniteEvidenceModel::box(const WorldSet& inner, const std::vector<WorldSet>& blocks) const {
  WorldSet out(world_count());
  for (const auto& b : blocks)
    if (b.is_subset_of(inner)) out |= b;
  return out;
}

WorldSet FiniteEvidenceModel::extension(const Formula& f) const {
  switch (f.op()) {
    case Op::atom: {
      auto it = valuation_.find(f.name());
      return it == valuation_.end() ? WorldSet(world_count()) : it->second;
    }
    case Op::negation:
      return ~extension(f.child());
    case Op::implication:
      return ~extension(f.left()) | extension(f.right());
    case Op::know:
      return box(extension(f.child()), full_blocks_);
    case Op::attain: {
      WorldSet inner = extension(f.child());
      WorldSet out(world_count());
      for (const auto& blocks : subset_blocks()) out |= box(inner, blocks);
      return out;
    }
  }
  return WorldSet(world_count());
}

std::vector<std::string> FiniteEvidenceModel::extension_names(const Formula& f) const {
  std::vector<std::string> out;
  auto s = extension(f);
  for (auto w = s.find_first(); w != WorldSet::npos; w = s.find_next(w)) out.push_back(doc_.worlds[w]);
  return out;
}

bool FiniteEvidenceModel::satisfies(std::string_view world, const Formula& f) const {
  auto i = world_index(world);
  return extension(f).test(i);
}

}  // namespace evlogic
