#pragma once

#include <boost/dynamic_bitset.hpp>
#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "evlogic/formula.hpp"

namespace evlogic {

using Block = std::vector<std::string>;
using Partition = std::vector<Block>;
using WorldSet = boost::dynamic_bitset<std::uint64_t>;
using EvidenceSubset = std::set<std::string>;

/// Model document as written: worlds, one partition per evidence id, and a
/// valuation. Nothing is checked until validate_model / FiniteEvidenceModel.
struct ModelDocument {
  std::vector<std::string> worlds;
  std::map<std::string, Partition> evidence;
  std::map<std::string, std::vector<std::string>> valuation;
};

struct Violation {
  enum class Kind { no_worlds, duplicate_world, unknown_world, empty_block, overlapping_blocks, non_exhaustive };
  Kind kind;
  std::string evidence;  // empty for world-list and valuation problems
  std::string world;
  std::string message;
};

/// Empty result means the document is a valid model.
std::vector<Violation> validate_model(const ModelDocument& m);

/// Partition induced by a pair list, which must already be reflexive,
/// symmetric and transitive on `worlds`; returns the failures otherwise.
/// Relations are never repaired.
std::pair<Partition, std::vector<std::string>> partition_from_pairs(
    const std::vector<std::string>& worlds, const std::vector<std::pair<std::string, std::string>>& pairs);

/// A validated, indexed model. Immutable; safe to share across threads.
class FiniteEvidenceModel {
 public:
  /// Throws ModelError naming every violation.
  explicit FiniteEvidenceModel(ModelDocument doc);

  const ModelDocument& document() const { return doc_; }
  std::size_t world_count() const { return doc_.worlds.size(); }
  const std::vector<std::string>& evidence_ids() const { return evidence_ids_; }

  /// Throws ModelError for an unknown world.
  std::size_t world_index(std::string_view world) const;

  /// Common refinement of the partitions in F; F = {} gives one block.
  /// Throws ModelError for an unknown evidence id.
  Partition indist(const EvidenceSubset& F) const;

  /// Worlds satisfying f. [.] quantifies over every subset of the evidence
  /// set; [] uses the whole set. Atoms missing from the valuation are false.
  WorldSet extension(const Formula& f) const;
  std::vector<std::string> extension_names(const Formula& f) const;

  bool satisfies(std::string_view world, const Formula& f) const;

  /// Evaluating [.] enumerates 2^|E| subsets; larger evidence sets are refused.
  static constexpr std::size_t max_evidence_for_attain = 20;

 private:
  using BlockIds = std::vector<std::uint32_t>;
  BlockIds refine(const BlockIds& a, const BlockIds& b) const;
  std::vector<WorldSet> blocks_of(const BlockIds& ids) const;
  WorldSet box(const WorldSet& inner, const std::vector<WorldSet>& blocks) const;
  const std::vector<std::vector<WorldSet>>& subset_blocks() const;

  ModelDocument doc_;
  std::vector<std::string> evidence_ids_;
  std::map<std::string, std::size_t, std::less<>> world_index_;
  std::vector<BlockIds> evidence_blocks_;  // per evidence id, block id of each world
  std::map<std::string, WorldSet, std::less<>> valuation_;
  std::vector<WorldSet> full_blocks_;      // blocks of ~E

  struct Lazy {
    std::once_flag once;
    std::vector<std::vector<WorldSet>> by_mask;
  };
  std::shared_ptr<Lazy> lazy_ = std::make_shared<Lazy>();
};

}  // namespace evlogic
