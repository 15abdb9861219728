#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace evlogic::unravel {

/// Opaque node label standing in for a maximal consistent set.
struct NodeLabel {
  std::uint32_t value;
  auto operator<=>(const NodeLabel&) const = default;
};

using SeqId = std::size_t;

/// Either the marker * or a finite set of sequences (sorted, unique).
struct Edge {
  bool star = false;
  std::vector<SeqId> members;

  static Edge marker() { return {true, {}}; }
  static Edge of(std::vector<SeqId> members);
  bool contains(SeqId e) const;
  auto operator<=>(const Edge&) const = default;
};

/// (X0, e1, X1, ..., en, Xn).
struct LabeledSequence {
  std::vector<NodeLabel> nodes;
  std::vector<Edge> edges;  // edges[i - 1] sits between nodes[i - 1] and nodes[i]

  std::size_t length() const { return edges.size(); }
  auto operator<=>(const LabeledSequence&) const = default;
};

class GenerationError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Sequences built stage by stage. Stage 0 holds single-node sequences;
/// a sequence created while stage t is open may only extend, and only
/// reference in its edge, sequences from stages before t. Structurally equal
/// sequences share one id, so edge-set equality is id-set equality.
class SequenceUniverse {
 public:
  SequenceUniverse() = default;

  /// Adds (x) to stage 0. Only valid before next_generation() is called.
  SeqId singleton(NodeLabel x);

  /// Opens the next stage and returns its number.
  std::size_t next_generation();
  std::size_t current_generation() const { return generations_; }

  /// w :: (edge, y). Throws GenerationError if w or any edge member is not
  /// from an earlier stage (this includes unknown ids, such as the id the
  /// result itself would receive).
  SeqId concat(SeqId w, const Edge& edge, NodeLabel y);

  std::size_t size() const { return seqs_.size(); }
  const LabeledSequence& at(SeqId id) const { return seqs_.at(id); }
  /// Earliest stage containing the sequence.
  std::size_t generation_of(SeqId id) const { return generation_.at(id); }
  std::vector<SeqId> members_of_generation(std::size_t g) const;

 private:
  SeqId intern(LabeledSequence s);
  void require_earlier(SeqId id, const char* role) const;

  std::vector<LabeledSequence> seqs_;
  std::vector<std::size_t> generation_;
  std::map<LabeledSequence, SeqId> index_;
  std::size_t generations_ = 0;
};

/// Last node label.
NodeLabel head(const LabeledSequence& w);

/// Length of the longest shared prefix: largest k <= min(n, m) with equal
/// nodes 0..k and equal edges 1..k (0 also when the first nodes differ).
std::size_t common_prefix(const LabeledSequence& w, const LabeledSequence& u);

/// The index k witnessing w ~e u, if any. When a witness exists the
/// longest common prefix is one, and it is the one returned.
std::optional<std::size_t> sim_witness(const SequenceUniverse& U, SeqId w, SeqId u, SeqId e);

/// w ~e u: some k with a shared prefix up to k beyond which every edge on
/// either side is * or contains e.
bool sim(const SequenceUniverse& U, SeqId w, SeqId u, SeqId e);

struct UniverseParams {
  std::size_t size = 30;
  std::size_t label_pool = 3;
  std::size_t max_edge_members = 2;
};

/// Random stage-built universe with exactly `size` sequences.
SequenceUniverse random_universe(std::uint64_t seed, const UniverseParams& params = {});

struct UnravelPropertyReport {
  std::size_t universes = 0;
  std::size_t sequences = 0;
  std::size_t pairs_checked = 0;
  std::size_t reflexivity_failures = 0;
  std::size_t symmetry_failures = 0;
  std::size_t transitivity_failures = 0;
  std::size_t well_foundedness_failures = 0;
  std::size_t witness_failures = 0;

  std::size_t failures() const {
    return reflexivity_failures + symmetry_failures + transitivity_failures + well_foundedness_failures +
           witness_failures;
  }
};

/// Checks equivalence, well-foundedness and the witness bound exhaustively
/// on `count` random universes.
UnravelPropertyReport check_unravel_properties(std::uint64_t seed, std::size_t count,
                                               const UniverseParams& params = {});

}  // namespace evlogic::unravel
