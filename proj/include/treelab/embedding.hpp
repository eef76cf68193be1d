#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "treelab/errors.hpp"
#include "treelab/tree.hpp"

namespace treelab {

/// Injective node map S -> T under which every arc (a, b) of S becomes a
/// path f(a) ~> f(b) in T whose intermediate nodes avoid f(V(S)). The map is
/// only meaningful together with the (source, target) pair it was built for.
struct MinorEmbedding {
  std::vector<NodeId> image;  // indexed by source NodeId

  NodeId operator()(NodeId v) const { return image[v.index()]; }
  std::size_t size() const { return image.size(); }

  friend bool operator==(const MinorEmbedding&, const MinorEmbedding&) = default;
};

/// Candidate map for validation; nullopt marks an unmapped source node.
using CandidateMap = std::vector<std::optional<NodeId>>;

struct EmbeddingViolation {
  enum class Kind { not_total, out_of_range, not_injective, label_mismatch, no_path, intermediate_image };
  Kind kind;
  std::optional<std::pair<NodeId, NodeId>> arc;  // offending source arc
  std::optional<NodeId> node;                    // offending source node
  std::optional<NodeId> witness;                 // offending target node
  std::string reason;
};

std::string_view to_string(EmbeddingViolation::Kind kind);

class InvalidEmbedding : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MultiRootError : public std::runtime_error {
 public:
  explicit MultiRootError(std::vector<NodeId> roots);
  const std::vector<NodeId>& roots() const { return roots_; }

 private:
  std::vector<NodeId> roots_;
};

/// Largest target handled by the bitset-backed searchers.
inline constexpr std::size_t max_search_nodes = 64;

std::vector<EmbeddingViolation> check_embedding(const CandidateMap& f, const Tree& s, const Tree& t);
std::vector<EmbeddingViolation> check_embedding(const MinorEmbedding& f, const Tree& s, const Tree& t);

MinorEmbedding identity_embedding(const Tree& t);
CandidateMap to_candidate(const MinorEmbedding& f);

/// Nodes of w with no proper ancestor in w.
std::vector<NodeId> subset_roots(const Tree& t, std::span<const NodeId> w);

/// Tree on w where each node hangs from its nearest proper ancestor in w.
/// Names, labels and region tags are inherited from t; node order follows
/// t's index order. Throws MultiRootError when w has several roots.
Tree induced_minor(const Tree& t, std::span<const NodeId> w);

/// Visits minor embeddings of s into t in deterministic order: source nodes
/// are assigned in preorder, target candidates in index order. The visitor
/// returns false to stop early.
void for_each_embedding(const Tree& s, const Tree& t, const std::function<bool(const MinorEmbedding&)>& visit);

std::vector<MinorEmbedding> enumerate_embeddings(const Tree& s, const Tree& t,
                                                 std::optional<std::size_t> limit = std::nullopt);

/// Backtracking minor test; returns the first embedding in search order.
std::optional<MinorEmbedding> find_minor_embedding(const Tree& s, const Tree& t);
bool is_minor(const Tree& s, const Tree& t);

/// Independent minor test: some |s|-subset of V(t) induces a minor
/// isomorphic to s. Returns the subset (in index order) on success.
std::optional<std::vector<NodeId>> find_minor_subset(const Tree& s, const Tree& t);
bool is_minor_by_subsets(const Tree& s, const Tree& t);

/// True iff there is no path between a and b in either direction. A node is
/// never incomparable with itself (the trivial path exists).
bool incomparable(const Tree& t, NodeId a, NodeId b);

struct Lemma4Counterwitness {
  NodeId a, b;  // incomparable in the source, comparable images
};

/// Checks that f maps every incomparable source pair to an incomparable
/// target pair. Throws InvalidEmbedding if f is not a minor embedding.
std::optional<Lemma4Counterwitness> check_lemma4(const MinorEmbedding& f, const Tree& s, const Tree& t);

/// Image of a source path: the concatenation of the target paths of its
/// arcs. Throws std::invalid_argument when p is not a downward path of s.
std::vector<NodeId> map_path(const MinorEmbedding& f, const Tree& s, const Tree& t, std::span<const NodeId> p);

}  // namespace treelab
