#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treelab {

/// Index of a node inside its owning Tree (or Digraph). Indices are dense,
/// 0..size-1, and for parsed trees they follow the literal's preorder.
struct NodeId {
  std::uint32_t value = 0;

  constexpr NodeId() = default;
  constexpr explicit NodeId(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(NodeId, NodeId) = default;
};

/// Provenance of a node in a generated family instance.
enum class RegionTag : std::uint8_t { none, spine, P, R, S, A, B };

std::string_view to_string(RegionTag tag);

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t position);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class InvalidTree : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Plain directed graph with set-semantics arcs. Used for disjoint sums,
/// quotients and anything that is not guaranteed to be a tree.
struct Digraph {
  struct Node {
    std::string name;
    int origin = 0;  // 0: none, 1: first tree, 2: second tree, 3: both
    RegionTag region = RegionTag::none;
  };

  std::vector<Node> nodes;
  std::set<std::pair<std::size_t, std::size_t>> arcs;

  std::size_t size() const { return nodes.size(); }
  std::size_t add_node(Node n);
  void add_arc(std::size_t from, std::size_t to);
  std::vector<std::size_t> in_degrees() const;
};

struct TreeViolation {
  enum class Kind { dangling_arc, self_loop, multiple_parents, no_root, multiple_roots, unreachable, cycle };
  Kind kind;
  std::size_t node = 0;  // offending node (arc head for dangling/self-loop)
  std::string message;
};

std::string_view to_string(TreeViolation::Kind kind);

/// Reports every violated rooted-tree invariant of g. Empty result means g is
/// a valid (possibly empty) rooted tree.
std::vector<TreeViolation> validate(const Digraph& g);

/// Rooted unordered tree with named nodes. Immutable once built.
class Tree {
 public:
  /// The empty tree.
  Tree() = default;

  /// Builds a tree from a parent table; parents[root] must be nullopt.
  /// Throws InvalidTree when the table does not describe a rooted tree or a
  /// name repeats.
  static Tree from_parents(std::vector<std::string> names,
                           const std::vector<std::optional<NodeId>>& parents,
                           std::vector<std::string> labels = {},
                           std::vector<RegionTag> regions = {});

  /// Builds a tree from a digraph; fails when validate(g) is non-empty.
  static Tree from_digraph(const Digraph& g);

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  NodeId root() const;
  std::optional<NodeId> parent(NodeId v) const;
  std::span<const NodeId> children(NodeId v) const { return children_[v.index()]; }
  bool is_leaf(NodeId v) const { return children_[v.index()].empty(); }

  const std::string& name(NodeId v) const { return names_[v.index()]; }
  std::optional<NodeId> find(std::string_view name) const;
  NodeId at(std::string_view name) const;  // throws std::out_of_range

  /// Label of v; the empty string when the tree carries no labels.
  const std::string& label(NodeId v) const;
  bool has_labels() const { return !labels_.empty(); }

  RegionTag region(NodeId v) const;
  bool has_regions() const { return !regions_.empty(); }
  Tree with_regions(std::vector<RegionTag> regions) const;

  /// Nodes in preorder, children visited in index order.
  std::vector<NodeId> preorder() const;
  std::vector<std::pair<NodeId, NodeId>> arcs() const;

  /// True when a is a proper ancestor of b.
  bool is_proper_ancestor(NodeId a, NodeId b) const;
  /// Node sequence of the unique path a ~> b, or nullopt if b is not a (not
  /// necessarily proper) descendant of a.
  std::optional<std::vector<NodeId>> path(NodeId a, NodeId b) const;

  std::size_t depth(NodeId v) const;
  /// Number of nodes on the longest root-to-leaf path; 0 for the empty tree.
  std::size_t height() const;
  std::size_t leaf_count() const;
  std::size_t subtree_size(NodeId v) const;

  Digraph to_digraph() const;

  std::vector<NodeId> nodes() const;

 private:
  std::vector<std::string> names_;
  std::vector<std::int32_t> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<std::string> labels_;
  std::vector<RegionTag> regions_;
  std::uint32_t root_ = 0;
};

/// Parses the tree literal grammar:
///   node := NAME (':' NAME)? ('(' node (',' node)* ')')?
Tree parse_tree(std::string_view text);

/// Inverse of parse_tree; children printed in index order.
std::string print_tree(const Tree& t);

/// Disjoint sum of two trees. Node names are prefixed with "1." / "2." and
/// every node records its origin tree.
Digraph disjoint_union(const Tree& t1, const Tree& t2);

}  // namespace treelab
