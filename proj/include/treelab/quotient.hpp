#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "treelab/embedding.hpp"
#include "treelab/tree.hpp"

namespace treelab {

/// A node of the disjoint sum T1 + T2: origin is 1 or 2.
struct TaggedNode {
  int origin = 1;
  NodeId node;

  friend auto operator<=>(const TaggedNode&, const TaggedNode&) = default;
};

/// Equivalence on V(T1) + V(T2) that glues g1(c) to g2(c) for every node c
/// of the common minor. Classes have one or two members.
struct ThetaRelation {
  std::vector<std::vector<TaggedNode>> classes;
  std::vector<std::size_t> class_of_1;  // indexed by T1 node
  std::vector<std::size_t> class_of_2;  // indexed by T2 node

  bool related(TaggedNode a, TaggedNode b) const;
  std::size_t merged_count() const;
};

/// Throws InvalidEmbedding unless g1: mu -> t1 and g2: mu -> t2 are minor
/// embeddings.
ThetaRelation build_theta(const Tree& t1, const Tree& t2, const Tree& mu, const MinorEmbedding& g1,
                          const MinorEmbedding& g2);

struct QuotientClass {
  std::vector<TaggedNode> members;
  std::string name;  // "1.x", "2.x" or "1.x=2.y"
  bool in_mu_image = false;
};

/// Quotient of T1 + T2 by theta. Classes are numbered by first appearance
/// scanning T1 in index order, then the unmerged T2 nodes.
struct QuotientGraph {
  std::vector<QuotientClass> classes;
  std::set<std::pair<std::size_t, std::size_t>> arcs;
  std::vector<std::size_t> ell1;        // V(T1) -> class
  std::vector<std::size_t> ell2;        // V(T2) -> class
  std::vector<std::size_t> mu_via_g1;   // ell1(g1(c)) for c in V(mu)
  std::vector<std::size_t> mu_via_g2;   // ell2(g2(c)) for c in V(mu)

  std::size_t size() const { return classes.size(); }
  std::vector<std::size_t> mu_image() const;
  Digraph to_digraph() const;
};

QuotientGraph build_quotient(const Tree& t1, const Tree& t2, const Tree& mu, const MinorEmbedding& g1,
                             const MinorEmbedding& g2);

/// Extensional check of the covering and intersection identities and the
/// class count |T1| + |T2| - |mu|. Returns the violations found.
std::vector<std::string> check_eq2_eq3(const QuotientGraph& q);

/// Drops every arc (v, w) for which another non-trivial path v ~> w exists.
/// All removals are decided against the original arc set.
Digraph reduce(const QuotientGraph& q);

using ClassPath = std::vector<std::size_t>;

/// All simple non-trivial paths from v to w.
std::vector<ClassPath> all_paths(const QuotientGraph& q, std::size_t v, std::size_t w);

struct Prop21Violation {
  enum class Kind { shortcut, diamond };  // clause (i) and clause (ii)
  Kind kind;
  std::size_t v = 0, w = 0;
  std::vector<ClassPath> paths;
  std::string reason;
};

std::string_view to_string(Prop21Violation::Kind kind);

struct Prop21Report {
  bool holds = true;
  std::vector<Prop21Violation> violations;
};

/// Clause (i): every arc (v, w) that also has a longer path v ~> w joins two
/// classes of the common image, the longer path is unique and has no
/// intermediate class in the common image. Clause (ii): two distinct paths
/// v ~> w with no shared intermediate class only occur when one is the arc.
/// Violations are grouped per (clause, v, w).
Prop21Report check_prop21(const QuotientGraph& q);

/// The refuted size relation |T1| + |T2| - |mu|.
std::size_t eq4_prediction(const Tree& t1, const Tree& t2, std::size_t lcs_size);

}  // namespace treelab
