#pragma once

#include <string>

#include "treelab/tree.hpp"

namespace treelab {

/// Order-invariant isomorphism key. A leaf encodes as "()", an inner node as
/// "(" + label + sorted child codes + ")". The empty tree encodes as "".
struct CanonicalCode {
  std::string code;

  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

CanonicalCode canonical_code(const Tree& t);
CanonicalCode canonical_code(const Tree& t, NodeId subtree_root);

bool are_isomorphic(const Tree& t1, const Tree& t2);

}  // namespace treelab
