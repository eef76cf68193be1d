#include "treelab/canonical.hpp"

#include <algorithm>
#include <vector>

namespace treelab {

namespace {

// Postorder so deep chains do not recurse.
std::string encode(const Tree& t, NodeId top) {
  std::vector<std::string> code(t.size());
  std::vector<std::pair<NodeId, bool>> stack{{top, false}};
  while (!stack.empty()) {
    auto [v, expanded] = stack.back();
    stack.pop_back();
    if (!expanded) {
      stack.push_back({v, true});
      for (auto c : t.children(v)) stack.push_back({c, false});
      continue;
    }
    std::vector<std::string> parts;
    parts.reserve(t.children(v).size());
    for (auto c : t.children(v)) parts.push_back(std::move(code[c.index()]));
    std::sort(parts.begin(), parts.end());
    std::string& out = code[v.index()];
    out = "(";
    out += t.label(v);
    for (auto& p : parts) out += p;
    out += ')';
  }
  return std::move(code[top.index()]);
}

}  // namespace

CanonicalCode canonical_code(const Tree& t) {
  if (t.empty()) return {};
  return {encode(t, t.root())};
}

CanonicalCode canonical_code(const Tree& t, NodeId subtree_root) { return {encode(t, subtree_root)}; }

bool are_isomorphic(const Tree& t1, const Tree& t2) {
  return t1.size() == t2.size() && canonical_code(t1) == canonical_code(t2);
}

}  // namespace treelab
