#include "treelab/tree.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace treelab {

namespace {

bool is_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
}

bool is_valid_name(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), is_name_char);
}

}  // namespace

std::string_view to_string(RegionTag tag) {
  switch (tag) {
    case RegionTag::none: return "none";
    case RegionTag::spine: return "spine";
    case RegionTag::P: return "P";
    case RegionTag::R: return "R";
    case RegionTag::S: return "S";
    case RegionTag::A: return "A";
    case RegionTag::B: return "B";
  }
  return "none";
}

std::string_view to_string(TreeViolation::Kind kind) {
  using K = TreeViolation::Kind;
  switch (kind) {
    case K::dangling_arc: return "dangling_arc";
    case K::self_loop: return "self_loop";
    case K::multiple_parents: return "multiple_parents";
    case K::no_root: return "no_root";
    case K::multiple_roots: return "multiple_roots";
    case K::unreachable: return "unreachable";
    case K::cycle: return "cycle";
  }
  return "unknown";
}

ParseError::ParseError(const std::string& what, std::size_t position)
    : std::runtime_error(what + " at position " + std::to_string(position)), position_(position) {}

// ---------------------------------------------------------------------------
// Digraph

std::size_t Digraph::add_node(Node n) {
  nodes.push_back(std::move(n));
  return nodes.size() - 1;
}

void Digraph::add_arc(std::size_t from, std::size_t to) { arcs.emplace(from, to); }

std::vector<std::size_t> Digraph::in_degrees() const {
  std::vector<std::size_t> deg(nodes.size(), 0);
  for (auto [a, b] : arcs) {
    if (b < deg.size()) ++deg[b];
  }
  return deg;
}

std::vector<TreeViolation> validate(const Digraph& g) {
  using K = TreeViolation::Kind;
  std::vector<TreeViolation> out;
  const std::size_t n = g.size();
  auto label = [&](std::size_t v) { return v < n ? "\"" + g.nodes[v].name + "\"" : "#" + std::to_string(v); };

  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n, 0);
  for (auto [a, b] : g.arcs) {
    if (a >= n || b >= n) {
      out.push_back({K::dangling_arc, b, "arc " + label(a) + " -> " + label(b) + " has an endpoint outside the node set"});
      continue;
    }
    if (a == b) {
      out.push_back({K::self_loop, a, "self-loop on " + label(a)});
      continue;
    }
    succ[a].push_back(b);
    ++indeg[b];
  }
  if (n == 0) return out;

  std::vector<std::size_t> roots;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) roots.push_back(v);
    if (indeg[v] > 1) {
      out.push_back({K::multiple_parents, v, label(v) + " has in-degree " + std::to_string(indeg[v])});
    }
  }
  if (roots.empty()) {
    out.push_back({K::no_root, 0, "no node has in-degree 0"});
  } else if (roots.size() > 1) {
    std::string names;
    for (auto r : roots) names += (names.empty() ? "" : ", ") + label(r);
    out.push_back({K::multiple_roots, roots[1], "several nodes have in-degree 0: " + names});
  }

  // Kahn's algorithm: whatever is left over sits on or behind a cycle.
  std::vector<std::size_t> remaining = indeg;
  std::deque<std::size_t> queue(roots.begin(), roots.end());
  std::vector<bool> removed(n, false);
  while (!queue.empty()) {
    auto v = queue.front();
    queue.pop_front();
    removed[v] = true;
    for (auto w : succ[v]) {
      if (--remaining[w] == 0) queue.push_back(w);
    }
  }
  std::vector<std::size_t> cyclic;
  for (std::size_t v = 0; v < n; ++v) {
    if (!removed[v]) cyclic.push_back(v);
  }
  if (!cyclic.empty()) {
    out.push_back({K::cycle, cyclic.front(), "cycle through " + label(cyclic.front())});
  }

  if (roots.size() == 1) {
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> stack{roots.front()};
    seen[roots.front()] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (auto w : succ[v]) {
        if (!seen[w]) {
          seen[w] = true;
          stack.push_back(w);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (!seen[v]) out.push_back({K::unreachable, v, label(v) + " is not reachable from the root"});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Tree

Tree Tree::from_parents(std::vector<std::string> names, const std::vector<std::optional<NodeId>>& parents,
                        std::vector<std::string> labels, std::vector<RegionTag> regions) {
  const std::size_t n = names.size();
  if (parents.size() != n) throw InvalidTree("parent table size does not match node count");
  if (!labels.empty() && labels.size() != n) throw InvalidTree("label table size does not match node count");
  if (!regions.empty() && regions.size() != n) throw InvalidTree("region table size does not match node count");

  std::unordered_map<std::string_view, std::size_t> seen;
  for (std::size_t v = 0; v < n; ++v) {
    if (!is_valid_name(names[v])) throw InvalidTree("invalid node name \"" + names[v] + "\"");
    if (!seen.emplace(names[v], v).second) throw InvalidTree("duplicate node name \"" + names[v] + "\"");
  }
  for (const auto& l : labels) {
    if (!l.empty() && !is_valid_name(l)) throw InvalidTree("invalid label \"" + l + "\"");
  }

  Digraph g;
  for (std::size_t v = 0; v < n; ++v) g.add_node({names[v]});
  for (std::size_t v = 0; v < n; ++v) {
    if (parents[v]) g.add_arc(parents[v]->index(), v);
  }
  auto violations = validate(g);
  if (!violations.empty()) throw InvalidTree(violations.front().message);

  Tree t;
  t.names_ = std::move(names);
  t.parent_.assign(n, -1);
  t.children_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (parents[v]) {
      t.parent_[v] = static_cast<std::int32_t>(parents[v]->index());
      t.children_[parents[v]->index()].push_back(NodeId(v));
    } else {
      t.root_ = static_cast<std::uint32_t>(v);
    }
  }
  if (std::any_of(labels.begin(), labels.end(), [](const std::string& l) { return !l.empty(); })) {
    t.labels_ = std::move(labels);
  }
  if (std::any_of(regions.begin(), regions.end(), [](RegionTag r) { return r != RegionTag::none; })) {
    t.regions_ = std::move(regions);
  }
  return t;
}

Tree Tree::from_digraph(const Digraph& g) {
  auto violations = validate(g);
  if (!violations.empty()) throw InvalidTree(violations.front().message);
  std::vector<std::string> names;
  std::vector<std::optional<NodeId>> parents(g.size());
  std::vector<RegionTag> regions;
  for (const auto& node : g.nodes) {
    names.push_back(node.name);
    regions.push_back(node.region);
  }
  for (auto [a, b] : g.arcs) parents[b] = NodeId(a);
  return from_parents(std::move(names), parents, {}, std::move(regions));
}

NodeId Tree::root() const {
  if (empty()) throw std::logic_error("the empty tree has no root");
  return NodeId(root_);
}

std::optional<NodeId> Tree::parent(NodeId v) const {
  auto p = parent_[v.index()];
  if (p < 0) return std::nullopt;
  return NodeId(static_cast<std::size_t>(p));
}

std::optional<NodeId> Tree::find(std::string_view name) const {
  for (std::size_t v = 0; v < names_.size(); ++v) {
    if (names_[v] == name) return NodeId(v);
  }
  return std::nullopt;
}

NodeId Tree::at(std::string_view name) const {
  if (auto v = find(name)) return *v;
  throw std::out_of_range("unknown node \"" + std::string(name) + "\"");
}

const std::string& Tree::label(NodeId v) const {
  static const std::string none;
  return labels_.empty() ? none : labels_[v.index()];
}

RegionTag Tree::region(NodeId v) const { return regions_.empty() ? RegionTag::none : regions_[v.index()]; }

Tree Tree::with_regions(std::vector<RegionTag> regions) const {
  if (regions.size() != size()) throw InvalidTree("region table size does not match node count");
  Tree copy = *this;
  copy.regions_ = std::move(regions);
  return copy;
}

std::vector<NodeId> Tree::preorder() const {
  std::vector<NodeId> out;
  if (empty()) return out;
  out.reserve(size());
  std::vector<NodeId> stack{root()};
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    out.push_back(v);
    const auto& ch = children_[v.index()];
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  return out;
}

std::vector<std::pair<NodeId, NodeId>> Tree::arcs() const {
  std::vector<std::pair<NodeId, NodeId>> out;
  for (std::size_t v = 0; v < size(); ++v) {
    for (auto c : children_[v]) out.emplace_back(NodeId(v), c);
  }
  return out;
}

bool Tree::is_proper_ancestor(NodeId a, NodeId b) const {
  auto p = parent_[b.index()];
  while (p >= 0) {
    if (static_cast<std::size_t>(p) == a.index()) return true;
    p = parent_[static_cast<std::size_t>(p)];
  }
  return false;
}

std::optional<std::vector<NodeId>> Tree::path(NodeId a, NodeId b) const {
  std::vector<NodeId> rev{b};
  auto v = b;
  while (v != a) {
    auto p = parent(v);
    if (!p) return std::nullopt;
    v = *p;
    rev.push_back(v);
  }
  return std::vector<NodeId>(rev.rbegin(), rev.rend());
}

std::size_t Tree::depth(NodeId v) const {
  std::size_t d = 0;
  for (auto p = parent_[v.index()]; p >= 0; p = parent_[static_cast<std::size_t>(p)]) ++d;
  return d;
}

std::size_t Tree::height() const {
  std::size_t h = 0;
  for (std::size_t v = 0; v < size(); ++v) {
    if (children_[v].empty()) h = std::max(h, depth(NodeId(v)) + 1);
  }
  return h;
}

std::size_t Tree::leaf_count() const {
  return static_cast<std::size_t>(
      std::count_if(children_.begin(), children_.end(), [](const auto& c) { return c.empty(); }));
}

std::size_t Tree::subtree_size(NodeId v) const {
  std::size_t count = 0;
  std::vector<NodeId> stack{v};
  while (!stack.empty()) {
    auto u = stack.back();
    stack.pop_back();
    ++count;
    for (auto c : children_[u.index()]) stack.push_back(c);
  }
  return count;
}

Digraph Tree::to_digraph() const {
  Digraph g;
  for (std::size_t v = 0; v < size(); ++v) g.add_node({names_[v], 0, region(NodeId(v))});
  for (auto [a, b] : arcs()) g.add_arc(a.index(), b.index());
  return g;
}

std::vector<NodeId> Tree::nodes() const {
  std::vector<NodeId> out;
  out.reserve(size());
  for (std::size_t v = 0; v < size(); ++v) out.emplace_back(v);
  return out;
}

// ---------------------------------------------------------------------------
// Text format

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Tree parse() {
    skip_ws();
    node(std::nullopt);
    skip_ws();
    if (pos_ != text_.size()) throw ParseError("unexpected trailing input '" + std::string(1, text_[pos_]) + "'", pos_);
    return Tree::from_parents(std::move(names_), parents_, std::move(labels_));
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' || text_[pos_] == '\n' || text_[pos_] == '\r')) {
      ++pos_;
    }
  }

  std::string name(const char* what) {
    skip_ws();
    auto start = pos_;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) ++pos_;
    if (start == pos_) {
      if (pos_ == text_.size()) throw ParseError(std::string("expected ") + what + ", found end of input", pos_);
      throw ParseError(std::string("expected ") + what + ", found '" + text_[pos_] + "'", pos_);
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void node(std::optional<NodeId> parent) {
    auto start = pos_;
    auto n = name("node name");
    if (!seen_.emplace(n).second) throw ParseError("duplicate node name \"" + n + "\"", start);
    std::string lbl;
    if (accept(':')) lbl = name("label");
    NodeId self(names_.size());
    names_.push_back(std::move(n));
    parents_.push_back(parent);
    labels_.push_back(std::move(lbl));
    if (accept('(')) {
      do {
        node(self);
      } while (accept(','));
      if (!accept(')')) {
        skip_ws();
        throw ParseError(pos_ < text_.size() ? "expected ',' or ')', found '" + std::string(1, text_[pos_]) + "'"
                                             : "expected ')', found end of input",
                         pos_);
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<std::string> names_;
  std::vector<std::optional<NodeId>> parents_;
  std::vector<std::string> labels_;
  std::set<std::string, std::less<>> seen_;
};

void print_node(const Tree& t, NodeId v, std::string& out) {
  out += t.name(v);
  if (!t.label(v).empty()) {
    out += ':';
    out += t.label(v);
  }
  auto ch = t.children(v);
  if (ch.empty()) return;
  out += '(';
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (i) out += ',';
    print_node(t, ch[i], out);
  }
  out += ')';
}

}  // namespace

Tree parse_tree(std::string_view text) { return Parser(text).parse(); }

std::string print_tree(const Tree& t) {
  std::string out;
  if (!t.empty()) print_node(t, t.root(), out);
  return out;
}

Digraph disjoint_union(const Tree& t1, const Tree& t2) {
  Digraph g;
  for (auto v : t1.nodes()) g.add_node({"1." + t1.name(v), 1, t1.region(v)});
  for (auto v : t2.nodes()) g.add_node({"2." + t2.name(v), 2, t2.region(v)});
  for (auto [a, b] : t1.arcs()) g.add_arc(a.index(), b.index());
  for (auto [a, b] : t2.arcs()) g.add_arc(t1.size() + a.index(), t1.size() + b.index());
  return g;
}

}  // namespace treelab
