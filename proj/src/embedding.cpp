#include "treelab/embedding.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "treelab/canonical.hpp"

namespace treelab {

std::string_view to_string(EmbeddingViolation::Kind kind) {
  using K = EmbeddingViolation::Kind;
  switch (kind) {
    case K::not_total: return "not_total";
    case K::out_of_range: return "out_of_range";
    case K::not_injective: return "not_injective";
    case K::label_mismatch: return "label_mismatch";
    case K::no_path: return "no_path";
    case K::intermediate_image: return "intermediate_image";
  }
  return "unknown";
}

namespace {

std::string names_of(const Tree& t, std::span<const NodeId> nodes) {
  std::string out;
  for (auto v : nodes) out += (out.empty() ? "" : ", ") + t.name(v);
  return out;
}

}  // namespace

MultiRootError::MultiRootError(std::vector<NodeId> roots)
    : std::runtime_error("node subset has " + std::to_string(roots.size()) + " roots"), roots_(std::move(roots)) {}

// ---------------------------------------------------------------------------
// Validation

std::vector<EmbeddingViolation> check_embedding(const CandidateMap& f, const Tree& s, const Tree& t) {
  using K = EmbeddingViolation::Kind;
  std::vector<EmbeddingViolation> out;
  std::vector<std::optional<NodeId>> owner(t.size());
  std::vector<bool> in_image(t.size(), false);

  for (auto a : s.nodes()) {
    auto fa = a.index() < f.size() ? f[a.index()] : std::nullopt;
    if (!fa) {
      out.push_back({K::not_total, std::nullopt, a, std::nullopt, "source node " + s.name(a) + " is unmapped"});
      continue;
    }
    if (fa->index() >= t.size()) {
      out.push_back({K::out_of_range, std::nullopt, a, fa, "image of " + s.name(a) + " is not a target node"});
      continue;
    }
    if (auto& prev = owner[fa->index()]) {
      out.push_back({K::not_injective, std::nullopt, a, fa,
                     s.name(*prev) + " and " + s.name(a) + " both map to " + t.name(*fa)});
    } else {
      prev = a;
    }
    in_image[fa->index()] = true;
    if (s.label(a) != t.label(*fa)) {
      out.push_back({K::label_mismatch, std::nullopt, a, fa,
                     "label of " + s.name(a) + " differs from label of " + t.name(*fa)});
    }
  }
  if (f.size() > s.size()) {
    out.push_back({K::not_total, std::nullopt, std::nullopt, std::nullopt, "map has entries beyond the source"});
  }

  auto mapped = [&](NodeId v) -> std::optional<NodeId> {
    if (v.index() >= f.size() || !f[v.index()] || f[v.index()]->index() >= t.size()) return std::nullopt;
    return f[v.index()];
  };
  for (auto [a, b] : s.arcs()) {
    auto fa = mapped(a);
    auto fb = mapped(b);
    if (!fa || !fb) continue;
    auto arc_name = s.name(a) + "->" + s.name(b);
    auto p = t.path(*fa, *fb);
    if (!p || *fa == *fb) {
      out.push_back({K::no_path, std::pair{a, b}, std::nullopt, std::nullopt,
                     "arc " + arc_name + ": no path " + t.name(*fa) + " ~> " + t.name(*fb)});
      continue;
    }
    for (std::size_t i = 1; i + 1 < p->size(); ++i) {
      auto mid = (*p)[i];
      if (in_image[mid.index()]) {
        out.push_back({K::intermediate_image, std::pair{a, b}, std::nullopt, mid,
                       "arc " + arc_name + ": intermediate node " + t.name(mid) + " is in the image"});
      }
    }
  }
  return out;
}

std::vector<EmbeddingViolation> check_embedding(const MinorEmbedding& f, const Tree& s, const Tree& t) {
  return check_embedding(to_candidate(f), s, t);
}

MinorEmbedding identity_embedding(const Tree& t) { return {t.nodes()}; }

CandidateMap to_candidate(const MinorEmbedding& f) { return CandidateMap(f.image.begin(), f.image.end()); }

// ---------------------------------------------------------------------------
// Induced minors

std::vector<NodeId> subset_roots(const Tree& t, std::span<const NodeId> w) {
  std::vector<bool> member(t.size(), false);
  for (auto v : w) member[v.index()] = true;
  std::vector<NodeId> roots;
  for (auto v : w) {
    bool has_ancestor = false;
    for (auto p = t.parent(v); p && !has_ancestor; p = t.parent(*p)) has_ancestor = member[p->index()];
    if (!has_ancestor) roots.push_back(v);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

Tree induced_minor(const Tree& t, std::span<const NodeId> w) {
  if (w.empty()) throw std::invalid_argument("induced minor of an empty node set");
  std::vector<NodeId> sorted(w.begin(), w.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("node subset contains duplicates");
  }
  for (auto v : sorted) {
    if (v.index() >= t.size()) throw std::invalid_argument("node subset is not within the tree");
  }
  auto roots = subset_roots(t, sorted);
  if (roots.size() != 1) throw MultiRootError(std::move(roots));

  std::vector<std::int64_t> pos(t.size(), -1);
  for (std::size_t i = 0; i < sorted.size(); ++i) pos[sorted[i].index()] = static_cast<std::int64_t>(i);
  std::vector<std::string> names;
  std::vector<std::optional<NodeId>> parents(sorted.size());
  std::vector<std::string> labels;
  std::vector<RegionTag> regions;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    auto v = sorted[i];
    names.push_back(t.name(v));
    labels.push_back(t.label(v));
    regions.push_back(t.region(v));
    for (auto p = t.parent(v); p; p = t.parent(*p)) {
      if (pos[p->index()] >= 0) {
        parents[i] = NodeId(static_cast<std::size_t>(pos[p->index()]));
        break;
      }
    }
  }
  return Tree::from_parents(std::move(names), parents, std::move(labels), std::move(regions));
}

// ---------------------------------------------------------------------------
// Backtracking search

namespace {

using Mask = std::uint64_t;

struct Shape {
  std::vector<Mask> desc;  // proper descendants
  std::vector<Mask> anc;   // proper ancestors
  std::vector<std::size_t> subtree;
  std::vector<std::size_t> height;  // nodes on the longest downward path

  explicit Shape(const Tree& t) : desc(t.size(), 0), anc(t.size(), 0), subtree(t.size(), 1), height(t.size(), 1) {
    auto order = t.preorder();
    for (auto v : order) {
      if (auto p = t.parent(v)) anc[v.index()] = anc[p->index()] | (Mask{1} << p->index());
    }
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      auto v = it->index();
      for (auto c : t.children(*it)) {
        desc[v] |= desc[c.index()] | (Mask{1} << c.index());
        subtree[v] += subtree[c.index()];
        height[v] = std::max(height[v], height[c.index()] + 1);
      }
    }
  }
};

void require_searchable(const Tree& t) {
  if (t.size() > max_search_nodes) {
    throw BudgetExceeded("minor search supports trees of at most " + std::to_string(max_search_nodes) + " nodes");
  }
}

class EmbeddingSearch {
 public:
  EmbeddingSearch(const Tree& s, const Tree& t, const std::function<bool(const MinorEmbedding&)>& visit)
      : s_(s), t_(t), visit_(visit), src_(s), dst_(t), order_(s.preorder()) {
    f_.image.assign(s.size(), NodeId{});
  }

  void run() {
    if (s_.empty() || s_.size() > t_.size()) return;
    const auto root = order_.front();
    for (std::size_t y = 0; y < t_.size() && !stopped_; ++y) {
      if (!fits(root, y)) continue;
      f_.image[root.index()] = NodeId(y);
      used_ = Mask{1} << y;
      interior_ = 0;
      extend(1);
    }
  }

 private:
  bool fits(NodeId b, std::size_t y) const {
    return dst_.subtree[y] >= src_.subtree[b.index()] && dst_.height[y] >= src_.height[b.index()] &&
           s_.label(b) == t_.label(NodeId(y));
  }

  void extend(std::size_t i) {
    if (i == order_.size()) {
      if (!visit_(f_)) stopped_ = true;
      return;
    }
    const auto b = order_[i];
    const auto x = f_.image[s_.parent(b)->index()].index();
    for (Mask cand = dst_.desc[x] & ~used_; cand && !stopped_; cand &= cand - 1) {
      const auto y = static_cast<std::size_t>(std::countr_zero(cand));
      const Mask between = dst_.desc[x] & dst_.anc[y];
      if ((between & used_) || ((interior_ >> y) & 1) || !fits(b, y)) continue;
      const Mask saved_interior = interior_;
      f_.image[b.index()] = NodeId(y);
      used_ |= Mask{1} << y;
      interior_ |= between;
      extend(i + 1);
      used_ &= ~(Mask{1} << y);
      interior_ = saved_interior;
    }
  }

  const Tree& s_;
  const Tree& t_;
  const std::function<bool(const MinorEmbedding&)>& visit_;
  Shape src_, dst_;
  std::vector<NodeId> order_;
  MinorEmbedding f_;
  Mask used_ = 0;
  Mask interior_ = 0;
  bool stopped_ = false;
};

}  // namespace

void for_each_embedding(const Tree& s, const Tree& t, const std::function<bool(const MinorEmbedding&)>& visit) {
  require_searchable(s);
  require_searchable(t);
  EmbeddingSearch(s, t, visit).run();
}

std::vector<MinorEmbedding> enumerate_embeddings(const Tree& s, const Tree& t, std::optional<std::size_t> limit) {
  std::vector<MinorEmbedding> out;
  if (limit && *limit == 0) return out;
  for_each_embedding(s, t, [&](const MinorEmbedding& f) {
    out.push_back(f);
    return !limit || out.size() < *limit;
  });
  return out;
}

std::optional<MinorEmbedding> find_minor_embedding(const Tree& s, const Tree& t) {
  std::optional<MinorEmbedding> found;
  for_each_embedding(s, t, [&](const MinorEmbedding& f) {
    found = f;
    return false;
  });
  return found;
}

bool is_minor(const Tree& s, const Tree& t) { return find_minor_embedding(s, t).has_value(); }

// ---------------------------------------------------------------------------
// Subset oracle

std::optional<std::vector<NodeId>> find_minor_subset(const Tree& s, const Tree& t) {
  require_searchable(t);
  const std::size_t k = s.size();
  const std::size_t n = t.size();
  if (k == 0) return std::vector<NodeId>{};
  if (k > n) return std::nullopt;
  const auto target_code = canonical_code(s);
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<NodeId> w(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) w[i] = NodeId(idx[i]);
    if (subset_roots(t, w).size() == 1 && canonical_code(induced_minor(t, w)) == target_code) return w;
    // next combination in lexicographic order
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return std::nullopt;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

bool is_minor_by_subsets(const Tree& s, const Tree& t) { return find_minor_subset(s, t).has_value(); }

// ---------------------------------------------------------------------------
// Incomparability preservation

bool incomparable(const Tree& t, NodeId a, NodeId b) {
  if (a.index() >= t.size() || b.index() >= t.size()) throw std::out_of_range("unknown node");
  if (a == b) return false;
  return !t.is_proper_ancestor(a, b) && !t.is_proper_ancestor(b, a);
}

std::optional<Lemma4Counterwitness> check_lemma4(const MinorEmbedding& f, const Tree& s, const Tree& t) {
  auto violations = check_embedding(f, s, t);
  if (!violations.empty()) throw InvalidEmbedding(violations.front().reason);
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = a + 1; b < s.size(); ++b) {
      if (incomparable(s, NodeId(a), NodeId(b)) && !incomparable(t, f(NodeId(a)), f(NodeId(b)))) {
        return Lemma4Counterwitness{NodeId(a), NodeId(b)};
      }
    }
  }
  return std::nullopt;
}

std::vector<NodeId> map_path(const MinorEmbedding& f, const Tree& s, const Tree& t, std::span<const NodeId> p) {
  if (p.empty()) throw std::invalid_argument("empty path");
  for (auto v : p) {
    if (v.index() >= s.size()) throw std::invalid_argument("path node outside the source tree");
  }
  std::vector<NodeId> out{f(p.front())};
  for (std::size_t i = 1; i < p.size(); ++i) {
    if (s.parent(p[i]) != p[i - 1]) {
      throw std::invalid_argument("not a path: no arc " + s.name(p[i - 1]) + "->" + s.name(p[i]));
    }
    auto segment = t.path(f(p[i - 1]), f(p[i]));
    if (!segment) throw InvalidEmbedding("arc " + names_of(s, p.subspan(i - 1, 2)) + " has no image path");
    out.insert(out.end(), segment->begin() + 1, segment->end());
  }
  return out;
}

}  // namespace treelab
