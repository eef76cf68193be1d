#include "treelab/quotient.hpp"

#include <algorithm>
#include <iterator>
#include <stdexcept>

namespace treelab {

std::string_view to_string(Prop21Violation::Kind kind) {
  return kind == Prop21Violation::Kind::shortcut ? "i" : "ii";
}

bool ThetaRelation::related(TaggedNode a, TaggedNode b) const {
  auto cls = [&](TaggedNode x) { return x.origin == 1 ? class_of_1.at(x.node.index()) : class_of_2.at(x.node.index()); };
  return cls(a) == cls(b);
}

std::size_t ThetaRelation::merged_count() const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [](const auto& c) { return c.size() == 2; }));
}

namespace {

void require_embedding(const MinorEmbedding& g, const Tree& mu, const Tree& t, const char* which) {
  auto violations = check_embedding(g, mu, t);
  if (!violations.empty()) {
    throw InvalidEmbedding(std::string(which) + " is not a minor embedding: " + violations.front().reason);
  }
}

}  // namespace

ThetaRelation build_theta(const Tree& t1, const Tree& t2, const Tree& mu, const MinorEmbedding& g1,
                          const MinorEmbedding& g2) {
  require_embedding(g1, mu, t1, "g1");
  require_embedding(g2, mu, t2, "g2");

  constexpr auto unset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> partner(t1.size(), unset);
  for (auto c : mu.nodes()) partner[g1(c).index()] = g2(c).index();

  ThetaRelation theta;
  theta.class_of_1.assign(t1.size(), unset);
  theta.class_of_2.assign(t2.size(), unset);
  for (auto v : t1.nodes()) {
    theta.class_of_1[v.index()] = theta.classes.size();
    std::vector<TaggedNode> members{{1, v}};
    if (partner[v.index()] != unset) {
      members.push_back({2, NodeId(partner[v.index()])});
      theta.class_of_2[partner[v.index()]] = theta.classes.size();
    }
    theta.classes.push_back(std::move(members));
  }
  for (auto v : t2.nodes()) {
    if (theta.class_of_2[v.index()] != unset) continue;
    theta.class_of_2[v.index()] = theta.classes.size();
    theta.classes.push_back({{2, v}});
  }

  // Every tagged node sits in exactly one class; this is what makes the
  // relation reflexive, symmetric and transitive.
  std::size_t members = 0;
  for (std::size_t k = 0; k < theta.classes.size(); ++k) {
    for (auto m : theta.classes[k]) {
      ++members;
      const auto& table = m.origin == 1 ? theta.class_of_1 : theta.class_of_2;
      if (table.at(m.node.index()) != k) throw std::logic_error("theta class table is inconsistent");
    }
  }
  if (members != t1.size() + t2.size() || theta.merged_count() != mu.size()) {
    throw std::logic_error("theta classes do not partition the disjoint sum");
  }
  return theta;
}

std::vector<std::size_t> QuotientGraph::mu_image() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (classes[k].in_mu_image) out.push_back(k);
  }
  return out;
}

Digraph QuotientGraph::to_digraph() const {
  Digraph g;
  for (const auto& c : classes) {
    int origin = c.members.size() == 2 ? 3 : c.members.empty() ? 0 : c.members.front().origin;
    g.add_node({c.name, origin, RegionTag::none});
  }
  g.arcs = arcs;
  return g;
}

QuotientGraph build_quotient(const Tree& t1, const Tree& t2, const Tree& mu, const MinorEmbedding& g1,
                             const MinorEmbedding& g2) {
  auto theta = build_theta(t1, t2, mu, g1, g2);
  QuotientGraph q;
  for (const auto& members : theta.classes) {
    QuotientClass c;
    c.members = members;
    for (auto m : members) {
      const auto& tree = m.origin == 1 ? t1 : t2;
      c.name += (c.name.empty() ? "" : "=") + std::to_string(m.origin) + "." + tree.name(m.node);
    }
    c.in_mu_image = members.size() == 2;
    q.classes.push_back(std::move(c));
  }
  q.ell1 = theta.class_of_1;
  q.ell2 = theta.class_of_2;
  for (auto [a, b] : t1.arcs()) q.arcs.emplace(q.ell1[a.index()], q.ell1[b.index()]);
  for (auto [a, b] : t2.arcs()) q.arcs.emplace(q.ell2[a.index()], q.ell2[b.index()]);
  for (auto c : mu.nodes()) {
    q.mu_via_g1.push_back(q.ell1[g1(c).index()]);
    q.mu_via_g2.push_back(q.ell2[g2(c).index()]);
  }
  return q;
}

std::vector<std::string> check_eq2_eq3(const QuotientGraph& q) {
  std::vector<std::string> out;
  const std::size_t n = q.classes.size();
  std::set<std::size_t> image1, image2;
  for (auto k : q.ell1) {
    if (k >= n) out.push_back("ell1 maps to missing class " + std::to_string(k));
    image1.insert(k);
  }
  for (auto k : q.ell2) {
    if (k >= n) out.push_back("ell2 maps to missing class " + std::to_string(k));
    image2.insert(k);
  }

  std::set<std::size_t> all;
  for (std::size_t k = 0; k < n; ++k) all.insert(k);
  std::set<std::size_t> covered = image1;
  covered.insert(image2.begin(), image2.end());
  if (covered != all) out.push_back("classes differ from the union of the two projections");

  std::set<std::size_t> common;
  std::set_intersection(image1.begin(), image1.end(), image2.begin(), image2.end(),
                        std::inserter(common, common.end()));
  std::set<std::size_t> via1(q.mu_via_g1.begin(), q.mu_via_g1.end());
  std::set<std::size_t> via2(q.mu_via_g2.begin(), q.mu_via_g2.end());
  if (common != via1) out.push_back("projection intersection differs from ell1(g1(V(mu)))");
  if (common != via2) out.push_back("projection intersection differs from ell2(g2(V(mu)))");
  auto flagged = q.mu_image();
  if (common != std::set<std::size_t>(flagged.begin(), flagged.end())) {
    out.push_back("projection intersection differs from the flagged common image");
  }

  const std::size_t mu_size = q.mu_via_g1.size();
  if (n + mu_size != q.ell1.size() + q.ell2.size()) {
    out.push_back("class count " + std::to_string(n) + " differs from |T1| + |T2| - |mu| = " +
                  std::to_string(q.ell1.size() + q.ell2.size() - mu_size));
  }
  return out;
}

namespace {

std::vector<std::vector<std::size_t>> successors(const QuotientGraph& q) {
  std::vector<std::vector<std::size_t>> succ(q.classes.size());
  for (auto [a, b] : q.arcs) succ[a].push_back(b);
  return succ;
}

void collect_paths(const std::vector<std::vector<std::size_t>>& succ, std::size_t w, ClassPath& current,
                   std::vector<bool>& on_path, std::vector<ClassPath>& out) {
  const auto v = current.back();
  for (auto next : succ[v]) {
    if (on_path[next]) continue;
    current.push_back(next);
    if (next == w) {
      out.push_back(current);
    } else {
      on_path[next] = true;
      collect_paths(succ, w, current, on_path, out);
      on_path[next] = false;
    }
    current.pop_back();
  }
}

std::string render(const QuotientGraph& q, const ClassPath& p) {
  std::string out;
  for (auto k : p) out += (out.empty() ? "[" : " -> [") + q.classes[k].name + "]";
  return out;
}

// Every simple non-trivial path starting at the last node of current,
// bucketed by its end.
void collect_all_paths(const std::vector<std::vector<std::size_t>>& succ, ClassPath& current,
                       std::vector<bool>& on_path, std::vector<std::vector<ClassPath>>& by_end) {
  const auto v = current.back();
  for (auto next : succ[v]) {
    if (on_path[next]) continue;
    current.push_back(next);
    by_end[next].push_back(current);
    on_path[next] = true;
    collect_all_paths(succ, current, on_path, by_end);
    on_path[next] = false;
    current.pop_back();
  }
}

bool share_intermediate(const ClassPath& a, const ClassPath& b) {
  for (std::size_t i = 1; i + 1 < a.size(); ++i) {
    for (std::size_t j = 1; j + 1 < b.size(); ++j) {
      if (a[i] == b[j]) return true;
    }
  }
  return false;
}

}  // namespace

std::vector<ClassPath> all_paths(const QuotientGraph& q, std::size_t v, std::size_t w) {
  if (v >= q.size() || w >= q.size()) throw std::out_of_range("unknown quotient class");
  std::vector<ClassPath> out;
  if (v == w) return out;
  auto succ = successors(q);
  ClassPath current{v};
  std::vector<bool> on_path(q.size(), false);
  on_path[v] = true;
  collect_paths(succ, w, current, on_path, out);
  std::sort(out.begin(), out.end());
  return out;
}

Digraph reduce(const QuotientGraph& q) {
  auto succ = successors(q);
  auto reaches_avoiding = [&](std::size_t from, std::size_t target, std::size_t avoid) {
    std::vector<bool> seen(q.size(), false);
    seen[avoid] = true;
    std::vector<std::size_t> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      if (v == target) return true;
      for (auto next : succ[v]) {
        if (!seen[next]) {
          seen[next] = true;
          stack.push_back(next);
        }
      }
    }
    return false;
  };

  Digraph out = q.to_digraph();
  out.arcs.clear();
  for (auto [v, w] : q.arcs) {
    bool subsumed = false;
    for (auto c : succ[v]) {
      if (c != w && c != v && reaches_avoiding(c, w, v)) {
        subsumed = true;
        break;
      }
    }
    if (!subsumed) out.add_arc(v, w);
  }
  return out;
}

Prop21Report check_prop21(const QuotientGraph& q) {
  using Kind = Prop21Violation::Kind;
  Prop21Report report;
  const std::size_t n = q.size();
  const auto succ = successors(q);
  for (std::size_t v = 0; v < n; ++v) {
    std::vector<std::vector<ClassPath>> by_end(n);
    ClassPath start{v};
    std::vector<bool> on_path(n, false);
    on_path[v] = true;
    collect_all_paths(succ, start, on_path, by_end);
    for (std::size_t w = 0; w < n; ++w) {
      auto& paths = by_end[w];
      if (v == w || paths.empty()) continue;
      std::sort(paths.begin(), paths.end());
      const bool has_arc = q.arcs.count({v, w}) > 0;
      const ClassPath arc{v, w};

      if (has_arc && paths.size() > 1) {
        std::vector<ClassPath> others;
        for (const auto& p : paths) {
          if (p != arc) others.push_back(p);
        }
        std::vector<std::string> reasons;
        if (!q.classes[v].in_mu_image || !q.classes[w].in_mu_image) {
          reasons.push_back("endpoints are not both in the common image");
        }
        if (others.size() > 1) reasons.push_back(std::to_string(others.size()) + " alternative paths");
        for (const auto& p : others) {
          for (std::size_t i = 1; i + 1 < p.size(); ++i) {
            if (q.classes[p[i]].in_mu_image) {
              reasons.push_back("alternative path " + render(q, p) + " passes through common class [" +
                                q.classes[p[i]].name + "]");
              break;
            }
          }
        }
        if (!reasons.empty()) {
          std::string reason;
          for (const auto& r : reasons) reason += (reason.empty() ? "" : "; ") + r;
          report.violations.push_back({Kind::shortcut, v, w, others, reason});
        }
      }

      std::vector<ClassPath> offending;
      for (std::size_t i = 0; i < paths.size(); ++i) {
        for (std::size_t j = i + 1; j < paths.size(); ++j) {
          if (paths[i] == arc || paths[j] == arc) continue;
          if (share_intermediate(paths[i], paths[j])) continue;
          for (const auto* p : {&paths[i], &paths[j]}) {
            if (std::find(offending.begin(), offending.end(), *p) == offending.end()) offending.push_back(*p);
          }
        }
      }
      if (!offending.empty()) {
        std::sort(offending.begin(), offending.end());
        std::string reason = "intermediate-disjoint paths without the arc:";
        for (const auto& p : offending) reason += " " + render(q, p) + ";";
        reason.pop_back();
        report.violations.push_back({Kind::diamond, v, w, offending, reason});
      }
    }
  }
  report.holds = report.violations.empty();
  return report;
}

std::size_t eq4_prediction(const Tree& t1, const Tree& t2, std::size_t lcs_size) {
  if (lcs_size > std::min(t1.size(), t2.size())) {
    throw std::invalid_argument("common minor cannot exceed either input");
  }
  return t1.size() + t2.size() - lcs_size;
}

}  // namespace treelab
