#include "treelab/enumerate.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <unordered_set>

#include "treelab/canonical.hpp"

namespace treelab {

namespace {

// levels[0] == 1 is the root; parent of i is the closest earlier node one level up.
Tree tree_from_levels(const std::vector<int>& levels) {
  std::vector<std::string> names;
  std::vector<std::optional<NodeId>> parents(levels.size());
  std::vector<std::size_t> last_at_level(levels.size() + 2, 0);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    names.push_back("n" + std::to_string(i));
    if (i > 0) parents[i] = NodeId(last_at_level[static_cast<std::size_t>(levels[i] - 1)]);
    last_at_level[static_cast<std::size_t>(levels[i])] = i;
  }
  return Tree::from_parents(std::move(names), parents);
}

// Renumbers t so indices follow preorder and names are n0, n1, ...
Tree renumber(const Tree& t) {
  auto order = t.preorder();
  std::vector<std::size_t> pos(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) pos[order[i].index()] = i;
  std::vector<std::string> names;
  std::vector<std::optional<NodeId>> parents(t.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    names.push_back("n" + std::to_string(i));
    if (auto p = t.parent(order[i])) parents[i] = NodeId(pos[p->index()]);
  }
  return Tree::from_parents(std::move(names), parents);
}

void sort_by_code(std::vector<Tree>& trees) {
  std::vector<std::pair<std::string, std::size_t>> keyed;
  keyed.reserve(trees.size());
  for (std::size_t i = 0; i < trees.size(); ++i) keyed.emplace_back(canonical_code(trees[i]).code, i);
  std::sort(keyed.begin(), keyed.end());
  std::vector<Tree> sorted;
  sorted.reserve(trees.size());
  for (auto& [code, i] : keyed) sorted.push_back(std::move(trees[i]));
  trees = std::move(sorted);
}

std::vector<Tree> by_level_sequence(std::size_t n) {
  std::vector<Tree> out;
  std::vector<int> levels(n);
  for (std::size_t i = 0; i < n; ++i) levels[i] = static_cast<int>(i) + 1;
  while (true) {
    out.push_back(tree_from_levels(levels));
    std::size_t p = n;
    for (std::size_t i = n; i-- > 1;) {
      if (levels[i] > 2) {
        p = i;
        break;
      }
    }
    if (p == n) break;
    std::size_t q = p;
    while (levels[--q] != levels[p] - 1) {
    }
    const std::size_t shift = p - q;
    for (std::size_t i = p; i < n; ++i) levels[i] = levels[i - shift];
  }
  return out;
}

std::vector<Tree> by_growth(std::size_t n) {
  std::vector<Tree> current{Tree::from_parents({"n0"}, {std::nullopt})};
  for (std::size_t size = 2; size <= n; ++size) {
    std::vector<Tree> next;
    std::unordered_set<std::string> codes;
    for (const auto& t : current) {
      for (auto v : t.nodes()) {
        std::vector<std::string> names;
        std::vector<std::optional<NodeId>> parents;
        for (auto u : t.nodes()) {
          names.push_back(t.name(u));
          parents.push_back(t.parent(u));
        }
        names.push_back("x");
        parents.push_back(v);
        auto grown = renumber(Tree::from_parents(std::move(names), parents));
        if (codes.insert(canonical_code(grown).code).second) next.push_back(std::move(grown));
      }
    }
    current = std::move(next);
  }
  return current;
}

}  // namespace

std::vector<Tree> generate_trees(std::size_t n, EnumerationStrategy strategy) {
  if (n == 0) throw std::invalid_argument("tree size must be positive");
  auto trees = strategy == EnumerationStrategy::level_sequence ? by_level_sequence(n) : by_growth(n);
  sort_by_code(trees);
  return trees;
}

const std::vector<Tree>& enumerate_trees(std::size_t n, std::size_t cap) {
  if (n == 0) throw std::invalid_argument("tree size must be positive");
  if (n > cap) {
    throw BudgetExceeded("enumeration of size " + std::to_string(n) + " exceeds the cap of " + std::to_string(cap));
  }
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<const std::vector<Tree>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<const std::vector<Tree>>(generate_trees(n, EnumerationStrategy::level_sequence));
  return *slot;
}

}  // namespace treelab
