#include "treelab/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <set>
#include <unordered_set>
#include <utility>

#include "treelab/canonical.hpp"
#include "treelab/parallel.hpp"

namespace treelab {

namespace {

void require_nonempty(const Tree& t1, const Tree& t2) {
  if (t1.empty() || t2.empty()) throw std::invalid_argument("solvers require non-empty trees");
}

bool any_labels(const Tree& t) {
  if (!t.has_labels()) return false;
  for (auto v : t.nodes()) {
    if (!t.label(v).empty()) return true;
  }
  return false;
}

// Calls visit(subset) for every k-subset of {0..n-1} in lexicographic order.
template <class Visit>
void for_each_subset(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<NodeId> w(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) w[i] = NodeId(idx[i]);
    visit(std::as_const(w));
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

LcsResult largest_common_minor(const Tree& t1, const Tree& t2, bool all_witnesses, const SolverConfig& config) {
  require_nonempty(t1, t2);
  if (t1.size() > config.max_input_nodes || t2.size() > config.max_input_nodes) {
    throw BudgetExceeded("largest common minor is limited to inputs of " + std::to_string(config.max_input_nodes) +
                         " nodes");
  }
  LcsResult result;
  for (std::size_t k = std::min(t1.size(), t2.size()); k >= 1; --k) {
    struct Candidate {
      std::vector<NodeId> subset;
      Tree mu;
      std::string code;
    };
    std::vector<Candidate> candidates;
    std::unordered_set<std::string> seen;
    for_each_subset(t1.size(), k, [&](const std::vector<NodeId>& w) {
      if (subset_roots(t1, w).size() != 1) return;
      auto mu = induced_minor(t1, w);
      auto code = canonical_code(mu).code;
      if (seen.insert(code).second) candidates.push_back({w, std::move(mu), std::move(code)});
    });

    std::vector<std::optional<MinorEmbedding>> g2(candidates.size());
    std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};
    parallel_for(candidates.size(), config.jobs, [&](std::size_t i) {
      if (!all_witnesses && i > first_hit.load()) return;
      g2[i] = find_minor_embedding(candidates[i].mu, t2);
      if (g2[i]) {
        auto cur = first_hit.load();
        while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
        }
      }
    });

    LevelScan level{k, candidates.size(), 0};
    if (!all_witnesses && first_hit.load() < candidates.size()) level.candidates = first_hit.load() + 1;
    std::vector<std::pair<std::string, LcsWitness>> hits;
    for (std::size_t i = 0; i < level.candidates; ++i) {
      if (!g2[i]) continue;
      hits.push_back({candidates[i].code, {std::move(candidates[i].mu), MinorEmbedding{candidates[i].subset}, *g2[i]}});
    }
    level.hits = hits.size();
    result.levels.push_back(level);
    if (!hits.empty()) {
      std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      result.optimum_size = k;
      for (auto& [code, w] : hits) result.witnesses.push_back(std::move(w));
      return result;
    }
  }
  return result;  // no common labeled minor at all
}

ScsResult smallest_common_supertree(const Tree& t1, const Tree& t2, bool all_witnesses,
                                    std::optional<std::size_t> max_size, const SolverConfig& config) {
  require_nonempty(t1, t2);
  if (any_labels(t1) || any_labels(t2)) {
    throw std::invalid_argument("smallest common supertree search supports unlabeled trees only");
  }
  const std::size_t lower = std::max(t1.size(), t2.size());
  std::size_t ceiling = t1.size() + t2.size() - 1;
  if (max_size) ceiling = std::min(ceiling, *max_size);
  const std::size_t min_height = std::max(t1.height(), t2.height());
  const std::size_t min_leaves = std::max(t1.leaf_count(), t2.leaf_count());

  ScsResult result;
  for (std::size_t n = lower; n <= ceiling; ++n) {
    if (n > config.enumeration_cap || n > max_search_nodes) {
      throw BudgetExceeded("supertree search needs trees of size " + std::to_string(n) +
                               ", beyond the enumeration cap of " + std::to_string(config.enumeration_cap),
                           n);
    }
    const auto& candidates = enumerate_trees(n, config.enumeration_cap);
    std::vector<std::optional<ScsWitness>> found(candidates.size());
    std::atomic<std::size_t> first_hit{std::numeric_limits<std::size_t>::max()};
    parallel_for(candidates.size(), config.jobs, [&](std::size_t i) {
      if (!all_witnesses && i > first_hit.load()) return;
      const Tree& cand = candidates[i];
      // Minor embeddings preserve ancestor chains and incomparable sets.
      if (cand.height() < min_height || cand.leaf_count() < min_leaves) return;
      auto f1 = find_minor_embedding(t1, cand);
      if (!f1) return;
      auto f2 = find_minor_embedding(t2, cand);
      if (!f2) return;
      found[i] = ScsWitness{cand, std::move(*f1), std::move(*f2)};
      auto cur = first_hit.load();
      while (i < cur && !first_hit.compare_exchange_weak(cur, i)) {
      }
    });
    LevelScan level{n, candidates.size(), 0};
    if (!all_witnesses && first_hit.load() < candidates.size()) level.candidates = first_hit.load() + 1;
    for (std::size_t i = 0; i < level.candidates; ++i) {
      if (found[i]) {
        ++level.hits;
        result.witnesses.push_back(std::move(*found[i]));
      }
    }
    result.levels.push_back(level);
    if (level.hits > 0) {
      result.optimum_size = n;
      return result;
    }
  }
  throw BudgetExceeded("no common supertree up to size " + std::to_string(ceiling), ceiling + 1);
}

Tree root_merge_supertree(const Tree& t1, const Tree& t2) {
  require_nonempty(t1, t2);
  std::vector<std::string> names;
  std::vector<std::optional<NodeId>> parents;
  std::vector<std::string> labels;
  std::set<std::string> taken;
  for (auto v : t1.nodes()) {
    names.push_back(t1.name(v));
    parents.push_back(t1.parent(v));
    labels.push_back(t1.label(v));
    taken.insert(t1.name(v));
  }
  std::vector<std::size_t> pos(t2.size());
  pos[t2.root().index()] = t1.root().index();
  for (auto v : t2.preorder()) {
    if (v == t2.root()) continue;
    std::string name = t2.name(v);
    for (int suffix = 2; taken.count(name); ++suffix) name = t2.name(v) + "_" + std::to_string(suffix);
    taken.insert(name);
    pos[v.index()] = names.size();
    names.push_back(name);
    parents.push_back(NodeId(pos[t2.parent(v)->index()]));
    labels.push_back(t2.label(v));
  }
  return Tree::from_parents(std::move(names), parents, std::move(labels));
}

std::size_t unit_edit_distance(const Tree& t1, const Tree& t2, const SolverConfig& config) {
  auto lcs = largest_common_minor(t1, t2, false, config);
  return t1.size() + t2.size() - 2 * lcs.optimum_size;
}

bool cross_check_minor(const Tree& s, const Tree& t) {
  const bool by_search = is_minor(s, t);
  const bool by_subsets = is_minor_by_subsets(s, t);
  if (by_search != by_subsets) {
    throw StrategyDisagreement("minor strategies disagree on (" + print_tree(s) + ", " + print_tree(t) +
                               "): backtracking says " + (by_search ? "yes" : "no"));
  }
  return by_search;
}

std::vector<LcsWitness> optimal_lcs_triples(const Tree& t1, const Tree& t2, const LcsResult& lcs) {
  std::vector<LcsWitness> out;
  std::set<std::vector<std::pair<std::size_t, std::size_t>>> seen;
  for (const auto& w : lcs.witnesses) {
    auto g1s = enumerate_embeddings(w.mu, t1);
    auto g2s = enumerate_embeddings(w.mu, t2);
    for (const auto& g1 : g1s) {
      for (const auto& g2 : g2s) {
        std::vector<std::pair<std::size_t, std::size_t>> key;
        for (auto c : w.mu.nodes()) key.emplace_back(g1(c).index(), g2(c).index());
        std::sort(key.begin(), key.end());
        if (seen.insert(std::move(key)).second) out.push_back({w.mu, g1, g2});
      }
    }
  }
  return out;
}

}  // namespace treelab
