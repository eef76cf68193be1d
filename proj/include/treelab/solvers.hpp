#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

#include "treelab/embedding.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/tree.hpp"

namespace treelab {

struct SolverConfig {
  std::size_t max_input_nodes = 12;  // per input, for subset-based searches
  std::size_t enumeration_cap = default_enumeration_cap;
  std::size_t jobs = 0;  // 0: all cores
};

/// One size level of an exhaustive search. `candidates` counts the
/// candidates examined before the level was settled.
struct LevelScan {
  std::size_t size = 0;
  std::size_t candidates = 0;
  std::size_t hits = 0;
};

struct LcsWitness {
  Tree mu;
  MinorEmbedding g1;  // mu -> t1
  MinorEmbedding g2;  // mu -> t2
};

struct LcsResult {
  std::size_t optimum_size = 0;
  std::vector<LcsWitness> witnesses;  // one per isomorphism class, sorted by code
  std::vector<LevelScan> levels;
};

struct ScsWitness {
  Tree sigma;
  MinorEmbedding f1;  // t1 -> sigma
  MinorEmbedding f2;  // t2 -> sigma
};

struct ScsResult {
  std::size_t optimum_size = 0;
  std::vector<ScsWitness> witnesses;  // one per isomorphism class, sorted by code
  std::vector<LevelScan> levels;
};

class StrategyDisagreement : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Exact largest common minor. Scans k = min(|t1|, |t2|) down to 1; at each
/// level every single-rooted k-subset of V(t1) is contracted to its induced
/// minor, deduplicated by canonical code and tested against t2. Witness mu
/// nodes carry t1's names.
LcsResult largest_common_minor(const Tree& t1, const Tree& t2, bool all_witnesses = false,
                               const SolverConfig& config = {});

/// Exact smallest common supertree over unlabeled trees. Scans every
/// enumerated tree of size n = max(|t1|, |t2|), n+1, ... in canonical order.
/// Throws BudgetExceeded (with the verified lower bound) if the ceiling
/// min(max_size, |t1|+|t2|-1, enumeration cap) is passed without a hit.
ScsResult smallest_common_supertree(const Tree& t1, const Tree& t2, bool all_witnesses = false,
                                    std::optional<std::size_t> max_size = std::nullopt,
                                    const SolverConfig& config = {});

/// t1 with the children of t2's root re-hung under t1's root. Colliding
/// names from t2 get a numeric suffix.
Tree root_merge_supertree(const Tree& t1, const Tree& t2);

/// Insert/delete edit distance with unit costs: |t1| + |t2| - 2 |LCS|.
std::size_t unit_edit_distance(const Tree& t1, const Tree& t2, const SolverConfig& config = {});

/// Runs backtracking and subset-induced minor tests; throws
/// StrategyDisagreement if they differ.
bool cross_check_minor(const Tree& s, const Tree& t);

/// Every optimal (mu, g1, g2) triple, one per distinct set of merged node
/// pairs {(g1(c), g2(c))}. Needs an LcsResult computed with all_witnesses.
std::vector<LcsWitness> optimal_lcs_triples(const Tree& t1, const Tree& t2, const LcsResult& lcs);

}  // namespace treelab
