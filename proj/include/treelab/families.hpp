#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treelab/embedding.hpp"
#include "treelab/quotient.hpp"
#include "treelab/solvers.hpp"
#include "treelab/tree.hpp"

namespace treelab {

// ---------------------------------------------------------------------------
// The three-part family: T1 = a(y(P, R), S), T2 = a(P, z(R, S)).

struct Fig1Instance {
  Tree p, r, s;
  Tree t1, t2;        // every node tagged spine, P, R or S
  Tree claimed_mu;    // a(P, R, S)
  MinorEmbedding g1;  // claimed_mu -> t1
  MinorEmbedding g2;  // claimed_mu -> t2
  std::vector<std::string> warnings;
};

/// Builds the instance. Part node names are kept when they are unique across
/// P, R, S and the spine names a, y, z; otherwise they get a P_/R_/S_ prefix.
Fig1Instance fig1_family(const Tree& p, const Tree& r, const Tree& s);

struct Fig2Candidate {
  std::string label;  // "a:P", "a:S", "b" or "c"
  Tree tree;
  std::optional<MinorEmbedding> f1;  // t1 -> tree, if found
  std::optional<MinorEmbedding> f2;  // t2 -> tree, if found
  bool verified = false;             // both embeddings found and checked
};

/// Common supertrees that duplicate a part: a copy of P or S plus a
/// separating node (case a), a copy of R plus a separating node (case b), or
/// two copies of a smallest common supertree of P and S (case c).
std::vector<Fig2Candidate> fig2_candidates(const Fig1Instance& inst, const SolverConfig& config = {});

/// Merge witness for the three-way gluing of P, R and S regions.
struct TripleMerge {
  NodeId p1, p2, r1, r2, s1, s2;  // T1 and T2 nodes with f1(x1) == f2(x2)
};

/// Checks that f1 and f2 do not glue a P pair, an R pair and an S pair at
/// the same time. Regions are read from the instance's tags only. Throws
/// InvalidEmbedding if f1 or f2 is not a minor embedding into t_sigma.
std::optional<TripleMerge> check_theorem5(const Fig1Instance& inst, const Tree& t_sigma, const MinorEmbedding& f1,
                                          const MinorEmbedding& f2);

struct Theorem5Sweep {
  std::size_t supertrees = 0;
  std::size_t f1_embeddings = 0;
  std::size_t f2_embeddings = 0;
  std::size_t pairs_checked = 0;
  std::size_t triple_merges = 0;
  std::optional<std::string> first_merge;  // tree literal of the offending supertree
};

/// Runs the triple-merge check over every embedding pair into each tree.
Theorem5Sweep theorem5_sweep(const Fig1Instance& inst, const std::vector<Tree>& supertrees,
                             const SolverConfig& config = {});

// ---------------------------------------------------------------------------
// Verification pipeline

struct VerificationReport {
  Fig1Instance instance;
  LcsResult lcs;
  std::size_t eq4_prediction = 0;
  std::optional<ScsResult> scs;        // absent when the search ran out of budget
  std::size_t scs_size = 0;            // exact optimum, or verified lower bound
  bool scs_exact = false;
  std::optional<long> gap;             // scs_size - eq4_prediction when exact
  QuotientGraph quotient;              // built from the first LCS witness
  Prop21Report prop21;
  Digraph reduced;
  std::vector<TreeViolation> reduced_violations;
  bool theorem5_ok = true;             // over the reported SCS witnesses
  std::vector<Fig2Candidate> candidates;
  bool candidates_bound_scs = true;    // every verified candidate >= scs_size
  std::vector<std::string> warnings;
  std::map<std::string, double> timing_ms;
};

VerificationReport verify_counterexample(const Tree& p, const Tree& r, const Tree& s,
                                         const SolverConfig& config = {});

// ---------------------------------------------------------------------------
// Families for transferring a subproblem

/// Chain-extended parts: P = p1 -> ... -> pn -> A, S = s1 -> ... -> sn -> B,
/// R a chain of 2n nodes unless given. n = |A| >= m = |B|.
struct Fig4Instance {
  Tree a, b;
  std::size_t n = 0, m = 0;
  Fig1Instance base;
  std::string status;
};

Fig4Instance fig4_family(const Tree& a, const Tree& b, const std::optional<Tree>& r = std::nullopt);

/// Reconstruction: P is a star with n leaves, S a chain of n nodes,
/// T1 = a(y(P, A), S) and T2 = a(P, z(B, S)).
struct Fig5Instance {
  Tree a, b, p, s;
  std::size_t n = 0, m = 0;
  Tree t1, t2;
  Tree b_added;  // T1 with B hung under a separating node next to S
  std::string status;
};

Fig5Instance fig5_family(const Tree& a, const Tree& b);

struct TransferRow {
  std::string a, b, r;  // tree literals
  std::size_t big_optimum = 0;
  std::size_t sub_optimum = 0;
  long offset = 0;  // big - multiplicity * sub
  std::map<std::string, std::string> facts;  // family-specific report fields
};

struct TransferReport {
  std::string family;  // "fig4" or "fig5"
  std::string measure;  // "scs" or "lcs"
  std::size_t n = 0, m = 0;
  std::size_t multiplicity = 1;
  std::vector<TransferRow> rows;
  std::optional<long> constant;  // offset of the first row
  bool stable = false;           // every row has the same offset
  std::optional<long> predicted_constant;
  bool asserted = true;          // false for report-grade reconstructions
};

/// Solves every instance of the family over all (A, B) with |A| = n and
/// |B| = m (and, for fig4 with vary_r, every R of 2n nodes) and compares the
/// big optimum against the (A, B) subproblem optimum.
TransferReport subproblem_transfer_check(const std::string& family, std::size_t n, std::size_t m,
                                         bool vary_r = false, const SolverConfig& config = {});

// ---------------------------------------------------------------------------
// Exhaustive small-pair scan

struct ScanPair {
  std::string t1, t2;
  std::size_t lcs = 0, scs = 0;
  long gap = 0;
};

struct ScanReport {
  std::size_t max_size = 0;
  bool check_eq4 = true;
  bool check_prop21 = false;
  std::size_t pairs = 0;
  std::map<long, std::size_t> gap_histogram;
  std::optional<ScanPair> minimal_violation;  // smallest total size with gap != 0
  std::size_t triples_checked = 0;
  std::size_t triples_violating = 0;
  std::size_t pairs_with_prop21_violation = 0;
  std::optional<ScanPair> minimal_prop21_violation;
  std::size_t holds_but_reduced_not_tree = 0;  // counterexamples to "holds => tree"
  std::optional<ScanPair> first_holds_but_not_tree;
};

inline constexpr std::size_t default_scan_cap = 7;

ScanReport scan(std::size_t max_size, bool check_eq4, bool check_prop21, const SolverConfig& config = {},
                std::size_t cap = default_scan_cap);

}  // namespace treelab
