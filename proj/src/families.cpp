#include "treelab/families.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <future>
#include <set>

#include "treelab/canonical.hpp"
#include "treelab/parallel.hpp"

namespace treelab {

namespace {

class TreeBuilder {
 public:
  NodeId add(std::string name, std::optional<NodeId> parent, RegionTag region) {
    names_.push_back(std::move(name));
    parents_.push_back(parent);
    regions_.push_back(region);
    return NodeId(names_.size() - 1);
  }

  /// Copies t below parent (or as the root when parent is empty); returns
  /// the new id of every node of t.
  std::vector<NodeId> graft(const Tree& t, std::optional<NodeId> parent, const std::string& prefix, RegionTag region) {
    std::vector<NodeId> ids(t.size());
    for (auto v : t.preorder()) {
      auto p = t.parent(v);
      ids[v.index()] = add(prefix + t.name(v), p ? std::optional<NodeId>(ids[p->index()]) : parent, region);
    }
    return ids;
  }

  Tree build() const { return Tree::from_parents(names_, parents_, {}, regions_); }

 private:
  std::vector<std::string> names_;
  std::vector<std::optional<NodeId>> parents_;
  std::vector<RegionTag> regions_;
};

Tree chain(std::size_t k, const std::string& stem) {
  TreeBuilder b;
  std::optional<NodeId> last;
  for (std::size_t i = 1; i <= k; ++i) last = b.add(stem + std::to_string(i), last, RegionTag::none);
  return b.build();
}

MinorEmbedding embed_by_name(const Tree& from, const Tree& into) {
  MinorEmbedding f;
  for (auto v : from.nodes()) f.image.push_back(into.at(from.name(v)));
  return f;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

void require_nonempty(std::initializer_list<const Tree*> trees) {
  for (const auto* t : trees) {
    if (t->empty()) throw std::invalid_argument("family parameters must be non-empty trees");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Fig1Instance fig1_family(const Tree& p, const Tree& r, const Tree& s) {
  require_nonempty({&p, &r, &s});
  Fig1Instance inst{p, r, s, {}, {}, {}, {}, {}, {}};

  std::set<std::string> names{"a", "y", "z"};
  bool unique = true;
  for (const Tree* part : {&p, &r, &s}) {
    for (auto v : part->nodes()) unique = names.insert(part->name(v)).second && unique;
  }
  const std::string pp = unique ? "" : "P_";
  const std::string rp = unique ? "" : "R_";
  const std::string sp = unique ? "" : "S_";

  {
    TreeBuilder b;
    auto a = b.add("a", std::nullopt, RegionTag::spine);
    auto y = b.add("y", a, RegionTag::spine);
    b.graft(p, y, pp, RegionTag::P);
    b.graft(r, y, rp, RegionTag::R);
    b.graft(s, a, sp, RegionTag::S);
    inst.t1 = b.build();
  }
  {
    TreeBuilder b;
    auto a = b.add("a", std::nullopt, RegionTag::spine);
    b.graft(p, a, pp, RegionTag::P);
    auto z = b.add("z", a, RegionTag::spine);
    b.graft(r, z, rp, RegionTag::R);
    b.graft(s, z, sp, RegionTag::S);
    inst.t2 = b.build();
  }
  {
    TreeBuilder b;
    auto a = b.add("a", std::nullopt, RegionTag::spine);
    b.graft(p, a, pp, RegionTag::P);
    b.graft(r, a, rp, RegionTag::R);
    b.graft(s, a, sp, RegionTag::S);
    inst.claimed_mu = b.build();
  }
  inst.g1 = embed_by_name(inst.claimed_mu, inst.t1);
  inst.g2 = embed_by_name(inst.claimed_mu, inst.t2);
  if (are_isomorphic(p, s)) {
    inst.warnings.push_back("P and S are isomorphic: T1 and T2 coincide up to isomorphism");
  }
  return inst;
}

std::vector<Fig2Candidate> fig2_candidates(const Fig1Instance& inst, const SolverConfig& config) {
  const auto& p = inst.p;
  const auto& r = inst.r;
  const auto& s = inst.s;
  std::vector<Fig2Candidate> out;

  {  // S duplicated: a(y(P, z(R, S)), S)
    TreeBuilder b;
    auto a = b.add("a", std::nullopt, RegionTag::spine);
    auto y = b.add("y", a, RegionTag::spine);
    b.graft(p, y, "P_", RegionTag::P);
    auto z = b.add("z", y, RegionTag::spine);
    b.graft(r, z, "R_", RegionTag::R);
    b.graft(s, z, "S2_", RegionTag::S);
    b.graft(s, a, "S1_", RegionTag::S);
    out.push_back({"a:S", b.build(), std::nullopt, std::nullopt, false});
  }
  {  // P duplicated: a(z(y(P, R), S), P)
    TreeBuilder b;
    auto a = b.add("a", std::nullopt, RegionTag::spine);
    auto z = b.add("z", a, RegionTag::spine);
    auto y = b.add("y", z, RegionTag::spine);
    b.graft(p, y, "P1_", RegionTag::P);
    b.graft(r, y, "R_", RegionTag::R);
    b.graft(s, z, "S_", RegionTag::S);
    b.graft(p, a, "P2_", RegionTag::P);
    out.push_back({"a:P", b.build(), std::nullopt, std::nullopt, false});
  }
  {  // R duplicated: a(y(P, R), z(R, S))
    TreeBuilder b;
    auto a = b.add("a", std::nullopt, RegionTag::spine);
    auto y = b.add("y", a, RegionTag::spine);
    b.graft(p, y, "P_", RegionTag::P);
    b.graft(r, y, "R1_", RegionTag::R);
    auto z = b.add("z", a, RegionTag::spine);
    b.graft(r, z, "R2_", RegionTag::R);
    b.graft(s, z, "S_", RegionTag::S);
    out.push_back({"b", b.build(), std::nullopt, std::nullopt, false});
  }
  {  // two copies of a smallest common supertree of P and S: a(u(PS, R), PS)
    auto ps = smallest_common_supertree(p, s, false, std::nullopt, config).witnesses.front().sigma;
    TreeBuilder b;
    auto a = b.add("a", std::nullopt, RegionTag::spine);
    auto u = b.add("u", a, RegionTag::spine);
    b.graft(ps, u, "X_", RegionTag::P);
    b.graft(r, u, "R_", RegionTag::R);
    b.graft(ps, a, "W_", RegionTag::S);
    out.push_back({"c", b.build(), std::nullopt, std::nullopt, false});
  }

  for (auto& c : out) {
    c.f1 = find_minor_embedding(inst.t1, c.tree);
    c.f2 = find_minor_embedding(inst.t2, c.tree);
    c.verified = c.f1 && c.f2 && check_embedding(*c.f1, inst.t1, c.tree).empty() &&
                 check_embedding(*c.f2, inst.t2, c.tree).empty();
  }
  return out;
}

// ---------------------------------------------------------------------------

std::optional<TripleMerge> check_theorem5(const Fig1Instance& inst, const Tree& t_sigma, const MinorEmbedding& f1,
                                          const MinorEmbedding& f2) {
  if (auto v = check_embedding(f1, inst.t1, t_sigma); !v.empty()) {
    throw InvalidEmbedding("f1 is not a minor embedding: " + v.front().reason);
  }
  if (auto v = check_embedding(f2, inst.t2, t_sigma); !v.empty()) {
    throw InvalidEmbedding("f2 is not a minor embedding: " + v.front().reason);
  }
  std::vector<std::optional<NodeId>> preimage1(t_sigma.size());
  for (auto u : inst.t1.nodes()) preimage1[f1(u).index()] = u;

  auto merged_pair = [&](RegionTag tag) -> std::optional<std::pair<NodeId, NodeId>> {
    for (auto v : inst.t2.nodes()) {
      if (inst.t2.region(v) != tag) continue;
      auto u = preimage1[f2(v).index()];
      if (u && inst.t1.region(*u) == tag) return std::pair{*u, v};
    }
    return std::nullopt;
  };
  auto p = merged_pair(RegionTag::P);
  auto r = merged_pair(RegionTag::R);
  auto s = merged_pair(RegionTag::S);
  if (p && r && s) return TripleMerge{p->first, p->second, r->first, r->second, s->first, s->second};
  return std::nullopt;
}

Theorem5Sweep theorem5_sweep(const Fig1Instance& inst, const std::vector<Tree>& supertrees,
                             const SolverConfig& config) {
  struct Masks {
    std::uint64_t p = 0, r = 0, s = 0;
  };
  auto masks_of = [](const Tree& from, const MinorEmbedding& f) {
    Masks m;
    for (auto v : from.nodes()) {
      const auto bit = std::uint64_t{1} << f(v).index();
      switch (from.region(v)) {
        case RegionTag::P: m.p |= bit; break;
        case RegionTag::R: m.r |= bit; break;
        case RegionTag::S: m.s |= bit; break;
        default: break;
      }
    }
    return m;
  };

  struct PerTree {
    std::size_t f1 = 0, f2 = 0, pairs = 0, merges = 0;
  };
  std::vector<PerTree> per(supertrees.size());
  parallel_for(supertrees.size(), config.jobs, [&](std::size_t i) {
    const Tree& sigma = supertrees[i];
    if (sigma.size() > max_search_nodes) throw BudgetExceeded("supertree too large for the sweep");
    std::vector<Masks> m1, m2;
    for (const auto& f : enumerate_embeddings(inst.t1, sigma)) m1.push_back(masks_of(inst.t1, f));
    for (const auto& f : enumerate_embeddings(inst.t2, sigma)) m2.push_back(masks_of(inst.t2, f));
    per[i].f1 = m1.size();
    per[i].f2 = m2.size();
    per[i].pairs = m1.size() * m2.size();
    for (const auto& a : m1) {
      for (const auto& b : m2) {
        if ((a.p & b.p) && (a.r & b.r) && (a.s & b.s)) ++per[i].merges;
      }
    }
  });

  Theorem5Sweep sweep;
  sweep.supertrees = supertrees.size();
  for (std::size_t i = 0; i < per.size(); ++i) {
    sweep.f1_embeddings += per[i].f1;
    sweep.f2_embeddings += per[i].f2;
    sweep.pairs_checked += per[i].pairs;
    sweep.triple_merges += per[i].merges;
    if (per[i].merges && !sweep.first_merge) sweep.first_merge = print_tree(supertrees[i]);
  }
  return sweep;
}

// ---------------------------------------------------------------------------

VerificationReport verify_counterexample(const Tree& p, const Tree& r, const Tree& s, const SolverConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  VerificationReport rep;
  rep.instance = fig1_family(p, r, s);
  rep.warnings = rep.instance.warnings;
  const auto& t1 = rep.instance.t1;
  const auto& t2 = rep.instance.t2;

  // The two solves are independent; run the supertree search on a worker.
  auto solve_scs = [&]() -> std::pair<std::optional<ScsResult>, double> {
    const auto t0 = std::chrono::steady_clock::now();
    try {
      auto r = smallest_common_supertree(t1, t2, false, std::nullopt, config);
      return {std::move(r), elapsed_ms(t0)};
    } catch (const BudgetExceeded& e) {
      rep.scs_size = e.lower_bound().value_or(std::max(t1.size(), t2.size()));
      rep.warnings.push_back(std::string("supertree search stopped: ") + e.what());
      return {std::nullopt, elapsed_ms(t0)};
    }
  };
  const bool concurrent = resolve_jobs(config.jobs) > 1;
  std::future<std::pair<std::optional<ScsResult>, double>> pending;
  if (concurrent) pending = std::async(std::launch::async, solve_scs);

  auto mark = std::chrono::steady_clock::now();
  rep.lcs = largest_common_minor(t1, t2, false, config);
  rep.timing_ms["lcs"] = elapsed_ms(mark);
  rep.eq4_prediction = eq4_prediction(t1, t2, rep.lcs.optimum_size);

  auto [scs, scs_ms] = concurrent ? pending.get() : solve_scs();
  rep.timing_ms["scs"] = scs_ms;
  if (scs) {
    rep.scs = std::move(scs);
    rep.scs_size = rep.scs->optimum_size;
    rep.scs_exact = true;
    rep.gap = static_cast<long>(rep.scs_size) - static_cast<long>(rep.eq4_prediction);
  }
  if (rep.gap && *rep.gap < 0) {
    throw std::logic_error("negative gap: the supertree search returned fewer nodes than the quotient");
  }

  mark = std::chrono::steady_clock::now();
  const auto& w = rep.lcs.witnesses.front();
  rep.quotient = build_quotient(t1, t2, w.mu, w.g1, w.g2);
  for (const auto& v : check_eq2_eq3(rep.quotient)) rep.warnings.push_back("quotient identity failed: " + v);
  rep.prop21 = check_prop21(rep.quotient);
  rep.reduced = reduce(rep.quotient);
  rep.reduced_violations = validate(rep.reduced);
  rep.timing_ms["quotient"] = elapsed_ms(mark);

  if (rep.scs) {
    for (const auto& sw : rep.scs->witnesses) {
      if (check_theorem5(rep.instance, sw.sigma, sw.f1, sw.f2)) rep.theorem5_ok = false;
    }
  }

  mark = std::chrono::steady_clock::now();
  rep.candidates = fig2_candidates(rep.instance, config);
  for (const auto& c : rep.candidates) {
    if (c.verified && rep.scs_exact && c.tree.size() < rep.scs_size) rep.candidates_bound_scs = false;
  }
  rep.timing_ms["candidates"] = elapsed_ms(mark);
  rep.timing_ms["total"] = elapsed_ms(start);
  return rep;
}

// ---------------------------------------------------------------------------

Fig4Instance fig4_family(const Tree& a, const Tree& b, const std::optional<Tree>& r) {
  require_nonempty({&a, &b});
  Fig4Instance inst;
  inst.a = a;
  inst.b = b;
  inst.n = a.size();
  inst.m = b.size();
  if (inst.m > inst.n) throw std::invalid_argument("fig4 needs |A| >= |B|");
  if (r && r->size() != 2 * inst.n) throw std::invalid_argument("fig4 needs R with 2n nodes");

  auto chain_over = [&](const Tree& tail, const std::string& stem, RegionTag tag) {
    TreeBuilder builder;
    std::optional<NodeId> last;
    for (std::size_t i = 1; i <= inst.n; ++i) last = builder.add(stem + std::to_string(i), last, RegionTag::none);
    bool clash = false;
    for (auto v : tail.nodes()) {
      const auto& nm = tail.name(v);
      clash = clash || (nm.rfind(stem, 0) == 0);
    }
    builder.graft(tail, last, clash ? std::string(tag == RegionTag::A ? "A_" : "B_") : std::string(), tag);
    return builder.build();
  };
  auto p = chain_over(a, "p", RegionTag::A);
  auto s = chain_over(b, "s", RegionTag::B);
  inst.base = fig1_family(p, r ? *r : chain(2 * inst.n, "r"), s);
  inst.status = "reconstructed: chains of n nodes above A and B, R of 2n nodes";
  return inst;
}

Fig5Instance fig5_family(const Tree& a, const Tree& b) {
  require_nonempty({&a, &b});
  Fig5Instance inst;
  inst.a = a;
  inst.b = b;
  inst.n = a.size();
  inst.m = b.size();
  if (inst.m > inst.n) throw std::invalid_argument("fig5 needs |A| >= |B|");
  {
    TreeBuilder builder;
    auto root = builder.add("q0", std::nullopt, RegionTag::none);
    for (std::size_t i = 1; i <= inst.n; ++i) builder.add("q" + std::to_string(i), root, RegionTag::none);
    inst.p = builder.build();
  }
  inst.s = chain(inst.n, "s");

  auto assemble = [&](bool with_a, bool with_b) {
    TreeBuilder builder;
    auto root = builder.add("a", std::nullopt, RegionTag::spine);
    if (with_a) {
      auto y = builder.add("y", root, RegionTag::spine);
      builder.graft(inst.p, y, "P_", RegionTag::P);
      builder.graft(a, y, "A_", RegionTag::A);
    } else {
      builder.graft(inst.p, root, "P_", RegionTag::P);
    }
    if (with_b) {
      auto z = builder.add("z", root, RegionTag::spine);
      builder.graft(b, z, "B_", RegionTag::B);
      builder.graft(inst.s, z, "S_", RegionTag::S);
    } else {
      builder.graft(inst.s, root, "S_", RegionTag::S);
    }
    return builder.build();
  };
  inst.t1 = assemble(true, false);
  inst.t2 = assemble(false, true);
  inst.b_added = assemble(true, true);
  inst.status = "RECONSTRUCTED-UNVERIFIED";
  return inst;
}

TransferReport subproblem_transfer_check(const std::string& family, std::size_t n, std::size_t m, bool vary_r,
                                         const SolverConfig& config) {
  if (family != "fig4" && family != "fig5") throw std::invalid_argument("unknown family " + family);
  if (n == 0 || m == 0 || m > n) throw std::invalid_argument("need n >= m >= 1");
  TransferReport rep;
  rep.family = family;
  rep.n = n;
  rep.m = m;

  const auto& as = enumerate_trees(n, config.enumeration_cap);
  const auto& bs = enumerate_trees(m, config.enumeration_cap);
  if (family == "fig4") {
    rep.measure = "scs";
    rep.multiplicity = 2;
    rep.predicted_constant = static_cast<long>(4 * n + 2);
    std::vector<std::optional<Tree>> rs{std::nullopt};
    if (vary_r) {
      rs.clear();
      for (const auto& t : enumerate_trees(2 * n, config.enumeration_cap)) rs.emplace_back(t);
    }
    for (const auto& a : as) {
      for (const auto& b : bs) {
        for (const auto& r : rs) {
          auto inst = fig4_family(a, b, r);
          TransferRow row;
          row.a = print_tree(a);
          row.b = print_tree(b);
          row.r = print_tree(inst.base.r);
          row.big_optimum = smallest_common_supertree(inst.base.t1, inst.base.t2, false, std::nullopt, config).optimum_size;
          row.sub_optimum = smallest_common_supertree(a, b, false, std::nullopt, config).optimum_size;
          row.offset = static_cast<long>(row.big_optimum) - 2 * static_cast<long>(row.sub_optimum);
          row.facts["t1_size"] = std::to_string(inst.base.t1.size());
          row.facts["added_nodes"] = std::to_string(row.big_optimum - inst.base.t1.size());
          rep.rows.push_back(std::move(row));
        }
      }
    }
  } else {
    rep.measure = "lcs";
    rep.multiplicity = 1;
    rep.asserted = false;
    for (const auto& a : as) {
      for (const auto& b : bs) {
        auto inst = fig5_family(a, b);
        TransferRow row;
        row.a = print_tree(a);
        row.b = print_tree(b);
        row.big_optimum = largest_common_minor(inst.t1, inst.t2, false, config).optimum_size;
        row.sub_optimum = largest_common_minor(a, b, false, config).optimum_size;
        row.offset = static_cast<long>(row.big_optimum) - static_cast<long>(row.sub_optimum);
        const auto ps = smallest_common_supertree(inst.p, inst.s, false, std::nullopt, config).optimum_size;
        row.facts["scs_p_s"] = std::to_string(ps);
        row.facts["scs_p_s_is_2n_minus_1"] = ps == 2 * n - 1 ? "match" : "mismatch";
        row.facts["b_added_size"] = std::to_string(inst.b_added.size());
        try {
          const auto big_scs =
              smallest_common_supertree(inst.t1, inst.t2, false, std::nullopt, config).optimum_size;
          row.facts["scs_t1_t2"] = std::to_string(big_scs);
          const bool b_added_valid = is_minor(inst.t1, inst.b_added) && is_minor(inst.t2, inst.b_added);
          row.facts["b_added_is_optimal"] = b_added_valid && big_scs == inst.b_added.size() ? "match" : "mismatch";
        } catch (const BudgetExceeded& e) {
          row.facts["scs_t1_t2"] = std::string("budget exceeded: ") + e.what();
        }
        rep.rows.push_back(std::move(row));
      }
    }
  }
  if (!rep.rows.empty()) {
    rep.constant = rep.rows.front().offset;
    rep.stable = std::all_of(rep.rows.begin(), rep.rows.end(),
                             [&](const TransferRow& row) { return row.offset == *rep.constant; });
  }
  return rep;
}

// ---------------------------------------------------------------------------

ScanReport scan(std::size_t max_size, bool check_eq4, bool check_prop21_flag, const SolverConfig& config,
                std::size_t cap) {
  if (max_size == 0) throw std::invalid_argument("scan needs a positive size");
  if (max_size > cap) {
    throw BudgetExceeded("scan size " + std::to_string(max_size) + " exceeds the cap of " + std::to_string(cap));
  }
  std::vector<const Tree*> trees;
  for (std::size_t n = 1; n <= max_size; ++n) {
    for (const auto& t : enumerate_trees(n, config.enumeration_cap)) trees.push_back(&t);
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < trees.size(); ++i) {
    for (std::size_t j = i; j < trees.size(); ++j) pairs.emplace_back(i, j);
  }
  std::stable_sort(pairs.begin(), pairs.end(), [&](const auto& x, const auto& y) {
    return trees[x.first]->size() + trees[x.second]->size() < trees[y.first]->size() + trees[y.second]->size();
  });

  struct Outcome {
    ScanPair pair;
    std::size_t triples = 0, violating = 0, holds_not_tree = 0;
  };
  std::vector<Outcome> outcomes(pairs.size());
  SolverConfig inner = config;
  inner.jobs = 1;
  parallel_for(pairs.size(), config.jobs, [&](std::size_t k) {
    const Tree& t1 = *trees[pairs[k].first];
    const Tree& t2 = *trees[pairs[k].second];
    auto& out = outcomes[k];
    auto lcs = largest_common_minor(t1, t2, check_prop21_flag, inner);
    out.pair.t1 = print_tree(t1);
    out.pair.t2 = print_tree(t2);
    out.pair.lcs = lcs.optimum_size;
    if (check_eq4) {
      out.pair.scs = smallest_common_supertree(t1, t2, false, std::nullopt, inner).optimum_size;
      out.pair.gap = static_cast<long>(out.pair.scs) - static_cast<long>(eq4_prediction(t1, t2, lcs.optimum_size));
      if (out.pair.gap < 0) {
        throw std::logic_error("negative gap on (" + out.pair.t1 + ", " + out.pair.t2 + ")");
      }
    }
    if (check_prop21_flag) {
      for (const auto& w : optimal_lcs_triples(t1, t2, lcs)) {
        auto q = build_quotient(t1, t2, w.mu, w.g1, w.g2);
        const bool holds = check_prop21(q).holds;
        ++out.triples;
        if (!holds) ++out.violating;
        if (holds && !validate(reduce(q)).empty()) ++out.holds_not_tree;
      }
    }
  });

  ScanReport rep;
  rep.max_size = max_size;
  rep.check_eq4 = check_eq4;
  rep.check_prop21 = check_prop21_flag;
  rep.pairs = pairs.size();
  for (const auto& o : outcomes) {
    if (check_eq4) {
      ++rep.gap_histogram[o.pair.gap];
      if (o.pair.gap != 0 && !rep.minimal_violation) rep.minimal_violation = o.pair;
    }
    rep.triples_checked += o.triples;
    rep.triples_violating += o.violating;
    if (o.violating) {
      ++rep.pairs_with_prop21_violation;
      if (!rep.minimal_prop21_violation) rep.minimal_prop21_violation = o.pair;
    }
    rep.holds_but_reduced_not_tree += o.holds_not_tree;
    if (o.holds_not_tree && !rep.first_holds_but_not_tree) rep.first_holds_but_not_tree = o.pair;
  }
  return rep;
}

}  // namespace treelab
