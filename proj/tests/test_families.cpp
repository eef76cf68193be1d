#include <doctest.h>

#include "oracles.hpp"
#include "treelab/canonical.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"
#include "treelab/families.hpp"

using namespace treelab;

namespace {

const Tree kChain3 = parse_tree("p1(p2(p3))");
const Tree kSingle = parse_tree("r");
const Tree kStar3 = parse_tree("s1(s2,s3)");

std::vector<const Tree*> trees_up_to(std::size_t n) {
  std::vector<const Tree*> out;
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& t : enumerate_trees(k)) out.push_back(&t);
  }
  return out;
}

bool regions_cover(const Tree& t) {
  for (auto v : t.nodes()) {
    if (t.region(v) == RegionTag::none) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("smallest family instance") {
  auto inst = fig1_family(parse_tree("p"), parse_tree("r"), parse_tree("s"));
  CHECK(inst.t1.size() == 5);
  CHECK(inst.t2.size() == 5);
  CHECK(inst.claimed_mu.size() == 4);
  CHECK(print_tree(inst.t1) == "a(y(p,r),s)");
  CHECK(print_tree(inst.t2) == "a(p,z(r,s))");
  CHECK(inst.warnings.size() == 1);
}

TEST_CASE("acceptance instance shape") {
  auto inst = fig1_family(kChain3, kSingle, kStar3);
  CHECK(inst.t1.size() == 9);
  CHECK(inst.t2.size() == 9);
  CHECK(inst.claimed_mu.size() == 8);
  CHECK(inst.warnings.empty());
  CHECK(print_tree(inst.t1) == "a(y(p1(p2(p3)),r),s1(s2,s3))");
  CHECK(print_tree(inst.t2) == "a(p1(p2(p3)),z(r,s1(s2,s3)))");
  CHECK(regions_cover(inst.t1));
  CHECK(regions_cover(inst.t2));
  CHECK(inst.t1.region(inst.t1.at("y")) == RegionTag::spine);
  CHECK(inst.t1.region(inst.t1.at("s3")) == RegionTag::S);
  std::vector<NodeId> arc{inst.claimed_mu.at("a"), inst.claimed_mu.at("p1")};
  auto img = map_path(inst.g1, inst.claimed_mu, inst.t1, arc);
  CHECK(img.size() == 3);
  CHECK(img[1] == inst.t1.at("y"));
}

TEST_CASE("colliding part names get prefixes") {
  auto inst = fig1_family(parse_tree("a"), parse_tree("a"), parse_tree("x(y)"));
  CHECK(inst.t1.size() == 6);
  CHECK(inst.t1.find("P_a"));
  CHECK(inst.t1.find("S_y"));
  CHECK_THROWS_AS(fig1_family(Tree{}, kSingle, kSingle), std::invalid_argument);
}

TEST_CASE("family instances are valid for all parts up to four nodes") {
  auto all = trees_up_to(4);
  for (const auto* p : all) {
    for (const auto* r : all) {
      for (const auto* s : all) {
        auto inst = fig1_family(*p, *r, *s);
        CHECK(validate(inst.t1.to_digraph()).empty());
        CHECK(validate(inst.t2.to_digraph()).empty());
        CHECK(inst.t1.size() == p->size() + r->size() + s->size() + 2);
        CHECK(oracle::is_embedding(inst.g1.image, inst.claimed_mu, inst.t1));
        CHECK(oracle::is_embedding(inst.g2.image, inst.claimed_mu, inst.t2));
      }
    }
  }
}

TEST_CASE("claimed common minor is optimal for parts up to three nodes") {
  auto all = trees_up_to(3);
  for (const auto* p : all) {
    for (const auto* r : all) {
      for (const auto* s : all) {
        if (are_isomorphic(*p, *s)) continue;
        auto inst = fig1_family(*p, *r, *s);
        CHECK(largest_common_minor(inst.t1, inst.t2).optimum_size == inst.claimed_mu.size());
      }
    }
  }
}

TEST_CASE("duplicating candidates on the acceptance instance") {
  auto inst = fig1_family(kChain3, kSingle, kStar3);
  auto cands = fig2_candidates(inst);
  REQUIRE(cands.size() == 4);
  std::map<std::string, std::size_t> size;
  for (const auto& c : cands) {
    CHECK(c.verified);
    CHECK(oracle::is_embedding(c.f1->image, inst.t1, c.tree));
    CHECK(oracle::is_embedding(c.f2->image, inst.t2, c.tree));
    size[c.label] = c.tree.size();
  }
  CHECK(size["b"] == 11);
  CHECK(size["c"] == 11);
  CHECK(size["a:P"] == 13);
  CHECK(size["a:S"] == 13);
}

TEST_CASE("comparable parts keep the linear relation") {
  auto inst = fig1_family(parse_tree("p"), parse_tree("r"), parse_tree("s1(s2)"));
  for (const auto& c : fig2_candidates(inst)) {
    if (c.label == "c") CHECK(c.tree.size() == 7);
  }
  auto rep = verify_counterexample(parse_tree("p"), parse_tree("r"), parse_tree("s1(s2)"));
  CHECK(rep.eq4_prediction == 7);
  CHECK(rep.gap == 0);
}

TEST_CASE("full pipeline on the acceptance instance") {
  auto rep = verify_counterexample(kChain3, kSingle, kStar3);
  CHECK(rep.lcs.optimum_size == 8);
  CHECK(rep.eq4_prediction == 10);
  CHECK(rep.scs_exact);
  CHECK(rep.scs_size == 11);
  CHECK(rep.gap == 1);
  CHECK_FALSE(rep.prop21.holds);
  CHECK_FALSE(rep.reduced_violations.empty());
  CHECK(rep.theorem5_ok);
  CHECK(rep.candidates_bound_scs);
  CHECK(rep.timing_ms.count("total") == 1);
}

TEST_CASE("symmetric instance warns") {
  auto rep = verify_counterexample(parse_tree("p"), parse_tree("r"), parse_tree("s"));
  CHECK(rep.lcs.optimum_size == 5);
  CHECK_FALSE(rep.warnings.empty());
}

TEST_CASE("triple merge detector") {
  auto inst = fig1_family(kChain3, kSingle, kStar3);
  auto sigma = root_merge_supertree(inst.t1, inst.t2);
  auto f1 = find_minor_embedding(inst.t1, sigma);
  auto f2 = find_minor_embedding(inst.t2, sigma);
  REQUIRE(f1);
  REQUIRE(f2);
  CHECK_FALSE(check_theorem5(inst, sigma, *f1, *f2));

  // identical trees glue every region
  auto same = inst;
  same.t2 = same.t1;
  auto id = identity_embedding(same.t1);
  auto m = check_theorem5(same, same.t1, id, id);
  REQUIRE(m);
  CHECK(same.t1.region(m->p1) == RegionTag::P);
  CHECK(same.t1.region(m->s1) == RegionTag::S);

  CHECK_THROWS_AS(check_theorem5(inst, inst.t1, id, id), InvalidEmbedding);
}

TEST_CASE("no ten-node tree hosts both family trees") {
  auto inst = fig1_family(kChain3, kSingle, kStar3);
  for (const auto& t : enumerate_trees(10)) {
    const bool both = is_minor(inst.t1, t) && is_minor(inst.t2, t);
    CHECK_FALSE(both);
  }
}

TEST_CASE("triple merge sweep over minimum supertrees") {
  auto inst = fig1_family(kChain3, kSingle, kStar3);
  auto scs = smallest_common_supertree(inst.t1, inst.t2, true);
  std::vector<Tree> trees;
  for (const auto& w : scs.witnesses) trees.push_back(w.sigma);
  auto sweep = theorem5_sweep(inst, trees);
  CHECK(sweep.supertrees == trees.size());
  CHECK(sweep.pairs_checked > 0);
  CHECK(sweep.triple_merges == 0);
  CHECK_FALSE(sweep.first_merge);
}

TEST_CASE("chain-extended family sizes") {
  auto one = fig4_family(parse_tree("a"), parse_tree("b"));
  CHECK(one.base.p.size() == 2);
  CHECK(one.base.s.size() == 2);
  CHECK(one.base.r.size() == 2);
  CHECK(one.base.t1.size() == 8);
  CHECK(one.base.t2.size() == 8);

  auto two = fig4_family(parse_tree("a1(a2)"), parse_tree("b"));
  CHECK(two.base.p.size() == 4);
  CHECK(two.base.s.size() == 3);
  CHECK(two.base.r.size() == 4);
  CHECK(two.base.t1.size() == 13);

  CHECK_THROWS_AS(fig4_family(parse_tree("a"), parse_tree("b1(b2)")), std::invalid_argument);
  CHECK_THROWS_AS(fig4_family(parse_tree("a"), parse_tree("b"), parse_tree("x")), std::invalid_argument);
  auto custom = fig4_family(parse_tree("a"), parse_tree("b"), parse_tree("x(y)"));
  CHECK(custom.base.r.size() == 2);
}

TEST_CASE("duplicating candidates add 2n+1 nodes") {
  for (std::size_t n = 1; n <= 2; ++n) {
    for (const auto& a : enumerate_trees(n)) {
      for (const auto& b : enumerate_trees(n)) {
        auto inst = fig4_family(a, b);
        for (const auto& c : fig2_candidates(inst.base)) {
          if (c.label == "c") continue;
          CHECK(c.verified);
          CHECK(c.tree.size() - inst.base.t1.size() == 2 * n + 1);
        }
      }
    }
  }
}

TEST_CASE("star and chain reconstruction") {
  auto inst = fig5_family(parse_tree("a1(a2)"), parse_tree("b"));
  CHECK(inst.status == "RECONSTRUCTED-UNVERIFIED");
  CHECK(inst.p.size() == 3);
  CHECK(inst.s.size() == 2);
  CHECK(inst.t1.size() == 1 + 1 + 3 + 2 + 2);
  CHECK(inst.t2.size() == 1 + 3 + 1 + 1 + 2);
  CHECK(is_minor(inst.t1, inst.b_added));
  CHECK(is_minor(inst.t2, inst.b_added));
  CHECK_THROWS_AS(fig5_family(parse_tree("a"), parse_tree("b1(b2)")), std::invalid_argument);
  auto sym = fig5_family(parse_tree("a"), parse_tree("b"));
  CHECK(sym.n == sym.m);
}

TEST_CASE("transfer constant for the chain-extended family") {
  auto rep = subproblem_transfer_check("fig4", 2, 2, true);
  CHECK(rep.asserted);
  CHECK(rep.multiplicity == 2);
  CHECK(rep.rows.size() == 4);
  CHECK(rep.stable);
  REQUIRE(rep.constant);
  CHECK(*rep.constant == 10);
  CHECK(rep.predicted_constant == 10);
  std::size_t lowest = rep.rows.front().big_optimum;
  for (const auto& r : rep.rows) lowest = std::min(lowest, r.big_optimum);
  for (const auto& r : rep.rows) {
    // A and B are both the 2-chain here
    CHECK(r.sub_optimum == 2);
    CHECK(r.big_optimum == lowest);
  }
  auto one = subproblem_transfer_check("fig4", 1, 1);
  CHECK(one.stable);
  CHECK(one.constant == 6);
}

TEST_CASE("transfer on the reconstruction is report only") {
  auto rep = subproblem_transfer_check("fig5", 2, 2);
  CHECK_FALSE(rep.asserted);
  REQUIRE(rep.rows.size() == 1);
  CHECK(rep.rows[0].facts.count("scs_p_s_is_2n_minus_1") == 1);
  CHECK_THROWS_AS(subproblem_transfer_check("fig9", 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(subproblem_transfer_check("fig4", 1, 2), std::invalid_argument);
}

TEST_CASE("scan small sizes") {
  auto three = scan(3, true, true);
  CHECK(three.pairs == 10);
  CHECK(three.gap_histogram.size() == 1);
  CHECK(three.gap_histogram.at(0) == 10);
  CHECK_FALSE(three.minimal_violation);
  CHECK(three.triples_violating == 0);

  auto four = scan(4, true, false);
  CHECK(four.gap_histogram.size() == 1);
  CHECK(four.gap_histogram.begin()->first == 0);
  CHECK(four.triples_checked == 0);

  CHECK_THROWS_AS(scan(8, true, false), BudgetExceeded);
}

TEST_CASE("scan does not depend on the thread count") {
  SolverConfig one;
  one.jobs = 1;
  SolverConfig many;
  many.jobs = 3;
  auto a = scan(5, true, true, one);
  auto b = scan(5, true, true, many);
  CHECK(a.gap_histogram == b.gap_histogram);
  CHECK(a.triples_violating == b.triples_violating);
  REQUIRE(a.minimal_prop21_violation.has_value() == b.minimal_prop21_violation.has_value());
  if (a.minimal_prop21_violation) CHECK(a.minimal_prop21_violation->t1 == b.minimal_prop21_violation->t1);
}

TEST_CASE("comparable parts can still break the linear relation") {
  // P a single node is a minor of S = chain3, yet the supertree needs an
  // extra node: 7 + 7 - 6 = 8 predicted, 9 required.
  auto inst = fig1_family(parse_tree("p"), parse_tree("r"), parse_tree("s1(s2(s3))"));
  REQUIRE(inst.t1.size() == 7);
  CHECK(oracle::lcs_size(inst.t1, inst.t2) == 6);
  for (const auto& t : enumerate_trees(8)) {
    const bool both = oracle::is_minor(inst.t1, t) && oracle::is_minor(inst.t2, t);
    CHECK_FALSE(both);
  }
  auto scs = smallest_common_supertree(inst.t1, inst.t2);
  REQUIRE(scs.optimum_size == 9);
  const auto& w = scs.witnesses.front();
  CHECK(oracle::is_embedding(w.f1.image, inst.t1, w.sigma));
  CHECK(oracle::is_embedding(w.f2.image, inst.t2, w.sigma));
}

TEST_CASE("smallest violating pair has seven nodes per tree") {
  auto six = scan(6, true, false);
  CHECK(six.gap_histogram.size() == 1);
  CHECK_FALSE(six.minimal_violation);

  auto seven = scan(7, true, false);
  CHECK(seven.pairs == 3655);
  CHECK(seven.gap_histogram[1] == 3);
  REQUIRE(seven.minimal_violation);
  const auto& v = *seven.minimal_violation;
  CHECK(v.lcs == 6);
  CHECK(v.scs == 9);
  auto inst = fig1_family(parse_tree("p"), parse_tree("r"), parse_tree("s1(s2(s3))"));
  auto mirror = fig1_family(parse_tree("s1(s2(s3))"), parse_tree("r"), parse_tree("p"));
  const auto a = parse_tree(v.t1);
  const auto b = parse_tree(v.t2);
  auto matches = [&](const Fig1Instance& i) {
    return (are_isomorphic(a, i.t1) && are_isomorphic(b, i.t2)) || (are_isomorphic(a, i.t2) && are_isomorphic(b, i.t1));
  };
  CHECK((matches(inst) || matches(mirror)));
}
