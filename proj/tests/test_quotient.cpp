#include <doctest.h>

#include <map>
#include <random>

#include "oracles.hpp"
#include "treelab/embedding.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/quotient.hpp"
#include "treelab/solvers.hpp"

using namespace treelab;

namespace {

const Tree kT1 = parse_tree("a(y(p1(p2(p3)),r),s1(s2,s3))");
const Tree kT2 = parse_tree("a(p1(p2(p3)),z(r,s1(s2,s3)))");
const Tree kMu = parse_tree("a(p1(p2(p3)),r,s1(s2,s3))");

MinorEmbedding by_name(const Tree& from, const Tree& into) {
  MinorEmbedding f;
  for (auto v : from.nodes()) f.image.push_back(into.at(from.name(v)));
  return f;
}

QuotientGraph family_quotient() { return build_quotient(kT1, kT2, kMu, by_name(kMu, kT1), by_name(kMu, kT2)); }

std::size_t class_named(const QuotientGraph& q, const std::string& name) {
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (q.classes[k].name == name) return k;
  }
  FAIL("no class " << name);
  return 0;
}

// Quotient arcs recomputed from scratch: project both arc lists through the
// class maps.
std::set<std::pair<std::size_t, std::size_t>> projected_arcs(const Tree& t1, const Tree& t2, const QuotientGraph& q) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (auto [a, b] : t1.arcs()) out.insert({q.ell1[a.index()], q.ell1[b.index()]});
  for (auto [a, b] : t2.arcs()) out.insert({q.ell2[a.index()], q.ell2[b.index()]});
  return out;
}

void check_identities(const Tree& t1, const Tree& t2) {
  auto lcs = largest_common_minor(t1, t2, true);
  for (const auto& w : optimal_lcs_triples(t1, t2, lcs)) {
    auto q = build_quotient(t1, t2, w.mu, w.g1, w.g2);
    CHECK(check_eq2_eq3(q).empty());
    CHECK(q.size() == t1.size() + t2.size() - w.mu.size());
    CHECK(q.arcs == projected_arcs(t1, t2, q));
    // reduce never strands a node that had a parent
    auto in_before = q.to_digraph().in_degrees();
    auto in_after = reduce(q).in_degrees();
    for (std::size_t k = 0; k < q.size(); ++k) {
      if (in_before[k] >= 1) CHECK(in_after[k] >= 1);
    }
  }
}

}  // namespace

TEST_CASE("theta merges exactly the common image") {
  auto t = parse_tree("x(y)");
  auto one = parse_tree("c");
  MinorEmbedding g1{{t.at("y")}};
  MinorEmbedding g2{{t.at("x")}};
  auto th = build_theta(t, t, one, g1, g2);
  CHECK(th.merged_count() == 1);
  CHECK(th.related({1, t.at("y")}, {2, t.at("x")}));
  CHECK_FALSE(th.related({1, t.at("x")}, {2, t.at("x")}));
  CHECK(th.related({1, t.at("x")}, {1, t.at("x")}));

  auto id = build_theta(t, t, t, identity_embedding(t), identity_embedding(t));
  CHECK(id.merged_count() == 2);
  for (const auto& c : id.classes) CHECK(c.size() == 2);

  auto fam = build_theta(kT1, kT2, kMu, by_name(kMu, kT1), by_name(kMu, kT2));
  CHECK(fam.merged_count() == 8);
  CHECK(fam.classes.size() == 10);
}

TEST_CASE("theta rejects invalid embeddings") {
  auto s = parse_tree("a(b,c)");
  auto t = parse_tree("x(y(z))");
  MinorEmbedding bad{{t.at("x"), t.at("y"), t.at("z")}};
  CHECK_THROWS_AS(build_theta(t, t, s, bad, bad), InvalidEmbedding);
}

TEST_CASE("small quotients") {
  auto c = parse_tree("a(b)");
  auto q = build_quotient(c, c, c, identity_embedding(c), identity_embedding(c));
  CHECK(q.size() == 2);
  CHECK(q.arcs.size() == 1);
  CHECK(validate(reduce(q)).empty());

  auto single = parse_tree("c");
  auto q2 = build_quotient(c, single, parse_tree("m"), MinorEmbedding{{c.at("a")}}, MinorEmbedding{{NodeId(0)}});
  CHECK(q2.size() == 2);
  CHECK(q2.arcs == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}});
  CHECK(eq4_prediction(c, single, 1) == 2);
}

TEST_CASE("family quotient arcs") {
  auto q = family_quotient();
  CHECK(q.size() == 10);
  CHECK(check_eq2_eq3(q).empty());
  CHECK(q.mu_image().size() == 8);
  const auto a = class_named(q, "1.a=2.a");
  const auto y = class_named(q, "1.y");
  const auto z = class_named(q, "2.z");
  const auto p = class_named(q, "1.p1=2.p1");
  const auto r = class_named(q, "1.r=2.r");
  const auto s = class_named(q, "1.s1=2.s1");
  for (auto arc : std::vector<std::pair<std::size_t, std::size_t>>{
           {a, y}, {a, z}, {a, p}, {y, p}, {y, r}, {z, r}, {z, s}, {a, s}}) {
    CHECK(q.arcs.count(arc) == 1);
  }
  CHECK(q.arcs.size() == 12);

  auto red = reduce(q);
  CHECK(red.arcs.count({a, p}) == 0);
  CHECK(red.arcs.count({a, s}) == 0);
  CHECK(red.arcs.count({y, r}) == 1);
  CHECK(red.arcs.count({z, r}) == 1);
  auto v = validate(red);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == TreeViolation::Kind::multiple_parents);
  CHECK(v[0].node == r);
  auto deg = red.in_degrees();
  CHECK(std::count(deg.begin(), deg.end(), 2) == 1);
}

TEST_CASE("family quotient breaks clause ii once") {
  auto q = family_quotient();
  auto rep = check_prop21(q);
  CHECK_FALSE(rep.holds);
  REQUIRE(rep.violations.size() == 1);
  const auto& v = rep.violations[0];
  CHECK(v.kind == Prop21Violation::Kind::diamond);
  CHECK(to_string(v.kind) == "ii");
  CHECK(v.v == class_named(q, "1.a=2.a"));
  CHECK(v.w == class_named(q, "1.r=2.r"));
  REQUIRE(v.paths.size() == 2);
  std::set<std::size_t> middles{v.paths[0][1], v.paths[1][1]};
  CHECK(middles == std::set<std::size_t>{class_named(q, "1.y"), class_named(q, "2.z")});
}

TEST_CASE("clause checks on small pairs") {
  auto t = parse_tree("a(b,c(d))");
  auto q = build_quotient(t, t, t, identity_embedding(t), identity_embedding(t));
  CHECK(check_prop21(q).holds);

  auto c2 = parse_tree("x(y)");
  auto s3 = parse_tree("a(b,c)");
  MinorEmbedding g2{{s3.at("a"), s3.at("b")}};
  auto q2 = build_quotient(c2, s3, c2, identity_embedding(c2), g2);
  CHECK(check_prop21(q2).holds);
  CHECK(validate(reduce(q2)).empty());
}

TEST_CASE("a shortcut through an unmerged node satisfies clause i") {
  // T1 = a(x(b)), T2 = a(b), mu = a(b): arc [a]->[b] from T2 plus path via [x].
  auto t1 = parse_tree("a(x(b))");
  auto t2 = parse_tree("a(b)");
  auto mu = parse_tree("a(b)");
  auto q = build_quotient(t1, t2, mu, MinorEmbedding{{t1.at("a"), t1.at("b")}}, identity_embedding(t2));
  auto rep = check_prop21(q);
  // the longer path has no common-image intermediate node and is unique
  CHECK(rep.holds);
  auto red = reduce(q);
  CHECK(red.arcs.size() == 2);
  CHECK(validate(red).empty());
}

TEST_CASE("all paths") {
  auto q = family_quotient();
  auto a = class_named(q, "1.a=2.a");
  auto r = class_named(q, "1.r=2.r");
  CHECK(all_paths(q, a, r).size() == 2);
  CHECK(all_paths(q, r, a).empty());
  auto s2 = class_named(q, "1.s2=2.s2");
  // a->s1->s2 and a->z->s1->s2
  CHECK(all_paths(q, a, s2).size() == 2);
}

TEST_CASE("corrupted quotient is caught") {
  auto q = family_quotient();
  q.classes.pop_back();
  CHECK_FALSE(check_eq2_eq3(q).empty());
  auto q2 = family_quotient();
  q2.mu_via_g1.pop_back();
  CHECK_FALSE(check_eq2_eq3(q2).empty());
}

TEST_CASE("quotient identities on all pairs up to five nodes") {
  std::vector<const Tree*> all;
  for (std::size_t n = 1; n <= 5; ++n) {
    for (const auto& t : enumerate_trees(n)) all.push_back(&t);
  }
  for (const auto* a : all) {
    for (const auto* b : all) check_identities(*a, *b);
  }
}

TEST_CASE("quotient identities on random pairs of six and seven nodes") {
  std::mt19937 rng(2024);
  std::vector<const Tree*> pool;
  for (std::size_t n = 6; n <= 7; ++n) {
    for (const auto& t : enumerate_trees(n)) pool.push_back(&t);
  }
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  for (int i = 0; i < 40; ++i) check_identities(*pool[pick(rng)], *pool[pick(rng)]);
}

TEST_CASE("prediction arithmetic") {
  auto t = parse_tree("a(b)");
  CHECK(eq4_prediction(t, t, 2) == 2);
  CHECK(eq4_prediction(parse_tree("x(y)"), parse_tree("a(b,c)"), 2) == 3);
  CHECK(eq4_prediction(kT1, kT2, 8) == 10);
}

TEST_CASE("clause i on a hand-built graph") {
  QuotientGraph q;
  for (auto [name, in_image] : std::vector<std::pair<const char*, bool>>{{"v", true}, {"x", true}, {"w", false}}) {
    q.classes.push_back({{}, name, in_image});
  }
  q.arcs = {{0, 1}, {1, 2}, {0, 2}};
  auto rep = check_prop21(q);
  REQUIRE(rep.violations.size() == 1);
  CHECK(rep.violations[0].kind == Prop21Violation::Kind::shortcut);
  CHECK(to_string(rep.violations[0].kind) == "i");
  CHECK(rep.violations[0].reason.find("common image") != std::string::npos);
  CHECK(rep.violations[0].reason.find("[x]") != std::string::npos);
  auto red = reduce(q);
  CHECK(red.arcs == std::set<std::pair<std::size_t, std::size_t>>{{0, 1}, {1, 2}});
}
