#include <doctest.h>

#include "oracles.hpp"
#include "treelab/canonical.hpp"
#include "treelab/embedding.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/tree.hpp"

using namespace treelab;

namespace {

CandidateMap by_name(const Tree& s, const Tree& t, std::initializer_list<std::pair<const char*, const char*>> m) {
  CandidateMap f(s.size());
  for (auto [a, b] : m) f[s.at(a).index()] = t.at(b);
  return f;
}

std::vector<const Tree*> trees_up_to(std::size_t n) {
  std::vector<const Tree*> out;
  for (std::size_t k = 1; k <= n; ++k) {
    for (const auto& t : enumerate_trees(k)) out.push_back(&t);
  }
  return out;
}

}  // namespace

TEST_CASE("identity is an embedding") {
  for (std::size_t n = 1; n <= 7; ++n) {
    for (const auto& t : enumerate_trees(n)) CHECK(check_embedding(identity_embedding(t), t, t).empty());
  }
}

TEST_CASE("star into chain through an image node") {
  auto s = parse_tree("a(b,c)");
  auto t = parse_tree("x(y(z))");
  auto v = check_embedding(by_name(s, t, {{"a", "x"}, {"b", "y"}, {"c", "z"}}), s, t);
  REQUIRE(v.size() == 1);
  CHECK(v[0].kind == EmbeddingViolation::Kind::intermediate_image);
  CHECK(v[0].arc == std::pair{s.at("a"), s.at("c")});
  CHECK(v[0].witness == t.at("y"));
}

TEST_CASE("candidate map defects are violations") {
  auto s = parse_tree("a(b)");
  auto t = parse_tree("x(y,z)");
  CHECK(check_embedding(by_name(s, t, {{"a", "x"}}), s, t).front().kind == EmbeddingViolation::Kind::not_total);
  auto dup = by_name(s, t, {{"a", "y"}, {"b", "y"}});
  bool injective_reported = false;
  for (const auto& v : check_embedding(dup, s, t)) {
    injective_reported = injective_reported || v.kind == EmbeddingViolation::Kind::not_injective;
  }
  CHECK(injective_reported);
  auto wrong_way = by_name(s, t, {{"a", "y"}, {"b", "x"}});
  CHECK(check_embedding(wrong_way, s, t).front().kind == EmbeddingViolation::Kind::no_path);
  CandidateMap far(2);
  far[0] = NodeId(0);
  far[1] = NodeId(9);
  CHECK(check_embedding(far, s, t).front().kind == EmbeddingViolation::Kind::out_of_range);
  auto ls = parse_tree("a:q(b)");
  auto lt = parse_tree("x:r(y)");
  CHECK(check_embedding(by_name(ls, lt, {{"a", "x"}, {"b", "y"}}), ls, lt).front().kind ==
        EmbeddingViolation::Kind::label_mismatch);
}

TEST_CASE("family common minor maps into T1 through y") {
  auto mu = parse_tree("a(p1(p2(p3)),r,s1(s2,s3))");
  auto t1 = parse_tree("a(y(p1(p2(p3)),r),s1(s2,s3))");
  MinorEmbedding g;
  for (auto v : mu.nodes()) g.image.push_back(t1.at(mu.name(v)));
  CHECK(check_embedding(g, mu, t1).empty());
  std::vector<NodeId> arc{mu.at("a"), mu.at("p1")};
  auto img = map_path(g, mu, t1, arc);
  CHECK(img == std::vector<NodeId>{t1.at("a"), t1.at("y"), t1.at("p1")});
  CHECK(map_path(g, mu, t1, std::vector<NodeId>{mu.at("r")}) == std::vector<NodeId>{t1.at("r")});
  std::vector<NodeId> bad{mu.at("r"), mu.at("a")};
  CHECK_THROWS_AS(map_path(g, mu, t1, bad), std::invalid_argument);

  CHECK(incomparable(mu, mu.at("p1"), mu.at("s1")));
  CHECK(incomparable(t1, t1.at("p1"), t1.at("s1")));
  CHECK_FALSE(check_lemma4(g, mu, t1));
}

TEST_CASE("induced minors") {
  auto c = parse_tree("x(y(z))");
  std::vector<NodeId> all{NodeId(0), NodeId(1), NodeId(2)};
  CHECK(print_tree(induced_minor(c, all)) == "x(y(z))");
  std::vector<NodeId> ends{c.at("x"), c.at("z")};
  CHECK(print_tree(induced_minor(c, ends)) == "x(z)");
  auto s = parse_tree("a(b,c)");
  std::vector<NodeId> leaves{s.at("b"), s.at("c")};
  try {
    induced_minor(s, leaves);
    FAIL("no throw");
  } catch (const MultiRootError& e) {
    CHECK(e.roots().size() == 2);
  }
  CHECK(subset_roots(s, leaves).size() == 2);
}

TEST_CASE("enumerate_embeddings small cases") {
  CHECK(enumerate_embeddings(parse_tree("a"), parse_tree("x(y)")).size() == 2);
  auto two = enumerate_embeddings(parse_tree("p1(p2)"), parse_tree("a(b,c)"));
  REQUIRE(two.size() == 2);
  CHECK(two[0].image == std::vector<NodeId>{NodeId(0), NodeId(1)});
  CHECK(two[1].image == std::vector<NodeId>{NodeId(0), NodeId(2)});
  CHECK(enumerate_embeddings(parse_tree("a(b,c)"), parse_tree("x(y(z))")).empty());
  CHECK(enumerate_embeddings(parse_tree("a(b(c))"), parse_tree("a")).empty());
  auto capped = enumerate_embeddings(parse_tree("a"), parse_tree("x(y,z,w)"), 2);
  CHECK(capped.size() == 2);
  CHECK(capped[0].image[0] == NodeId(0));
}

TEST_CASE("is_minor basics") {
  auto c3 = parse_tree("x(y(z))");
  auto s3 = parse_tree("a(b,c)");
  CHECK(is_minor(c3, c3));
  CHECK(is_minor(parse_tree("p(q)"), s3));
  CHECK_FALSE(is_minor(s3, c3));
  CHECK_FALSE(is_minor_by_subsets(s3, c3));
  CHECK(is_minor(parse_tree("a:k"), parse_tree("x(y:k)")));
  CHECK_FALSE(is_minor(parse_tree("a:k"), parse_tree("x(y:j)")));
}

TEST_CASE("embedding enumeration matches brute force up to five nodes") {
  auto all = trees_up_to(5);
  for (const auto* s : all) {
    for (const auto* t : all) {
      auto mine = enumerate_embeddings(*s, *t);
      CHECK(mine.size() == oracle::count_embeddings(*s, *t));
      for (const auto& f : mine) CHECK(oracle::is_embedding(f.image, *s, *t));
      CHECK(is_minor(*s, *t) == oracle::is_minor(*s, *t));
    }
  }
}

TEST_CASE("backtracking and subset strategies agree up to six nodes") {
  auto all = trees_up_to(6);
  for (const auto* s : all) {
    for (const auto* t : all) {
      const bool a = is_minor(*s, *t);
      CHECK(a == is_minor_by_subsets(*s, *t));
      if (auto w = find_minor_subset(*s, *t)) CHECK(are_isomorphic(induced_minor(*t, *w), *s));
    }
  }
}

TEST_CASE("image of every embedding induces the source up to six nodes") {
  auto all = trees_up_to(6);
  for (const auto* s : all) {
    for (const auto* t : all) {
      for_each_embedding(*s, *t, [&](const MinorEmbedding& f) {
        std::vector<NodeId> img = f.image;
        std::sort(img.begin(), img.end());
        CHECK(are_isomorphic(induced_minor(*t, img), *s));
        // the source root lands on the unique topmost image node
        for (auto v : s->nodes()) CHECK(oracle::reaches(*t, f(s->root()), f(v)));
        return true;
      });
    }
  }
}

TEST_CASE("incomparability") {
  auto c = parse_tree("x(y)");
  CHECK_FALSE(incomparable(c, c.at("x"), c.at("y")));
  CHECK_FALSE(incomparable(c, c.at("x"), c.at("x")));
  auto s = parse_tree("a(b,c)");
  CHECK(incomparable(s, s.at("b"), s.at("c")));
  CHECK_THROWS(incomparable(s, s.at("b"), NodeId(7)));
}

TEST_CASE("lemma4 rejects invalid embeddings") {
  auto s = parse_tree("a(b,c)");
  auto t = parse_tree("x(y(z))");
  MinorEmbedding f{{t.at("x"), t.at("y"), t.at("z")}};
  CHECK_THROWS_AS(check_lemma4(f, s, t), InvalidEmbedding);
  CHECK_FALSE(check_lemma4(identity_embedding(s), s, s));
}

TEST_CASE("search target limit") {
  std::string lit = "r(";
  for (int i = 0; i < 70; ++i) lit += (i ? ",c" : "c") + std::to_string(i);
  lit += ")";
  auto big = parse_tree(lit);
  CHECK_THROWS(is_minor(parse_tree("a(b)"), big));
}
