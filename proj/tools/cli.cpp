#include "cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "treelab/canonical.hpp"
#include "treelab/dot.hpp"
#include "treelab/embedding.hpp"
#include "treelab/enumerate.hpp"
#include "treelab/errors.hpp"
#include "treelab/families.hpp"
#include "treelab/quotient.hpp"
#include "treelab/report.hpp"
#include "treelab/solvers.hpp"
#include "treelab/tree.hpp"

namespace treelab::cli {

using nlohmann::json;

namespace {

struct Globals {
  std::size_t jobs = 0;
  std::string format = "json";
  std::string dot_dir;
  std::optional<std::size_t> budget_nodes;

  SolverConfig config() const {
    SolverConfig c;
    c.jobs = jobs;
    if (budget_nodes) c.max_input_nodes = *budget_nodes;
    return c;
  }
  bool text() const { return format == "text"; }
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// "@path" reads the argument from a file.
std::string load(const std::string& arg) {
  if (arg.empty() || arg.front() != '@') return arg;
  std::ifstream in(arg.substr(1));
  if (!in) throw UsageError("cannot read " + arg.substr(1));
  std::stringstream ss;
  ss << in.rdbuf();
  auto s = ss.str();
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  return s;
}

Tree tree_arg(const std::string& arg) { return parse_tree(load(arg)); }

json json_arg(const std::string& arg) {
  try {
    return json::parse(load(arg));
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("bad JSON argument: ") + e.what());
  }
}

MinorEmbedding complete_embedding(const CandidateMap& f, const Tree& s, const Tree& t, const char* which) {
  if (auto v = check_embedding(f, s, t); !v.empty()) {
    throw InvalidEmbedding(std::string(which) + " is not a minor embedding: " + v.front().reason);
  }
  MinorEmbedding g;
  for (const auto& x : f) g.image.push_back(*x);
  return g;
}

double since_ms(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t).count();
}

class Dumper {
 public:
  explicit Dumper(const std::string& dir) : dir_(dir) {
    if (!dir_.empty()) std::filesystem::create_directories(dir_);
  }
  void operator()(const std::string& name, const std::string& dot) const {
    if (dir_.empty()) return;
    std::ofstream out(std::filesystem::path(dir_) / (name + ".dot"));
    if (!out) throw std::runtime_error("cannot write " + name + ".dot under " + dir_);
    out << dot;
  }

 private:
  std::string dir_;
};

std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// Quotient inputs: explicit (mu, g1, g2), or the first optimal LCS witness.
struct QuotientInput {
  Tree t1, t2;
  std::vector<LcsWitness> witnesses;
};

struct QuotientArgs {
  std::string t1, t2, mu, g1, g2;
  bool all = false;

  void add_to(CLI::App* sub) {
    sub->add_option("T1", t1, "first tree")->required();
    sub->add_option("T2", t2, "second tree")->required();
    sub->add_option("--mu", mu, "common minor (default: an optimal LCS witness)");
    sub->add_option("--g1", g1, "embedding mu -> T1 as a JSON object of node names");
    sub->add_option("--g2", g2, "embedding mu -> T2 as a JSON object of node names");
  }

  QuotientInput resolve(const SolverConfig& config) const {
    QuotientInput in{tree_arg(t1), tree_arg(t2), {}};
    if (mu.empty()) {
      if (!g1.empty() || !g2.empty()) throw UsageError("--g1/--g2 need --mu");
      auto lcs = largest_common_minor(in.t1, in.t2, all, config);
      in.witnesses = all ? optimal_lcs_triples(in.t1, in.t2, lcs) : lcs.witnesses;
      return in;
    }
    auto m = tree_arg(mu);
    auto pick = [&](const std::string& arg, const Tree& t, const char* which) {
      if (arg.empty()) {
        auto f = find_minor_embedding(m, t);
        if (!f) throw UsageError(std::string("mu is not a minor of ") + which);
        return *f;
      }
      return complete_embedding(embedding_from_json(json_arg(arg), m, t), m, t, which);
    };
    auto f1 = pick(g1, in.t1, "T1");
    auto f2 = pick(g2, in.t2, "T2");
    in.witnesses.push_back({m, f1, f2});
    return in;
  }
};

std::string tree_summary(const Tree& t) {
  std::ostringstream os;
  os << print_tree(t) << "  nodes=" << t.size() << " height=" << t.height() << " leaves=" << t.leaf_count();
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations on rooted unordered trees", "treelab"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--jobs", g.jobs, "worker threads (0: all cores)");
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--dot-dir", g.dot_dir, "write DOT renderings into this directory");
  app.add_option("--budget-nodes", g.budget_nodes, "largest input accepted by subset-based searches");

  std::function<int()> action;
  auto verb = [&](const char* name, const char* help) { return app.add_subcommand(name, help); };

  // parse / canon / iso
  std::string a1, a2;
  auto* parse = verb("parse", "validate a tree literal and print it back");
  parse->add_option("TREE", a1)->required();
  parse->callback([&] {
    action = [&] {
      auto t = tree_arg(a1);
      if (g.text()) {
        out << tree_summary(t) << "\n";
      } else {
        out << json{{"schema_version", schema_version}, {"kind", "tree"}, {"literal", print_tree(t)},
                    {"size", t.size()}, {"height", t.height()}, {"leaves", t.leaf_count()},
                    {"canonical", canonical_code(t).code}}
                   .dump(2)
            << "\n";
      }
      Dumper(g.dot_dir)("tree", to_dot(t));
      return ok;
    };
  });

  auto* canon = verb("canon", "print the canonical code");
  canon->add_option("TREE", a1)->required();
  canon->callback([&] {
    action = [&] {
      auto code = canonical_code(tree_arg(a1)).code;
      if (g.text()) {
        out << code << "\n";
      } else {
        out << json{{"schema_version", schema_version}, {"kind", "canonical"}, {"code", code}}.dump(2) << "\n";
      }
      return ok;
    };
  });

  auto* iso = verb("iso", "test two trees for isomorphism");
  iso->add_option("T1", a1)->required();
  iso->add_option("T2", a2)->required();
  iso->callback([&] {
    action = [&] {
      const bool same = are_isomorphic(tree_arg(a1), tree_arg(a2));
      if (g.text()) {
        out << (same ? "isomorphic" : "not isomorphic") << "\n";
      } else {
        out << json{{"schema_version", schema_version}, {"kind", "iso"}, {"isomorphic", same}}.dump(2) << "\n";
      }
      return same ? ok : property_violated;
    };
  });

  // enum
  std::size_t size = 0;
  std::string strategy = "level";
  auto* enumerate = verb("enum", "list all rooted unordered trees of one size");
  enumerate->add_option("--size", size)->required();
  enumerate->add_option("--strategy", strategy)->check(CLI::IsMember({"level", "grow"}));
  enumerate->callback([&] {
    action = [&] {
      std::vector<Tree> trees;
      if (strategy == "level") {
        trees = enumerate_trees(size);
      } else {
        if (size > default_enumeration_cap) throw BudgetExceeded("size exceeds the enumeration cap");
        trees = generate_trees(size, EnumerationStrategy::grow_and_dedup);
      }
      if (g.text()) {
        for (const auto& t : trees) out << print_tree(t) << "\n";
      } else {
        json list = json::array();
        for (const auto& t : trees) list.push_back(print_tree(t));
        out << json{{"schema_version", schema_version}, {"kind", "enumeration"}, {"size", size},
                    {"count", trees.size()}, {"trees", list}}
                   .dump(2)
            << "\n";
      }
      return ok;
    };
  });

  // minor / embeddings / check / lemma4
  auto* minor = verb("minor", "find one minor embedding S -> T");
  minor->add_option("S", a1)->required();
  minor->add_option("T", a2)->required();
  minor->callback([&] {
    action = [&] {
      auto s = tree_arg(a1);
      auto t = tree_arg(a2);
      auto f = find_minor_embedding(s, t);
      if (g.text()) {
        if (!f) {
          out << "not a minor\n";
        } else {
          for (auto v : s.nodes()) out << s.name(v) << " -> " << t.name((*f)(v)) << "\n";
        }
      } else {
        out << json{{"schema_version", schema_version}, {"kind", "minor"}, {"is_minor", f.has_value()},
                    {"embedding", f ? embedding_to_json(*f, s, t) : json(nullptr)}}
                   .dump(2)
            << "\n";
      }
      return f ? ok : property_violated;
    };
  });

  std::optional<std::size_t> limit;
  auto* embeddings = verb("embeddings", "enumerate minor embeddings S -> T");
  embeddings->add_option("S", a1)->required();
  embeddings->add_option("T", a2)->required();
  embeddings->add_option("--limit", limit);
  embeddings->callback([&] {
    action = [&] {
      auto s = tree_arg(a1);
      auto t = tree_arg(a2);
      auto all = enumerate_embeddings(s, t, limit);
      if (g.text()) {
        for (const auto& f : all) {
          std::string sep;
          for (auto v : s.nodes()) {
            out << sep << s.name(v) << "->" << t.name(f(v));
            sep = " ";
          }
          out << "\n";
        }
        out << all.size() << " embedding(s)\n";
      } else {
        json list = json::array();
        for (const auto& f : all) list.push_back(embedding_to_json(f, s, t));
        out << json{{"schema_version", schema_version}, {"kind", "embeddings"}, {"count", all.size()},
                    {"embeddings", list}}
                   .dump(2)
            << "\n";
      }
      return ok;
    };
  });

  std::string map_arg;
  auto* check = verb("check", "validate a node map S -> T as a minor embedding");
  check->add_option("S", a1)->required();
  check->add_option("T", a2)->required();
  check->add_option("--map", map_arg, "JSON object of node names")->required();
  check->callback([&] {
    action = [&] {
      auto s = tree_arg(a1);
      auto t = tree_arg(a2);
      auto v = check_embedding(embedding_from_json(json_arg(map_arg), s, t), s, t);
      if (g.text()) {
        if (v.empty()) out << "valid minor embedding\n";
        for (const auto& x : v) out << to_string(x.kind) << ": " << x.reason << "\n";
      } else {
        out << json{{"schema_version", schema_version}, {"kind", "check"}, {"valid", v.empty()},
                    {"violations", violations_to_json(v, s, t)}}
                   .dump(2)
            << "\n";
      }
      return v.empty() ? ok : property_violated;
    };
  });

  auto* lemma4 = verb("lemma4", "check incomparability preservation for every embedding S -> T");
  lemma4->add_option("S", a1)->required();
  lemma4->add_option("T", a2)->required();
  lemma4->callback([&] {
    action = [&] {
      auto s = tree_arg(a1);
      auto t = tree_arg(a2);
      std::size_t count = 0;
      json bad = nullptr;
      for_each_embedding(s, t, [&](const MinorEmbedding& f) {
        ++count;
        if (auto w = check_lemma4(f, s, t)) {
          bad = {{"embedding", embedding_to_json(f, s, t)}, {"a", s.name(w->a)}, {"b", s.name(w->b)}};
          return false;
        }
        return true;
      });
      if (g.text()) {
        out << count << " embedding(s) checked, " << (bad.is_null() ? "no counterwitness" : "counterwitness found")
            << "\n";
      } else {
        out << json{{"schema_version", schema_version}, {"kind", "lemma4"}, {"embeddings_checked", count},
                    {"counterwitness", bad}}
                   .dump(2)
            << "\n";
      }
      return bad.is_null() ? ok : property_violated;
    };
  });

  // lcs / scs / edit
  bool all = false;
  std::optional<std::size_t> max_size;
  auto* lcs = verb("lcs", "largest common minor");
  lcs->add_option("T1", a1)->required();
  lcs->add_option("T2", a2)->required();
  lcs->add_flag("--all", all, "report one witness per isomorphism class");
  lcs->callback([&] {
    action = [&] {
      auto t1 = tree_arg(a1);
      auto t2 = tree_arg(a2);
      auto start = std::chrono::steady_clock::now();
      auto r = largest_common_minor(t1, t2, all, g.config());
      auto ms = since_ms(start);
      if (g.text()) {
        out << "optimum " << r.optimum_size << "\n";
        for (const auto& w : r.witnesses) out << print_tree(w.mu) << "\n";
      } else {
        out << lcs_to_json(r, t1, t2, ms).dump(2) << "\n";
      }
      Dumper dump(g.dot_dir);
      for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        dump("lcs_" + std::to_string(i), to_dot(r.witnesses[i].mu, "Tmu"));
      }
      return ok;
    };
  });

  auto* scs = verb("scs", "smallest common supertree");
  scs->add_option("T1", a1)->required();
  scs->add_option("T2", a2)->required();
  scs->add_flag("--all", all, "report one witness per isomorphism class");
  scs->add_option("--max-size", max_size, "stop the scan at this size");
  scs->callback([&] {
    action = [&] {
      auto t1 = tree_arg(a1);
      auto t2 = tree_arg(a2);
      auto start = std::chrono::steady_clock::now();
      auto r = smallest_common_supertree(t1, t2, all, max_size, g.config());
      auto ms = since_ms(start);
      if (g.text()) {
        out << "optimum " << r.optimum_size << "\n";
        for (const auto& w : r.witnesses) out << print_tree(w.sigma) << "\n";
      } else {
        out << scs_to_json(r, t1, t2, ms).dump(2) << "\n";
      }
      Dumper dump(g.dot_dir);
      for (std::size_t i = 0; i < r.witnesses.size(); ++i) {
        dump("scs_" + std::to_string(i), to_dot(r.witnesses[i].sigma, "Tsigma"));
      }
      return ok;
    };
  });

  auto* edit = verb("edit", "unit-cost deletion distance via the largest common minor");
  edit->add_option("T1", a1)->required();
  edit->add_option("T2", a2)->required();
  edit->callback([&] {
    action = [&] {
      auto d = unit_edit_distance(tree_arg(a1), tree_arg(a2), g.config());
      if (g.text()) {
        out << d << "\n";
      } else {
        out << json{{"schema_version", schema_version}, {"kind", "edit_distance"}, {"distance", d}}.dump(2) << "\n";
      }
      return ok;
    };
  });

  // quotient / prop21
  QuotientArgs qa;
  auto* quotient = verb("quotient", "build the quotient supergraph T_po");
  qa.add_to(quotient);
  quotient->callback([&] {
    action = [&] {
      auto in = qa.resolve(g.config());
      const auto& w = in.witnesses.front();
      auto q = build_quotient(in.t1, in.t2, w.mu, w.g1, w.g2);
      auto p21 = check_prop21(q);
      auto red = reduce(q);
      auto eq = check_eq2_eq3(q);
      auto pred = eq4_prediction(in.t1, in.t2, w.mu.size());
      if (g.text()) {
        out << "classes " << q.size() << ", prediction " << pred << "\n";
        for (const auto& [v, x] : q.to_digraph().arcs) out << q.classes[v].name << " -> " << q.classes[x].name << "\n";
        for (const auto& e : eq) out << "identity failed: " << e << "\n";
      } else {
        auto j = quotient_to_json(q, p21, red, pred);
        j["mu"] = print_tree(w.mu);
        out << j.dump(2) << "\n";
      }
      Dumper dump(g.dot_dir);
      dump("T_po", to_dot(q.to_digraph(), "T_po"));
      dump("T_po_reduced", to_dot(red, "T_po_reduced"));
      return eq.empty() ? ok : property_violated;
    };
  });

  auto* prop21 = verb("prop21", "check both clauses of the reduction claim on T_po");
  qa.add_to(prop21);
  prop21->add_flag("--all-witnesses", qa.all, "check every optimal LCS triple");
  prop21->callback([&] {
    action = [&] {
      auto in = qa.resolve(g.config());
      bool holds = true;
      json reports = json::array();
      for (const auto& w : in.witnesses) {
        auto q = build_quotient(in.t1, in.t2, w.mu, w.g1, w.g2);
        auto r = check_prop21(q);
        auto red = reduce(q);
        auto tree_ok = validate(red).empty();
        holds = holds && r.holds;
        if (g.text()) {
          out << print_tree(w.mu) << ": " << (r.holds ? "holds" : "violated") << ", reduced "
              << (tree_ok ? "is" : "is not") << " a tree\n";
          for (const auto& v : r.violations) {
            out << "  (" << to_string(v.kind) << ") [" << q.classes[v.v].name << "] -> [" << q.classes[v.w].name
                << "]: " << v.reason << "\n";
          }
        } else {
          auto j = prop21_to_json(q, r);
          j["mu"] = print_tree(w.mu);
          j["reduced_is_tree"] = tree_ok;
          reports.push_back(j);
        }
      }
      if (!g.text()) {
        out << json{{"schema_version", schema_version}, {"kind", "prop21"}, {"holds", holds}, {"reports", reports}}
                   .dump(2)
            << "\n";
      }
      return holds ? ok : property_violated;
    };
  });

  // family / verify / theorem5
  std::string family_name, p_arg, r_arg, s_arg, a_arg, b_arg;
  auto* family = verb("family", "generate a family instance");
  family->add_option("NAME", family_name)->required()->check(CLI::IsMember({"fig1", "fig4", "fig5"}));
  family->add_option("--p", p_arg);
  family->add_option("--r", r_arg);
  family->add_option("--s", s_arg);
  family->add_option("--a", a_arg);
  family->add_option("--b", b_arg);
  family->callback([&] {
    action = [&] {
      Dumper dump(g.dot_dir);
      json j;
      if (family_name == "fig1") {
        if (p_arg.empty() || r_arg.empty() || s_arg.empty()) throw UsageError("fig1 needs --p, --r and --s");
        auto inst = fig1_family(tree_arg(p_arg), tree_arg(r_arg), tree_arg(s_arg));
        j = fig1_to_json(inst);
        json cands = json::array();
        for (const auto& c : fig2_candidates(inst, g.config())) {
          cands.push_back({{"case", c.label}, {"tree_literal", print_tree(c.tree)}, {"size", c.tree.size()},
                           {"added_nodes", c.tree.size() - inst.t1.size()}, {"verified", c.verified}});
        }
        j["candidates"] = cands;
        dump("T1", to_dot(inst.t1, "T1"));
        dump("T2", to_dot(inst.t2, "T2"));
        dump("Tmu", to_dot(inst.claimed_mu, "Tmu"));
      } else {
        if (a_arg.empty() || b_arg.empty()) throw UsageError(family_name + " needs --a and --b");
        auto a = tree_arg(a_arg);
        auto b = tree_arg(b_arg);
        if (family_name == "fig4") {
          std::optional<Tree> r;
          if (!r_arg.empty()) r = tree_arg(r_arg);
          auto inst = fig4_family(a, b, r);
          j = fig1_to_json(inst.base);
          j["family"] = "fig4";
          j["n"] = inst.n;
          j["m"] = inst.m;
          j["status"] = inst.status;
          json cands = json::array();
          for (const auto& c : fig2_candidates(inst.base, g.config())) {
            cands.push_back({{"case", c.label}, {"size", c.tree.size()},
                             {"added_nodes", c.tree.size() - inst.base.t1.size()}, {"verified", c.verified}});
          }
          j["candidates"] = cands;
          j["expected_added_nodes"] = 2 * inst.n + 1;
          dump("T1", to_dot(inst.base.t1, "T1"));
          dump("T2", to_dot(inst.base.t2, "T2"));
        } else {
          auto inst = fig5_family(a, b);
          j = {{"schema_version", schema_version}, {"kind", "family"}, {"family", "fig5"},
               {"status", inst.status}, {"n", inst.n}, {"m", inst.m}, {"p", print_tree(inst.p)},
               {"s", print_tree(inst.s)}, {"t1", print_tree(inst.t1)}, {"t2", print_tree(inst.t2)},
               {"b_added", print_tree(inst.b_added)},
               {"sizes", {{"t1", inst.t1.size()}, {"t2", inst.t2.size()}, {"b_added", inst.b_added.size()}}}};
          dump("T1", to_dot(inst.t1, "T1"));
          dump("T2", to_dot(inst.t2, "T2"));
        }
      }
      if (g.text()) {
        out << "T1 " << j["t1"].get<std::string>() << "\nT2 " << j["t2"].get<std::string>() << "\n";
        if (j.contains("candidates")) {
          for (const auto& c : j["candidates"]) {
            out << "candidate " << c["case"].get<std::string>() << " size " << c["size"] << " verified "
                << c["verified"] << "\n";
          }
        }
      } else {
        out << j.dump(2) << "\n";
      }
      return ok;
    };
  });

  auto* verify = verb("verify", "run the full counterexample pipeline on a family instance");
  verify->add_option("NAME", family_name)->required()->check(CLI::IsMember({"fig1"}));
  verify->add_option("--p", p_arg)->required();
  verify->add_option("--r", r_arg)->required();
  verify->add_option("--s", s_arg)->required();
  verify->callback([&] {
    action = [&] {
      auto rep = verify_counterexample(tree_arg(p_arg), tree_arg(r_arg), tree_arg(s_arg), g.config());
      if (g.text()) {
        out << verification_to_text(rep);
      } else {
        out << verification_to_json(rep).dump(2) << "\n";
      }
      Dumper dump(g.dot_dir);
      dump("T1", to_dot(rep.instance.t1, "T1"));
      dump("T2", to_dot(rep.instance.t2, "T2"));
      dump("Tmu", to_dot(rep.lcs.witnesses.front().mu, "Tmu"));
      dump("T_po", to_dot(rep.quotient.to_digraph(), "T_po"));
      dump("T_po_reduced", to_dot(rep.reduced, "T_po_reduced"));
      if (rep.scs) {
        for (std::size_t i = 0; i < rep.scs->witnesses.size(); ++i) {
          dump("Tsigma_" + std::to_string(i), to_dot(rep.scs->witnesses[i].sigma, "Tsigma"));
        }
      }
      const bool violated = (rep.gap && *rep.gap != 0) || !rep.prop21.holds || !rep.reduced_violations.empty() ||
                            !rep.theorem5_ok || !rep.candidates_bound_scs;
      return violated ? property_violated : ok;
    };
  });

  auto* theorem5 = verb("theorem5", "sweep every minimum supertree and embedding pair for a triple merge");
  theorem5->add_option("--p", p_arg)->required();
  theorem5->add_option("--r", r_arg)->required();
  theorem5->add_option("--s", s_arg)->required();
  theorem5->callback([&] {
    action = [&] {
      auto inst = fig1_family(tree_arg(p_arg), tree_arg(r_arg), tree_arg(s_arg));
      auto cfg = g.config();
      auto scs_all = smallest_common_supertree(inst.t1, inst.t2, true, std::nullopt, cfg);
      std::vector<Tree> trees;
      for (const auto& w : scs_all.witnesses) trees.push_back(w.sigma);
      auto sw = theorem5_sweep(inst, trees, cfg);
      json j = {{"schema_version", schema_version},
                {"kind", "theorem5"},
                {"scs_size", scs_all.optimum_size},
                {"supertrees", sw.supertrees},
                {"f1_embeddings", sw.f1_embeddings},
                {"f2_embeddings", sw.f2_embeddings},
                {"pairs_checked", sw.pairs_checked},
                {"triple_merges", sw.triple_merges},
                {"first_merge", sw.first_merge ? json(*sw.first_merge) : json(nullptr)}};
      if (g.text()) {
        out << sw.supertrees << " supertree(s), " << sw.pairs_checked << " pair(s), " << sw.triple_merges
            << " triple merge(s)\n";
      } else {
        out << j.dump(2) << "\n";
      }
      return sw.triple_merges == 0 ? ok : property_violated;
    };
  });

  // scan / transfer
  std::string checks = "eq4";
  std::size_t cap = default_scan_cap;
  auto* scan_cmd = verb("scan", "exhaustive check over all pairs of small trees");
  scan_cmd->add_option("--max-size", size)->required();
  scan_cmd->add_option("--check", checks, "comma list of eq4, prop21");
  scan_cmd->add_option("--cap", cap, "largest size accepted");
  scan_cmd->callback([&] {
    action = [&] {
      bool eq4 = false, p21 = false;
      for (const auto& c : split_csv(checks)) {
        if (c == "eq4") {
          eq4 = true;
        } else if (c == "prop21") {
          p21 = true;
        } else {
          throw UsageError("unknown check " + c);
        }
      }
      auto r = scan(size, eq4, p21, g.config(), cap);
      if (g.text()) {
        out << r.pairs << " pair(s)\n";
        for (const auto& [gap, n] : r.gap_histogram) out << "gap " << gap << ": " << n << "\n";
        if (r.minimal_violation) {
          out << "minimal violation " << r.minimal_violation->t1 << " " << r.minimal_violation->t2 << "\n";
        }
        if (p21) {
          out << r.triples_checked << " triple(s), " << r.triples_violating << " violating\n";
        }
      } else {
        out << scan_to_json(r).dump(2) << "\n";
      }
      const bool violated = r.minimal_violation.has_value() || r.triples_violating > 0;
      return violated ? property_violated : ok;
    };
  });

  std::size_t tn = 2, tm = 2;
  bool vary_r = false;
  auto* transfer = verb("transfer", "relate a family optimum to its (A, B) subproblem optimum");
  transfer->add_option("NAME", family_name)->required()->check(CLI::IsMember({"fig4", "fig5"}));
  transfer->add_option("--n", tn);
  transfer->add_option("--m", tm);
  transfer->add_flag("--vary-r", vary_r, "use every R of 2n nodes (fig4)");
  transfer->callback([&] {
    action = [&] {
      auto r = subproblem_transfer_check(family_name, tn, tm, vary_r, g.config());
      if (g.text()) {
        for (const auto& row : r.rows) {
          out << row.a << " " << row.b << " " << row.r << ": big " << row.big_optimum << " sub " << row.sub_optimum
              << " offset " << row.offset << "\n";
        }
        out << (r.stable ? "stable" : "not stable") << (r.asserted ? "" : " (report only)") << "\n";
      } else {
        out << transfer_to_json(r).dump(2) << "\n";
      }
      return (r.asserted && !r.stable) ? property_violated : ok;
    };
  });

  try {
    app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage_error;
  }

  try {
    return action();
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what();
    if (e.lower_bound()) err << " (optimum is at least " << *e.lower_bound() << ")";
    err << "\n";
    return usage_error;
  } catch (const ParseError& e) {
    err << "parse error at position " << e.position() << ": " << e.what() << "\n";
    return usage_error;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return usage_error;
  }
}

}  // namespace treelab::cli
