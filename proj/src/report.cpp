#include "treelab/report.hpp"

#include <cstdio>
#include <stdexcept>

namespace treelab {

using nlohmann::json;

json embedding_to_json(const MinorEmbedding& f, const Tree& s, const Tree& t) {
  json j = json::object();
  for (auto v : s.nodes()) j[s.name(v)] = t.name(f(v));
  return j;
}

CandidateMap embedding_from_json(const json& j, const Tree& s, const Tree& t) {
  if (!j.is_object()) throw std::invalid_argument("embedding must be a JSON object");
  CandidateMap f(s.size());
  for (auto it = j.begin(); it != j.end(); ++it) {
    auto src = s.find(it.key());
    if (!src) throw std::invalid_argument("unknown source node \"" + it.key() + "\"");
    if (!it.value().is_string()) throw std::invalid_argument("embedding values must be node names");
    auto dst = t.find(it.value().get<std::string>());
    if (!dst) throw std::invalid_argument("unknown target node \"" + it.value().get<std::string>() + "\"");
    f[src->index()] = *dst;
  }
  return f;
}

json violations_to_json(const std::vector<EmbeddingViolation>& vs, const Tree& s, const Tree& t) {
  json out = json::array();
  for (const auto& v : vs) {
    json j;
    j["kind"] = to_string(v.kind);
    if (v.arc) j["arc"] = {s.name(v.arc->first), s.name(v.arc->second)};
    if (v.node) j["node"] = s.name(*v.node);
    if (v.witness && v.witness->index() < t.size()) j["witness_node"] = t.name(*v.witness);
    j["reason"] = v.reason;
    out.push_back(std::move(j));
  }
  return out;
}

json tree_violations_to_json(const std::vector<TreeViolation>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back({{"kind", to_string(v.kind)}, {"message", v.message}});
  return out;
}

namespace {

json levels_to_json(const std::vector<LevelScan>& levels) {
  json out = json::array();
  for (const auto& l : levels) out.push_back({{"size", l.size}, {"candidates", l.candidates}, {"hits", l.hits}});
  return out;
}

json class_path_to_json(const QuotientGraph& q, const ClassPath& p) {
  json out = json::array();
  for (auto k : p) out.push_back(q.classes[k].name);
  return out;
}

json arcs_to_json(const Digraph& g) {
  json out = json::array();
  for (auto [a, b] : g.arcs) out.push_back({g.nodes[a].name, g.nodes[b].name});
  return out;
}

json scan_pair_to_json(const ScanPair& p) {
  return {{"t1", p.t1}, {"t2", p.t2}, {"lcs", p.lcs}, {"scs", p.scs}, {"gap", p.gap}};
}

}  // namespace

json lcs_to_json(const LcsResult& r, const Tree& t1, const Tree& t2, double wall_time_ms) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"tree_literal", print_tree(w.mu)},
                         {"embedding1", embedding_to_json(w.g1, w.mu, t1)},
                         {"embedding2", embedding_to_json(w.g2, w.mu, t2)}});
  }
  return {{"schema_version", schema_version},
          {"kind", "lcs"},
          {"optimum_size", r.optimum_size},
          {"witness_count", r.witnesses.size()},
          {"witnesses", witnesses},
          {"levels_scanned", levels_to_json(r.levels)},
          {"timing", {{"wall_time_ms", wall_time_ms}}}};
}

json scs_to_json(const ScsResult& r, const Tree& t1, const Tree& t2, double wall_time_ms) {
  json witnesses = json::array();
  for (const auto& w : r.witnesses) {
    witnesses.push_back({{"tree_literal", print_tree(w.sigma)},
                         {"embedding1", embedding_to_json(w.f1, t1, w.sigma)},
                         {"embedding2", embedding_to_json(w.f2, t2, w.sigma)}});
  }
  return {{"schema_version", schema_version},
          {"kind", "scs"},
          {"optimum_size", r.optimum_size},
          {"witness_count", r.witnesses.size()},
          {"witnesses", witnesses},
          {"levels_scanned", levels_to_json(r.levels)},
          {"timing", {{"wall_time_ms", wall_time_ms}}}};
}

json prop21_to_json(const QuotientGraph& q, const Prop21Report& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json paths = json::array();
    for (const auto& p : v.paths) paths.push_back(class_path_to_json(q, p));
    violations.push_back({{"kind", to_string(v.kind)},
                          {"v", q.classes[v.v].name},
                          {"w", q.classes[v.w].name},
                          {"paths", paths},
                          {"reason", v.reason}});
  }
  return {{"holds", r.holds}, {"violations", violations}};
}

json quotient_to_json(const QuotientGraph& q, const Prop21Report& prop21, const Digraph& reduced,
                      std::size_t eq4_prediction) {
  json classes = json::array();
  for (const auto& c : q.classes) {
    json members = json::array();
    for (auto m : c.members) members.push_back(std::to_string(m.origin) + ":" + std::to_string(m.node.index()));
    classes.push_back({{"name", c.name}, {"members", members}, {"in_mu_image", c.in_mu_image}});
  }
  auto reduced_violations = validate(reduced);
  return {{"schema_version", schema_version},
          {"kind", "quotient"},
          {"classes", classes},
          {"arcs", arcs_to_json(q.to_digraph())},
          {"eq2_eq3_violations", check_eq2_eq3(q)},
          {"prop21", prop21_to_json(q, prop21)},
          {"reduced_arcs", arcs_to_json(reduced)},
          {"reduced_is_tree", reduced_violations.empty()},
          {"reduced_violations", tree_violations_to_json(reduced_violations)},
          {"eq4_prediction", eq4_prediction}};
}

json fig1_to_json(const Fig1Instance& inst) {
  return {{"schema_version", schema_version},
          {"kind", "family"},
          {"family", "fig1"},
          {"p", print_tree(inst.p)},
          {"r", print_tree(inst.r)},
          {"s", print_tree(inst.s)},
          {"t1", print_tree(inst.t1)},
          {"t2", print_tree(inst.t2)},
          {"claimed_mu", print_tree(inst.claimed_mu)},
          {"g1", embedding_to_json(inst.g1, inst.claimed_mu, inst.t1)},
          {"g2", embedding_to_json(inst.g2, inst.claimed_mu, inst.t2)},
          {"sizes", {{"t1", inst.t1.size()}, {"t2", inst.t2.size()}, {"claimed_mu", inst.claimed_mu.size()}}},
          {"warnings", inst.warnings}};
}

json verification_to_json(const VerificationReport& r) {
  const auto& inst = r.instance;
  json candidates = json::array();
  for (const auto& c : r.candidates) {
    candidates.push_back({{"case", c.label}, {"tree_literal", print_tree(c.tree)}, {"size", c.tree.size()},
                          {"verified", c.verified}});
  }
  json scs_witnesses = json::array();
  if (r.scs) {
    for (const auto& w : r.scs->witnesses) scs_witnesses.push_back(print_tree(w.sigma));
  }
  const auto& mu = r.lcs.witnesses.front().mu;
  json timing = json::object();
  for (const auto& [k, v] : r.timing_ms) timing[k + "_ms"] = v;
  return {{"schema_version", schema_version},
          {"kind", "verification"},
          {"parameters", {{"p", print_tree(inst.p)}, {"r", print_tree(inst.r)}, {"s", print_tree(inst.s)}}},
          {"t1", print_tree(inst.t1)},
          {"t2", print_tree(inst.t2)},
          {"sizes", {{"t1", inst.t1.size()}, {"t2", inst.t2.size()}}},
          {"lcs_size", r.lcs.optimum_size},
          {"lcs_witness", print_tree(mu)},
          {"eq4_prediction", r.eq4_prediction},
          {"scs_size", r.scs_size},
          {"scs_exact", r.scs_exact},
          {"scs_witnesses", scs_witnesses},
          {"gap", r.gap ? json(*r.gap) : json(nullptr)},
          {"prop21", prop21_to_json(r.quotient, r.prop21)},
          {"reduced_is_tree", r.reduced_violations.empty()},
          {"reduced_violations", tree_violations_to_json(r.reduced_violations)},
          {"theorem5_ok", r.theorem5_ok},
          {"candidates", candidates},
          {"candidates_bound_scs", r.candidates_bound_scs},
          {"warnings", r.warnings},
          {"timing", timing}};
}

json transfer_to_json(const TransferReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"a", row.a},
                    {"b", row.b},
                    {"r", row.r},
                    {"big_optimum", row.big_optimum},
                    {"sub_optimum", row.sub_optimum},
                    {"offset", row.offset},
                    {"facts", row.facts}});
  }
  return {{"schema_version", schema_version},
          {"kind", "transfer"},
          {"family", r.family},
          {"measure", r.measure},
          {"n", r.n},
          {"m", r.m},
          {"multiplicity", r.multiplicity},
          {"rows", rows},
          {"constant", r.constant ? json(*r.constant) : json(nullptr)},
          {"stable", r.stable},
          {"predicted_constant", r.predicted_constant ? json(*r.predicted_constant) : json(nullptr)},
          {"status", r.asserted ? "asserted" : "report-only"}};
}

json scan_to_json(const ScanReport& r) {
  json histogram = json::object();
  for (const auto& [gap, count] : r.gap_histogram) histogram[std::to_string(gap)] = count;
  json j = {{"schema_version", schema_version},
            {"kind", "scan"},
            {"max_size", r.max_size},
            {"pairs", r.pairs},
            {"checks", json::array()}};
  if (r.check_eq4) {
    j["checks"].push_back("eq4");
    j["gap_histogram"] = histogram;
    j["minimal_violation"] = r.minimal_violation ? scan_pair_to_json(*r.minimal_violation) : json(nullptr);
  }
  if (r.check_prop21) {
    j["checks"].push_back("prop21");
    j["prop21"] = {{"triples_checked", r.triples_checked},
                   {"triples_violating", r.triples_violating},
                   {"pairs_with_violation", r.pairs_with_prop21_violation},
                   {"minimal_violation",
                    r.minimal_prop21_violation ? scan_pair_to_json(*r.minimal_prop21_violation) : json(nullptr)},
                   {"holds_but_reduced_not_tree", r.holds_but_reduced_not_tree},
                   {"first_holds_but_reduced_not_tree",
                    r.first_holds_but_not_tree ? scan_pair_to_json(*r.first_holds_but_not_tree) : json(nullptr)}};
  }
  return j;
}

std::string verification_to_text(const VerificationReport& r) {
  char buf[512];
  std::string out;
  auto row = [&](const char* name, const std::string& value) {
    std::snprintf(buf, sizeof buf, "%-22s %s\n", name, value.c_str());
    out += buf;
  };
  row("|T1|", std::to_string(r.instance.t1.size()));
  row("|T2|", std::to_string(r.instance.t2.size()));
  row("|Tmu|", std::to_string(r.lcs.optimum_size));
  row("linear prediction", std::to_string(r.eq4_prediction));
  row("|Tsigma|", std::to_string(r.scs_size) + (r.scs_exact ? "" : " (lower bound)"));
  row("gap", r.gap ? std::to_string(*r.gap) : std::string("unknown"));
  row("no-diamond claim holds", r.prop21.holds ? "yes" : "no");
  row("reduced T_po is tree", r.reduced_violations.empty() ? "yes" : "no");
  row("triple-merge check", r.theorem5_ok ? "ok" : "triple merge found");
  for (const auto& w : r.warnings) row("warning", w);
  return out;
}

}  // namespace treelab
