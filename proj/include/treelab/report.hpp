#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "treelab/embedding.hpp"
#include "treelab/families.hpp"
#include "treelab/quotient.hpp"
#include "treelab/solvers.hpp"
#include "treelab/tree.hpp"

namespace treelab {

inline constexpr const char* schema_version = "treelab-report/1";

/// {"source_node": "target_node", ...}
nlohmann::json embedding_to_json(const MinorEmbedding& f, const Tree& s, const Tree& t);

/// Reads an embedding object by node name. Unknown source names or target
/// names raise std::invalid_argument; missing source nodes stay unmapped.
CandidateMap embedding_from_json(const nlohmann::json& j, const Tree& s, const Tree& t);

/// [{arc, reason, witness_node?}, ...]
nlohmann::json violations_to_json(const std::vector<EmbeddingViolation>& v, const Tree& s, const Tree& t);
nlohmann::json tree_violations_to_json(const std::vector<TreeViolation>& v);

nlohmann::json lcs_to_json(const LcsResult& r, const Tree& t1, const Tree& t2, double wall_time_ms);
nlohmann::json scs_to_json(const ScsResult& r, const Tree& t1, const Tree& t2, double wall_time_ms);
nlohmann::json quotient_to_json(const QuotientGraph& q, const Prop21Report& prop21, const Digraph& reduced,
                                std::size_t eq4_prediction);
nlohmann::json prop21_to_json(const QuotientGraph& q, const Prop21Report& r);
nlohmann::json fig1_to_json(const Fig1Instance& inst);
nlohmann::json verification_to_json(const VerificationReport& r);
nlohmann::json transfer_to_json(const TransferReport& r);
nlohmann::json scan_to_json(const ScanReport& r);

/// Fixed-width table of the size relation for a verification run.
std::string verification_to_text(const VerificationReport& r);

}  // namespace treelab
