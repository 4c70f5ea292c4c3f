#pragma once

#include "capdom/embedding.hpp"
#include "capdom/instance.hpp"
#include "capdom/oracle.hpp"
#include "capdom/pipeline.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace capdom {

/// Parsed instance file: dense-id instance, external vertex names, and the
/// optional embedding block (or grid dimensions it can be derived from).
struct NamedInstance {
    Instance inst;
    std::vector<std::string> names;
    std::optional<RotationSystem> rs;
    std::optional<std::pair<int, int>> grid;

    const std::string& name(int v) const { return names[v]; }
    int id_of(const std::string& name) const; // -1 when unknown

    /// The embedding block when present, else the canonical grid embedding.
    /// Throws ValidationError when neither is available.
    RotationSystem embedding() const;
};

/// Text format:
///   capdom 1
///   vertex <name> <cost> <capacity> <demand>   (rationals "p/q" or decimals)
///   edge <name> <name>
///   grid <rows> <cols>                         (optional)
///   rotation <name> : <neighbors ccw...>       (optional block)
///   outer <walk...>                            (one line per component)
/// '#' starts a comment. Serialization is canonical and round-trips.
NamedInstance parse_instance(const std::string& text);
NamedInstance load_instance(const std::string& path);
std::string serialize_instance(const NamedInstance& named);
void save_instance(const NamedInstance& named, const std::string& path);

NamedInstance name_generated(const GeneratedInstance& gen);

struct ResultMeta {
    std::string algorithm;
    std::string mode;
    std::string input;
    std::optional<std::uint64_t> seed;
    std::map<std::string, double> timings_ms;
};

nlohmann::json result_to_json(const SolveResult& result, const NamedInstance& named,
                              const ResultMeta& meta);
nlohmann::json exact_to_json(const ExactSolution& solution, const NamedInstance& named,
                             const ResultMeta& meta);

struct VerifyReport {
    bool ok = false;
    std::vector<std::string> failures;
};

/// Independent re-check of a result file against its instance: assignment
/// support and feasibility, multiplicity and cost recomputation, per-part
/// dual feasibility, the per-part cost <= factor * dual_value bound, and
/// consistency of the combined assignment with the parts.
VerifyReport verify_result(const NamedInstance& named, const nlohmann::json& result);

} // namespace capdom
