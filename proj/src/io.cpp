#include "capdom/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

namespace capdom {

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> tokens;
    std::istringstream is(line);
    std::string tok;
    while (is >> tok) {
        if (tok[0] == '#') break;
        tokens.push_back(tok);
    }
    return tokens;
}

} // namespace

int NamedInstance::id_of(const std::string& name) const {
    for (int v = 0; v < static_cast<int>(names.size()); ++v)
        if (names[v] == name) return v;
    return -1;
}

RotationSystem NamedInstance::embedding() const {
    if (rs) return *rs;
    if (grid) {
        RotationSystem derived = grid_embedding(grid->first, grid->second);
        if (static_cast<int>(derived.rot.size()) != inst.vertex_count())
            throw ValidationError("grid dimensions do not match the vertex count");
        return derived;
    }
    throw ValidationError("instance has no embedding (and no grid line to derive one)");
}

NamedInstance parse_instance(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    bool header_seen = false;

    std::vector<std::string> names;
    std::unordered_map<std::string, int> id;
    std::vector<VertexParams> params;
    std::vector<std::pair<std::string, std::string>> edge_names;
    std::map<std::string, std::vector<std::string>> rotations;
    std::vector<std::vector<std::string>> outer_lines;
    std::optional<std::pair<int, int>> grid;

    auto fail = [&](const std::string& what) -> void {
        throw ParseError("line " + std::to_string(lineno) + ": " + what);
    };
    auto rat = [&](const std::string& tok) {
        try {
            return parse_rational(tok);
        } catch (const ParseError& e) {
            fail(e.what());
            return Rational(0); // unreachable
        }
    };

    while (std::getline(is, line)) {
        ++lineno;
        auto tokens = tokenize(line);
        if (tokens.empty()) continue;
        if (!header_seen) {
            if (tokens.size() != 2 || tokens[0] != "capdom" || tokens[1] != "1")
                fail("expected header 'capdom 1'");
            header_seen = true;
            continue;
        }
        const std::string& kind = tokens[0];
        if (kind == "vertex") {
            if (tokens.size() != 5) fail("vertex lines take: name cost capacity demand");
            if (id.count(tokens[1])) fail("duplicate vertex name '" + tokens[1] + "'");
            id[tokens[1]] = static_cast<int>(names.size());
            names.push_back(tokens[1]);
            params.push_back({rat(tokens[2]), rat(tokens[3]), rat(tokens[4])});
        } else if (kind == "edge") {
            if (tokens.size() != 3) fail("edge lines take two vertex names");
            edge_names.push_back({tokens[1], tokens[2]});
        } else if (kind == "grid") {
            if (tokens.size() != 3) fail("grid lines take rows and cols");
            try {
                grid = {std::stoi(tokens[1]), std::stoi(tokens[2])};
            } catch (...) {
                fail("malformed grid dimensions");
            }
        } else if (kind == "rotation") {
            if (tokens.size() < 3 || tokens[2] != ":")
                fail("rotation lines take: name : neighbors...");
            if (rotations.count(tokens[1])) fail("duplicate rotation for '" + tokens[1] + "'");
            rotations[tokens[1]] = std::vector<std::string>(tokens.begin() + 3, tokens.end());
        } else if (kind == "outer") {
            if (tokens.size() < 2) fail("outer lines take a vertex walk");
            outer_lines.push_back(std::vector<std::string>(tokens.begin() + 1, tokens.end()));
        } else {
            fail("unknown directive '" + kind + "'");
        }
    }
    if (!header_seen) throw ParseError("missing header 'capdom 1'");

    auto lookup = [&](const std::string& name) {
        auto it = id.find(name);
        if (it == id.end()) throw ParseError("unknown vertex name '" + name + "'");
        return it->second;
    };

    std::vector<std::pair<int, int>> edges;
    for (const auto& [a, b] : edge_names) edges.push_back({lookup(a), lookup(b)});

    NamedInstance named;
    named.inst = Instance::validated(std::move(params), std::move(edges));
    named.names = std::move(names);
    named.grid = grid;

    if (!rotations.empty() || !outer_lines.empty()) {
        RotationSystem rs;
        rs.rot.assign(named.inst.vertex_count(), {});
        for (const auto& [name, nbrs] : rotations) {
            int v = lookup(name);
            for (const auto& u : nbrs) rs.rot[v].push_back(lookup(u));
        }
        for (const auto& walk : outer_lines) {
            std::vector<int> w;
            for (const auto& name : walk) w.push_back(lookup(name));
            rs.outer_walks.push_back(std::move(w));
        }
        named.rs = std::move(rs);
    }
    return named;
}

NamedInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_instance(buffer.str());
}

std::string serialize_instance(const NamedInstance& named) {
    std::ostringstream os;
    os << "capdom 1\n";
    const Instance& inst = named.inst;
    for (int v = 0; v < inst.vertex_count(); ++v)
        os << "vertex " << named.name(v) << " " << format_rational(inst.cost(v)) << " "
           << format_rational(inst.capacity(v)) << " " << format_rational(inst.demand(v)) << "\n";
    for (const auto& [u, v] : inst.edges())
        os << "edge " << named.name(u) << " " << named.name(v) << "\n";
    if (named.grid) os << "grid " << named.grid->first << " " << named.grid->second << "\n";
    if (named.rs) {
        for (int v = 0; v < inst.vertex_count(); ++v) {
            os << "rotation " << named.name(v) << " :";
            for (int u : named.rs->rot[v]) os << " " << named.name(u);
            os << "\n";
        }
        for (const auto& walk : named.rs->outer_walks) {
            os << "outer";
            for (int v : walk) os << " " << named.name(v);
            os << "\n";
        }
    }
    return os.str();
}

void save_instance(const NamedInstance& named, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot write '" + path + "'");
    out << serialize_instance(named);
}

NamedInstance name_generated(const GeneratedInstance& gen) {
    NamedInstance named;
    named.inst = gen.inst;
    named.rs = gen.rs;
    named.names.reserve(gen.inst.vertex_count());
    for (int v = 0; v < gen.inst.vertex_count(); ++v) named.names.push_back("v" + std::to_string(v));
    return named;
}

namespace {

nlohmann::json assignment_json(const DemandAssignment& f, const std::vector<std::string>& names) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [key, amount] : f.entries())
        arr.push_back({names[key.first], names[key.second], format_rational(amount)});
    return arr;
}

nlohmann::json multiplicity_json(const Multiplicity& x, const std::vector<std::string>& names) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t v = 0; v < x.size(); ++v)
        if (x[v] != 0) arr.push_back({names[v], x[v]});
    return arr;
}

void fill_meta(nlohmann::json& j, const ResultMeta& meta) {
    j["format"] = "capdom-result-1";
    j["algorithm"] = meta.algorithm;
    j["mode"] = meta.mode;
    j["input"] = meta.input;
    if (meta.seed) j["seed"] = *meta.seed;
    j["timings_ms"] = meta.timings_ms;
}

} // namespace

nlohmann::json result_to_json(const SolveResult& result, const NamedInstance& named,
                              const ResultMeta& meta) {
    nlohmann::json j;
    fill_meta(j, meta);
    j["feasible"] = result.report.feasible;
    j["cost"] = format_rational(result.report.cost);
    j["dual_sum"] = format_rational(result.dual_sum);
    j["max_factor"] = result.max_factor;
    j["certified"] = result.certified;
    j["assignment"] = assignment_json(result.report.assignment, named.names);
    j["multiplicity"] = multiplicity_json(result.report.multiplicity, named.names);

    nlohmann::json parts = nlohmann::json::array();
    for (const auto& cert : result.parts) {
        nlohmann::json p;
        p["component"] = cert.component;
        p["residue"] = cert.residue;
        p["level"] = cert.level;
        p["factor"] = cert.factor;
        p["degree_bound"] = cert.degree_bound;
        p["dual_value"] = format_rational(cert.dual_val);
        p["cost"] = format_rational(cert.part_cost);

        nlohmann::json verts = nlohmann::json::array();
        nlohmann::json demands = nlohmann::json::array();
        nlohmann::json targets = nlohmann::json::array();
        for (int v = 0; v < cert.part_instance.vertex_count(); ++v) {
            verts.push_back(named.name(cert.to_original[v]));
            if (cert.part_instance.demand(v) > 0)
                demands.push_back({named.name(cert.to_original[v]),
                                   format_rational(cert.part_instance.demand(v))});
            if (cert.target[v]) targets.push_back(named.name(cert.to_original[v]));
        }
        p["vertices"] = verts;
        p["demands"] = demands;
        p["targets"] = targets;

        nlohmann::json edges = nlohmann::json::array();
        for (const auto& [u, v] : cert.part_instance.edges())
            edges.push_back({named.name(cert.to_original[u]), named.name(cert.to_original[v])});
        p["edges"] = edges;

        nlohmann::json fpart = nlohmann::json::array();
        for (const auto& [key, amount] : cert.part_assignment.entries())
            fpart.push_back({named.name(cert.to_original[key.first]),
                             named.name(cert.to_original[key.second]), format_rational(amount)});
        p["assignment"] = fpart;

        nlohmann::json y = nlohmann::json::array(), z = nlohmann::json::array(),
                       g = nlohmann::json::array();
        for (int v = 0; v < cert.part_instance.vertex_count(); ++v) {
            if (cert.dual.y[v] != 0)
                y.push_back({named.name(cert.to_original[v]), format_rational(cert.dual.y[v])});
            if (cert.dual.z[v] != 0)
                z.push_back({named.name(cert.to_original[v]), format_rational(cert.dual.z[v])});
        }
        for (const auto& [key, value] : cert.dual.g)
            if (value != 0)
                g.push_back({named.name(cert.to_original[key.first]),
                             named.name(cert.to_original[key.second]), format_rational(value)});
        p["y"] = y;
        p["z"] = z;
        p["g"] = g;

        if (!cert.events.empty()) p["events"] = cert.events;
        parts.push_back(std::move(p));
    }
    j["parts"] = std::move(parts);
    return j;
}

nlohmann::json exact_to_json(const ExactSolution& solution, const NamedInstance& named,
                             const ResultMeta& meta) {
    nlohmann::json j;
    fill_meta(j, meta);
    j["feasible"] = true;
    j["cost"] = format_rational(solution.opt);
    j["assignment"] = assignment_json(solution.f, named.names);
    j["multiplicity"] = multiplicity_json(solution.x, named.names);
    return j;
}

namespace {

struct NameResolver {
    const NamedInstance& named;
    std::unordered_map<std::string, int> ids;

    explicit NameResolver(const NamedInstance& ni) : named(ni) {
        for (int v = 0; v < static_cast<int>(ni.names.size()); ++v) ids[ni.names[v]] = v;
    }
    int operator()(const std::string& name, std::vector<std::string>& failures) const {
        auto it = ids.find(name);
        if (it != ids.end()) return it->second;
        failures.push_back("unknown vertex name '" + name + "' in result");
        return -1;
    }
};

} // namespace

VerifyReport verify_result(const NamedInstance& named, const nlohmann::json& result) {
    VerifyReport report;
    auto& failures = report.failures;
    const Instance& inst = named.inst;
    NameResolver resolve(named);

    try {
        if (result.value("format", "") != "capdom-result-1") {
            failures.push_back("unknown result format");
            return report;
        }

        DemandAssignment combined;
        for (const auto& triple : result.at("assignment")) {
            int v = resolve(triple.at(0).get<std::string>(), failures);
            int u = resolve(triple.at(1).get<std::string>(), failures);
            if (v < 0 || u < 0) return report;
            combined.add(v, u, parse_rational(triple.at(2).get<std::string>()));
        }

        SolutionReport check = check_feasible(combined, inst);
        if (check.feasible != result.at("feasible").get<bool>())
            failures.push_back("recorded feasibility flag does not match the assignment");
        for (const auto& violation : check.violations)
            failures.push_back("demand not covered at vertex '" + named.name(violation.vertex) +
                               "' (shortfall " + format_rational(violation.shortfall) + ")");
        Rational recorded_cost = parse_rational(result.at("cost").get<std::string>());
        if (recorded_cost != check.cost)
            failures.push_back("recorded cost " + format_rational(recorded_cost) +
                               " differs from recomputed " + format_rational(check.cost));
        Multiplicity recorded_x(inst.vertex_count(), 0);
        if (result.contains("multiplicity"))
            for (const auto& entry : result.at("multiplicity")) {
                int v = resolve(entry.at(0).get<std::string>(), failures);
                if (v < 0) return report;
                recorded_x[v] = entry.at(1).get<long long>();
            }
        if (recorded_x != check.multiplicity)
            failures.push_back("recorded multiplicities differ from the ceiling formula");

        if (!result.contains("parts")) {
            report.ok = failures.empty();
            return report;
        }

        Rational dual_sum = 0;
        DemandAssignment part_total;
        for (const auto& p : result.at("parts")) {
            std::string tag = "part (component " + std::to_string(p.value("component", -1)) +
                              ", residue " + std::to_string(p.value("residue", -1)) +
                              ", level " + std::to_string(p.value("level", -1)) + ")";

            std::vector<int> to_orig;
            std::unordered_map<int, int> local_of;
            for (const auto& name : p.at("vertices")) {
                int v = resolve(name.get<std::string>(), failures);
                if (v < 0) return report;
                local_of[v] = static_cast<int>(to_orig.size());
                to_orig.push_back(v);
            }
            const int pn = static_cast<int>(to_orig.size());

            std::vector<Rational> demands(pn, Rational(0));
            for (const auto& entry : p.at("demands")) {
                int v = resolve(entry.at(0).get<std::string>(), failures);
                if (v < 0) return report;
                demands[local_of.at(v)] = parse_rational(entry.at(1).get<std::string>());
            }
            std::vector<VertexParams> params;
            for (int i = 0; i < pn; ++i) {
                VertexParams vp = inst.params(to_orig[i]);
                vp.demand = demands[i];
                params.push_back(vp);
            }
            std::vector<std::pair<int, int>> edges;
            for (const auto& e : p.at("edges")) {
                int u = resolve(e.at(0).get<std::string>(), failures);
                int v = resolve(e.at(1).get<std::string>(), failures);
                if (u < 0 || v < 0) return report;
                edges.push_back({local_of.at(u), local_of.at(v)});
            }
            Instance part_inst = Instance::validated(std::move(params), std::move(edges));

            DemandAssignment fpart;
            for (const auto& triple : p.at("assignment")) {
                int v = resolve(triple.at(0).get<std::string>(), failures);
                int u = resolve(triple.at(1).get<std::string>(), failures);
                if (v < 0 || u < 0) return report;
                fpart.add(local_of.at(v), local_of.at(u),
                          parse_rational(triple.at(2).get<std::string>()));
                part_total.add(v, u, parse_rational(triple.at(2).get<std::string>()));
            }
            SolutionReport part_check = check_feasible(fpart, part_inst);
            if (!part_check.feasible) failures.push_back(tag + ": assignment infeasible");
            Rational part_cost = parse_rational(p.at("cost").get<std::string>());
            if (part_cost != part_check.cost)
                failures.push_back(tag + ": recorded cost differs from recomputed");

            DualSolution dual;
            dual.y.assign(pn, Rational(0));
            dual.z.assign(pn, Rational(0));
            for (const auto& entry : p.at("y")) {
                int v = resolve(entry.at(0).get<std::string>(), failures);
                if (v < 0) return report;
                dual.y[local_of.at(v)] = parse_rational(entry.at(1).get<std::string>());
            }
            for (const auto& entry : p.at("z")) {
                int v = resolve(entry.at(0).get<std::string>(), failures);
                if (v < 0) return report;
                dual.z[local_of.at(v)] = parse_rational(entry.at(1).get<std::string>());
            }
            for (const auto& entry : p.at("g")) {
                int u = resolve(entry.at(0).get<std::string>(), failures);
                int v = resolve(entry.at(1).get<std::string>(), failures);
                if (u < 0 || v < 0) return report;
                dual.g[{local_of.at(u), local_of.at(v)}] =
                    parse_rational(entry.at(2).get<std::string>());
            }
            for (const auto& violation : verify_dual(dual, part_inst)) {
                std::string kind =
                    violation.kind == DualViolation::Kind::VertexConstraint ? "vertex constraint"
                    : violation.kind == DualViolation::Kind::PairConstraint ? "pair constraint"
                                                                            : "negative variable";
                std::string at = "'" + named.name(to_orig[violation.u]) + "'";
                if (violation.v >= 0) at += " / '" + named.name(to_orig[violation.v]) + "'";
                failures.push_back(tag + ": dual " + kind + " violated at " + at + " by " +
                                   format_rational(violation.excess));
            }
            Rational dual_val = parse_rational(p.at("dual_value").get<std::string>());
            if (dual_val != dual_value(dual, part_inst))
                failures.push_back(tag + ": recorded dual value differs from recomputed");
            dual_sum += dual_val;

            int factor = p.at("factor").get<int>();
            if (part_check.cost > Rational(factor) * dual_val)
                failures.push_back(tag + ": cost exceeds " + std::to_string(factor) +
                                   " * dual value");
        }

        if (!(part_total == combined))
            failures.push_back("combined assignment is not the sum of the parts");
        if (result.contains("dual_sum") &&
            parse_rational(result.at("dual_sum").get<std::string>()) != dual_sum)
            failures.push_back("recorded dual sum differs from the parts");
        if (result.contains("max_factor")) {
            Rational bound = Rational(result.at("max_factor").get<int>()) * dual_sum;
            if (check.cost > bound)
                failures.push_back("total cost exceeds max_factor * dual sum");
        }
    } catch (const nlohmann::json::exception& e) {
        failures.push_back(std::string("malformed result file: ") + e.what());
    } catch (const ParseError& e) {
        failures.push_back(std::string("malformed value in result file: ") + e.what());
    } catch (const ValidationError& e) {
        failures.push_back(std::string("invalid data in result file: ") + e.what());
    }

    report.ok = failures.empty();
    return report;
}

} // namespace capdom
