#include "capdom/pipeline.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>

namespace capdom {

namespace {

/// Induced sub-instance on `verts` (sorted parent ids), keeping the parent
/// edges accepted by `edge_keep` (called with parent ids). Demands are taken
/// from `demand_override` when non-null.
template <class EdgeKeep>
SubInstance build_sub(const Instance& parent, const std::vector<int>& verts, EdgeKeep edge_keep,
                      const std::vector<Rational>* demand_override) {
    std::vector<int> local(parent.vertex_count(), -1);
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) local[verts[i]] = i;

    std::vector<VertexParams> params;
    params.reserve(verts.size());
    for (int v : verts) {
        VertexParams p = parent.params(v);
        if (demand_override) p.demand = (*demand_override)[v];
        params.push_back(p);
    }
    std::vector<std::pair<int, int>> edges;
    for (const auto& [u, v] : parent.edges()) {
        if (local[u] == -1 || local[v] == -1) continue;
        if (!edge_keep(u, v)) continue;
        edges.push_back({local[u], local[v]});
    }
    SubInstance sub{Instance::validated(std::move(params), std::move(edges)), verts};
    return sub;
}

/// Inputs the residue split needs, independent of where the layering and
/// orders came from (instance embedding or slab middle level).
struct PartSource {
    const Instance* base = nullptr;
    std::vector<int> layer;      // -1 for off-ladder (adjacent level) vertices
    std::vector<int> order;      // valid where layer >= 0
    std::vector<int> side;       // 0 / -1 / +1
    std::vector<int> side_order; // valid where side != 0
    bool slab = false;
};

std::array<DecompositionPart, 3> make_parts(const PartSource& src) {
    const Instance& base = *src.base;
    const int n = base.vertex_count();
    std::array<DecompositionPart, 3> parts;

    for (int i = 0; i < 3; ++i) {
        std::vector<char> is_target(n, 0);
        for (int v = 0; v < n; ++v)
            if (src.side[v] == 0 && src.layer[v] >= 0 && src.layer[v] % 3 == i) is_target[v] = 1;

        std::vector<char> in_part(n, 0);
        for (int v = 0; v < n; ++v) {
            if (!is_target[v]) continue;
            in_part[v] = 1;
            for (int u : base.neighbors(v)) in_part[u] = 1;
        }
        std::vector<int> verts;
        for (int v = 0; v < n; ++v)
            if (in_part[v]) verts.push_back(v);

        std::vector<Rational> demands(n, Rational(0));
        for (int v = 0; v < n; ++v)
            if (is_target[v]) demands[v] = base.demand(v);

        DecompositionPart& part = parts[i];
        part.residue = i;
        part.slab = src.slab;
        part.sub = build_sub(
            base, verts, [&](int u, int v) { return is_target[u] || is_target[v]; }, &demands);

        const int m = static_cast<int>(verts.size());
        part.target.assign(m, 0);
        part.layer.assign(m, -1);
        part.order.assign(m, -1);
        part.side.assign(m, 0);
        part.side_order.assign(m, -1);
        for (int i2 = 0; i2 < m; ++i2) {
            int v = verts[i2];
            part.target[i2] = is_target[v];
            part.layer[i2] = src.layer[v];
            part.order[i2] = src.order[v];
            part.side[i2] = src.side[v];
            part.side_order[i2] = src.side_order[v];
        }
    }
    return parts;
}

} // namespace

LayerDecomposition decompose(const GeneralLadder& ladder, const Instance& inst) {
    PartSource src;
    src.base = &inst;
    src.layer = ladder.layer_of;
    src.order = ladder.order_rank;
    src.side.assign(inst.vertex_count(), 0);
    src.side_order.assign(inst.vertex_count(), -1);
    src.slab = false;
    return {make_parts(src)};
}

ReducedGraph reduce(const DecompositionPart& part) {
    const Instance& g = part.sub.inst;
    const int n = g.vertex_count();

    ReducedGraph red;
    red.kept.assign(n, {});
    red.removed_per_vertex.assign(n, 0);
    red.degree_bound = part.slab ? 8 : 6;

    std::vector<std::pair<int, int>> removed;
    for (int v = 0; v < n; ++v) {
        if (!part.target[v]) continue;
        KeptNeighbors& kn = red.kept[v];

        kn.ranking.push_back(v);
        for (int u : g.neighbors(v)) kn.ranking.push_back(u);
        std::sort(kn.ranking.begin(), kn.ranking.end(), [&](int a, int b) {
            if (g.cost(a) != g.cost(b)) return g.cost(a) < g.cost(b);
            return a < b;
        });

        const Rational& d = g.demand(v);
        for (std::size_t t = 0; t < kn.ranking.size(); ++t)
            if (g.capacity(kn.ranking[t]) > d) {
                kn.j = kn.ranking[t];
                break;
            }
        std::size_t j_rank = kn.ranking.size(); // "none" sentinel: past the end
        if (kn.j != -1)
            j_rank = static_cast<std::size_t>(
                std::find(kn.ranking.begin(), kn.ranking.end(), kn.j) - kn.ranking.begin());
        if (j_rank > 0) { // k is defined only when j is not the cheapest
            Rational best;
            for (std::size_t t = 0; t < j_rank; ++t) {
                int u = kn.ranking[t];
                Rational ratio = g.cost(u) / g.capacity(u);
                if (kn.k == -1 || ratio < best) {
                    kn.k = u;
                    best = ratio;
                }
            }
        }

        for (int u : g.neighbors(v)) {
            if (part.side[u] == 0 && part.layer[u] == part.layer[v] - 1) {
                if (kn.p == -1 || part.order[u] > part.order[kn.p]) kn.p = u;
            } else if (part.side[u] == 0 && part.layer[u] == part.layer[v] + 1) {
                if (kn.q == -1 || part.order[u] > part.order[kn.q]) kn.q = u;
            } else if (part.side[u] > 0) {
                if (kn.above == -1 || part.side_order[u] > part.side_order[kn.above]) kn.above = u;
            } else if (part.side[u] < 0) {
                if (kn.below == -1 || part.side_order[u] > part.side_order[kn.below]) kn.below = u;
            }
        }

        for (int u : g.neighbors(v)) {
            if (part.side[u] == 0 && part.layer[u] == part.layer[v]) continue; // own layer
            if (u == kn.j || u == kn.k || u == kn.p || u == kn.q || u == kn.above ||
                u == kn.below)
                continue;
            kn.removed.push_back(u);
            removed.push_back({std::min(u, v), std::max(u, v)});
        }
    }

    std::sort(removed.begin(), removed.end());
    removed.erase(std::unique(removed.begin(), removed.end()), removed.end());
    for (const auto& [u, v] : removed) {
        ++red.removed_per_vertex[u];
        ++red.removed_per_vertex[v];
    }
    red.removed_edges = removed;

    std::vector<std::pair<int, int>> kept_edges;
    for (const auto& e : g.edges())
        if (!std::binary_search(removed.begin(), removed.end(), e)) kept_edges.push_back(e);

    std::vector<VertexParams> params;
    for (int v = 0; v < n; ++v) params.push_back(g.params(v));
    red.inst = Instance::validated(std::move(params), std::move(kept_edges));
    return red;
}

DemandAssignment combine(const std::vector<DemandAssignment>& parts) {
    DemandAssignment total;
    for (const auto& f : parts)
        for (const auto& [key, amount] : f.entries()) total.add(key.first, key.second, amount);
    return total;
}

std::vector<std::pair<SubInstance, RotationSystem>> split_components(const Instance& inst,
                                                                     const RotationSystem& rs) {
    const int n = inst.vertex_count();
    std::vector<int> comp(n, -1);
    int comps = 0;
    {
        std::vector<int> stack;
        for (int s = 0; s < n; ++s) {
            if (comp[s] != -1) continue;
            comp[s] = comps;
            stack.push_back(s);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int u : inst.neighbors(v))
                    if (comp[u] == -1) {
                        comp[u] = comps;
                        stack.push_back(u);
                    }
            }
            ++comps;
        }
    }

    std::vector<std::pair<SubInstance, RotationSystem>> out(comps);
    std::vector<std::vector<int>> verts(comps);
    for (int v = 0; v < n; ++v) verts[comp[v]].push_back(v);

    for (int c = 0; c < comps; ++c) {
        out[c].first = build_sub(
            inst, verts[c], [](int, int) { return true; }, nullptr);
        std::vector<int> local(n, -1);
        for (int i = 0; i < static_cast<int>(verts[c].size()); ++i) local[verts[c][i]] = i;

        RotationSystem& sub_rs = out[c].second;
        sub_rs.rot.resize(verts[c].size());
        for (int i = 0; i < static_cast<int>(verts[c].size()); ++i)
            for (int u : rs.rot[verts[c][i]]) sub_rs.rot[i].push_back(local[u]);
        for (const auto& walk : rs.outer_walks) {
            if (walk.empty() || comp[walk[0]] != c) continue;
            std::vector<int> w;
            for (int v : walk) w.push_back(local[v]);
            sub_rs.outer_walks.push_back(std::move(w));
        }
    }
    return out;
}

namespace {

/// Shared tail of both pipelines: reduce every part, run greedy charging,
/// translate assignments back, and record certificates.
void run_parts(const std::array<DecompositionPart, 3>& parts,
               const std::vector<int>& part_to_original, // composed mapping for part locals
               int component, int level, const SolveOptions& opts, int factor,
               std::vector<DemandAssignment>& assignments, std::vector<PartCertificate>& certs) {
    for (const auto& part : parts) {
        if (part.sub.inst.vertex_count() == 0) continue;
        ReducedGraph red = reduce(part);

        ChargingOptions copts;
        copts.event_log = opts.event_log;
        ChargingResult run = greedy_charging(red.inst, copts);

        PartCertificate cert;
        cert.component = component;
        cert.residue = part.residue;
        cert.level = level;
        cert.part_instance = red.inst;
        cert.to_original.reserve(part.sub.to_parent.size());
        for (int v : part.sub.to_parent) cert.to_original.push_back(part_to_original[v]);
        cert.target = part.target;
        cert.part_assignment = run.assignment;
        cert.dual = run.dual;
        cert.dual_val = run.dual_val;
        cert.part_cost = run.cost;
        cert.factor = factor;
        cert.removed_per_vertex = red.removed_per_vertex;
        cert.degree_bound = red.degree_bound;
        cert.events = std::move(run.events);

        DemandAssignment translated;
        for (const auto& [key, amount] : run.assignment.entries())
            translated.add(cert.to_original[key.first], cert.to_original[key.second], amount);
        assignments.push_back(std::move(translated));
        certs.push_back(std::move(cert));
    }
}

SolveResult finish(const Instance& inst, std::vector<DemandAssignment>& assignments,
                   std::vector<PartCertificate>& certs, int max_factor) {
    SolveResult result;
    result.parts = std::move(certs);
    result.report = check_feasible(combine(assignments), inst);
    result.dual_sum = 0;
    for (const auto& cert : result.parts) result.dual_sum += cert.dual_val;
    result.max_factor = max_factor;
    result.certified = result.report.cost <= Rational(max_factor) * result.dual_sum;
    return result;
}

void require_verified_ladder(const GeneralLadder& ladder, const Instance& inst) {
    auto violations = verify_ladder(ladder, inst);
    if (!violations.empty())
        throw ValidationError("ladder verification failed: " + violations.front().detail);
}

} // namespace

SolveResult solve_outerplanar(const Instance& inst, const RotationSystem& rs,
                              const SolveOptions& opts) {
    validate_rotation_system(inst, rs);
    if (!is_outerplanar_embedding(inst, rs))
        throw ValidationError("not an outerplanar embedding");

    std::vector<DemandAssignment> assignments;
    std::vector<PartCertificate> certs;

    auto components = split_components(inst, rs);
    for (int c = 0; c < static_cast<int>(components.size()); ++c) {
        const auto& [sub, sub_rs] = components[c];
        int anchor = sub_rs.outer_walks.front().front();
        GeneralLadder ladder = extract_ladder(sub.inst, sub_rs, anchor);
        if (opts.verify_ladders) require_verified_ladder(ladder, sub.inst);

        LayerDecomposition dec = decompose(ladder, sub.inst);
        run_parts(dec.parts, sub.to_parent, c, -1, opts, 7, assignments, certs);
    }
    return finish(inst, assignments, certs, 7);
}

SolveResult solve_planar(const Instance& inst, const RotationSystem& rs,
                         const SolveOptions& opts) {
    validate_rotation_system(inst, rs);

    std::vector<DemandAssignment> assignments;
    std::vector<PartCertificate> certs;

    auto components = split_components(inst, rs);
    for (int c = 0; c < static_cast<int>(components.size()); ++c) {
        const auto& [sub, sub_rs] = components[c];
        const Instance& g = sub.inst;
        const int n = g.vertex_count();
        LevelStructure levels = peel_levels(g, sub_rs);

        // total order inside each level: component walks concatenated
        std::vector<int> level_pos(n, -1);
        for (int lev = 0; lev <= levels.max_level; ++lev) {
            int pos = 0;
            for (const auto& walk : levels.level_walks[lev])
                for (int v : walk)
                    if (level_pos[v] == -1) level_pos[v] = pos++;
        }

        for (int lev = 0; lev <= levels.max_level; ++lev) {
            for (const auto& walk : levels.level_walks[lev]) {
                // middle-level component of this slab
                std::vector<char> in_middle(n, 0);
                for (int v : walk) in_middle[v] = 1;

                std::vector<char> in_slab = in_middle;
                for (int v : walk)
                    for (int u : g.neighbors(v))
                        if (!in_middle[u]) {
                            assert(levels.level[u] == lev - 1 || levels.level[u] == lev + 1);
                            in_slab[u] = 1;
                        }
                std::vector<int> slab_verts;
                for (int v = 0; v < n; ++v)
                    if (in_slab[v]) slab_verts.push_back(v);

                std::vector<Rational> demands(n, Rational(0));
                for (int v : walk) demands[v] = g.demand(v);
                SubInstance slab = build_sub(
                    g, slab_verts,
                    [&](int u, int v) { return in_middle[u] || in_middle[v]; }, &demands);
                const int sn = slab.inst.vertex_count();

                // ladder of the middle level, ordered by its level walk
                std::vector<int> slab_local(n, -1);
                for (int i = 0; i < sn; ++i) slab_local[slab.to_parent[i]] = i;
                std::vector<int> middle_verts;
                for (int v = 0; v < n; ++v)
                    if (in_middle[v]) middle_verts.push_back(v);
                SubInstance middle = build_sub(
                    g, middle_verts,
                    [&](int u, int v) { return in_middle[u] && in_middle[v]; }, nullptr);
                std::vector<int> mid_local(n, -1);
                for (int i = 0; i < middle.inst.vertex_count(); ++i)
                    mid_local[middle.to_parent[i]] = i;

                VertexOrder order;
                order.anchor = mid_local[walk.front()];
                order.rank.assign(middle.inst.vertex_count(), -1);
                for (int v : walk) {
                    int lv = mid_local[v];
                    if (order.rank[lv] == -1) {
                        order.rank[lv] = static_cast<int>(order.sequence.size());
                        order.sequence.push_back(lv);
                    }
                }
                GeneralLadder ladder = extract_ladder_with_order(middle.inst, order);
                if (opts.verify_ladders) {
                    for (const auto& violation : verify_ladder(ladder, middle.inst))
                        if (violation.kind != LadderViolation::Kind::Crossing &&
                            violation.kind != LadderViolation::Kind::UpwardDegree)
                            throw ValidationError("slab ladder verification failed: " +
                                                  violation.detail);
                }

                PartSource src;
                src.base = &slab.inst;
                src.layer.assign(sn, -1);
                src.order.assign(sn, -1);
                src.side.assign(sn, 0);
                src.side_order.assign(sn, -1);
                src.slab = true;
                for (int i = 0; i < sn; ++i) {
                    int v = slab.to_parent[i];
                    if (in_middle[v]) {
                        int lv = mid_local[v];
                        src.layer[i] = ladder.layer_of[lv];
                        src.order[i] = ladder.order_rank[lv];
                    } else {
                        src.side[i] = levels.level[v] < lev ? +1 : -1;
                        src.side_order[i] = level_pos[v];
                    }
                }

                std::vector<int> slab_to_original;
                slab_to_original.reserve(sn);
                for (int i = 0; i < sn; ++i) slab_to_original.push_back(sub.to_parent[slab.to_parent[i]]);
                run_parts(make_parts(src), slab_to_original, c, lev, opts, 9, assignments, certs);
            }
        }
    }
    return finish(inst, assignments, certs, 9);
}

} // namespace capdom
