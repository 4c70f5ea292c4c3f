#include "capdom/embedding.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>
#include <unordered_map>
#include <vector>

namespace capdom {

namespace {

std::uint64_t arc_key(int from, int to) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(from)) << 32) |
           static_cast<std::uint32_t>(to);
}

std::vector<int> component_ids(const Instance& inst) {
    const int n = inst.vertex_count();
    std::vector<int> comp(n, -1);
    int next = 0;
    std::vector<int> stack;
    for (int s = 0; s < n; ++s) {
        if (comp[s] != -1) continue;
        comp[s] = next;
        stack.push_back(s);
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int u : inst.neighbors(v))
                if (comp[u] == -1) {
                    comp[u] = next;
                    stack.push_back(u);
                }
        }
        ++next;
    }
    return comp;
}

} // namespace

int FaceSet::arc_index(const RotationSystem& rs, int from, int to) const {
    const auto& r = rs.rot[from];
    for (int i = 0; i < static_cast<int>(r.size()); ++i)
        if (r[i] == to) return arc_offset[from] + i;
    throw ValidationError("no arc " + std::to_string(from) + " -> " + std::to_string(to));
}

int FaceSet::face_of(const RotationSystem& rs, int from, int to) const {
    return face_of_arc[arc_index(rs, from, to)];
}

FaceSet trace_faces(const Instance& inst, const RotationSystem& rs) {
    const int n = inst.vertex_count();
    if (static_cast<int>(rs.rot.size()) != n)
        throw ValidationError("rotation system size does not match instance");

    for (int v = 0; v < n; ++v) {
        std::vector<int> sorted = rs.rot[v];
        std::sort(sorted.begin(), sorted.end());
        if (sorted != inst.neighbors(v))
            throw ValidationError("rotation at vertex " + std::to_string(v) +
                                  " is not a permutation of its neighbors");
    }

    FaceSet fs;
    fs.arc_offset.assign(n + 1, 0);
    for (int v = 0; v < n; ++v)
        fs.arc_offset[v + 1] = fs.arc_offset[v] + static_cast<int>(rs.rot[v].size());
    const int arcs = fs.arc_offset[n];
    fs.face_of_arc.assign(arcs, -1);

    std::unordered_map<std::uint64_t, int> pos;
    pos.reserve(static_cast<std::size_t>(arcs) * 2);
    for (int v = 0; v < n; ++v)
        for (int i = 0; i < static_cast<int>(rs.rot[v].size()); ++i)
            pos[arc_key(v, rs.rot[v][i])] = i;

    auto next_arc = [&](int a) {
        // a = (v -> u); continue (u -> successor of v in rot[u])
        int v = static_cast<int>(std::upper_bound(fs.arc_offset.begin(), fs.arc_offset.end(), a) -
                                 fs.arc_offset.begin()) -
                1;
        int u = rs.rot[v][a - fs.arc_offset[v]];
        int j = pos.at(arc_key(u, v));
        int deg = static_cast<int>(rs.rot[u].size());
        return fs.arc_offset[u] + (j + 1) % deg;
    };

    for (int start = 0; start < arcs; ++start) {
        if (fs.face_of_arc[start] != -1) continue;
        const int id = static_cast<int>(fs.walks.size());
        std::vector<int> walk;
        int a = start;
        do {
            fs.face_of_arc[a] = id;
            int v = static_cast<int>(std::upper_bound(fs.arc_offset.begin(), fs.arc_offset.end(), a) -
                                     fs.arc_offset.begin()) -
                    1;
            walk.push_back(v);
            a = next_arc(a);
        } while (a != start);
        fs.walks.push_back(std::move(walk));
    }
    return fs;
}

namespace {

/// Traces the face through (from -> to) and returns its vertex walk.
std::vector<int> trace_one_face(const RotationSystem& rs, int from, int to) {
    std::vector<int> walk;
    int v = from, u = to;
    do {
        walk.push_back(v);
        const auto& r = rs.rot[u];
        int j = -1;
        for (int i = 0; i < static_cast<int>(r.size()); ++i)
            if (r[i] == v) {
                j = i;
                break;
            }
        if (j < 0) throw ValidationError("broken rotation while tracing a face");
        int w = r[(j + 1) % r.size()];
        v = u;
        u = w;
    } while (!(v == from && u == to));
    return walk;
}

} // namespace

void validate_rotation_system(const Instance& inst, const RotationSystem& rs) {
    const int n = inst.vertex_count();
    FaceSet fs = trace_faces(inst, rs);
    std::vector<int> comp = component_ids(inst);
    int comps = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;

    if (static_cast<int>(rs.outer_walks.size()) != comps)
        throw ValidationError("expected exactly one outer walk per component (" +
                              std::to_string(comps) + " components, " +
                              std::to_string(rs.outer_walks.size()) + " walks)");

    std::vector<int> walk_of_comp(comps, -1);
    for (int w = 0; w < static_cast<int>(rs.outer_walks.size()); ++w) {
        const auto& walk = rs.outer_walks[w];
        if (walk.empty()) throw ValidationError("empty outer walk");
        for (int v : walk)
            if (v < 0 || v >= n) throw ValidationError("outer walk names an unknown vertex");
        int c = comp[walk[0]];
        for (int v : walk)
            if (comp[v] != c) throw ValidationError("outer walk spans multiple components");
        if (walk_of_comp[c] != -1) throw ValidationError("component has two outer walks");
        walk_of_comp[c] = w;

        if (walk.size() == 1) {
            if (!inst.neighbors(walk[0]).empty())
                throw ValidationError("single-vertex outer walk on a non-isolated vertex");
            continue;
        }
        std::vector<int> traced = trace_one_face(rs, walk[0], walk[1]);
        if (traced != walk)
            throw ValidationError("designated outer walk is not a face of the rotation system");
    }
    for (int c = 0; c < comps; ++c)
        if (walk_of_comp[c] == -1)
            throw ValidationError("component without an outer walk");

    // Euler check per component with edges: n - m + f = 2.
    std::vector<int> nc(comps, 0), mc(comps, 0);
    std::vector<std::vector<char>> face_seen(comps, std::vector<char>(fs.walks.size(), 0));
    std::vector<int> fc(comps, 0);
    for (int v = 0; v < n; ++v) ++nc[comp[v]];
    for (const auto& [u, v] : inst.edges()) ++mc[comp[u]];
    for (int v = 0; v < n; ++v) {
        for (int i = 0; i < static_cast<int>(rs.rot[v].size()); ++i) {
            int f = fs.face_of_arc[fs.arc_offset[v] + i];
            if (!face_seen[comp[v]][f]) {
                face_seen[comp[v]][f] = 1;
                ++fc[comp[v]];
            }
        }
    }
    for (int c = 0; c < comps; ++c) {
        if (mc[c] == 0) continue; // isolated vertex: trivially planar
        if (nc[c] - mc[c] + fc[c] != 2)
            throw ValidationError("rotation system is not planar (Euler check failed on component " +
                                  std::to_string(c) + ")");
    }
}

bool is_outerplanar_embedding(const Instance& inst, const RotationSystem& rs) {
    std::vector<char> on_walk(inst.vertex_count(), 0);
    for (const auto& walk : rs.outer_walks)
        for (int v : walk)
            if (v >= 0 && v < inst.vertex_count()) on_walk[v] = 1;
    for (char c : on_walk)
        if (!c) return false;
    return true;
}

VertexOrder outer_order(const Instance& inst, const RotationSystem& rs, int anchor) {
    const int n = inst.vertex_count();
    if (anchor < 0 || anchor >= n) throw ValidationError("anchor out of range");

    const std::vector<int>* walk = nullptr;
    for (const auto& w : rs.outer_walks)
        if (std::find(w.begin(), w.end(), anchor) != w.end()) {
            walk = &w;
            break;
        }
    if (walk == nullptr)
        throw ValidationError("anchor is not on any outer walk: not an outerplanar embedding");

    VertexOrder order;
    order.anchor = anchor;
    order.rank.assign(n, -1);
    const int len = static_cast<int>(walk->size());
    int start = static_cast<int>(std::find(walk->begin(), walk->end(), anchor) - walk->begin());
    for (int k = 0; k < len; ++k) {
        int v = (*walk)[(start + k) % len];
        if (order.rank[v] == -1) {
            order.rank[v] = static_cast<int>(order.sequence.size());
            order.sequence.push_back(v);
        }
    }
    if (static_cast<int>(order.sequence.size()) != n)
        throw ValidationError("some vertex is missing from the outer walk: "
                              "not an outerplanar embedding");
    return order;
}

namespace {

/// Finds the outer walk of the subgraph induced on `verts` (one connected
/// component, >= 1 edge): the unique induced face that absorbed a parent
/// face already merged into the peeled region (joined_at <= stage).
std::vector<int> induced_outer_walk(const RotationSystem& rs,
                                    const FaceSet& parent, const std::vector<int>& joined_at,
                                    int stage, const std::vector<int>& verts,
                                    const std::vector<char>& in_level) {
    // induced rotations, original cyclic order kept
    std::unordered_map<int, std::vector<int>> rot;
    for (int v : verts) {
        std::vector<int> r;
        for (int u : rs.rot[v])
            if (in_level[u]) r.push_back(u);
        rot[v] = std::move(r);
    }

    struct Arc {
        int from, to;
    };
    std::vector<Arc> arcs;
    std::unordered_map<std::uint64_t, int> idx;
    for (int v : verts)
        for (int u : rot[v]) {
            idx[arc_key(v, u)] = static_cast<int>(arcs.size());
            arcs.push_back({v, u});
        }
    if (arcs.empty()) throw ValidationError("induced component has no edges");

    auto next_of = [&](const Arc& a) -> Arc {
        const auto& r = rot[a.to];
        int j = -1;
        for (int i = 0; i < static_cast<int>(r.size()); ++i)
            if (r[i] == a.from) {
                j = i;
                break;
            }
        return {a.to, r[(j + 1) % static_cast<int>(r.size())]};
    };

    std::vector<int> face_of(arcs.size(), -1);
    std::vector<std::vector<int>> face_arcs;
    for (std::size_t s = 0; s < arcs.size(); ++s) {
        if (face_of[s] != -1) continue;
        int id = static_cast<int>(face_arcs.size());
        face_arcs.emplace_back();
        Arc a = arcs[s];
        int ai = static_cast<int>(s);
        do {
            face_of[ai] = id;
            face_arcs[id].push_back(ai);
            a = next_of(a);
            ai = idx.at(arc_key(a.from, a.to));
        } while (ai != static_cast<int>(s));
    }

    int outer = -1;
    for (std::size_t ai = 0; ai < arcs.size(); ++ai) {
        int pf = parent.face_of(rs, arcs[ai].from, arcs[ai].to);
        if (joined_at[pf] <= stage) {
            if (outer != -1 && outer != face_of[ai])
                throw ValidationError("level subgraph borders the peeled region on two faces");
            outer = face_of[ai];
        }
    }
    if (outer == -1)
        throw ValidationError("level subgraph has no face bordering the peeled region");

    // canonical start: smallest source vertex, then smallest target
    int best = face_arcs[outer][0];
    for (int ai : face_arcs[outer]) {
        if (arcs[ai].from < arcs[best].from ||
            (arcs[ai].from == arcs[best].from && arcs[ai].to < arcs[best].to))
            best = ai;
    }
    std::vector<int> walk;
    Arc a = arcs[best];
    int ai = best;
    do {
        walk.push_back(a.from);
        a = next_of(a);
        ai = idx.at(arc_key(a.from, a.to));
    } while (ai != best);
    return walk;
}

} // namespace

LevelStructure peel_levels(const Instance& inst, const RotationSystem& rs) {
    validate_rotation_system(inst, rs);
    const int n = inst.vertex_count();
    FaceSet fs = trace_faces(inst, rs);
    const int faces = static_cast<int>(fs.walks.size());

    std::vector<std::vector<int>> faces_of_vertex(n);
    for (int f = 0; f < faces; ++f) {
        for (int v : fs.walks[f])
            if (faces_of_vertex[v].empty() || faces_of_vertex[v].back() != f)
                faces_of_vertex[v].push_back(f);
    }
    for (auto& lst : faces_of_vertex) {
        std::sort(lst.begin(), lst.end());
        lst.erase(std::unique(lst.begin(), lst.end()), lst.end());
    }

    LevelStructure ls;
    ls.level.assign(n, -1);
    std::vector<int> joined_at(faces, std::numeric_limits<int>::max());
    std::vector<std::vector<int>> face_bucket(1);

    int unassigned = n;
    for (const auto& walk : rs.outer_walks) {
        if (walk.size() == 1) {
            ls.level[walk[0]] = 0; // isolated vertex, no faces to trace
            --unassigned;
        } else {
            int f = fs.face_of(rs, walk[0], walk[1]);
            if (joined_at[f] > 0) {
                joined_at[f] = 0;
                face_bucket[0].push_back(f);
            }
        }
    }

    int k = 0;
    while (unassigned > 0) {
        if (k >= static_cast<int>(face_bucket.size()) || face_bucket[k].empty()) {
            bool any_later = false;
            for (int t = k; t < static_cast<int>(face_bucket.size()); ++t)
                if (!face_bucket[t].empty()) any_later = true;
            if (!any_later)
                throw ValidationError("rotation system inconsistency: peeling cannot reach "
                                      "every vertex");
        }
        std::vector<int> newly;
        if (k < static_cast<int>(face_bucket.size())) {
            for (int f : face_bucket[k])
                for (int v : fs.walks[f])
                    if (ls.level[v] == -1) {
                        ls.level[v] = k;
                        newly.push_back(v);
                        --unassigned;
                    }
        }
        if (static_cast<int>(face_bucket.size()) <= k + 1) face_bucket.resize(k + 2);
        for (int v : newly)
            for (int f : faces_of_vertex[v])
                if (joined_at[f] > k + 1) {
                    joined_at[f] = k + 1;
                    face_bucket[k + 1].push_back(f);
                }
        ++k;
    }
    ls.max_level = 0;
    for (int v = 0; v < n; ++v) ls.max_level = std::max(ls.max_level, ls.level[v]);

    // outer walks of each level's induced subgraph; the level-0 subgraph of a
    // component is connected through its designated walk, so reuse it
    ls.level_walks.assign(ls.max_level + 1, {});
    for (const auto& walk : rs.outer_walks) ls.level_walks[0].push_back(walk);
    for (int lev = 1; lev <= ls.max_level; ++lev) {
        std::vector<char> in_level(n, 0);
        for (int v = 0; v < n; ++v)
            if (ls.level[v] == lev) in_level[v] = 1;
        std::vector<char> visited(n, 0);
        for (int s = 0; s < n; ++s) {
            if (!in_level[s] || visited[s]) continue;
            std::vector<int> verts;
            std::vector<int> stack{s};
            visited[s] = 1;
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                verts.push_back(v);
                for (int u : inst.neighbors(v))
                    if (in_level[u] && !visited[u]) {
                        visited[u] = 1;
                        stack.push_back(u);
                    }
            }
            std::sort(verts.begin(), verts.end());
            bool has_edge = false;
            for (int v : verts)
                for (int u : inst.neighbors(v))
                    if (in_level[u]) has_edge = true;
            if (!has_edge) {
                ls.level_walks[lev].push_back({verts[0]});
            } else {
                ls.level_walks[lev].push_back(
                    induced_outer_walk(rs, fs, joined_at, lev, verts, in_level));
            }
        }
    }
    return ls;
}

// ---------------------------------------------------------------------------
// generators

namespace {

/// Remy's algorithm: uniformly random binary tree with `leaves` leaves.
/// Returns chords of the corresponding triangulation of the convex n-gon
/// with root edge (0, n-1), n = leaves + 1.
struct RemyTree {
    std::vector<int> left, right, parent;
    int root = 0;

    int add_node() {
        left.push_back(-1);
        right.push_back(-1);
        parent.push_back(-1);
        return static_cast<int>(left.size()) - 1;
    }
};

} // namespace

std::vector<std::pair<int, int>> random_polygon_triangulation(int n, Rng& rng) {
    std::vector<std::pair<int, int>> chords;
    if (n < 4) return chords;

    const int leaves = n - 1;
    RemyTree t;
    t.add_node(); // single leaf
    std::vector<int> nodes{0};
    for (int k = 2; k <= leaves; ++k) {
        std::uint64_t pick = rng.below(static_cast<std::uint64_t>(nodes.size()) * 2);
        int x = nodes[pick >> 1];
        bool new_leaf_left = (pick & 1) != 0;
        int inner = t.add_node();
        int leaf = t.add_node();
        int p = t.parent[x];
        t.parent[inner] = p;
        if (p != -1) {
            if (t.left[p] == x)
                t.left[p] = inner;
            else
                t.right[p] = inner;
        } else {
            t.root = inner;
        }
        if (new_leaf_left) {
            t.left[inner] = leaf;
            t.right[inner] = x;
        } else {
            t.left[inner] = x;
            t.right[inner] = leaf;
        }
        t.parent[x] = inner;
        t.parent[leaf] = inner;
        nodes.push_back(inner);
        nodes.push_back(leaf);
    }

    // leaf counts, then intervals: node spanning polygon positions [lo, hi]
    std::vector<int> count(t.left.size(), 0);
    {
        std::vector<std::pair<int, int>> stack{{t.root, 0}};
        while (!stack.empty()) {
            auto& [v, phase] = stack.back();
            if (t.left[v] == -1) {
                count[v] = 1;
                stack.pop_back();
            } else if (phase == 0) {
                phase = 1;
                stack.push_back({t.left[v], 0});
            } else if (phase == 1) {
                phase = 2;
                stack.push_back({t.right[v], 0});
            } else {
                count[v] = count[t.left[v]] + count[t.right[v]];
                stack.pop_back();
            }
        }
    }
    {
        std::vector<std::array<int, 3>> stack{{t.root, 0, n - 1}};
        while (!stack.empty()) {
            auto [v, lo, hi] = stack.back();
            stack.pop_back();
            if (t.left[v] == -1) continue;
            int split = lo + count[t.left[v]];
            if (split - lo >= 2) chords.push_back({lo, split});
            if (hi - split >= 2) chords.push_back({split, hi});
            stack.push_back({t.left[v], lo, split});
            stack.push_back({t.right[v], split, hi});
        }
    }
    std::sort(chords.begin(), chords.end());
    return chords;
}

RotationSystem convex_position_embedding(const Instance& inst) {
    const int n = inst.vertex_count();
    RotationSystem rs;
    rs.rot.assign(n, {});
    for (int v = 0; v < n; ++v) {
        std::vector<int> nb = inst.neighbors(v);
        std::sort(nb.begin(), nb.end(), [&](int a, int b) {
            return (a - v + n) % n < (b - v + n) % n;
        });
        rs.rot[v] = std::move(nb);
    }

    // Outer walk per component: in convex position the unbounded face holds
    // every arc (v -> first neighbor in rot[v]); trace from the smallest
    // vertex of the component.
    std::vector<int> comp = component_ids(inst);
    int comps = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    std::vector<int> rep(comps, -1);
    for (int v = n - 1; v >= 0; --v) rep[comp[v]] = v;
    for (int c = 0; c < comps; ++c) {
        int v = rep[c];
        if (inst.neighbors(v).empty())
            rs.outer_walks.push_back({v});
        else
            rs.outer_walks.push_back(trace_one_face(rs, v, rs.rot[v][0]));
    }
    return rs;
}

namespace {

void check_ranges(const WeightRanges& w) {
    if (w.cost_lo < 0 || w.cost_lo > w.cost_hi)
        throw ValidationError("invalid cost range");
    if (w.cap_lo < 1 || w.cap_lo > w.cap_hi)
        throw ValidationError("invalid capacity range (capacities must be >= 1)");
    if (w.dem_lo < 0 || w.dem_lo > w.dem_hi)
        throw ValidationError("invalid demand range");
}

std::vector<VertexParams> draw_params(int n, Rng& rng, const WeightRanges& w) {
    std::vector<VertexParams> ps(n);
    for (int v = 0; v < n; ++v) {
        ps[v].cost = to_rational(rng.int_in(w.cost_lo, w.cost_hi));
        ps[v].capacity = to_rational(rng.int_in(w.cap_lo, w.cap_hi));
        ps[v].demand = to_rational(rng.int_in(w.dem_lo, w.dem_hi));
    }
    return ps;
}

} // namespace

GeneratedInstance gen_outerplanar(int n, std::uint64_t seed, const OuterplanarOptions& opts) {
    if (n < 1) throw ValidationError("n must be at least 1");
    check_ranges(opts.weights);
    Rng rng(seed);

    std::vector<std::pair<int, int>> edges;
    if (n == 2) edges.push_back({0, 1});
    if (n >= 3)
        for (int v = 0; v < n; ++v) edges.push_back({std::min(v, (v + 1) % n), std::max(v, (v + 1) % n)});
    auto chords = random_polygon_triangulation(n, rng);
    for (const auto& ch : chords)
        if (rng.chance(opts.keep_prob)) edges.push_back(ch);

    auto params = draw_params(n, rng, opts.weights);
    GeneratedInstance out{Instance::validated(std::move(params), std::move(edges)), {}};
    out.rs = convex_position_embedding(out.inst);
    return out;
}

RotationSystem grid_embedding(int rows, int cols) {
    if (rows < 1 || cols < 1) throw ValidationError("grid dimensions must be at least 1");
    const int n = rows * cols;
    auto id = [cols](int r, int c) { return r * cols + c; };

    RotationSystem rs;
    // counter-clockwise: east, north, west, south (x = col, y = row)
    rs.rot.assign(n, {});
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            auto& rot = rs.rot[id(r, c)];
            if (c + 1 < cols) rot.push_back(id(r, c + 1));
            if (r + 1 < rows) rot.push_back(id(r + 1, c));
            if (c > 0) rot.push_back(id(r, c - 1));
            if (r > 0) rot.push_back(id(r - 1, c));
        }
    if (n == 1)
        rs.outer_walks.push_back({0});
    else
        rs.outer_walks.push_back(trace_one_face(rs, 0, rs.rot[0][0]));
    return rs;
}

GeneratedInstance gen_grid(int rows, int cols, std::uint64_t seed, const WeightRanges& weights) {
    if (rows < 1 || cols < 1) throw ValidationError("grid dimensions must be at least 1");
    check_ranges(weights);
    Rng rng(seed);

    const int n = rows * cols;
    auto id = [cols](int r, int c) { return r * cols + c; };
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols) edges.push_back({id(r, c), id(r, c + 1)});
            if (r + 1 < rows) edges.push_back({id(r, c), id(r + 1, c)});
        }
    auto params = draw_params(n, rng, weights);
    GeneratedInstance out{Instance::validated(std::move(params), std::move(edges)),
                          grid_embedding(rows, cols)};
    return out;
}

} // namespace capdom
