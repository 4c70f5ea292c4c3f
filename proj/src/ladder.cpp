#include "capdom/ladder.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <sstream>

namespace capdom {

namespace {

std::vector<int> bfs_distances(const Instance& inst, int source) {
    std::vector<int> dist(inst.vertex_count(), -1);
    std::deque<int> queue{source};
    dist[source] = 0;
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int u : inst.neighbors(v))
            if (dist[u] == -1) {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
    }
    return dist;
}

} // namespace

GeneralLadder extract_ladder_with_order(const Instance& inst, const VertexOrder& order) {
    GeneralLadder ladder;
    ladder.anchor = order.anchor;
    ladder.order_rank = order.rank;
    ladder.layer_of = bfs_distances(inst, order.anchor);
    for (int v = 0; v < inst.vertex_count(); ++v)
        if (ladder.layer_of[v] == -1)
            throw ValidationError("ladder extraction requires a connected instance");

    int max_layer = *std::max_element(ladder.layer_of.begin(), ladder.layer_of.end());
    ladder.layers.assign(max_layer + 1, {});
    for (int v : order.sequence) ladder.layers[ladder.layer_of[v]].push_back(v);
    return ladder;
}

GeneralLadder extract_ladder(const Instance& inst, const RotationSystem& rs, int anchor) {
    return extract_ladder_with_order(inst, outer_order(inst, rs, anchor));
}

std::vector<LadderViolation> verify_ladder(const GeneralLadder& ladder, const Instance& inst) {
    std::vector<LadderViolation> out;
    const int n = inst.vertex_count();
    using Kind = LadderViolation::Kind;

    if (ladder.layers.empty() || ladder.layers[0].size() != 1 ||
        ladder.layers[0][0] != ladder.anchor)
        out.push_back({Kind::AnchorLayer, {ladder.anchor}, "layer 0 must be exactly the anchor"});

    std::vector<int> seen(n, 0);
    for (int k = 0; k < static_cast<int>(ladder.layers.size()); ++k)
        for (int v : ladder.layers[k]) {
            if (v < 0 || v >= n) {
                out.push_back({Kind::Partition, {v}, "unknown vertex in a layer"});
                continue;
            }
            ++seen[v];
            if (ladder.layer_of[v] != k)
                out.push_back({Kind::Partition, {v}, "layer list disagrees with layer_of"});
        }
    for (int v = 0; v < n; ++v)
        if (seen[v] != 1)
            out.push_back({Kind::Partition, {v}, "vertex must appear in exactly one layer"});

    auto dist = bfs_distances(inst, ladder.anchor);
    for (int v = 0; v < n; ++v)
        if (dist[v] != ladder.layer_of[v])
            out.push_back({Kind::DistanceMismatch, {v},
                           "layer " + std::to_string(ladder.layer_of[v]) + " but distance " +
                               std::to_string(dist[v])});

    for (const auto& [u, v] : inst.edges()) {
        int du = ladder.layer_of[u], dv = ladder.layer_of[v];
        if (du < 0 || dv < 0) continue;
        if (du - dv > 1 || dv - du > 1)
            out.push_back({Kind::EdgeSpan, {u, v}, "edge spans non-adjacent layers"});
    }

    // inside a layer: ranks ascending, edges only between consecutive entries
    for (int k = 0; k < static_cast<int>(ladder.layers.size()); ++k) {
        const auto& layer = ladder.layers[k];
        std::vector<int> position(n, -1);
        for (int i = 0; i < static_cast<int>(layer.size()); ++i) position[layer[i]] = i;
        for (std::size_t i = 1; i < layer.size(); ++i)
            if (ladder.order_rank[layer[i - 1]] >= ladder.order_rank[layer[i]])
                out.push_back({Kind::Partition,
                               {layer[i - 1], layer[i]},
                               "layer not sorted by outer order"});
        for (int v : layer)
            for (int u : inst.neighbors(v)) {
                if (u > v) continue;
                if (ladder.layer_of[u] != k) continue;
                if (std::abs(position[u] - position[v]) != 1)
                    out.push_back({Kind::IntraLayerGap, {u, v},
                                   "same-layer edge between non-consecutive vertices"});
            }
    }

    // non-crossing: scanning a layer left to right, the rightmost neighbor in
    // the next layer may never pass a later vertex's leftmost neighbor
    for (int k = 0; k + 1 < static_cast<int>(ladder.layers.size()); ++k) {
        int best_u = -1, best_p = -1; // running max over earlier vertices
        for (int v : ladder.layers[k]) {
            int min_q = -1, max_p = -1;
            for (int u : inst.neighbors(v)) {
                if (ladder.layer_of[u] != k + 1) continue;
                if (min_q == -1 || ladder.order_rank[u] < ladder.order_rank[min_q]) min_q = u;
                if (max_p == -1 || ladder.order_rank[u] > ladder.order_rank[max_p]) max_p = u;
            }
            if (min_q == -1) continue;
            if (best_u != -1 && ladder.order_rank[min_q] < ladder.order_rank[best_p])
                out.push_back({Kind::Crossing,
                               {best_u, v, best_p, min_q},
                               "inter-layer edges cross"});
            if (best_u == -1 || ladder.order_rank[max_p] > ladder.order_rank[best_p]) {
                best_u = v;
                best_p = max_p;
            }
        }
    }

    for (int v = 0; v < n; ++v) {
        int k = ladder.layer_of[v];
        if (k <= 0) continue;
        int up = 0;
        for (int u : inst.neighbors(v))
            if (ladder.layer_of[u] == k - 1) ++up;
        if (up > 2)
            out.push_back({Kind::UpwardDegree, {v},
                           std::to_string(up) + " neighbors in the layer above"});
    }
    return out;
}

std::string ladder_to_dot(const GeneralLadder& ladder, const Instance& inst,
                          const std::vector<std::string>& names) {
    auto name = [&](int v) {
        if (v < static_cast<int>(names.size()) && !names[v].empty()) return names[v];
        return std::to_string(v);
    };
    std::ostringstream os;
    os << "graph ladder {\n";
    os << "  rankdir=TB;\n  ordering=out;\n";
    for (int k = 0; k < static_cast<int>(ladder.layers.size()); ++k) {
        os << "  { rank=same;";
        for (int v : ladder.layers[k]) os << " \"" << name(v) << "\";";
        os << " }\n";
        const auto& layer = ladder.layers[k];
        for (std::size_t i = 1; i < layer.size(); ++i)
            os << "  \"" << name(layer[i - 1]) << "\" -- \"" << name(layer[i])
               << "\" [style=invis];\n";
    }
    for (const auto& [u, v] : inst.edges())
        os << "  \"" << name(u) << "\" -- \"" << name(v) << "\";\n";
    os << "}\n";
    return os.str();
}

} // namespace capdom
