#include "capdom/oracle.hpp"

#include <algorithm>
#include <deque>
#include <queue>
#include <string>
#include <unordered_set>

namespace capdom {

namespace {

/// Dense exact max-flow on the transportation network: source -> demand side
/// -> closed neighbors -> sink. Tiny node counts, Edmonds-Karp is plenty.
class Transportation {
public:
    Transportation(const Multiplicity& x, const Instance& inst) : n_(inst.vertex_count()) {
        nodes_ = 2 * n_ + 2;
        src_ = 2 * n_;
        sink_ = 2 * n_ + 1;
        cap_.assign(static_cast<std::size_t>(nodes_) * nodes_, Rational(0));
        Rational big = inst.total_demand() + 1;
        for (int v = 0; v < n_; ++v) {
            if (inst.demand(v) > 0) cap(src_, v) = inst.demand(v);
            cap(v, n_ + v) = big;
            for (int u : inst.neighbors(v)) cap(v, n_ + u) = big;
            if (x[v] > 0) cap(n_ + v, sink_) = inst.capacity(v) * to_rational(x[v]);
        }
    }

    Rational max_flow() {
        Rational total = 0;
        std::vector<int> parent(nodes_);
        while (true) {
            std::fill(parent.begin(), parent.end(), -1);
            parent[src_] = src_;
            std::deque<int> queue{src_};
            while (!queue.empty() && parent[sink_] == -1) {
                int v = queue.front();
                queue.pop_front();
                for (int u = 0; u < nodes_; ++u)
                    if (parent[u] == -1 && cap(v, u) > 0) {
                        parent[u] = v;
                        queue.push_back(u);
                    }
            }
            if (parent[sink_] == -1) break;
            Rational aug = 0;
            for (int v = sink_; v != src_; v = parent[v]) {
                const Rational& c = cap(parent[v], v);
                if (aug == 0 || c < aug) aug = c;
            }
            for (int v = sink_; v != src_; v = parent[v]) {
                cap(parent[v], v) -= aug;
                cap(v, parent[v]) += aug;
            }
            total += aug;
        }
        return total;
    }

    /// Flow on (demand v -> server u) after max_flow: the residual gained by
    /// the reverse arc.
    Rational shipped(int v, int u, const Instance& inst) const {
        Rational big = inst.total_demand() + 1;
        return big - cap_at(v, n_ + u);
    }

private:
    Rational& cap(int a, int b) { return cap_[static_cast<std::size_t>(a) * nodes_ + b]; }
    const Rational& cap_at(int a, int b) const {
        return cap_[static_cast<std::size_t>(a) * nodes_ + b];
    }
    int n_, nodes_, src_, sink_;
    std::vector<Rational> cap_;
};

bool quick_infeasible(const Multiplicity& x, const Instance& inst) {
    Rational total_cap = 0;
    for (int v = 0; v < inst.vertex_count(); ++v) {
        if (inst.demand(v) == 0) continue;
        Rational reach = inst.capacity(v) * to_rational(x[v]);
        for (int u : inst.neighbors(v)) reach += inst.capacity(u) * to_rational(x[u]);
        if (reach < inst.demand(v)) return true;
    }
    for (int u = 0; u < inst.vertex_count(); ++u) {
        bool eligible = inst.demand(u) > 0;
        for (int v : inst.neighbors(u)) eligible = eligible || inst.demand(v) > 0;
        if (eligible) total_cap += inst.capacity(u) * to_rational(x[u]);
    }
    return total_cap < inst.total_demand();
}

std::string pack_state(const Multiplicity& x) {
    std::string key;
    key.reserve(x.size() * 4);
    for (long long v : x)
        for (int shift = 0; shift < 32; shift += 8)
            key.push_back(static_cast<char>((v >> shift) & 0xff));
    return key;
}

} // namespace

bool feasibility_flow_witness(const Multiplicity& x, const Instance& inst,
                              DemandAssignment* witness) {
    for (long long v : x)
        if (v < 0) throw ValidationError("multiplicities must be non-negative");
    if (inst.total_demand() == 0) {
        if (witness) *witness = {};
        return true;
    }
    if (quick_infeasible(x, inst)) return false;

    Transportation net(x, inst);
    if (net.max_flow() != inst.total_demand()) return false;
    if (witness) {
        DemandAssignment f;
        for (int v = 0; v < inst.vertex_count(); ++v) {
            if (inst.demand(v) == 0) continue;
            Rational self = net.shipped(v, v, inst);
            if (self > 0) f.add(v, v, self);
            for (int u : inst.neighbors(v)) {
                Rational amt = net.shipped(v, u, inst);
                if (amt > 0) f.add(v, u, amt);
            }
        }
        *witness = std::move(f);
    }
    return true;
}

bool feasibility_flow(const Multiplicity& x, const Instance& inst) {
    return feasibility_flow_witness(x, inst, nullptr);
}

ExactSolution exact_opt(const Instance& inst, int cap) {
    const int n = inst.vertex_count();
    if (n > cap)
        throw ScaleError("oracle scale exceeded: " + std::to_string(n) + " vertices, cap " +
                         std::to_string(cap));

    ExactSolution best;
    if (inst.total_demand() == 0) {
        best.x.assign(n, 0);
        best.opt = 0;
        return best;
    }

    // per-vertex bound: inbound flow never exceeds the closed-neighborhood demand
    std::vector<long long> xmax(n, 0);
    for (int v = 0; v < n; ++v) {
        Rational reach = inst.demand(v);
        for (int u : inst.neighbors(v)) reach += inst.demand(u);
        if (reach > 0) xmax[v] = ceil_to_ll(Rational(reach / inst.capacity(v)));
    }

    // admissible lower bound: uncovered deficit of {v} or of everything,
    // priced at the best cost/capacity ratio of an eligible server
    std::vector<char> eligible(n, 0);
    for (int u = 0; u < n; ++u) {
        eligible[u] = inst.demand(u) > 0;
        for (int v : inst.neighbors(u)) eligible[u] = eligible[u] || inst.demand(v) > 0;
    }
    Rational global_ratio = -1;
    for (int u = 0; u < n; ++u)
        if (eligible[u]) {
            Rational r = inst.cost(u) / inst.capacity(u);
            if (global_ratio < 0 || r < global_ratio) global_ratio = r;
        }
    std::vector<Rational> local_ratio(n, Rational(-1));
    for (int v = 0; v < n; ++v) {
        if (inst.demand(v) == 0) continue;
        Rational r = inst.cost(v) / inst.capacity(v);
        for (int u : inst.neighbors(v)) {
            Rational ru = inst.cost(u) / inst.capacity(u);
            if (ru < r) r = ru;
        }
        local_ratio[v] = r;
    }

    auto lower_bound = [&](const Multiplicity& x) {
        Rational h = 0;
        Rational covered = 0;
        for (int u = 0; u < n; ++u)
            if (eligible[u] && x[u] > 0) covered += inst.capacity(u) * to_rational(x[u]);
        Rational deficit = inst.total_demand() - covered;
        if (deficit > 0) h = deficit * global_ratio;
        for (int v = 0; v < n; ++v) {
            if (inst.demand(v) == 0) continue;
            Rational reach = inst.capacity(v) * to_rational(x[v]);
            for (int u : inst.neighbors(v)) reach += inst.capacity(u) * to_rational(x[u]);
            Rational def = inst.demand(v) - reach;
            if (def > 0) {
                Rational hv = def * local_ratio[v];
                if (hv > h) h = hv;
            }
        }
        return h;
    };

    struct Node {
        Rational priority; // cost + lower bound
        Rational cost;
        Multiplicity x;
    };
    auto later = [](const Node& a, const Node& b) {
        if (a.priority != b.priority) return a.priority > b.priority;
        if (a.cost != b.cost) return a.cost < b.cost; // deeper first on ties
        return a.x > b.x;
    };
    std::priority_queue<Node, std::vector<Node>, decltype(later)> frontier(later);
    std::unordered_set<std::string> seen;

    Multiplicity zero(n, 0);
    frontier.push({lower_bound(zero), Rational(0), zero});
    seen.insert(pack_state(zero));

    while (!frontier.empty()) {
        Node node = frontier.top();
        frontier.pop();

        DemandAssignment witness;
        if (feasibility_flow_witness(node.x, inst, &witness)) {
            best.x = node.x;
            best.f = std::move(witness);
            best.opt = node.cost;
            return best;
        }
        for (int v = 0; v < n; ++v) {
            if (node.x[v] >= xmax[v]) continue;
            Multiplicity child = node.x;
            ++child[v];
            std::string key = pack_state(child);
            if (!seen.insert(std::move(key)).second) continue;
            Rational cost = node.cost + inst.cost(v);
            frontier.push({cost + lower_bound(child), std::move(cost), std::move(child)});
        }
    }
    throw ValidationError("exact search exhausted without a feasible vector (internal bug)");
}

bool verify_lemma1(const DemandAssignment& f, const Instance& inst) {
    Multiplicity x = multiplicity_of(f, inst);
    for (const auto& [key, amount] : f.entries()) {
        const auto [v, u] = key;
        if (inst.demand(v) * to_rational(x[u]) < amount) return false;
    }
    return true;
}

Instance star_instance(const Rational& alpha, int n) {
    if (!(alpha > 1)) throw ValidationError("alpha must exceed 1");
    if (n < 2) throw ValidationError("the star needs at least 2 vertices");
    std::vector<VertexParams> params(n);
    params[0] = {Rational(1), Rational(n), Rational(1)};
    for (int v = 1; v < n; ++v) params[v] = {Rational(1), alpha * Rational(n), Rational(1)};
    std::vector<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) edges.push_back({0, v});
    return Instance::validated(std::move(params), std::move(edges));
}

GapReport lp_gap_demo(const Rational& alpha, int n, int oracle_cap) {
    Instance star = star_instance(alpha, n);
    GapReport report;
    report.alpha = alpha;
    report.n = n;

    // each unit of demand buys 1/(alpha n) multiplicity at a petal
    report.f_frac.add(0, 1, Rational(1)); // center's demand to the first petal
    for (int v = 1; v < n; ++v) report.f_frac.add(v, v, Rational(1));

    report.x_frac.assign(n, Rational(0));
    auto in = inbound_totals(report.f_frac, star);
    for (int v = 0; v < n; ++v) report.x_frac[v] = in[v] / star.capacity(v);

    report.fractional_cost = 0;
    for (int v = 0; v < n; ++v) report.fractional_cost += star.cost(v) * report.x_frac[v];

    // families one and two of the relaxation hold exactly
    report.relaxed_constraints_hold = true;
    auto out = outbound_totals(report.f_frac, star);
    for (int v = 0; v < n; ++v) {
        if (out[v] < star.demand(v)) report.relaxed_constraints_hold = false;
        if (star.capacity(v) * report.x_frac[v] < in[v]) report.relaxed_constraints_hold = false;
    }

    for (const auto& [key, amount] : report.f_frac.entries()) {
        const auto [v, u] = key;
        Rational lhs = star.demand(v) * report.x_frac[u];
        if (lhs < amount) report.third_violations.push_back({v, u, lhs, amount});
    }

    if (n <= oracle_cap) {
        report.integer_opt = exact_opt(star, oracle_cap).opt;
    } else {
        // one copy of the center covers the whole star; no cheaper integer
        // solution exists since every vertex has unit cost
        Multiplicity center_only(n, 0);
        center_only[0] = 1;
        if (!feasibility_flow(center_only, star))
            throw ValidationError("star construction is broken (internal bug)");
        report.integer_opt = 1;
    }
    report.gap = report.integer_opt / report.fractional_cost;
    return report;
}

} // namespace capdom
