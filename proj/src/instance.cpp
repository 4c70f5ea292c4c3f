#include "capdom/instance.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace capdom {

namespace {

std::string vname(int v) { return "vertex " + std::to_string(v); }

} // namespace

Instance Instance::validated(std::vector<VertexParams> vertices,
                             std::vector<std::pair<int, int>> edges) {
    const int n = static_cast<int>(vertices.size());
    for (int v = 0; v < n; ++v) {
        if (vertices[v].capacity <= 0)
            throw ValidationError(vname(v) + ": capacity must be strictly positive");
        if (vertices[v].cost < 0)
            throw ValidationError(vname(v) + ": cost must be non-negative");
        if (vertices[v].demand < 0)
            throw ValidationError(vname(v) + ": demand must be non-negative");
    }

    std::set<std::pair<int, int>> seen;
    for (auto& e : edges) {
        if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
            throw ValidationError("edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + "): dangling endpoint");
        if (e.first == e.second)
            throw ValidationError("edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + "): self-loop");
        if (e.first > e.second) std::swap(e.first, e.second);
        if (!seen.insert(e).second)
            throw ValidationError("edge (" + std::to_string(e.first) + "," +
                                  std::to_string(e.second) + "): duplicate edge");
    }
    std::sort(edges.begin(), edges.end());

    Instance inst;
    inst.params_ = std::move(vertices);
    inst.edges_ = std::move(edges);
    inst.adj_.assign(n, {});
    for (const auto& [u, v] : inst.edges_) {
        inst.adj_[u].push_back(v);
        inst.adj_[v].push_back(u);
    }
    for (auto& nb : inst.adj_) std::sort(nb.begin(), nb.end());
    return inst;
}

bool Instance::adjacent(int u, int v) const {
    const auto& nb = adj_[u];
    return std::binary_search(nb.begin(), nb.end(), v);
}

Rational Instance::total_demand() const {
    Rational total = 0;
    for (const auto& p : params_) total += p.demand;
    return total;
}

Instance Instance::with_demands(std::vector<Rational> demands) const {
    Instance copy = *this;
    for (int v = 0; v < vertex_count(); ++v) copy.params_[v].demand = demands[v];
    return copy;
}

void DemandAssignment::add(int v, int u, const Rational& amount) {
    if (amount == 0) return;
    if (amount < 0) throw ValidationError("assignment amounts must be non-negative");
    entries_[{v, u}] += amount;
}

Rational DemandAssignment::amount(int v, int u) const {
    auto it = entries_.find({v, u});
    return it == entries_.end() ? Rational(0) : it->second;
}

void validate_support(const DemandAssignment& f, const Instance& inst) {
    const int n = inst.vertex_count();
    for (const auto& [key, amount] : f.entries()) {
        const auto [v, u] = key;
        if (v < 0 || v >= n || u < 0 || u >= n)
            throw ValidationError("assignment touches unknown vertex");
        if (amount < 0) throw ValidationError("negative assignment amount");
        if (u != v && !inst.adjacent(u, v))
            throw ValidationError("assignment (" + std::to_string(v) + " -> " +
                                  std::to_string(u) + ") outside closed neighborhood");
    }
}

std::vector<Rational> inbound_totals(const DemandAssignment& f, const Instance& inst) {
    std::vector<Rational> in(inst.vertex_count(), Rational(0));
    for (const auto& [key, amount] : f.entries()) in[key.second] += amount;
    return in;
}

std::vector<Rational> outbound_totals(const DemandAssignment& f, const Instance& inst) {
    std::vector<Rational> out(inst.vertex_count(), Rational(0));
    for (const auto& [key, amount] : f.entries()) out[key.first] += amount;
    return out;
}

Multiplicity multiplicity_of(const DemandAssignment& f, const Instance& inst) {
    validate_support(f, inst);
    auto in = inbound_totals(f, inst);
    Multiplicity x(inst.vertex_count(), 0);
    for (int v = 0; v < inst.vertex_count(); ++v)
        if (in[v] > 0) x[v] = ceil_to_ll(Rational(in[v] / inst.capacity(v)));
    return x;
}

Rational cost_of(const Multiplicity& x, const Instance& inst) {
    Rational total = 0;
    for (int v = 0; v < inst.vertex_count(); ++v)
        if (x[v] != 0) total += inst.cost(v) * to_rational(x[v]);
    return total;
}

SolutionReport check_feasible(const DemandAssignment& f, const Instance& inst) {
    validate_support(f, inst);
    SolutionReport report;
    report.assignment = f;
    report.multiplicity = multiplicity_of(f, inst);
    report.cost = cost_of(report.multiplicity, inst);

    auto out = outbound_totals(f, inst);
    for (int v = 0; v < inst.vertex_count(); ++v) {
        if (out[v] < inst.demand(v))
            report.violations.push_back({v, Rational(inst.demand(v) - out[v])});
    }
    report.feasible = report.violations.empty();
    return report;
}

DemandAssignment normalize(const DemandAssignment& f, const Instance& inst) {
    auto report = check_feasible(f, inst);
    if (!report.feasible)
        throw ValidationError("normalize requires a feasible assignment");

    DemandAssignment result;
    for (const auto& [key, amount] : f.entries()) {
        const Rational& d = inst.demand(key.first);
        result.add(key.first, key.second, amount > d ? d : amount);
    }
    return result;
}

} // namespace capdom
