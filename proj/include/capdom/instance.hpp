#pragma once

#include "capdom/errors.hpp"
#include "capdom/rational.hpp"

#include <map>
#include <utility>
#include <vector>

namespace capdom {

struct VertexParams {
    Rational cost;     // w(v) >= 0
    Rational capacity; // c(v) > 0
    Rational demand;   // d(v) >= 0
};

/// Capacitated-domination instance: a simple undirected graph with cost,
/// capacity and demand on every vertex. Vertices carry dense ids 0..n-1;
/// external names live in the I/O layer. Immutable once validated.
class Instance {
public:
    Instance() = default; // empty instance

    /// Validates and builds. Rejects self-loops, duplicate edges, dangling
    /// endpoints, non-positive capacities and negative costs/demands, naming
    /// the offending vertex or edge.
    static Instance validated(std::vector<VertexParams> vertices,
                              std::vector<std::pair<int, int>> edges);

    int vertex_count() const { return static_cast<int>(params_.size()); }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const Rational& cost(int v) const { return params_[v].cost; }
    const Rational& capacity(int v) const { return params_[v].capacity; }
    const Rational& demand(int v) const { return params_[v].demand; }
    const VertexParams& params(int v) const { return params_[v]; }

    /// Open neighborhood, sorted ascending.
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    /// |N[v]| = deg(v) + 1.
    int closed_degree(int v) const { return static_cast<int>(adj_[v].size()) + 1; }
    bool adjacent(int u, int v) const;

    /// Edges as (min, max) pairs, sorted.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    Rational total_demand() const;

    /// Same graph/costs/capacities, demands replaced.
    Instance with_demands(std::vector<Rational> demands) const;

private:
    std::vector<VertexParams> params_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::pair<int, int>> edges_;
};

/// Sparse demand assignment: (v, u) -> amount of v's demand served by u.
/// Support is restricted to u in N[v]; amounts are positive (zero entries
/// are dropped on insertion).
class DemandAssignment {
public:
    using Map = std::map<std::pair<int, int>, Rational>;

    void add(int v, int u, const Rational& amount);

    const Map& entries() const { return entries_; }
    bool empty() const { return entries_.empty(); }
    Rational amount(int v, int u) const;

    bool operator==(const DemandAssignment& other) const { return entries_ == other.entries_; }

private:
    Map entries_;
};

/// x(v) per vertex; index = vertex id.
using Multiplicity = std::vector<long long>;

struct Violation {
    int vertex;
    Rational shortfall;
};

struct SolutionReport {
    DemandAssignment assignment;
    Multiplicity multiplicity;
    Rational cost;
    bool feasible = false;
    std::vector<Violation> violations;
};

/// Throws ValidationError if f touches a pair (v,u) with u outside N[v]
/// or outside the vertex range.
void validate_support(const DemandAssignment& f, const Instance& inst);

/// Total amount arriving at each vertex: sum over v in N[u] of f(v,u).
std::vector<Rational> inbound_totals(const DemandAssignment& f, const Instance& inst);

/// Total amount each vertex ships out: sum over u in N[v] of f(v,u).
std::vector<Rational> outbound_totals(const DemandAssignment& f, const Instance& inst);

/// x(v) = ceil(inbound(v) / c(v)).
Multiplicity multiplicity_of(const DemandAssignment& f, const Instance& inst);

/// Sum of w(v) * x(v).
Rational cost_of(const Multiplicity& x, const Instance& inst);

/// Feasibility check per the problem definition: every vertex ships at least
/// its demand. Violations are reported, not thrown.
SolutionReport check_feasible(const DemandAssignment& f, const Instance& inst);

/// Clamps every f(v,u) to at most d(v). Requires a feasible input; the result
/// stays feasible, never costs more, and satisfies d(v)*x(u) >= f(v,u).
DemandAssignment normalize(const DemandAssignment& f, const Instance& inst);

} // namespace capdom
