#pragma once

#include "capdom/instance.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace capdom {

/// Feasible point of the dual program:
///   maximize sum d(u) y(u)
///   s.t.  c(u) z(u) + sum_{v in N[u]} d(v) g(u,v) <= w(u)   for all u
///         y(u) <= z(v) + g(v,u)                             for all u, v in N[u]
///         y, z, g >= 0
struct DualSolution {
    std::vector<Rational> y;
    std::vector<Rational> z;
    std::map<std::pair<int, int>, Rational> g; // (server u, demand v in N[u])

    Rational g_at(int u, int v) const {
        auto it = g.find({u, v});
        return it == g.end() ? Rational(0) : it->second;
    }
};

struct DualViolation {
    enum class Kind { VertexConstraint, PairConstraint, Negative };
    Kind kind;
    int u = -1, v = -1;
    Rational excess; // amount by which the constraint is exceeded
};

/// Exact feasibility check of both constraint families plus non-negativity.
std::vector<DualViolation> verify_dual(const DualSolution& dual, const Instance& inst);

/// Dual objective sum d(u) y(u).
Rational dual_value(const DualSolution& dual, const Instance& inst);

struct ChargingOptions {
    bool event_log = false;      // one line per saturation event
    bool check_each_step = false; // re-verify dual feasibility after every event
};

struct ChargingResult {
    DemandAssignment assignment;
    Multiplicity multiplicity;
    DualSolution dual;
    Rational cost;       // w of the assignment
    Rational dual_val;   // sum d(u) y(u)
    std::vector<std::string> events;
};

/// Greedy charging: raises the duals of all unassigned demands uniformly;
/// when a vertex's constraint saturates it either absorbs the unassigned
/// demand around it (lightly-loaded) or is queued and serves its neighborhood
/// in saturation order afterwards (heavily-loaded). Produces a feasible
/// assignment plus an exactly feasible dual solution with
///   cost <= max(2, max closed degree over demand vertices) * dual_val.
/// Deterministic: saturation ties break toward the smallest vertex id.
ChargingResult greedy_charging(const Instance& inst, const ChargingOptions& opts = {});

} // namespace capdom
