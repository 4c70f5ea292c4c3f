#pragma once

#include "capdom/instance.hpp"

#include <vector>

namespace capdom {

struct ExactSolution {
    Multiplicity x;
    DemandAssignment f; // witness; ships every demand within c(u) * x(u)
    Rational opt;
};

/// Exact optimum by best-first search over multiplicity vectors in
/// nondecreasing cost-plus-lower-bound order; each popped vector is tested
/// with a transportation feasibility check, so the first feasible one is
/// optimal. Desk scale only: throws ScaleError above `cap` vertices.
ExactSolution exact_opt(const Instance& inst, int cap = 10);

/// True iff a fractional assignment exists shipping every demand into its
/// closed neighborhood within sink capacities c(u) * x(u). Exact max-flow.
bool feasibility_flow(const Multiplicity& x, const Instance& inst);
bool feasibility_flow_witness(const Multiplicity& x, const Instance& inst,
                              DemandAssignment* witness);

/// d(v) * x(u) >= f(v,u) for every pair; the redundant-looking third
/// constraint of the integer program.
bool verify_lemma1(const DemandAssignment& f, const Instance& inst);

/// The n-vertex star with unit costs and demands, center capacity n, petal
/// capacities alpha * n. Its relaxation without the third constraint has a
/// solution of cost 1/alpha while the integer optimum is 1.
Instance star_instance(const Rational& alpha, int n);

struct ThirdConstraintViolation {
    int v, u;     // demand vertex, server
    Rational lhs; // d(v) * x(u)
    Rational rhs; // f(v,u)
};

struct GapReport {
    Rational alpha;
    int n = 0;
    std::vector<Rational> x_frac; // fractional multiplicities
    DemandAssignment f_frac;
    Rational fractional_cost;
    Rational integer_opt;
    Rational gap; // integer_opt / fractional_cost == alpha
    bool relaxed_constraints_hold = false; // families one and two
    std::vector<ThirdConstraintViolation> third_violations;
};

/// Builds the integrality-gap witness on star_instance(alpha, n).
GapReport lp_gap_demo(const Rational& alpha, int n, int oracle_cap = 10);

} // namespace capdom
