#pragma once

#include "capdom/embedding.hpp"
#include "capdom/instance.hpp"
#include "capdom/ladder.hpp"
#include "capdom/primaldual.hpp"

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace capdom {

/// Instance restricted to a vertex subset, with the mapping back to the
/// parent's ids. Local ids keep the parent's relative order.
struct SubInstance {
    Instance inst;
    std::vector<int> to_parent;
};

/// One residue class of the three-way layer decomposition: the sub-instance
/// induced by the closed neighborhood of the target set R_i (layers 3j + i),
/// demands zeroed outside R_i. Slab parts additionally carry vertices from
/// the two adjacent embedding levels, tagged by `side`.
struct DecompositionPart {
    SubInstance sub;
    int residue = 0;
    bool slab = false;
    std::vector<char> target;     // R_i membership
    std::vector<int> layer;       // ladder layer; -1 for adjacent-level vertices
    std::vector<int> order;       // outer order rank (valid where layer >= 0)
    std::vector<int> side;        // 0 on the ladder level, -1 / +1 otherwise
    std::vector<int> side_order;  // total order within an adjacent level
};

struct LayerDecomposition {
    std::array<DecompositionPart, 3> parts;
};

LayerDecomposition decompose(const GeneralLadder& ladder, const Instance& inst);

/// Kept closed neighbors of a target vertex (local ids, -1 = none).
struct KeptNeighbors {
    std::vector<int> ranking; // closed neighborhood by (cost, id) ascending
    int j = -1;     // first in ranking with capacity > d(v); -1 when none
    int k = -1;     // best cost/capacity ratio among ranks before j
    int p = -1;     // rightmost neighbor in the layer above
    int q = -1;     // rightmost neighbor in the layer below
    int above = -1; // rightmost neighbor in the adjacent level above (slab)
    int below = -1; // rightmost neighbor in the adjacent level below (slab)
    std::vector<int> removed; // R(v): closed neighbors disconnected from v
};

/// The part with, for every target v, the edges into R(v) removed. Target
/// degrees drop to at most 6 (8 for slabs); every non-target vertex loses at
/// most one incident edge.
struct ReducedGraph {
    Instance inst;
    std::vector<std::pair<int, int>> removed_edges;
    std::vector<KeptNeighbors> kept; // indexed by local id; default for non-targets
    std::vector<int> removed_per_vertex;
    int degree_bound = 6;
};

ReducedGraph reduce(const DecompositionPart& part);

/// Pointwise sum of assignments.
DemandAssignment combine(const std::vector<DemandAssignment>& parts);

/// Everything needed to re-verify one greedy run independently: the reduced
/// sub-instance, the assignment computed on it, and its dual certificate.
struct PartCertificate {
    int component = 0;
    int residue = 0;
    int level = -1; // middle embedding level; -1 in the outerplanar pipeline
    Instance part_instance;
    std::vector<int> to_original;
    std::vector<char> target;
    DemandAssignment part_assignment; // local ids
    DualSolution dual;
    Rational dual_val;
    Rational part_cost;
    int factor = 7; // certified: part_cost <= factor * dual_val
    std::vector<int> removed_per_vertex;
    int degree_bound = 6;
    std::vector<std::string> events;
};

struct SolveOptions {
    bool event_log = false;
    bool verify_ladders = true; // fail fast on a bad embedding
};

struct SolveResult {
    SolutionReport report; // on original vertex ids
    Rational dual_sum;     // sum of part dual values
    int max_factor = 7;
    bool certified = false; // report.cost <= max_factor * dual_sum
    std::vector<PartCertificate> parts;
};

/// Ladder -> residue decomposition -> edge reduction -> greedy charging per
/// reduced part -> combined assignment, with one dual certificate per part.
SolveResult solve_outerplanar(const Instance& inst, const RotationSystem& rs,
                              const SolveOptions& opts = {});

/// Planar pipeline: peel embedding levels; every level becomes the middle of
/// its own three-level slab (demand lives only on the middle level), each
/// slab runs the ladder pipeline of its middle level with two extra kept
/// neighbors per demand vertex in the adjacent levels.
SolveResult solve_planar(const Instance& inst, const RotationSystem& rs,
                         const SolveOptions& opts = {});

/// Connected components with their induced rotation systems.
std::vector<std::pair<SubInstance, RotationSystem>> split_components(const Instance& inst,
                                                                     const RotationSystem& rs);

} // namespace capdom
