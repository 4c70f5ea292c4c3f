#pragma once

#include "capdom/instance.hpp"
#include "capdom/rng.hpp"

#include <cstdint>
#include <vector>

namespace capdom {

/// Combinatorial embedding: counter-clockwise cyclic order of neighbors
/// around every vertex, plus one designated outer-face walk per connected
/// component. Face tracing follows the successor convention: arriving at v
/// from u, the walk leaves v toward the neighbor after u in rot[v]. Under
/// that convention the outer walk runs counter-clockwise.
struct RotationSystem {
    std::vector<std::vector<int>> rot;
    std::vector<std::vector<int>> outer_walks;
};

/// All faces of a rotation system, as traced vertex walks. face_of_arc maps
/// each directed edge to the face it lies on.
struct FaceSet {
    std::vector<std::vector<int>> walks;
    // arc index: arc_offset[v] + position of the neighbor in rot[v]
    std::vector<int> arc_offset;
    std::vector<int> face_of_arc;

    int arc_index(const RotationSystem& rs, int from, int to) const;
    int face_of(const RotationSystem& rs, int from, int to) const;
};

/// Traces every face. Throws ValidationError if rotations disagree with the
/// instance adjacency.
FaceSet trace_faces(const Instance& inst, const RotationSystem& rs);

/// Full structural validation: rotations are a permutation of each
/// adjacency list, exactly one outer walk per component, every walk is a
/// traced face, and Euler's formula n - m + f = 2 holds per component.
void validate_rotation_system(const Instance& inst, const RotationSystem& rs);

/// True iff every vertex appears on its component's designated outer walk.
bool is_outerplanar_embedding(const Instance& inst, const RotationSystem& rs);

/// Total vertex order from the outer face: vertices ranked by first
/// appearance on the walk, starting at the anchor.
struct VertexOrder {
    int anchor = -1;
    std::vector<int> sequence; // rank -> vertex
    std::vector<int> rank;     // vertex -> rank, anchor has rank 0
};

/// Requires every vertex of the instance to lie on the anchor's outer walk
/// (connected outerplanar embedding); otherwise throws ValidationError
/// ("not an outerplanar embedding").
VertexOrder outer_order(const Instance& inst, const RotationSystem& rs, int anchor);

/// Peeling depth of every vertex: level 0 is the outer walk; removing all
/// vertices of levels < k exposes level k as the new outer boundary.
struct LevelStructure {
    std::vector<int> level;
    int max_level = 0;
    // Outer walks of each level's induced subgraph, one per component, in
    // first-discovery order. level_walks[k] lists components of level k.
    std::vector<std::vector<std::vector<int>>> level_walks;
};

LevelStructure peel_levels(const Instance& inst, const RotationSystem& rs);

struct WeightRanges {
    long long cost_lo = 1, cost_hi = 10;
    long long cap_lo = 1, cap_hi = 10;
    long long dem_lo = 0, dem_hi = 10;
};

struct GeneratedInstance {
    Instance inst;
    RotationSystem rs;
};

struct OuterplanarOptions {
    double keep_prob = 0.5; // survival probability of each internal chord
    WeightRanges weights;
};

/// Random outerplanar instance: a uniformly random triangulation of a convex
/// n-gon (hull kept, each chord kept independently with keep_prob), with
/// integer weights drawn from the configured ranges. Deterministic per seed.
GeneratedInstance gen_outerplanar(int n, std::uint64_t seed, const OuterplanarOptions& opts = {});

/// rows x cols grid graph with its canonical planar embedding.
GeneratedInstance gen_grid(int rows, int cols, std::uint64_t seed, const WeightRanges& weights = {});

/// Canonical embedding of the rows x cols grid (vertex ids r * cols + c).
RotationSystem grid_embedding(int rows, int cols);

/// The chords of a uniformly random triangulation of the convex n-gon
/// (the polygon hull edges are implicit). Exposed for exhaustive tests.
std::vector<std::pair<int, int>> random_polygon_triangulation(int n, Rng& rng);

/// Rotation system of a convex-position drawing: vertices 0..n-1 on a circle
/// counter-clockwise, edge set as given. Outer walks are retraced, so the
/// edge set may be any subgraph of the polygon-with-chords drawing.
RotationSystem convex_position_embedding(const Instance& inst);

} // namespace capdom
