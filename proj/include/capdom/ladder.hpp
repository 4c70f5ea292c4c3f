#pragma once

#include "capdom/embedding.hpp"
#include "capdom/instance.hpp"

#include <string>
#include <vector>

namespace capdom {

/// Layered representation of a connected outerplanar graph. Layer index of a
/// vertex is its graph distance to the anchor; inside a layer, vertices keep
/// the outer-face order, which makes every layer a disjoint union of subpaths
/// and forces inter-layer edges to be non-crossing.
struct GeneralLadder {
    int anchor = -1;
    std::vector<int> layer_of;             // distance to anchor
    std::vector<std::vector<int>> layers;  // layers[k] sorted by order_rank
    std::vector<int> order_rank;           // outer-face first-appearance rank

    int max_layer() const { return static_cast<int>(layers.size()) - 1; }
};

/// Builds the ladder: BFS distances from the anchor, then one pass along the
/// outer walk appending each vertex to its layer. Linear time. Requires a
/// connected outerplanar embedding.
GeneralLadder extract_ladder(const Instance& inst, const RotationSystem& rs, int anchor);

/// Same construction when the order is already known (used for slabs, where
/// the order comes from a level walk rather than the instance embedding).
GeneralLadder extract_ladder_with_order(const Instance& inst, const VertexOrder& order);

struct LadderViolation {
    enum class Kind {
        AnchorLayer,        // layer 0 is not exactly {anchor}
        Partition,          // layers do not partition the vertex set
        DistanceMismatch,   // layer_of(v) != BFS distance
        EdgeSpan,           // edge joins layers more than one apart
        IntraLayerGap,      // same-layer edge between non-consecutive vertices
        Crossing,           // order u < v but max N(u) in next layer > min N(v)
        UpwardDegree        // more than two neighbors in the layer above
    };
    Kind kind;
    std::vector<int> vertices; // witnesses; for Crossing: (u, v, p, q)
    std::string detail;
};

/// Checks every ladder invariant and reports each violation with witnesses.
std::vector<LadderViolation> verify_ladder(const GeneralLadder& ladder, const Instance& inst);

/// DOT text: one rank group per layer, in-layer order kept by invisible
/// chain edges. No coordinates.
std::string ladder_to_dot(const GeneralLadder& ladder, const Instance& inst,
                          const std::vector<std::string>& names = {});

} // namespace capdom
