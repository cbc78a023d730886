#pragma once

#include "ordb/realization.hpp"

#include <optional>

namespace ordb {

/// Labeled lift of a rose to a window: one petal per generator, one edge
/// (v, s, v*s) per in-window step. Steps leaving the window are dropped
/// and counted, so certificates state exactly what was checked.
struct CayleyBallGraph {
    struct Edge {
        int from = 0;
        int label = 0; // generator index, 1-based
        int to = 0;

        bool operator==(const Edge& o) const {
            return from == o.from && label == o.label && to == o.to;
        }
    };

    GSetPtr fibre;
    std::vector<Edge> edges; // sorted by (label, from)
    int dropped_edges = 0;
};

CayleyBallGraph build_cayley_ball(GSetPtr x);

/// Verdict for lifting the window into the line over its base: heights
/// must separate the fibre and no two same-label edges may trade order
/// between their endpoints. A refutation carries the first violation in
/// (label, from) edge order, or the least colliding vertex pair.
struct HeightWitness {
    CayleyBallGraph graph;
    OrderEmbedding heights;
    bool certified = false;
    std::optional<std::pair<CayleyBallGraph::Edge, CayleyBallGraph::Edge>> crossing;
    std::optional<std::pair<int, int>> collision;
};

/// Affine edge interpolation makes non-crossing a pure endpoint sign
/// condition, decided exactly. Throws InputError when a vertex has no
/// height.
HeightWitness certify_embedding(const CayleyBallGraph& graph, const OrderEmbedding& heights);

/// Orders the window by the cone, embeds it in the carrier enumeration
/// order and certifies. Throws InputError on an inconsistent cone and
/// ConeWindowError when the cone cannot decide the window.
HeightWitness witness_from_cone(const PositiveCone& cone, GSetPtr window);
HeightWitness witness_from_oracle(const OrderOracle& oracle, GSetPtr window);

/// Two-sided version: the window is G under the G x G action, so left
/// translations label the first generator family and right translations
/// the second. Certifies exactly when the oracle is bi-invariant on the
/// window.
HeightWitness bi_witness(GroupCtxPtr ctx, const OrderOracle& oracle, int r,
                         std::size_t cap = GroupCtx::kDefaultBallCap);

/// "vertex,..." and "edge,..." rows; crossing edges are marked.
std::string witness_csv(const HeightWitness& w);
/// Deterministic standalone picture of the heights and edge segments.
std::string witness_svg(const HeightWitness& w);

} // namespace ordb
