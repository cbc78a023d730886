#pragma once

#include "ordb/oracle.hpp"

#include <cstdint>
#include <optional>
#include <variant>

namespace ordb {

enum class SearchStatus { Found, ImpossibleOnWindow, ExhaustedNoConclusion };

std::string to_string(SearchStatus s);

struct SearchStats {
    std::uint64_t nodes = 0;        // decisions taken
    std::uint64_t propagations = 0; // forced assignments
    int max_depth = 0;
};

/// A pair orbit of the diagonal action containing both (x,y) and (y,x):
/// acting on `pair` by `word` (signed letters) yields the swapped pair,
/// so no invariant order can contain either.
struct OrbitSwapRefutation {
    std::pair<int, int> pair;
    std::vector<int> word;
};

/// A generator letter moving a point around a cycle: assuming either
/// polarity of (point, point*letter), invariance walks the cycle and
/// transitivity closes it into (point, point), breaking irreflexivity.
struct TorsionCycleRefutation {
    int point;
    int letter;
    int cycle_length; // >= 2
};

using FiniteRefutation = std::variant<OrbitSwapRefutation, TorsionCycleRefutation>;

/// One positivity derivation in a cone refutation. Rules:
///   "involution"  element equals its own inverse, so the pairing axiom
///                 forces it positive; a, b unused (empty)
///   "product"     element = a*b with both factors positive
///   "conjugation" element = b^-1 a b with a positive and b from the
///                 half window (bi mode only)
struct ConeDeriv {
    std::string rule;
    GroupElement element;
    GroupElement a;
    GroupElement b;
};

/// Refutation of cone existence on a ball: a case split over inverse
/// pairs in which every branch derives two positives p, p^-1 (their
/// product is the identity). Branches are pruned to the derivations the
/// clash actually needs, and splits neither branch depends on are
/// collapsed away.
struct ConeRefutation {
    struct Branch {
        GroupElement assumed; // taken positive in this branch
        std::vector<ConeDeriv> forced;
        std::optional<std::pair<GroupElement, GroupElement>> clash;
        int next = -1; // deeper split when there is no direct clash
    };
    struct Node {
        Branch positive;
        Branch negative;
    };

    std::vector<ConeDeriv> preamble; // unit propagation before any split
    std::optional<std::pair<GroupElement, GroupElement>> preamble_clash;
    std::vector<Node> nodes; // arena; root is index 0 when non-empty
};

struct SearchOutcome {
    SearchStatus status = SearchStatus::ExhaustedNoConclusion;
    std::string task; // "invariant_order_finite" | "cone_search"

    // cone searches
    GroupCtxPtr ctx;
    int radius = 0;
    OrderMode mode = OrderMode::Right;

    // finite searches
    GSetPtr gset;

    std::optional<Relation> relation_witness;
    std::optional<PositiveCone> cone_witness;
    std::optional<FiniteRefutation> finite_refutation;
    std::optional<ConeRefutation> cone_refutation;

    SearchStats stats;
    std::string note;
};

/// Decides invariant orderability of a finite total action. Found comes
/// with an invariant strict total order; ImpossibleOnWindow with an
/// orbit-swap or torsion-cycle refutation. Deterministic: orbit scan in
/// lexicographic pair order, positive branch first.
SearchOutcome search_invariant_order_finite(GSetPtr x);

struct SearchLimits {
    std::size_t ball_cap = GroupCtx::kDefaultBallCap;
    std::uint64_t node_cap = 1'000'000;
};

/// Backtracking search for a positive cone on ball(r): one of g, g^-1
/// positive per inverse pair, products closed in-window, conjugates
/// closed in-window for bi mode (conjugators from ball(r/2)). Found is a
/// consistent cone on the window (not a global orderability claim for
/// infinite groups); ImpossibleOnWindow carries a replayable refutation
/// valid for the whole group; ExhaustedNoConclusion reports a tripped
/// resource cap. Decisions follow the canonical element order, positive
/// branch first, so certificates are reproducible.
SearchOutcome cone_search(GroupCtxPtr ctx, int r, OrderMode mode, SearchLimits limits = {});

/// Independently re-checks a Found witness with the axiom checkers and
/// replays refutation traces step by step. On failure, `why` (when
/// given) names the broken axiom or step.
bool verify_outcome(const SearchOutcome& outcome, std::string* why = nullptr);

} // namespace ordb
