#pragma once

#include "ordb/oracle.hpp"
#include "ordb/rational.hpp"

#include <functional>

namespace ordb {

/// Order-preserving placement of carrier points on the rational line.
/// Heights are exact and dyadic; the construction depends on the
/// enumeration order and is reproducible.
struct OrderEmbedding {
    GSetPtr base;
    std::vector<std::pair<int, Rational>> points; // (point id, height), enumeration order

    bool has(int id) const;
    const Rational& at(int id) const; // InputError when the point is absent
    Rational inf() const;             // least height
    Rational sup() const;             // greatest height
};

using PointComparator = std::function<Cmp(int, int)>;

PointComparator point_comparator(const Relation& r);
PointComparator point_comparator(const OrderOracle& oracle, GSetPtr window);

/// Places points one at a time: the first lands at 0, a new maximum at
/// max+1, a new minimum at min-1, anything else at the midpoint of the
/// tightest enclosing placed pair. Throws InputError on repeats, unknown
/// ids, or distinct points the comparator cannot separate.
OrderEmbedding embed_in_rationals(GSetPtr base, const std::vector<int>& enumeration,
                                  const PointComparator& cmp);

/// Piecewise-linear order-preserving self-map of the line: affine
/// between breakpoints, the identity outside them. Empty breakpoints
/// mean the identity map.
struct PLHomeo {
    std::vector<Rational> breakpoints; // strictly increasing, splice ends included
    std::vector<Rational> values;      // same length, strictly increasing
    bool identity_outside = true;

    bool is_identity() const { return breakpoints.empty(); }
    Rational operator()(const Rational& t) const;
};

/// Realizes g on the line: breakpoints at the heights of points x with
/// x*g in-window, sending t(x) to t(x*g), spliced affinely to the
/// identity one unit beyond the extreme heights. Maps that fix every
/// known point normalize to the identity. Throws InputError with the
/// witness pair when the heights are not monotone under g.
PLHomeo extend_action_to_line(const OrderEmbedding& emb, GSetPtr x, const GroupElement& g);

struct RealizationReport {
    bool monotonic = true;    // every map strictly increasing
    bool equivariant = true;  // map(t(x)) == t(x*g) at all known points
    bool composition = true;  // map(h) after map(g) == map(g*h) at samples
    std::vector<std::string> violations;

    bool pass() const { return monotonic && equivariant && composition; }
};

/// Re-checks finished realizations against the embedding: exact
/// equivariance at known points, exact composition at every in-window
/// composable sample, strict monotonicity.
RealizationReport check_realization(const OrderEmbedding& emb, GSetPtr x,
                                    const std::vector<std::pair<GroupElement, PLHomeo>>& maps);

/// Graph sample rows "x,value" at the breakpoints, for offline plotting.
std::string pl_csv(const PLHomeo& map);

} // namespace ordb
