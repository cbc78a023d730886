#pragma once

#include "ordb/gset.hpp"

#include <set>
#include <utility>
#include <vector>

namespace ordb {

/// A relation on the carrier of a G-set, stored as an explicit sorted
/// pair set so serialized certificates are byte-stable.
struct Relation {
    GSetPtr base;
    std::set<std::pair<int, int>> pairs;

    bool contains(int x, int y) const { return pairs.count({x, y}) > 0; }
};

/// Throws InputError unless every pair lies in carrier x carrier.
void validate_relation(const Relation& r);

/// (x,y) in result iff (y,x) in r.
Relation opposite(const Relation& r);

/// r2 after r1: (x,z) in result iff some y has (x,y) in r1 and (y,z) in
/// r2. Bases must agree.
Relation compose(const Relation& r1, const Relation& r2);

/// Per-axiom verdicts for a strict total order, each with the violating
/// pairs: transitivity as R.R subset of R, irreflexivity as diag(X)
/// meets R empty, antisymmetry as R meets R^op empty, totality as
/// R union R^op = X x X minus diag(X).
struct OrderAxiomReport {
    bool transitivity = true;
    bool irreflexivity = true;
    bool antisymmetry = true;
    bool totality = true;
    std::vector<std::pair<int, int>> transitivity_violations;
    std::vector<std::pair<int, int>> irreflexivity_violations;
    std::vector<std::pair<int, int>> antisymmetry_violations;
    std::vector<std::pair<int, int>> totality_violations;

    bool pass() const { return transitivity && irreflexivity && antisymmetry && totality; }
};

OrderAxiomReport check_strict_total_order(const Relation& r);

/// A pair of r whose image under one signed letter lands in-window but
/// outside r.
struct InvarianceViolation {
    std::pair<int, int> pair;
    int letter;
};

struct InvarianceReport {
    bool pass = true;
    std::vector<InvarianceViolation> violations;
};

/// Checks (x*s, y*s) in r for every (x,y) in r and signed letter s with
/// both images in-window. On truncated carriers this is a window claim,
/// not a global one.
InvarianceReport check_invariance(const Relation& r);

/// Pulls a strict total order back along an injective equivariant map:
/// (x,y) in result iff (f(x), f(y)) in r2. Throws InputError when f is
/// not injective or r2 is not a strict total order.
Relation pullback_order(const GSetMorphism& f, const Relation& r2);

} // namespace ordb
