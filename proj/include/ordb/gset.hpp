#pragma once

#include "ordb/group.hpp"

#include <string>
#include <vector>

namespace ordb {

struct GSet;
using GSetPtr = std::shared_ptr<const GSet>;

/// A right action of a group on a finite carrier, possibly a ball-shaped
/// window of an infinite action. Points are indices into `names`. The
/// primitive data is the per-letter step table; words act letter by
/// letter and OutOfWindow is sticky along the way.
struct GSet {
    static constexpr int kOutOfWindow = -1;

    GroupCtxPtr group;
    std::vector<std::string> names;
    /// Representative group elements for window carriers (least coset
    /// element for coset spaces); empty when the points are synthetic
    /// (pairs).
    std::vector<GroupElement> reps;
    /// step[x][2*i] = x * s_i, step[x][2*i+1] = x * s_i^-1, kOutOfWindow
    /// when the result leaves the carrier.
    std::vector<std::vector<int>> step;
    bool truncated = false;

    int size() const { return static_cast<int>(names.size()); }
    bool total() const { return !truncated; }

    /// letter is signed and 1-based: +i acts by generator i, -i by its
    /// inverse (matching GroupCtx::letters).
    int act_letter(int point, int letter) const;
    /// Applies letters left to right; kOutOfWindow propagates.
    int act_word(int point, std::span<const int> letters) const;
    /// Acts by the canonical geodesic spelling of g.
    int act(int point, const GroupElement& g) const;

    /// Index of the point with this display name; throws InputError.
    int point_named(const std::string& name) const;
};

/// Equivariant map of right G-sets over one group context. `map` sends
/// source indices to target indices and must commute with every defined
/// generator step.
struct GSetMorphism {
    GSetPtr source;
    GSetPtr target;
    std::vector<int> map;
};

/// One point fixed by everything.
GSetPtr make_trivial(GroupCtxPtr ctx);

/// G acting on itself by right multiplication. Finite backends carry the
/// whole group; infinite ones are truncated to ball(r).
GSetPtr make_regular(GroupCtxPtr ctx, int r,
                     std::size_t cap = GroupCtx::kDefaultBallCap);

/// Right cosets Hx with (Hx)*g = H(xg); H is generated by the given
/// elements. Finite backends only.
GSetPtr make_coset(GroupCtxPtr ctx, const std::vector<GroupElement>& subgroup_gens);

/// G acting on itself by conjugation, h*g = g^-1 h g, on the same
/// carrier as make_regular.
GSetPtr make_conjugation(GroupCtxPtr ctx, int r,
                         std::size_t cap = GroupCtx::kDefaultBallCap);

/// The two-sided action of G x G on G: f*(g,h) = g^-1 f h. The returned
/// GSet's group is direct_product(ctx, ctx).
GSetPtr make_biregular(GroupCtxPtr ctx, int r,
                       std::size_t cap = GroupCtx::kDefaultBallCap);

/// Pairs with the diagonal action; a step is defined only when both
/// component steps are.
GSetPtr product(GSetPtr x1, GSetPtr x2);

/// Pairs (x1, x2) with f1(x1) = f2(x2) under the diagonal action.
GSetPtr fibre_product(const GSetMorphism& f1, const GSetMorphism& f2);

/// The target points hit by f, with the target action restricted to the
/// subset (steps leaving it become OutOfWindow).
GSetPtr image(const GSetMorphism& f);

/// x -> (x, x) into product(x, x).
GSetMorphism diagonal(GSetPtr x);

/// Same group, same carrier names, same step tables.
bool structurally_equal(const GSet& a, const GSet& b);

struct ActionAxiomViolation {
    int point;
    GroupElement g;
    GroupElement h;
};

struct ActionAxiomReport {
    bool pass = true;
    std::vector<ActionAxiomViolation> violations;
};

/// Checks (x*g)*h = x*(gh) wherever both sides are in-window, for g, h
/// ranging over the whole group (finite backends) or ball(radius).
ActionAxiomReport check_action_axioms(const GSet& x, int radius = 2);

struct EquivarianceViolation {
    int point;
    int letter;
};

struct EquivarianceReport {
    bool pass = true;
    std::vector<EquivarianceViolation> violations;
};

/// Checks f(x*s) = f(x)*s for every generator letter. A source step that
/// is defined while the target step is not counts as a violation.
EquivarianceReport check_equivariance(const GSetMorphism& f);

} // namespace ordb
