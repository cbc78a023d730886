#pragma once

#include "ordb/gset.hpp"
#include "ordb/relation.hpp"

#include <functional>
#include <string>

namespace ordb {

enum class Cmp { Less, Equal, Greater };

enum class OrderMode { Right, Bi };

std::string to_string(Cmp c);
std::string to_string(OrderMode m);
OrderMode order_mode_from_string(const std::string& s);

/// A computable strict total order on a group, presented as a
/// three-way comparison. Convention fixed project-wide: g < h iff
/// h g^-1 lies in the positive cone, so right-invariance is automatic
/// for cone-backed oracles.
struct OrderOracle {
    GroupCtxPtr ctx;
    OrderMode mode = OrderMode::Right;
    std::string name; // stable tag used in certificates
    std::function<Cmp(const GroupElement&, const GroupElement&)> compare;
};

/// A window of a positive cone: the declared members of P within
/// ball(window). `members` is sorted canonically (GroupCtx::less) and
/// never contains the identity.
struct PositiveCone {
    GroupCtxPtr ctx;
    int window = 0;
    OrderMode mode = OrderMode::Right;
    std::vector<GroupElement> members;

    bool contains(const GroupElement& g) const;
};

/// Throws InputError when members contain the identity, duplicates,
/// elements beyond the window, or are unsorted.
void validate_cone(const PositiveCone& p);

/// First nonzero exponent decides; bi-invariant since the group is
/// abelian.
OrderOracle lex_order(GroupCtxPtr free_abelian_ctx);

/// Bi-invariant order on a free group via truncated power series: each
/// word maps to its series under x_i -> 1 + X_i, x_i^-1 -> 1 - X_i +
/// X_i^2 - ...; a nontrivial word is positive iff the graded-lex leading
/// term of (series - 1) has positive coefficient. The truncation degree
/// is the letter count of the compared quotient, which suffices to
/// separate it from 1.
OrderOracle magnus_order(GroupCtxPtr free_group_ctx);

PositiveCone cone_from_oracle(const OrderOracle& oracle, GroupCtxPtr ctx, int r,
                              std::size_t cap = GroupCtx::kDefaultBallCap);

/// (x, y) in the result iff rep(x) < rep(y) per the cone. The window
/// must carry group-element reps over the cone's context. Throws
/// ConeWindowError when the cone cannot decide some pair of the window.
Relation relation_from_cone(const PositiveCone& p, GSetPtr window);

/// Partial comparison: throws ConeWindowError when h g^-1 falls outside
/// the decided window.
OrderOracle oracle_from_cone(const PositiveCone& p);

struct ConeAxiomReport {
    /// ball elements g != e with both or neither of g, g^-1 in P
    std::vector<GroupElement> pairing_violations;
    /// member pairs whose in-window product is not a member
    std::vector<std::pair<GroupElement, GroupElement>> product_violations;
    /// (member g, conjugator f) with f^-1 g f in-window but not in P
    std::vector<std::pair<GroupElement, GroupElement>> conjugation_violations;

    bool pass() const {
        return pairing_violations.empty() && product_violations.empty() &&
               conjugation_violations.empty();
    }
};

/// (i) exactly one of g, g^-1 in P per ball element != e; (ii) products
/// of members that stay in the window are members; (iii) in bi mode,
/// conjugates f^-1 g f by conjugators f from ball(window/2) that stay in
/// the window are members.
ConeAxiomReport check_cone_axioms(const PositiveCone& p,
                                  std::size_t cap = GroupCtx::kDefaultBallCap);

/// The fibrewise order on a two-sided window: (f1, f2) in R iff
/// f1 < f2 under the oracle. Invariant for the pair action exactly when
/// the oracle is bi-invariant; feeding a right-only order in is how
/// invariance failures are witnessed.
Relation biregular_relation_from_bi_oracle(const OrderOracle& oracle, GSetPtr biregular_window);

} // namespace ordb
