#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ordb/errors.hpp"
#include "ordb/oracle.hpp"

using namespace ordb;

namespace {

// windowed right order on the Klein-bottle group: positive iff the b
// exponent is, with ties broken by the a exponent
OrderOracle klein_right_oracle(GroupCtxPtr K) {
    OrderOracle o;
    o.ctx = K;
    o.mode = OrderMode::Right;
    o.name = "klein-right";
    o.compare = [K](const GroupElement& g, const GroupElement& h) {
        auto d = K->op(h, K->inverse(g));
        if (d == K->identity()) return Cmp::Equal;
        bool positive = d.data[1] > 0 || (d.data[1] == 0 && d.data[0] > 0);
        return positive ? Cmp::Less : Cmp::Greater;
    };
    return o;
}

Relation window_relation(const OrderOracle& o, GSetPtr window) {
    Relation r{window, {}};
    for (int x = 0; x < window->size(); ++x)
        for (int y = 0; y < window->size(); ++y)
            if (x != y && o.compare(window->reps[static_cast<std::size_t>(x)],
                                    window->reps[static_cast<std::size_t>(y)]) == Cmp::Less)
                r.pairs.insert({x, y});
    return r;
}

} // namespace

TEST_CASE("first nonzero exponent decides the lattice order") {
    auto Z2 = GroupCtx::free_abelian(2);
    auto o = lex_order(Z2);
    auto e = Z2->identity();
    CHECK(o.compare(GroupElement{{1, -5}}, e) == Cmp::Greater);
    CHECK(o.compare(GroupElement{{0, -1}}, e) == Cmp::Less);
    CHECK(o.compare(e, e) == Cmp::Equal);
    CHECK_THROWS_AS(lex_order(GroupCtx::free_group(2)), InputError);
}

TEST_CASE("lattice order is invariant on both sides") {
    auto Z2 = GroupCtx::free_abelian(2);
    auto o = lex_order(Z2);
    auto inner = Z2->ball(3);
    auto outer = Z2->ball(2);
    for (const auto& g : inner)
        for (const auto& h : inner) {
            auto c = o.compare(g, h);
            for (const auto& f : outer)
                for (const auto& k : outer)
                    CHECK(o.compare(Z2->op(Z2->op(f, g), k), Z2->op(Z2->op(f, h), k)) == c);
        }
}

TEST_CASE("series order ranks free group words") {
    auto F = GroupCtx::free_group(2);
    auto o = magnus_order(F);
    auto e = F->identity();
    CHECK(o.compare(F->parse("a"), e) == Cmp::Greater);
    CHECK(o.compare(F->op(F->parse("a"), F->parse("a^-1")), e) == Cmp::Equal);
    // the commutator needs the degree-2 bracket to decide
    CHECK(o.compare(F->parse("a*b*a^-1*b^-1"), e) == Cmp::Greater);
    CHECK(o.compare(F->parse("b*a*b^-1*a^-1"), e) == Cmp::Less);
}

TEST_CASE("series order never conflates distinct short words") {
    auto F = GroupCtx::free_group(2);
    auto o = magnus_order(F);
    auto e = F->identity();
    for (const auto& w : F->ball(4))
        if (!(w == e)) CHECK(o.compare(w, e) != Cmp::Equal);
}

TEST_CASE("series order is invariant on both sides in-window") {
    auto F = GroupCtx::free_group(2);
    auto o = magnus_order(F);
    auto inner = F->ball(2);
    auto outer = F->ball(1);
    for (const auto& g : inner)
        for (const auto& h : inner) {
            auto c = o.compare(g, h);
            for (const auto& f : outer)
                for (const auto& k : outer)
                    CHECK(o.compare(F->op(F->op(f, g), k), F->op(F->op(f, h), k)) == c);
        }
}

TEST_CASE("cones sample oracles on balls") {
    auto Z = GroupCtx::free_abelian(1);
    auto p = cone_from_oracle(lex_order(Z), Z, 3);
    REQUIRE(p.members.size() == 3);
    CHECK(p.members[0].data == std::vector<std::int64_t>{1});
    CHECK(p.members[1].data == std::vector<std::int64_t>{2});
    CHECK(p.members[2].data == std::vector<std::int64_t>{3});
    CHECK(check_cone_axioms(p).pass());
}

TEST_CASE("cone relations on windows satisfy the order axioms") {
    auto Z = GroupCtx::free_abelian(1);
    auto window = make_regular(Z, 2);
    auto p = cone_from_oracle(lex_order(Z), Z, 4);
    auto r = relation_from_cone(p, window);
    CHECK(check_strict_total_order(r).pass());
    CHECK(check_invariance(r).pass);

    // a radius-3 cone cannot decide the extreme pair (-2, 2)
    auto narrow = cone_from_oracle(lex_order(Z), Z, 3);
    CHECK_THROWS_AS(relation_from_cone(narrow, window), ConeWindowError);
}

TEST_CASE("cone round-trips reproduce the oracle on the window") {
    auto Z2 = GroupCtx::free_abelian(2);
    auto o = lex_order(Z2);
    auto p = cone_from_oracle(o, Z2, 4);
    auto back = oracle_from_cone(p);
    for (const auto& g : Z2->ball(2))
        for (const auto& h : Z2->ball(2)) CHECK(back.compare(g, h) == o.compare(g, h));
    CHECK(back.mode == OrderMode::Bi);

    auto outside = GroupElement{{9, 0}};
    CHECK_THROWS_AS(back.compare(Z2->identity(), outside), ConeWindowError);
}

TEST_CASE("cone axiom checker verifies pairing and products") {
    auto Z = GroupCtx::free_abelian(1);
    PositiveCone good{Z, 3, OrderMode::Right,
                      {GroupElement{{1}}, GroupElement{{2}}, GroupElement{{3}}}};
    CHECK(check_cone_axioms(good).pass());

    PositiveCone warped{Z, 3, OrderMode::Right,
                        {GroupElement{{1}}, GroupElement{{-2}}, GroupElement{{3}}}};
    auto report = check_cone_axioms(warped);
    CHECK(!report.pass());
    // every inverse pair still has exactly one member, so the failures
    // are products: 1+1 = 2 and 1+(-2) = -1 escape the member set
    CHECK(report.pairing_violations.empty());
    REQUIRE(!report.product_violations.empty());
    bool found = false;
    for (const auto& [g, h] : report.product_violations)
        if (g.data == std::vector<std::int64_t>{1} && h.data == std::vector<std::int64_t>{1})
            found = true;
    CHECK(found);

    PositiveCone gap{Z, 2, OrderMode::Right, {GroupElement{{1}}}};
    CHECK(!check_cone_axioms(gap).pairing_violations.empty());

    CHECK_THROWS_AS(validate_cone(PositiveCone{Z, 2, OrderMode::Right, {Z->identity()}}),
                    InputError);
    CHECK_THROWS_AS(validate_cone(PositiveCone{Z, 1, OrderMode::Right, {GroupElement{{2}}}}),
                    InputError);
}

TEST_CASE("promoting a twisted right cone to bi mode breaks conjugation") {
    auto K = GroupCtx::semidirect_zz(-1);
    auto right = cone_from_oracle(klein_right_oracle(K), K, 2);
    CHECK(check_cone_axioms(right).pass());

    auto promoted = right;
    promoted.mode = OrderMode::Bi;
    auto report = check_cone_axioms(promoted);
    CHECK(report.pairing_violations.empty());
    CHECK(report.product_violations.empty());
    REQUIRE(!report.conjugation_violations.empty());
    // witness: b^-1 a b = a^-1
    bool found = false;
    for (const auto& [g, f] : report.conjugation_violations)
        if (g.data == std::vector<std::int64_t>{1, 0} &&
            f.data == std::vector<std::int64_t>{0, 1})
            found = true;
    CHECK(found);
}

TEST_CASE("two-sided windows inherit invariance from bi orders only") {
    auto Z = GroupCtx::free_abelian(1);
    auto w = make_biregular(Z, 2);
    auto r = biregular_relation_from_bi_oracle(lex_order(Z), w);
    CHECK(check_strict_total_order(r).pass());
    CHECK(check_invariance(r).pass);

    auto F = GroupCtx::free_group(2);
    auto wf = make_biregular(F, 1);
    auto rf = biregular_relation_from_bi_oracle(magnus_order(F), wf);
    CHECK(check_strict_total_order(rf).pass());
    CHECK(check_invariance(rf).pass);

    auto K = GroupCtx::semidirect_zz(-1);
    auto wk = make_biregular(K, 2);
    auto rk = biregular_relation_from_bi_oracle(klein_right_oracle(K), wk);
    CHECK(check_strict_total_order(rk).pass());
    auto inv = check_invariance(rk);
    CHECK(!inv.pass);
    CHECK(!inv.violations.empty());
}

TEST_CASE("oracle relations on plain windows pass the axiom suite") {
    auto F = GroupCtx::free_group(2);
    auto r = window_relation(magnus_order(F), make_regular(F, 2));
    CHECK(check_strict_total_order(r).pass());
    CHECK(check_invariance(r).pass);

    auto Z2 = GroupCtx::free_abelian(2);
    auto r2 = window_relation(lex_order(Z2), make_regular(Z2, 2));
    CHECK(check_strict_total_order(r2).pass());
    CHECK(check_invariance(r2).pass);
}
