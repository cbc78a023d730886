#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ordb/errors.hpp"
#include "ordb/realization.hpp"
#include "tables.hpp"

#include <random>

using namespace ordb;

namespace {

GSetPtr points(int n) {
    auto g = std::make_shared<GSet>();
    g->group = GroupCtx::finite_table(cyclic_table(1));
    for (int i = 0; i < n; ++i) g->names.push_back("p" + std::to_string(i));
    g->step.assign(static_cast<std::size_t>(n), {});
    return g;
}

GSetPtr fixed_points(GroupCtxPtr ctx, int n) {
    auto g = std::make_shared<GSet>();
    g->group = ctx;
    for (int i = 0; i < n; ++i) {
        g->names.push_back("q" + std::to_string(i));
        g->step.push_back(std::vector<int>(2 * static_cast<std::size_t>(ctx->generator_count()),
                                           i));
    }
    return g;
}

Relation natural_order(GSetPtr base) {
    Relation r{base, {}};
    for (int i = 0; i < base->size(); ++i)
        for (int j = i + 1; j < base->size(); ++j) r.pairs.insert({i, j});
    return r;
}

bool dyadic(const Rational& q) {
    mpz_class den = q.get_den();
    return mpz_popcount(den.get_mpz_t()) == 1;
}

} // namespace

TEST_CASE("alternating enumeration of the integers reproduces itself") {
    auto Z = GroupCtx::free_abelian(1);
    auto window = make_regular(Z, 2); // carrier order 0, 1, -1, 2, -2
    auto emb = embed_in_rationals(window, {0, 1, 2, 3, 4},
                                  point_comparator(lex_order(Z), window));
    REQUIRE(emb.points.size() == 5);
    std::vector<Rational> expect = {Rational(0), Rational(1), Rational(-1), Rational(2),
                                    Rational(-2)};
    for (std::size_t i = 0; i < expect.size(); ++i) CHECK(emb.points[i].second == expect[i]);
    CHECK(emb.inf() == -2);
    CHECK(emb.sup() == 2);
}

TEST_CASE("interior points land on midpoints") {
    auto base = points(3);
    auto emb = embed_in_rationals(base, {0, 2, 1}, point_comparator(natural_order(base)));
    CHECK(emb.at(0) == 0);
    CHECK(emb.at(2) == 1);
    CHECK(emb.at(1) == Rational(1, 2));

    auto lone = embed_in_rationals(points(1), {0}, point_comparator(natural_order(points(1))));
    CHECK(lone.at(0) == 0);
    CHECK(lone.inf() == 0);
    CHECK(lone.sup() == 0);
}

TEST_CASE("random enumerations stay order-preserving, dyadic and reproducible") {
    std::mt19937 rng(20405u);
    for (int trial = 0; trial < 40; ++trial) {
        int n = 2 + static_cast<int>(rng() % 60);
        auto base = points(n);
        std::vector<int> rank(static_cast<std::size_t>(n));
        std::iota(rank.begin(), rank.end(), 0);
        std::shuffle(rank.begin(), rank.end(), rng);
        auto cmp = [&rank](int x, int y) {
            if (rank[static_cast<std::size_t>(x)] == rank[static_cast<std::size_t>(y)])
                return Cmp::Equal;
            return rank[static_cast<std::size_t>(x)] < rank[static_cast<std::size_t>(y)]
                       ? Cmp::Less
                       : Cmp::Greater;
        };
        std::vector<int> enumeration(static_cast<std::size_t>(n));
        std::iota(enumeration.begin(), enumeration.end(), 0);
        std::shuffle(enumeration.begin(), enumeration.end(), rng);

        auto emb = embed_in_rationals(base, enumeration, cmp);
        for (int x = 0; x < n; ++x) {
            CHECK(dyadic(emb.at(x)));
            for (int y = 0; y < n; ++y)
                if (x != y)
                    CHECK((cmp(x, y) == Cmp::Less) == (emb.at(x) < emb.at(y)));
        }
        auto again = embed_in_rationals(base, enumeration, cmp);
        CHECK(emb.points == again.points);
    }
}

TEST_CASE("bad enumerations are rejected") {
    auto base = points(3);
    auto cmp = point_comparator(natural_order(base));
    CHECK_THROWS_AS(embed_in_rationals(base, {0, 0, 1}, cmp), InputError);
    CHECK_THROWS_AS(embed_in_rationals(base, {0, 3}, cmp), InputError);
    CHECK_THROWS_AS(embed_in_rationals(nullptr, {0}, cmp), InputError);

    Relation partial{base, {{0, 1}}}; // 2 incomparable to both
    CHECK_THROWS_AS(embed_in_rationals(base, {0, 1, 2}, point_comparator(partial)),
                    InputError);
}

TEST_CASE("a translation realizes as a spliced staircase") {
    auto Z = GroupCtx::free_abelian(1);
    auto window = make_regular(Z, 2);
    auto emb = embed_in_rationals(window, {0, 1, 2, 3, 4},
                                  point_comparator(lex_order(Z), window));
    auto map = extend_action_to_line(emb, window, GroupElement{{1}});

    std::vector<Rational> bps = {Rational(-3), Rational(-2), Rational(-1), Rational(0),
                                 Rational(1),  Rational(3)};
    std::vector<Rational> vals = {Rational(-3), Rational(-1), Rational(0), Rational(1),
                                  Rational(2),  Rational(3)};
    CHECK(map.breakpoints == bps);
    CHECK(map.values == vals);

    CHECK(map(Rational(-2)) == -1);
    CHECK(map(Rational(0)) == 1);
    CHECK(map(Rational(-5, 2)) == -2); // halfway up the left splice
    CHECK(map(Rational(2)) == Rational(5, 2));
    CHECK(map(Rational(5)) == 5);   // identity outside the support
    CHECK(map(Rational(-3)) == -3); // identity from the boundary outward

    CHECK(extend_action_to_line(emb, window, Z->identity()).is_identity());
    auto fixed = fixed_points(GroupCtx::finite_table(cyclic_table(2)), 3);
    auto femb = embed_in_rationals(fixed, {0, 1, 2}, point_comparator(natural_order(fixed)));
    CHECK(extend_action_to_line(femb, fixed, GroupElement{{1}}).is_identity());
}

TEST_CASE("non-invariant heights cannot be realized") {
    auto Z = GroupCtx::free_abelian(1);
    auto window = make_regular(Z, 2);
    auto emb = embed_in_rationals(window, {0, 1, 2, 3, 4},
                                  point_comparator(lex_order(Z), window));
    std::swap(emb.points[0].second, emb.points[1].second); // heights of 0 and 1
    CHECK_THROWS_WITH_AS(extend_action_to_line(emb, window, GroupElement{{1}}),
                         doctest::Contains("cross"), InputError);
}

TEST_CASE("realized generators check out on the integers and the free group") {
    auto Z = GroupCtx::free_abelian(1);
    auto zwin = make_regular(Z, 2);
    auto zemb = embed_in_rationals(zwin, {0, 1, 2, 3, 4},
                                   point_comparator(lex_order(Z), zwin));
    std::vector<std::pair<GroupElement, PLHomeo>> zmaps;
    for (auto g : {GroupElement{{1}}, GroupElement{{-1}}})
        zmaps.push_back({g, extend_action_to_line(zemb, zwin, g)});
    auto zreport = check_realization(zemb, zwin, zmaps);
    CHECK(zreport.pass());
    CHECK(zreport.violations.empty());

    auto F2 = GroupCtx::free_group(2);
    auto fwin = make_regular(F2, 2);
    std::vector<int> order(static_cast<std::size_t>(fwin->size()));
    std::iota(order.begin(), order.end(), 0);
    auto femb = embed_in_rationals(fwin, order, point_comparator(magnus_order(F2), fwin));
    std::vector<std::pair<GroupElement, PLHomeo>> fmaps;
    for (auto g : {GroupElement{{1}}, GroupElement{{2}}})
        fmaps.push_back({g, extend_action_to_line(femb, fwin, g)});
    auto freport = check_realization(femb, fwin, fmaps);
    CHECK(freport.pass());
    CHECK(freport.violations.empty());
}

TEST_CASE("corrupted data is pinned to a named point") {
    auto Z = GroupCtx::free_abelian(1);
    auto window = make_regular(Z, 2);
    auto emb = embed_in_rationals(window, {0, 1, 2, 3, 4},
                                  point_comparator(lex_order(Z), window));
    std::vector<std::pair<GroupElement, PLHomeo>> maps = {
        {GroupElement{{1}}, extend_action_to_line(emb, window, GroupElement{{1}})}};

    auto corrupted = emb;
    corrupted.points[1].second = Rational(7, 2); // height of the point "a"
    auto report = check_realization(corrupted, window, maps);
    CHECK(!report.equivariant);
    REQUIRE(!report.violations.empty());
    bool named = false;
    for (const auto& v : report.violations) named = named || v.find("a") != std::string::npos;
    CHECK(named);

    auto tampered = maps;
    tampered[0].second.values[2] = tampered[0].second.values[1]; // flatten one segment
    auto flat = check_realization(emb, window, tampered);
    CHECK(!flat.monotonic);
    CHECK(!flat.pass());
}

TEST_CASE("plot samples list the breakpoint graph") {
    auto Z = GroupCtx::free_abelian(1);
    auto window = make_regular(Z, 2);
    auto emb = embed_in_rationals(window, {0, 1, 2, 3, 4},
                                  point_comparator(lex_order(Z), window));
    auto map = extend_action_to_line(emb, window, GroupElement{{1}});
    auto csv = pl_csv(map);
    CHECK(csv.find("x,value\n") == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 7); // header + 6 breakpoints
    CHECK(csv.find("-2/1,-1/1") != std::string::npos);
    CHECK(pl_csv(map) == csv);
}
