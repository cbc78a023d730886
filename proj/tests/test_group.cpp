#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ordb/errors.hpp"
#include "ordb/group.hpp"
#include "tables.hpp"

#include <unordered_map>

using namespace ordb;

TEST_CASE("free group words reduce and invert") {
    auto F = GroupCtx::free_group(2);
    auto a = F->generator(0), b = F->generator(1);
    CHECK(F->op(a, F->inverse(a)) == F->identity());
    auto ab = F->op(a, b);
    CHECK(F->inverse(ab) == F->op(F->inverse(b), F->inverse(a)));
    CHECK(F->length(ab) == 2);
    CHECK(F->to_string(F->op(ab, F->inverse(b))) == "a");
    CHECK(F->to_string(F->identity()) == "e");
}

TEST_CASE("free group ball sizes match the closed form") {
    auto F = GroupCtx::free_group(2);
    CHECK(F->ball(0).size() == 1);
    CHECK(F->ball(1).size() == 5);
    CHECK(F->ball(2).size() == 17);
    // |B(r)| = 1 + 2*rank*(3^r - 1)/2 at rank 2
    CHECK(F->ball(3).size() == 53);

    auto ball = F->ball(2);
    for (std::size_t i = 1; i < ball.size(); ++i) CHECK(F->less(ball[i - 1], ball[i]));
}

TEST_CASE("canonical order puts shorter words first, positive before negative") {
    auto F = GroupCtx::free_group(2);
    auto ball = F->ball(1);
    REQUIRE(ball.size() == 5);
    CHECK(F->to_string(ball[0]) == "e");
    CHECK(F->to_string(ball[1]) == "a");
    CHECK(F->to_string(ball[2]) == "a^-1");
    CHECK(F->to_string(ball[3]) == "b");
    CHECK(F->to_string(ball[4]) == "b^-1");
}

TEST_CASE("free abelian arithmetic is componentwise") {
    auto Z2 = GroupCtx::free_abelian(2);
    auto x = Z2->generator(0), y = Z2->generator(1);
    CHECK(Z2->op(x, y) == Z2->op(y, x));
    CHECK(Z2->length(Z2->op(x, Z2->inverse(y))) == 2);
    CHECK(Z2->ball(1).size() == 5);
    CHECK(Z2->ball(2).size() == 13); // 2r^2 + 2r + 1
    CHECK(Z2->ball(3).size() == 25);
    CHECK(Z2->parse("a^3*b^-2").data == std::vector<std::int64_t>{3, -2});
}

TEST_CASE("twisted semidirect product is the Klein bottle relation") {
    auto K = GroupCtx::semidirect_zz(-1);
    auto a = K->generator(0), b = K->generator(1);
    auto conj = K->op(K->op(K->inverse(b), a), b);
    CHECK(conj == K->inverse(a));

    auto U = GroupCtx::semidirect_zz(1);
    auto ua = U->generator(0), ub = U->generator(1);
    CHECK(U->op(U->op(U->inverse(ub), ua), ub) == ua);

    // normal form arithmetic: (a^m b^n)(a^p b^q) = a^(m + p*(-1)^n) b^(n+q)
    auto g = K->parse("a^2*b");
    auto h = K->parse("a^3*b^2");
    CHECK(K->to_string(K->op(g, h)) == "a^-1*b^3");
    CHECK(K->op(g, K->inverse(g)) == K->identity());
}

TEST_CASE("semidirect word lengths agree with breadth-first search") {
    auto K = GroupCtx::semidirect_zz(-1);
    // independent distance oracle: expand by generator steps only
    std::unordered_map<GroupElement, int, GroupElementHash> dist;
    std::vector<GroupElement> frontier{K->identity()};
    dist[K->identity()] = 0;
    for (int d = 0; d < 4; ++d) {
        std::vector<GroupElement> next;
        for (const auto& g : frontier) {
            for (int i = 0; i < 2; ++i) {
                for (const auto& s : {K->generator(i), K->inverse(K->generator(i))}) {
                    auto h = K->op(g, s);
                    if (dist.emplace(h, d + 1).second) next.push_back(h);
                }
            }
        }
        frontier = std::move(next);
    }
    for (const auto& [g, d] : dist) CHECK(K->length(g) == d);
    CHECK(K->ball(4).size() == dist.size());
}

TEST_CASE("finite table backend derives identity, inverses and distances") {
    auto C4 = GroupCtx::finite_table(cyclic_table(4), {1}, {"g"});
    CHECK(C4->is_finite());
    CHECK(C4->identity().data == std::vector<std::int64_t>{0});
    CHECK(C4->inverse(GroupElement{{1}}).data == std::vector<std::int64_t>{3});
    CHECK(C4->length(GroupElement{{2}}) == 2);
    CHECK(C4->length(GroupElement{{3}}) == 1);
    CHECK(C4->ball(1).size() == 3);
    CHECK(C4->ball(2).size() == 4);
    CHECK(C4->to_string(GroupElement{{2}}) == "2");
    CHECK(C4->parse("g^2").data == std::vector<std::int64_t>{2});
}

TEST_CASE("symmetric group table composes permutations left to right") {
    auto perms = symmetric_permutations(3);
    auto table = symmetric_table(3);
    auto idx = [&](const std::vector<int>& p) {
        return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
    };
    int g = idx({1, 0, 2}); // swap 0,1
    int h = idx({2, 1, 0}); // swap 0,2
    CHECK(table[g][h] == idx({1, 2, 0})); // x -> h(g(x))
    auto S3 = GroupCtx::finite_table(table, {g, h});
    CHECK(!GroupCtx::free_group(1)->is_finite());
    for (int e = 0; e < 6; ++e)
        CHECK(S3->length(GroupElement{{e}}) ==
              static_cast<std::int64_t>(S3->letters(GroupElement{{e}}).size()));
}

TEST_CASE("quaternion table is a valid group of order 8") {
    auto Q8 = GroupCtx::finite_table(quaternion8_table(), {2, 4}); // i, j
    CHECK(Q8->inverse(GroupElement{{2}}).data == std::vector<std::int64_t>{3});
    // i*j = k
    CHECK(Q8->op(GroupElement{{2}}, GroupElement{{4}}).data == std::vector<std::int64_t>{6});
    // j*i = -k
    CHECK(Q8->op(GroupElement{{4}}, GroupElement{{2}}).data == std::vector<std::int64_t>{7});
    CHECK(Q8->ball(10).size() == 8);
}

TEST_CASE("invalid tables are rejected") {
    CHECK_THROWS_AS(GroupCtx::finite_table({{0, 1}, {1, 1}}), InputError);
    // associativity failure on a row/column-permutation square
    std::vector<std::vector<int>> latin = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    CHECK_THROWS_AS(GroupCtx::finite_table(latin), InputError);
    // {0,2} is a proper subgroup of C4
    CHECK_THROWS_AS(GroupCtx::finite_table(cyclic_table(4), {2}), InputError);
}

TEST_CASE("direct product works componentwise and adds lengths") {
    auto F = GroupCtx::free_group(2);
    auto Z = GroupCtx::free_abelian(1, {"z"});
    auto P = GroupCtx::direct_product(F, Z);
    CHECK(P->generator_count() == 3);
    CHECK(P->generator_names()[2] == "(e,z)");

    auto g = P->op(P->generator(0), P->op(P->generator(1), P->generator(2)));
    CHECK(P->length(g) == 3);
    CHECK(P->to_string(g) == "(a*b,z)");
    CHECK(P->parse("(a*b,z)") == g);
    CHECK(P->letters(g) == std::vector<int>{1, 2, 3});

    CHECK(P->ball(1).size() == 7); // 5 + 3 - 1
    auto FF = GroupCtx::direct_product(F, GroupCtx::free_group(2));
    CHECK(FF->ball(1).size() == 9);
    CHECK(!P->is_finite());
    auto C2 = GroupCtx::finite_table(cyclic_table(2));
    CHECK(GroupCtx::direct_product(C2, C2)->is_finite());
}

TEST_CASE("letters and from_letters are inverse on balls") {
    for (auto ctx : {GroupCtx::free_group(2), GroupCtx::semidirect_zz(-1),
                     GroupCtx::free_abelian(2)}) {
        for (const auto& g : ctx->ball(3)) {
            auto word = ctx->letters(g);
            CHECK(static_cast<std::int64_t>(word.size()) == ctx->length(g));
            CHECK(ctx->from_letters(word) == g);
        }
    }
}

TEST_CASE("parse round-trips to_string on balls") {
    auto P = GroupCtx::direct_product(GroupCtx::free_group(2), GroupCtx::free_abelian(1));
    for (auto ctx : {GroupCtx::free_group(2), GroupCtx::semidirect_zz(-1), P}) {
        for (const auto& g : ctx->ball(3)) CHECK(ctx->parse(ctx->to_string(g)) == g);
    }
}

TEST_CASE("malformed elements and inputs are rejected") {
    auto F = GroupCtx::free_group(2);
    CHECK_THROWS_AS(F->validate(GroupElement{{1, -1}}), InputError);
    CHECK_THROWS_AS(F->validate(GroupElement{{3}}), InputError);
    CHECK_THROWS_AS(F->parse("c"), InputError);
    CHECK_THROWS_AS(F->parse("a^"), InputError);
    auto Z2 = GroupCtx::free_abelian(2);
    CHECK_THROWS_AS(Z2->validate(GroupElement{{1}}), InputError);
    CHECK_THROWS_AS(GroupCtx::free_group(0), InputError);
    CHECK_THROWS_AS(GroupCtx::semidirect_zz(2), InputError);
    CHECK_THROWS_AS(GroupCtx::free_group(2, {"a", "a"}), InputError);
    CHECK_THROWS_AS(GroupCtx::free_group(1, {"e"}), InputError);
}

TEST_CASE("ball enumeration respects the cap") {
    auto F = GroupCtx::free_group(2);
    CHECK_THROWS_AS(F->ball(8, 100), ResourceLimitError);
    CHECK(F->ball(2, 17).size() == 17);
}

TEST_CASE("same_as distinguishes contexts structurally") {
    auto F2 = GroupCtx::free_group(2);
    CHECK(F2->same_as(*GroupCtx::free_group(2)));
    CHECK(!F2->same_as(*GroupCtx::free_group(3)));
    CHECK(!F2->same_as(*GroupCtx::free_abelian(2)));
    CHECK(!GroupCtx::semidirect_zz(-1)->same_as(*GroupCtx::semidirect_zz(1)));
    auto P = GroupCtx::direct_product(F2, F2);
    CHECK(P->same_as(*GroupCtx::direct_product(GroupCtx::free_group(2), GroupCtx::free_group(2))));
}
