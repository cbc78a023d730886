#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "ordb/errors.hpp"
#include "ordb/gset.hpp"
#include "tables.hpp"

#include <numeric>

using namespace ordb;

namespace {

int point_of(const GSet& x, std::vector<std::int64_t> data) {
    for (int i = 0; i < x.size(); ++i)
        if (x.reps[static_cast<std::size_t>(i)].data == data) return i;
    REQUIRE(false);
    return -1;
}

int orbit_count(const GSet& x) {
    std::vector<int> comp(static_cast<std::size_t>(x.size()), -1);
    int n_orbits = 0;
    for (int start = 0; start < x.size(); ++start) {
        if (comp[static_cast<std::size_t>(start)] >= 0) continue;
        int id = n_orbits++;
        std::vector<int> stack{start};
        comp[static_cast<std::size_t>(start)] = id;
        while (!stack.empty()) {
            int p = stack.back();
            stack.pop_back();
            for (int y : x.step[static_cast<std::size_t>(p)]) {
                if (y != GSet::kOutOfWindow && comp[static_cast<std::size_t>(y)] < 0) {
                    comp[static_cast<std::size_t>(y)] = id;
                    stack.push_back(y);
                }
            }
        }
    }
    return n_orbits;
}

} // namespace

TEST_CASE("trivial G-set is a fixed point and is terminal") {
    auto ctx = GroupCtx::free_group(2);
    auto t = make_trivial(ctx);
    CHECK(t->size() == 1);
    CHECK(t->act(0, ctx->parse("a*b^-1")) == 0);
    CHECK(t->total());

    auto x = make_regular(GroupCtx::finite_table(symmetric_table(3), {2, 3}), 0);
    GSetMorphism to_point{x, make_trivial(x->group), std::vector<int>(6, 0)};
    CHECK(check_equivariance(to_point).pass);
}

TEST_CASE("regular action on a finite table is the full multiplication") {
    auto C2 = GroupCtx::finite_table(cyclic_table(2));
    auto x = make_regular(C2, 0);
    CHECK(x->size() == 2);
    CHECK(x->total());
    int zero = point_of(*x, {0}), one = point_of(*x, {1});
    CHECK(x->act(zero, GroupElement{{1}}) == one);
    CHECK(x->act(one, GroupElement{{1}}) == zero);
}

TEST_CASE("regular window truncates at the ball boundary") {
    auto Z = GroupCtx::free_abelian(1);
    auto x = make_regular(Z, 2);
    CHECK(x->size() == 5);
    CHECK(x->truncated);
    CHECK(x->act_letter(point_of(*x, {1}), 1) == point_of(*x, {2}));
    CHECK(x->act_letter(point_of(*x, {2}), 1) == GSet::kOutOfWindow);

    // sticky along words: a then a^-1 is lost once the walk leaves
    auto y = make_regular(Z, 1);
    std::vector<int> there_and_back{1, -1};
    CHECK(y->act_word(point_of(*y, {1}), there_and_back) == GSet::kOutOfWindow);

    auto F = GroupCtx::free_group(2);
    auto f = make_regular(F, 1);
    CHECK(f->act_letter(point_of(*f, {}), 1) == point_of(*f, {1}));
}

TEST_CASE("coset actions enumerate right cosets") {
    auto C4 = GroupCtx::finite_table(cyclic_table(4), {1}, {"g"});
    auto x = make_coset(C4, {GroupElement{{2}}});
    REQUIRE(x->size() == 2);
    CHECK(x->act_letter(0, 1) == 1);
    CHECK(x->act_letter(1, 1) == 0);
    CHECK(x->total());

    auto S3 = GroupCtx::finite_table(symmetric_table(3), {2, 3});
    auto y = make_coset(S3, {GroupElement{{2}}}); // subgroup of order 2
    CHECK(y->size() == 3);

    auto whole = make_coset(C4, {GroupElement{{1}}});
    CHECK(whole->size() == 1);
    CHECK(whole->act_letter(0, 1) == 0);

    CHECK_THROWS_AS(make_coset(C4, {GroupElement{{7}}}), InputError);
    CHECK_THROWS_AS(make_coset(GroupCtx::free_group(1), {}), InputError);
}

TEST_CASE("conjugation fixes everything in abelian groups") {
    auto Z2 = GroupCtx::free_abelian(2);
    auto x = make_conjugation(Z2, 2);
    for (int p = 0; p < x->size(); ++p)
        for (int letter : {1, -1, 2, -2}) CHECK(x->act_letter(p, letter) == p);
}

TEST_CASE("conjugation in the symmetric group matches the table") {
    auto S3 = GroupCtx::finite_table(symmetric_table(3), {2, 3});
    auto x = make_conjugation(S3, 0);
    // elements by lexicographic one-line index: 2 = (12), 5 = (13), 1 = (23)
    int swap01 = point_of(*x, {2});
    CHECK(x->act(swap01, GroupElement{{5}}) == point_of(*x, {1}));
    // identity is a global fixed point
    int e = point_of(*x, {0});
    for (int g = 0; g < 6; ++g) CHECK(x->act(e, GroupElement{{g}}) == e);
}

TEST_CASE("biregular action is one-sided on each factor") {
    auto F = GroupCtx::free_group(2);
    auto x = make_biregular(F, 2);
    CHECK(x->group->generator_count() == 4);

    int eps = point_of(*x, {});
    // eps * (a, b) = a^-1 b
    auto pair = x->group->parse("(a,b)");
    CHECK(x->act(eps, pair) == point_of(*x, {-1, 2}));
    // identity of the pair group fixes everything
    for (int p = 0; p < x->size(); ++p) CHECK(x->act(p, x->group->identity()) == p);

    auto C3 = GroupCtx::finite_table(cyclic_table(3), {1}, {"g"});
    auto y = make_biregular(C3, 0);
    CHECK(y->act(point_of(*y, {1}), y->group->parse("(1,2)")) == point_of(*y, {2}));
}

TEST_CASE("products act diagonally and fibre products filter pairs") {
    auto C2 = GroupCtx::finite_table(cyclic_table(2));
    auto x = make_regular(C2, 0);
    auto p = product(x, x);
    CHECK(p->size() == 4);
    CHECK(orbit_count(*p) == 2);
    // free: both orbits have size |C2|
    CHECK(p->total());

    // fibre product over the terminal object is the plain product
    auto t = make_trivial(C2);
    GSetMorphism t1{x, t, {0, 0}};
    auto fp = fibre_product(t1, t1);
    CHECK(fp->names == p->names);
    CHECK(fp->step == p->step);

    // fibre product of the identity with itself picks out the diagonal
    GSetMorphism idm{x, x, {0, 1}};
    auto diag = fibre_product(idm, idm);
    CHECK(diag->size() == x->size());

    auto Z = GroupCtx::free_abelian(1);
    CHECK_THROWS_AS(product(x, make_regular(Z, 1)), InputError);
}

TEST_CASE("images restrict the target action") {
    auto C4 = GroupCtx::finite_table(cyclic_table(4), {1}, {"g"});
    auto reg = make_regular(C4, 0);
    auto cos = make_coset(C4, {GroupElement{{2}}});

    // quotient map x -> Hx
    std::vector<int> to_coset;
    for (int i = 0; i < reg->size(); ++i) {
        auto rep = reg->reps[static_cast<std::size_t>(i)];
        to_coset.push_back(static_cast<int>(rep.data[0]) % 2 == 0 ? 0 : 1);
    }
    GSetMorphism q{reg, cos, to_coset};
    REQUIRE(check_equivariance(q).pass);
    auto im = image(q);
    CHECK(im->size() == cos->size());

    auto d = diagonal(reg);
    REQUIRE(check_equivariance(d).pass);
    auto imd = image(d);
    CHECK(imd->size() == reg->size());
    for (int i = 0; i < imd->size(); ++i) {
        auto n = imd->names[static_cast<std::size_t>(i)];
        auto comma = n.find(',');
        CHECK(n.substr(1, comma - 1) == n.substr(comma + 1, n.size() - comma - 2));
    }

    // non-equivariant maps are rejected
    GSetMorphism bad{reg, cos, {0, 0, 0, 0}};
    CHECK_THROWS_AS(image(bad), InputError);
}

TEST_CASE("action axiom checker accepts honest actions") {
    auto C3 = GroupCtx::finite_table(cyclic_table(3), {1}, {"g"});
    CHECK(check_action_axioms(*make_regular(C3, 0)).pass);
    CHECK(check_action_axioms(*make_regular(GroupCtx::free_abelian(1), 2)).pass);
    CHECK(check_action_axioms(*make_regular(GroupCtx::free_group(2), 2)).pass);
    CHECK(check_action_axioms(*make_conjugation(GroupCtx::semidirect_zz(-1), 2)).pass);
    CHECK(check_action_axioms(*make_biregular(GroupCtx::free_group(2), 1)).pass);
}

TEST_CASE("action axiom checker reports corrupted tables") {
    auto C3 = GroupCtx::finite_table(cyclic_table(3), {1}, {"g"});
    auto x = *make_regular(C3, 0);
    x.step[0][0] = 0; // 0*g should be 1
    auto report = check_action_axioms(x);
    CHECK(!report.pass);
    REQUIRE(!report.violations.empty());
    CHECK(report.violations.front().point >= 0);
}

TEST_CASE("equivariance checker flags broken maps") {
    auto C4 = GroupCtx::finite_table(cyclic_table(4), {1}, {"g"});
    auto reg = make_regular(C4, 0);
    GSetMorphism shuffled{reg, reg, {0, 2, 1, 3}};
    auto report = check_equivariance(shuffled);
    CHECK(!report.pass);
    CHECK(!report.violations.empty());

    // window inclusion into a larger window is equivariant
    auto Z = GroupCtx::free_abelian(1);
    auto small = make_regular(Z, 1), big = make_regular(Z, 2);
    std::vector<int> incl;
    for (int i = 0; i < small->size(); ++i)
        incl.push_back(point_of(*big, small->reps[static_cast<std::size_t>(i)].data));
    CHECK(check_equivariance({small, big, incl}).pass);

    GSetMorphism wrong_size{small, big, {0}};
    CHECK_THROWS_AS(check_equivariance(wrong_size), InputError);
}
