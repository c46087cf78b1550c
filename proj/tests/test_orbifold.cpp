#include <doctest.h>

#include <algorithm>

#include "eulerstack/lawcheck.hpp"
#include "eulerstack/orbifold.hpp"

using namespace eulerstack;

namespace {

// S_3 acting on {0, 1, 2} by the permutations themselves, in the same
// lexicographic order symmetric_group(3) uses.
FiniteGSet s3_natural() {
    FiniteGroup s3 = symmetric_group(3);
    std::vector<std::vector<int>> action;
    std::vector<int> p{0, 1, 2};
    do {
        action.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return FiniteGSet(s3, 3, std::move(action));
}

} // namespace

TEST_CASE("action axioms are checked on construction") {
    FiniteGroup z2 = cyclic_group(2);
    CHECK_THROWS_WITH_AS(FiniteGSet(z2, 2, {{1, 0}, {0, 1}}),
                         doctest::Contains("NotAnAction"), Error); // identity moves points
    CHECK_THROWS_WITH_AS(FiniteGSet(z2, 2, {{0, 1}}), doctest::Contains("NotAnAction"),
                         Error); // wrong shape
    CHECK_THROWS_AS(FiniteGSet(z2, 2, {{0, 1}, {0, 0}}), Error); // not a permutation action
    CHECK_THROWS_AS(FiniteGSet(z2, 2, {{0, 1}, {0, 2}}), Error); // out of range

    FiniteGSet swap(z2, 2, {{0, 1}, {1, 0}});
    CHECK(swap.act(1, 0) == 1);
}

TEST_CASE("stringy Euler characteristic fixtures") {
    // Trivial group on n points: n.
    for (int n : {1, 3, 7})
        CHECK(stringy_euler(trivial_action(trivial_group(), n)) == Rational(n));

    // Z/2 fixing a point: 4 commuting pairs, all fix it; 4/2 = 2.
    CHECK(stringy_euler(trivial_action(cyclic_group(2), 1)) == Rational(2));

    // S_3 on {1,2,3}: 12/6 = 2.
    CHECK(stringy_euler(s3_natural()) == Rational(2));

    // (Z/2)^2 on a point: 16 commuting pairs / 4 = 4.
    FiniteGroup klein = direct_product(cyclic_group(2), cyclic_group(2));
    CHECK(stringy_euler(trivial_action(klein, 1)) == Rational(4));
}

TEST_CASE("quotient stacks collect orbits and stabilizers") {
    StackPtr q0 = quotient_stack(trivial_action(trivial_group(), 3));
    CHECK(q0->strata().size() == 3);
    for (const auto& s : q0->strata()) {
        CHECK(s.coarse_chi == 1);
        CHECK(s.stabilizer.finite.order() == 1);
    }

    StackPtr q1 = quotient_stack(s3_natural());
    REQUIRE(q1->strata().size() == 1);
    CHECK(q1->strata()[0].stabilizer.finite.order() == 2);

    StackPtr q2 = quotient_stack(trivial_action(cyclic_group(2), 1));
    REQUIRE(q2->strata().size() == 1);
    CHECK(q2->strata()[0].stabilizer.finite.order() == 2);

    // Coset actions are transitive with the expected stabilizer index.
    FiniteGroup s3 = symmetric_group(3);
    int transposition = -1;
    for (int x = 0; x < s3.order(); ++x)
        if (x != s3.identity && s3.mul(x, x) == s3.identity) { transposition = x; break; }
    FiniteGSet cosets = coset_action(s3, subgroup_generated(s3, {transposition}));
    CHECK(cosets.set_size() == 3);
    StackPtr q3 = quotient_stack(cosets);
    REQUIRE(q3->strata().size() == 1);
    CHECK(q3->strata()[0].stabilizer.finite.order() == 2);
}

TEST_CASE("dhvw identity fixtures") {
    DhvwReport r1 = check_dhvw(s3_natural());
    CHECK(r1.ok);
    CHECK(r1.commuting_pair_side == Rational(2));

    FiniteGroup klein = direct_product(cyclic_group(2), cyclic_group(2));
    DhvwReport r2 = check_dhvw(trivial_action(klein, 1));
    CHECK(r2.ok);
    CHECK(r2.commuting_pair_side == Rational(4));

    for (int n : {1, 4, 9}) {
        DhvwReport r = check_dhvw(trivial_action(trivial_group(), n));
        CHECK(r.ok);
        CHECK(r.commuting_pair_side == Rational(n));
    }
}

TEST_CASE("stringy is additive over disjoint unions and multiplicative over products") {
    lawcheck::Rng rng(37);
    for (int i = 0; i < 25; ++i) {
        FiniteGroup g = lawcheck::random_pool_group(rng, lawcheck::small_group_pool());
        FiniteGSet a = coset_action(g, subgroup_generated(g, {rng.index(g.order())}));
        FiniteGSet b = trivial_action(g, (int)rng.range(1, 3));
        CHECK(stringy_euler(gset_disjoint_union(a, b)) ==
              stringy_euler(a) + stringy_euler(b));

        FiniteGroup h = lawcheck::random_pool_group(rng, lawcheck::small_group_pool());
        FiniteGSet c = coset_action(h, subgroup_generated(h, {rng.index(h.order())}));
        CHECK(stringy_euler(gset_product(a, c)) == stringy_euler(a) * stringy_euler(c));
    }

    FiniteGroup z2 = cyclic_group(2);
    CHECK_THROWS_WITH_AS(
        gset_disjoint_union(trivial_action(z2, 1), trivial_action(cyclic_group(3), 1)),
        doctest::Contains("StackMismatch"), Error);
}

TEST_CASE("dhvw identity on random actions") {
    lawcheck::Rng rng(41);
    for (int i = 0; i < 40; ++i) {
        FiniteGroup g = lawcheck::random_pool_group(rng, lawcheck::group_pool());
        FiniteGSet gset = coset_action(g, subgroup_generated(g, {rng.index(g.order())}));
        if (rng.chance(1, 2))
            gset = gset_disjoint_union(gset, trivial_action(g, (int)rng.range(1, 2)));
        DhvwReport report = check_dhvw(gset);
        CHECK(report.ok);
        CHECK(report.commuting_pair_side.is_integer());
    }
}
