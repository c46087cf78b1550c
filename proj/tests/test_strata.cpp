#include <doctest.h>

#include "eulerstack/lawcheck.hpp"
#include "eulerstack/strata.hpp"

using namespace eulerstack;

namespace {

StackPtr two_strata_stack() {
    // chi values 1 and -2; the -2 stands in for a genus-2 curve stratum.
    return make_stack({Stratum{"s0", 1, GroupExpr::trivial()},
                       Stratum{"s1", -2, GroupExpr::trivial()}});
}

StackPtr bz2() {
    return point_stack(GroupExpr::finite_of(cyclic_group(2)));
}

} // namespace

TEST_CASE("built-in catalogue stacks") {
    for (int m = 0; m <= 5; ++m) {
        CHECK(chi_naive(full_set(affine_space(m))) == 1);
        CHECK(chi_naive(full_set(projective_space(m))) == m + 1);
    }
    CHECK(chi_naive(full_set(torus_variety())) == 0);
}

TEST_CASE("stacks validate stratum ids") {
    CHECK_THROWS_AS(make_stack({Stratum{"a", 1, GroupExpr::trivial()},
                                Stratum{"a", 2, GroupExpr::trivial()}}),
                    Error);
    StackPtr s = two_strata_stack();
    CHECK_THROWS_AS(ConstructibleSet(s, {"nope"}), Error);
    CHECK_THROWS_AS(ConstructibleFn(s, {{"nope", Rational(1)}}), Error);
}

TEST_CASE("set algebra on strata") {
    StackPtr s = make_stack({Stratum{"s0", 1, GroupExpr::trivial()},
                             Stratum{"s1", 1, GroupExpr::trivial()},
                             Stratum{"s2", 1, GroupExpr::trivial()}});
    ConstructibleSet a(s, {"s0", "s1"});
    ConstructibleSet b(s, {"s1", "s2"});
    ConstructibleSet empty(s, {});
    CHECK(set_ops(SetOp::Union, a, empty) == a);
    CHECK(set_ops(SetOp::Difference, a, a) == empty);
    CHECK(set_ops(SetOp::Intersect, a, b) == ConstructibleSet(s, {"s1"}));

    StackPtr other = two_strata_stack();
    CHECK_THROWS_WITH_AS(set_ops(SetOp::Union, a, full_set(other)),
                         doctest::Contains("StackMismatch"), Error);
}

TEST_CASE("pointwise function algebra") {
    StackPtr s = two_strata_stack();
    ConstructibleFn f(s, {{"s0", Rational(2)}});
    ConstructibleFn zero = ConstructibleFn::constant(s, Rational(0));
    CHECK(cf_pointwise(PointwiseOp::Mul, f, zero) == zero);

    // The ideal property: constructible times locally constructible stays
    // constructible, i.e. the default slot stays zero.
    ConstructibleFn g(s, {{"s0", Rational(3)}}, Rational(5));
    ConstructibleFn prod = cf_pointwise(PointwiseOp::Mul, f, g);
    CHECK(prod.default_value() == Rational(0));
    CHECK(prod.value_on("s0") == Rational(6));
    CHECK(prod.value_on("s1") == Rational(0));

    ConstructibleFn h1(s, {{"s0", Rational(1, 2)}});
    ConstructibleFn h2(s, {{"s0", Rational(1, 3)}});
    CHECK(cf_pointwise(PointwiseOp::Add, h1, h2).value_on("s0") == Rational(5, 6));
    CHECK(cf_pointwise(PointwiseOp::Sub, h1, h2).value_on("s0") == Rational(1, 6));
    CHECK(cf_scale(Rational(-2), h1).value_on("s0") == Rational(-1));

    StackPtr other = bz2();
    CHECK_THROWS_WITH_AS(
        cf_pointwise(PointwiseOp::Add, f, ConstructibleFn::constant(other, Rational(1))),
        doctest::Contains("StackMismatch"), Error);
}

TEST_CASE("ideal property on random functions") {
    lawcheck::Rng rng(31);
    for (int i = 0; i < 30; ++i) {
        lawcheck::RichStack rs = lawcheck::random_rich_stack(rng, "s", 5, lawcheck::group_pool(), false);
        ConstructibleFn f = lawcheck::random_fn(rng, rs.stack, false, Rational(0));
        ConstructibleFn g = lawcheck::random_fn(rng, rs.stack, false,
                                                Rational(rng.range(-3, 3)));
        CHECK(cf_pointwise(PointwiseOp::Mul, f, g).default_value() == Rational(0));
    }
}

TEST_CASE("naive Euler characteristics") {
    StackPtr s = two_strata_stack();
    CHECK(chi_naive(ConstructibleSet(s, {})) == 0);
    CHECK(chi_naive(full_set(s)) == -1);

    ConstructibleFn f(s, {{"s0", Rational(2)}, {"s1", Rational(3)}});
    CHECK(chi_naive_weighted(f) == Rational(-4)); // 2*1 + 3*(-2)
    CHECK(chi_naive_weighted(ConstructibleFn::constant(s, Rational(0))) == Rational(0));

    // The indicator of a set integrates to the set's chi.
    ConstructibleSet c(s, {"s1"});
    CHECK(chi_naive_weighted(ConstructibleFn::indicator(c)) == Rational(chi_naive(c)));
}

TEST_CASE("nonzero default on a remainder stack is not measurable") {
    StackPtr s = make_stack({Stratum{"s0", 1, GroupExpr::trivial()}}, true);
    ConstructibleFn lcf(s, {}, Rational(1));
    CHECK(!lcf.constructible());
    CHECK_THROWS_WITH_AS(chi_naive_weighted(lcf), doctest::Contains("NotConstructible"),
                         Error);
    CHECK_THROWS_AS(chi_weighted(lcf, WeightFunction::naive()), Error);

    // With no remainder the default only fills listed strata: measurable.
    StackPtr finite = two_strata_stack();
    ConstructibleFn filled(finite, {}, Rational(3));
    CHECK(chi_naive_weighted(filled) == Rational(-3)); // 3*1 + 3*(-2)
}

TEST_CASE("weighted Euler characteristics on classifying stacks") {
    StackPtr b = bz2();
    ConstructibleFn one = ConstructibleFn::constant(b, Rational(1));
    CHECK(chi_weighted(one, WeightFunction::inv_e()) == Rational(1, 2));
    CHECK(chi_weighted(one, WeightFunction::o()) == Rational(2));
    CHECK(chi_weighted(one, WeightFunction::naive()) == Rational(1));
    CHECK(chi_weighted(one, WeightFunction::e()) == Rational(2));

    StackPtr bgm = point_stack(GroupExpr::torus(1));
    ConstructibleFn one_t = ConstructibleFn::constant(bgm, Rational(1));
    CHECK_THROWS_WITH_AS(chi_weighted(one_t, WeightFunction::inv_e()),
                         doctest::Contains("UndefinedWeight"), Error);

    // Outside the support an infinite weight is harmless.
    StackPtr mixed = make_stack({Stratum{"fin", 1, GroupExpr::finite_of(cyclic_group(2))},
                                 Stratum{"tor", 2, GroupExpr::torus(1)}});
    ConstructibleFn supported(mixed, {{"fin", Rational(4)}});
    CHECK(chi_weighted(supported, WeightFunction::inv_e()) == Rational(2));
}

TEST_CASE("chi_w additivity over random partitions") {
    lawcheck::Rng rng(7);
    for (const WeightFunction& w :
         {WeightFunction::naive(), WeightFunction::e(), WeightFunction::inv_e(),
          WeightFunction::o()}) {
        for (int i = 0; i < 25; ++i) {
            lawcheck::RichStack rs =
                lawcheck::random_rich_stack(rng, "s", 6, lawcheck::group_pool(), false);
            std::set<std::string> part1, part2, part3;
            for (const auto& s : rs.stack->strata()) {
                switch (rng.index(3)) {
                    case 0: part1.insert(s.id); break;
                    case 1: part2.insert(s.id); break;
                    default: part3.insert(s.id); break;
                }
            }
            Rational whole = chi_weighted_set(full_set(rs.stack), w);
            Rational sum = chi_weighted_set(ConstructibleSet(rs.stack, part1), w) +
                           chi_weighted_set(ConstructibleSet(rs.stack, part2), w) +
                           chi_weighted_set(ConstructibleSet(rs.stack, part3), w);
            CHECK(whole == sum);
        }
    }
}

TEST_CASE("chi_w multiplicativity over product stacks") {
    lawcheck::Rng rng(8);
    for (const WeightFunction& w :
         {WeightFunction::naive(), WeightFunction::e(), WeightFunction::inv_e(),
          WeightFunction::o()}) {
        for (int i = 0; i < 25; ++i) {
            lawcheck::RichStack a = lawcheck::random_rich_stack(rng, "a", 4, lawcheck::group_pool(),
                                                      false);
            lawcheck::RichStack b = lawcheck::random_rich_stack(rng, "b", 4, lawcheck::group_pool(),
                                                      false);
            StackPtr prod = product_stack(a.stack, b.stack);
            CHECK(chi_weighted_set(full_set(prod), w) ==
                  chi_weighted_set(full_set(a.stack), w) *
                      chi_weighted_set(full_set(b.stack), w));
        }
    }
}

TEST_CASE("chi_naive_weighted equals the level-set regrouping") {
    // Independent route: sum over nonzero values c of c * chi(f^{-1}(c)).
    lawcheck::Rng rng(12);
    for (int i = 0; i < 40; ++i) {
        lawcheck::RichStack rs =
            lawcheck::random_rich_stack(rng, "s", 6, lawcheck::group_pool(), false);
        ConstructibleFn f = lawcheck::random_fn(rng, rs.stack, false, Rational(0));
        std::map<std::pair<std::int64_t, std::int64_t>, std::int64_t> chi_by_value;
        for (const auto& s : rs.stack->strata()) {
            Rational v = f.value_on(s.id);
            if (!v.is_zero()) chi_by_value[{v.num(), v.den()}] += s.coarse_chi;
        }
        Rational regrouped(0);
        for (const auto& [value, chi] : chi_by_value)
            regrouped += Rational(value.first, value.second) * Rational(chi);
        CHECK(chi_naive_weighted(f) == regrouped);
    }
}

TEST_CASE("chi_naive_weighted is linear") {
    lawcheck::Rng rng(9);
    for (int i = 0; i < 40; ++i) {
        lawcheck::RichStack rs = lawcheck::random_rich_stack(rng, "s", 6, lawcheck::group_pool(), false);
        ConstructibleFn f = lawcheck::random_fn(rng, rs.stack, false, Rational(0));
        ConstructibleFn g = lawcheck::random_fn(rng, rs.stack, false, Rational(0));
        Rational c(rng.range(-4, 4), rng.range(1, 3));
        ConstructibleFn combo =
            cf_pointwise(PointwiseOp::Add, cf_scale(c, f), g);
        CHECK(chi_naive_weighted(combo) ==
              c * chi_naive_weighted(f) + chi_naive_weighted(g));
    }
}

TEST_CASE("functions normalize stored values against the default") {
    StackPtr s = two_strata_stack();
    ConstructibleFn f(s, {{"s0", Rational(5)}, {"s1", Rational(5)}}, Rational(5));
    CHECK(f.values().empty());
    ConstructibleFn g(s, {{"s0", Rational(5)}}, Rational(5));
    CHECK(f == g);
    CHECK(ConstructibleFn(s, {{"s0", Rational(7, 2)}}).integer_valued() == false);
    CHECK(ConstructibleFn(s, {{"s0", Rational(7)}}).integer_valued() == true);
}
