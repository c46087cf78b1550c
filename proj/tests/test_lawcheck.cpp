#include <doctest.h>

#include "eulerstack/lawcheck.hpp"

using namespace eulerstack;
using namespace eulerstack::lawcheck;

TEST_CASE("rng is deterministic") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(43);
    CHECK(Rng(42).next() != c.next());
    Rng d(1);
    for (int i = 0; i < 200; ++i) {
        std::int64_t v = d.range(-3, 3);
        CHECK(v >= -3);
        CHECK(v <= 3);
    }
}

TEST_CASE("generated morphisms are valid and within bounds") {
    Rng rng(61);
    for (int i = 0; i < 20; ++i) {
        RichStack target = random_rich_stack(rng, "t", 4, group_pool(), i % 2 == 0);
        MorphismOptions opts;
        opts.with_remainder = i % 2 == 0;
        GeneratedMorphism gen = random_rich_morphism(rng, target, "s", opts);
        CHECK(validate_morphism(gen.morphism).ok);
        CHECK(gen.source.stack->strata().size() <= 4);
        for (const auto& [id, rec] : gen.morphism.records()) {
            CHECK(rec.fiber_chi >= -3);
            CHECK(rec.fiber_chi <= 3);
            CHECK(rec.stab.is_rich());
        }
        for (const auto& s : gen.source.stack->strata())
            CHECK(s.stabilizer.finite.order() <= 96); // kernel (<=4) times subgroup (<=24)
    }
}

TEST_CASE("representable-only generation is representable") {
    Rng rng(67);
    for (int i = 0; i < 20; ++i) {
        RichStack target = random_rich_stack(rng, "t", 3, group_pool(), false);
        MorphismOptions opts;
        opts.representable_only = true;
        GeneratedMorphism gen = random_rich_morphism(rng, target, "s", opts);
        CHECK(gen.morphism.representable());
    }
}

TEST_CASE("every suite passes a short seeded run") {
    for (Suite suite : all_suites()) {
        SuiteResult result = run_suite(suite, 1, 20);
        CAPTURE(suite_name(suite));
        CHECK(result.failed == 0);
        CHECK(result.passed == 20);
    }
}

TEST_CASE("suite reports are reproducible strings") {
    std::vector<SuiteResult> a, b;
    for (Suite suite : all_suites()) {
        a.push_back(run_suite(suite, 42, 15));
        b.push_back(run_suite(suite, 42, 15));
    }
    CHECK(render_report(a) == render_report(b));
    CHECK(render_report(a).find("all suites passed") != std::string::npos);
}

TEST_CASE("stack functoriality runs see plenty of non-representable cases") {
    SuiteResult result = run_suite(Suite::StackFunctoriality, 42, 40);
    CHECK(result.failed == 0);
    CHECK(result.non_representable >= 20);
}

TEST_CASE("suite names round-trip") {
    for (Suite suite : all_suites()) {
        auto parsed = suite_by_name(suite_name(suite));
        REQUIRE(parsed.has_value());
        CHECK(*parsed == suite);
    }
    CHECK(!suite_by_name("bogus").has_value());
}
