#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "eulerstack/json_io.hpp"
#include "eulerstack/lawcheck.hpp"

using namespace eulerstack;

TEST_CASE("group descriptors round-trip") {
    lawcheck::Rng rng(43);
    for (int i = 0; i < 40; ++i) {
        GroupExpr g = lawcheck::random_group_expr(rng, true, true, 2);
        CHECK(group_from_json(group_to_json(g)) == g);
    }
    CHECK(group_from_json(Json::parse(R"({"kind":"torus","rank":0})")) ==
          GroupExpr::trivial());
    CHECK_THROWS_WITH_AS(group_from_json(Json::parse(R"({"kind":"galaxy"})")),
                         doctest::Contains("Parse"), Error);
    CHECK_THROWS_AS(group_from_json(Json::parse(R"({"kind":"torus"})")), Error);
}

TEST_CASE("stack and function descriptors round-trip") {
    lawcheck::Rng rng(47);
    for (int i = 0; i < 25; ++i) {
        bool remainder = rng.chance(1, 3);
        lawcheck::RichStack rs =
            lawcheck::random_rich_stack(rng, "s", 5, lawcheck::group_pool(), remainder);
        StackPtr back = stack_from_json(stack_to_json(*rs.stack));
        CHECK(*back == *rs.stack);

        Rational def = remainder && rng.chance(1, 2) ? Rational(rng.range(1, 3)) : Rational(0);
        ConstructibleFn f = lawcheck::random_fn(rng, rs.stack, false, def);
        CHECK(fn_from_json(fn_to_json(f)) == f);
    }
}

TEST_CASE("morphism descriptors round-trip, rich remainders included") {
    lawcheck::Rng rng(53);
    for (int i = 0; i < 25; ++i) {
        bool remainder = i % 2 == 0;
        lawcheck::RichStack target =
            lawcheck::random_rich_stack(rng, "t", 3, lawcheck::group_pool(), remainder);
        lawcheck::MorphismOptions opts;
        opts.with_remainder = remainder;
        lawcheck::GeneratedMorphism gen =
            lawcheck::random_rich_morphism(rng, target, "s", opts);
        StackMorphism back = morphism_from_json(morphism_to_json(gen.morphism));
        CHECK(back == gen.morphism);
    }

    // Lean data round-trips too.
    StackPtr src = make_stack({Stratum{"s", 2, GroupExpr::torus(1)}});
    StackPtr dst = make_stack({Stratum{"t", 1, GroupExpr::trivial()}});
    StackMorphism lean(src, dst, {{"s", MorphismRecord{"t", 2, StabData::lean(0, 5)}}});
    CHECK(morphism_from_json(morphism_to_json(lean)) == lean);
}

TEST_CASE("gset descriptors round-trip") {
    lawcheck::Rng rng(59);
    for (int i = 0; i < 15; ++i) {
        FiniteGroup g = lawcheck::random_pool_group(rng, lawcheck::small_group_pool());
        FiniteGSet gset = coset_action(g, subgroup_generated(g, {rng.index(g.order())}));
        CHECK(gset_from_json(gset_to_json(gset)) == gset);
    }
    CHECK_THROWS_WITH_AS(gset_from_json(Json::parse(R"({"group":{"kind":"torus","rank":1},
        "size":1,"action":[[0]]})")),
                         doctest::Contains("Parse"), Error);
}

TEST_CASE("rationals serialize as p/q strings") {
    StackPtr s = make_stack({Stratum{"s0", 1, GroupExpr::trivial()}});
    ConstructibleFn f(s, {{"s0", Rational(-3, 2)}}, Rational(0));
    Json j = fn_to_json(f);
    CHECK(j["values"]["s0"] == "-3/2");
    CHECK(j["default"] == "0");
    CHECK_THROWS_AS(
        fn_from_json(Json::parse(R"({"stack":{"strata":[]},"values":{},"default":"1/0"})")),
        Error);
}

TEST_CASE("path references resolve relative to the referencing file") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "eulerstack_json_test";
    fs::create_directories(dir);

    StackPtr stack = projective_space(1);
    {
        std::ofstream out(dir / "stack.json");
        out << stack_to_json(*stack).dump(2);
    }
    {
        std::ofstream out(dir / "fn.json");
        out << R"({"stack":"stack.json","values":{"cell0":"2"},"default":"0"})";
    }
    ConstructibleFn f = load_fn((dir / "fn.json").string());
    CHECK(*f.stack() == *stack);
    CHECK(f.value_on("cell0") == Rational(2));

    CHECK_THROWS_WITH_AS(load_fn((dir / "missing.json").string()),
                         doctest::Contains("Parse"), Error);
    {
        std::ofstream out(dir / "broken.json");
        out << "{ not json";
    }
    CHECK_THROWS_WITH_AS(load_stack((dir / "broken.json").string()),
                         doctest::Contains("Parse"), Error);

    fs::remove_all(dir);
}
