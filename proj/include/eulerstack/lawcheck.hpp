#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eulerstack/json_io.hpp"

namespace eulerstack::lawcheck {

// splitmix64. Self-contained so seeded runs are identical on every
// platform and across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform-ish over [0, n); n is tiny here so modulo bias is irrelevant.
    int index(int n) { return (int)(next() % (std::uint64_t)n); }

    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + (std::int64_t)(next() % (std::uint64_t)(hi - lo + 1));
    }

    bool chance(int num, int den) { return index(den) < num; }

private:
    std::uint64_t state_;
};

// Catalogue groups the generators draw from.
const std::vector<FiniteGroup>& group_pool();       // orders up to 24
const std::vector<FiniteGroup>& small_group_pool(); // orders up to 16

FiniteGroup random_pool_group(Rng& rng, const std::vector<FiniteGroup>& pool);
GroupExpr random_group_expr(Rng& rng, bool allow_gl, bool allow_torus, int depth);

// A stack whose strata all carry finite stabilizers, plus the group living
// on the remainder when there is one (the stack itself does not store it).
struct RichStack {
    StackPtr stack;
    FiniteGroup remainder_group;
};

RichStack random_rich_stack(Rng& rng, const std::string& prefix, int max_strata,
                            const std::vector<FiniteGroup>& pool, bool with_remainder);

struct MorphismOptions {
    bool representable_only = false; // only injective stabilizer homs
    bool force_kernels = false;      // every hom has kernel of order >= 2
    bool with_remainder = false;     // target must have a remainder
    int max_strata = 4;
};

// An equifibered rich morphism onto the given target, generating its source
// stack along the way; fiber chi values lie in [-3, 3].
struct GeneratedMorphism {
    RichStack source;
    StackMorphism morphism;
};

GeneratedMorphism random_rich_morphism(Rng& rng, const RichStack& target,
                                       const std::string& prefix,
                                       const MorphismOptions& options);

ConstructibleFn random_fn(Rng& rng, const StackPtr& stack, bool integers_only,
                          const Rational& default_value);

enum class Suite {
    Weights,
    Conservation,
    Functoriality,
    StackFunctoriality,
    InvEAgreement,
    Cartesian,
    Dhvw,
    Integrality,
    LcfFunctoriality,
};

const char* suite_name(Suite suite);
std::optional<Suite> suite_by_name(const std::string& name);
const std::vector<Suite>& all_suites();

struct SuiteResult {
    Suite suite;
    std::uint64_t seed = 0;
    int cases = 0;
    int passed = 0;
    int failed = 0;
    int non_representable = 0;       // populated by stack-functoriality
    int first_failure_case = -1;
    std::string first_counterexample; // serialized JSON of the failing inputs
};

SuiteResult run_suite(Suite suite, std::uint64_t seed, int cases);

// Plain-text report, byte-stable for a fixed seed and case count.
std::string render_report(const std::vector<SuiteResult>& results);

Json result_to_json(const SuiteResult& result);

} // namespace eulerstack::lawcheck
