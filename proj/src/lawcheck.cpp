#include "eulerstack/lawcheck.hpp"

#include <sstream>

namespace eulerstack::lawcheck {

namespace {

std::vector<FiniteGroup> build_pool(int max_order) {
    std::vector<FiniteGroup> pool;
    pool.push_back(trivial_group());
    pool.push_back(cyclic_group(2));
    pool.push_back(cyclic_group(3));
    pool.push_back(cyclic_group(4));
    pool.push_back(direct_product(cyclic_group(2), cyclic_group(2)));
    pool.push_back(cyclic_group(5));
    pool.push_back(cyclic_group(6));
    pool.push_back(symmetric_group(3));
    pool.push_back(cyclic_group(8));
    pool.push_back(dihedral_group(4));
    pool.push_back(direct_product(cyclic_group(3), cyclic_group(3)));
    pool.push_back(dihedral_group(6));
    pool.push_back(cyclic_group(12));
    pool.push_back(symmetric_group(4));
    std::vector<FiniteGroup> trimmed;
    for (auto& g : pool)
        if (g.order() <= max_order) trimmed.push_back(std::move(g));
    return trimmed;
}

} // namespace

const std::vector<FiniteGroup>& group_pool() {
    static const std::vector<FiniteGroup> pool = build_pool(24);
    return pool;
}

const std::vector<FiniteGroup>& small_group_pool() {
    static const std::vector<FiniteGroup> pool = build_pool(16);
    return pool;
}

FiniteGroup random_pool_group(Rng& rng, const std::vector<FiniteGroup>& pool) {
    return pool[rng.index((int)pool.size())];
}

GroupExpr random_group_expr(Rng& rng, bool allow_gl, bool allow_torus, int depth) {
    while (true) {
        switch (rng.index(6)) {
            case 0: return GroupExpr::trivial();
            case 1: return GroupExpr::finite_of(random_pool_group(rng, group_pool()));
            case 2:
                if (!allow_torus) continue;
                return GroupExpr::torus((int)rng.range(1, 2));
            case 3: return GroupExpr::unipotent((int)rng.range(1, 2));
            case 4:
                if (!allow_gl) continue;
                return GroupExpr::general_linear((int)rng.range(1, 2));
            case 5: {
                if (depth <= 0) continue;
                std::vector<GroupExpr> factors;
                int n = (int)rng.range(2, 3);
                for (int i = 0; i < n; ++i)
                    factors.push_back(random_group_expr(rng, allow_gl, allow_torus, depth - 1));
                return GroupExpr::product(std::move(factors));
            }
        }
    }
}

RichStack random_rich_stack(Rng& rng, const std::string& prefix, int max_strata,
                            const std::vector<FiniteGroup>& pool, bool with_remainder) {
    int n = (int)rng.range(1, max_strata);
    std::vector<Stratum> strata;
    for (int i = 0; i < n; ++i)
        strata.push_back(Stratum{prefix + std::to_string(i), rng.range(-3, 3),
                                 GroupExpr::finite_of(random_pool_group(rng, pool))});
    RichStack out;
    out.stack = make_stack(std::move(strata), with_remainder);
    out.remainder_group = with_remainder ? random_pool_group(rng, pool) : trivial_group();
    return out;
}

namespace {

const std::vector<FiniteGroup>& kernel_pool() {
    static const std::vector<FiniteGroup> pool = {
        cyclic_group(2), cyclic_group(3), cyclic_group(4),
        direct_product(cyclic_group(2), cyclic_group(2))};
    return pool;
}

// A hom into the given target group, built so the kernel is known by
// construction: subgroup inclusions and identities are representable, a
// K x H projection has kernel K, a trivial hom has the whole source as
// kernel.
GroupHom random_hom_into(Rng& rng, const FiniteGroup& target, bool representable_only,
                         bool force_kernel) {
    auto random_subgroup = [&](const FiniteGroup& g) {
        std::vector<int> gens;
        int count = rng.index(3); // 0, 1 or 2 generators
        for (int i = 0; i < count; ++i) gens.push_back(rng.index(g.order()));
        return subgroup_generated(g, gens);
    };
    int choice;
    if (force_kernel) choice = rng.chance(3, 4) ? 2 : 3;
    else if (representable_only) choice = rng.chance(1, 2) ? 0 : 1;
    else choice = rng.index(4);
    switch (choice) {
        case 0: { // subgroup inclusion
            std::vector<int> elems = random_subgroup(target);
            FiniteGroup sub = subgroup_group(target, elems);
            return make_hom(std::move(sub), target, elems);
        }
        case 1: // identity
            return identity_hom(target);
        case 2: { // K x H -> H -> target, kernel K
            std::vector<int> elems = random_subgroup(target);
            FiniteGroup sub = subgroup_group(target, elems);
            FiniteGroup k = kernel_pool()[rng.index((int)kernel_pool().size())];
            FiniteGroup source = direct_product(k, sub);
            std::vector<int> images(source.order());
            for (int i = 0; i < k.order(); ++i)
                for (int j = 0; j < (int)elems.size(); ++j)
                    images[i * (int)elems.size() + j] = elems[j];
            return make_hom(std::move(source), target, std::move(images));
        }
        default: { // trivial hom; kernel is everything
            FiniteGroup source = force_kernel
                                     ? kernel_pool()[rng.index((int)kernel_pool().size())]
                                     : random_pool_group(rng, small_group_pool());
            return trivial_hom(source, target);
        }
    }
}

} // namespace

GeneratedMorphism random_rich_morphism(Rng& rng, const RichStack& target,
                                       const std::string& prefix,
                                       const MorphismOptions& options) {
    const auto& tstrata = target.stack->strata();
    int n = (int)rng.range(1, options.max_strata);
    std::vector<Stratum> strata;
    std::map<std::string, MorphismRecord> records;
    for (int i = 0; i < n; ++i) {
        const Stratum& t = tstrata[rng.index((int)tstrata.size())];
        std::int64_t fiber = rng.range(-3, 3);
        GroupHom hom = random_hom_into(rng, t.stabilizer.finite, options.representable_only,
                                       options.force_kernels);
        std::string id = prefix + std::to_string(i);
        strata.push_back(Stratum{id, fiber * t.coarse_chi, GroupExpr::finite_of(hom.source)});
        records.emplace(id, MorphismRecord{t.id, fiber, StabData::rich(std::move(hom))});
    }
    std::optional<MorphismRecord> remainder;
    RichStack source;
    if (options.with_remainder) {
        GroupHom hom = random_hom_into(rng, target.remainder_group,
                                       options.representable_only, options.force_kernels);
        source.remainder_group = hom.source;
        remainder = MorphismRecord{"", rng.range(-3, 3), StabData::rich(std::move(hom))};
    } else {
        source.remainder_group = trivial_group();
    }
    source.stack = make_stack(std::move(strata), options.with_remainder);
    StackMorphism morphism(source.stack, target.stack, std::move(records),
                           std::move(remainder));
    return GeneratedMorphism{std::move(source), std::move(morphism)};
}

ConstructibleFn random_fn(Rng& rng, const StackPtr& stack, bool integers_only,
                          const Rational& default_value) {
    std::map<std::string, Rational> values;
    for (const auto& s : stack->strata()) {
        if (rng.chance(1, 3)) continue; // leave at the default
        std::int64_t num = rng.range(-5, 5);
        std::int64_t den = integers_only ? 1 : rng.range(1, 3);
        values.emplace(s.id, Rational(num, den));
    }
    return ConstructibleFn(stack, std::move(values), default_value);
}

const char* suite_name(Suite suite) {
    switch (suite) {
        case Suite::Weights: return "weights";
        case Suite::Conservation: return "conservation";
        case Suite::Functoriality: return "functoriality";
        case Suite::StackFunctoriality: return "stack-functoriality";
        case Suite::InvEAgreement: return "inv-e-agreement";
        case Suite::Cartesian: return "cartesian";
        case Suite::Dhvw: return "dhvw";
        case Suite::Integrality: return "integrality";
        case Suite::LcfFunctoriality: return "lcf-functoriality";
    }
    return "?";
}

std::optional<Suite> suite_by_name(const std::string& name) {
    for (Suite s : all_suites())
        if (name == suite_name(s)) return s;
    return std::nullopt;
}

const std::vector<Suite>& all_suites() {
    static const std::vector<Suite> suites = {
        Suite::Weights,        Suite::Conservation,  Suite::Functoriality,
        Suite::StackFunctoriality, Suite::InvEAgreement,   Suite::Cartesian,
        Suite::Dhvw,           Suite::Integrality,   Suite::LcfFunctoriality};
    return suites;
}

namespace {

struct CaseOutcome {
    bool ok = true;
    bool non_representable = false;
    Json counterexample;
};

CaseOutcome weights_case(Rng& rng) {
    CaseOutcome outcome;
    // Genuine table-level multiplicativity on a direct product of finite
    // groups: conjugacy classes of A x B against the per-factor counts.
    const auto& pool = group_pool();
    FiniteGroup a = random_pool_group(rng, pool);
    FiniteGroup b = random_pool_group(rng, pool);
    while (a.order() * b.order() > 48) b = random_pool_group(rng, pool);
    FiniteGroup ab = direct_product(a, b);
    GroupExpr ea = GroupExpr::finite_of(a), eb = GroupExpr::finite_of(b);
    GroupExpr eab = GroupExpr::finite_of(ab);
    bool ok_e = euler_char_group(eab) == euler_char_group(ea) * euler_char_group(eb);
    bool ok_o = orbifold_weight(eab) == orbifold_weight(ea) * orbifold_weight(eb);

    // Symbolic products through the weight interface, infinity included.
    GroupExpr g = random_group_expr(rng, true, true, 1);
    GroupExpr h = random_group_expr(rng, true, true, 1);
    GroupExpr gh = GroupExpr::product({g, h});
    bool ok_sym = euler_char_group(gh) == euler_char_group(g) * euler_char_group(h);
    if (!g.contains_gl() && !h.contains_gl())
        ok_sym = ok_sym && orbifold_weight(gh) == orbifold_weight(g) * orbifold_weight(h);
    ExtRational ig = weight_value(WeightFunction::inv_e(), g);
    ExtRational ih = weight_value(WeightFunction::inv_e(), h);
    if (!ig.is_infinite() && !ih.is_infinite()) {
        ExtRational igh = weight_value(WeightFunction::inv_e(), gh);
        ok_sym = ok_sym && !igh.is_infinite() && igh == ig * ih;
    }

    outcome.ok = ok_e && ok_o && ok_sym;
    if (!outcome.ok) {
        outcome.counterexample["factor_a"] = group_to_json(ea);
        outcome.counterexample["factor_b"] = group_to_json(eb);
        outcome.counterexample["symbolic_g"] = group_to_json(g);
        outcome.counterexample["symbolic_h"] = group_to_json(h);
    }
    return outcome;
}

GroupExpr random_stabilizer_for_weight(Rng& rng, const WeightFunction& w, bool target) {
    switch (w.kind) {
        case WeightFunction::Kind::InvE:
            // e must not vanish anywhere; stay with finite stabilizers.
            return GroupExpr::finite_of(random_pool_group(rng, group_pool()));
        case WeightFunction::Kind::O: {
            // o vanishes on tori, which the target may not carry.
            if (!target && rng.chance(1, 4)) return GroupExpr::torus((int)rng.range(1, 2));
            switch (rng.index(3)) {
                case 0: return GroupExpr::trivial();
                case 1: return GroupExpr::finite_of(random_pool_group(rng, group_pool()));
                default: return GroupExpr::unipotent((int)rng.range(1, 2));
            }
        }
        default:
            return random_group_expr(rng, true, true, 1);
    }
}

CaseOutcome conservation_case(Rng& rng, int case_index) {
    CaseOutcome outcome;
    WeightFunction w = WeightFunction::naive();
    if (case_index % 3 == 1) w = WeightFunction::inv_e();
    if (case_index % 3 == 2) w = WeightFunction::o();

    int tn = (int)rng.range(1, 4);
    std::vector<Stratum> tstrata;
    for (int i = 0; i < tn; ++i)
        tstrata.push_back(Stratum{"t" + std::to_string(i), rng.range(-3, 3),
                                  random_stabilizer_for_weight(rng, w, true)});
    StackPtr target = make_stack(std::move(tstrata));

    int sn = (int)rng.range(1, 5);
    std::vector<Stratum> sstrata;
    std::map<std::string, MorphismRecord> records;
    for (int i = 0; i < sn; ++i) {
        const Stratum& t = target->strata()[rng.index(tn)];
        std::int64_t fiber = rng.range(-3, 3);
        std::string id = "s" + std::to_string(i);
        sstrata.push_back(Stratum{id, fiber * t.coarse_chi,
                                  random_stabilizer_for_weight(rng, w, false)});
        records.emplace(id, MorphismRecord{t.id, fiber, StabData::lean(1, 1)});
    }
    StackPtr source = make_stack(std::move(sstrata));
    StackMorphism m(source, target, std::move(records));
    ConstructibleFn f = random_fn(rng, source, false, Rational(0));

    ConservationReport report = check_conservation(m, f, w);
    outcome.ok = report.ok;
    if (!outcome.ok) {
        outcome.counterexample["weight"] = w.name();
        outcome.counterexample["morphism"] = morphism_to_json(m);
        outcome.counterexample["fn"] = fn_to_json(f);
        outcome.counterexample["source_side"] = report.source_side.str();
        outcome.counterexample["target_side"] = report.target_side.str();
    }
    return outcome;
}

struct ComposablePair {
    RichStack h;
    GeneratedMorphism m2; // G -> H
    GeneratedMorphism m1; // F -> G
};

ComposablePair random_pair(Rng& rng, const MorphismOptions& opts1,
                           const MorphismOptions& opts2) {
    RichStack h = random_rich_stack(rng, "h", 3, group_pool(), opts2.with_remainder);
    GeneratedMorphism m2 = random_rich_morphism(rng, h, "g", opts2);
    GeneratedMorphism m1 = random_rich_morphism(rng, m2.source, "f", opts1);
    return ComposablePair{std::move(h), std::move(m2), std::move(m1)};
}

bool pair_has_kernel(const ComposablePair& pair) {
    for (const StackMorphism* m : {&pair.m1.morphism, &pair.m2.morphism}) {
        for (const auto& [id, rec] : m->records())
            if (rec.stab.kernel_chi_value() >= 2) return true;
        if (m->remainder() && m->remainder()->stab.kernel_chi_value() >= 2) return true;
    }
    return false;
}

Json pair_to_json(const ComposablePair& pair, const ConstructibleFn& f) {
    Json j;
    j["m1"] = morphism_to_json(pair.m1.morphism);
    j["m2"] = morphism_to_json(pair.m2.morphism);
    j["fn"] = fn_to_json(f);
    return j;
}

CaseOutcome functoriality_case(Rng& rng) {
    CaseOutcome outcome;
    ComposablePair pair = random_pair(rng, {}, {});
    ConstructibleFn f = random_fn(rng, pair.m1.source.stack, false, Rational(0));
    ConstructibleFn direct = pushforward_naive(compose(pair.m1.morphism, pair.m2.morphism), f);
    ConstructibleFn chained =
        pushforward_naive(pair.m2.morphism, pushforward_naive(pair.m1.morphism, f));
    outcome.ok = direct == chained;
    if (!outcome.ok) outcome.counterexample = pair_to_json(pair, f);
    return outcome;
}

CaseOutcome stack_functoriality_case(Rng& rng, int case_index) {
    CaseOutcome outcome;
    MorphismOptions opts1;
    opts1.force_kernels = case_index % 2 == 0; // half the cases are non-representable
    ComposablePair pair = random_pair(rng, opts1, {});
    outcome.non_representable = pair_has_kernel(pair);
    StackMorphism composite = compose(pair.m1.morphism, pair.m2.morphism);

    bool ok = true;
    for (const auto& s : pair.m1.source.stack->strata()) {
        Rational lhs = m_phi(composite, s.id);
        Rational rhs = m_phi(pair.m2.morphism, pair.m1.morphism.record(s.id).target_id) *
                       m_phi(pair.m1.morphism, s.id);
        ok = ok && lhs == rhs;
    }
    ConstructibleFn f = random_fn(rng, pair.m1.source.stack, false, Rational(0));
    ConstructibleFn direct = pushforward_stack(composite, f);
    ConstructibleFn chained =
        pushforward_stack(pair.m2.morphism, pushforward_stack(pair.m1.morphism, f));
    ok = ok && direct == chained;

    outcome.ok = ok;
    if (!ok) outcome.counterexample = pair_to_json(pair, f);
    return outcome;
}

CaseOutcome inv_e_agreement_case(Rng& rng) {
    CaseOutcome outcome;
    RichStack target = random_rich_stack(rng, "t", 3, group_pool(), false);
    GeneratedMorphism gen = random_rich_morphism(rng, target, "s", {});
    ConstructibleFn f = random_fn(rng, gen.source.stack, false, Rational(0));
    ConstructibleFn via_m = pushforward_stack(gen.morphism, f);
    ConstructibleFn via_w = pushforward_weighted(gen.morphism, f, WeightFunction::inv_e());
    outcome.ok = via_m == via_w;
    if (!outcome.ok) {
        outcome.counterexample["morphism"] = morphism_to_json(gen.morphism);
        outcome.counterexample["fn"] = fn_to_json(f);
    }
    return outcome;
}

CaseOutcome cartesian_case(Rng& rng) {
    CaseOutcome outcome;
    RichStack h = random_rich_stack(rng, "h", 2, small_group_pool(), false);
    MorphismOptions phi_opts;
    phi_opts.representable_only = true;
    phi_opts.max_strata = 2;
    MorphismOptions psi_opts;
    psi_opts.max_strata = 2;
    GeneratedMorphism phi = random_rich_morphism(rng, h, "f", phi_opts);
    GeneratedMorphism psi = random_rich_morphism(rng, h, "g", psi_opts);
    CartesianSquare square = fiber_product(phi.morphism, psi.morphism);

    bool ok = true;
    std::string failing;
    for (const auto& s : phi.source.stack->strata()) {
        ConstructibleSet c(phi.source.stack, {s.id});
        CommutationReport report = verify_commutation(square, c);
        if (!report.ok) {
            ok = false;
            failing = s.id;
            break;
        }
    }
    outcome.ok = ok;
    if (!ok) {
        outcome.counterexample["phi"] = morphism_to_json(phi.morphism);
        outcome.counterexample["psi"] = morphism_to_json(psi.morphism);
        outcome.counterexample["delta_on"] = failing;
    }
    return outcome;
}

CaseOutcome dhvw_case(Rng& rng) {
    CaseOutcome outcome;
    FiniteGroup g = random_pool_group(rng, group_pool());
    // Glue together coset actions and fixed points, keeping n <= 12.
    const int budget = 12;
    std::optional<FiniteGSet> gset;
    int chunks = (int)rng.range(1, 3);
    for (int i = 0; i < chunks; ++i) {
        int used = gset ? gset->set_size() : 0;
        if (used >= budget) break;
        std::vector<int> gens;
        for (int k = rng.index(3); k > 0; --k) gens.push_back(rng.index(g.order()));
        std::vector<int> sub = subgroup_generated(g, gens);
        int cosets = g.order() / (int)sub.size();
        FiniteGSet piece = cosets + used <= budget ? coset_action(g, sub)
                                                   : trivial_action(g, 1);
        gset = gset ? gset_disjoint_union(*gset, piece) : piece;
    }
    DhvwReport report = check_dhvw(*gset);
    outcome.ok = report.ok;
    if (!outcome.ok) {
        outcome.counterexample["gset"] = gset_to_json(*gset);
        outcome.counterexample["commuting_pair_side"] = report.commuting_pair_side.str();
        outcome.counterexample["orbifold_side"] = report.orbifold_side.str();
    }
    return outcome;
}

CaseOutcome integrality_case(Rng& rng) {
    CaseOutcome outcome;
    RichStack target = random_rich_stack(rng, "t", 3, group_pool(), false);
    MorphismOptions opts;
    opts.representable_only = true;
    GeneratedMorphism gen = random_rich_morphism(rng, target, "s", opts);
    ConstructibleFn f = random_fn(rng, gen.source.stack, true, Rational(0));
    ConstructibleFn pushed = pushforward_stack(gen.morphism, f);
    outcome.ok = pushed.integer_valued();
    if (!outcome.ok) {
        outcome.counterexample["morphism"] = morphism_to_json(gen.morphism);
        outcome.counterexample["fn"] = fn_to_json(f);
        outcome.counterexample["pushed"] = fn_to_json(pushed);
    }
    return outcome;
}

CaseOutcome lcf_functoriality_case(Rng& rng) {
    CaseOutcome outcome;
    MorphismOptions opts;
    opts.with_remainder = true;
    ComposablePair pair = random_pair(rng, opts, opts);
    Rational def(rng.range(1, 3), rng.range(1, 2));
    ConstructibleFn f = random_fn(rng, pair.m1.source.stack, false, def);
    StackMorphism composite = compose(pair.m1.morphism, pair.m2.morphism);

    bool ok = true;
    for (LcfMode mode : {LcfMode::Naive, LcfMode::Stack}) {
        ConstructibleFn direct = pushforward_lcf(composite, f, mode);
        ConstructibleFn chained =
            pushforward_lcf(pair.m2.morphism, pushforward_lcf(pair.m1.morphism, f, mode), mode);
        ok = ok && direct == chained;
    }
    outcome.ok = ok;
    if (!ok) outcome.counterexample = pair_to_json(pair, f);
    return outcome;
}

CaseOutcome run_case(Suite suite, Rng& rng, int case_index) {
    switch (suite) {
        case Suite::Weights: return weights_case(rng);
        case Suite::Conservation: return conservation_case(rng, case_index);
        case Suite::Functoriality: return functoriality_case(rng);
        case Suite::StackFunctoriality: return stack_functoriality_case(rng, case_index);
        case Suite::InvEAgreement: return inv_e_agreement_case(rng);
        case Suite::Cartesian: return cartesian_case(rng);
        case Suite::Dhvw: return dhvw_case(rng);
        case Suite::Integrality: return integrality_case(rng);
        case Suite::LcfFunctoriality: return lcf_functoriality_case(rng);
    }
    return {};
}

} // namespace

SuiteResult run_suite(Suite suite, std::uint64_t seed, int cases) {
    SuiteResult result;
    result.suite = suite;
    result.seed = seed;
    result.cases = cases;
    for (int i = 0; i < cases; ++i) {
        // One independent stream per case; failures are reproducible alone.
        Rng rng(seed * 0x100000001b3ULL + (std::uint64_t)i);
        CaseOutcome outcome;
        try {
            outcome = run_case(suite, rng, i);
        } catch (const Error& e) {
            outcome.ok = false;
            outcome.counterexample["error"] = e.what();
        }
        if (outcome.non_representable) ++result.non_representable;
        if (outcome.ok) {
            ++result.passed;
        } else {
            ++result.failed;
            if (result.first_failure_case < 0) {
                result.first_failure_case = i;
                result.first_counterexample = outcome.counterexample.dump(2);
            }
        }
    }
    return result;
}

std::string render_report(const std::vector<SuiteResult>& results) {
    std::ostringstream out;
    for (const auto& r : results) {
        out << "suite: " << suite_name(r.suite) << "\n";
        out << "seed: " << r.seed << "\n";
        out << "cases: " << r.cases << "\n";
        out << "passed: " << r.passed << "\n";
        out << "failed: " << r.failed << "\n";
        if (r.suite == Suite::StackFunctoriality)
            out << "non-representable: " << r.non_representable << "\n";
        if (r.failed > 0) {
            out << "first counterexample (case " << r.first_failure_case << "):\n";
            out << r.first_counterexample << "\n";
        }
        out << "\n";
    }
    int total_failed = 0;
    for (const auto& r : results) total_failed += r.failed;
    out << (total_failed == 0 ? "all suites passed" : "FAILURES PRESENT") << "\n";
    return out.str();
}

Json result_to_json(const SuiteResult& result) {
    Json j;
    j["suite"] = suite_name(result.suite);
    j["seed"] = result.seed;
    j["cases"] = result.cases;
    j["passed"] = result.passed;
    j["failed"] = result.failed;
    if (result.suite == Suite::StackFunctoriality)
        j["non_representable"] = result.non_representable;
    if (result.failed > 0) {
        j["first_failure_case"] = result.first_failure_case;
        j["first_counterexample"] = Json::parse(result.first_counterexample);
    }
    return j;
}

} // namespace eulerstack::lawcheck
