#include "eulerstack/pushpull.hpp"

namespace eulerstack {

StabData StabData::lean(std::int64_t kernel_chi, std::int64_t quotient_chi) {
    StabData s;
    s.mode = Mode::Lean;
    s.kernel_chi = kernel_chi;
    s.quotient_chi = quotient_chi;
    return s;
}

StabData StabData::rich(GroupHom hom) {
    StabData s;
    s.mode = Mode::Rich;
    s.hom = std::move(hom);
    return s;
}

bool StabData::representable() const {
    if (mode == Mode::Lean) return kernel_chi == 1;
    return is_injective(*hom);
}

std::int64_t StabData::kernel_chi_value() const {
    if (mode == Mode::Lean) return kernel_chi;
    return hom_kernel_quotient(*hom).kernel_size;
}

Rational StabData::m_value() const {
    if (mode == Mode::Lean) {
        if (kernel_chi == 0)
            throw Error(ErrorCode::ZeroKernelChi, "kernel chi is zero");
        return Rational(quotient_chi, kernel_chi);
    }
    KernelQuotient kq = hom_kernel_quotient(*hom);
    return Rational(kq.coset_count, kq.kernel_size);
}

bool operator==(const StabData& a, const StabData& b) {
    if (a.mode != b.mode) return false;
    if (a.mode == StabData::Mode::Lean)
        return a.kernel_chi == b.kernel_chi && a.quotient_chi == b.quotient_chi;
    return *a.hom == *b.hom;
}

StackMorphism::StackMorphism(StackPtr source, StackPtr target,
                             std::map<std::string, MorphismRecord> records,
                             std::optional<MorphismRecord> remainder)
    : source_(std::move(source)), target_(std::move(target)), records_(std::move(records)),
      remainder_(std::move(remainder)) {}

const MorphismRecord& StackMorphism::record(const std::string& source_id) const {
    auto it = records_.find(source_id);
    if (it == records_.end())
        throw Error(ErrorCode::UnknownStratum, "no morphism record for stratum '" +
                                                   source_id + "'");
    return it->second;
}

bool StackMorphism::representable() const {
    for (const auto& [id, rec] : records_)
        if (!rec.stab.representable()) return false;
    if (remainder_ && !remainder_->stab.representable()) return false;
    return true;
}

ValidationReport validate_morphism(const StackMorphism& m) {
    auto fail = [](const std::string& msg) { return ValidationReport{false, msg}; };
    for (const auto& [id, rec] : m.records())
        if (!m.source()->contains(id))
            return fail("record for unknown source stratum '" + id + "'");
    for (const auto& s : m.source()->strata()) {
        auto it = m.records().find(s.id);
        if (it == m.records().end())
            return fail("source stratum '" + s.id + "' has no record");
        const MorphismRecord& rec = it->second;
        if (!m.target()->contains(rec.target_id))
            return fail("stratum '" + s.id + "' maps to unknown target '" + rec.target_id + "'");
        const Stratum& t = m.target()->stratum(rec.target_id);
        if (s.coarse_chi != rec.fiber_chi * t.coarse_chi)
            return fail("stratum '" + s.id + "' is not equifibered: chi " +
                        std::to_string(s.coarse_chi) + " != fiber " +
                        std::to_string(rec.fiber_chi) + " * target chi " +
                        std::to_string(t.coarse_chi));
        if (rec.stab.is_rich()) {
            if (s.stabilizer.kind != GroupExpr::Kind::Finite)
                return fail("stratum '" + s.id + "' has rich data but non-finite stabilizer");
            if (t.stabilizer.kind != GroupExpr::Kind::Finite)
                return fail("target '" + t.id + "' has rich data but non-finite stabilizer");
            if (rec.stab.hom->source != s.stabilizer.finite)
                return fail("stratum '" + s.id + "' hom source group mismatch");
            if (rec.stab.hom->target != t.stabilizer.finite)
                return fail("stratum '" + s.id + "' hom target group mismatch");
        }
    }
    if (m.remainder()) {
        if (!m.source()->has_remainder())
            return fail("remainder record on a source without a remainder");
        if (!m.target()->has_remainder())
            return fail("remainder record but the target has no remainder");
    }
    return {};
}

namespace {

void require_valid(const StackMorphism& m) {
    ValidationReport report = validate_morphism(m);
    if (!report.ok)
        throw Error(ErrorCode::InvalidMorphism, report.message);
}

void require_source_fn(const StackMorphism& m, const ConstructibleFn& f) {
    if (*f.stack() != *m.source())
        throw Error(ErrorCode::StackMismatch, "function does not live on the source stack");
    if (f.stack()->has_remainder() && !f.constructible())
        throw Error(ErrorCode::NotConstructible,
                    "nonzero default value on a stack with a remainder");
}

ConstructibleFn push_values(const StackMorphism& m,
                            const std::map<std::string, Rational>& source_values,
                            const Rational& out_default) {
    std::map<std::string, Rational> out;
    for (const auto& [id, v] : source_values) {
        const MorphismRecord& rec = m.record(id);
        Rational term = v * Rational(rec.fiber_chi);
        auto [it, inserted] = out.emplace(rec.target_id, term);
        if (!inserted) it->second += term;
    }
    return ConstructibleFn(m.target(), std::move(out), out_default);
}

std::map<std::string, Rational> explicit_values(const ConstructibleFn& f) {
    std::map<std::string, Rational> values;
    for (const auto& s : f.stack()->strata()) values.emplace(s.id, f.value_on(s.id));
    return values;
}

} // namespace

StackMorphism identity_morphism(const StackPtr& stack) {
    std::map<std::string, MorphismRecord> records;
    for (const auto& s : stack->strata()) {
        StabData stab = s.stabilizer.kind == GroupExpr::Kind::Finite
                            ? StabData::rich(identity_hom(s.stabilizer.finite))
                            : StabData::lean(1, 1);
        records.emplace(s.id, MorphismRecord{s.id, 1, std::move(stab)});
    }
    std::optional<MorphismRecord> remainder;
    if (stack->has_remainder()) remainder = MorphismRecord{"", 1, StabData::lean(1, 1)};
    return StackMorphism(stack, stack, std::move(records), std::move(remainder));
}

ConstructibleFn pushforward_naive(const StackMorphism& m, const ConstructibleFn& f) {
    require_valid(m);
    require_source_fn(m, f);
    return push_values(m, explicit_values(f), Rational(0));
}

ConstructibleFn pushforward_weighted(const StackMorphism& m, const ConstructibleFn& f,
                                     const WeightFunction& w) {
    require_valid(m);
    require_source_fn(m, f);
    std::map<std::string, Rational> weighted;
    for (const auto& s : m.source()->strata()) {
        ExtRational wv = weight_value(w, s.stabilizer);
        if (wv.is_infinite())
            throw Error(ErrorCode::UndefinedWeight, "weight " + std::string(w.name()) +
                                                        " is infinite on source stratum '" +
                                                        s.id + "'");
        weighted.emplace(s.id, f.value_on(s.id) * wv.finite_value());
    }
    ConstructibleFn pushed = push_values(m, weighted, Rational(0));
    std::map<std::string, Rational> out;
    for (const auto& t : m.target()->strata()) {
        ExtRational wt = weight_value(w, t.stabilizer);
        if (wt.is_zero())
            throw Error(ErrorCode::UndefinedWeight, "weight " + std::string(w.name()) +
                                                        " vanishes on target stratum '" +
                                                        t.id + "'");
        // 1/w is zero where w is infinite; that is permitted by the
        // definedness conditions.
        out.emplace(t.id, pushed.value_on(t.id) * wt.reciprocal().finite_value());
    }
    return ConstructibleFn(m.target(), std::move(out), Rational(0));
}

Rational m_phi(const StackMorphism& m, const std::string& source_id) {
    try {
        return m.record(source_id).stab.m_value();
    } catch (const Error& e) {
        if (e.code() == ErrorCode::ZeroKernelChi)
            throw Error(ErrorCode::ZeroKernelChi,
                        "kernel chi is zero on stratum '" + source_id + "'");
        throw;
    }
}

ConstructibleFn pushforward_stack(const StackMorphism& m, const ConstructibleFn& f,
                                  bool lenient) {
    require_valid(m);
    require_source_fn(m, f);
    std::map<std::string, Rational> scaled;
    for (const auto& s : m.source()->strata()) {
        Rational v = f.value_on(s.id);
        if (m.record(s.id).stab.kernel_chi_value() == 0) {
            if (lenient && v.is_zero()) continue;
            throw Error(ErrorCode::ZeroKernelChi,
                        "kernel chi is zero on stratum '" + s.id + "'" +
                            (lenient ? " in supp f" : ""));
        }
        if (!v.is_zero()) scaled.emplace(s.id, v * m.record(s.id).stab.m_value());
    }
    return push_values(m, scaled, Rational(0));
}

namespace {

StabData compose_stab(const StabData& a, const StabData& b) {
    if (a.is_rich() && b.is_rich()) {
        if (a.hom->target != b.hom->source)
            throw Error(ErrorCode::InsufficientStabData,
                        "stabilizer homs do not chain through the middle stack");
        return StabData::rich(compose_homs(*a.hom, *b.hom));
    }
    if (!a.is_rich() && !b.is_rich()) {
        if (a.kernel_chi == 1 && b.kernel_chi == 1)
            return StabData::lean(1, a.quotient_chi * b.quotient_chi);
        throw Error(ErrorCode::InsufficientStabData,
                    "lean stabilizer data composes only in the representable case");
    }
    throw Error(ErrorCode::InsufficientStabData,
                "cannot compose lean with rich stabilizer data");
}

} // namespace

StackMorphism compose(const StackMorphism& m1, const StackMorphism& m2) {
    require_valid(m1);
    require_valid(m2);
    if (*m1.target() != *m2.source())
        throw Error(ErrorCode::StackMismatch, "middle stacks differ in composition");
    std::map<std::string, MorphismRecord> records;
    for (const auto& [id, r1] : m1.records()) {
        const MorphismRecord& r2 = m2.record(r1.target_id);
        records.emplace(id, MorphismRecord{r2.target_id, r1.fiber_chi * r2.fiber_chi,
                                           compose_stab(r1.stab, r2.stab)});
    }
    std::optional<MorphismRecord> remainder;
    if (m1.remainder() && m2.remainder())
        remainder = MorphismRecord{"", m1.remainder()->fiber_chi * m2.remainder()->fiber_chi,
                                   compose_stab(m1.remainder()->stab, m2.remainder()->stab)};
    return StackMorphism(m1.source(), m2.target(), std::move(records), std::move(remainder));
}

ConstructibleFn pullback(const StackMorphism& m, const ConstructibleFn& f) {
    require_valid(m);
    if (*f.stack() != *m.target())
        throw Error(ErrorCode::StackMismatch, "function does not live on the target stack");
    if (!m.finite_type())
        throw Error(ErrorCode::NotFiniteType, "pullback needs a finite type morphism");
    std::map<std::string, Rational> values;
    for (const auto& s : m.source()->strata())
        values.emplace(s.id, f.value_on(m.record(s.id).target_id));
    Rational def = m.source()->has_remainder() ? f.default_value() : Rational(0);
    return ConstructibleFn(m.source(), std::move(values), def);
}

ConstructibleFn pushforward_lcf(const StackMorphism& m, const ConstructibleFn& f,
                                LcfMode mode) {
    require_valid(m);
    if (*f.stack() != *m.source())
        throw Error(ErrorCode::StackMismatch, "function does not live on the source stack");
    if (!m.finite_type())
        throw Error(ErrorCode::NotFiniteType, "LCF pushforward needs a finite type morphism");
    std::map<std::string, Rational> values = explicit_values(f);
    Rational def = f.default_value();
    if (mode == LcfMode::Stack) {
        for (const auto& s : m.source()->strata())
            if (m.record(s.id).stab.kernel_chi_value() == 0)
                throw Error(ErrorCode::ZeroKernelChi,
                            "kernel chi is zero on stratum '" + s.id + "'");
        if (m.remainder() && m.remainder()->stab.kernel_chi_value() == 0)
            throw Error(ErrorCode::ZeroKernelChi, "kernel chi is zero on the remainder");
        for (auto& [id, v] : values) v *= m.record(id).stab.m_value();
        if (m.remainder()) def *= m.remainder()->stab.m_value();
    }
    Rational out_default(0);
    if (m.source()->has_remainder())
        out_default = def * Rational(m.remainder()->fiber_chi);
    // Target strata with empty preimage carry the value zero, not the
    // default; only the remainder sees the default.
    std::map<std::string, Rational> out;
    for (const auto& t : m.target()->strata()) out.emplace(t.id, Rational(0));
    for (const auto& [id, v] : values) {
        const MorphismRecord& rec = m.record(id);
        out[rec.target_id] += v * Rational(rec.fiber_chi);
    }
    return ConstructibleFn(m.target(), std::move(out), out_default);
}

ConservationReport check_conservation(const StackMorphism& m, const ConstructibleFn& f,
                                      const WeightFunction& w) {
    ConservationReport report;
    report.source_side = chi_weighted(f, w);
    ConstructibleFn pushed = pushforward_weighted(m, f, w);
    report.target_side = chi_weighted(pushed, w);
    report.ok = report.source_side == report.target_side;
    return report;
}

} // namespace eulerstack
