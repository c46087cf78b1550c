#include "eulerstack/strata.hpp"

#include <algorithm>

namespace eulerstack {

StratifiedStack::StratifiedStack(std::vector<Stratum> strata, bool has_remainder)
    : strata_(std::move(strata)), has_remainder_(has_remainder) {
    for (size_t i = 0; i < strata_.size(); ++i) {
        if (!index_.emplace(strata_[i].id, i).second)
            throw Error(ErrorCode::UnknownStratum, "duplicate stratum id '" + strata_[i].id + "'");
    }
}

const Stratum& StratifiedStack::stratum(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end())
        throw Error(ErrorCode::UnknownStratum, "no stratum '" + id + "'");
    return strata_[it->second];
}

StackPtr make_stack(std::vector<Stratum> strata, bool has_remainder) {
    return std::make_shared<StratifiedStack>(std::move(strata), has_remainder);
}

StackPtr affine_space(int m) {
    return make_stack({Stratum{"A" + std::to_string(m), 1, GroupExpr::trivial()}});
}

StackPtr projective_space(int m) {
    // KP^m = K^0 u K^1 u ... u K^m, each cell of chi 1.
    std::vector<Stratum> strata;
    for (int k = 0; k <= m; ++k)
        strata.push_back(Stratum{"cell" + std::to_string(k), 1, GroupExpr::trivial()});
    return make_stack(std::move(strata));
}

StackPtr torus_variety() {
    return make_stack({Stratum{"Kx", 0, GroupExpr::trivial()}});
}

StackPtr point_stack(const GroupExpr& stabilizer, const std::string& id) {
    return make_stack({Stratum{id, 1, stabilizer}});
}

StackPtr product_stack(const StackPtr& a, const StackPtr& b) {
    std::vector<Stratum> strata;
    for (const auto& sa : a->strata())
        for (const auto& sb : b->strata()) {
            GroupExpr stab;
            if (sa.stabilizer.kind == GroupExpr::Kind::Trivial) stab = sb.stabilizer;
            else if (sb.stabilizer.kind == GroupExpr::Kind::Trivial) stab = sa.stabilizer;
            else stab = GroupExpr::product({sa.stabilizer, sb.stabilizer});
            strata.push_back(Stratum{sa.id + "*" + sb.id, sa.coarse_chi * sb.coarse_chi, stab});
        }
    return make_stack(std::move(strata), a->has_remainder() || b->has_remainder());
}

ConstructibleSet::ConstructibleSet(StackPtr stack, std::set<std::string> members)
    : stack_(std::move(stack)), members_(std::move(members)) {
    for (const auto& id : members_)
        if (!stack_->contains(id))
            throw Error(ErrorCode::UnknownStratum, "set member '" + id + "' not in stack");
}

ConstructibleSet full_set(const StackPtr& stack) {
    std::set<std::string> all;
    for (const auto& s : stack->strata()) all.insert(s.id);
    return ConstructibleSet(stack, std::move(all));
}

ConstructibleSet set_ops(SetOp op, const ConstructibleSet& a, const ConstructibleSet& b) {
    if (*a.stack() != *b.stack())
        throw Error(ErrorCode::StackMismatch, "set operation across different stacks");
    std::set<std::string> out;
    const auto& ma = a.members();
    const auto& mb = b.members();
    switch (op) {
        case SetOp::Union:
            std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(),
                           std::inserter(out, out.end()));
            break;
        case SetOp::Intersect:
            std::set_intersection(ma.begin(), ma.end(), mb.begin(), mb.end(),
                                  std::inserter(out, out.end()));
            break;
        case SetOp::Difference:
            std::set_difference(ma.begin(), ma.end(), mb.begin(), mb.end(),
                                std::inserter(out, out.end()));
            break;
    }
    return ConstructibleSet(a.stack(), std::move(out));
}

ConstructibleFn::ConstructibleFn(StackPtr stack, std::map<std::string, Rational> values,
                                 Rational default_value)
    : stack_(std::move(stack)), values_(std::move(values)),
      default_value_(std::move(default_value)) {
    for (auto it = values_.begin(); it != values_.end();) {
        if (!stack_->contains(it->first))
            throw Error(ErrorCode::UnknownStratum, "function value on unknown stratum '" +
                                                       it->first + "'");
        if (it->second == default_value_) it = values_.erase(it);
        else ++it;
    }
}

ConstructibleFn ConstructibleFn::constant(const StackPtr& stack, const Rational& c) {
    return ConstructibleFn(stack, {}, c);
}

ConstructibleFn ConstructibleFn::indicator(const ConstructibleSet& set) {
    std::map<std::string, Rational> values;
    for (const auto& id : set.members()) values.emplace(id, Rational(1));
    return ConstructibleFn(set.stack(), std::move(values), Rational(0));
}

Rational ConstructibleFn::value_on(const std::string& id) const {
    if (!stack_->contains(id))
        throw Error(ErrorCode::UnknownStratum, "no stratum '" + id + "'");
    auto it = values_.find(id);
    return it == values_.end() ? default_value_ : it->second;
}

bool ConstructibleFn::integer_valued() const {
    if (!default_value_.is_integer()) return false;
    for (const auto& [id, v] : values_)
        if (!v.is_integer()) return false;
    return true;
}

ConstructibleFn cf_pointwise(PointwiseOp op, const ConstructibleFn& f,
                             const ConstructibleFn& g) {
    if (*f.stack() != *g.stack())
        throw Error(ErrorCode::StackMismatch, "pointwise operation across different stacks");
    auto combine = [op](const Rational& x, const Rational& y) {
        switch (op) {
            case PointwiseOp::Add: return x + y;
            case PointwiseOp::Sub: return x - y;
            case PointwiseOp::Mul: return x * y;
        }
        return Rational(0);
    };
    std::map<std::string, Rational> values;
    for (const auto& s : f.stack()->strata())
        values.emplace(s.id, combine(f.value_on(s.id), g.value_on(s.id)));
    return ConstructibleFn(f.stack(), std::move(values),
                           combine(f.default_value(), g.default_value()));
}

ConstructibleFn cf_scale(const Rational& c, const ConstructibleFn& f) {
    std::map<std::string, Rational> values;
    for (const auto& [id, v] : f.values()) values.emplace(id, c * v);
    return ConstructibleFn(f.stack(), std::move(values), c * f.default_value());
}

std::int64_t chi_naive(const ConstructibleSet& c) {
    std::int64_t total = 0;
    for (const auto& id : c.members()) total += c.stack()->stratum(id).coarse_chi;
    return total;
}

namespace {

void require_measurable(const ConstructibleFn& f) {
    if (f.stack()->has_remainder() && !f.constructible())
        throw Error(ErrorCode::NotConstructible,
                    "nonzero default value on a stack with a remainder");
}

} // namespace

Rational chi_naive_weighted(const ConstructibleFn& f) {
    require_measurable(f);
    Rational total(0);
    for (const auto& s : f.stack()->strata())
        total += f.value_on(s.id) * Rational(s.coarse_chi);
    return total;
}

Rational chi_weighted(const ConstructibleFn& f, const WeightFunction& w) {
    require_measurable(f);
    Rational total(0);
    for (const auto& s : f.stack()->strata()) {
        Rational v = f.value_on(s.id);
        if (v.is_zero()) continue; // w f vanishes outside supp f even where w is infinite
        ExtRational wv = weight_value(w, s.stabilizer);
        if (wv.is_infinite())
            throw Error(ErrorCode::UndefinedWeight,
                        "weight " + std::string(w.name()) + " is infinite on stratum '" +
                            s.id + "' in supp f");
        total += v * wv.finite_value() * Rational(s.coarse_chi);
    }
    return total;
}

Rational chi_weighted_set(const ConstructibleSet& c, const WeightFunction& w) {
    return chi_weighted(ConstructibleFn::indicator(c), w);
}

} // namespace eulerstack
