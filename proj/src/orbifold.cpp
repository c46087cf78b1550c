#include "eulerstack/orbifold.hpp"

#include <algorithm>

namespace eulerstack {

FiniteGSet::FiniteGSet(FiniteGroup group, int set_size,
                       std::vector<std::vector<int>> action)
    : group_(std::move(group)), set_size_(set_size), action_(std::move(action)) {
    const int n = group_.order();
    if ((int)action_.size() != n)
        throw Error(ErrorCode::NotAnAction, "action table has " +
                                                std::to_string(action_.size()) +
                                                " rows for " + std::to_string(n) + " elements");
    for (int g = 0; g < n; ++g) {
        if ((int)action_[g].size() != set_size_)
            throw Error(ErrorCode::NotAnAction, "action row " + std::to_string(g) +
                                                    " is not length " +
                                                    std::to_string(set_size_));
        for (int x : action_[g])
            if (x < 0 || x >= set_size_)
                throw Error(ErrorCode::NotAnAction, "action value out of range");
    }
    for (int x = 0; x < set_size_; ++x)
        if (action_[group_.identity][x] != x)
            throw Error(ErrorCode::NotAnAction, "identity moves point " + std::to_string(x));
    for (int g = 0; g < n; ++g)
        for (int h = 0; h < n; ++h)
            for (int x = 0; x < set_size_; ++x)
                if (action_[group_.mul(g, h)][x] != action_[g][action_[h][x]])
                    throw Error(ErrorCode::NotAnAction,
                                "action is not a homomorphism at (" + group_.labels[g] + "," +
                                    group_.labels[h] + ")");
}

FiniteGSet trivial_action(const FiniteGroup& g, int set_size) {
    std::vector<int> row(set_size);
    for (int x = 0; x < set_size; ++x) row[x] = x;
    return FiniteGSet(g, set_size, std::vector<std::vector<int>>(g.order(), row));
}

FiniteGSet coset_action(const FiniteGroup& g, const std::vector<int>& subgroup_elements) {
    if (!is_subgroup(g, subgroup_elements))
        throw Error(ErrorCode::NotASubgroup, "coset action needs a subgroup");
    std::set<int> h(subgroup_elements.begin(), subgroup_elements.end());
    // Enumerate left cosets xH, indexed by least member.
    std::vector<int> coset_of(g.order(), -1);
    std::vector<std::vector<int>> cosets;
    for (int x = 0; x < g.order(); ++x) {
        if (coset_of[x] >= 0) continue;
        std::set<int> coset;
        for (int e : h) coset.insert(g.mul(x, e));
        int index = (int)cosets.size();
        for (int e : coset) coset_of[e] = index;
        cosets.emplace_back(coset.begin(), coset.end());
    }
    std::vector<std::vector<int>> action(g.order(), std::vector<int>(cosets.size()));
    for (int a = 0; a < g.order(); ++a)
        for (size_t i = 0; i < cosets.size(); ++i)
            action[a][i] = coset_of[g.mul(a, cosets[i][0])];
    return FiniteGSet(g, (int)cosets.size(), std::move(action));
}

FiniteGSet gset_disjoint_union(const FiniteGSet& a, const FiniteGSet& b) {
    if (a.group() != b.group())
        throw Error(ErrorCode::StackMismatch, "disjoint union needs one common group");
    const int na = a.set_size(), nb = b.set_size();
    std::vector<std::vector<int>> action(a.group().order(), std::vector<int>(na + nb));
    for (int g = 0; g < a.group().order(); ++g) {
        for (int x = 0; x < na; ++x) action[g][x] = a.act(g, x);
        for (int x = 0; x < nb; ++x) action[g][na + x] = na + b.act(g, x);
    }
    return FiniteGSet(a.group(), na + nb, std::move(action));
}

FiniteGSet gset_product(const FiniteGSet& a, const FiniteGSet& b) {
    FiniteGroup prod = direct_product(a.group(), b.group());
    const int na = a.set_size(), nb = b.set_size();
    std::vector<std::vector<int>> action(prod.order(), std::vector<int>(na * nb));
    for (int g = 0; g < a.group().order(); ++g)
        for (int h = 0; h < b.group().order(); ++h)
            for (int x = 0; x < na; ++x)
                for (int y = 0; y < nb; ++y)
                    action[g * b.group().order() + h][x * nb + y] =
                        a.act(g, x) * nb + b.act(h, y);
    return FiniteGSet(std::move(prod), na * nb, std::move(action));
}

Rational stringy_euler(const FiniteGSet& a) {
    const FiniteGroup& g = a.group();
    std::int64_t total = 0;
    for (int x = 0; x < g.order(); ++x)
        for (int y = 0; y < g.order(); ++y) {
            if (g.mul(x, y) != g.mul(y, x)) continue;
            for (int p = 0; p < a.set_size(); ++p)
                if (a.act(x, p) == p && a.act(y, p) == p) ++total;
        }
    Rational result = Rational(total, g.order());
    if (!result.is_integer())
        throw Error(ErrorCode::Undefined, "stringy Euler characteristic is not integral");
    return result;
}

StackPtr quotient_stack(const FiniteGSet& a) {
    const FiniteGroup& g = a.group();
    std::vector<bool> seen(a.set_size(), false);
    std::vector<Stratum> strata;
    for (int p = 0; p < a.set_size(); ++p) {
        if (seen[p]) continue;
        std::set<int> orbit;
        for (int e = 0; e < g.order(); ++e) orbit.insert(a.act(e, p));
        for (int q : orbit) seen[q] = true;
        std::vector<int> stab;
        for (int e = 0; e < g.order(); ++e)
            if (a.act(e, p) == p) stab.push_back(e);
        strata.push_back(Stratum{"orbit" + std::to_string(strata.size()), 1,
                                 GroupExpr::finite_of(subgroup_group(g, stab))});
    }
    return make_stack(std::move(strata));
}

DhvwReport check_dhvw(const FiniteGSet& a) {
    DhvwReport report;
    report.commuting_pair_side = stringy_euler(a);
    StackPtr q = quotient_stack(a);
    report.orbifold_side =
        chi_weighted(ConstructibleFn::constant(q, Rational(1)), WeightFunction::o());
    report.ok = report.commuting_pair_side == report.orbifold_side;
    return report;
}

} // namespace eulerstack
