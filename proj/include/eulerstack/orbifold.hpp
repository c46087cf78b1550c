#pragma once

#include "eulerstack/strata.hpp"

namespace eulerstack {

// A finite group acting on a finite set of points. Construction checks the
// action axioms in full: the identity acts trivially and
// action(gh, x) = action(g, action(h, x)) for all g, h, x.
class FiniteGSet {
public:
    FiniteGSet(FiniteGroup group, int set_size, std::vector<std::vector<int>> action);

    const FiniteGroup& group() const { return group_; }
    int set_size() const { return set_size_; }
    int act(int element, int point) const { return action_[element][point]; }
    const std::vector<std::vector<int>>& action() const { return action_; }

    friend bool operator==(const FiniteGSet& a, const FiniteGSet& b) {
        return a.group_ == b.group_ && a.set_size_ == b.set_size_ && a.action_ == b.action_;
    }

private:
    FiniteGroup group_;
    int set_size_;
    std::vector<std::vector<int>> action_; // action_[g][x] = g . x
};

FiniteGSet trivial_action(const FiniteGroup& g, int set_size);

// G acting on the left cosets of the subgroup generated by the given
// elements; the classic source of transitive actions.
FiniteGSet coset_action(const FiniteGroup& g, const std::vector<int>& subgroup_elements);

// Same group acting on the disjoint union of the two point sets.
FiniteGSet gset_disjoint_union(const FiniteGSet& a, const FiniteGSet& b);

// (G x H)-set on the product of the point sets.
FiniteGSet gset_product(const FiniteGSet& a, const FiniteGSet& b);

// The physicists' orbifold Euler characteristic:
// (1/|G|) sum over commuting pairs (g, h) of |{x : gx = hx = x}|.
// The result is always an integer.
Rational stringy_euler(const FiniteGSet& a);

// One stratum per orbit, chi 1, stabilizer the point stabilizer extracted
// as a standalone finite group. Orbits are ordered by least point.
StackPtr quotient_stack(const FiniteGSet& a);

struct DhvwReport {
    Rational commuting_pair_side; // stringy_euler
    Rational orbifold_side;       // chi_O of the quotient stack
    bool ok = false;
};

// The two computations of the orbifold Euler characteristic, through
// genuinely different code paths: commuting pairs against conjugacy-class
// counts on the quotient stack.
DhvwReport check_dhvw(const FiniteGSet& a);

} // namespace eulerstack
