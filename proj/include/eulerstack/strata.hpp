#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "eulerstack/groupcat.hpp"
#include "eulerstack/rational.hpp"

namespace eulerstack {

// One piece of a stratified stack: a coarse variety whose Euler
// characteristic is known, carrying a constant stabilizer group.
struct Stratum {
    std::string id;
    std::int64_t coarse_chi = 0;
    GroupExpr stabilizer;

    friend bool operator==(const Stratum& a, const Stratum& b) {
        return a.id == b.id && a.coarse_chi == b.coarse_chi && a.stabilizer == b.stabilizer;
    }
};

// A finite list of strata. has_remainder = true models a stack that is only
// locally of finite type: the unlisted part exists but is never measured,
// and functions only take their default value there.
class StratifiedStack {
public:
    StratifiedStack(std::vector<Stratum> strata, bool has_remainder);

    const std::vector<Stratum>& strata() const { return strata_; }
    bool has_remainder() const { return has_remainder_; }
    bool finite_type() const { return !has_remainder_; }

    bool contains(const std::string& id) const { return index_.count(id) != 0; }
    const Stratum& stratum(const std::string& id) const;

    friend bool operator==(const StratifiedStack& a, const StratifiedStack& b) {
        return a.has_remainder_ == b.has_remainder_ && a.strata_ == b.strata_;
    }
    friend bool operator!=(const StratifiedStack& a, const StratifiedStack& b) {
        return !(a == b);
    }

private:
    std::vector<Stratum> strata_;
    bool has_remainder_;
    std::map<std::string, size_t> index_;
};

using StackPtr = std::shared_ptr<const StratifiedStack>;

StackPtr make_stack(std::vector<Stratum> strata, bool has_remainder = false);

// The catalogue varieties with built-in chi values: affine m-space as a
// single stratum with chi 1, projective m-space as its cell decomposition
// (m+1 strata of chi 1), and the 1-torus K^x with chi 0. Stabilizers are
// trivial.
StackPtr affine_space(int m);
StackPtr projective_space(int m);
StackPtr torus_variety();

// pt with a chosen stabilizer group, i.e. the classifying stack [pt/G].
StackPtr point_stack(const GroupExpr& stabilizer, const std::string& id = "pt");

// Stratum-wise product: ids join with "*", chi values multiply, stabilizers
// form products. The remainder absorbs products involving either remainder.
StackPtr product_stack(const StackPtr& a, const StackPtr& b);

// A finite union of strata. Never includes the remainder.
class ConstructibleSet {
public:
    ConstructibleSet(StackPtr stack, std::set<std::string> members);

    const StackPtr& stack() const { return stack_; }
    const std::set<std::string>& members() const { return members_; }

    friend bool operator==(const ConstructibleSet& a, const ConstructibleSet& b) {
        return *a.stack_ == *b.stack_ && a.members_ == b.members_;
    }

private:
    StackPtr stack_;
    std::set<std::string> members_;
};

ConstructibleSet full_set(const StackPtr& stack);

enum class SetOp { Union, Intersect, Difference };

ConstructibleSet set_ops(SetOp op, const ConstructibleSet& a, const ConstructibleSet& b);

// A rational-valued function given by per-stratum values plus a default on
// everything unlisted, including the remainder. Constructible means the
// default is zero; a nonzero default on a stack with a remainder is merely
// locally constructible. Stored values equal to the default are dropped, so
// equal functions compare equal.
class ConstructibleFn {
public:
    ConstructibleFn(StackPtr stack, std::map<std::string, Rational> values,
                    Rational default_value = Rational(0));

    static ConstructibleFn constant(const StackPtr& stack, const Rational& c);
    static ConstructibleFn indicator(const ConstructibleSet& set);

    const StackPtr& stack() const { return stack_; }
    const std::map<std::string, Rational>& values() const { return values_; }
    const Rational& default_value() const { return default_value_; }

    Rational value_on(const std::string& id) const;
    bool constructible() const { return default_value_.is_zero(); }
    bool integer_valued() const;

    friend bool operator==(const ConstructibleFn& a, const ConstructibleFn& b) {
        return *a.stack_ == *b.stack_ && a.default_value_ == b.default_value_ &&
               a.values_ == b.values_;
    }
    friend bool operator!=(const ConstructibleFn& a, const ConstructibleFn& b) {
        return !(a == b);
    }

private:
    StackPtr stack_;
    std::map<std::string, Rational> values_;
    Rational default_value_;
};

enum class PointwiseOp { Add, Sub, Mul };

// Pointwise algebra including the default slot. Multiplying a constructible
// function into anything keeps the default zero, which is the ideal property
// of CF inside LCF.
ConstructibleFn cf_pointwise(PointwiseOp op, const ConstructibleFn& f,
                             const ConstructibleFn& g);
ConstructibleFn cf_scale(const Rational& c, const ConstructibleFn& f);

// chi of the coarse space of a constructible set: additivity over strata.
std::int64_t chi_naive(const ConstructibleSet& c);

// Integral of f against the naive Euler characteristic measure. A nonzero
// default on a stack with a remainder would have to measure the remainder,
// hence NotConstructible.
Rational chi_naive_weighted(const ConstructibleFn& f);

// chi_w(S, f) = chi^na(S, w f), evaluated only on the support of f; the
// weight may be infinite away from the support. UndefinedWeight if an
// infinite weight meets the support.
Rational chi_weighted(const ConstructibleFn& f, const WeightFunction& w);

// chi_w of a set, i.e. of its indicator function.
Rational chi_weighted_set(const ConstructibleSet& c, const WeightFunction& w);

} // namespace eulerstack
