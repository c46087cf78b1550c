#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "eulerstack/rational.hpp"

namespace eulerstack {

// A finite group given by its full multiplication table. Construction runs
// the complete axiom check (closure, associativity, identity, inverses), so
// a FiniteGroup value is always a genuine group. Desk-scale orders make the
// cubic associativity scan cheap.
struct FiniteGroup {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table; // table[i][j] = index of g_i * g_j
    int identity = 0;

    int order() const { return (int)labels.size(); }
    int mul(int a, int b) const { return table[a][b]; }
    int inverse(int a) const;

    friend bool operator==(const FiniteGroup& a, const FiniteGroup& b) {
        return a.labels == b.labels && a.table == b.table && a.identity == b.identity;
    }
    friend bool operator!=(const FiniteGroup& a, const FiniteGroup& b) { return !(a == b); }
};

// Validates the table and locates the identity. Errors name the first
// violated axiom: NotClosed, NotAssociative, NoIdentity, NoInverse.
FiniteGroup finite_group_from_table(const std::vector<std::string>& labels,
                                    const std::vector<std::vector<int>>& table);

FiniteGroup trivial_group();
FiniteGroup cyclic_group(int n);
FiniteGroup dihedral_group(int n);   // order 2n, n >= 1
FiniteGroup symmetric_group(int n);  // n <= 5
FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

// Standalone group on a subset of g's elements; the subset must contain the
// identity and be closed under multiplication (inverses follow for finite
// groups). indices may be given in any order.
FiniteGroup subgroup_group(const FiniteGroup& g, const std::vector<int>& indices);

// Closure of the given elements under multiplication.
std::vector<int> subgroup_generated(const FiniteGroup& g, const std::vector<int>& generators);

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& indices);

// Orbits of the conjugation action x -> a x a^{-1}. Each class is sorted,
// and classes are ordered by their least element.
std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g);

// The symbolic catalogue of affine algebraic groups the engine can measure
// exactly: finite groups, tori, unipotent (vector) groups, general linear
// groups, and finite products of these. Torus(0), Unipotent(0) and GL(0)
// normalize to Trivial.
struct GroupExpr {
    enum class Kind { Trivial, Finite, Torus, Unipotent, GeneralLinear, Product };

    Kind kind = Kind::Trivial;
    FiniteGroup finite;             // Kind::Finite
    int parameter = 0;              // rank / dimension / n
    std::vector<GroupExpr> factors; // Kind::Product

    static GroupExpr trivial();
    static GroupExpr finite_of(FiniteGroup g);
    static GroupExpr torus(int rank);
    static GroupExpr unipotent(int dim);
    static GroupExpr general_linear(int n);
    static GroupExpr product(std::vector<GroupExpr> factors);

    bool contains_gl() const;

    friend bool operator==(const GroupExpr& a, const GroupExpr& b);
    friend bool operator!=(const GroupExpr& a, const GroupExpr& b) { return !(a == b); }
};

// Compact display form, e.g. "Z4 x T^1" becomes "finite(4) x torus(1)".
std::string group_expr_str(const GroupExpr& g);

// chi of the group as a variety: finite G -> |G|, torus and GL -> 0,
// unipotent -> 1, products multiply.
std::int64_t euler_char_group(const GroupExpr& g);

// o(G), the naive chi of the adjoint quotient [G/Ad G]: the number of
// conjugacy classes for finite G, and equal to chi(G) for the abelian
// catalogue entries. Rejects GL(n), n >= 1: the adjoint quotient of a
// positive-dimensional non-abelian group is outside the catalogue.
std::int64_t orbifold_weight(const GroupExpr& g);

// The allowable weight functions of the engine. Naive is constantly 1,
// E is chi(G), InvE is 1/chi(G) with value infinity where chi(G) = 0,
// O is the orbifold weight. UserTable matches group expressions
// structurally against an explicit table.
struct WeightFunction {
    enum class Kind { Naive, E, InvE, O, UserTable };

    Kind kind = Kind::Naive;
    std::vector<std::pair<GroupExpr, ExtRational>> table; // Kind::UserTable

    static WeightFunction naive() { return {Kind::Naive, {}}; }
    static WeightFunction e() { return {Kind::E, {}}; }
    static WeightFunction inv_e() { return {Kind::InvE, {}}; }
    static WeightFunction o() { return {Kind::O, {}}; }
    static WeightFunction user_table(std::vector<std::pair<GroupExpr, ExtRational>> t) {
        return {Kind::UserTable, std::move(t)};
    }

    const char* name() const;
};

// w(G) as an extended rational. UserTable misses and O on GL report errors.
ExtRational weight_value(const WeightFunction& w, const GroupExpr& g);

// A homomorphism between finite groups, validated on construction:
// map(xy) = map(x)map(y) for all pairs, and map(identity) = identity.
struct GroupHom {
    FiniteGroup source;
    FiniteGroup target;
    std::vector<int> images; // images[i] = target index of source element i

    int apply(int i) const { return images[i]; }

    friend bool operator==(const GroupHom& a, const GroupHom& b) {
        return a.source == b.source && a.target == b.target && a.images == b.images;
    }
    friend bool operator!=(const GroupHom& a, const GroupHom& b) { return !(a == b); }
};

GroupHom make_hom(FiniteGroup source, FiniteGroup target, std::vector<int> images);
GroupHom identity_hom(const FiniteGroup& g);
GroupHom trivial_hom(const FiniteGroup& source, const FiniteGroup& target);

bool is_injective(const GroupHom& h);

// h2 after h1; requires h1.target == h2.source.
GroupHom compose_homs(const GroupHom& h1, const GroupHom& h2);

struct KernelQuotient {
    std::int64_t kernel_size;
    std::int64_t image_size;
    std::int64_t coset_count; // |target| / |image|
};

// Exact sizes entering m_phi: |Ker|, |Im|, and the number of cosets of the
// image in the target. kernel_size * image_size = |source| always.
KernelQuotient hom_kernel_quotient(const GroupHom& h);

struct DoubleCoset {
    int representative;         // least element index in the coset
    std::vector<int> elements;  // sorted
    int size() const { return (int)elements.size(); }
};

// Partition of g into double cosets A b B for subgroups A, B (given as
// element index sets, validated). Cosets are ordered by representative.
std::vector<DoubleCoset> double_cosets(const FiniteGroup& g,
                                       const std::vector<int>& a,
                                       const std::vector<int>& b);

} // namespace eulerstack
