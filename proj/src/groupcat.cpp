#include "eulerstack/groupcat.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace eulerstack {

int FiniteGroup::inverse(int a) const {
    for (int b = 0; b < order(); ++b)
        if (table[a][b] == identity) return b;
    return -1; // unreachable for a validated group
}

FiniteGroup finite_group_from_table(const std::vector<std::string>& labels,
                                    const std::vector<std::vector<int>>& table) {
    const int n = (int)labels.size();
    if (n == 0)
        throw Error(ErrorCode::NotClosed, "empty element list");
    {
        std::set<std::string> seen(labels.begin(), labels.end());
        if ((int)seen.size() != n)
            throw Error(ErrorCode::NotClosed, "duplicate element labels");
    }
    if ((int)table.size() != n)
        throw Error(ErrorCode::NotClosed, "table has " + std::to_string(table.size()) +
                                              " rows for " + std::to_string(n) + " elements");
    for (int i = 0; i < n; ++i) {
        if ((int)table[i].size() != n)
            throw Error(ErrorCode::NotClosed, "row " + std::to_string(i) + " is not length " +
                                                  std::to_string(n));
        for (int j = 0; j < n; ++j)
            if (table[i][j] < 0 || table[i][j] >= n)
                throw Error(ErrorCode::NotClosed,
                            "entry (" + std::to_string(i) + "," + std::to_string(j) +
                                ") = " + std::to_string(table[i][j]) + " out of range");
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (table[table[i][j]][k] != table[i][table[j][k]])
                    throw Error(ErrorCode::NotAssociative,
                                "(" + labels[i] + "*" + labels[j] + ")*" + labels[k] + " != " +
                                    labels[i] + "*(" + labels[j] + "*" + labels[k] + ")");
    int identity = -1;
    for (int e = 0; e < n && identity < 0; ++e) {
        bool ok = true;
        for (int a = 0; a < n && ok; ++a)
            ok = table[e][a] == a && table[a][e] == a;
        if (ok) identity = e;
    }
    if (identity < 0)
        throw Error(ErrorCode::NoIdentity, "no two-sided identity element");
    for (int a = 0; a < n; ++a) {
        bool found = false;
        for (int b = 0; b < n && !found; ++b)
            found = table[a][b] == identity && table[b][a] == identity;
        if (!found)
            throw Error(ErrorCode::NoInverse, "element " + labels[a] + " has no inverse");
    }
    FiniteGroup g;
    g.labels = labels;
    g.table = table;
    g.identity = identity;
    return g;
}

FiniteGroup trivial_group() {
    return finite_group_from_table({"e"}, {{0}});
}

FiniteGroup cyclic_group(int n) {
    std::vector<std::string> labels(n);
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        labels[i] = "r" + std::to_string(i);
        for (int j = 0; j < n; ++j) table[i][j] = (i + j) % n;
    }
    return finite_group_from_table(labels, table);
}

FiniteGroup dihedral_group(int n) {
    // Elements 0..n-1 are rotations, n..2n-1 reflections.
    const int m = 2 * n;
    std::vector<std::string> labels(m);
    for (int i = 0; i < n; ++i) labels[i] = "r" + std::to_string(i);
    for (int i = 0; i < n; ++i) labels[n + i] = "s" + std::to_string(i);
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int x = 0; x < m; ++x)
        for (int y = 0; y < m; ++y) {
            bool rx = x < n, ry = y < n;
            int i = x % n, j = y % n;
            if (rx && ry) table[x][y] = (i + j) % n;
            else if (rx && !ry) table[x][y] = n + (j - i + n) % n;
            else if (!rx && ry) table[x][y] = n + (i + j) % n;
            else table[x][y] = (j - i + n) % n;
        }
    return finite_group_from_table(labels, table);
}

namespace {

void build_permutations(int n, std::vector<std::vector<int>>& out) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
}

std::string perm_label(const std::vector<int>& p) {
    std::string s = "(";
    for (size_t i = 0; i < p.size(); ++i) {
        if (i) s += " ";
        s += std::to_string(p[i]);
    }
    return s + ")";
}

} // namespace

FiniteGroup symmetric_group(int n) {
    if (n < 1 || n > 5)
        throw Error(ErrorCode::UnsupportedGroup, "symmetric_group supports n in [1,5]");
    std::vector<std::vector<int>> perms;
    build_permutations(n, perms);
    std::map<std::vector<int>, int> index;
    for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = (int)i;
    const int m = (int)perms.size();
    std::vector<std::string> labels(m);
    std::vector<std::vector<int>> table(m, std::vector<int>(m));
    for (int i = 0; i < m; ++i) {
        labels[i] = perm_label(perms[i]);
        for (int j = 0; j < m; ++j) {
            std::vector<int> comp(n);
            for (int x = 0; x < n; ++x) comp[x] = perms[i][perms[j][x]];
            table[i][j] = index[comp];
        }
    }
    return finite_group_from_table(labels, table);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const int na = a.order(), nb = b.order();
    std::vector<std::string> labels(na * nb);
    std::vector<std::vector<int>> table(na * nb, std::vector<int>(na * nb));
    auto idx = [nb](int i, int j) { return i * nb + j; };
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < nb; ++j) {
            labels[idx(i, j)] = "(" + a.labels[i] + "," + b.labels[j] + ")";
            for (int k = 0; k < na; ++k)
                for (int l = 0; l < nb; ++l)
                    table[idx(i, j)][idx(k, l)] = idx(a.table[i][k], b.table[j][l]);
        }
    return finite_group_from_table(labels, table);
}

bool is_subgroup(const FiniteGroup& g, const std::vector<int>& indices) {
    std::set<int> members(indices.begin(), indices.end());
    for (int i : members)
        if (i < 0 || i >= g.order()) return false;
    if (!members.count(g.identity)) return false;
    for (int a : members)
        for (int b : members)
            if (!members.count(g.mul(a, b))) return false;
    return true;
}

std::vector<int> subgroup_generated(const FiniteGroup& g, const std::vector<int>& generators) {
    std::set<int> members{g.identity};
    std::vector<int> frontier{g.identity};
    for (int x : generators)
        if (members.insert(x).second) frontier.push_back(x);
    while (!frontier.empty()) {
        int x = frontier.back();
        frontier.pop_back();
        for (int m : std::vector<int>(members.begin(), members.end())) {
            for (int p : {g.mul(x, m), g.mul(m, x)})
                if (members.insert(p).second) frontier.push_back(p);
        }
    }
    return {members.begin(), members.end()};
}

FiniteGroup subgroup_group(const FiniteGroup& g, const std::vector<int>& indices) {
    std::vector<int> sorted(indices);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (!is_subgroup(g, sorted))
        throw Error(ErrorCode::NotASubgroup, "element set is not a subgroup");
    std::map<int, int> reindex;
    for (size_t i = 0; i < sorted.size(); ++i) reindex[sorted[i]] = (int)i;
    const int n = (int)sorted.size();
    std::vector<std::string> labels(n);
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int i = 0; i < n; ++i) {
        labels[i] = g.labels[sorted[i]];
        for (int j = 0; j < n; ++j) table[i][j] = reindex[g.mul(sorted[i], sorted[j])];
    }
    return finite_group_from_table(labels, table);
}

std::vector<std::vector<int>> conjugacy_classes(const FiniteGroup& g) {
    const int n = g.order();
    std::vector<bool> seen(n, false);
    std::vector<std::vector<int>> classes;
    for (int x = 0; x < n; ++x) {
        if (seen[x]) continue;
        std::set<int> cls;
        for (int a = 0; a < n; ++a)
            cls.insert(g.mul(g.mul(a, x), g.inverse(a)));
        std::vector<int> sorted(cls.begin(), cls.end());
        for (int y : sorted) seen[y] = true;
        classes.push_back(std::move(sorted));
    }
    return classes;
}

GroupExpr GroupExpr::trivial() { return GroupExpr{}; }

GroupExpr GroupExpr::finite_of(FiniteGroup g) {
    GroupExpr e;
    e.kind = Kind::Finite;
    e.finite = std::move(g);
    return e;
}

GroupExpr GroupExpr::torus(int rank) {
    if (rank < 0) throw Error(ErrorCode::UnsupportedGroup, "negative torus rank");
    if (rank == 0) return trivial();
    GroupExpr e;
    e.kind = Kind::Torus;
    e.parameter = rank;
    return e;
}

GroupExpr GroupExpr::unipotent(int dim) {
    if (dim < 0) throw Error(ErrorCode::UnsupportedGroup, "negative unipotent dimension");
    if (dim == 0) return trivial();
    GroupExpr e;
    e.kind = Kind::Unipotent;
    e.parameter = dim;
    return e;
}

GroupExpr GroupExpr::general_linear(int n) {
    if (n < 0) throw Error(ErrorCode::UnsupportedGroup, "negative GL size");
    if (n == 0) return trivial();
    GroupExpr e;
    e.kind = Kind::GeneralLinear;
    e.parameter = n;
    return e;
}

GroupExpr GroupExpr::product(std::vector<GroupExpr> factors) {
    if (factors.empty())
        throw Error(ErrorCode::UnsupportedGroup, "empty product of groups");
    GroupExpr e;
    e.kind = Kind::Product;
    e.factors = std::move(factors);
    return e;
}

bool GroupExpr::contains_gl() const {
    if (kind == Kind::GeneralLinear) return true;
    for (const auto& f : factors)
        if (f.contains_gl()) return true;
    return false;
}

bool operator==(const GroupExpr& a, const GroupExpr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case GroupExpr::Kind::Trivial: return true;
        case GroupExpr::Kind::Finite: return a.finite == b.finite;
        case GroupExpr::Kind::Torus:
        case GroupExpr::Kind::Unipotent:
        case GroupExpr::Kind::GeneralLinear: return a.parameter == b.parameter;
        case GroupExpr::Kind::Product: return a.factors == b.factors;
    }
    return false;
}

std::string group_expr_str(const GroupExpr& g) {
    switch (g.kind) {
        case GroupExpr::Kind::Trivial: return "trivial";
        case GroupExpr::Kind::Finite:
            return "finite(" + std::to_string(g.finite.order()) + ")";
        case GroupExpr::Kind::Torus: return "torus(" + std::to_string(g.parameter) + ")";
        case GroupExpr::Kind::Unipotent:
            return "unipotent(" + std::to_string(g.parameter) + ")";
        case GroupExpr::Kind::GeneralLinear:
            return "gl(" + std::to_string(g.parameter) + ")";
        case GroupExpr::Kind::Product: {
            std::string s;
            for (const auto& f : g.factors) {
                if (!s.empty()) s += " x ";
                s += group_expr_str(f);
            }
            return s;
        }
    }
    return "?";
}

std::int64_t euler_char_group(const GroupExpr& g) {
    switch (g.kind) {
        case GroupExpr::Kind::Trivial: return 1;
        case GroupExpr::Kind::Finite: return g.finite.order();
        case GroupExpr::Kind::Torus: return 0;
        case GroupExpr::Kind::Unipotent: return 1;
        case GroupExpr::Kind::GeneralLinear: return 0;
        case GroupExpr::Kind::Product: {
            std::int64_t prod = 1;
            for (const auto& f : g.factors) prod *= euler_char_group(f);
            return prod;
        }
    }
    return 1;
}

std::int64_t orbifold_weight(const GroupExpr& g) {
    switch (g.kind) {
        case GroupExpr::Kind::Trivial: return 1;
        case GroupExpr::Kind::Finite: return (std::int64_t)conjugacy_classes(g.finite).size();
        // Abelian catalogue entries: the adjoint action is trivial, so the
        // quotient is the group itself and o coincides with chi.
        case GroupExpr::Kind::Torus:
        case GroupExpr::Kind::Unipotent: return euler_char_group(g);
        case GroupExpr::Kind::GeneralLinear:
            throw Error(ErrorCode::UnsupportedGroup,
                        "orbifold weight of gl(" + std::to_string(g.parameter) + ")");
        case GroupExpr::Kind::Product: {
            std::int64_t prod = 1;
            for (const auto& f : g.factors) prod *= orbifold_weight(f);
            return prod;
        }
    }
    return 1;
}

const char* WeightFunction::name() const {
    switch (kind) {
        case Kind::Naive: return "naive";
        case Kind::E: return "e";
        case Kind::InvE: return "inv-e";
        case Kind::O: return "o";
        case Kind::UserTable: return "user-table";
    }
    return "?";
}

ExtRational weight_value(const WeightFunction& w, const GroupExpr& g) {
    switch (w.kind) {
        case WeightFunction::Kind::Naive: return ExtRational(1);
        case WeightFunction::Kind::E: return ExtRational(euler_char_group(g));
        case WeightFunction::Kind::InvE:
            return ExtRational(euler_char_group(g)).reciprocal();
        case WeightFunction::Kind::O: return ExtRational(orbifold_weight(g));
        case WeightFunction::Kind::UserTable:
            for (const auto& [pattern, value] : w.table)
                if (pattern == g) return value;
            throw Error(ErrorCode::UndefinedWeight,
                        "no user-table entry for " + group_expr_str(g));
    }
    return ExtRational(1);
}

GroupHom make_hom(FiniteGroup source, FiniteGroup target, std::vector<int> images) {
    const int ns = source.order(), nt = target.order();
    if ((int)images.size() != ns)
        throw Error(ErrorCode::NotAHomomorphism,
                    "image list has " + std::to_string(images.size()) + " entries for " +
                        std::to_string(ns) + " elements");
    for (int i : images)
        if (i < 0 || i >= nt)
            throw Error(ErrorCode::NotAHomomorphism, "image index out of range");
    if (images[source.identity] != target.identity)
        throw Error(ErrorCode::NotAHomomorphism, "identity does not map to identity");
    for (int a = 0; a < ns; ++a)
        for (int b = 0; b < ns; ++b)
            if (images[source.mul(a, b)] != target.mul(images[a], images[b]))
                throw Error(ErrorCode::NotAHomomorphism,
                            "map(" + source.labels[a] + "*" + source.labels[b] +
                                ") != map(" + source.labels[a] + ")*map(" + source.labels[b] + ")");
    return GroupHom{std::move(source), std::move(target), std::move(images)};
}

GroupHom identity_hom(const FiniteGroup& g) {
    std::vector<int> images(g.order());
    for (int i = 0; i < g.order(); ++i) images[i] = i;
    return GroupHom{g, g, std::move(images)};
}

GroupHom trivial_hom(const FiniteGroup& source, const FiniteGroup& target) {
    return GroupHom{source, target, std::vector<int>(source.order(), target.identity)};
}

bool is_injective(const GroupHom& h) {
    std::set<int> seen(h.images.begin(), h.images.end());
    return (int)seen.size() == h.source.order();
}

GroupHom compose_homs(const GroupHom& h1, const GroupHom& h2) {
    if (h1.target != h2.source)
        throw Error(ErrorCode::NotAHomomorphism,
                    "hom composition endpoint mismatch");
    std::vector<int> images(h1.source.order());
    for (int i = 0; i < h1.source.order(); ++i) images[i] = h2.images[h1.images[i]];
    return GroupHom{h1.source, h2.target, std::move(images)};
}

KernelQuotient hom_kernel_quotient(const GroupHom& h) {
    std::int64_t kernel = 0;
    std::set<int> image;
    for (int i = 0; i < h.source.order(); ++i) {
        if (h.images[i] == h.target.identity) ++kernel;
        image.insert(h.images[i]);
    }
    std::int64_t image_size = (std::int64_t)image.size();
    return KernelQuotient{kernel, image_size, h.target.order() / image_size};
}

std::vector<DoubleCoset> double_cosets(const FiniteGroup& g,
                                       const std::vector<int>& a,
                                       const std::vector<int>& b) {
    if (!is_subgroup(g, a) || !is_subgroup(g, b))
        throw Error(ErrorCode::NotASubgroup, "double cosets need validated subgroups");
    const int n = g.order();
    std::vector<bool> assigned(n, false);
    std::vector<DoubleCoset> cosets;
    for (int beta = 0; beta < n; ++beta) {
        if (assigned[beta]) continue;
        std::set<int> coset;
        for (int x : a)
            for (int y : b)
                coset.insert(g.mul(g.mul(x, beta), y));
        DoubleCoset dc;
        dc.representative = beta;
        dc.elements.assign(coset.begin(), coset.end());
        for (int e : dc.elements) assigned[e] = true;
        cosets.push_back(std::move(dc));
    }
    return cosets;
}

} // namespace eulerstack
