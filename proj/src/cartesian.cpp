#include "eulerstack/cartesian.hpp"

#include <algorithm>

namespace eulerstack {

namespace {

void require_rich_finite(const StackMorphism& m, const char* name) {
    if (m.source()->has_remainder() || m.target()->has_remainder())
        throw Error(ErrorCode::NotFiniteType,
                    std::string("fiber products need finite type stacks (") + name + ")");
    for (const auto& s : m.source()->strata())
        if (s.stabilizer.kind != GroupExpr::Kind::Finite)
            throw Error(ErrorCode::NonFiniteStabilizer,
                        "stratum '" + s.id + "' of " + name + " has a non-finite stabilizer");
    for (const auto& [id, rec] : m.records())
        if (!rec.stab.is_rich())
            throw Error(ErrorCode::InsufficientStabData,
                        std::string(name) + " needs rich stabilizer data on every stratum");
}

// The stabilizer of the double-coset point for representative beta:
// the subgroup {(alpha, gamma) : psi(alpha) beta = beta phi(gamma)} of
// G_x x G_z, kept together with the component indices of its elements.
struct CosetStabilizer {
    FiniteGroup group;
    std::vector<std::pair<int, int>> members; // (index in G_x, index in G_z)
};

CosetStabilizer coset_stabilizer(const FiniteGroup& gy, const GroupHom& psi_hom,
                                 const GroupHom& phi_hom, int beta) {
    const FiniteGroup& gx = psi_hom.source;
    const FiniteGroup& gz = phi_hom.source;
    FiniteGroup pair_group = direct_product(gx, gz);
    std::vector<int> indices;
    std::vector<std::pair<int, int>> members;
    for (int a = 0; a < gx.order(); ++a)
        for (int c = 0; c < gz.order(); ++c)
            if (gy.mul(psi_hom.apply(a), beta) == gy.mul(beta, phi_hom.apply(c))) {
                indices.push_back(a * gz.order() + c);
                members.emplace_back(a, c);
            }
    // indices are already ascending, matching subgroup_group's element order.
    return CosetStabilizer{subgroup_group(pair_group, indices), std::move(members)};
}

GroupHom component_hom(const CosetStabilizer& stab, const FiniteGroup& target,
                       bool first_component) {
    std::vector<int> images;
    images.reserve(stab.members.size());
    for (const auto& [a, c] : stab.members) images.push_back(first_component ? a : c);
    return make_hom(stab.group, target, std::move(images));
}

std::string unique_id(const std::string& base, const std::vector<Stratum>& so_far) {
    std::string id = base;
    int n = 0;
    auto taken = [&](const std::string& candidate) {
        for (const auto& s : so_far)
            if (s.id == candidate) return true;
        return false;
    };
    while (taken(id)) id = base + "~" + std::to_string(++n);
    return id;
}

} // namespace

CartesianSquare fiber_product(const StackMorphism& phi, const StackMorphism& psi) {
    ValidationReport rp = validate_morphism(phi);
    if (!rp.ok) throw Error(ErrorCode::InvalidMorphism, "phi: " + rp.message);
    rp = validate_morphism(psi);
    if (!rp.ok) throw Error(ErrorCode::InvalidMorphism, "psi: " + rp.message);
    if (*phi.target() != *psi.target())
        throw Error(ErrorCode::StackMismatch, "phi and psi have different targets");
    require_rich_finite(phi, "phi");
    require_rich_finite(psi, "psi");
    for (const auto& t : phi.target()->strata())
        if (t.stabilizer.kind != GroupExpr::Kind::Finite)
            throw Error(ErrorCode::NonFiniteStabilizer,
                        "target stratum '" + t.id + "' has a non-finite stabilizer");
    if (!phi.representable())
        throw Error(ErrorCode::NotRepresentable, "phi must have injective stabilizer homs");

    std::vector<Stratum> e_strata;
    std::map<std::string, MorphismRecord> eta_records;
    std::map<std::string, MorphismRecord> theta_records;

    for (const auto& sf : phi.source()->strata()) {
        const MorphismRecord& rf = phi.record(sf.id);
        for (const auto& sg : psi.source()->strata()) {
            const MorphismRecord& rg = psi.record(sg.id);
            if (rf.target_id != rg.target_id) continue;
            const Stratum& t = phi.target()->stratum(rf.target_id);
            const FiniteGroup& gy = t.stabilizer.finite;
            const GroupHom& phi_hom = *rf.stab.hom; // G_z -> G_y, z in s_F
            const GroupHom& psi_hom = *rg.stab.hom; // G_x -> G_y, x in s_G

            std::vector<int> left, right;
            for (int a = 0; a < psi_hom.source.order(); ++a)
                left.push_back(psi_hom.apply(a));
            for (int c = 0; c < phi_hom.source.order(); ++c)
                right.push_back(phi_hom.apply(c));
            std::sort(left.begin(), left.end());
            left.erase(std::unique(left.begin(), left.end()), left.end());
            std::sort(right.begin(), right.end());
            right.erase(std::unique(right.begin(), right.end()), right.end());

            auto cosets = double_cosets(gy, left, right);
            for (size_t k = 0; k < cosets.size(); ++k) {
                CosetStabilizer stab =
                    coset_stabilizer(gy, psi_hom, phi_hom, cosets[k].representative);
                std::string id = unique_id(
                    sf.id + "&" + sg.id + "#" + std::to_string(k), e_strata);
                e_strata.push_back(Stratum{
                    id, t.coarse_chi * rf.fiber_chi * rg.fiber_chi,
                    GroupExpr::finite_of(stab.group)});
                eta_records.emplace(
                    id, MorphismRecord{sg.id, rf.fiber_chi,
                                       StabData::rich(component_hom(stab, psi_hom.source,
                                                                    true))});
                theta_records.emplace(
                    id, MorphismRecord{sf.id, rg.fiber_chi,
                                       StabData::rich(component_hom(stab, phi_hom.source,
                                                                    false))});
            }
        }
    }

    StackPtr e = make_stack(std::move(e_strata));
    StackMorphism eta(e, psi.source(), std::move(eta_records));
    StackMorphism theta(e, phi.source(), std::move(theta_records));

    // The construction is supposed to deliver these; fail loudly if not.
    rp = validate_morphism(eta);
    if (!rp.ok) throw Error(ErrorCode::InvalidMorphism, "constructed eta: " + rp.message);
    rp = validate_morphism(theta);
    if (!rp.ok) throw Error(ErrorCode::InvalidMorphism, "constructed theta: " + rp.message);
    if (!eta.representable())
        throw Error(ErrorCode::NotRepresentable, "constructed eta is not representable");

    return CartesianSquare{phi, psi, e, std::move(eta), std::move(theta)};
}

CommutationReport verify_commutation(const CartesianSquare& square,
                                     const ConstructibleSet& c) {
    ConstructibleFn delta = ConstructibleFn::indicator(c);
    ConstructibleFn via_eta =
        pushforward_stack(square.eta, pullback(square.theta, delta));
    ConstructibleFn via_psi =
        pullback(square.psi, pushforward_stack(square.phi, delta));
    CommutationReport report;
    for (const auto& s : square.psi.source()->strata()) {
        CommutationRow row{s.id, via_eta.value_on(s.id), via_psi.value_on(s.id)};
        if (row.via_eta != row.via_psi) report.ok = false;
        report.rows.push_back(std::move(row));
    }
    return report;
}

} // namespace eulerstack
