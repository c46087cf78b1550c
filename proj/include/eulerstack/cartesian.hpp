#pragma once

#include "eulerstack/pushpull.hpp"

namespace eulerstack {

// The fiber product E = F x_H G of phi: F -> H and psi: G -> H, with the
// two projections. Over each matching stratum pair (s_F, s_G) the points of
// E are indexed by double cosets psi(G_x) beta phi(G_z) of the H-stratum's
// stabilizer; eta is representable by construction, theta is of finite
// type.
struct CartesianSquare {
    StackMorphism phi;   // F -> H, representable
    StackMorphism psi;   // G -> H
    StackPtr e;          // F x_H G
    StackMorphism eta;   // E -> G
    StackMorphism theta; // E -> F
};

// Requires rich morphisms over finite stabilizers: phi representable, all
// three stacks of finite type. The stabilizer of a double-coset stratum is
// the finite group {(alpha, gamma) : psi(alpha) beta = beta phi(gamma)},
// enumerated by brute force.
CartesianSquare fiber_product(const StackMorphism& phi, const StackMorphism& psi);

struct CommutationRow {
    std::string target_id; // stratum of G
    Rational via_eta;      // (CF^stk(eta) . theta^*) delta_C
    Rational via_psi;      // (psi^* . CF^stk(phi)) delta_C
};

struct CommutationReport {
    bool ok = true;
    std::vector<CommutationRow> rows;
};

// Both routes around the square applied to the indicator of C, compared
// exactly stratum by stratum on G.
CommutationReport verify_commutation(const CartesianSquare& square,
                                     const ConstructibleSet& c);

} // namespace eulerstack
