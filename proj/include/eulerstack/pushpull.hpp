#pragma once

#include <optional>

#include "eulerstack/strata.hpp"

namespace eulerstack {

// Stabilizer-change data for one stratum of a morphism. Lean mode carries
// only the two Euler characteristics entering m_phi; Rich mode carries the
// actual homomorphism between finite stabilizers, from which those numbers
// are recomputed. Representable means trivial kernel: kernel chi 1 in lean
// mode, injective hom in rich mode.
struct StabData {
    enum class Mode { Lean, Rich };

    Mode mode = Mode::Lean;
    std::int64_t kernel_chi = 1;   // Lean: declared chi(Ker phi_*)
    std::int64_t quotient_chi = 1; // Lean: declared chi(Iso(phi x)/phi(Iso x))
    std::optional<GroupHom> hom;   // Rich

    static StabData lean(std::int64_t kernel_chi, std::int64_t quotient_chi);
    static StabData rich(GroupHom hom);

    bool is_rich() const { return mode == Mode::Rich; }
    bool representable() const;
    std::int64_t kernel_chi_value() const;

    // m_phi at a point with this stabilizer data: quotient chi over kernel
    // chi. Throws ZeroKernelChi when the kernel chi vanishes.
    Rational m_value() const;

    friend bool operator==(const StabData& a, const StabData& b);
    friend bool operator!=(const StabData& a, const StabData& b) { return !(a == b); }
};

struct MorphismRecord {
    std::string target_id;
    std::int64_t fiber_chi = 1;
    StabData stab;

    friend bool operator==(const MorphismRecord& a, const MorphismRecord& b) {
        return a.target_id == b.target_id && a.fiber_chi == b.fiber_chi && a.stab == b.stab;
    }
};

// A morphism of stratified stacks: each source stratum maps onto one target
// stratum, equifibered with the declared fiber chi, carrying stabilizer
// data. The optional remainder record maps the source remainder to the
// target remainder; a source remainder without one models a morphism that
// is not of finite type.
class StackMorphism {
public:
    StackMorphism(StackPtr source, StackPtr target,
                  std::map<std::string, MorphismRecord> records,
                  std::optional<MorphismRecord> remainder = std::nullopt);

    const StackPtr& source() const { return source_; }
    const StackPtr& target() const { return target_; }
    const std::map<std::string, MorphismRecord>& records() const { return records_; }
    const std::optional<MorphismRecord>& remainder() const { return remainder_; }

    const MorphismRecord& record(const std::string& source_id) const;

    bool finite_type() const { return !source_->has_remainder() || remainder_.has_value(); }
    bool representable() const;

    friend bool operator==(const StackMorphism& a, const StackMorphism& b) {
        return *a.source_ == *b.source_ && *a.target_ == *b.target_ &&
               a.records_ == b.records_ && a.remainder_ == b.remainder_;
    }
    friend bool operator!=(const StackMorphism& a, const StackMorphism& b) {
        return !(a == b);
    }

private:
    StackPtr source_;
    StackPtr target_;
    std::map<std::string, MorphismRecord> records_;
    std::optional<MorphismRecord> remainder_;
};

struct ValidationReport {
    bool ok = true;
    std::string message;
};

// Checks every morphism invariant and reports the first violation instead
// of throwing: record coverage, target existence, the equifibered identity
// chi(s) = fiber_chi(s) * chi(target s), rich-mode endpoint groups, and
// remainder bookkeeping.
ValidationReport validate_morphism(const StackMorphism& m);

// Identity on a stack. Strata with finite stabilizers get rich identity
// homs; symbolic stabilizers and the remainder get lean (1, 1) data.
StackMorphism identity_morphism(const StackPtr& stack);

// CF^na: value at a target stratum t is the sum of f(s) * fiber_chi(s) over
// source strata above t.
ConstructibleFn pushforward_naive(const StackMorphism& m, const ConstructibleFn& f);

// CF_w = w^{-1} . CF^na(w f). Defined when w is finite on every source
// stratum and nonzero on every target stratum.
ConstructibleFn pushforward_weighted(const StackMorphism& m, const ConstructibleFn& f,
                                     const WeightFunction& w);

// m_phi on the named source stratum.
Rational m_phi(const StackMorphism& m, const std::string& source_id);

// CF^stk = CF^na(m_phi . f). The kernel chi must be nonzero on every source
// stratum; the lenient flag relaxes the check to supp f, off by default and
// excluded from the acceptance suites.
ConstructibleFn pushforward_stack(const StackMorphism& m, const ConstructibleFn& f,
                                  bool lenient = false);

// m2 after m1. Rich data composes homs; lean data composes only in the
// representable case, where the kernel stays trivial and the quotient chi
// values multiply. Anything else is refused rather than invented.
StackMorphism compose(const StackMorphism& m1, const StackMorphism& m2);

// f composed with the point map; needs the morphism to be of finite type so
// preimages of constructible sets stay constructible.
ConstructibleFn pullback(const StackMorphism& m, const ConstructibleFn& f);

enum class LcfMode { Naive, Stack };

// Pushforward of a locally constructible function along a finite type
// morphism; the default value pushes through the remainder record. Stack
// mode weights by m_phi and needs nonzero kernel chi everywhere, the
// remainder included.
ConstructibleFn pushforward_lcf(const StackMorphism& m, const ConstructibleFn& f,
                                LcfMode mode);

struct ConservationReport {
    Rational source_side;
    Rational target_side;
    bool ok = false;
};

// chi_w(S, f) against chi_w(T, CF_w f), computed independently.
ConservationReport check_conservation(const StackMorphism& m, const ConstructibleFn& f,
                                      const WeightFunction& w);

} // namespace eulerstack
