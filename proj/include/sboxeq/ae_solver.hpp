#pragma once

#include <optional>

#include "sboxeq/gf2.hpp"
#include "sboxeq/le_solver.hpp"
#include "sboxeq/sbox.hpp"
#include "sboxeq/sosm.hpp"

namespace sboxeq {

/// s1(l1 x + c1) == l2 s2(x) + c2 for every x.
struct EquivalenceWitness {
    BitMatrix l1;
    BitVec c1;
    BitMatrix l2;
    BitVec c2;

    bool operator==(const EquivalenceWitness&) const = default;
};

struct AeOptions {
    SolverOptions solver;
    /// false: skip the 2^n shift loop and search both maps as affine directly.
    bool zeroization = true;
    /// Worker threads for the shift loop. The result does not depend on it.
    unsigned jobs = 1;
};

struct AeResult {
    Verdict verdict = Verdict::NotEquivalent;
    std::optional<EquivalenceWitness> witness;
    CountStats stats;
    std::optional<unsigned> sosm_rank;  // empty when SOSM pruning is off
    std::optional<Word> shift;          // winning shift in the zeroization loop
    bool rank_mismatch = false;
};

/// Decides affine equivalence. Both boxes need equal (n, m) and the parity
/// condition. With SOSM pruning: rank precheck, normal forms, then one LE
/// search per input shift (smallest successful shift wins).
AeResult solve_ae(const SBox& s1, const SBox& s2, const AeOptions& options = {});

/// Linear equivalence on arbitrary inputs: rank precheck and normal forms as in
/// solve_ae, then a single solve_le. The witness has zero constants.
AeResult decide_le(const SBox& s1, const SBox& s2, const SolverOptions& options = {});

/// Witness in original coordinates from an LE solution between the zeroized
/// normal form of s1 and the normal form of s2 shifted by a. Verified before
/// returning; a failed verification throws std::logic_error.
EquivalenceWitness assemble_witness(const BitMatrix& inner_l1, const BitMatrix& inner_l2, Word a,
                                    const SosmNormalForm& nf1, const SosmNormalForm& nf2, const SBox& s1,
                                    const SBox& s2);

/// Witness in original coordinates from affine maps relating the two normal forms:
/// nf1.transformed(f1 x) == f2(nf2.transformed(x)).
EquivalenceWitness unconjugate(const AffineMap& f1, const AffineMap& f2, const SosmNormalForm& nf1,
                               const SosmNormalForm& nf2);

/// Exhaustive check of the defining relation plus invertibility of both matrices.
bool verify_witness(const SBox& s1, const SBox& s2, const EquivalenceWitness& w);

/// s1 = (l2, c2) o s2 o (l1, c1)^-1, i.e. the box that `w` relates to s2.
SBox equivalent_box(const SBox& s2, const EquivalenceWitness& w);

struct AePair {
    SBox s1;
    SBox s2;
    EquivalenceWitness witness;
};

/// s2 = base, s1 built from fresh random invertible affine maps.
AePair make_ae_pair(const SBox& base, Rng& rng);
AePair generate_ae_pair(BoxKind kind, unsigned n, std::uint64_t seed);

}  // namespace sboxeq
