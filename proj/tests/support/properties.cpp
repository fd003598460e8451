#include "properties.hpp"

#include <sstream>

#include "oracles.hpp"
#include "sboxeq/kernels.hpp"
#include "sboxeq/sosm.hpp"
#include "sboxeq/xor_basis.hpp"

namespace props {

using namespace sboxeq;

namespace {

std::string describe(const char* what, unsigned n, std::uint64_t seed) {
    std::ostringstream os;
    os << what << " (n=" << n << ", case seed " << seed << ")";
    return os.str();
}

struct Instance {
    unsigned n;
    std::uint64_t seed;
    AePair pair;
};

Instance random_instance(Rng& master, unsigned lo, unsigned hi) {
    const unsigned n = lo + static_cast<unsigned>(master.below(hi - lo + 1));
    const std::uint64_t seed = master.next();
    Rng rng(seed);
    SBox base = random_parity_box(n, rng);
    return {n, seed, make_ae_pair(base, rng)};
}

}  // namespace

SBox random_parity_box(unsigned n, Rng& rng) {
    return rng.below(2) ? random_permutation(n, rng) : random_balanced(n, n, rng);
}

EquivalenceWitness to_normal_coordinates(const EquivalenceWitness& w, const SosmNormalForm& nf1,
                                         const SosmNormalForm& nf2) {
    const BitMatrix a1t = nf1.right_a.transpose();
    const BitMatrix t2 = invert(nf2.right_a.transpose());
    const BitMatrix b2_inv = invert(nf2.left_b);
    return {multiply(multiply(a1t, w.l1), t2), multiply(a1t, w.c1), multiply(multiply(nf1.left_b, w.l2), b2_inv),
            multiply(nf1.left_b, w.c2)};
}

Outcome sosm_shift_invariance(unsigned cases, std::uint64_t seed) {
    Outcome out;
    Rng master(seed);
    for (unsigned k = 0; k < cases; ++k) {
        const unsigned n = 2 + static_cast<unsigned>(master.below(7));
        const std::uint64_t s = master.next();
        Rng rng(s);
        const SBox box = random_parity_box(n, rng);
        const Word a = static_cast<Word>(rng.below(box.size()));
        const Word b = static_cast<Word>(rng.below(Word{1} << box.m()));
        const SBox moved = apply_affine(box, AffineMap(BitMatrix::identity(n), BitVec(n, a)),
                                        AffineMap(BitMatrix::identity(box.m()), BitVec(box.m(), b)));
        ++out.cases;
        if (!(sosm(moved) == sosm(box)) || !(oracle::sosm(moved) == oracle::sosm(box))) {
            out.fail(describe("SOSM changed under input/output translation", n, s));
        }
    }
    return out;
}

Outcome sosm_matrix_identity(unsigned cases, std::uint64_t seed) {
    Outcome out;
    Rng master(seed);
    for (unsigned k = 0; k < cases; ++k) {
        Instance in = random_instance(master, 2, 8);
        // Every fourth case drops the constants (the purely linear form).
        if (k % 4 == 0) {
            in.pair.witness.c1 = BitVec::zero(in.n);
            in.pair.witness.c2 = BitVec::zero(in.n);
            in.pair.s1 = equivalent_box(in.pair.s2, in.pair.witness);
        }
        const auto& w = in.pair.witness;
        ++out.cases;
        // M(S1) (L1^T)^-1 == L2 M(S2), with the products from the dense oracle.
        const auto lhs = oracle::multiply(oracle::dense(oracle::sosm(in.pair.s1)),
                                          oracle::dense(invert(w.l1.transpose())));
        const auto rhs = oracle::multiply(oracle::dense(w.l2), oracle::dense(oracle::sosm(in.pair.s2)));
        if (lhs != rhs) out.fail(describe("M(S1)(L1^T)^-1 != L2 M(S2)", in.n, in.seed));
        if (rank(sosm(in.pair.s1)) != rank(sosm(in.pair.s2))) {
            out.fail(describe("SOSM ranks differ for an equivalent pair", in.n, in.seed));
        }
    }
    return out;
}

Outcome normal_form_blocks(unsigned cases, std::uint64_t seed) {
    Outcome out;
    Rng master(seed);
    for (unsigned k = 0; k < cases; ++k) {
        const Instance in = random_instance(master, 2, 5);
        const AeResult res = solve_ae(in.pair.s1, in.pair.s2);
        ++out.cases;
        if (res.verdict != Verdict::Found) {
            out.fail(describe("constructed pair not found", in.n, in.seed));
            continue;
        }
        const SosmNormalForm nf1 = normal_form(in.pair.s1);
        const SosmNormalForm nf2 = normal_form(in.pair.s2);
        const unsigned r = nf1.rank_r;
        const unsigned n = in.n;
        // Solver witness and the constructing one both satisfy the block shape.
        for (const EquivalenceWitness* w : {&*res.witness, &in.pair.witness}) {
            const EquivalenceWitness t = to_normal_coordinates(*w, nf1, nf2);
            for (Word x = 0; x < nf1.transformed.size(); ++x) {
                if (nf1.transformed(t.l1.apply(x) ^ t.c1.bits()) != (t.l2.apply(nf2.transformed(x)) ^ t.c2.bits())) {
                    out.fail(describe("normal-coordinate witness does not relate the normal forms", n, in.seed));
                    break;
                }
            }
            if (r == 0) continue;
            const BitMatrix l1_21 = t.l1.block(r, 0, n - r, r);
            const BitMatrix l2_21 = t.l2.block(r, 0, n - r, r);
            if (!l1_21.is_zero() || !l2_21.is_zero()) out.fail(describe("lower-left block nonzero", n, in.seed));
            const BitMatrix l1_11 = t.l1.block(0, 0, r, r);
            const BitMatrix l2_11 = t.l2.block(0, 0, r, r);
            if (!is_invertible(l1_11) || !(invert(l1_11.transpose()) == l2_11)) {
                out.fail(describe("((L1^(11))^T)^-1 != L2^(11)", n, in.seed));
            }
            // Dot products of suffix-1 pairs survive the maps.
            const Word span = Word{1} << r;
            for (Word x = 0; x < span; ++x)
                for (Word y = 0; y < span; ++y)
                    if (dot(x, y) != dot(t.l1.apply(x) & (span - 1), t.l2.apply(y) & (span - 1))) {
                        out.fail(describe("suffix-1 dot product not preserved", n, in.seed));
                        x = y = span;
                    }
        }
    }
    return out;
}

Outcome block_equation_system(unsigned cases, std::uint64_t seed) {
    Outcome out;
    Rng master(seed);
    for (unsigned k = 0; k < cases; ++k) {
        const Instance in = random_instance(master, 2, 8);
        const SosmNormalForm nf1 = normal_form(in.pair.s1);
        const SosmNormalForm nf2 = normal_form(in.pair.s2);
        const unsigned r = nf1.rank_r;
        const unsigned n = in.n;
        ++out.cases;
        if (r != nf2.rank_r) {
            out.fail(describe("normal-form ranks differ", n, in.seed));
            continue;
        }
        const EquivalenceWitness t = to_normal_coordinates(in.pair.witness, nf1, nf2);
        using oracle::dense;
        using oracle::multiply;
        auto tr = [](const BitMatrix& m) { return m.transpose(); };
        const auto e_r = dense(BitMatrix::identity(r));
        const auto l1_11 = t.l1.block(0, 0, r, r);
        const auto l1_21 = t.l1.block(r, 0, n - r, r);
        const auto l2_11 = t.l2.block(0, 0, r, r);
        const auto l2_21 = t.l2.block(r, 0, n - r, r);
        bool good = multiply(dense(l2_11), dense(tr(l1_11))) == e_r;
        if (r < n) {
            good = good && oracle::packed(multiply(dense(l2_21), dense(tr(l1_11)))).is_zero();
            good = good && oracle::packed(multiply(dense(l2_11), dense(tr(l1_21)))).is_zero();
            good = good && oracle::packed(multiply(dense(l2_21), dense(tr(l1_21)))).is_zero();
        }
        // The whole product as well: L2 E L1^T == E.
        const auto e = dense(canonical_block(n, n, r));
        good = good && multiply(multiply(dense(t.l2), e), dense(tr(t.l1))) == e;
        if (!good) out.fail(describe("block equation system violated", n, in.seed));
    }
    return out;
}

Outcome xor_basis_span(unsigned cases, std::uint64_t seed) {
    Outcome out;
    Rng master(seed);
    for (unsigned k = 0; k < cases; ++k) {
        const unsigned width = 1 + static_cast<unsigned>(master.below(kMaxWidth));
        const std::uint64_t s = master.next();
        Rng rng(s);
        XorBasis basis(width);
        std::vector<Word> points;
        std::vector<Word> joint;  // point << 16 | image
        const unsigned inserts = 1 + static_cast<unsigned>(rng.below(width + 3));
        ++out.cases;
        for (unsigned i = 0; i < inserts; ++i) {
            // Bias towards dependent inserts by combining earlier points.
            Word p = static_cast<Word>(rng.below(Word{1} << width));
            if (!points.empty() && rng.below(3) == 0) p = points[rng.below(points.size())] ^ points[rng.below(points.size())];
            const Word v = static_cast<Word>(rng.below(Word{1} << width));
            const bool dependent = oracle::in_row_span(points, p);
            const auto res = basis.insert(p, v);
            if ((res == XorBasis::InsertResult::Dependent) != dependent) {
                out.fail(describe("insert result disagrees with the span oracle", width, s));
            }
            points.push_back(p);
            joint.push_back((p << 16) | v);
        }
        for (unsigned q = 0; q < 16; ++q) {
            const Word p = static_cast<Word>(rng.below(Word{1} << width));
            if (basis.spans(p) != oracle::in_row_span(points, p)) {
                out.fail(describe("spans() disagrees with the span oracle", width, s));
            }
        }
        for (unsigned i = 0; i < width; ++i) {
            if (!basis.occupied(i)) continue;
            if ((basis.point(i) & low_mask(i + 1)) != (Word{1} << i)) {
                out.fail(describe("slot point has the wrong lowest bit", width, s));
            }
            if (!oracle::in_row_span(joint, (basis.point(i) << 16) | basis.image(i))) {
                out.fail(describe("slot pair outside the span of inserted pairs", width, s));
            }
        }
    }
    return out;
}

Outcome moebius_involution(unsigned cases, std::uint64_t seed) {
    Outcome out;
    Rng master(seed);
    const auto& active = kernels::active_kernels();
    const auto& scalar = kernels::scalar_kernels();
    for (unsigned k = 0; k < cases; ++k) {
        const unsigned n = 1 + static_cast<unsigned>(master.below(12));
        const std::uint64_t s = master.next();
        Rng rng(s);
        std::vector<std::uint16_t> table(std::size_t{1} << n);
        for (auto& v : table) v = static_cast<std::uint16_t>(rng.next());
        auto once = table;
        active.moebius(once, n);
        auto twice = once;
        active.moebius(twice, n);
        auto reference = table;
        scalar.moebius(reference, n);
        ++out.cases;
        if (twice != table) out.fail(describe("Moebius transform applied twice is not the identity", n, s));
        if (once != reference) out.fail(describe("active and scalar Moebius kernels disagree", n, s));
        if (n <= 8) {
            std::vector<std::uint16_t> small(table.begin(), table.end());
            const SBox box(n, 16, small);
            if (oracle::anf(box) != once) out.fail(describe("Moebius disagrees with the subset-sum oracle", n, s));
        }
    }
    return out;
}

}  // namespace props
