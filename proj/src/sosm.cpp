#include "sboxeq/sosm.hpp"

#include <stdexcept>
#include <vector>

#include "sboxeq/errors.hpp"
#include "sboxeq/kernels.hpp"

namespace sboxeq {

BitMatrix osm(const SBox& s, std::span<const Word> g) {
    if (g.empty() || g.size() > s.n()) throw InputError("osm: need between 1 and n vectors");
    for (Word x : g) {
        if (x >= s.size()) throw InputError("osm: vector wider than n");
    }
    BitMatrix gm(static_cast<unsigned>(g.size()), s.n(), std::vector<Word>(g.begin(), g.end()));
    if (rank(gm) != g.size()) throw InputError("osm: vectors are linearly dependent");

    std::vector<Word> columns(g.size(), 0);
    for (std::size_t y = 0; y < s.size(); ++y) {
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (dot(static_cast<Word>(y), g[j]) == 0) columns[j] ^= s(static_cast<Word>(y));
        }
    }
    return BitMatrix::from_columns(s.m(), columns);
}

BitMatrix sosm(const SBox& s) {
    std::vector<std::uint16_t> acc(s.n());
    kernels::active_kernels().hyperplane_xor(s.table(), s.n(), acc);
    std::vector<Word> columns(acc.begin(), acc.end());
    return BitMatrix::from_columns(s.m(), columns);
}

SosmNormalForm normal_form(const SBox& s) {
    if (!parity_condition(s)) throw InputError("normal_form: S-box violates the parity condition");
    const BitMatrix m = sosm(s);
    Diagonalization d = diagonalize(m);
    const BitMatrix input = invert(d.right.transpose());
    SBox transformed = apply_affine(s, AffineMap(input, BitVec::zero(s.n())),
                                    AffineMap(d.left, BitVec::zero(s.m())));
    if (multiply(multiply(d.left, m), d.right) != canonical_block(s.m(), s.n(), d.rank) ||
        sosm(transformed) != canonical_block(s.m(), s.n(), d.rank)) {
        throw std::logic_error("normal_form: transformed SOSM is not canonical");
    }
    return {d.rank, std::move(d.left), std::move(d.right), std::move(transformed)};
}

SosmNormalForm trivial_normal_form(const SBox& s) {
    return {0, BitMatrix::identity(s.m()), BitMatrix::identity(s.n()), s};
}

}  // namespace sboxeq
