#include "sboxeq/brute_force.hpp"

#include <array>
#include <cstdint>

#include "sboxeq/errors.hpp"

namespace sboxeq::brute {

namespace {

constexpr unsigned kMaxBruteWidth = 4;

// Row-by-row elimination on packed 32-bit words, pivot = highest set bit.
struct Echelon {
    std::array<std::uint32_t, 32> rows{};
    std::array<unsigned, 32> lead{};
    unsigned size = 0;

    std::uint32_t reduce(std::uint32_t w) const {
        for (unsigned i = 0; i < size; ++i) {
            if ((w >> lead[i]) & 1U) w ^= rows[i];
        }
        return w;
    }
    void add(std::uint32_t w) {
        unsigned b = 31;
        while (!((w >> b) & 1U)) --b;
        rows[size] = w;
        lead[size] = b;
        ++size;
    }
};

// Pairs (p_k, v_k) extend to an invertible linear map iff every relation among the
// p's holds among the v's and vice versa. p sits in the high half so it is
// eliminated first.
bool invertibly_extendable(const std::vector<std::pair<Word, Word>>& pairs, unsigned width) {
    for (int dir = 0; dir < 2; ++dir) {
        Echelon e;
        for (auto [p, v] : pairs) {
            if (dir == 1) std::swap(p, v);
            const std::uint32_t w = e.reduce((p << width) | v);
            if (w == 0) continue;
            if ((w >> width) == 0) return false;
            e.add(w);
        }
    }
    return true;
}

BitMatrix solve_linear(const std::vector<std::pair<Word, Word>>& pairs, unsigned width) {
    // Complete the points to a basis with units, images of units by independent fresh values.
    std::vector<std::pair<Word, Word>> basis;
    Echelon pe;
    Echelon ve;
    auto take = [&](Word p, Word v) {
        const std::uint32_t rp = pe.reduce(p);
        if (rp == 0) return;
        pe.add(rp);
        ve.add(ve.reduce(v));
        basis.emplace_back(p, v);
    };
    for (auto [p, v] : pairs) take(p, v);
    for (unsigned j = 0; j < width && basis.size() < width; ++j) {
        const Word unit = Word{1} << j;
        if (pe.reduce(unit) == 0) continue;
        for (unsigned k = 0; k < width; ++k) {
            if (ve.reduce(Word{1} << k) != 0) {
                take(unit, Word{1} << k);
                break;
            }
        }
    }
    // Columns: write each unit as a combination of basis points.
    std::vector<Word> columns(width, 0);
    for (unsigned j = 0; j < width; ++j) {
        for (Word mask = 0; mask < (Word{1} << basis.size()); ++mask) {
            Word p = 0;
            Word v = 0;
            for (std::size_t k = 0; k < basis.size(); ++k) {
                if ((mask >> k) & 1U) {
                    p ^= basis[k].first;
                    v ^= basis[k].second;
                }
            }
            if (p == (Word{1} << j)) {
                columns[j] = v;
                break;
            }
        }
    }
    return BitMatrix::from_columns(width, columns);
}

// Output values forced by the input map; nullopt if one point is sent to two values.
std::optional<std::vector<std::pair<Word, Word>>> forced_output(const SBox& s1, const SBox& s2,
                                                                const BitMatrix& l1, Word c1) {
    std::vector<std::int32_t> image(std::size_t{1} << s2.m(), -1);
    std::vector<std::pair<Word, Word>> pairs;
    for (Word x = 0; x < s2.size(); ++x) {
        const Word y = s2(x);
        const Word v = s1(l1.apply(x) ^ c1);
        if (image[y] < 0) {
            image[y] = static_cast<std::int32_t>(v);
            pairs.emplace_back(y, v);
        } else if (image[y] != static_cast<std::int32_t>(v)) {
            return std::nullopt;
        }
    }
    return pairs;
}

void check_small(const SBox& s1, const SBox& s2) {
    if (s1.n() != s2.n() || s1.m() != s2.m()) throw InputError("brute force: dimensions differ");
    if (s1.n() > kMaxBruteWidth || s1.m() > kMaxBruteWidth) throw InputError("brute force: width above 4");
}

std::optional<EquivalenceWitness> search(const SBox& s1, const SBox& s2, bool affine) {
    check_small(s1, s2);
    const unsigned n = s1.n();
    const unsigned m = s1.m();
    const auto group = general_linear_group(n);
    const Word constants = affine ? Word{1} << n : 1;
    for (const BitMatrix& l1 : group) {
        for (Word c1 = 0; c1 < constants; ++c1) {
            auto pairs = forced_output(s1, s2, l1, c1);
            if (!pairs) continue;
            Word c2 = 0;
            if (affine) {
                // Shift to differences against the first pair.
                const auto [p0, v0] = pairs->front();
                for (auto& [p, v] : *pairs) {
                    p ^= p0;
                    v ^= v0;
                }
                if (!invertibly_extendable(*pairs, m)) continue;
                const BitMatrix l2 = solve_linear(*pairs, m);
                c2 = v0 ^ l2.apply(p0);
                return EquivalenceWitness{l1, BitVec(n, c1), l2, BitVec(m, c2)};
            }
            if (!invertibly_extendable(*pairs, m)) continue;
            return EquivalenceWitness{l1, BitVec::zero(n), solve_linear(*pairs, m), BitVec::zero(m)};
        }
    }
    return std::nullopt;
}

}  // namespace

std::vector<BitMatrix> general_linear_group(unsigned n) {
    if (n == 0 || n > kMaxBruteWidth) throw InputError("general_linear_group: n must be in [1, 4]");
    std::vector<BitMatrix> out;
    const std::uint32_t total = std::uint32_t{1} << (n * n);
    const Word row_mask = (Word{1} << n) - 1;
    for (std::uint32_t code = 0; code < total; ++code) {
        std::vector<Word> rows(n);
        for (unsigned i = 0; i < n; ++i) rows[i] = (code >> (i * n)) & row_mask;
        // Invertible iff the 2^n combinations of rows are distinct.
        std::uint32_t seen = 0;
        bool ok = true;
        for (Word mask = 1; mask < (Word{1} << n) && ok; ++mask) {
            Word acc = 0;
            for (unsigned i = 0; i < n; ++i) {
                if ((mask >> i) & 1U) acc ^= rows[i];
            }
            if (acc == 0 || ((seen >> acc) & 1U)) ok = false;
            seen |= std::uint32_t{1} << acc;
        }
        if (ok) out.emplace_back(n, n, std::move(rows));
    }
    return out;
}

std::optional<EquivalenceWitness> find_linear(const SBox& s1, const SBox& s2) { return search(s1, s2, false); }

std::optional<EquivalenceWitness> find_affine(const SBox& s1, const SBox& s2) { return search(s1, s2, true); }

}  // namespace sboxeq::brute
