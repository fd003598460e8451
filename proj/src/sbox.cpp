#include "sboxeq/sbox.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "sboxeq/errors.hpp"
#include "sboxeq/kernels.hpp"

namespace sboxeq {

namespace {

std::vector<std::uint16_t> columns_of(const BitMatrix& m) {
    std::vector<std::uint16_t> cols(m.cols());
    for (unsigned j = 0; j < m.cols(); ++j) cols[j] = static_cast<std::uint16_t>(m.column(j));
    return cols;
}

void apply_affine_in_place(const AffineMap& map, std::span<const std::uint16_t> in,
                           std::span<std::uint16_t> out) {
    const auto cols = columns_of(map.linear);
    kernels::active_kernels().map_linear(in, out, cols, static_cast<std::uint16_t>(map.constant.bits()));
}

}  // namespace

SBox::SBox(unsigned n, unsigned m, std::vector<std::uint16_t> table) : n_(n), m_(m), table_(std::move(table)) {
    if (n < 1 || n > kMaxWidth || m < 1 || m > kMaxWidth) {
        throw InputError("SBox: widths must lie in [1, " + std::to_string(kMaxWidth) + "]");
    }
    if (table_.size() != (std::size_t{1} << n)) {
        throw InputError("SBox: expected " + std::to_string(std::size_t{1} << n) + " entries, got " +
                         std::to_string(table_.size()));
    }
    const Word limit = Word{1} << m;
    for (std::size_t y = 0; y < table_.size(); ++y) {
        if (table_[y] >= limit) {
            throw InputError("SBox: entry " + std::to_string(y) + " = " + std::to_string(table_[y]) +
                             " does not fit in " + std::to_string(m) + " bits");
        }
    }
}

SBox SBox::identity(unsigned n) {
    std::vector<std::uint16_t> t(std::size_t{1} << n);
    std::iota(t.begin(), t.end(), std::uint16_t{0});
    return SBox(n, n, std::move(t));
}

bool SBox::is_permutation() const {
    if (n_ != m_) return false;
    std::vector<bool> seen(table_.size(), false);
    for (auto v : table_) {
        if (seen[v]) return false;
        seen[v] = true;
    }
    return true;
}

PreimageTable::PreimageTable(const SBox& s) : offsets_((std::size_t{1} << s.m()) + 1, 0), points_(s.size()) {
    for (auto v : s.table()) ++offsets_[v + 1];
    std::partial_sum(offsets_.begin(), offsets_.end(), offsets_.begin());
    std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
    for (std::size_t y = 0; y < s.size(); ++y) points_[fill[s(static_cast<Word>(y))]++] = static_cast<std::uint16_t>(y);
}

bool PreimageTable::all_singletons() const noexcept {
    for (std::size_t v = 0; v + 1 < offsets_.size(); ++v) {
        if (offsets_[v + 1] - offsets_[v] != 1) return false;
    }
    return true;
}

std::vector<std::size_t> column_weights(const SBox& s) {
    std::vector<std::size_t> w(s.m(), 0);
    for (std::size_t y = 0; y < s.size(); ++y) {
        for (unsigned i = 0; i < s.m(); ++i) w[i] += s.truth(static_cast<Word>(y), i);
    }
    return w;
}

bool parity_condition(const SBox& s) {
    std::uint16_t acc = 0;
    for (auto v : s.table()) acc ^= v;
    return acc == 0;
}

std::vector<std::uint16_t> anf(const SBox& s) {
    std::vector<std::uint16_t> t(s.table().begin(), s.table().end());
    kernels::active_kernels().moebius(t, s.n());
    return t;
}

unsigned algebraic_degree(const SBox& s) {
    const auto coeffs = anf(s);
    unsigned degree = 0;
    for (std::size_t u = 0; u < coeffs.size(); ++u) {
        if (coeffs[u] != 0) degree = std::max(degree, static_cast<unsigned>(std::popcount(u)));
    }
    return degree;
}

SBox apply_affine(const SBox& s, const AffineMap& in_map, const AffineMap& out_map) {
    if (in_map.width() != s.n()) throw InputError("apply_affine: input map width differs from n");
    if (out_map.width() != s.m()) throw InputError("apply_affine: output map width differs from m");
    std::vector<std::uint16_t> x(s.size());
    std::iota(x.begin(), x.end(), std::uint16_t{0});
    std::vector<std::uint16_t> moved(s.size());
    apply_affine_in_place(in_map, x, moved);
    for (auto& v : moved) v = static_cast<std::uint16_t>(s(v));
    std::vector<std::uint16_t> out(s.size());
    apply_affine_in_place(out_map, moved, out);
    return SBox(s.n(), s.m(), std::move(out));
}

SBox shift_input_output(const SBox& s, Word a) {
    if (a >= s.size()) throw InputError("shift_input_output: shift wider than n");
    const Word sa = s(a);
    std::vector<std::uint16_t> t(s.size());
    for (std::size_t x = 0; x < s.size(); ++x) t[x] = static_cast<std::uint16_t>(s(static_cast<Word>(x) ^ a) ^ sa);
    return SBox(s.n(), s.m(), std::move(t));
}

SBox random_permutation(unsigned n, Rng& rng) {
    std::vector<std::uint16_t> t(std::size_t{1} << n);
    std::iota(t.begin(), t.end(), std::uint16_t{0});
    for (std::size_t i = t.size() - 1; i > 0; --i) std::swap(t[i], t[rng.below(i + 1)]);
    return SBox(n, n, std::move(t));
}

SBox random_balanced(unsigned n, unsigned m, Rng& rng) {
    std::vector<std::uint16_t> t(std::size_t{1} << n);
    for (;;) {
        for (auto& v : t) v = static_cast<std::uint16_t>(rng.below(std::uint64_t{1} << m));
        SBox s(n, m, t);
        if (parity_condition(s)) return s;
    }
}

SBox generate(BoxKind kind, unsigned n, std::uint64_t seed) {
    if (n < 2 || n > 12) throw InputError("generate: n must lie in [2, 12]");
    Rng rng(seed);
    return kind == BoxKind::permutation ? random_permutation(n, rng) : random_balanced(n, n, rng);
}

BitMatrix random_invertible_matrix(unsigned n, Rng& rng) {
    for (;;) {
        std::vector<Word> rows(n);
        for (auto& r : rows) r = static_cast<Word>(rng.below(std::uint64_t{1} << n));
        BitMatrix m(n, n, std::move(rows));
        if (is_invertible(m)) return m;
    }
}

AffineMap random_invertible_affine(unsigned n, Rng& rng) {
    auto linear = random_invertible_matrix(n, rng);
    return AffineMap(std::move(linear), BitVec(n, static_cast<Word>(rng.below(std::uint64_t{1} << n))));
}

}  // namespace sboxeq
