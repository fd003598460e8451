// Compiled with -mavx2; only reached after a runtime CPU check.
#include <immintrin.h>

#include <array>

#include "sboxeq/kernels.hpp"

namespace sboxeq::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 16;

std::uint16_t horizontal_xor(__m256i v) {
    alignas(32) std::array<std::uint16_t, kLanes> lanes;
    _mm256_store_si256(reinterpret_cast<__m256i*>(lanes.data()), v);
    std::uint16_t acc = 0;
    for (auto l : lanes) acc ^= l;
    return acc;
}

void map_linear(std::span<const std::uint16_t> in, std::span<std::uint16_t> out,
                std::span<const std::uint16_t> columns, std::uint16_t constant) {
    const __m256i one = _mm256_set1_epi16(1);
    const __m256i zero = _mm256_setzero_si256();
    const __m256i c = _mm256_set1_epi16(static_cast<short>(constant));
    std::size_t k = 0;
    for (; k + kLanes <= in.size(); k += kLanes) {
        const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(in.data() + k));
        __m256i acc = c;
        for (std::size_t j = 0; j < columns.size(); ++j) {
            const __m256i bit = _mm256_and_si256(_mm256_srl_epi16(x, _mm_cvtsi32_si128(static_cast<int>(j))), one);
            const __m256i mask = _mm256_sub_epi16(zero, bit);
            acc = _mm256_xor_si256(acc, _mm256_and_si256(mask, _mm256_set1_epi16(static_cast<short>(columns[j]))));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out.data() + k), acc);
    }
    for (; k < in.size(); ++k) {
        std::uint16_t acc = constant;
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if ((in[k] >> j) & 1U) acc ^= columns[j];
        }
        out[k] = acc;
    }
}

void hyperplane_xor(std::span<const std::uint16_t> table, unsigned n, std::span<std::uint16_t> out) {
    if (table.size() < kLanes) {
        scalar_kernels().hyperplane_xor(table, n, out);
        return;
    }
    for (unsigned j = 0; j < n; ++j) {
        __m256i acc = _mm256_setzero_si256();
        const std::size_t stride = std::size_t{1} << j;
        if (stride >= kLanes) {
            // Indices with bit j clear form contiguous runs of length `stride`.
            for (std::size_t base = 0; base < table.size(); base += 2 * stride) {
                for (std::size_t k = 0; k < stride; k += kLanes) {
                    acc = _mm256_xor_si256(
                        acc, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table.data() + base + k)));
                }
            }
        } else {
            alignas(32) std::array<std::uint16_t, kLanes> lane_mask{};
            for (std::size_t l = 0; l < kLanes; ++l) lane_mask[l] = ((l >> j) & 1U) ? 0 : 0xFFFF;
            const __m256i mask = _mm256_load_si256(reinterpret_cast<const __m256i*>(lane_mask.data()));
            for (std::size_t k = 0; k < table.size(); k += kLanes) {
                acc = _mm256_xor_si256(
                    acc, _mm256_and_si256(mask, _mm256_loadu_si256(reinterpret_cast<const __m256i*>(table.data() + k))));
            }
        }
        out[j] = horizontal_xor(acc);
    }
}

void moebius(std::span<std::uint16_t> table, unsigned n) {
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t step = 1; step < size; step <<= 1) {
        for (std::size_t base = 0; base < size; base += 2 * step) {
            if (step >= kLanes) {
                for (std::size_t k = 0; k < step; k += kLanes) {
                    auto* lo = reinterpret_cast<const __m256i*>(table.data() + base + k);
                    auto* hi = reinterpret_cast<__m256i*>(table.data() + base + step + k);
                    _mm256_storeu_si256(hi, _mm256_xor_si256(_mm256_loadu_si256(hi), _mm256_loadu_si256(lo)));
                }
            } else {
                for (std::size_t k = 0; k < step; ++k) table[base + step + k] ^= table[base + k];
            }
        }
    }
}

}  // namespace

const KernelTable& table() {
    static const KernelTable t{"avx2", map_linear, hyperplane_xor, moebius};
    return t;
}

}  // namespace sboxeq::kernels::avx2
