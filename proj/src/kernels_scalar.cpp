#include "sboxeq/kernels.hpp"

namespace sboxeq::kernels {

namespace {

void map_linear_scalar(std::span<const std::uint16_t> in, std::span<std::uint16_t> out,
                       std::span<const std::uint16_t> columns, std::uint16_t constant) {
    for (std::size_t k = 0; k < in.size(); ++k) {
        std::uint16_t acc = constant;
        const std::uint16_t x = in[k];
        for (std::size_t j = 0; j < columns.size(); ++j) {
            if ((x >> j) & 1U) acc ^= columns[j];
        }
        out[k] = acc;
    }
}

void hyperplane_xor_scalar(std::span<const std::uint16_t> table, unsigned n,
                           std::span<std::uint16_t> out) {
    for (unsigned j = 0; j < n; ++j) out[j] = 0;
    for (std::size_t y = 0; y < table.size(); ++y) {
        for (unsigned j = 0; j < n; ++j) {
            if (!((y >> j) & 1U)) out[j] ^= table[y];
        }
    }
}

void moebius_scalar(std::span<std::uint16_t> table, unsigned n) {
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t step = 1; step < size; step <<= 1) {
        for (std::size_t base = 0; base < size; base += 2 * step) {
            for (std::size_t k = 0; k < step; ++k) table[base + step + k] ^= table[base + k];
        }
    }
}

}  // namespace

const KernelTable& scalar_kernels() {
    static const KernelTable table{"scalar", map_linear_scalar, hyperplane_xor_scalar, moebius_scalar};
    return table;
}

}  // namespace sboxeq::kernels
