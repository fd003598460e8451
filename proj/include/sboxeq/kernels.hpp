#pragma once

// Bulk table kernels. Every kernel has a portable scalar reference; an AVX2
// variant is selected at runtime when the CPU supports it. The two must agree
// bit for bit (tests/test_kernels.cpp).

#include <cstdint>
#include <span>

namespace sboxeq::kernels {

struct KernelTable {
    const char* name;

    /// out[k] = constant ^ XOR of columns[j] over the set bits j of in[k].
    /// `columns` has one entry per input bit; in and out have equal length.
    void (*map_linear)(std::span<const std::uint16_t> in, std::span<std::uint16_t> out,
                       std::span<const std::uint16_t> columns, std::uint16_t constant);

    /// out[j] = XOR of table[y] over all y in [0, 2^n) whose bit j is zero, for j < n.
    void (*hyperplane_xor)(std::span<const std::uint16_t> table, unsigned n,
                           std::span<std::uint16_t> out);

    /// In-place binary Moebius transform over a table of 2^n words
    /// (every output bit handled in parallel). It is an involution.
    void (*moebius)(std::span<std::uint16_t> table, unsigned n);
};

const KernelTable& scalar_kernels();

/// nullptr when AVX2 was not compiled in or the CPU lacks it.
const KernelTable* avx2_kernels();

/// AVX2 if available, scalar otherwise. SBOXEQ_KERNELS=scalar forces the reference path.
const KernelTable& active_kernels();

}  // namespace sboxeq::kernels
