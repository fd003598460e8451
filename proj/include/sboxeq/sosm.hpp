#pragma once

#include <span>

#include "sboxeq/gf2.hpp"
#include "sboxeq/sbox.hpp"

namespace sboxeq {

/// Orthogonal spatial matrix for the linearly independent vectors g:
/// entry (i, j) is the parity of bit i of s(y) over all y with y . g[j] = 0.
BitMatrix osm(const SBox& s, std::span<const Word> g);

/// osm with g = unit vectors: column j is the XOR of s(y) over y with bit j clear.
BitMatrix sosm(const SBox& s);

/// 1 iff every component of x at index >= r is zero (always 1 for r >= width).
inline constexpr bool suffix(Word x, unsigned r) noexcept { return r >= 32 || (x >> r) == 0; }

struct SosmNormalForm {
    unsigned rank_r = 0;
    BitMatrix left_b;   // m x m
    BitMatrix right_a;  // n x n
    SBox transformed;   // left_b o s o (right_a^T)^-1
};

/// Conjugates s so that its SOSM becomes canonical_block(m, n, r). Requires
/// parity_condition(s); re-derives the SOSM of the result and throws
/// std::logic_error if it is not canonical.
SosmNormalForm normal_form(const SBox& s);

/// Normal form with identity conjugations and r = 0, used when SOSM pruning is off.
SosmNormalForm trivial_normal_form(const SBox& s);

}  // namespace sboxeq
