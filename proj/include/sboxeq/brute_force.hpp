#pragma once

// Exhaustive reference deciders for small widths. They share no code with the
// search: input maps are enumerated over all square matrices, the output map is
// forced pointwise and checked for (affine) linear extendability by elimination.

#include <optional>
#include <vector>

#include "sboxeq/ae_solver.hpp"
#include "sboxeq/sbox.hpp"

namespace sboxeq::brute {

/// Every invertible n x n matrix (n <= 4), in row-word lexicographic order.
std::vector<BitMatrix> general_linear_group(unsigned n);

/// Some L1, L2 with s1(L1 x) == L2 s2(x), constants zero.
std::optional<EquivalenceWitness> find_linear(const SBox& s1, const SBox& s2);

/// Some witness of s1(L1 x + c1) == L2 s2(x) + c2.
std::optional<EquivalenceWitness> find_affine(const SBox& s1, const SBox& s2);

}  // namespace sboxeq::brute
