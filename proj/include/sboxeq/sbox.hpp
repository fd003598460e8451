#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "sboxeq/gf2.hpp"
#include "sboxeq/rng.hpp"

namespace sboxeq {

/// Truth table of a map GF(2)^n -> GF(2)^m; entry y holds S(y).
class SBox {
public:
    SBox() = default;
    SBox(unsigned n, unsigned m, std::vector<std::uint16_t> table);

    static SBox identity(unsigned n);

    unsigned n() const noexcept { return n_; }
    unsigned m() const noexcept { return m_; }
    std::size_t size() const noexcept { return table_.size(); }
    Word operator()(Word x) const noexcept { return table_[x]; }
    std::span<const std::uint16_t> table() const noexcept { return table_; }

    /// T_S(y, i): bit i of S(y).
    bool truth(Word y, unsigned i) const noexcept { return (table_[y] >> i) & 1U; }

    bool is_permutation() const;
    bool is_zero_point() const noexcept { return table_[0] == 0; }

    bool operator==(const SBox&) const = default;

private:
    unsigned n_ = 0;
    unsigned m_ = 0;
    std::vector<std::uint16_t> table_;
};

/// Inverse images of every output value, stored contiguously.
class PreimageTable {
public:
    explicit PreimageTable(const SBox& s);

    std::span<const std::uint16_t> of(Word v) const noexcept {
        return {points_.data() + offsets_[v], points_.data() + offsets_[v + 1]};
    }
    std::size_t count(Word v) const noexcept { return offsets_[v + 1] - offsets_[v]; }
    bool all_singletons() const noexcept;

private:
    std::vector<std::uint32_t> offsets_;
    std::vector<std::uint16_t> points_;
};

inline PreimageTable preimages(const SBox& s) { return PreimageTable(s); }

/// Every truth-table column holds an even number of ones.
bool parity_condition(const SBox& s);

/// Per-column count of ones, the direct definition behind parity_condition.
std::vector<std::size_t> column_weights(const SBox& s);

/// Algebraic normal form of every coordinate at once: bit i of entry u is the
/// coefficient of the monomial x^u in coordinate i.
std::vector<std::uint16_t> anf(const SBox& s);

/// Maximum monomial degree over all coordinate functions; 0 for constants.
unsigned algebraic_degree(const SBox& s);

/// x -> out_map(s(in_map(x))).
SBox apply_affine(const SBox& s, const AffineMap& in_map, const AffineMap& out_map);

/// x -> s(x + a) + s(a); the result maps 0 to 0.
SBox shift_input_output(const SBox& s, Word a);

enum class BoxKind { permutation, balanced };

/// Uniform random permutation of GF(2)^n (Fisher-Yates).
SBox random_permutation(unsigned n, Rng& rng);

/// Random n -> m table, redrawn until parity_condition holds.
SBox random_balanced(unsigned n, unsigned m, Rng& rng);

SBox generate(BoxKind kind, unsigned n, std::uint64_t seed);

BitMatrix random_invertible_matrix(unsigned n, Rng& rng);
AffineMap random_invertible_affine(unsigned n, Rng& rng);

}  // namespace sboxeq
