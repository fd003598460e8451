#pragma once

// Word-packed vectors and matrices over GF(2).
//
// Bit convention: component i of a vector lives at machine bit i (LSB-first).
// Row i of a matrix is one word whose bit j holds entry (i, j), so the
// matrix-vector product is y_i = parity(row_i & x).

#include <bit>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace sboxeq {

using Word = std::uint32_t;

inline constexpr unsigned kMaxWidth = 16;

inline constexpr Word low_mask(unsigned width) noexcept {
    return width >= 32 ? ~Word{0} : ((Word{1} << width) - 1);
}

inline constexpr unsigned parity(Word w) noexcept {
    return static_cast<unsigned>(std::popcount(w) & 1);
}

/// Dot product over GF(2).
inline constexpr unsigned dot(Word a, Word b) noexcept { return parity(a & b); }

class BitVec {
public:
    BitVec() = default;
    BitVec(unsigned width, Word bits);

    static BitVec zero(unsigned width) { return BitVec(width, 0); }
    static BitVec unit(unsigned width, unsigned i);

    unsigned width() const noexcept { return width_; }
    Word bits() const noexcept { return bits_; }
    bool bit(unsigned i) const noexcept { return (bits_ >> i) & 1U; }

    BitVec operator^(const BitVec& o) const;
    BitVec& operator^=(const BitVec& o);
    bool operator==(const BitVec&) const = default;

private:
    unsigned width_ = 0;
    Word bits_ = 0;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(unsigned rows, unsigned cols);
    BitMatrix(unsigned rows, unsigned cols, std::vector<Word> row_words);

    static BitMatrix identity(unsigned n);
    static BitMatrix zero(unsigned rows, unsigned cols) { return BitMatrix(rows, cols); }
    /// columns[j] is the image of the unit vector e_j (an element of GF(2)^rows).
    static BitMatrix from_columns(unsigned rows, std::span<const Word> columns);

    unsigned rows() const noexcept { return rows_; }
    unsigned cols() const noexcept { return cols_; }
    bool square() const noexcept { return rows_ == cols_; }

    bool at(unsigned i, unsigned j) const noexcept { return (row_[i] >> j) & 1U; }
    void set(unsigned i, unsigned j, bool value);
    Word row(unsigned i) const noexcept { return row_[i]; }
    Word column(unsigned j) const noexcept;
    std::span<const Word> row_words() const noexcept { return row_; }

    /// y = M x for a raw word; x must fit in cols() bits.
    Word apply(Word x) const noexcept {
        Word y = 0;
        for (unsigned i = 0; i < rows_; ++i) y |= Word{parity(row_[i] & x)} << i;
        return y;
    }

    BitMatrix transpose() const;
    /// Submatrix of rows [r0, r0+nr) and cols [c0, c0+nc).
    BitMatrix block(unsigned r0, unsigned c0, unsigned nr, unsigned nc) const;
    bool is_zero() const noexcept;

    bool operator==(const BitMatrix&) const = default;

private:
    unsigned rows_ = 0;
    unsigned cols_ = 0;
    std::vector<Word> row_;
};

/// x -> linear * x + constant.
struct AffineMap {
    BitMatrix linear;
    BitVec constant;

    AffineMap() = default;
    AffineMap(BitMatrix linear_part, BitVec constant_part);

    static AffineMap identity(unsigned n) { return {BitMatrix::identity(n), BitVec::zero(n)}; }

    unsigned width() const noexcept { return linear.rows(); }
    Word apply(Word x) const noexcept { return linear.apply(x) ^ constant.bits(); }
    bool invertible() const;
};

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);
BitVec multiply(const BitMatrix& a, const BitVec& v);

unsigned rank(const BitMatrix& m);
bool is_invertible(const BitMatrix& m);

/// Throws NotInvertible for singular input and InputError for non-square input.
BitMatrix invert(const BitMatrix& m);

/// The rows x cols matrix with E_r in the top-left corner and zeros elsewhere.
BitMatrix canonical_block(unsigned rows, unsigned cols, unsigned r);

struct Diagonalization {
    BitMatrix left;   // rows x rows, invertible
    BitMatrix right;  // cols x cols, invertible
    unsigned rank = 0;
};

/// Finds invertible left, right with left * m * right == canonical_block(rows, cols, rank).
/// Both factors are accumulated from the elementary operations of the elimination.
Diagonalization diagonalize(const BitMatrix& m);

/// Bitstring with character k holding bit k ("lsb0" reading order).
std::string to_bitstring(Word bits, unsigned width);
Word from_bitstring(std::string_view s);

/// Rows as bitstrings, leftmost character = column 0.
std::vector<std::string> to_row_strings(const BitMatrix& m);
BitMatrix from_row_strings(const std::vector<std::string>& rows);

/// Reverses bit order within a width-bit word (lsb0 <-> msb0 relabelling).
Word reverse_bits(Word w, unsigned width) noexcept;
/// Relabels index i as width-1-i on both axes.
BitMatrix reverse_indices(const BitMatrix& m);

}  // namespace sboxeq
