#include "sboxeq/gf2.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "sboxeq/errors.hpp"

namespace sboxeq {

namespace {

void check_width(unsigned width, const char* what) {
    if (width > kMaxWidth) {
        throw InputError(std::string(what) + ": width " + std::to_string(width) + " exceeds " +
                         std::to_string(kMaxWidth));
    }
}

}  // namespace

BitVec::BitVec(unsigned width, Word bits) : width_(width), bits_(bits) {
    check_width(width, "BitVec");
    if ((bits & ~low_mask(width)) != 0) {
        throw InputError("BitVec: value has bits above width " + std::to_string(width));
    }
}

BitVec BitVec::unit(unsigned width, unsigned i) {
    if (i >= width) throw InputError("BitVec::unit: index out of range");
    return BitVec(width, Word{1} << i);
}

BitVec BitVec::operator^(const BitVec& o) const {
    BitVec r = *this;
    r ^= o;
    return r;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (o.width_ != width_) throw InputError("BitVec: width mismatch in XOR");
    bits_ ^= o.bits_;
    return *this;
}

BitMatrix::BitMatrix(unsigned rows, unsigned cols) : rows_(rows), cols_(cols), row_(rows, 0) {
    check_width(rows, "BitMatrix rows");
    check_width(cols, "BitMatrix cols");
}

BitMatrix::BitMatrix(unsigned rows, unsigned cols, std::vector<Word> row_words)
    : rows_(rows), cols_(cols), row_(std::move(row_words)) {
    check_width(rows, "BitMatrix rows");
    check_width(cols, "BitMatrix cols");
    if (row_.size() != rows) throw InputError("BitMatrix: row count mismatch");
    for (Word w : row_) {
        if ((w & ~low_mask(cols)) != 0) throw InputError("BitMatrix: row has bits above cols");
    }
}

BitMatrix BitMatrix::identity(unsigned n) {
    BitMatrix m(n, n);
    for (unsigned i = 0; i < n; ++i) m.row_[i] = Word{1} << i;
    return m;
}

BitMatrix BitMatrix::from_columns(unsigned rows, std::span<const Word> columns) {
    BitMatrix m(rows, static_cast<unsigned>(columns.size()));
    for (unsigned j = 0; j < columns.size(); ++j) {
        if ((columns[j] & ~low_mask(rows)) != 0) {
            throw InputError("BitMatrix::from_columns: column has bits above rows");
        }
        for (unsigned i = 0; i < rows; ++i) m.row_[i] |= ((columns[j] >> i) & 1U) << j;
    }
    return m;
}

void BitMatrix::set(unsigned i, unsigned j, bool value) {
    if (value) {
        row_[i] |= Word{1} << j;
    } else {
        row_[i] &= ~(Word{1} << j);
    }
}

Word BitMatrix::column(unsigned j) const noexcept {
    Word c = 0;
    for (unsigned i = 0; i < rows_; ++i) c |= ((row_[i] >> j) & 1U) << i;
    return c;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows_);
    for (unsigned j = 0; j < cols_; ++j) t.row_[j] = column(j);
    return t;
}

BitMatrix BitMatrix::block(unsigned r0, unsigned c0, unsigned nr, unsigned nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw InputError("BitMatrix::block: out of range");
    BitMatrix b(nr, nc);
    for (unsigned i = 0; i < nr; ++i) b.row_[i] = (row_[r0 + i] >> c0) & low_mask(nc);
    return b;
}

bool BitMatrix::is_zero() const noexcept {
    return std::all_of(row_.begin(), row_.end(), [](Word w) { return w == 0; });
}

AffineMap::AffineMap(BitMatrix linear_part, BitVec constant_part)
    : linear(std::move(linear_part)), constant(constant_part) {
    if (!linear.square() || linear.rows() != constant.width()) {
        throw InputError("AffineMap: linear part must be square and match the constant width");
    }
}

bool AffineMap::invertible() const { return is_invertible(linear); }

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) {
        throw InputError("multiply: inner dimensions differ (" + std::to_string(a.cols()) + " vs " +
                         std::to_string(b.rows()) + ")");
    }
    std::vector<Word> rows(a.rows(), 0);
    for (unsigned i = 0; i < a.rows(); ++i) {
        Word acc = 0;
        for (Word r = a.row(i); r != 0; r &= r - 1) acc ^= b.row(static_cast<unsigned>(std::countr_zero(r)));
        rows[i] = acc;
    }
    return BitMatrix(a.rows(), b.cols(), std::move(rows));
}

BitVec multiply(const BitMatrix& a, const BitVec& v) {
    if (a.cols() != v.width()) throw InputError("multiply: matrix/vector dimensions differ");
    return BitVec(a.rows(), a.apply(v.bits()));
}

unsigned rank(const BitMatrix& m) {
    std::vector<Word> rows(m.row_words().begin(), m.row_words().end());
    unsigned r = 0;
    for (unsigned c = 0; c < m.cols() && r < rows.size(); ++c) {
        const Word bit = Word{1} << c;
        auto pivot = std::find_if(rows.begin() + r, rows.end(), [bit](Word w) { return (w & bit) != 0; });
        if (pivot == rows.end()) continue;
        std::iter_swap(rows.begin() + r, pivot);
        for (std::size_t k = r + 1; k < rows.size(); ++k) {
            if (rows[k] & bit) rows[k] ^= rows[r];
        }
        ++r;
    }
    return r;
}

bool is_invertible(const BitMatrix& m) { return m.square() && rank(m) == m.rows(); }

BitMatrix invert(const BitMatrix& m) {
    if (!m.square()) throw InputError("invert: matrix is not square");
    const unsigned n = m.rows();
    std::vector<Word> work(m.row_words().begin(), m.row_words().end());
    std::vector<Word> inv(n);
    for (unsigned i = 0; i < n; ++i) inv[i] = Word{1} << i;
    for (unsigned c = 0; c < n; ++c) {
        const Word bit = Word{1} << c;
        unsigned p = c;
        while (p < n && !(work[p] & bit)) ++p;
        if (p == n) throw NotInvertible("invert: matrix is singular");
        std::swap(work[c], work[p]);
        std::swap(inv[c], inv[p]);
        for (unsigned k = 0; k < n; ++k) {
            if (k != c && (work[k] & bit)) {
                work[k] ^= work[c];
                inv[k] ^= inv[c];
            }
        }
    }
    return BitMatrix(n, n, std::move(inv));
}

BitMatrix canonical_block(unsigned rows, unsigned cols, unsigned r) {
    BitMatrix d(rows, cols);
    for (unsigned i = 0; i < r && i < rows && i < cols; ++i) d.set(i, i, true);
    return d;
}

Diagonalization diagonalize(const BitMatrix& m) {
    const unsigned rows = m.rows();
    const unsigned cols = m.cols();
    std::vector<Word> work(m.row_words().begin(), m.row_words().end());
    std::vector<Word> left(rows);
    for (unsigned i = 0; i < rows; ++i) left[i] = Word{1} << i;

    // Row phase: reduced row echelon form, recording row operations in `left`.
    std::vector<unsigned> pivot_cols;
    unsigned pr = 0;
    for (unsigned c = 0; c < cols && pr < rows; ++c) {
        const Word bit = Word{1} << c;
        unsigned p = pr;
        while (p < rows && !(work[p] & bit)) ++p;
        if (p == rows) continue;
        std::swap(work[pr], work[p]);
        std::swap(left[pr], left[p]);
        for (unsigned k = 0; k < rows; ++k) {
            if (k != pr && (work[k] & bit)) {
                work[k] ^= work[pr];
                left[k] ^= left[pr];
            }
        }
        pivot_cols.push_back(c);
        ++pr;
    }
    const unsigned r = pr;

    // Column phase on the transpose of `right`: row j of right_t is column j of right.
    std::vector<Word> right_t(cols);
    for (unsigned j = 0; j < cols; ++j) right_t[j] = Word{1} << j;
    for (unsigned i = 0; i < r; ++i) {
        const unsigned p = pivot_cols[i];
        // Pivot column p is the unit vector e_i, so adding it to column j only clears (i, j).
        for (Word rest = work[i] & ~(Word{1} << p); rest != 0; rest &= rest - 1) {
            const auto j = static_cast<unsigned>(std::countr_zero(rest));
            right_t[j] ^= right_t[p];
        }
        work[i] = Word{1} << p;
    }

    // Permute pivot columns to the front.
    std::vector<unsigned> order(pivot_cols);
    for (unsigned j = 0; j < cols; ++j) {
        if (std::find(pivot_cols.begin(), pivot_cols.end(), j) == pivot_cols.end()) order.push_back(j);
    }
    std::vector<Word> permuted(cols);
    for (unsigned j = 0; j < cols; ++j) permuted[j] = right_t[order[j]];

    return {BitMatrix(rows, rows, std::move(left)), BitMatrix(cols, cols, std::move(permuted)).transpose(), r};
}

std::string to_bitstring(Word bits, unsigned width) {
    std::string s(width, '0');
    for (unsigned k = 0; k < width; ++k) {
        if ((bits >> k) & 1U) s[k] = '1';
    }
    return s;
}

Word from_bitstring(std::string_view s) {
    if (s.size() > kMaxWidth) throw InputError("bitstring longer than " + std::to_string(kMaxWidth));
    Word w = 0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] == '1') {
            w |= Word{1} << k;
        } else if (s[k] != '0') {
            throw InputError("bitstring contains '" + std::string(1, s[k]) + "'");
        }
    }
    return w;
}

std::vector<std::string> to_row_strings(const BitMatrix& m) {
    std::vector<std::string> out;
    out.reserve(m.rows());
    for (unsigned i = 0; i < m.rows(); ++i) out.push_back(to_bitstring(m.row(i), m.cols()));
    return out;
}

BitMatrix from_row_strings(const std::vector<std::string>& rows) {
    if (rows.empty()) throw InputError("matrix has no rows");
    const auto cols = static_cast<unsigned>(rows.front().size());
    std::vector<Word> words;
    words.reserve(rows.size());
    for (const auto& r : rows) {
        if (r.size() != cols) throw InputError("matrix rows have unequal length");
        words.push_back(from_bitstring(r));
    }
    return BitMatrix(static_cast<unsigned>(rows.size()), cols, std::move(words));
}

Word reverse_bits(Word w, unsigned width) noexcept {
    Word r = 0;
    for (unsigned k = 0; k < width; ++k) r |= ((w >> k) & 1U) << (width - 1 - k);
    return r;
}

BitMatrix reverse_indices(const BitMatrix& m) {
    std::vector<Word> rows(m.rows());
    for (unsigned i = 0; i < m.rows(); ++i) rows[m.rows() - 1 - i] = reverse_bits(m.row(i), m.cols());
    return BitMatrix(m.rows(), m.cols(), std::move(rows));
}

}  // namespace sboxeq
