#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "sboxeq/gf2.hpp"

namespace sboxeq {

/// Slot-per-bit basis of (point, image) pairs. Slot i holds a reduced point
/// whose lowest set bit is i, together with the partner map's value there.
/// Insertions are journalled so the solver can roll back to a snapshot.
class XorBasis {
public:
    enum class InsertResult { Inserted, Dependent };

    struct Token {
        std::uint64_t owner = 0;
        std::size_t depth = 0;
    };

    explicit XorBasis(unsigned width = 0);
    XorBasis(const XorBasis& other);
    XorBasis& operator=(const XorBasis& other);
    XorBasis(XorBasis&&) noexcept = default;
    XorBasis& operator=(XorBasis&&) noexcept = default;

    unsigned width() const noexcept { return width_; }

    /// Reduces point and image jointly against the stored slots and stores the
    /// remainder in the first empty slot hit; Dependent if the point reduces to 0.
    InsertResult insert(Word point, Word image);

    bool occupied(unsigned i) const noexcept { return (occupied_ >> i) & 1U; }
    std::uint32_t occupied_mask() const noexcept { return occupied_; }
    Word point(unsigned i) const noexcept { return point_[i]; }
    Word image(unsigned i) const noexcept { return image_[i]; }
    unsigned size() const noexcept { return static_cast<unsigned>(journal_.size()); }

    /// True if `point` lies in the span of the stored points.
    bool spans(Word point) const noexcept;

    Token snapshot() const noexcept { return {id_, journal_.size()}; }
    /// Throws std::logic_error for a token from another basis or one already rolled past.
    void rollback(Token token);

    /// Slot contents only; journal history is ignored.
    bool same_content(const XorBasis& other) const noexcept;

private:
    static std::uint64_t next_id();

    unsigned width_;
    std::uint32_t occupied_ = 0;
    std::array<Word, kMaxWidth> point_{};
    std::array<Word, kMaxWidth> image_{};
    std::vector<std::uint8_t> journal_;
    std::uint64_t id_;
};

/// Bilinear consistency of a candidate pair (point, image) against every
/// occupied slot i < r of `other`:
///     parity(point & other.point(i)) == parity(image & other.image(i)).
/// Both point and image must be suffix-1 for r. Adds one to `comparisons`
/// per slot compared.
bool check_bilinear(Word point, Word image, const XorBasis& other, unsigned r,
                    std::uint64_t& comparisons) noexcept;

inline bool check_bilinear(Word point, Word image, const XorBasis& other, unsigned r) noexcept {
    std::uint64_t unused = 0;
    return check_bilinear(point, image, other, r, unused);
}

}  // namespace sboxeq
