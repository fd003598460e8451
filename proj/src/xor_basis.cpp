#include "sboxeq/xor_basis.hpp"

#include <atomic>
#include <bit>
#include <stdexcept>

#include "sboxeq/errors.hpp"

namespace sboxeq {

std::uint64_t XorBasis::next_id() {
    static std::atomic<std::uint64_t> counter{1};
    return counter.fetch_add(1, std::memory_order_relaxed);
}

XorBasis::XorBasis(unsigned width) : width_(width), id_(next_id()) {
    if (width > kMaxWidth) throw InputError("XorBasis: width exceeds 16");
}

XorBasis::XorBasis(const XorBasis& other)
    : width_(other.width_),
      occupied_(other.occupied_),
      point_(other.point_),
      image_(other.image_),
      journal_(other.journal_),
      id_(next_id()) {}

XorBasis& XorBasis::operator=(const XorBasis& other) {
    if (this != &other) {
        width_ = other.width_;
        occupied_ = other.occupied_;
        point_ = other.point_;
        image_ = other.image_;
        journal_ = other.journal_;
        id_ = next_id();
    }
    return *this;
}

XorBasis::InsertResult XorBasis::insert(Word point, Word image) {
    for (unsigned i = 0; i < width_; ++i) {
        if (!((point >> i) & 1U)) continue;
        if (!occupied(i)) {
            point_[i] = point;
            image_[i] = image;
            occupied_ |= 1U << i;
            journal_.push_back(static_cast<std::uint8_t>(i));
            return InsertResult::Inserted;
        }
        point ^= point_[i];
        image ^= image_[i];
    }
    return InsertResult::Dependent;
}

bool XorBasis::spans(Word point) const noexcept {
    for (unsigned i = 0; i < width_ && point != 0; ++i) {
        if (!((point >> i) & 1U)) continue;
        if (!occupied(i)) return false;
        point ^= point_[i];
    }
    return point == 0;
}

void XorBasis::rollback(Token token) {
    if (token.owner != id_) throw std::logic_error("XorBasis::rollback: token belongs to another basis");
    if (token.depth > journal_.size()) throw std::logic_error("XorBasis::rollback: stale token");
    while (journal_.size() > token.depth) {
        const unsigned slot = journal_.back();
        journal_.pop_back();
        occupied_ &= ~(1U << slot);
        point_[slot] = 0;
        image_[slot] = 0;
    }
}

bool XorBasis::same_content(const XorBasis& other) const noexcept {
    return width_ == other.width_ && occupied_ == other.occupied_ && point_ == other.point_ &&
           image_ == other.image_;
}

bool check_bilinear(Word point, Word image, const XorBasis& other, unsigned r,
                    std::uint64_t& comparisons) noexcept {
    const std::uint32_t limit = r >= 32 ? ~0U : ((1U << r) - 1);
    for (std::uint32_t slots = other.occupied_mask() & limit; slots != 0; slots &= slots - 1) {
        const auto i = static_cast<unsigned>(std::countr_zero(slots));
        ++comparisons;
        if (dot(point, other.point(i)) != dot(image, other.image(i))) return false;
    }
    return true;
}

}  // namespace sboxeq
