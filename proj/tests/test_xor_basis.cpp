#include <doctest.h>

#include <stdexcept>

#include "properties.hpp"
#include "sboxeq/xor_basis.hpp"

using namespace sboxeq;

TEST_CASE("insert and span") {
    XorBasis b(4);
    CHECK(b.insert(0b0110, 0b0001) == XorBasis::InsertResult::Inserted);
    CHECK(b.occupied(1));
    CHECK(b.insert(0b0011, 0b0010) == XorBasis::InsertResult::Inserted);
    // 0b0011 reduces against nothing at bit 0 and lands in slot 0.
    CHECK(b.occupied(0));
    CHECK(b.spans(0b0101));
    CHECK(b.insert(0b0101, 0b0011) == XorBasis::InsertResult::Dependent);
    CHECK_FALSE(b.spans(0b1000));
    CHECK(b.size() == 2);
    CHECK(b.insert(0, 5) == XorBasis::InsertResult::Dependent);
}

TEST_CASE("span agrees with elimination oracle (1000 cases)") {
    const auto r = props::xor_basis_span(1000, 201);
    INFO(r.first_failure);
    CHECK(r.ok());
}

TEST_CASE("snapshot and rollback") {
    XorBasis b(5);
    b.insert(1, 1);
    const auto t = b.snapshot();
    const XorBasis before = b;
    b.insert(2, 3);
    b.insert(4, 7);
    b.rollback(t);
    CHECK(b.same_content(before));
    CHECK(b.size() == 1);
    CHECK_THROWS_AS(b.rollback(before.snapshot()), std::logic_error);
    b.insert(8, 1);
    b.insert(16, 1);
    const auto deep = b.snapshot();
    b.rollback(t);
    CHECK_THROWS_AS(b.rollback(deep), std::logic_error);
}

TEST_CASE("bilinear check") {
    XorBasis b(4);
    b.insert(0b01, 0b01);
    b.insert(0b10, 0b10);
    std::uint64_t count = 0;
    // Identity pairing: point . p_i == image . q_i for all slots below r.
    CHECK(check_bilinear(0b11, 0b11, b, 2, count));
    CHECK(count == 2);
    CHECK_FALSE(check_bilinear(0b01, 0b10, b, 2, count));
    count = 0;
    CHECK(check_bilinear(0b01, 0b10, b, 0, count));
    CHECK(count == 0);
}
