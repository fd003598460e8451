#include <doctest.h>

#include "sboxeq/brute_force.hpp"
#include "sboxeq/errors.hpp"

using namespace sboxeq;

TEST_CASE("group orders") {
    CHECK(brute::general_linear_group(1).size() == 1);
    CHECK(brute::general_linear_group(2).size() == 6);
    CHECK(brute::general_linear_group(3).size() == 168);
    CHECK(brute::general_linear_group(4).size() == 20160);
    for (const auto& m : brute::general_linear_group(3)) REQUIRE(is_invertible(m));
    CHECK_THROWS_AS(brute::general_linear_group(5), InputError);
}

TEST_CASE("oracle witnesses are genuine") {
    Rng rng(1);
    for (int k = 0; k < 100; ++k) {
        const unsigned n = 2 + static_cast<unsigned>(rng.below(2));
        const SBox a = rng.below(2) ? random_permutation(n, rng) : random_balanced(n, n, rng);
        const SBox b = rng.below(2) ? random_permutation(n, rng) : random_balanced(n, n, rng);
        if (auto w = brute::find_affine(a, b)) REQUIRE(verify_witness(a, b, *w));
        if (auto w = brute::find_linear(a, b)) {
            REQUIRE(verify_witness(a, b, *w));
            REQUIRE(w->c1.bits() == 0);
            REQUIRE(w->c2.bits() == 0);
        }
        const AePair p = make_ae_pair(a, rng);
        REQUIRE(brute::find_affine(p.s1, p.s2).has_value());
    }
}

TEST_CASE("non-invertible boxes and affine constants") {
    // x -> x + 1 on 2 bits is affine-equivalent to the identity but not linearly.
    const SBox shift(2, 2, {1, 0, 3, 2});
    CHECK(brute::find_affine(shift, SBox::identity(2)).has_value());
    CHECK_FALSE(brute::find_linear(shift, SBox::identity(2)).has_value());
    const SBox flat(2, 2, {0, 0, 1, 1});
    CHECK_FALSE(brute::find_affine(flat, SBox::identity(2)).has_value());
    CHECK(brute::find_linear(flat, SBox(2, 2, {0, 1, 0, 1})).has_value());
}
