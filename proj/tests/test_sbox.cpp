#include <doctest.h>

#include <numeric>

#include "oracles.hpp"
#include "sboxeq/corpus_io.hpp"
#include "sboxeq/errors.hpp"
#include "sboxeq/sbox.hpp"

using namespace sboxeq;

namespace {

SBox corpus(const char* name) { return load_sbox_file(std::string(SBOXEQ_DATA_DIR) + "/sboxes/" + name + ".sbox"); }

}  // namespace

TEST_CASE("construction checks") {
    CHECK_THROWS_AS(SBox(2, 2, {0, 1, 2}), InputError);
    CHECK_THROWS_AS(SBox(2, 2, {0, 1, 2, 4}), InputError);
    CHECK_THROWS_AS(SBox(0, 2, {0}), InputError);
    CHECK_THROWS_AS(SBox(17, 2, {}), InputError);
    const SBox s(2, 3, {0, 7, 2, 5});
    CHECK(s(1) == 7);
    CHECK(s.truth(3, 2));
    CHECK_FALSE(s.truth(2, 0));
}

TEST_CASE("parity condition") {
    CHECK(SBox::identity(4).is_permutation());
    CHECK(parity_condition(SBox::identity(4)));
    CHECK_FALSE(parity_condition(SBox(2, 2, {0, 1, 2, 2})));
    CHECK(parity_condition(SBox(3, 3, std::vector<std::uint16_t>(8, 0))));
    CHECK(column_weights(SBox(2, 2, {0, 1, 2, 2})) == std::vector<std::size_t>{1, 2});

    Rng rng(1);
    for (int k = 0; k < 1000; ++k) {
        const unsigned n = 1 + static_cast<unsigned>(rng.below(8));
        const unsigned m = 1 + static_cast<unsigned>(rng.below(8));
        std::vector<std::uint16_t> t(std::size_t{1} << n);
        for (auto& v : t) v = static_cast<std::uint16_t>(rng.below(1U << m));
        const SBox s(n, m, t);
        const auto folded = std::accumulate(t.begin(), t.end(), 0U, [](unsigned a, unsigned b) { return a ^ b; });
        const auto w = column_weights(s);
        const bool even = std::all_of(w.begin(), w.end(), [](std::size_t c) { return c % 2 == 0; });
        REQUIRE(parity_condition(s) == (folded == 0));
        REQUIRE(parity_condition(s) == even);
    }
}

TEST_CASE("preimages") {
    const PreimageTable id(SBox::identity(3));
    for (Word v = 0; v < 8; ++v) {
        REQUIRE(id.count(v) == 1);
        CHECK(id.of(v)[0] == v);
    }
    CHECK(id.all_singletons());

    const PreimageTable p(SBox(2, 2, {0, 0, 1, 1}));
    CHECK(std::vector<std::uint16_t>(p.of(0).begin(), p.of(0).end()) == std::vector<std::uint16_t>{0, 1});
    CHECK(std::vector<std::uint16_t>(p.of(1).begin(), p.of(1).end()) == std::vector<std::uint16_t>{2, 3});
    CHECK(p.count(2) == 0);
    CHECK(p.count(3) == 0);
    CHECK_FALSE(p.all_singletons());

    Rng rng(2);
    for (int k = 0; k < 50; ++k) {
        const SBox s = random_permutation(2 + static_cast<unsigned>(rng.below(8)), rng);
        CHECK(preimages(s).all_singletons());
        CHECK(s.is_permutation());
    }
}

TEST_CASE("algebraic degree") {
    CHECK(algebraic_degree(SBox::identity(5)) == 1);
    CHECK(algebraic_degree(SBox(3, 3, std::vector<std::uint16_t>(8, 5))) == 0);
    CHECK(algebraic_degree(corpus("AES")) == 7);
    CHECK(algebraic_degree(corpus("CSS")) == 4);
    CHECK(algebraic_degree(corpus("FLY")) == 5);
    CHECK(algebraic_degree(corpus("ZUC_S0")) == 5);
    CHECK(algebraic_degree(corpus("ZUC_S1")) == 7);
    CHECK(algebraic_degree(corpus("CLEFIA_S0")) == 6);
    CHECK(algebraic_degree(corpus("SKINNY_8")) == 6);

    Rng rng(3);
    for (int k = 0; k < 300; ++k) {
        const unsigned n = 2 + static_cast<unsigned>(rng.below(6));
        const SBox s = rng.below(2) ? random_permutation(n, rng) : random_balanced(n, n, rng);
        REQUIRE(anf(s) == oracle::anf(s));
        REQUIRE(algebraic_degree(s) == oracle::degree(s));
        const SBox t = apply_affine(s, random_invertible_affine(n, rng), random_invertible_affine(n, rng));
        REQUIRE(algebraic_degree(t) == algebraic_degree(s));
    }
}

TEST_CASE("apply_affine") {
    Rng rng(4);
    const SBox s = random_permutation(4, rng);
    CHECK(apply_affine(s, AffineMap::identity(4), AffineMap::identity(4)) == s);
    const SBox neg = apply_affine(s, AffineMap::identity(4), AffineMap(BitMatrix::identity(4), BitVec(4, 0b1001)));
    for (Word x = 0; x < 16; ++x) CHECK(neg(x) == (s(x) ^ 0b1001));
    CHECK_THROWS_AS(apply_affine(s, AffineMap::identity(3), AffineMap::identity(4)), InputError);

    for (int k = 0; k < 300; ++k) {
        const unsigned n = 2 + static_cast<unsigned>(rng.below(7));
        const bool perm = rng.below(2) == 0;
        const SBox b = perm ? random_permutation(n, rng) : random_balanced(n, n, rng);
        const AffineMap in = random_invertible_affine(n, rng);
        const AffineMap out = random_invertible_affine(n, rng);
        const SBox t = apply_affine(b, in, out);
        for (Word x = 0; x < b.size(); ++x) REQUIRE(t(x) == out.apply(b(in.apply(x))));
        REQUIRE(parity_condition(t) == parity_condition(b));
        REQUIRE(t.is_permutation() == b.is_permutation());
    }
}

TEST_CASE("shift_input_output") {
    const SBox id = SBox::identity(3);
    CHECK(shift_input_output(id, 5) == id);
    Rng rng(5);
    const SBox s = random_permutation(4, rng);
    const SBox z = shift_input_output(s, 0);
    for (Word x = 0; x < 16; ++x) CHECK(z(x) == (s(x) ^ s(0)));
    for (Word a = 0; a < 16; ++a) CHECK(shift_input_output(s, a).is_zero_point());
    const SBox zp = shift_input_output(s, 0);
    CHECK(shift_input_output(zp, 0) == zp);
}

TEST_CASE("generators") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const SBox p = generate(BoxKind::permutation, 4, seed);
        CHECK(p.is_permutation());
        CHECK(parity_condition(p));
        const SBox b = generate(BoxKind::balanced, 4, seed);
        CHECK(parity_condition(b));
        CHECK(generate(BoxKind::permutation, 4, seed) == p);
    }
    CHECK_FALSE(generate(BoxKind::balanced, 6, 9).is_permutation());
    CHECK_THROWS_AS(generate(BoxKind::permutation, 1, 0), InputError);
    CHECK_THROWS_AS(generate(BoxKind::permutation, 13, 0), InputError);
    Rng rng(6);
    for (int k = 0; k < 100; ++k) CHECK(is_invertible(random_invertible_matrix(1 + k % 16, rng)));
}
