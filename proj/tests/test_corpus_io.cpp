#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"
#include "sboxeq/ae_solver.hpp"
#include "sboxeq/corpus_io.hpp"
#include "sboxeq/errors.hpp"
#include "sboxeq/sosm.hpp"
#include "sboxeq/witness_json.hpp"

using namespace sboxeq;
namespace fs = std::filesystem;

namespace {

const fs::path kData = SBOXEQ_DATA_DIR;

std::string error_of(std::string_view text) {
    try {
        parse_sbox_text(text, "t");
    } catch (const InputError& e) {
        return e.what();
    }
    return {};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) : path(fs::temp_directory_path() / ("sboxeq_" + tag)) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("parsing") {
    CHECK(parse_sbox_text("2 2\n0 1 3 2\n") == SBox(2, 2, {0, 1, 3, 2}));
    CHECK(parse_sbox_text("# c\n2 2 hex\n0 1 3 2") == SBox(2, 2, {0, 1, 3, 2}));
    CHECK(parse_sbox_text("2 4\n0 a 3 f\n") == SBox(2, 4, {0, 10, 3, 15}));
    CHECK(parse_sbox_text("1 8\n100 0\n")(0) == 100u);

    const std::string short_table = error_of("3 3\n0 1 2 3 4 5 6\n");
    CHECK(short_table.find("expected 2^3 = 8 entries, found 7") != std::string::npos);
    CHECK(short_table.rfind("t:", 0) == 0);
    CHECK(error_of("1 8\n1ff 0\n").find("'1ff' is >= 2^8") != std::string::npos);
    CHECK(error_of("1 8\n1ff 0\n").find("t:2:1:") != std::string::npos);
    CHECK_FALSE(error_of("2 2\n0 1 2 x\n").empty());
    CHECK_FALSE(error_of("").empty());
    CHECK_FALSE(error_of("2\n0 1 2 3").empty());
}

TEST_CASE("format round trip") {
    Rng rng(1);
    for (unsigned n = 1; n <= 10; ++n) {
        const SBox s = random_balanced(n, n > 2 ? n - 1 : n, rng);
        REQUIRE(parse_sbox_text(format_sbox_text(s, {"x", "source: y"})) == s);
    }
    CHECK(parse_sbox_text(format_sbox_text(SBox(1, 1, {0, 0}))) == SBox(1, 1, {0, 0}));
    CHECK(format_sbox_text(SBox::identity(2), {"hello"}).rfind("# hello\n", 0) == 0);
}

TEST_CASE("corpus tags") {
    const auto rows = corpus_report(kData / "sboxes");
    REQUIRE(rows.size() >= 30);
    CHECK(std::is_sorted(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.name < b.name; }));
    for (const auto& row : rows) {
        INFO(row.name);
        REQUIRE(row.entry.has_value());
        const auto& e = *row.entry;
        CHECK_FALSE(e.source.empty());
        CHECK(e.sbox.n() == 8);
        CHECK(e.is_permutation);
        CHECK(parity_condition(e.sbox));
        CHECK(e.degree == oracle::degree(e.sbox));
        CHECK(e.sosm_rank == rank(oracle::sosm(e.sbox)));
    }
    auto find = [&](const std::string& name) {
        for (const auto& r : rows)
            if (r.name == name) return *r.entry;
        FAIL("missing " << name);
        return *rows.front().entry;
    };
    CHECK(find("AES").degree == 7);
    CHECK(find("CSS").degree == 4);
    CHECK(find("AES").sosm_rank == 8);
    CHECK(find("CSS").sosm_rank == 0);
}

TEST_CASE("report on odd directories") {
    TempDir empty("empty");
    CHECK(corpus_report(empty.path).empty());

    TempDir mixed("mixed");
    std::ofstream(mixed.path / "b.sbox") << "2 2\n0 1 3 2\n";
    std::ofstream(mixed.path / "a.sbox") << "2 2\n0 1 3\n";
    std::ofstream(mixed.path / "notes.txt") << "ignored\n";
    const auto rows = corpus_report(mixed.path);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].name == "a");
    CHECK_FALSE(rows[0].entry.has_value());
    CHECK(rows[0].error.find("expected 2^2 = 4 entries") != std::string::npos);
    CHECK(rows[1].entry.has_value());
    CHECK_THROWS_AS(corpus_report(mixed.path / "nope"), InputError);
    CHECK_THROWS_AS(load_sbox_file(mixed.path / "nope.sbox"), InputError);
}

TEST_CASE("witness JSON") {
    const AePair p = generate_ae_pair(BoxKind::permutation, 6, 5);
    for (BitConvention c : {BitConvention::lsb0, BitConvention::msb0}) {
        CountStats stats;
        stats.count = 42;
        const WitnessFile back = witness_from_json(witness_to_json(p.witness, &stats, c));
        CHECK(back.witness == p.witness);
        CHECK(back.convention == c);
        CHECK(back.count == std::optional<std::uint64_t>(42));
    }
    const auto j = witness_to_json(p.witness);
    CHECK(j["count"].is_null());
    CHECK(j["bit_convention"] == "lsb0");
    CHECK_FALSE(witness_from_json(j).count.has_value());

    auto bad = j;
    bad["l1"][0] = "01";
    CHECK_THROWS_AS(witness_from_json(bad), InputError);
    bad = j;
    bad["bit_convention"] = "middle";
    CHECK_THROWS_AS(witness_from_json(bad), InputError);
    bad = j;
    bad.erase("c2");
    CHECK_THROWS_AS(witness_from_json(bad), InputError);
}

TEST_CASE("published AES-family witnesses") {
    const SBox aes = load_sbox_file(kData / "sboxes/AES.sbox");
    for (const char* other : {"ARIA_s2", "Camellia", "Chiasmus", "DBlock", "SEED_S0", "SMS4"}) {
        INFO(other);
        const WitnessFile w = load_witness_file(kData / "witnesses" / (std::string("AES_") + other + ".json"));
        CHECK(w.convention == BitConvention::msb0);
        const SBox s2 = load_sbox_file(kData / "sboxes" / (std::string(other) + ".sbox"));
        CHECK(verify_witness(aes, s2, w.witness));
        CHECK(equivalent_box(s2, w.witness) == aes);
    }
}
