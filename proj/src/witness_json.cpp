#include "sboxeq/witness_json.hpp"

#include <fstream>

#include "sboxeq/errors.hpp"

namespace sboxeq {

namespace {

BitMatrix relabel(const BitMatrix& m, BitConvention c) { return c == BitConvention::msb0 ? reverse_indices(m) : m; }

BitVec relabel(const BitVec& v, BitConvention c) {
    return c == BitConvention::msb0 ? BitVec(v.width(), reverse_bits(v.bits(), v.width())) : v;
}

BitMatrix read_matrix(const nlohmann::json& j, const char* key, unsigned size) {
    if (!j.contains(key) || !j[key].is_array()) throw InputError(std::string("witness: missing array '") + key + "'");
    std::vector<std::string> rows;
    for (const auto& r : j[key]) {
        if (!r.is_string()) throw InputError(std::string("witness: '") + key + "' rows must be bitstrings");
        rows.push_back(r.get<std::string>());
    }
    BitMatrix m = from_row_strings(rows);
    if (m.rows() != size || m.cols() != size) {
        throw InputError(std::string("witness: '") + key + "' must be " + std::to_string(size) + "x" +
                         std::to_string(size));
    }
    return m;
}

BitVec read_vector(const nlohmann::json& j, const char* key, unsigned size) {
    if (!j.contains(key) || !j[key].is_string()) throw InputError(std::string("witness: missing bitstring '") + key + "'");
    const auto s = j[key].get<std::string>();
    if (s.size() != size) throw InputError(std::string("witness: '") + key + "' must have " + std::to_string(size) + " bits");
    return BitVec(size, from_bitstring(s));
}

}  // namespace

const char* to_string(BitConvention c) { return c == BitConvention::msb0 ? "msb0" : "lsb0"; }

nlohmann::json witness_to_json(const EquivalenceWitness& w, const CountStats* stats, BitConvention convention) {
    nlohmann::json j;
    j["n"] = w.l1.rows();
    j["m"] = w.l2.rows();
    j["l1"] = to_row_strings(relabel(w.l1, convention));
    j["c1"] = to_bitstring(relabel(w.c1, convention).bits(), w.c1.width());
    j["l2"] = to_row_strings(relabel(w.l2, convention));
    j["c2"] = to_bitstring(relabel(w.c2, convention).bits(), w.c2.width());
    if (stats) {
        j["count"] = stats->count;
        j["elapsed_ms"] = std::chrono::duration<double, std::milli>(stats->elapsed).count();
    } else {
        j["count"] = nullptr;
        j["elapsed_ms"] = nullptr;
    }
    j["bit_convention"] = to_string(convention);
    return j;
}

WitnessFile witness_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("witness: expected a JSON object");
    if (!j.contains("n") || !j["n"].is_number_unsigned() || !j.contains("m") || !j["m"].is_number_unsigned()) {
        throw InputError("witness: missing 'n' or 'm'");
    }
    const auto n = j["n"].get<unsigned>();
    const auto m = j["m"].get<unsigned>();
    if (n < 1 || n > kMaxWidth || m < 1 || m > kMaxWidth) throw InputError("witness: widths must be in [1, 16]");
    WitnessFile f;
    const std::string conv = j.value("bit_convention", std::string("lsb0"));
    if (conv == "msb0") {
        f.convention = BitConvention::msb0;
    } else if (conv != "lsb0") {
        throw InputError("witness: bit_convention must be lsb0 or msb0");
    }
    f.witness.l1 = relabel(read_matrix(j, "l1", n), f.convention);
    f.witness.c1 = relabel(read_vector(j, "c1", n), f.convention);
    f.witness.l2 = relabel(read_matrix(j, "l2", m), f.convention);
    f.witness.c2 = relabel(read_vector(j, "c2", m), f.convention);
    if (j.contains("count") && j["count"].is_number_unsigned()) f.count = j["count"].get<std::uint64_t>();
    return f;
}

WitnessFile load_witness_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path.string() + ": cannot open");
    try {
        return witness_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

}  // namespace sboxeq
