#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "sboxeq/ae_solver.hpp"

namespace sboxeq {

enum class BitConvention { lsb0, msb0 };

const char* to_string(BitConvention c);

/// {"n","m","l1":[rows],"c1","l2":[rows],"c2","count","elapsed_ms","bit_convention"}.
/// Rows and vectors are bitstrings; under msb0, character 0 is the most significant
/// index on every axis. `stats` empty writes null count/elapsed.
nlohmann::json witness_to_json(const EquivalenceWitness& w, const CountStats* stats = nullptr,
                               BitConvention convention = BitConvention::lsb0);

struct WitnessFile {
    EquivalenceWitness witness;  // always lsb0 after loading
    BitConvention convention = BitConvention::lsb0;
    std::optional<std::uint64_t> count;
};

WitnessFile witness_from_json(const nlohmann::json& j);
WitnessFile load_witness_file(const std::filesystem::path& path);

}  // namespace sboxeq
