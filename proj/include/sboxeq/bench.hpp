#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sboxeq/ae_solver.hpp"

namespace sboxeq {

enum class Variant { full, no_sosm, no_zeroization };

const char* to_string(Variant v);
Variant parse_variant(const std::string& s);

struct InstanceKind {
    enum class Tag { permutation, balanced, ae_of } tag = Tag::permutation;
    std::string corpus_name;  // ae_of only
    SBox base;                // ae_of only, loaded by the caller

    static InstanceKind parse(const std::string& s);  // "permutation" | "balanced" | "ae_of:NAME"
    std::string label() const;
};

struct BenchConfig {
    std::vector<unsigned> ns{4};  // ignored for ae_of (the base box fixes n)
    unsigned trials = 1;
    Variant variant = Variant::full;
    InstanceKind kind;
    std::uint64_t seed = 1;
    std::optional<std::uint64_t> count_limit;
    std::optional<std::chrono::milliseconds> time_limit;
    /// Extra trials per n on independent random boxes; ground truth from the
    /// exhaustive oracle, so only n <= 4.
    unsigned scrambled = 0;
    unsigned jobs = 1;

    void validate() const;
};

struct BenchRow {
    unsigned n = 0;
    Variant variant = Variant::full;
    unsigned trial = 0;
    std::uint64_t seed = 0;
    bool equivalent = false;
    bool verdict_correct = false;
    std::uint64_t count = 0;
    double log2_count = 0;  // log2(max(count, 1)), two decimals in CSV
    double elapsed_ms = 0;
    Verdict verdict = Verdict::NotEquivalent;
};

struct BenchSummary {
    unsigned n = 0;
    unsigned trials = 0;
    unsigned correct = 0;
    unsigned inconclusive = 0;
    // Both over the constructed (equivalent) trials.
    double mean_log2_count = 0;
    double log2_mean_count = 0;
};

/// Seed of trial `trial` at width n; independent of the variant so ablations
/// see the same instances.
std::uint64_t trial_seed(std::uint64_t seed, unsigned n, unsigned trial);

/// Rows in (n, trial) order whatever the job count. Trials [0, trials) are
/// constructed pairs; [trials, trials + scrambled) are controls.
std::vector<BenchRow> run_bench(const BenchConfig& config);

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows, unsigned constructed_trials);

void write_csv_header(std::ostream& os);
void write_csv_row(std::ostream& os, const BenchRow& row);
void write_summary(std::ostream& os, const std::vector<BenchSummary>& summary, Variant variant);

/// Config file keys mirror the CLI flags: n (list or "lo-hi"), trials, variant,
/// kind, seed, count_limit, time_limit_ms, scrambled, jobs.
void apply_config_json(BenchConfig& config, const nlohmann::json& j);

/// "4-8", "4,6,8" or "5".
std::vector<unsigned> parse_n_range(const std::string& s);

}  // namespace sboxeq
