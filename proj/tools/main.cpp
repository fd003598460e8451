// sboxeq command-line front end.
#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <string>

#include "sboxeq/ae_solver.hpp"
#include "sboxeq/bench.hpp"
#include "sboxeq/corpus_io.hpp"
#include "sboxeq/errors.hpp"
#include "sboxeq/sosm.hpp"
#include "sboxeq/witness_json.hpp"

namespace {

using namespace sboxeq;

enum Exit : int { kEquivalent = 0, kNotEquivalent = 1, kInputError = 2, kInconclusive = 3 };

struct CheckArgs {
    std::string a;
    std::string b;
    bool json = false;
    bool no_sosm = false;
    bool no_zeroization = false;
    std::optional<std::uint64_t> count_limit;
    std::optional<std::int64_t> time_limit_ms;
    unsigned jobs = 1;
};

unsigned default_jobs() {
    if (const char* env = std::getenv("SBOXEQ_JOBS")) {
        try {
            const unsigned long v = std::stoul(env);
            if (v >= 1 && v <= 1024) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        std::cerr << "warning: ignoring SBOXEQ_JOBS='" << env << "'\n";
    }
    return 1;
}

void print_witness_text(const EquivalenceWitness& w) {
    auto rows = [](const char* label, const BitMatrix& m) {
        std::cout << label << ":\n";
        for (const auto& r : to_row_strings(m)) std::cout << "  " << r << '\n';
    };
    rows("l1", w.l1);
    std::cout << "c1: " << to_bitstring(w.c1.bits(), w.c1.width()) << '\n';
    rows("l2", w.l2);
    std::cout << "c2: " << to_bitstring(w.c2.bits(), w.c2.width()) << '\n';
}

int report_result(const AeResult& r, bool json) {
    if (json) {
        nlohmann::json j;
        j["verdict"] = to_string(r.verdict);
        j["count"] = r.stats.count;
        j["elapsed_ms"] = std::chrono::duration<double, std::milli>(r.stats.elapsed).count();
        j["sosm_rank"] = r.sosm_rank ? nlohmann::json(*r.sosm_rank) : nlohmann::json(nullptr);
        j["rank_mismatch"] = r.rank_mismatch;
        if (r.shift) j["shift"] = *r.shift;
        if (r.witness) j["witness"] = witness_to_json(*r.witness, &r.stats);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << "verdict: " << to_string(r.verdict) << '\n';
        if (r.rank_mismatch) std::cout << "reason: SOSM ranks differ\n";
        std::cout << "count: " << r.stats.count << '\n';
        if (r.witness) {
            std::cout << "witness (lsb0, s1(l1 x + c1) = l2 s2(x) + c2):\n";
            print_witness_text(*r.witness);
        }
    }
    switch (r.verdict) {
        case Verdict::Found: return kEquivalent;
        case Verdict::NotEquivalent: return kNotEquivalent;
        case Verdict::Inconclusive: return kInconclusive;
    }
    return kInputError;
}

SolverOptions solver_options(const CheckArgs& a) {
    SolverOptions o;
    o.use_sosm_pruning = !a.no_sosm;
    o.count_limit = a.count_limit;
    if (a.time_limit_ms) o.time_limit = std::chrono::milliseconds(*a.time_limit_ms);
    return o;
}

void add_check_options(CLI::App* cmd, CheckArgs& args, bool affine) {
    cmd->add_option("A", args.a, "first S-box file")->required()->check(CLI::ExistingFile);
    cmd->add_option("B", args.b, "second S-box file")->required()->check(CLI::ExistingFile);
    cmd->add_flag("--json", args.json, "print the result as JSON");
    cmd->add_flag("--no-sosm", args.no_sosm, "disable SOSM normal form and pruning");
    if (affine) {
        cmd->add_flag("--no-zeroization", args.no_zeroization, "search affine maps directly");
        cmd->add_option("--jobs", args.jobs, "threads for the shift loop (default: SBOXEQ_JOBS or 1)")
            ->check(CLI::Range(1, 1024));
    }
    cmd->add_option("--count-limit", args.count_limit, "abort as inconclusive beyond this Count");
    cmd->add_option("--time-limit-ms", args.time_limit_ms, "abort as inconclusive after this many ms")
        ->check(CLI::NonNegativeNumber);
}

void print_report(const std::vector<CorpusRow>& rows, bool json) {
    if (json) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto& r : rows) {
            nlohmann::json e{{"name", r.name}};
            if (r.entry) {
                e["n"] = r.entry->sbox.n();
                e["m"] = r.entry->sbox.m();
                e["permutation"] = r.entry->is_permutation;
                e["degree"] = r.entry->degree;
                e["sosm_rank"] = r.entry->sosm_rank;
                e["source"] = r.entry->source;
            } else {
                e["error"] = r.error;
            }
            out.push_back(std::move(e));
        }
        std::cout << out.dump(2) << '\n';
        return;
    }
    std::cout << std::left << std::setw(18) << "name" << std::setw(4) << "n" << std::setw(4) << "m" << std::setw(6)
              << "perm" << std::setw(8) << "degree" << std::setw(11) << "sosm_rank" << "source\n";
    for (const auto& r : rows) {
        std::cout << std::setw(18) << r.name;
        if (!r.entry) {
            std::cout << "error: " << r.error << '\n';
            continue;
        }
        const auto& e = *r.entry;
        std::cout << std::setw(4) << e.sbox.n() << std::setw(4) << e.sbox.m() << std::setw(6)
                  << (e.is_permutation ? "yes" : "no") << std::setw(8) << e.degree << std::setw(11) << e.sosm_rank
                  << e.source << '\n';
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError(path + ": cannot write");
    out << text;
}

int run(int argc, char** argv) {
    CLI::App app{"Affine and linear equivalence of S-boxes"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "sboxeq 1.0");

    CheckArgs ae;
    ae.jobs = default_jobs();
    auto* check_ae = app.add_subcommand("check-ae", "decide affine equivalence (exit 0 equivalent, 1 not, 3 inconclusive)");
    add_check_options(check_ae, ae, true);

    CheckArgs le;
    auto* check_le = app.add_subcommand("check-le", "decide linear equivalence (same exit codes)");
    add_check_options(check_le, le, false);

    std::string sosm_path;
    auto* sosm_cmd = app.add_subcommand("sosm", "print the SOSM and its rank as JSON");
    sosm_cmd->add_option("A", sosm_path, "S-box file")->required()->check(CLI::ExistingFile);

    std::string gen_kind = "permutation";
    unsigned gen_n = 4;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    auto* gen = app.add_subcommand("gen", "generate a random S-box or an affine-equivalent pair");
    gen->add_option("--kind", gen_kind, "permutation | balanced | ae_pair")
        ->check(CLI::IsMember({"permutation", "balanced", "ae_pair"}));
    gen->add_option("--n", gen_n, "input width")->check(CLI::Range(2, 12));
    gen->add_option("--seed", gen_seed, "PRNG seed");
    gen->add_option("-o,--out", gen_out, "output file (ae_pair: prefix for _s1.sbox, _s2.sbox, _witness.json)");

    std::string witness_path;
    std::string verify_a;
    std::string verify_b;
    auto* verify = app.add_subcommand("verify", "check a witness exhaustively (exit 0 valid, 1 invalid)");
    verify->add_option("--witness", witness_path, "witness JSON")->required()->check(CLI::ExistingFile);
    verify->add_option("A", verify_a, "S-box s1")->required()->check(CLI::ExistingFile);
    verify->add_option("B", verify_b, "S-box s2")->required()->check(CLI::ExistingFile);

    std::string report_dir;
    bool report_json = false;
    auto* report = app.add_subcommand("report", "degree, SOSM rank and invertibility of every .sbox file");
    report->add_option("DIR", report_dir, "corpus directory")->required()->check(CLI::ExistingDirectory);
    report->add_flag("--json", report_json, "print JSON instead of a table");

    std::string bench_config;
    std::string bench_n;
    std::optional<unsigned> bench_trials;
    std::string bench_variant;
    std::string bench_kind;
    std::optional<std::uint64_t> bench_seed;
    std::optional<std::uint64_t> bench_count_limit;
    std::optional<std::int64_t> bench_time_limit;
    std::optional<unsigned> bench_scrambled;
    std::optional<unsigned> bench_jobs;
    std::string bench_out;
    std::string corpus_dir = std::string(SBOXEQ_DATA_DIR) + "/sboxes";
    auto* bench = app.add_subcommand("bench", "run seeded trials and emit CSV (summary on stderr)");
    bench->add_option("--config", bench_config, "JSON config; flags override it")->check(CLI::ExistingFile);
    bench->add_option("--n", bench_n, "widths, e.g. 4-8 or 4,6");
    bench->add_option("--trials", bench_trials, "constructed pairs per n")->check(CLI::PositiveNumber);
    bench->add_option("--variant", bench_variant, "full | no_sosm | no_zeroization");
    bench->add_option("--kind", bench_kind, "permutation | balanced | ae_of:NAME");
    bench->add_option("--seed", bench_seed, "base seed");
    bench->add_option("--count-limit", bench_count_limit, "per-trial Count cap");
    bench->add_option("--time-limit-ms", bench_time_limit, "per-trial time cap")->check(CLI::NonNegativeNumber);
    bench->add_option("--scrambled", bench_scrambled, "independent random control pairs per n (n <= 4)");
    bench->add_option("--jobs", bench_jobs, "parallel trials (default: SBOXEQ_JOBS or 1)")->check(CLI::Range(1, 1024));
    bench->add_option("--out", bench_out, "CSV file instead of stdout");
    bench->add_option("--corpus-dir", corpus_dir, "where ae_of:NAME is looked up");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kInputError;
    }

    if (*check_ae) {
        AeOptions o;
        o.solver = solver_options(ae);
        o.zeroization = !ae.no_zeroization;
        o.jobs = ae.jobs;
        return report_result(solve_ae(load_sbox_file(ae.a), load_sbox_file(ae.b), o), ae.json);
    }
    if (*check_le) {
        return report_result(decide_le(load_sbox_file(le.a), load_sbox_file(le.b), solver_options(le)), le.json);
    }
    if (*sosm_cmd) {
        const SBox s = load_sbox_file(sosm_path);
        const BitMatrix m = sosm(s);
        nlohmann::json j{{"n", s.n()}, {"m", s.m()}, {"sosm", to_row_strings(m)}, {"rank", rank(m)},
                         {"parity_condition", parity_condition(s)}};
        std::cout << j.dump(2) << '\n';
        return 0;
    }
    if (*gen) {
        if (gen_kind == "ae_pair") {
            const AePair p = generate_ae_pair(BoxKind::permutation, gen_n, gen_seed);
            const std::string tag = "seed " + std::to_string(gen_seed);
            const std::string t1 = format_sbox_text(p.s1, {"ae_pair s1, " + tag});
            const std::string t2 = format_sbox_text(p.s2, {"ae_pair s2, " + tag});
            const std::string w = witness_to_json(p.witness).dump(2) + "\n";
            if (gen_out.empty()) {
                std::cout << t1 << t2 << w;
            } else {
                write_text(gen_out + "_s1.sbox", t1);
                write_text(gen_out + "_s2.sbox", t2);
                write_text(gen_out + "_witness.json", w);
            }
            return 0;
        }
        const BoxKind kind = gen_kind == "balanced" ? BoxKind::balanced : BoxKind::permutation;
        const std::string text =
            format_sbox_text(generate(kind, gen_n, gen_seed), {gen_kind + ", seed " + std::to_string(gen_seed)});
        if (gen_out.empty()) {
            std::cout << text;
        } else {
            write_text(gen_out, text);
        }
        return 0;
    }
    if (*verify) {
        const WitnessFile w = load_witness_file(witness_path);
        const bool ok = verify_witness(load_sbox_file(verify_a), load_sbox_file(verify_b), w.witness);
        std::cout << (ok ? "valid" : "invalid") << " (" << to_string(w.convention) << ")\n";
        return ok ? 0 : 1;
    }
    if (*report) {
        print_report(corpus_report(report_dir), report_json);
        return 0;
    }
    if (*bench) {
        BenchConfig c;
        c.jobs = default_jobs();
        if (!bench_config.empty()) {
            std::ifstream in(bench_config);
            try {
                apply_config_json(c, nlohmann::json::parse(in));
            } catch (const nlohmann::json::parse_error& e) {
                throw InputError(bench_config + ": " + e.what());
            }
        }
        if (!bench_n.empty()) c.ns = parse_n_range(bench_n);
        if (bench_trials) c.trials = *bench_trials;
        if (!bench_variant.empty()) c.variant = parse_variant(bench_variant);
        if (!bench_kind.empty()) c.kind = InstanceKind::parse(bench_kind);
        if (bench_seed) c.seed = *bench_seed;
        if (bench_count_limit) c.count_limit = *bench_count_limit;
        if (bench_time_limit) c.time_limit = std::chrono::milliseconds(*bench_time_limit);
        if (bench_scrambled) c.scrambled = *bench_scrambled;
        if (bench_jobs) c.jobs = *bench_jobs;
        if (c.kind.tag == InstanceKind::Tag::ae_of) {
            c.kind.base = load_sbox_file(std::filesystem::path(corpus_dir) / (c.kind.corpus_name + ".sbox"));
        }
        const auto rows = run_bench(c);
        std::ofstream file;
        if (!bench_out.empty()) {
            file.open(bench_out);
            if (!file) throw InputError(bench_out + ": cannot write");
        }
        std::ostream& os = bench_out.empty() ? std::cout : file;
        write_csv_header(os);
        for (const auto& r : rows) write_csv_row(os, r);
        std::cerr << "kind=" << c.kind.label() << '\n';
        write_summary(std::cerr, summarize(rows, c.trials), c.variant);
        return 0;
    }
    return kInputError;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const sboxeq::InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 4;
    }
}
