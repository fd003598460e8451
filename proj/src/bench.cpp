#include "sboxeq/bench.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "sboxeq/brute_force.hpp"
#include "sboxeq/errors.hpp"

namespace sboxeq {

const char* to_string(Variant v) {
    switch (v) {
        case Variant::full: return "full";
        case Variant::no_sosm: return "no_sosm";
        case Variant::no_zeroization: return "no_zeroization";
    }
    return "?";
}

Variant parse_variant(const std::string& s) {
    if (s == "full") return Variant::full;
    if (s == "no_sosm") return Variant::no_sosm;
    if (s == "no_zeroization") return Variant::no_zeroization;
    throw InputError("unknown variant '" + s + "' (full, no_sosm, no_zeroization)");
}

InstanceKind InstanceKind::parse(const std::string& s) {
    InstanceKind k;
    if (s == "permutation") {
        k.tag = Tag::permutation;
    } else if (s == "balanced") {
        k.tag = Tag::balanced;
    } else if (s.rfind("ae_of:", 0) == 0 && s.size() > 6) {
        k.tag = Tag::ae_of;
        k.corpus_name = s.substr(6);
    } else {
        throw InputError("unknown kind '" + s + "' (permutation, balanced, ae_of:NAME)");
    }
    return k;
}

std::string InstanceKind::label() const {
    switch (tag) {
        case Tag::permutation: return "permutation";
        case Tag::balanced: return "balanced";
        case Tag::ae_of: return "ae_of:" + corpus_name;
    }
    return "?";
}

void BenchConfig::validate() const {
    if (trials < 1) throw InputError("bench: trials must be >= 1");
    if (jobs < 1) throw InputError("bench: jobs must be >= 1");
    if (kind.tag == InstanceKind::Tag::ae_of) {
        if (kind.base.size() == 0) throw InputError("bench: ae_of needs a loaded base S-box");
        if (scrambled > 0 && kind.base.n() > 4) throw InputError("bench: scrambled controls need n <= 4");
        return;
    }
    if (ns.empty()) throw InputError("bench: empty n range");
    for (unsigned n : ns) {
        if (n < 2 || n > 12) throw InputError("bench: n must be in [2, 12]");
        if (scrambled > 0 && n > 4) throw InputError("bench: scrambled controls need n <= 4");
    }
}

std::uint64_t trial_seed(std::uint64_t seed, unsigned n, unsigned trial) {
    return mix_seed(mix_seed(seed ^ (std::uint64_t{n} << 40)) + trial);
}

namespace {

AeOptions options_for(const BenchConfig& c) {
    AeOptions o;
    o.solver.count_limit = c.count_limit;
    o.solver.time_limit = c.time_limit;
    o.solver.use_sosm_pruning = c.variant != Variant::no_sosm;
    o.zeroization = c.variant != Variant::no_zeroization;
    return o;
}

BoxKind box_kind(const InstanceKind& k) {
    return k.tag == InstanceKind::Tag::balanced ? BoxKind::balanced : BoxKind::permutation;
}

BenchRow run_trial(const BenchConfig& c, unsigned n, unsigned trial) {
    BenchRow row;
    row.n = n;
    row.variant = c.variant;
    row.trial = trial;
    row.seed = trial_seed(c.seed, n, trial);

    SBox s1;
    SBox s2;
    if (trial < c.trials) {
        if (c.kind.tag == InstanceKind::Tag::ae_of) {
            // Named box on the zeroized side, its random equivalent shifted.
            Rng rng(row.seed);
            AePair p = make_ae_pair(c.kind.base, rng);
            s1 = std::move(p.s2);
            s2 = std::move(p.s1);
        } else {
            AePair p = generate_ae_pair(box_kind(c.kind), n, row.seed);
            s1 = std::move(p.s1);
            s2 = std::move(p.s2);
        }
        row.equivalent = true;
    } else {
        Rng rng(row.seed);
        if (c.kind.tag == InstanceKind::Tag::ae_of) {
            s1 = c.kind.base;
            s2 = c.kind.base.is_permutation() ? random_permutation(n, rng) : random_balanced(n, c.kind.base.m(), rng);
        } else {
            s1 = generate(box_kind(c.kind), n, rng.next());
            s2 = generate(box_kind(c.kind), n, rng.next());
        }
        row.equivalent = brute::find_affine(s1, s2).has_value();
    }

    const AeResult r = solve_ae(s1, s2, options_for(c));
    row.verdict = r.verdict;
    row.count = r.stats.count;
    row.log2_count = std::log2(static_cast<double>(std::max<std::uint64_t>(r.stats.count, 1)));
    row.elapsed_ms = std::chrono::duration<double, std::milli>(r.stats.elapsed).count();
    if (r.verdict == Verdict::Found) {
        row.verdict_correct = row.equivalent && r.witness && verify_witness(s1, s2, *r.witness);
    } else if (r.verdict == Verdict::NotEquivalent) {
        row.verdict_correct = !row.equivalent;
    }
    return row;
}

}  // namespace

std::vector<BenchRow> run_bench(const BenchConfig& config) {
    config.validate();
    std::vector<std::pair<unsigned, unsigned>> jobs;
    const unsigned per_n = config.trials + config.scrambled;
    if (config.kind.tag == InstanceKind::Tag::ae_of) {
        for (unsigned t = 0; t < per_n; ++t) jobs.emplace_back(config.kind.base.n(), t);
    } else {
        for (unsigned n : config.ns) {
            for (unsigned t = 0; t < per_n; ++t) jobs.emplace_back(n, t);
        }
    }
    std::vector<BenchRow> rows(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            try {
                rows[i] = run_trial(config, jobs[i].first, jobs[i].second);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(jobs.size());
                return;
            }
        }
    };
    const unsigned workers = std::max(1U, std::min<unsigned>(config.jobs, static_cast<unsigned>(jobs.size())));
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);
    return rows;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRow>& rows, unsigned constructed_trials) {
    std::map<unsigned, BenchSummary> by_n;
    std::map<unsigned, unsigned> constructed;
    std::map<unsigned, double> count_sum;
    for (const auto& r : rows) {
        auto& s = by_n[r.n];
        s.n = r.n;
        ++s.trials;
        s.correct += r.verdict_correct ? 1 : 0;
        s.inconclusive += r.verdict == Verdict::Inconclusive ? 1 : 0;
        if (r.trial < constructed_trials) {
            s.mean_log2_count += r.log2_count;
            count_sum[r.n] += static_cast<double>(r.count);
            ++constructed[r.n];
        }
    }
    std::vector<BenchSummary> out;
    for (auto& [n, s] : by_n) {
        if (constructed[n] > 0) {
            s.mean_log2_count /= constructed[n];
            s.log2_mean_count = std::log2(std::max(1.0, count_sum[n] / constructed[n]));
        }
        out.push_back(s);
    }
    return out;
}

void write_csv_header(std::ostream& os) {
    os << "n,variant,trial,seed,equivalent,verdict_correct,count,log2_count,elapsed_ms,verdict\n";
}

void write_csv_row(std::ostream& os, const BenchRow& r) {
    std::ostringstream line;
    line << r.n << ',' << to_string(r.variant) << ',' << r.trial << ',' << r.seed << ','
         << (r.equivalent ? "true" : "false") << ',' << (r.verdict_correct ? "true" : "false") << ',' << r.count
         << ',' << std::fixed << std::setprecision(2) << r.log2_count << ',' << std::setprecision(3) << r.elapsed_ms
         << ',' << to_string(r.verdict) << '\n';
    os << line.str();
}

void write_summary(std::ostream& os, const std::vector<BenchSummary>& summary, Variant variant) {
    for (const auto& s : summary) {
        std::ostringstream line;
        line << "n=" << s.n << " variant=" << to_string(variant) << " trials=" << s.trials << " accuracy=" << std::fixed
             << std::setprecision(1) << 100.0 * s.correct / s.trials << "% mean_log2_count=" << std::setprecision(2)
             << s.mean_log2_count << " log2_mean_count=" << s.log2_mean_count;
        if (s.inconclusive > 0) line << " inconclusive=" << s.inconclusive;
        os << line.str() << '\n';
    }
}

std::vector<unsigned> parse_n_range(const std::string& s) {
    std::vector<unsigned> out;
    auto num = [&](const std::string& t) {
        if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos || t.size() > 3) {
            throw InputError("bad n value '" + t + "'");
        }
        return static_cast<unsigned>(std::stoul(t));
    };
    std::stringstream ss(s);
    for (std::string part; std::getline(ss, part, ',');) {
        const auto dash = part.find('-');
        if (dash == std::string::npos) {
            out.push_back(num(part));
            continue;
        }
        const unsigned lo = num(part.substr(0, dash));
        const unsigned hi = num(part.substr(dash + 1));
        if (lo > hi) throw InputError("bad n range '" + part + "'");
        for (unsigned n = lo; n <= hi; ++n) out.push_back(n);
    }
    if (out.empty()) throw InputError("empty n range");
    return out;
}

void apply_config_json(BenchConfig& c, const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("bench config: expected a JSON object");
    try {
        for (const auto& [key, v] : j.items()) {
            if (key == "n") {
                if (v.is_array()) {
                    c.ns = v.get<std::vector<unsigned>>();
                } else if (v.is_number_unsigned()) {
                    c.ns = {v.get<unsigned>()};
                } else {
                    c.ns = parse_n_range(v.get<std::string>());
                }
            } else if (key == "trials") {
                c.trials = v.get<unsigned>();
            } else if (key == "variant") {
                c.variant = parse_variant(v.get<std::string>());
            } else if (key == "kind") {
                c.kind = InstanceKind::parse(v.get<std::string>());
            } else if (key == "seed") {
                c.seed = v.get<std::uint64_t>();
            } else if (key == "count_limit") {
                c.count_limit = v.get<std::uint64_t>();
            } else if (key == "time_limit_ms") {
                c.time_limit = std::chrono::milliseconds(v.get<std::int64_t>());
            } else if (key == "scrambled") {
                c.scrambled = v.get<unsigned>();
            } else if (key == "jobs") {
                c.jobs = v.get<unsigned>();
            } else {
                throw InputError("bench config: unknown key '" + key + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bench config: ") + e.what());
    }
}

}  // namespace sboxeq
