#include "sboxeq/ae_solver.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

#include "sboxeq/errors.hpp"
#include "sboxeq/kernels.hpp"

namespace sboxeq {

namespace {

using Clock = std::chrono::steady_clock;

std::vector<std::uint16_t> affine_image(const BitMatrix& l, Word c, std::span<const std::uint16_t> in) {
    std::vector<std::uint16_t> cols(l.cols());
    for (unsigned j = 0; j < l.cols(); ++j) cols[j] = static_cast<std::uint16_t>(l.column(j));
    std::vector<std::uint16_t> out(in.size());
    kernels::active_kernels().map_linear(in, out, cols, static_cast<std::uint16_t>(c));
    return out;
}

SolverOptions remaining_budget(const SolverOptions& base, std::uint64_t spent, Clock::time_point start) {
    SolverOptions o = base;
    if (base.count_limit) o.count_limit = *base.count_limit > spent ? *base.count_limit - spent : 0;
    if (base.time_limit) {
        const auto used = std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
        o.time_limit = *base.time_limit > used ? *base.time_limit - used : std::chrono::milliseconds(0);
    }
    return o;
}

}  // namespace

bool verify_witness(const SBox& s1, const SBox& s2, const EquivalenceWitness& w) {
    if (s1.n() != s2.n() || s1.m() != s2.m()) return false;
    if (w.l1.rows() != s1.n() || w.l1.cols() != s1.n() || w.c1.width() != s1.n()) return false;
    if (w.l2.rows() != s1.m() || w.l2.cols() != s1.m() || w.c2.width() != s1.m()) return false;
    if (!is_invertible(w.l1) || !is_invertible(w.l2)) return false;
    std::vector<std::uint16_t> x(s1.size());
    std::iota(x.begin(), x.end(), std::uint16_t{0});
    const auto moved = affine_image(w.l1, w.c1.bits(), x);
    const auto rhs = affine_image(w.l2, w.c2.bits(), s2.table());
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (s1(moved[k]) != rhs[k]) return false;
    }
    return true;
}

SBox equivalent_box(const SBox& s2, const EquivalenceWitness& w) {
    const BitMatrix l1_inv = invert(w.l1);
    return apply_affine(s2, AffineMap(l1_inv, multiply(l1_inv, w.c1)), AffineMap(w.l2, w.c2));
}

AePair make_ae_pair(const SBox& base, Rng& rng) {
    AffineMap in = random_invertible_affine(base.n(), rng);
    AffineMap out = random_invertible_affine(base.m(), rng);
    EquivalenceWitness w{std::move(in.linear), in.constant, std::move(out.linear), out.constant};
    SBox s1 = equivalent_box(base, w);
    return {std::move(s1), base, std::move(w)};
}

AePair generate_ae_pair(BoxKind kind, unsigned n, std::uint64_t seed) {
    SBox base = generate(kind, n, seed);
    Rng rng(mix_seed(seed));
    return make_ae_pair(base, rng);
}

EquivalenceWitness unconjugate(const AffineMap& f1, const AffineMap& f2, const SosmNormalForm& nf1,
                               const SosmNormalForm& nf2) {
    // nf.transformed(x) = B s(T x) with T = (A^T)^-1, so s(z) = B^-1 nf.transformed(A^T z).
    const BitMatrix t1 = invert(nf1.right_a.transpose());
    const BitMatrix b1_inv = invert(nf1.left_b);
    return {multiply(multiply(t1, f1.linear), nf2.right_a.transpose()), multiply(t1, f1.constant),
            multiply(multiply(b1_inv, f2.linear), nf2.left_b), multiply(b1_inv, f2.constant)};
}

EquivalenceWitness assemble_witness(const BitMatrix& inner_l1, const BitMatrix& inner_l2, Word a,
                                    const SosmNormalForm& nf1, const SosmNormalForm& nf2, const SBox& s1,
                                    const SBox& s2) {
    // inner: s~1(M1 x) + s~1(0) == M2 (s~2(x + a) + s~2(a)); substitute u = x + a.
    const unsigned n = s1.n();
    const unsigned m = s1.m();
    const Word s1_at_0 = nf1.left_b.apply(s1(0));
    const Word c1 = inner_l1.apply(a);
    const Word c2 = inner_l2.apply(nf2.transformed(a)) ^ s1_at_0;
    EquivalenceWitness w = unconjugate(AffineMap(inner_l1, BitVec(n, c1)), AffineMap(inner_l2, BitVec(m, c2)),
                                       nf1, nf2);
    if (!verify_witness(s1, s2, w)) throw std::logic_error("assemble_witness: witness fails verification");
    return w;
}

AeResult decide_le(const SBox& s1, const SBox& s2, const SolverOptions& options) {
    const auto start = Clock::now();
    if (s1.n() != s2.n() || s1.m() != s2.m()) throw InputError("decide_le: S-boxes have different dimensions");
    if (!parity_condition(s1) || !parity_condition(s2)) {
        throw InputError("decide_le: S-box violates the parity condition");
    }
    AeResult result;
    SosmNormalForm nf1, nf2;
    if (options.use_sosm_pruning) {
        if (rank(sosm(s1)) != rank(sosm(s2))) {
            result.rank_mismatch = true;
            result.stats.elapsed = Clock::now() - start;
            return result;
        }
        nf1 = normal_form(s1);
        nf2 = normal_form(s2);
        result.sosm_rank = nf1.rank_r;
    } else {
        nf1 = trivial_normal_form(s1);
        nf2 = trivial_normal_form(s2);
    }
    const LeResult le = solve_le(nf1.transformed, nf2.transformed, nf1.rank_r, options);
    result.verdict = le.verdict;
    result.stats = le.stats;
    if (le.verdict == Verdict::Found) {
        EquivalenceWitness w = unconjugate(AffineMap(le.maps->l1, BitVec::zero(s1.n())),
                                           AffineMap(le.maps->l2, BitVec::zero(s1.m())), nf1, nf2);
        if (!verify_witness(s1, s2, w)) throw std::logic_error("decide_le: witness fails verification");
        result.witness = std::move(w);
    }
    result.stats.elapsed = Clock::now() - start;
    return result;
}

AeResult solve_ae(const SBox& s1, const SBox& s2, const AeOptions& options) {
    const auto start = Clock::now();
    if (s1.n() != s2.n() || s1.m() != s2.m()) throw InputError("solve_ae: S-boxes have different dimensions");
    if (!parity_condition(s1) || !parity_condition(s2)) {
        throw InputError("solve_ae: S-box violates the parity condition");
    }
    AeResult result;
    const bool use_sosm = options.solver.use_sosm_pruning;
    auto finish = [&]() -> AeResult& {
        result.stats.elapsed = Clock::now() - start;
        return result;
    };

    SosmNormalForm nf1, nf2;
    if (use_sosm) {
        const unsigned r1 = rank(sosm(s1));
        const unsigned r2 = rank(sosm(s2));
        if (r1 != r2) {
            result.rank_mismatch = true;
            return finish();
        }
        nf1 = normal_form(s1);
        nf2 = normal_form(s2);
        result.sosm_rank = nf1.rank_r;
    } else {
        nf1 = trivial_normal_form(s1);
        nf2 = trivial_normal_form(s2);
    }
    const unsigned r = nf1.rank_r;

    if (!options.zeroization) {
        AffineSearchResult inner = solve_affine_dfs(nf1.transformed, nf2.transformed, r, options.solver);
        result.stats = inner.stats;
        result.verdict = inner.verdict;
        if (inner.verdict == Verdict::Found) {
            EquivalenceWitness w = unconjugate(inner.maps->f1, inner.maps->f2, nf1, nf2);
            if (!verify_witness(s1, s2, w)) throw std::logic_error("solve_ae: witness fails verification");
            result.witness = std::move(w);
        }
        return finish();
    }

    const SBox zeroized = shift_input_output(nf1.transformed, 0);
    const Word shifts = static_cast<Word>(s1.size());

    auto run_shift = [&](Word a, const SolverOptions& budget) {
        return solve_le(zeroized, shift_input_output(nf2.transformed, a), r, budget);
    };
    auto accept = [&](Word a, const LeResult& le) {
        result.verdict = Verdict::Found;
        result.shift = a;
        result.witness = assemble_witness(le.maps->l1, le.maps->l2, a, nf1, nf2, s1, s2);
    };

    if (options.jobs <= 1) {
        for (Word a = 0; a < shifts; ++a) {
            const LeResult le = run_shift(a, remaining_budget(options.solver, result.stats.count, start));
            result.stats += le.stats;
            if (le.verdict == Verdict::Found) {
                accept(a, le);
                return finish();
            }
            if (le.verdict == Verdict::Inconclusive) {
                result.verdict = Verdict::Inconclusive;
                return finish();
            }
        }
        result.verdict = Verdict::NotEquivalent;
        return finish();
    }

    // Parallel: every shift gets the whole budget; the outcome is then replayed
    // in shift order so it matches the sequential run exactly.
    std::vector<std::optional<LeResult>> outcomes(shifts);
    std::atomic<Word> next{0};
    std::atomic<Word> best{shifts};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        try {
            for (;;) {
                const Word a = next.fetch_add(1);
                if (a >= shifts || a > best.load()) return;
                LeResult le = run_shift(a, remaining_budget(options.solver, 0, start));
                const bool stop = le.verdict != Verdict::NotEquivalent;
                outcomes[a] = std::move(le);
                if (stop) {
                    Word cur = best.load();
                    while (a < cur && !best.compare_exchange_weak(cur, a)) {
                    }
                }
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            failure = std::current_exception();
            best.store(0);
        }
    };
    std::vector<std::thread> pool;
    const unsigned workers = std::min<unsigned>(options.jobs, shifts);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    for (Word a = 0; a < shifts; ++a) {
        const LeResult& le = *outcomes[a];
        result.stats.count += le.stats.count;
        result.stats.guesses += le.stats.guesses;
        result.stats.max_depth = std::max(result.stats.max_depth, le.stats.max_depth);
        if (options.solver.count_limit && result.stats.count > *options.solver.count_limit) {
            result.verdict = Verdict::Inconclusive;
            return finish();
        }
        if (le.verdict == Verdict::Found) {
            accept(a, le);
            return finish();
        }
        if (le.verdict == Verdict::Inconclusive) {
            result.verdict = Verdict::Inconclusive;
            return finish();
        }
    }
    result.verdict = Verdict::NotEquivalent;
    return finish();
}

}  // namespace sboxeq
