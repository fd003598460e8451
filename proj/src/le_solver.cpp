#include "sboxeq/le_solver.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "sboxeq/errors.hpp"
#include "sboxeq/sosm.hpp"

namespace sboxeq {

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::Found: return "found";
        case Verdict::NotEquivalent: return "not_equivalent";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

namespace {

void check_pair(const SBox& s1, const SBox& s2, unsigned r) {
    if (s1.n() != s2.n() || s1.m() != s2.m()) throw InputError("S-boxes have different dimensions");
    if (!parity_condition(s1) || !parity_condition(s2)) {
        throw InputError("S-box violates the parity condition");
    }
    if (r > std::min(s1.n(), s1.m())) throw InputError("SOSM rank exceeds min(n, m)");
}

}  // namespace

PartialMapState::PartialMapState(const SBox& s1, const SBox& s2, unsigned r, MapMode mode)
    : s1_(s1), s2_(s2), pre1_(s1), pre2_(s2), r_(r), prune_(r > 0), mode_(mode) {
    check_pair(s1, s2, r);
    const unsigned widths[2] = {s1.n(), s1.m()};
    for (unsigned k = 0; k < 2; ++k) {
        Side& s = sides_[k];
        const std::size_t size = std::size_t{1} << widths[k];
        s.bits = widths[k];
        s.value.assign(size, -1);
        s.owner.assign(size, -1);
        s.in_checked.assign(size, 0);
        s.checked.reserve(size);
        s.frontier.reserve(size);
        s.basis = XorBasis(widths[k]);
    }
}

bool PartialMapState::seed() {
    if (mode_ == MapMode::affine) return true;
    for (auto& s : sides_) {
        s.value[0] = 0;
        s.owner[0] = 0;
        s.base = 0;
        add_checked(static_cast<unsigned>(&s - sides_), 0);
    }
    // F1(0) = 0 forces F2(s2(0)) = s1(0); F2(0) = 0 ties the zero preimages.
    if (!assign(1, s2_(0), s1_(0))) return false;
    const auto from = pre2_.of(0);
    const auto to = pre1_.of(0);
    if (from.size() != to.size()) return false;
    if (from.size() == 1 && !assign(0, from[0], to[0])) return false;
    if (!propagate()) return false;
    return true;
}

void PartialMapState::add_checked(unsigned side, Word point) {
    Side& s = sides_[side];
    s.in_checked[point] = 1;
    s.checked.push_back(point);
}

bool PartialMapState::assign(unsigned side, Word point, Word value) {
    Side& s = sides_[side];
    if (s.value[point] >= 0) return s.value[point] == static_cast<std::int32_t>(value);
    if (s.owner[value] >= 0) return false;
    if (prune_ && s.base >= 0) {
        const Word fb = static_cast<Word>(s.value[s.base]);
        if (suffix(point ^ static_cast<Word>(s.base), r_) != suffix(value ^ fb, r_)) return false;
    }
    s.value[point] = static_cast<std::int32_t>(value);
    s.owner[value] = static_cast<std::int32_t>(point);
    undo_.emplace_back(static_cast<std::uint8_t>(side), point);
    s.frontier.push_back(point);

    if (side == 0) return assign(1, s2_(point), s1_(value));

    // F2(y) = w: F1 must carry s2^{-1}(y) onto s1^{-1}(w).
    const auto from = pre2_.of(point);
    const auto to = pre1_.of(value);
    if (from.size() != to.size()) return false;
    if (from.size() == 1) return assign(0, from[0], to[0]);
    return true;
}

bool PartialMapState::drain(unsigned side, Word x) {
    Side& s = sides_[side];
    if (s.in_checked[x]) return true;
    const auto v = static_cast<Word>(s.value[x]);
    if (s.base < 0) {
        s.base = static_cast<std::int32_t>(x);
        add_checked(side, x);
        return true;
    }
    const auto base = static_cast<Word>(s.base);
    const auto fb = static_cast<Word>(s.value[base]);
    const Word dx = x ^ base;
    const Word dv = v ^ fb;
    const bool low = prune_ && suffix(dx, r_);
    if (prune_) {
        if (low != suffix(dv, r_)) return false;
        if (low && !check_bilinear(dx, dv, sides_[1 - side].basis, r_, stats_.count)) return false;
    }
    const std::size_t known = s.checked.size();
    for (std::size_t i = 0; i < known; ++i) {
        const Word xp = s.checked[i];
        const Word z = x ^ xp ^ base;
        ++stats_.count;
        if (!assign(side, z, v ^ static_cast<Word>(s.value[xp]) ^ fb)) return false;
        add_checked(side, z);
    }
    if (low) s.basis.insert(dx, dv);
    return true;
}

void PartialMapState::clear_frontiers() noexcept {
    for (auto& s : sides_) {
        s.frontier.clear();
        s.head = 0;
    }
}

bool PartialMapState::propagate() {
    for (;;) {
        bool progressed = false;
        for (unsigned side = 0; side < 2; ++side) {
            Side& s = sides_[side];
            while (s.head < s.frontier.size()) {
                progressed = true;
                if (!drain(side, s.frontier[s.head++])) {
                    clear_frontiers();
                    return false;
                }
            }
        }
        if (!progressed) break;
    }
    clear_frontiers();
    return true;
}

bool PartialMapState::candidate_allowed(MapSide which, Word point, Word value) {
    ++stats_.count;
    ++stats_.guesses;
    const Side& s = side_(which);
    if (s.owner[value] >= 0) return false;
    if (prune_ && s.base >= 0) {
        const Word dx = point ^ static_cast<Word>(s.base);
        const Word dv = value ^ static_cast<Word>(s.value[s.base]);
        const bool low = suffix(dx, r_);
        if (low != suffix(dv, r_)) return false;
        if (low && !check_bilinear(dx, dv, sides_[1 - static_cast<unsigned>(which)].basis, r_, stats_.count)) {
            return false;
        }
    }
    return true;
}

bool PartialMapState::guess(MapSide side, Word point, Word value) {
    return assign(static_cast<unsigned>(side), point, value);
}

void PartialMapState::push_level() {
    levels_.push_back({undo_.size(),
                       {sides_[0].checked.size(), sides_[1].checked.size()},
                       {sides_[0].base, sides_[1].base},
                       {sides_[0].basis.snapshot(), sides_[1].basis.snapshot()}});
    stats_.max_depth = std::max<unsigned>(stats_.max_depth, static_cast<unsigned>(levels_.size()));
}

void PartialMapState::pop_level() {
    if (levels_.empty()) throw std::logic_error("PartialMapState::pop_level: no open level");
    const Level level = levels_.back();
    levels_.pop_back();
    while (undo_.size() > level.undo_size) {
        const auto [side, point] = undo_.back();
        undo_.pop_back();
        Side& s = sides_[side];
        s.owner[static_cast<Word>(s.value[point])] = -1;
        s.value[point] = -1;
    }
    for (unsigned k = 0; k < 2; ++k) {
        Side& s = sides_[k];
        while (s.checked.size() > level.checked_size[k]) {
            s.in_checked[s.checked.back()] = 0;
            s.checked.pop_back();
        }
        s.base = level.base[k];
        s.basis.rollback(level.tokens[k]);
    }
    clear_frontiers();
}

bool PartialMapState::complete() const noexcept {
    return sides_[0].checked.size() == sides_[0].value.size() &&
           sides_[1].checked.size() == sides_[1].value.size();
}

std::optional<Word> PartialMapState::value(MapSide side, Word point) const {
    const auto v = side_(side).value[point];
    if (v < 0) return std::nullopt;
    return static_cast<Word>(v);
}

std::optional<Word> PartialMapState::min_unassigned(MapSide side, Word from) const {
    const Side& s = side_(side);
    for (std::size_t p = from; p < s.value.size(); ++p) {
        if (s.value[p] < 0) return static_cast<Word>(p);
    }
    return std::nullopt;
}

AffineMap PartialMapState::extract(MapSide which) const {
    const Side& s = side_(which);
    if (s.checked.size() != s.value.size()) throw std::logic_error("PartialMapState::extract: map incomplete");
    const auto c = static_cast<Word>(s.value[0]);
    std::vector<Word> columns(s.bits);
    for (unsigned j = 0; j < s.bits; ++j) columns[j] = static_cast<Word>(s.value[Word{1} << j]) ^ c;
    return AffineMap(BitMatrix::from_columns(s.bits, columns), BitVec(s.bits, c));
}

namespace {

class Search {
public:
    Search(PartialMapState& state, const SolverOptions& options)
        : state_(state), options_(options), start_(std::chrono::steady_clock::now()) {}

    /// True: state is complete. False: exhausted or aborted (see aborted()).
    bool run() { return dfs(0, 0); }
    bool aborted() const noexcept { return aborted_; }

private:
    bool over_limit() {
        if (options_.count_limit && state_.stats().count > *options_.count_limit) return true;
        if (options_.time_limit && (++ticks_ & 1023U) == 0 &&
            std::chrono::steady_clock::now() - start_ > *options_.time_limit) {
            return true;
        }
        return false;
    }

    bool dfs(Word cursor1, Word cursor2) {
        if (state_.complete()) return true;
        MapSide side = MapSide::first;
        auto target = state_.min_unassigned(MapSide::first, cursor1);
        if (target) {
            cursor1 = *target;
        } else {
            side = MapSide::second;
            target = state_.min_unassigned(MapSide::second, cursor2);
            if (!target) return false;  // everything assigned yet incomplete: cannot happen after propagate
            cursor2 = *target;
        }
        const auto values = static_cast<Word>(state_.domain_size(side));
        for (Word v = 0; v < values; ++v) {
            if (aborted_ || (aborted_ = over_limit())) return false;
            if (!state_.candidate_allowed(side, *target, v)) continue;
            state_.push_level();
            if (state_.guess(side, *target, v) && state_.propagate() && dfs(cursor1, cursor2)) return true;
            state_.pop_level();
        }
        return false;
    }

    PartialMapState& state_;
    const SolverOptions& options_;
    std::chrono::steady_clock::time_point start_;
    std::uint64_t ticks_ = 0;
    bool aborted_ = false;
};

bool relation_holds(const SBox& s1, const SBox& s2, const AffineMap& f1, const AffineMap& f2) {
    if (!f1.invertible() || !f2.invertible()) return false;
    for (Word x = 0; x < s1.size(); ++x) {
        if (s1(f1.apply(x)) != f2.apply(s2(x))) return false;
    }
    return true;
}

template <typename Result, typename Pack>
Result run_search(const SBox& s1, const SBox& s2, unsigned r, const SolverOptions& options, MapMode mode,
                  Pack pack) {
    const auto start = std::chrono::steady_clock::now();
    PartialMapState state(s1, s2, options.use_sosm_pruning ? r : 0, mode);
    Result result;
    bool found = false;
    bool aborted = false;
    if (state.seed()) {
        Search search(state, options);
        found = search.run();
        aborted = search.aborted();
    }
    result.stats = state.stats();
    result.stats.elapsed = std::chrono::steady_clock::now() - start;
    if (found) {
        AffineMap f1 = state.extract(MapSide::first);
        AffineMap f2 = state.extract(MapSide::second);
        if (!relation_holds(s1, s2, f1, f2)) {
            throw std::logic_error("equivalence search produced maps that fail verification");
        }
        result.verdict = Verdict::Found;
        result.maps = pack(std::move(f1), std::move(f2));
    } else {
        result.verdict = aborted ? Verdict::Inconclusive : Verdict::NotEquivalent;
    }
    return result;
}

}  // namespace

LeResult solve_le(const SBox& s1, const SBox& s2, unsigned r, const SolverOptions& options) {
    return run_search<LeResult>(s1, s2, r, options, MapMode::linear, [](AffineMap f1, AffineMap f2) {
        return LinearPair{std::move(f1.linear), std::move(f2.linear)};
    });
}

AffineSearchResult solve_affine_dfs(const SBox& s1, const SBox& s2, unsigned r, const SolverOptions& options) {
    return run_search<AffineSearchResult>(s1, s2, r, options, MapMode::affine,
                                          [](AffineMap f1, AffineMap f2) {
                                              return AffinePair{std::move(f1), std::move(f2)};
                                          });
}

}  // namespace sboxeq
