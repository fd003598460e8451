#pragma once

// Guess-and-determine search for invertible maps F1, F2 with s1(F1(x)) == F2(s2(x)).
//
// Each decision fixes the value of the smallest unassigned point of F1 (then of F2
// once F1 is complete). Propagation closes every assigned set under XOR, pushes
// values across the relation in both directions (through preimage sets for
// non-invertible boxes), and keeps the value sets injective. With an SOSM rank
// r > 0 two more filters apply: the suffix class of a point and of its value
// must agree, and suffix-1 pairs must preserve the first-r-bit dot product
// against the partner map's basis.

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "sboxeq/gf2.hpp"
#include "sboxeq/sbox.hpp"
#include "sboxeq/xor_basis.hpp"

namespace sboxeq {

struct SolverOptions {
    bool use_sosm_pruning = true;
    std::optional<std::uint64_t> count_limit;
    std::optional<std::chrono::milliseconds> time_limit;
};

/// Search instrumentation. `count` is one per value trial at a decision, one
/// per pairwise closure deduction and one per bilinear slot comparison.
struct CountStats {
    std::uint64_t count = 0;
    std::uint64_t guesses = 0;
    unsigned max_depth = 0;
    std::chrono::nanoseconds elapsed{0};

    CountStats& operator+=(const CountStats& o) {
        count += o.count;
        guesses += o.guesses;
        max_depth = max_depth > o.max_depth ? max_depth : o.max_depth;
        elapsed += o.elapsed;
        return *this;
    }
};

enum class Verdict { Found, NotEquivalent, Inconclusive };

const char* to_string(Verdict v);

/// Linear maps: F(0) = 0 is fixed. Affine maps: point 0 is an ordinary unknown
/// and closure uses F(x + x' + b) = F(x) + F(x') + F(b) around a base point b.
enum class MapMode { linear, affine };

enum class MapSide : unsigned { first = 0, second = 1 };

class PartialMapState {
public:
    PartialMapState(const SBox& s1, const SBox& s2, unsigned r, MapMode mode = MapMode::linear);

    PartialMapState(const PartialMapState&) = delete;
    PartialMapState& operator=(const PartialMapState&) = delete;

    /// Forced deductions before the first guess (F(0) = 0 and its consequences
    /// in linear mode). False on contradiction.
    bool seed();

    /// Filters for a decision value: suffix class, unused value, bilinear check.
    /// Increments the statistics as a value trial.
    bool candidate_allowed(MapSide side, Word point, Word value);

    /// Assigns and cross-deduces without running closure. False on contradiction.
    bool guess(MapSide side, Word point, Word value);

    /// Drains both frontiers alternately until empty. False on contradiction;
    /// the frontiers are cleared either way.
    bool propagate();

    void push_level();
    void pop_level();
    std::size_t levels() const noexcept { return levels_.size(); }

    /// Every point of both maps is checked (XOR-closed and final).
    bool complete() const noexcept;

    std::optional<Word> value(MapSide side, Word point) const;
    bool is_checked(MapSide side, Word point) const { return side_(side).in_checked[point] != 0; }
    std::span<const Word> checked(MapSide side) const { return side_(side).checked; }
    bool value_used(MapSide side, Word value) const { return side_(side).owner[value] >= 0; }
    const XorBasis& basis(MapSide side) const { return side_(side).basis; }
    std::size_t domain_size(MapSide side) const { return side_(side).value.size(); }

    /// Smallest unassigned point >= from, if any.
    std::optional<Word> min_unassigned(MapSide side, Word from) const;

    unsigned rank() const noexcept { return r_; }
    MapMode mode() const noexcept { return mode_; }
    CountStats& stats() noexcept { return stats_; }
    const CountStats& stats() const noexcept { return stats_; }

    /// Complete maps only.
    AffineMap extract(MapSide side) const;

private:
    struct Side {
        unsigned bits = 0;
        std::vector<std::int32_t> value;  // -1: unassigned
        std::vector<std::int32_t> owner;  // value -> point, -1: unused
        std::vector<std::uint8_t> in_checked;
        std::vector<Word> checked;
        std::vector<Word> frontier;
        std::size_t head = 0;
        XorBasis basis;
        std::int32_t base = -1;
    };

    struct Level {
        std::size_t undo_size;
        std::size_t checked_size[2];
        std::int32_t base[2];
        XorBasis::Token tokens[2];
    };

    Side& side_(MapSide s) noexcept { return sides_[static_cast<unsigned>(s)]; }
    const Side& side_(MapSide s) const noexcept { return sides_[static_cast<unsigned>(s)]; }

    bool assign(unsigned side, Word point, Word value);
    bool drain(unsigned side, Word x);
    void add_checked(unsigned side, Word point);
    void clear_frontiers() noexcept;

    const SBox& s1_;
    const SBox& s2_;
    PreimageTable pre1_;
    PreimageTable pre2_;
    unsigned r_;
    bool prune_;
    MapMode mode_;
    Side sides_[2];
    std::vector<std::pair<std::uint8_t, Word>> undo_;  // (side, assigned point)
    std::vector<Level> levels_;
    CountStats stats_;
};

struct LinearPair {
    BitMatrix l1;
    BitMatrix l2;
};

struct LeResult {
    Verdict verdict = Verdict::NotEquivalent;
    std::optional<LinearPair> maps;
    CountStats stats;
};

/// Searches invertible linear L1, L2 with s1(L1 x) == L2 s2(x). `r` is the SOSM
/// rank shared by the normal-formed inputs; r = 0 or use_sosm_pruning = false
/// runs the unpruned search. A Found result has been verified on all inputs.
LeResult solve_le(const SBox& s1, const SBox& s2, unsigned r, const SolverOptions& options = {});

struct AffinePair {
    AffineMap f1;
    AffineMap f2;
};

struct AffineSearchResult {
    Verdict verdict = Verdict::NotEquivalent;
    std::optional<AffinePair> maps;
    CountStats stats;
};

/// Same search treating both maps as affine: s1(F1 x) == F2(s2 x).
AffineSearchResult solve_affine_dfs(const SBox& s1, const SBox& s2, unsigned r,
                                    const SolverOptions& options = {});

}  // namespace sboxeq
