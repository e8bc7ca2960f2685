#pragma once

// 3x3x3 cube in facelet notation: a 54-symbol string in URFDBL face order
// (Kociemba layout), the half-turn move grammar, and a shallow optimal
// solver used to label training data.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "puzzletext/error.hpp"

namespace puzzletext::cube {

enum class Face : std::uint8_t { U, R, F, D, B, L };
inline constexpr std::array<Face, 6> kFaces{Face::U, Face::R, Face::F,
                                            Face::D, Face::B, Face::L};

char face_char(Face f);
std::optional<Face> face_from_char(char c);

enum class Turn : std::uint8_t { Clockwise, CounterClockwise, Half };

struct Move {
    Face face;
    Turn turn;

    friend bool operator==(const Move&, const Move&) = default;

    // Dense index 0..17: face * 3 + turn.
    int index() const { return static_cast<int>(face) * 3 + static_cast<int>(turn); }
    static Move from_index(int i) {
        return {static_cast<Face>(i / 3), static_cast<Turn>(i % 3)};
    }
    Move inverse() const;
    std::string to_string() const;
};

inline constexpr int kMoveCount = 18;

using Formula = std::vector<Move>;

enum class CubeErrc {
    Syntax,
    Length,
    Alphabet,
    Count,
    Center,
    ScrambleLength,
    DepthExceeded,
};

using CubeError = CodedError<CubeErrc>;

// Throws CubeError{Syntax} with position = 1-based token number.
Formula parse_formula(std::string_view text);
std::string format_formula(const Formula& f);
Formula inverse_formula(const Formula& f);

inline constexpr int kFacelets = 54;

class FaceletCube {
public:
    // Solved cube.
    FaceletCube();

    static FaceletCube solved() { return {}; }

    Face operator[](int i) const { return facelets_[i]; }
    const std::array<Face, kFacelets>& facelets() const { return facelets_; }

    FaceletCube apply(Move m) const;
    FaceletCube apply(const Formula& f) const;

    bool is_solved() const;

    friend bool operator==(const FaceletCube&, const FaceletCube&) = default;

private:
    friend FaceletCube decode_facelets(std::string_view);
    std::array<Face, kFacelets> facelets_;
};

inline FaceletCube apply_move(const FaceletCube& c, Move m) { return c.apply(m); }
inline FaceletCube apply_formula(const FaceletCube& c, const Formula& f) { return c.apply(f); }
inline bool is_solved(const FaceletCube& c) { return c.is_solved(); }

std::string encode_facelets(const FaceletCube& c);
// Validates length, alphabet, per-symbol counts and fixed centers, in that
// order.
FaceletCube decode_facelets(std::string_view text);

// Facelet permutation of a move: after the move, facelet i holds what was at
// move_permutation(m)[i].
const std::array<std::uint8_t, kFacelets>& move_permutation(Move m);

// Whether `next` may follow `prev` in canonical sequences: never the same
// face twice, and for opposite faces only in URF-before-DBL order (U D is
// allowed, D U is not), so commuting pairs are counted once.
bool canonical_successor(Face prev, Face next);

// Exactly `length` moves, each drawn uniformly from the moves allowed by
// canonical_successor after the previous one. length must be in
// 1..=max_length.
Formula random_scramble(std::uint64_t seed, int length, int max_length = 5);

inline constexpr int kDefaultSolveDepth = 6;

// Optimal (minimal-length) solution by IDA*. Throws
// CubeError{DepthExceeded} if no solution of length <= max_depth exists.
Formula solve(const FaceletCube& c, int max_depth = kDefaultSolveDepth);

// Unfolded net: U above, L F R B across the middle, D below. Nine lines.
std::string render_cube_net(const FaceletCube& c);

}  // namespace puzzletext::cube
