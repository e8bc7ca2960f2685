#include "puzzletext/cube.hpp"

#include <algorithm>
#include <sstream>

#include "puzzletext/rng.hpp"

namespace puzzletext::cube {
namespace {

#include "cube_tables.inc"

using Permutation = std::array<std::uint8_t, kFacelets>;

Permutation compose(const Permutation& first, const Permutation& second) {
    // Applying `first` then `second`: new[i] = mid[second[i]] = old[first[second[i]]].
    Permutation out{};
    for (int i = 0; i < kFacelets; ++i) out[i] = first[second[i]];
    return out;
}

std::array<Permutation, kMoveCount> build_move_table() {
    std::array<Permutation, kMoveCount> table{};
    for (int f = 0; f < 6; ++f) {
        Permutation cw{};
        std::copy(std::begin(kClockwise[f]), std::end(kClockwise[f]), cw.begin());
        Permutation half = compose(cw, cw);
        table[f * 3 + static_cast<int>(Turn::Clockwise)] = cw;
        table[f * 3 + static_cast<int>(Turn::Half)] = half;
        table[f * 3 + static_cast<int>(Turn::CounterClockwise)] = compose(half, cw);
    }
    return table;
}

const std::array<Permutation, kMoveCount>& move_table() {
    static const auto table = build_move_table();
    return table;
}

constexpr int kCenterOffset = 4;

// URFDBL order: U-D, R-L, F-B.
constexpr std::array<int, 6> kOpposite{3, 5, 4, 0, 2, 1};

bool is_opposite(Face a, Face b) { return kOpposite[static_cast<int>(a)] == static_cast<int>(b); }

}  // namespace

char face_char(Face f) { return "URFDBL"[static_cast<int>(f)]; }

std::optional<Face> face_from_char(char c) {
    switch (c) {
        case 'U': return Face::U;
        case 'R': return Face::R;
        case 'F': return Face::F;
        case 'D': return Face::D;
        case 'B': return Face::B;
        case 'L': return Face::L;
        default: return std::nullopt;
    }
}

Move Move::inverse() const {
    switch (turn) {
        case Turn::Clockwise: return {face, Turn::CounterClockwise};
        case Turn::CounterClockwise: return {face, Turn::Clockwise};
        case Turn::Half: break;
    }
    return *this;
}

std::string Move::to_string() const {
    std::string s(1, face_char(face));
    if (turn == Turn::CounterClockwise) s += '\'';
    if (turn == Turn::Half) s += '2';
    return s;
}

Formula parse_formula(std::string_view text) {
    Formula out;
    std::size_t i = 0;
    long token_no = 0;
    auto is_space = [](char c) {
        return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v';
    };
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        if (i == text.size()) break;
        std::size_t start = i;
        while (i < text.size() && !is_space(text[i])) ++i;
        std::string_view token = text.substr(start, i - start);
        ++token_no;

        auto face = face_from_char(token[0]);
        bool ok = face.has_value() && token.size() <= 2;
        Turn turn = Turn::Clockwise;
        if (ok && token.size() == 2) {
            if (token[1] == '\'')
                turn = Turn::CounterClockwise;
            else if (token[1] == '2')
                turn = Turn::Half;
            else
                ok = false;
        }
        if (!ok)
            throw CubeError(CubeErrc::Syntax,
                            "bad move token " + std::to_string(token_no) + ": '" +
                                std::string(token) + "'",
                            token_no);
        out.push_back({*face, turn});
    }
    return out;
}

std::string format_formula(const Formula& f) {
    std::string out;
    for (const Move& m : f) {
        if (!out.empty()) out += ' ';
        out += m.to_string();
    }
    return out;
}

Formula inverse_formula(const Formula& f) {
    Formula out;
    out.reserve(f.size());
    for (auto it = f.rbegin(); it != f.rend(); ++it) out.push_back(it->inverse());
    return out;
}

FaceletCube::FaceletCube() {
    for (int i = 0; i < kFacelets; ++i) facelets_[i] = static_cast<Face>(i / 9);
}

FaceletCube FaceletCube::apply(Move m) const {
    const Permutation& perm = move_table()[m.index()];
    FaceletCube out;
    for (int i = 0; i < kFacelets; ++i) out.facelets_[i] = facelets_[perm[i]];
    return out;
}

FaceletCube FaceletCube::apply(const Formula& f) const {
    FaceletCube c = *this;
    for (const Move& m : f) c = c.apply(m);
    return c;
}

bool FaceletCube::is_solved() const {
    for (int i = 0; i < kFacelets; ++i)
        if (facelets_[i] != static_cast<Face>(i / 9)) return false;
    return true;
}

std::string encode_facelets(const FaceletCube& c) {
    std::string s(kFacelets, ' ');
    for (int i = 0; i < kFacelets; ++i) s[i] = face_char(c[i]);
    return s;
}

FaceletCube decode_facelets(std::string_view text) {
    if (text.size() != kFacelets)
        throw CubeError(CubeErrc::Length,
                        "facelet string has length " + std::to_string(text.size()) +
                            ", expected 54");
    FaceletCube c;
    std::array<int, 6> counts{};
    for (int i = 0; i < kFacelets; ++i) {
        auto f = face_from_char(text[i]);
        if (!f)
            throw CubeError(CubeErrc::Alphabet,
                            "invalid facelet symbol at position " + std::to_string(i), i);
        c.facelets_[i] = *f;
        ++counts[static_cast<int>(*f)];
    }
    for (int f = 0; f < 6; ++f)
        if (counts[f] != 9)
            throw CubeError(CubeErrc::Count,
                            std::string("symbol ") + "URFDBL"[f] + " appears " +
                                std::to_string(counts[f]) + " times",
                            f);
    for (int f = 0; f < 6; ++f)
        if (c.facelets_[f * 9 + kCenterOffset] != static_cast<Face>(f))
            throw CubeError(CubeErrc::Center,
                            std::string("center of face ") + "URFDBL"[f] + " is displaced",
                            f);
    return c;
}

const std::array<std::uint8_t, kFacelets>& move_permutation(Move m) {
    return move_table()[m.index()];
}

bool canonical_successor(Face prev, Face next) {
    if (prev == next) return false;
    if (is_opposite(prev, next) && static_cast<int>(prev) > static_cast<int>(next)) return false;
    return true;
}

Formula random_scramble(std::uint64_t seed, int length, int max_length) {
    if (length < 1 || length > max_length)
        throw CubeError(CubeErrc::ScrambleLength,
                        "scramble length " + std::to_string(length) + " outside 1.." +
                            std::to_string(max_length));
    Rng rng(seed);
    Formula f;
    std::vector<Move> allowed;
    for (int n = 0; n < length; ++n) {
        allowed.clear();
        for (int i = 0; i < kMoveCount; ++i) {
            Move m = Move::from_index(i);
            if (f.empty() || canonical_successor(f.back().face, m.face)) allowed.push_back(m);
        }
        f.push_back(allowed[rng.below(allowed.size())]);
    }
    return f;
}

namespace {

// A quarter or half turn moves 4 corner cubies (12 corner stickers) and 4
// edge cubies (8 edge stickers), so it can fix at most that many misplaced
// stickers of each type.
int lower_bound_moves(const FaceletCube& c) {
    int corners = 0, edges = 0;
    for (int i = 0; i < kFacelets; ++i) {
        int pos = i % 9;
        if (pos == kCenterOffset || c[i] == static_cast<Face>(i / 9)) continue;
        if (pos % 2 == 0)
            ++corners;
        else
            ++edges;
    }
    return std::max((corners + 11) / 12, (edges + 7) / 8);
}

class IdaSearch {
public:
    explicit IdaSearch(int bound) : bound_(bound) {}

    bool run(const FaceletCube& c, int depth, int last_face) {
        if (depth == bound_) return c.is_solved();
        if (depth + lower_bound_moves(c) > bound_) return false;
        for (int i = 0; i < kMoveCount; ++i) {
            Move m = Move::from_index(i);
            if (last_face >= 0 && !canonical_successor(static_cast<Face>(last_face), m.face))
                continue;
            path_.push_back(m);
            if (run(c.apply(m), depth + 1, static_cast<int>(m.face))) return true;
            path_.pop_back();
        }
        return false;
    }

    Formula take() { return std::move(path_); }

private:
    int bound_;
    Formula path_;
};

}  // namespace

Formula solve(const FaceletCube& c, int max_depth) {
    for (int bound = lower_bound_moves(c); bound <= max_depth; ++bound) {
        IdaSearch search(bound);
        if (search.run(c, 0, -1)) return search.take();
    }
    throw CubeError(CubeErrc::DepthExceeded,
                    "no solution within " + std::to_string(max_depth) + " moves", max_depth);
}

std::string render_cube_net(const FaceletCube& c) {
    std::ostringstream out;
    auto row = [&](Face f, int r) {
        int base = static_cast<int>(f) * 9 + r * 3;
        for (int k = 0; k < 3; ++k) out << face_char(c[base + k]);
    };
    for (int r = 0; r < 3; ++r) {
        out << "    ";
        row(Face::U, r);
        out << '\n';
    }
    for (int r = 0; r < 3; ++r) {
        row(Face::L, r);
        out << ' ';
        row(Face::F, r);
        out << ' ';
        row(Face::R, r);
        out << ' ';
        row(Face::B, r);
        out << '\n';
    }
    for (int r = 0; r < 3; ++r) {
        out << "    ";
        row(Face::D, r);
        out << '\n';
    }
    return out.str();
}

}  // namespace puzzletext::cube
