#include "puzzletext/sudoku.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "puzzletext/rng.hpp"

namespace puzzletext::sudoku {
namespace {

constexpr int box_of(int cell) { return (cell / 27) * 3 + (cell % 9) / 3; }

constexpr std::uint16_t kAllDigits = 0x3FE;  // bits 1..9

// Constraint bookkeeping for the backtracking search.
class Board {
public:
    explicit Board(const SudokuGrid& g) : cells_(g.cells()) {
        for (int i = 0; i < kCells; ++i)
            if (cells_[i]) mark(i, cells_[i]);
    }

    std::uint16_t candidates(int i) const {
        return kAllDigits & ~(rows_[i / 9] | cols_[i % 9] | boxes_[box_of(i)]);
    }

    void place(int i, int d) {
        cells_[i] = static_cast<std::uint8_t>(d);
        mark(i, d);
    }

    void clear(int i) {
        std::uint16_t bit = ~static_cast<std::uint16_t>(1u << cells_[i]);
        rows_[i / 9] &= bit;
        cols_[i % 9] &= bit;
        boxes_[box_of(i)] &= bit;
        cells_[i] = 0;
    }

    // Blank with the fewest candidates, lowest index on ties; -1 if full.
    int most_constrained() const {
        int best = -1, best_count = 10;
        for (int i = 0; i < kCells; ++i) {
            if (cells_[i]) continue;
            int n = std::popcount(candidates(i));
            if (n < best_count) {
                best = i;
                best_count = n;
                if (n <= 1) break;
            }
        }
        return best;
    }

    SudokuGrid grid() const { return SudokuGrid(cells_); }

private:
    void mark(int i, int d) {
        std::uint16_t bit = static_cast<std::uint16_t>(1u << d);
        rows_[i / 9] |= bit;
        cols_[i % 9] |= bit;
        boxes_[box_of(i)] |= bit;
    }

    std::array<std::uint8_t, kCells> cells_;
    std::array<std::uint16_t, 9> rows_{}, cols_{}, boxes_{};
};

bool search_first(Board& b) {
    int i = b.most_constrained();
    if (i < 0) return true;
    std::uint16_t cand = b.candidates(i);
    for (int d = 1; d <= 9; ++d) {
        if (!(cand & (1u << d))) continue;
        b.place(i, d);
        if (search_first(b)) return true;
        b.clear(i);
    }
    return false;
}

void search_count(Board& b, int limit, int& found) {
    int i = b.most_constrained();
    if (i < 0) {
        ++found;
        return;
    }
    std::uint16_t cand = b.candidates(i);
    for (int d = 1; d <= 9 && found < limit; ++d) {
        if (!(cand & (1u << d))) continue;
        b.place(i, d);
        search_count(b, limit, found);
        b.clear(i);
    }
}

bool search_random(Board& b, Rng& rng) {
    int i = b.most_constrained();
    if (i < 0) return true;
    std::array<int, 9> digits;
    std::iota(digits.begin(), digits.end(), 1);
    rng.shuffle(std::span<int>(digits));
    std::uint16_t cand = b.candidates(i);
    for (int d : digits) {
        if (!(cand & (1u << d))) continue;
        b.place(i, d);
        if (search_random(b, rng)) return true;
        b.clear(i);
    }
    return false;
}

int unit_cell(UnitKind kind, int unit, int k) {
    switch (kind) {
        case UnitKind::Row: return unit * 9 + k;
        case UnitKind::Column: return k * 9 + unit;
        case UnitKind::Block: return (unit / 3) * 27 + (unit % 3) * 3 + (k / 3) * 9 + k % 3;
    }
    return 0;
}

constexpr int kGenerationAttempts = 20;

}  // namespace

int SudokuGrid::filled() const {
    int n = 0;
    for (auto c : cells_) n += c != 0;
    return n;
}

bool SudokuGrid::consistent() const { return find_violations(*this).empty(); }

SudokuGrid parse_grid81(std::string_view text) {
    if (text.size() != kCells)
        throw SudokuError(SudokuErrc::Length,
                          "grid string has length " + std::to_string(text.size()) +
                              ", expected 81");
    SudokuGrid g;
    for (int i = 0; i < kCells; ++i) {
        char c = text[i];
        if (c < '0' || c > '9')
            throw SudokuError(SudokuErrc::Digit,
                              "non-digit character at position " + std::to_string(i), i);
        g.set(i, static_cast<std::uint8_t>(c - '0'));
    }
    return g;
}

std::string format_grid81(const SudokuGrid& g) {
    std::string s(kCells, '0');
    for (int i = 0; i < kCells; ++i) s[i] = static_cast<char>('0' + g[i]);
    return s;
}

std::vector<Violation> find_violations(const SudokuGrid& g) {
    std::vector<Violation> out;
    for (UnitKind kind : {UnitKind::Row, UnitKind::Column, UnitKind::Block}) {
        for (int unit = 0; unit < 9; ++unit) {
            std::array<std::vector<int>, 10> where;
            for (int k = 0; k < 9; ++k) {
                int cell = unit_cell(kind, unit, k);
                if (g[cell]) where[g[cell]].push_back(cell);
            }
            for (int d = 1; d <= 9; ++d) {
                if (where[d].size() < 2) continue;
                std::sort(where[d].begin(), where[d].end());
                out.push_back({kind, unit, d, std::move(where[d])});
            }
        }
    }
    return out;
}

SudokuGrid solve_sudoku(const SudokuGrid& g) {
    if (!g.consistent()) throw SudokuError(SudokuErrc::Inconsistent, "grid has repeated digits");
    Board b(g);
    if (!search_first(b)) throw SudokuError(SudokuErrc::Unsolvable, "grid has no completion");
    return b.grid();
}

int count_solutions(const SudokuGrid& g, int limit) {
    if (limit < 1 || !g.consistent()) return 0;
    Board b(g);
    int found = 0;
    search_count(b, limit, found);
    return found;
}

GeneratedPuzzle generate_puzzle(std::uint64_t seed, int clues, bool require_unique) {
    if (clues < 17 || clues > 80)
        throw SudokuError(SudokuErrc::ClueCount,
                          "clue count " + std::to_string(clues) + " outside 17..80");
    Rng rng(seed);
    for (int attempt = 0; attempt < kGenerationAttempts; ++attempt) {
        Board b{SudokuGrid{}};
        search_random(b, rng);
        const SudokuGrid solution = b.grid();

        std::array<int, kCells> order;
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(std::span<int>(order));

        SudokuGrid puzzle = solution;
        int remaining = kCells;
        for (int cell : order) {
            if (remaining == clues) break;
            puzzle.set(cell, 0);
            if (require_unique && count_solutions(puzzle, 2) != 1)
                puzzle.set(cell, solution[cell]);
            else
                --remaining;
        }
        if (remaining == clues) return {puzzle, solution};
    }
    throw SudokuError(SudokuErrc::GenerationFailed,
                      "no unique puzzle with " + std::to_string(clues) + " clues after " +
                          std::to_string(kGenerationAttempts) + " attempts");
}

std::string render_sudoku(const SudokuGrid& g, std::span<const Violation> highlight) {
    std::set<int> marked;
    for (const auto& v : highlight) marked.insert(v.positions.begin(), v.positions.end());

    const std::string rule = "+-------+-------+-------+\n";
    std::string out = rule;
    for (int r = 0; r < 9; ++r) {
        out += '|';
        for (int c = 0; c < 9; ++c) {
            int i = r * 9 + c;
            out += marked.count(i) ? '*' : ' ';
            out += g[i] ? static_cast<char>('0' + g[i]) : '.';
            if (c % 3 == 2) out += " |";
        }
        out += '\n';
        if (r % 3 == 2) out += rule;
    }
    return out;
}

}  // namespace puzzletext::sudoku
