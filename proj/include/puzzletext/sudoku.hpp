#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "puzzletext/error.hpp"

namespace puzzletext::sudoku {

inline constexpr int kCells = 81;

// 9x9 grid, row-major, 0 = blank.
class SudokuGrid {
public:
    SudokuGrid() { cells_.fill(0); }
    explicit SudokuGrid(const std::array<std::uint8_t, kCells>& cells) : cells_(cells) {}

    std::uint8_t operator[](int i) const { return cells_[i]; }
    std::uint8_t at(int row, int col) const { return cells_[row * 9 + col]; }
    void set(int i, std::uint8_t digit) { cells_[i] = digit; }
    const std::array<std::uint8_t, kCells>& cells() const { return cells_; }

    int filled() const;
    bool complete() const { return filled() == kCells; }
    bool consistent() const;
    bool solved() const { return complete() && consistent(); }

    friend bool operator==(const SudokuGrid&, const SudokuGrid&) = default;

private:
    std::array<std::uint8_t, kCells> cells_;
};

enum class UnitKind : std::uint8_t { Row, Column, Block };

struct Violation {
    UnitKind kind;
    int index;                // 0..8
    int digit;                // 1..9
    std::vector<int> positions;  // cell indices, ascending

    friend bool operator==(const Violation&, const Violation&) = default;
};

enum class SudokuErrc { Length, Digit, Inconsistent, Unsolvable, GenerationFailed, ClueCount };

using SudokuError = CodedError<SudokuErrc>;

SudokuGrid parse_grid81(std::string_view text);
std::string format_grid81(const SudokuGrid& g);

// One entry per (unit, digit) that occurs at least twice. Rows 0-8, then
// columns, then blocks; digits ascending within a unit.
std::vector<Violation> find_violations(const SudokuGrid& g);

// First solution under a fixed order: fewest-candidates blank (lowest index
// on ties), digits ascending.
SudokuGrid solve_sudoku(const SudokuGrid& g);

// Number of completions, stopping once `limit` is reached.
int count_solutions(const SudokuGrid& g, int limit);

struct GeneratedPuzzle {
    SudokuGrid puzzle;
    SudokuGrid solution;
};

GeneratedPuzzle generate_puzzle(std::uint64_t seed, int clues, bool require_unique);

// 13-line framed grid; blanks as '.', cells in `highlight` prefixed with '*'.
std::string render_sudoku(const SudokuGrid& g, std::span<const Violation> highlight = {});

}  // namespace puzzletext::sudoku
