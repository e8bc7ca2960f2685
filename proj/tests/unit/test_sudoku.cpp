#include <string>

#include "doctest.h"
#include "puzzletext/rng.hpp"
#include "puzzletext/sudoku.hpp"
#include "support/fixtures.hpp"
#include "support/sudoku_oracle.hpp"

using namespace puzzletext::sudoku;

namespace {

SudokuGrid random_grid(std::uint64_t seed) {
    puzzletext::Rng rng(seed);
    SudokuGrid g;
    for (int i = 0; i < kCells; ++i) g.set(i, static_cast<std::uint8_t>(rng.below(10)));
    return g;
}

bool clues_kept(const SudokuGrid& puzzle, const SudokuGrid& answer) {
    for (int i = 0; i < kCells; ++i)
        if (puzzle[i] && puzzle[i] != answer[i]) return false;
    return true;
}

}  // namespace

TEST_CASE("parse and format") {
    SudokuGrid puzzle = parse_grid81(fixtures::kSudokuPuzzle);
    CHECK(puzzle[0] == 0);
    CHECK(puzzle[2] == 4);
    CHECK(puzzle.at(8, 8) == 0);
    CHECK(format_grid81(puzzle) == fixtures::kSudokuPuzzle);
    CHECK(format_grid81(parse_grid81(fixtures::kSudokuSolution)) == fixtures::kSudokuSolution);
    CHECK(parse_grid81(std::string(81, '0')).filled() == 0);
    CHECK(format_grid81(SudokuGrid()) == std::string(81, '0'));

    try {
        parse_grid81(std::string(80, '1'));
        FAIL("expected a length error");
    } catch (const SudokuError& e) {
        CHECK(e.code() == SudokuErrc::Length);
    }
    std::string bad(81, '0');
    bad[17] = '.';
    try {
        parse_grid81(bad);
        FAIL("expected a digit error");
    } catch (const SudokuError& e) {
        CHECK(e.code() == SudokuErrc::Digit);
        CHECK(e.position() == 17);
    }
}

TEST_CASE("violations") {
    CHECK(find_violations(SudokuGrid()).empty());
    CHECK(find_violations(parse_grid81(fixtures::kSudokuSolution)).empty());

    SudokuGrid g;
    g.set(1, 5);
    g.set(7, 5);
    auto v = find_violations(g);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == Violation{UnitKind::Row, 0, 5, {1, 7}});
    CHECK_FALSE(g.consistent());
}

TEST_CASE("violations agree with a brute-force unit scan") {
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
        SudokuGrid g = random_grid(seed);
        auto expected = sudoku_oracle::scan(g.cells());
        auto actual = find_violations(g);
        REQUIRE(actual.size() == expected.size());
        for (std::size_t k = 0; k < actual.size(); ++k) {
            REQUIRE(static_cast<int>(actual[k].kind) == expected[k].unit_kind);
            REQUIRE(actual[k].index == expected[k].unit);
            REQUIRE(actual[k].digit == expected[k].digit);
            REQUIRE(actual[k].positions == expected[k].cells);
        }
        REQUIRE(g.consistent() == expected.empty());
    }
}

TEST_CASE("solver") {
    SudokuGrid puzzle = parse_grid81(fixtures::kSudokuPuzzle);
    SudokuGrid solved = solve_sudoku(puzzle);
    CHECK(solved.solved());
    CHECK(clues_kept(puzzle, solved));
    CHECK(format_grid81(solved) == fixtures::kSudokuSolution);
    CHECK(count_solutions(puzzle, 2) == 1);
    CHECK(solve_sudoku(puzzle) == solved);

    SudokuGrid full = parse_grid81(fixtures::kSudokuSolution);
    CHECK(solve_sudoku(full) == full);
    CHECK(count_solutions(full, 1) == 1);
    CHECK(count_solutions(full, 5) == 1);

    SudokuGrid blank_solved = solve_sudoku(SudokuGrid());
    CHECK(blank_solved.solved());

    SudokuGrid conflict;
    conflict.set(0, 3);
    conflict.set(1, 3);
    CHECK(count_solutions(conflict, 2) == 0);
    CHECK_THROWS_AS(solve_sudoku(conflict), SudokuError);
    CHECK(count_solutions(SudokuGrid(), 3) == 3);
}

TEST_CASE("generated puzzles") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        auto [puzzle, solution] = generate_puzzle(seed, 30, true);
        REQUIRE(solution.solved());
        REQUIRE(puzzle.filled() == 30);
        REQUIRE(clues_kept(puzzle, solution));
        REQUIRE(find_violations(puzzle).empty());
        REQUIRE(count_solutions(puzzle, 2) == 1);
        SudokuGrid s = solve_sudoku(puzzle);
        REQUIRE(s.solved());
        REQUIRE(clues_kept(puzzle, s));
    }
    auto one_blank = generate_puzzle(5, 80, true);
    CHECK(one_blank.puzzle.filled() == 80);
    auto a = generate_puzzle(77, 25, true);
    auto b = generate_puzzle(77, 25, true);
    CHECK(a.puzzle == b.puzzle);
    CHECK(a.solution == b.solution);
    CHECK(generate_puzzle(3, 17, false).puzzle.filled() == 17);
    CHECK_THROWS_AS(generate_puzzle(1, 16, true), SudokuError);
    CHECK_THROWS_AS(generate_puzzle(1, 81, true), SudokuError);
}

TEST_CASE("rendering") {
    std::string blank = render_sudoku(SudokuGrid());
    CHECK(std::count(blank.begin(), blank.end(), '.') == 81);
    CHECK(std::count(blank.begin(), blank.end(), '\n') == 13);

    SudokuGrid full = parse_grid81(fixtures::kSudokuSolution);
    CHECK(render_sudoku(full).find('*') == std::string::npos);

    SudokuGrid g;
    g.set(1, 5);
    g.set(7, 5);
    auto v = find_violations(g);
    std::string marked = render_sudoku(g, v);
    CHECK(std::count(marked.begin(), marked.end(), '*') == 2);
}
