#include <filesystem>
#include <fstream>
#include <set>
#include <string>

#include "doctest.h"
#include "puzzletext/corpus.hpp"
#include "puzzletext/cube.hpp"
#include "puzzletext/maze.hpp"
#include "puzzletext/sudoku.hpp"
#include "support/cube_oracle.hpp"
#include "support/fixtures.hpp"

using namespace puzzletext;
using namespace puzzletext::corpus;

namespace {

CorpusErrc error_of(std::string_view text) {
    try {
        parse_record(text);
    } catch (const CorpusError& e) {
        return e.code();
    }
    FAIL("expected a record error");
    return CorpusErrc::File;
}

std::vector<PuzzleRecord> numbered(int n) {
    std::vector<PuzzleRecord> out;
    for (int i = 0; i < n; ++i) out.push_back({Kind::Cube, "state" + std::to_string(i), "R", {}});
    return out;
}

}  // namespace

TEST_CASE("published sudoku record") {
    PuzzleRecord r = parse_record(fixtures::kSudokuRecord);
    CHECK(r.kind == Kind::Sudoku);
    CHECK(r.prompt == fixtures::kSudokuPuzzle);
    CHECK(r.response == fixtures::kSudokuSolution);
    CHECK(serialize_record(r) == "<|startoftext|>[WP] " + std::string(fixtures::kSudokuPuzzle) +
                                     " [RESPONSE] " + std::string(fixtures::kSudokuSolution) +
                                     " <|endoftext|>");
}

TEST_CASE("framing errors") {
    CHECK(error_of("<|startoftext|>[WP] UUU <|endoftext|>") == CorpusErrc::Framing);
    CHECK(error_of("[WP] a [RESPONSE] b <|endoftext|>") == CorpusErrc::Framing);
    CHECK(error_of("<|startoftext|>[WP] a [RESPONSE] b") == CorpusErrc::Framing);
    CHECK(error_of("<|startoftext|>[RESPONSE] b [WP] a <|endoftext|>") == CorpusErrc::Framing);
    CHECK(error_of("<|startoftext|>[WP] hello [RESPONSE] R <|endoftext|>") == CorpusErrc::Kind);
}

TEST_CASE("cube corpus") {
    auto records = build_cube_corpus(7, 500, 5);
    REQUIRE(records.size() == 500);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        CHECK(r.kind == Kind::Cube);
        CHECK(r.meta["scramble_length"] == static_cast<int>(i / 100) + 1);
        cube::FaceletCube c = cube::decode_facelets(r.prompt);
        REQUIRE(c.apply(cube::parse_formula(r.response)).is_solved());
        CHECK(static_cast<int>(cube::parse_formula(r.response).size()) <= r.meta["scramble_length"]);
        std::string text = serialize_record(r);
        CHECK(text.find('\n') == std::string::npos);
        PuzzleRecord back = parse_record(text);
        CHECK(back.kind == r.kind);
        CHECK(back.prompt == r.prompt);
        CHECK(back.response == r.response);
    }
    CHECK_THROWS_AS(build_cube_corpus(7, 501, 5), CorpusError);
    CHECK(serialize_corpus(build_cube_corpus(3, 50, 5)) == serialize_corpus(build_cube_corpus(3, 50, 5)));
}

TEST_CASE("one-move bucket has at most 18 states") {
    const auto dist = cube_oracle::distances(1);
    std::set<std::string> one_move;
    for (const auto& [s, d] : dist)
        if (d == 1) one_move.insert(s);
    CHECK(one_move.size() == 18);

    auto records = build_cube_corpus(11, 1000, 5);
    std::vector<PuzzleRecord> bucket(records.begin(), records.begin() + 200);
    auto unique = dedup(bucket);
    CHECK(unique.size() <= 18);
    for (const auto& r : unique) CHECK(one_move.count(r.prompt) == 1);
}

TEST_CASE("sudoku corpus") {
    auto records = build_sudoku_corpus(5, 20, 25, 35);
    REQUIRE(records.size() == 20);
    for (const auto& r : records) {
        auto puzzle = sudoku::parse_grid81(r.prompt);
        auto solution = sudoku::parse_grid81(r.response);
        CHECK(solution.solved());
        CHECK(puzzle.filled() >= 25);
        CHECK(puzzle.filled() <= 35);
        for (int i = 0; i < sudoku::kCells; ++i)
            if (puzzle[i]) CHECK(puzzle[i] == solution[i]);
        PuzzleRecord back = parse_record(serialize_record(r));
        CHECK(back.prompt == r.prompt);
        CHECK(back.response == r.response);
    }
    CHECK(serialize_corpus(records) == serialize_corpus(build_sudoku_corpus(5, 20, 25, 35)));
}

TEST_CASE("maze corpus") {
    auto records = build_maze_corpus(2, 40, {{4, 4}, {5, 5}});
    REQUIRE(records.size() == 40);
    int four = 0;
    for (const auto& r : records) {
        auto prompt = maze::parse_maze(r.prompt);
        auto solved = maze::parse_maze(r.response);
        CHECK_FALSE(prompt.path.has_value());
        REQUIRE(solved.path.has_value());
        CHECK(solved.maze == prompt.maze);
        CHECK(std::holds_alternative<maze::PathValid>(maze::validate_path(prompt.maze, *solved.path)));
        four += prompt.maze.width() == 4;
        std::string text = serialize_record(r);
        CHECK(text.starts_with("<|startoftext|>\n[WP]\n"));
        CHECK(text.ends_with("<|endoftext|>"));
        PuzzleRecord back = parse_record(text);
        CHECK(back.kind == Kind::Maze);
        CHECK(serialize_record(back) == text);
    }
    CHECK(four == 20);
    CHECK_THROWS_AS(build_maze_corpus(2, 4, {{7, 7}}), CorpusError);
    CHECK_THROWS_AS(build_maze_corpus(2, 4, {{1, 4}}), CorpusError);

    std::string file = serialize_corpus(records);
    auto parsed = parse_corpus(file);
    REQUIRE(parsed.size() == records.size());
    CHECK(serialize_corpus(parsed) == file);
}

TEST_CASE("corpus file round trip") {
    auto cubes = build_cube_corpus(1, 25, 5);
    std::string text = serialize_corpus(cubes);
    CHECK(std::count(text.begin(), text.end(), '\n') == 25);
    CHECK(serialize_corpus(parse_corpus(text)) == text);
    CHECK(split_at_start_tokens("junk" + text).size() == 25);
}

TEST_CASE("metadata sidecar") {
    auto cubes = build_cube_corpus(1, 5, 5);
    std::string jsonl = metadata_jsonl(cubes);
    CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 5);
    auto first = nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')));
    CHECK(first["index"] == 0);
    CHECK(first["kind"] == "cube");
    CHECK(first.contains("seed"));
}

TEST_CASE("sudoku csv ingestion") {
    std::string good = std::string(fixtures::kSudokuPuzzle) + "," + std::string(fixtures::kSudokuSolution);
    std::string clash_solution(fixtures::kSudokuSolution);
    clash_solution[2] = clash_solution[2] == '4' ? '5' : '4';
    std::string csv = "quizzes,solutions\n" + good + "\n" +
                      std::string(fixtures::kSudokuPuzzle.substr(0, 80)) + "," +
                      std::string(fixtures::kSudokuSolution) + "\n" +
                      std::string(fixtures::kSudokuPuzzle) + "," + clash_solution + "\n" +
                      "only-one-column\n";
    IngestResult r = ingest_sudoku_csv(csv);
    REQUIRE(r.records.size() == 1);
    CHECK(r.records[0].prompt == fixtures::kSudokuPuzzle);
    REQUIRE(r.errors.size() == 3);
    CHECK(r.errors[0].line == 3);
    CHECK(r.errors[0].reason == "LengthError");
    CHECK(r.errors[1].line == 4);
    CHECK(r.errors[2].reason == "ColumnCount");
    CHECK(r.errors[1].reason == "Inconsistent");  // the altered digit repeats in its row

    // A consistent solution to a different puzzle.
    auto generated = sudoku::generate_puzzle(4, 30, true);
    std::string quiz = sudoku::format_grid81(generated.puzzle);
    std::string other = sudoku::format_grid81(sudoku::generate_puzzle(5, 30, true).solution);
    IngestResult clash = ingest_sudoku_csv("quizzes,solutions\n" + quiz + "," + other + "\n");
    REQUIRE(clash.errors.size() == 1);
    CHECK(clash.errors[0].reason == "ClueMismatch");

    CHECK_THROWS_AS(ingest_sudoku_csv_file("/nonexistent/file.csv"), Error);
}

TEST_CASE("dedup and split") {
    auto split = dedup_and_split(numbered(10), 1, 0.2);
    CHECK(split.train.size() == 8);
    CHECK(split.test.size() == 2);

    auto records = numbered(10);
    records.push_back(records[3]);
    records.push_back(records[3]);
    auto s = dedup_and_split(records, 2, 0.2);
    int seen = 0;
    for (const auto* side : {&s.train, &s.test})
        for (const auto& r : *side) seen += r.prompt == "state3";
    CHECK(seen == 1);
    CHECK(s.train.size() + s.test.size() == 10);

    auto cubes = build_cube_corpus(9, 1000, 5);
    auto once = dedup(cubes);
    CHECK(dedup(once).size() == once.size());
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto sp = dedup_and_split(cubes, seed, 0.2);
        std::set<std::string> train_keys;
        for (const auto& r : sp.train) train_keys.insert(r.canonical_key());
        CHECK(train_keys.size() == sp.train.size());
        std::set<std::string> test_keys;
        for (const auto& r : sp.test) {
            CHECK(train_keys.count(r.canonical_key()) == 0);
            test_keys.insert(r.canonical_key());
        }
        CHECK(test_keys.size() == sp.test.size());
    }
}
