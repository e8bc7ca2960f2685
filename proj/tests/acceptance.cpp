// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "puzzletext/corpus.hpp"
#include "puzzletext/cube.hpp"
#include "puzzletext/evaluator.hpp"
#include "puzzletext/io.hpp"
#include "puzzletext/markov.hpp"
#include "puzzletext/maze.hpp"
#include "puzzletext/rng.hpp"
#include "puzzletext/sudoku.hpp"
#include "support/cube_oracle.hpp"
#include "support/fixtures.hpp"
#include "support/maze_oracle.hpp"
#include "support/sudoku_oracle.hpp"

using namespace puzzletext;
namespace fs = std::filesystem;

namespace {

// Pinned limits, in seconds.
constexpr double kGroupLimit = 10.0;
constexpr double kSolverLimit = 300.0;
constexpr double kCorpusLimit = 120.0;
constexpr double kValidatorLimit = 5.0;
constexpr double kMazeLimit = 30.0;
constexpr double kPipelineLimit = 300.0;

constexpr std::uint64_t kCubeSeed = 2024;
constexpr int kCubeTotal = 5000;
constexpr int kMaxScramble = 5;
constexpr double kTestFraction = 0.2;
constexpr std::size_t kSplitLow = 2500;
constexpr std::size_t kSplitHigh = 5000;

constexpr std::uint64_t kMazeSeed = 99;
constexpr int kMazesPerSize = 1000;

constexpr std::uint64_t kPipelineSeed = 10000;
constexpr int kPipelineMazes = 10000;
constexpr int kOrder = 6;
constexpr double kAlpha = 0.1;
constexpr int kSamples = 100;
constexpr int kSampleChars = 1024;

struct Outcome {
    bool pass = true;
    std::string detail;

    void fail(const std::string& why) {
        if (pass) detail = why;
        pass = false;
    }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

int failures = 0;

void report(int id, const std::string& name, Outcome o, double secs, double limit) {
    if (limit > 0 && secs >= limit) o.fail("took " + std::to_string(secs) + " s");
    char timing[64];
    if (limit > 0)
        std::snprintf(timing, sizeof timing, "%.2f s / limit %.0f s", secs, limit);
    else
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << id << "  " << name << "  ["
              << timing << "]";
    if (!o.detail.empty()) std::cout << "  " << o.detail;
    std::cout << std::endl;
    failures += !o.pass;
}

// ---------------------------------------------------------------- 1

Outcome cube_group_properties() {
    Outcome o;
    Rng rng(1);
    std::size_t checks = 0;
    for (int n = 0; n < 10000 && o.pass; ++n) {
        cube::FaceletCube c;
        for (int k = 0; k < 30; ++k) c = c.apply(cube::Move::from_index(static_cast<int>(rng.below(18))));
        for (int i = 0; i < cube::kMoveCount; ++i) {
            cube::Move m = cube::Move::from_index(i);
            cube::FaceletCube t = c.apply(m);
            std::array<int, 6> counts{};
            for (int f = 0; f < cube::kFacelets; ++f) ++counts[static_cast<int>(t[f])];
            for (int s = 0; s < 6; ++s) {
                if (counts[s] != 9) o.fail("symbol count changed");
                if (t[s * 9 + 4] != c[s * 9 + 4]) o.fail("center moved");
            }
            if (!(t.apply(m.inverse()) == c)) o.fail("move then inverse is not identity");
            cube::FaceletCube q = c;
            for (int k = 0; k < 4; ++k) q = q.apply(m);
            if (!(q == c)) o.fail("four turns are not identity");
            ++checks;
        }
    }
    if (o.pass) o.detail = std::to_string(checks) + " state-move pairs";
    return o;
}

// ---------------------------------------------------------------- 2

Outcome solver_vs_oracle() {
    Outcome o;
    const auto dist = cube_oracle::distances(3);
    std::array<std::size_t, 4> per_depth{};
    for (const auto& [text, d] : dist) {
        ++per_depth[d];
        cube::FaceletCube c = cube::decode_facelets(text);
        cube::Formula f = cube::solve(c);
        if (static_cast<int>(f.size()) != d) o.fail("distance mismatch for " + text);
        if (!c.apply(f).is_solved()) o.fail("solution does not solve " + text);
    }
    if (o.pass) {
        std::ostringstream s;
        s << dist.size() << " states (" << per_depth[0] << "/" << per_depth[1] << "/" << per_depth[2]
          << "/" << per_depth[3] << " at distance 0-3)";
        o.detail = s.str();
    }
    return o;
}

// ---------------------------------------------------------------- 3, 4

struct CubeArtifacts {
    std::string corpus;
    std::string train;
    std::string test;
    std::size_t train_size = 0;
    std::size_t test_size = 0;
};

Outcome cube_corpus(CubeArtifacts& art) {
    Outcome o;
    auto records = corpus::build_cube_corpus(kCubeSeed, kCubeTotal, kMaxScramble);
    if (records.size() != static_cast<std::size_t>(kCubeTotal)) o.fail("wrong record count");
    for (const auto& r : records) {
        cube::FaceletCube c = cube::decode_facelets(r.prompt);
        if (!c.apply(cube::parse_formula(r.response)).is_solved()) o.fail("response does not solve " + r.prompt);
    }
    const int per_length = kCubeTotal / kMaxScramble;
    std::vector<corpus::PuzzleRecord> bucket;
    for (const auto& r : records)
        if (r.meta["scramble_length"] == 1) bucket.push_back(r);
    if (bucket.size() != static_cast<std::size_t>(per_length)) o.fail("length-1 bucket has wrong size");
    const std::size_t distinct_one = corpus::dedup(bucket).size();
    if (distinct_one > 18) o.fail("length-1 bucket dedups to " + std::to_string(distinct_one));

    corpus::CorpusSplit split = corpus::dedup_and_split(records, kCubeSeed, kTestFraction);
    std::set<std::string> train_keys;
    for (const auto& r : split.train) train_keys.insert(r.canonical_key());
    for (const auto& r : split.test)
        if (train_keys.count(r.canonical_key())) o.fail("train and test share " + r.prompt);

    art.corpus = corpus::serialize_corpus(records);
    art.train = corpus::serialize_corpus(split.train);
    art.test = corpus::serialize_corpus(split.test);
    art.train_size = split.train.size();
    art.test_size = split.test.size();
    if (o.pass)
        o.detail = std::to_string(records.size()) + " records, length-1 bucket " +
                   std::to_string(distinct_one) + " distinct";
    return o;
}

Outcome split_plausibility(const CubeArtifacts& art) {
    Outcome o;
    const std::size_t total = art.train_size + art.test_size;
    o.detail = "train " + std::to_string(art.train_size) + " + test " + std::to_string(art.test_size) +
               " = " + std::to_string(total) + ", expected in [" + std::to_string(kSplitLow) + ", " +
               std::to_string(kSplitHigh) + "]";
    if (total < kSplitLow || total > kSplitHigh) o.pass = false;
    return o;
}

// ---------------------------------------------------------------- 5

Outcome sudoku_validator() {
    Outcome o;
    Rng rng(5);
    for (int n = 0; n < 10000; ++n) {
        std::array<std::uint8_t, sudoku::kCells> cells{};
        for (auto& c : cells) c = static_cast<std::uint8_t>(rng.below(10));
        auto expected = sudoku_oracle::scan(cells);
        auto actual = sudoku::find_violations(sudoku::SudokuGrid(cells));
        bool same = actual.size() == expected.size();
        for (std::size_t k = 0; same && k < actual.size(); ++k)
            same = static_cast<int>(actual[k].kind) == expected[k].unit_kind &&
                   actual[k].index == expected[k].unit && actual[k].digit == expected[k].digit &&
                   actual[k].positions == expected[k].cells;
        if (!same) o.fail("disagreement on grid " + std::to_string(n));
    }

    corpus::PuzzleRecord r = corpus::parse_record(fixtures::kSudokuRecord);
    sudoku::SudokuGrid puzzle = sudoku::parse_grid81(r.prompt);
    sudoku::SudokuGrid answer = sudoku::parse_grid81(r.response);
    if (!sudoku::find_violations(answer).empty()) o.fail("published response has repeats");
    if (!answer.complete()) o.fail("published response has blanks");
    for (int i = 0; i < sudoku::kCells; ++i)
        if (puzzle[i] && puzzle[i] != answer[i]) o.fail("published response changes a clue");
    if (o.pass)
        o.detail = "10000 grids agree; published pair has " + std::to_string(puzzle.filled()) +
                   " clues, response solved and clue-preserving";
    return o;
}

// ---------------------------------------------------------------- 6

Outcome maze_properties(std::string& renders) {
    Outcome o;
    renders.clear();
    std::size_t checked = 0;
    for (int side : {4, 5, 6})
        for (int n = 0; n < kMazesPerSize; ++n) {
            const std::uint64_t seed = mix_seed(kMazeSeed, static_cast<std::uint64_t>(side * kMazesPerSize + n));
            maze::Maze m = maze::generate_maze(seed, side, side);
            if (!maze_oracle::is_spanning_tree(m)) o.fail("maze is not a spanning tree");
            maze::MazePath p = maze::solve_maze(m, maze::Strategy::BFS);
            if (side <= 5 && static_cast<int>(p.steps.size()) != maze_oracle::exhaustive_min_steps(m))
                o.fail("BFS length differs from exhaustive minimum");
            std::string plain = maze::render_maze(m);
            std::string solved = maze::render_maze(m, p);
            maze::ParsedMaze a = maze::parse_maze(plain);
            maze::ParsedMaze b = maze::parse_maze(solved);
            if (maze::render_maze(a.maze) != plain || a.path) o.fail("plain round trip differs");
            if (maze::render_maze(b.maze, b.path) != solved || !(b.path == p))
                o.fail("solved round trip differs");
            renders += solved;
            ++checked;
        }
    if (o.pass) o.detail = std::to_string(checked) + " mazes";
    return o;
}

// ---------------------------------------------------------------- 7

Outcome evaluator_arithmetic() {
    Outcome o;
    eval::EvalReport r = eval::aggregate_counts(corpus::Kind::Cube, {11, 576, 14});
    const std::string got = eval::format_tenths(r.invalid_tenths) + " / " +
                            eval::format_tenths(r.incorrect_tenths) + " / " +
                            eval::format_tenths(r.correct_tenths);
    o.detail = "11/576/14 -> " + got + " %";
    if (r.total != 601 || got != "1.8 / 95.8 / 2.3") o.pass = false;
    return o;
}

// ---------------------------------------------------------------- 8

struct PipelineArtifacts {
    std::string corpus;
    std::string model;
    std::string samples;
    std::string report_json;
    std::string report_text;
};

Outcome pipeline(PipelineArtifacts& art) {
    Outcome o;
    auto records = corpus::build_maze_corpus(kPipelineSeed, kPipelineMazes, {{4, 4}, {5, 5}});
    art.corpus = corpus::serialize_corpus(records);
    markov::CharMarkovModel model = markov::train(art.corpus, kOrder, kAlpha);
    art.model = model.save();

    const std::string prompt(corpus::kStartToken);
    std::vector<eval::SampleVerdict> verdicts;
    art.samples.clear();
    for (int i = 0; i < kSamples; ++i) {
        std::string s = markov::sample(model, prompt, kSampleChars, mix_seed(kPipelineSeed, i),
                                       markov::kDefaultTemperature);
        if (s.size() > prompt.size() + kSampleChars) o.fail("sample exceeds the character cap");
        art.samples += s + "\n";
        verdicts.push_back(eval::classify_record(corpus::Kind::Maze, s));
    }
    eval::EvalReport report = eval::aggregate(verdicts);
    art.report_json = eval::report_to_json(report).dump(2) + "\n";
    art.report_text = eval::report_to_text(report);

    if (report.total != static_cast<std::size_t>(kSamples)) o.fail("report total is not 100");
    if (report.counts.invalid + report.counts.incorrect + report.counts.correct != report.total)
        o.fail("classes do not partition the samples");
    if (o.pass)
        o.detail = "invalid/incorrect/correct = " + std::to_string(report.counts.invalid) + "/" +
                   std::to_string(report.counts.incorrect) + "/" + std::to_string(report.counts.correct) +
                   ", " + std::to_string(model.context_count()) + " contexts";
    return o;
}

// ---------------------------------------------------------------- 9

struct RunFiles {
    std::vector<std::pair<std::string, std::string>> files;
};

RunFiles write_run(const fs::path& dir, const CubeArtifacts& cube, const std::string& mazes,
                   const PipelineArtifacts& pipe) {
    RunFiles run;
    run.files = {{"cube_corpus.txt", cube.corpus},     {"cube_train.txt", cube.train},
                 {"cube_test.txt", cube.test},         {"maze_renders.txt", mazes},
                 {"maze_corpus.txt", pipe.corpus},     {"markov_model.txt", pipe.model},
                 {"samples.txt", pipe.samples},        {"report.json", pipe.report_json},
                 {"report.txt", pipe.report_text}};
    fs::create_directories(dir);
    for (const auto& [name, content] : run.files) io::write_file_atomic(dir / name, content);
    return run;
}

Outcome determinism(const fs::path& workdir, const RunFiles& first) {
    Outcome o;
    CubeArtifacts cube;
    std::string mazes;
    PipelineArtifacts pipe;
    cube_corpus(cube);
    maze_properties(mazes);
    pipeline(pipe);
    write_run(workdir / "run_b", cube, mazes, pipe);

    std::size_t bytes = 0;
    for (const auto& [name, content] : first.files) {
        std::string a = io::read_file(workdir / "run_a" / name);
        std::string b = io::read_file(workdir / "run_b" / name);
        if (a != b) o.fail(name + " differs between runs");
        bytes += a.size();
    }
    if (o.pass)
        o.detail = std::to_string(first.files.size()) + " files, " + std::to_string(bytes) + " bytes identical";
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    fs::path workdir = fs::temp_directory_path() / "puzzletext_acceptance";
    for (int i = 1; i + 1 < argc; ++i)
        if (std::string(argv[i]) == "--workdir") workdir = argv[i + 1];

    auto timed = [](auto&& fn) {
        auto start = Clock::now();
        Outcome o;
        try {
            o = fn();
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        return std::pair{o, seconds_since(start)};
    };

    auto [o1, t1] = timed(cube_group_properties);
    report(1, "cube group properties", o1, t1, kGroupLimit);

    auto [o2, t2] = timed(solver_vs_oracle);
    report(2, "solver matches breadth-first distances", o2, t2, kSolverLimit);

    CubeArtifacts cube;
    auto [o3, t3] = timed([&] { return cube_corpus(cube); });
    report(3, "cube corpus self-consistency", o3, t3, kCorpusLimit);

    auto [o4, t4] = timed([&] { return split_plausibility(cube); });
    report(4, "split size plausibility", o4, t4, 0);

    auto [o5, t5] = timed(sudoku_validator);
    report(5, "sudoku validator oracle", o5, t5, kValidatorLimit);

    std::string mazes;
    auto [o6, t6] = timed([&] { return maze_properties(mazes); });
    report(6, "maze properties", o6, t6, kMazeLimit);

    auto [o7, t7] = timed(evaluator_arithmetic);
    report(7, "evaluator percentages", o7, t7, 0);

    PipelineArtifacts pipe;
    auto [o8, t8] = timed([&] { return pipeline(pipe); });
    report(8, "end-to-end maze pipeline", o8, t8, kPipelineLimit);

    auto [o9, t9] = timed([&] {
        RunFiles first = write_run(workdir / "run_a", cube, mazes, pipe);
        return determinism(workdir, first);
    });
    report(9, "determinism of criteria 3, 6 and 8", o9, t9, 0);

    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
              << std::endl;
    return failures;
}
