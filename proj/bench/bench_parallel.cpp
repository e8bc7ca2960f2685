// Serial reference vs OpenMP kernels for corpus construction and scoring.
//
//   puzzletext_bench [jobs]

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <string>

#include <omp.h>

#include "puzzletext/corpus.hpp"
#include "puzzletext/evaluator.hpp"

namespace {

template <class Fn>
double time_ms(Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void report(const std::string& name, double serial, double parallel, bool same) {
    std::cout << name << ": serial " << serial << " ms, parallel " << parallel << " ms, speedup "
              << serial / parallel << (same ? "" : "  OUTPUT MISMATCH") << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace puzzletext;
    const int jobs = argc > 1 ? std::atoi(argv[1]) : omp_get_max_threads();
    std::cout << "jobs " << jobs << "\n";

    std::vector<corpus::PuzzleRecord> a, b;
    double s = time_ms([&] { a = corpus::build_cube_corpus(7, 1000, 5, {1}); });
    double p = time_ms([&] { b = corpus::build_cube_corpus(7, 1000, 5, {jobs}); });
    report("cube corpus (1000)", s, p, corpus::serialize_corpus(a) == corpus::serialize_corpus(b));

    s = time_ms([&] { a = corpus::build_sudoku_corpus(7, 200, 25, 35, true, {1}); });
    p = time_ms([&] { b = corpus::build_sudoku_corpus(7, 200, 25, 35, true, {jobs}); });
    report("sudoku corpus (200)", s, p, corpus::serialize_corpus(a) == corpus::serialize_corpus(b));

    s = time_ms([&] { a = corpus::build_maze_corpus(7, 10000, {{4, 4}, {5, 5}}, {1}); });
    p = time_ms([&] { b = corpus::build_maze_corpus(7, 10000, {{4, 4}, {5, 5}}, {jobs}); });
    const std::string text = corpus::serialize_corpus(a);
    report("maze corpus (10000)", s, p, text == corpus::serialize_corpus(b));

    eval::IngestOutcome ra, rb;
    s = time_ms([&] { ra = eval::ingest_records(corpus::Kind::Maze, text, {.jobs = 1}); });
    p = time_ms([&] { rb = eval::ingest_records(corpus::Kind::Maze, text, {.jobs = jobs}); });
    report("maze scoring (10000)", s, p,
           eval::report_to_json(eval::aggregate(ra.verdicts)) ==
               eval::report_to_json(eval::aggregate(rb.verdicts)));
}
