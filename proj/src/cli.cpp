#include "puzzletext/cli.hpp"

#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "puzzletext/corpus.hpp"
#include "puzzletext/cube.hpp"
#include "puzzletext/evaluator.hpp"
#include "puzzletext/io.hpp"
#include "puzzletext/markov.hpp"
#include "puzzletext/maze.hpp"
#include "puzzletext/parallel.hpp"
#include "puzzletext/rng.hpp"
#include "puzzletext/sudoku.hpp"

namespace puzzletext::cli {
namespace {

using corpus::Kind;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::vector<std::pair<int, int>> parse_sizes(const std::string& text) {
    std::vector<std::pair<int, int>> sizes;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        int w = 0, h = 0;
        char x = 0;
        std::istringstream is(item);
        if (!(is >> w >> x >> h) || (x != 'x' && x != 'X') || !is.eof())
            throw UsageError("bad maze size '" + item + "', expected WxH");
        sizes.emplace_back(w, h);
    }
    if (sizes.empty()) throw UsageError("no maze sizes given");
    return sizes;
}

void write_corpus(const std::string& path, const std::vector<corpus::PuzzleRecord>& records,
                  std::ostream& err) {
    io::write_file_atomic(path, corpus::serialize_corpus(records));
    io::write_file_atomic(path + ".meta.jsonl", corpus::metadata_jsonl(records));
    err << "wrote " << records.size() << " records to " << path << "\n";
}

maze::Strategy parse_strategy(const std::string& s) {
    if (s == "bfs") return maze::Strategy::BFS;
    if (s == "dfs") return maze::Strategy::DFS;
    throw UsageError("strategy must be bfs or dfs");
}

// Options shared by every subcommand.
struct Common {
    int jobs = 1;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Puzzle notation toolkit: corpora, solvers, baseline model and scoring"};
    app.set_version_flag("--version", std::string("puzzletext ") + kVersion + " (record format " +
                                          std::to_string(kRecordFormatVersion) + ")");
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--jobs", common.jobs, "Parallel workers for record construction and scoring")
        ->check(CLI::PositiveNumber);

    std::function<void()> action;

    // gen ---------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "Generate a training corpus");
    gen->require_subcommand(1);
    std::uint64_t gen_seed = 0;
    std::string gen_out;
    auto add_gen_common = [&](CLI::App* sub) {
        sub->add_option("--seed", gen_seed, "RNG seed")->required();
        sub->add_option("--out", gen_out, "Corpus file; metadata goes to <out>.meta.jsonl")->required();
    };

    int cube_total = 5000, cube_max = 5;
    auto* gen_cube = gen->add_subcommand("cube", "Scrambled cube states with optimal solutions");
    add_gen_common(gen_cube);
    gen_cube->add_option("--total", cube_total, "Records before dedup")->capture_default_str();
    gen_cube->add_option("--max-scramble", cube_max, "Longest scramble")->capture_default_str();
    gen_cube->callback([&] {
        action = [&] {
            write_corpus(gen_out, corpus::build_cube_corpus(gen_seed, cube_total, cube_max, {common.jobs}),
                         err);
        };
    });

    int sudoku_total = 1000, clue_min = 25, clue_max = 35;
    bool allow_multiple = false;
    auto* gen_sudoku = gen->add_subcommand("sudoku", "Sudoku puzzles with solutions");
    add_gen_common(gen_sudoku);
    gen_sudoku->add_option("--total", sudoku_total)->capture_default_str();
    gen_sudoku->add_option("--clue-min", clue_min)->capture_default_str();
    gen_sudoku->add_option("--clue-max", clue_max)->capture_default_str();
    gen_sudoku->add_flag("--allow-multiple", allow_multiple, "Skip the unique-solution check");
    gen_sudoku->callback([&] {
        action = [&] {
            write_corpus(gen_out,
                         corpus::build_sudoku_corpus(gen_seed, sudoku_total, clue_min, clue_max,
                                                     !allow_multiple, {common.jobs}),
                         err);
        };
    });

    int maze_total = 10000;
    std::string maze_sizes = "4x4,5x5";
    auto* gen_maze = gen->add_subcommand("maze", "Paired unsolved/solved maze renders");
    add_gen_common(gen_maze);
    gen_maze->add_option("--total", maze_total)->capture_default_str();
    gen_maze->add_option("--sizes", maze_sizes, "Comma-separated WxH list, cycled")->capture_default_str();
    gen_maze->callback([&] {
        action = [&] {
            write_corpus(gen_out,
                         corpus::build_maze_corpus(gen_seed, maze_total, parse_sizes(maze_sizes),
                                                   {common.jobs}),
                         err);
        };
    });

    // ingest ------------------------------------------------------------
    auto* ingest = app.add_subcommand("ingest", "Convert an external dataset to a corpus");
    ingest->require_subcommand(1);
    std::string csv_in, csv_out;
    auto* ingest_csv = ingest->add_subcommand("sudoku-csv", "CSV with quizzes,solutions columns");
    ingest_csv->add_option("--input", csv_in)->required()->check(CLI::ExistingFile);
    ingest_csv->add_option("--out", csv_out)->required();
    ingest_csv->callback([&] {
        action = [&] {
            auto result = corpus::ingest_sudoku_csv_file(csv_in);
            for (const auto& e : result.errors) err << csv_in << ":" << e.line << ": " << e.reason << "\n";
            write_corpus(csv_out, result.records, err);
        };
    });

    // split -------------------------------------------------------------
    auto* split = app.add_subcommand("split", "Deduplicate a corpus and split it into train/test");
    std::string split_in, split_train, split_test;
    std::uint64_t split_seed = 0;
    double test_fraction = 0.2;
    split->add_option("--input", split_in)->required()->check(CLI::ExistingFile);
    split->add_option("--seed", split_seed)->required();
    split->add_option("--test-fraction", test_fraction)->capture_default_str();
    split->add_option("--train", split_train)->required();
    split->add_option("--test", split_test)->required();
    split->callback([&] {
        action = [&] {
            auto records = corpus::parse_corpus(io::read_file(split_in));
            auto s = corpus::dedup_and_split(records, split_seed, test_fraction);
            write_corpus(split_train, s.train, err);
            write_corpus(split_test, s.test, err);
            out << "input " << records.size() << " unique " << s.train.size() + s.test.size()
                << " train " << s.train.size() << " test " << s.test.size() << "\n";
        };
    });

    // solve -------------------------------------------------------------
    auto* solve = app.add_subcommand("solve", "Solve one puzzle");
    solve->require_subcommand(1);
    std::string solve_state;
    int max_depth = cube::kDefaultSolveDepth;
    auto* solve_cube = solve->add_subcommand("cube", "Print an optimal formula");
    solve_cube->add_option("--state", solve_state, "54-character facelet string")->required();
    solve_cube->add_option("--max-depth", max_depth)->capture_default_str();
    solve_cube->callback([&] {
        action = [&] {
            out << cube::format_formula(cube::solve(cube::decode_facelets(solve_state), max_depth)) << "\n";
        };
    });
    std::string solve_grid;
    auto* solve_sudoku = solve->add_subcommand("sudoku", "Print the first solution as 81 digits");
    solve_sudoku->add_option("--grid", solve_grid, "81-digit puzzle, 0 = blank")->required();
    solve_sudoku->callback([&] {
        action = [&] { out << sudoku::format_grid81(sudoku::solve_sudoku(sudoku::parse_grid81(solve_grid))) << "\n"; };
    });
    std::string solve_maze_in, strategy = "bfs";
    auto* solve_maze = solve->add_subcommand("maze", "Print the solved render of a maze file");
    solve_maze->add_option("--input", solve_maze_in)->required()->check(CLI::ExistingFile);
    solve_maze->add_option("--strategy", strategy)->capture_default_str();
    solve_maze->callback([&] {
        action = [&] {
            auto parsed = maze::parse_maze(io::read_file(solve_maze_in));
            out << maze::render_maze(parsed.maze, maze::solve_maze(parsed.maze, parse_strategy(strategy)));
        };
    });

    // render ------------------------------------------------------------
    auto* render = app.add_subcommand("render", "Draw a puzzle state as text");
    render->require_subcommand(1);
    std::string render_state, render_scramble;
    bool render_steps = false;
    auto* render_cube = render->add_subcommand("cube", "Unfolded cube net");
    auto* state_opt = render_cube->add_option("--state", render_state, "54-character facelet string");
    render_cube->add_option("--formula", render_scramble,
                            "Formula applied to --state (or to the solved cube)");
    render_cube->add_flag("--steps", render_steps, "Print the net after every move");
    render_cube->callback([&] {
        action = [&] {
            cube::FaceletCube c = state_opt->count() ? cube::decode_facelets(render_state)
                                                     : cube::FaceletCube::solved();
            cube::Formula f = cube::parse_formula(render_scramble);
            if (render_steps) {
                out << "start\n" << cube::render_cube_net(c);
                for (const auto& m : f) {
                    c = c.apply(m);
                    out << "\n" << m.to_string() << "\n" << cube::render_cube_net(c);
                }
                return;
            }
            out << cube::render_cube_net(c.apply(f));
        };
    });
    std::string render_grid;
    bool no_highlight = false;
    auto* render_sudoku = render->add_subcommand("sudoku", "Framed grid, repeated digits marked '*'");
    render_sudoku->add_option("--grid", render_grid)->required();
    render_sudoku->add_flag("--no-highlight", no_highlight);
    render_sudoku->callback([&] {
        action = [&] {
            auto g = sudoku::parse_grid81(render_grid);
            std::vector<sudoku::Violation> v;
            if (!no_highlight) v = sudoku::find_violations(g);
            out << sudoku::render_sudoku(g, v);
        };
    });
    std::uint64_t render_seed = 0;
    int render_w = 4, render_h = 4;
    bool render_solved = false;
    auto* render_maze = render->add_subcommand("maze", "Generate and draw one maze");
    render_maze->add_option("--seed", render_seed)->required();
    render_maze->add_option("--width", render_w)->capture_default_str();
    render_maze->add_option("--height", render_h)->capture_default_str();
    render_maze->add_flag("--solved", render_solved, "Overlay the BFS solution");
    render_maze->callback([&] {
        action = [&] {
            auto m = maze::generate_maze(render_seed, render_w, render_h);
            out << (render_solved ? maze::render_maze(m, maze::solve_maze(m)) : maze::render_maze(m));
        };
    });

    // train -------------------------------------------------------------
    auto* train = app.add_subcommand("train", "Fit the character-level Markov baseline");
    std::string train_corpus, train_out;
    int order = markov::kDefaultOrder;
    double alpha = markov::kDefaultAlpha;
    train->add_option("--corpus", train_corpus)->required()->check(CLI::ExistingFile);
    train->add_option("--order", order)->capture_default_str()->check(CLI::NonNegativeNumber);
    train->add_option("--alpha", alpha)->capture_default_str()->check(CLI::PositiveNumber);
    train->add_option("--out", train_out)->required();
    train->callback([&] {
        action = [&] {
            auto text = io::read_file(train_corpus);
            auto model = markov::train(text, order, alpha);
            io::write_file_atomic(train_out, model.save());
            err << "trained order-" << order << " model: " << model.context_count() << " contexts, "
                << model.alphabet().size() << " symbols\n";
        };
    });

    // sample ------------------------------------------------------------
    auto* sample = app.add_subcommand("sample", "Draw samples from a trained model");
    std::string sample_model, sample_out, prompt = std::string(corpus::kStartToken);
    int count = 100, max_chars = markov::kDefaultMaxChars;
    std::uint64_t sample_seed = 0;
    double temperature = markov::kDefaultTemperature;
    sample->add_option("--model", sample_model)->required()->check(CLI::ExistingFile);
    sample->add_option("--prompt", prompt)->capture_default_str();
    sample->add_option("--count", count)->capture_default_str()->check(CLI::PositiveNumber);
    sample->add_option("--max-chars", max_chars)->capture_default_str()->check(CLI::PositiveNumber);
    sample->add_option("--seed", sample_seed)->required();
    sample->add_option("--temperature", temperature, "0 = greedy")->capture_default_str()->check(CLI::NonNegativeNumber);
    sample->add_option("--out", sample_out, "Write samples here instead of stdout");
    sample->callback([&] {
        action = [&] {
            auto model = markov::CharMarkovModel::load(io::read_file(sample_model));
            auto texts = parallel_map(static_cast<std::size_t>(count), common.jobs, [&](std::size_t i) {
                return markov::sample(model, prompt, max_chars, mix_seed(sample_seed, i), temperature);
            });
            std::string joined;
            for (auto& t : texts) {
                joined += t;
                if (joined.empty() || joined.back() != '\n') joined += '\n';
            }
            if (sample_out.empty())
                out << joined;
            else
                io::write_file_atomic(sample_out, joined);
        };
    });

    // score -------------------------------------------------------------
    auto* score = app.add_subcommand("score", "Classify model outputs as invalid/incorrect/correct");
    std::string score_kind, prompts_file, outputs_file, records_file, json_out;
    std::size_t budget = eval::kDefaultResponseBudget;
    bool no_clue_check = false;
    score->add_option("kind", score_kind, "cube, sudoku or maze")
        ->required()
        ->check(CLI::IsMember({"cube", "sudoku", "maze"}));
    auto* prompts_opt = score->add_option("--prompts", prompts_file, "One canonical state per line")
                            ->check(CLI::ExistingFile);
    auto* outputs_opt = score->add_option("--outputs", outputs_file, "One model output per line")
                            ->check(CLI::ExistingFile);
    auto* records_opt = score->add_option("--records", records_file, "Framed records, e.g. sampler output")
                            ->check(CLI::ExistingFile);
    prompts_opt->needs(outputs_opt);
    outputs_opt->needs(prompts_opt);
    records_opt->excludes(prompts_opt);
    score->add_option("--json", json_out, "Also write the report as JSON");
    score->add_option("--max-response-chars", budget)->capture_default_str();
    score->add_flag("--no-clue-check", no_clue_check, "Allow Sudoku responses to change clues");
    score->callback([&] {
        action = [&] {
            const Kind kind = corpus::kind_from_name(score_kind);
            eval::EvalOptions opts{budget, !no_clue_check, common.jobs};
            eval::IngestOutcome outcome;
            if (records_opt->count()) {
                outcome = eval::ingest_records(kind, io::read_file(records_file), opts);
            } else if (prompts_opt->count()) {
                if (kind == Kind::Maze) throw UsageError("maze outputs are scored with --records");
                outcome = eval::ingest_external_outputs(kind, prompts_file, outputs_file, opts);
            } else {
                throw UsageError("score needs --records or --prompts with --outputs");
            }
            for (const auto& s : outcome.skipped) err << "skipped line " << s.line << ": " << s.message << "\n";
            auto report = eval::aggregate(outcome.verdicts);
            out << eval::report_to_text(report);
            if (!json_out.empty()) io::write_file_atomic(json_out, eval::report_to_json(report).dump(2) + "\n");
        };
    });

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (action) action();
        return kExitOk;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitData;
    }
}

}  // namespace puzzletext::cli
