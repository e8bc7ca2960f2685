#include "puzzletext/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "puzzletext/cube.hpp"
#include "puzzletext/io.hpp"
#include "puzzletext/maze.hpp"
#include "puzzletext/parallel.hpp"
#include "puzzletext/rng.hpp"
#include "puzzletext/sudoku.hpp"

namespace puzzletext::corpus {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

std::string strip_spaces(std::string_view s) {
    std::string out;
    for (char c : s)
        if (!is_space(c)) out += c;
    return out;
}

bool all_digits(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool looks_like_cube(std::string_view s) {
    return s.size() == static_cast<std::size_t>(cube::kFacelets) &&
           std::all_of(s.begin(), s.end(), [](char c) { return cube::face_from_char(c).has_value(); });
}

[[noreturn]] void framing(const std::string& what) {
    throw CorpusError(CorpusErrc::Framing, "record framing: " + what);
}

constexpr std::string_view kMazeHead = "\n[WP]\n";
constexpr std::string_view kMazeMid = "[RESPONSE]\n";

PuzzleRecord parse_maze_record(std::string_view body) {
    // body: everything between <|startoftext|> and <|endoftext|>.
    if (body.substr(0, kMazeHead.size()) != kMazeHead) framing("expected \"[WP]\" on its own line");
    body.remove_prefix(kMazeHead.size());
    std::size_t mid = body.find(kMazeMid);
    if (mid == std::string_view::npos || (mid > 0 && body[mid - 1] != '\n'))
        framing("missing \"[RESPONSE]\" line");
    PuzzleRecord r{Kind::Maze, std::string(body.substr(0, mid)),
                   std::string(body.substr(mid + kMazeMid.size()))};
    if (r.prompt.empty() || r.prompt.front() != '+')
        throw CorpusError(CorpusErrc::Kind, "maze prompt does not start with '+'");
    return r;
}

}  // namespace

std::string_view kind_name(Kind k) {
    switch (k) {
        case Kind::Cube: return "cube";
        case Kind::Sudoku: return "sudoku";
        case Kind::Maze: return "maze";
    }
    return "";
}

Kind kind_from_name(std::string_view name) {
    if (name == "cube") return Kind::Cube;
    if (name == "sudoku") return Kind::Sudoku;
    if (name == "maze") return Kind::Maze;
    throw CorpusError(CorpusErrc::Kind, "unknown puzzle kind '" + std::string(name) + "'");
}

std::string serialize_record(const PuzzleRecord& r) {
    std::string out(kStartToken);
    if (r.kind == Kind::Maze) {
        out += kMazeHead;
        out += r.prompt;
        out += kMazeMid;
        out += r.response;
    } else {
        out += kPromptToken;
        out += ' ';
        out += r.prompt;
        out += ' ';
        out += kResponseToken;
        out += ' ';
        out += r.response;
        out += ' ';
    }
    out += kEndToken;
    return out;
}

PuzzleRecord parse_record(std::string_view text) {
    text = trim(text);
    if (text.substr(0, kStartToken.size()) != kStartToken) framing("missing <|startoftext|>");
    if (text.size() < kStartToken.size() + kEndToken.size() ||
        text.substr(text.size() - kEndToken.size()) != kEndToken)
        framing("missing <|endoftext|>");
    std::string_view body =
        text.substr(kStartToken.size(), text.size() - kStartToken.size() - kEndToken.size());
    if (body.find(kStartToken) != std::string_view::npos ||
        body.find(kEndToken) != std::string_view::npos)
        framing("nested framing tokens");

    if (!body.empty() && body.front() == '\n') return parse_maze_record(body);

    std::string_view rest = trim(body);
    if (rest.substr(0, kPromptToken.size()) != kPromptToken) framing("missing [WP]");
    rest.remove_prefix(kPromptToken.size());
    std::size_t mid = rest.find(kResponseToken);
    if (mid == std::string_view::npos) framing("missing [RESPONSE]");
    std::string_view prompt = trim(rest.substr(0, mid));
    std::string_view response = trim(rest.substr(mid + kResponseToken.size()));
    if (response.find(kResponseToken) != std::string_view::npos ||
        prompt.find(kPromptToken) != std::string_view::npos)
        framing("repeated delimiter");

    std::string packed = strip_spaces(prompt);
    if (packed.size() == static_cast<std::size_t>(sudoku::kCells) && all_digits(packed))
        return {Kind::Sudoku, std::move(packed), strip_spaces(response)};
    if (looks_like_cube(prompt)) return {Kind::Cube, std::string(prompt), std::string(response)};
    throw CorpusError(CorpusErrc::Kind, "prompt matches no puzzle kind");
}

std::string serialize_corpus(const std::vector<PuzzleRecord>& records) {
    std::string out;
    for (const auto& r : records) {
        out += serialize_record(r);
        out += '\n';
    }
    return out;
}

std::vector<PuzzleRecord> parse_corpus(std::string_view text) {
    std::vector<PuzzleRecord> out;
    std::size_t pos = 0;
    for (;;) {
        while (pos < text.size() && is_space(text[pos])) ++pos;
        if (pos == text.size()) break;
        if (text.substr(pos, kStartToken.size()) != kStartToken)
            framing("expected <|startoftext|> at byte " + std::to_string(pos));
        std::size_t end = text.find(kEndToken, pos);
        if (end == std::string_view::npos) framing("unterminated record at byte " + std::to_string(pos));
        end += kEndToken.size();
        out.push_back(parse_record(text.substr(pos, end - pos)));
        pos = end;
    }
    return out;
}

std::vector<std::string> split_at_start_tokens(std::string_view text) {
    std::vector<std::string> out;
    std::size_t pos = text.find(kStartToken);
    while (pos != std::string_view::npos) {
        std::size_t next = text.find(kStartToken, pos + kStartToken.size());
        std::size_t end = next == std::string_view::npos ? text.size() : next;
        out.emplace_back(text.substr(pos, end - pos));
        pos = next;
    }
    return out;
}

std::string metadata_jsonl(const std::vector<PuzzleRecord>& records) {
    std::string out;
    for (std::size_t i = 0; i < records.size(); ++i) {
        nlohmann::json j = records[i].meta;
        j["index"] = i;
        j["kind"] = kind_name(records[i].kind);
        out += j.dump();
        out += '\n';
    }
    return out;
}

std::vector<PuzzleRecord> build_cube_corpus(std::uint64_t seed, int total, int max_scramble,
                                            BuildOptions opts) {
    if (max_scramble < 1 || total < 0)
        throw CorpusError(CorpusErrc::Size, "max scramble length must be >= 1");
    if (total % max_scramble != 0)
        throw CorpusError(CorpusErrc::Divisibility,
                          "total " + std::to_string(total) + " is not divisible by " +
                              std::to_string(max_scramble));
    const int per_length = total / max_scramble;
    return parallel_map(static_cast<std::size_t>(total), opts.jobs, [&](std::size_t i) {
        const int length = static_cast<int>(i) / per_length + 1;
        const std::uint64_t record_seed = mix_seed(seed, i);
        cube::Formula scramble = cube::random_scramble(record_seed, length, max_scramble);
        cube::FaceletCube state = cube::FaceletCube::solved().apply(scramble);
        cube::Formula solution = cube::solve(state, max_scramble);
        PuzzleRecord r{Kind::Cube, cube::encode_facelets(state), cube::format_formula(solution)};
        r.meta = {{"seed", record_seed},
                  {"scramble", cube::format_formula(scramble)},
                  {"scramble_length", length}};
        return r;
    });
}

std::vector<PuzzleRecord> build_sudoku_corpus(std::uint64_t seed, int total, int min_clues,
                                              int max_clues, bool require_unique,
                                              BuildOptions opts) {
    if (total < 0 || min_clues < 17 || max_clues > 80 || min_clues > max_clues)
        throw CorpusError(CorpusErrc::Size, "clue range must satisfy 17 <= min <= max <= 80");
    return parallel_map(static_cast<std::size_t>(total), opts.jobs, [&](std::size_t i) {
        const std::uint64_t record_seed = mix_seed(seed, i);
        Rng rng(record_seed);
        const int clues = static_cast<int>(rng.between(min_clues, max_clues));
        auto generated = sudoku::generate_puzzle(rng.next(), clues, require_unique);
        PuzzleRecord r{Kind::Sudoku, sudoku::format_grid81(generated.puzzle),
                       sudoku::format_grid81(generated.solution)};
        r.meta = {{"seed", record_seed}, {"clues", clues}, {"unique", require_unique}};
        return r;
    });
}

std::vector<PuzzleRecord> build_maze_corpus(std::uint64_t seed, int total,
                                            const std::vector<std::pair<int, int>>& sizes,
                                            BuildOptions opts) {
    if (sizes.empty() || total < 0) throw CorpusError(CorpusErrc::Size, "no maze sizes given");
    for (auto [w, h] : sizes)
        if (w < 2 || h < 2 || w > kMaxMazeSide || h > kMaxMazeSide)
            throw CorpusError(CorpusErrc::Size, "maze size " + std::to_string(w) + "x" +
                                                    std::to_string(h) + " outside 2x2..6x6");
    return parallel_map(static_cast<std::size_t>(total), opts.jobs, [&](std::size_t i) {
        const auto [w, h] = sizes[i % sizes.size()];
        const std::uint64_t record_seed = mix_seed(seed, i);
        maze::Maze m = maze::generate_maze(record_seed, w, h);
        maze::MazePath path = maze::solve_maze(m, maze::Strategy::BFS);
        PuzzleRecord r{Kind::Maze, maze::render_maze(m), maze::render_maze(m, path)};
        r.meta = {{"seed", record_seed}, {"width", w}, {"height", h}};
        return r;
    });
}

IngestResult ingest_sudoku_csv(std::string_view csv_text) {
    IngestResult result;
    std::size_t pos = 0, line_no = 0;
    while (pos < csv_text.size()) {
        std::size_t nl = csv_text.find('\n', pos);
        if (nl == std::string_view::npos) nl = csv_text.size();
        std::string_view line = trim(csv_text.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line_no == 1 || line.empty()) continue;

        auto reject = [&](std::string reason) {
            result.errors.push_back({line_no, std::move(reason)});
        };
        std::size_t comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos) {
            reject("ColumnCount");
            continue;
        }
        std::string_view quiz = trim(line.substr(0, comma));
        std::string_view answer = trim(line.substr(comma + 1));
        sudoku::SudokuGrid puzzle, solution;
        try {
            puzzle = sudoku::parse_grid81(quiz);
            solution = sudoku::parse_grid81(answer);
        } catch (const sudoku::SudokuError& e) {
            reject(e.code() == sudoku::SudokuErrc::Length ? "LengthError" : "DigitError");
            continue;
        }
        if (!solution.complete()) {
            reject("Incomplete");
            continue;
        }
        if (!solution.consistent()) {
            reject("Inconsistent");
            continue;
        }
        bool agrees = true;
        for (int i = 0; i < sudoku::kCells; ++i) agrees = agrees && (!puzzle[i] || puzzle[i] == solution[i]);
        if (!agrees) {
            reject("ClueMismatch");
            continue;
        }
        PuzzleRecord r{Kind::Sudoku, std::string(quiz), std::string(answer)};
        r.meta = {{"source", "csv"}, {"line", line_no}, {"clues", puzzle.filled()}};
        result.records.push_back(std::move(r));
    }
    return result;
}

IngestResult ingest_sudoku_csv_file(const std::filesystem::path& path) {
    return ingest_sudoku_csv(io::read_file(path));
}

std::vector<PuzzleRecord> dedup(const std::vector<PuzzleRecord>& records) {
    std::unordered_set<std::string> seen;
    std::vector<PuzzleRecord> out;
    for (const auto& r : records)
        if (seen.insert(r.canonical_key()).second) out.push_back(r);
    return out;
}

CorpusSplit dedup_and_split(const std::vector<PuzzleRecord>& records, std::uint64_t seed,
                            double test_fraction) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw CorpusError(CorpusErrc::Size, "test fraction must lie in (0, 1)");
    std::vector<PuzzleRecord> unique = dedup(records);
    Rng rng(seed);
    rng.shuffle(std::span<PuzzleRecord>(unique));
    const auto n_test = static_cast<std::size_t>(std::llround(test_fraction * unique.size()));
    CorpusSplit split{{}, {}, seed};
    split.test.assign(std::make_move_iterator(unique.begin()),
                      std::make_move_iterator(unique.begin() + n_test));
    split.train.assign(std::make_move_iterator(unique.begin() + n_test),
                       std::make_move_iterator(unique.end()));
    return split;
}

}  // namespace puzzletext::corpus
