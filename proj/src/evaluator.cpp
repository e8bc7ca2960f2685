#include "puzzletext/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "puzzletext/io.hpp"
#include "puzzletext/maze.hpp"
#include "puzzletext/parallel.hpp"
#include "puzzletext/sudoku.hpp"

namespace puzzletext::eval {
namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }

std::string_view trim(std::string_view s) {
    while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
    return s;
}

// Keeps everything up to and including the first <|endoftext|>.
std::string_view truncate_after_end(std::string_view text) {
    std::size_t end = text.find(corpus::kEndToken);
    if (end == std::string_view::npos) return text;
    return text.substr(0, end + corpus::kEndToken.size());
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        std::string_view line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

SampleVerdict invalid(Kind kind, InvalidReason reason, std::string_view text, std::string key = {}) {
    SampleVerdict v;
    v.kind = kind;
    v.verdict = Verdict::Invalid;
    v.reason = reason;
    v.generated_text = std::string(text);
    v.prompt_key = std::move(key);
    return v;
}

InvalidReason maze_reason(maze::MazeErrc code) {
    switch (code) {
        case maze::MazeErrc::UnknownToken: return InvalidReason::UnknownToken;
        case maze::MazeErrc::DanglingPath: return InvalidReason::DanglingPath;
        default: return InvalidReason::GeometryError;
    }
}

MazeProgress maze_progress(const maze::Maze& m, const maze::MazePath& path, bool correct) {
    MazeProgress p;
    maze::MazePath shortest;
    try {
        shortest = maze::solve_maze(m, maze::Strategy::BFS);
    } catch (const maze::MazeError&) {
        return p;
    }
    p.shortest_steps = static_cast<int>(shortest.steps.size());
    if (path.start == m.entry()) {
        std::size_t n = std::min(path.steps.size(), shortest.steps.size());
        while (p.matched_steps < static_cast<int>(n) &&
               path.steps[p.matched_steps] == shortest.steps[p.matched_steps])
            ++p.matched_steps;
    }
    if (correct)
        p.ratio = 1.0;
    else if (p.shortest_steps > 0)
        p.ratio = static_cast<double>(p.matched_steps) / p.shortest_steps;
    return p;
}

}  // namespace

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Invalid: return "invalid";
        case Verdict::Incorrect: return "incorrect";
        case Verdict::Correct: return "correct";
    }
    return "";
}

std::string_view reason_name(InvalidReason r) {
    switch (r) {
        case InvalidReason::None: return "None";
        case InvalidReason::SyntaxError: return "SyntaxError";
        case InvalidReason::TooLong: return "TooLong";
        case InvalidReason::LengthError: return "LengthError";
        case InvalidReason::DigitError: return "DigitError";
        case InvalidReason::ClueChanged: return "ClueChanged";
        case InvalidReason::FramingError: return "FramingError";
        case InvalidReason::KindError: return "KindError";
        case InvalidReason::BadPrompt: return "BadPrompt";
        case InvalidReason::GeometryError: return "GeometryError";
        case InvalidReason::UnknownToken: return "UnknownToken";
        case InvalidReason::DanglingPath: return "DanglingPath";
        case InvalidReason::PromptHasPath: return "PromptHasPath";
        case InvalidReason::WallMismatch: return "WallMismatch";
    }
    return "";
}

CubeProgress cube_progress(const cube::FaceletCube& c) {
    CubeProgress p;
    for (int f = 0; f < 6; ++f) {
        const auto center = static_cast<cube::Face>(f);
        auto at = [&](int r, int col) { return c[f * 9 + r * 3 + col] == center; };
        bool whole = true;
        for (int k = 0; k < 3; ++k) {
            bool row = at(k, 0) && at(k, 1) && at(k, 2);
            bool column = at(0, k) && at(1, k) && at(2, k);
            p.solved_lines += row + column;
            whole = whole && row;
        }
        p.solved_faces += whole;
    }
    return p;
}

std::string extract_response(std::string_view text) {
    std::size_t mark = text.find(corpus::kResponseToken);
    if (mark != std::string_view::npos) text.remove_prefix(mark + corpus::kResponseToken.size());
    std::size_t end = text.find(corpus::kEndToken);
    if (end != std::string_view::npos) text = text.substr(0, end);
    return std::string(trim(text));
}

SampleVerdict classify_cube(std::string_view initial, std::string_view response,
                            const EvalOptions& opts) {
    cube::FaceletCube start;
    try {
        start = cube::decode_facelets(initial);
    } catch (const cube::CubeError& e) {
        throw EvalError(EvalErrc::BadPrompt, std::string("bad cube prompt: ") + e.what());
    }
    const std::string key(initial);
    const std::string body = extract_response(response);
    if (body.size() > opts.max_response_chars)
        return invalid(Kind::Cube, InvalidReason::TooLong, response, key);

    cube::Formula formula;
    try {
        formula = cube::parse_formula(body);
    } catch (const cube::CubeError&) {
        return invalid(Kind::Cube, InvalidReason::SyntaxError, response, key);
    }
    cube::FaceletCube end = start.apply(formula);
    SampleVerdict v;
    v.kind = Kind::Cube;
    v.verdict = end.is_solved() ? Verdict::Correct : Verdict::Incorrect;
    v.progress = cube_progress(end);
    v.generated_text = std::string(response);
    v.prompt_key = key;
    v.group = std::to_string(formula.size());
    return v;
}

SampleVerdict classify_sudoku(std::string_view puzzle_text, std::string_view response,
                              const EvalOptions& opts) {
    sudoku::SudokuGrid puzzle;
    try {
        puzzle = sudoku::parse_grid81(puzzle_text);
    } catch (const sudoku::SudokuError& e) {
        throw EvalError(EvalErrc::BadPrompt, std::string("bad sudoku prompt: ") + e.what());
    }
    if (!puzzle.consistent())
        throw EvalError(EvalErrc::BadPrompt, "sudoku prompt has repeated digits");
    const std::string key(puzzle_text);

    std::string body;
    for (char c : extract_response(response))
        if (!is_space(c)) body += c;
    sudoku::SudokuGrid answer;
    try {
        answer = sudoku::parse_grid81(body);
    } catch (const sudoku::SudokuError& e) {
        return invalid(Kind::Sudoku,
                       e.code() == sudoku::SudokuErrc::Length ? InvalidReason::LengthError
                                                              : InvalidReason::DigitError,
                       response, key);
    }
    if (opts.require_clues)
        for (int i = 0; i < sudoku::kCells; ++i)
            if (puzzle[i] && answer[i] != puzzle[i])
                return invalid(Kind::Sudoku, InvalidReason::ClueChanged, response, key);

    SampleVerdict v;
    v.kind = Kind::Sudoku;
    SudokuProgress p{answer.filled(), static_cast<int>(sudoku::find_violations(answer).size())};
    v.verdict = (p.filled == sudoku::kCells && p.violations == 0) ? Verdict::Correct
                                                                   : Verdict::Incorrect;
    v.progress = p;
    v.generated_text = std::string(response);
    v.prompt_key = key;
    v.group = std::to_string(puzzle.filled());
    return v;
}

SampleVerdict classify_maze(std::string_view record_text) {
    const std::string_view text = truncate_after_end(record_text);
    corpus::PuzzleRecord record;
    try {
        record = corpus::parse_record(text);
    } catch (const corpus::CorpusError& e) {
        return invalid(Kind::Maze,
                       e.code() == corpus::CorpusErrc::Kind ? InvalidReason::KindError
                                                            : InvalidReason::FramingError,
                       record_text);
    }
    if (record.kind != Kind::Maze) return invalid(Kind::Maze, InvalidReason::KindError, record_text);

    std::optional<maze::ParsedMaze> unsolved, solved;
    try {
        unsolved = maze::parse_maze(record.prompt);
    } catch (const maze::MazeError& e) {
        return invalid(Kind::Maze, maze_reason(e.code()), record_text, record.prompt);
    }
    if (unsolved->path) return invalid(Kind::Maze, InvalidReason::PromptHasPath, record_text, record.prompt);
    try {
        solved = maze::parse_maze(record.response);
    } catch (const maze::MazeError& e) {
        return invalid(Kind::Maze, maze_reason(e.code()), record_text, record.prompt);
    }
    if (!(solved->maze == unsolved->maze))
        return invalid(Kind::Maze, InvalidReason::WallMismatch, record_text, record.prompt);

    const maze::Maze& m = unsolved->maze;
    maze::MazePath path = solved->path.value_or(maze::MazePath{m.entry(), {}});
    const bool correct = std::holds_alternative<maze::PathValid>(maze::validate_path(m, path));

    SampleVerdict v;
    v.kind = Kind::Maze;
    v.verdict = correct ? Verdict::Correct : Verdict::Incorrect;
    v.progress = maze_progress(m, path, correct);
    v.generated_text = std::string(record_text);
    v.prompt_key = record.prompt;
    v.group = std::to_string(m.width()) + "x" + std::to_string(m.height());
    return v;
}

SampleVerdict classify_record(Kind kind, std::string_view record_text, const EvalOptions& opts) {
    if (kind == Kind::Maze) return classify_maze(record_text);

    corpus::PuzzleRecord record;
    try {
        record = corpus::parse_record(truncate_after_end(record_text));
    } catch (const corpus::CorpusError& e) {
        return invalid(kind,
                       e.code() == corpus::CorpusErrc::Kind ? InvalidReason::KindError
                                                            : InvalidReason::FramingError,
                       record_text);
    }
    if (record.kind != kind) return invalid(kind, InvalidReason::KindError, record_text);
    try {
        SampleVerdict v = kind == Kind::Cube ? classify_cube(record.prompt, record.response, opts)
                                             : classify_sudoku(record.prompt, record.response, opts);
        v.generated_text = std::string(record_text);
        return v;
    } catch (const EvalError&) {
        return invalid(kind, InvalidReason::BadPrompt, record_text, record.prompt);
    }
}

void ClassCounts::add(Verdict v) {
    switch (v) {
        case Verdict::Invalid: ++invalid; break;
        case Verdict::Incorrect: ++incorrect; break;
        case Verdict::Correct: ++correct; break;
    }
}

long percent_tenths(std::size_t count, std::size_t total) {
    if (total == 0) return 0;
    // floor((1000 * count + total / 2) / total) with the half case rounded up.
    const unsigned long long num = 2000ULL * count + total;
    return static_cast<long>(num / (2ULL * total));
}

std::string format_tenths(long tenths) {
    return std::to_string(tenths / 10) + "." + std::to_string(tenths % 10);
}

EvalReport aggregate_counts(Kind kind, ClassCounts counts) {
    EvalReport r;
    r.kind = kind;
    r.counts = counts;
    r.total = counts.total();
    if (r.total == 0) throw EvalError(EvalErrc::EmptyInput, "no samples to aggregate");
    r.invalid_tenths = percent_tenths(counts.invalid, r.total);
    r.incorrect_tenths = percent_tenths(counts.incorrect, r.total);
    r.correct_tenths = percent_tenths(counts.correct, r.total);
    return r;
}

EvalReport aggregate(const std::vector<SampleVerdict>& verdicts) {
    if (verdicts.empty()) throw EvalError(EvalErrc::EmptyInput, "no samples to aggregate");
    ClassCounts counts;
    for (const auto& v : verdicts) counts.add(v.verdict);
    EvalReport r = aggregate_counts(verdicts.front().kind, counts);

    switch (r.kind) {
        case Kind::Cube: r.breakdown_label = "response_moves"; break;
        case Kind::Sudoku: r.breakdown_label = "clues"; break;
        case Kind::Maze: r.breakdown_label = "size"; break;
    }
    for (const auto& v : verdicts) {
        r.breakdown[v.group].add(v.verdict);
        if (v.verdict == Verdict::Invalid) ++r.invalid_reasons[std::string(reason_name(v.reason))];
        if (auto* p = std::get_if<CubeProgress>(&v.progress)) {
            ++r.histograms["solved_faces"][p->solved_faces];
            ++r.histograms["solved_lines"][p->solved_lines];
        } else if (auto* p = std::get_if<SudokuProgress>(&v.progress)) {
            ++r.histograms["filled"][p->filled];
            ++r.histograms["violations"][p->violations];
        } else if (auto* p = std::get_if<MazeProgress>(&v.progress)) {
            ++r.histograms["progress_decile"][static_cast<int>(std::floor(p->ratio * 10.0 + 1e-9))];
        }
    }
    return r;
}

nlohmann::json report_to_json(const EvalReport& r) {
    using nlohmann::json;
    auto class_json = [](const ClassCounts& c) {
        return json{{"invalid", c.invalid}, {"incorrect", c.incorrect}, {"correct", c.correct},
                    {"total", c.total()}};
    };
    json j;
    j["kind"] = corpus::kind_name(r.kind);
    j["total"] = r.total;
    j["counts"] = class_json(r.counts);
    j["percentages"] = {{"invalid", r.invalid_tenths / 10.0},
                        {"incorrect", r.incorrect_tenths / 10.0},
                        {"correct", r.correct_tenths / 10.0}};
    j["invalid_reasons"] = r.invalid_reasons;
    json hist = json::object();
    for (const auto& [metric, buckets] : r.histograms) {
        json b = json::object();
        for (const auto& [bucket, n] : buckets) b[std::to_string(bucket)] = n;
        hist[metric] = b;
    }
    j["histograms"] = hist;
    json breakdown = json::object();
    for (const auto& [group, c] : r.breakdown) breakdown[group] = class_json(c);
    j["breakdown"] = {{"by", r.breakdown_label}, {"groups", breakdown}};
    return j;
}

std::string report_to_text(const EvalReport& r) {
    std::ostringstream out;
    auto pad = [](std::string s, std::size_t width) {
        if (s.size() < width) s.insert(0, width - s.size(), ' ');
        return s;
    };
    out << "kind: " << corpus::kind_name(r.kind) << "\n";
    out << "class      " << pad("count", 8) << pad("percent", 9) << "\n";
    auto line = [&](std::string_view name, std::size_t n, long tenths) {
        std::string label(name);
        label.resize(11, ' ');
        out << label << pad(std::to_string(n), 8) << pad(format_tenths(tenths), 9) << "\n";
    };
    line("invalid", r.counts.invalid, r.invalid_tenths);
    line("incorrect", r.counts.incorrect, r.incorrect_tenths);
    line("correct", r.counts.correct, r.correct_tenths);
    out << "total      " << pad(std::to_string(r.total), 8) << "\n";

    if (!r.invalid_reasons.empty()) {
        out << "\ninvalid reasons:\n";
        for (const auto& [reason, n] : r.invalid_reasons) out << "  " << reason << ": " << n << "\n";
    }
    if (!r.breakdown.empty()) {
        out << "\nby " << r.breakdown_label << " (invalid/incorrect/correct):\n";
        for (const auto& [group, c] : r.breakdown)
            out << "  " << group << ": " << c.invalid << "/" << c.incorrect << "/" << c.correct << "\n";
    }
    for (const auto& [metric, buckets] : r.histograms) {
        out << "\n" << metric << ":\n";
        for (const auto& [bucket, n] : buckets) out << "  " << bucket << ": " << n << "\n";
    }
    return out.str();
}

IngestOutcome ingest_line_aligned(Kind kind, std::string_view prompts, std::string_view outputs,
                                  const EvalOptions& opts) {
    if (kind == Kind::Maze)
        throw EvalError(EvalErrc::BadPrompt, "maze outputs are scored as framed records");
    auto prompt_lines = split_lines(prompts);
    auto output_lines = split_lines(outputs);
    if (prompt_lines.size() != output_lines.size())
        throw EvalError(EvalErrc::LineCountMismatch,
                        "prompts file has " + std::to_string(prompt_lines.size()) +
                            " lines but outputs file has " + std::to_string(output_lines.size()));

    struct Slot {
        std::optional<SampleVerdict> verdict;
        std::string error;
    };
    auto slots = parallel_map(prompt_lines.size(), opts.jobs, [&](std::size_t i) {
        Slot s;
        std::string_view prompt = trim(prompt_lines[i]);
        try {
            s.verdict = kind == Kind::Cube ? classify_cube(prompt, output_lines[i], opts)
                                           : classify_sudoku(prompt, output_lines[i], opts);
        } catch (const EvalError& e) {
            s.error = e.what();
        }
        return s;
    });
    IngestOutcome out;
    for (std::size_t i = 0; i < slots.size(); ++i) {
        if (slots[i].verdict)
            out.verdicts.push_back(std::move(*slots[i].verdict));
        else
            out.skipped.push_back({i + 1, std::move(slots[i].error)});
    }
    return out;
}

IngestOutcome ingest_records(Kind kind, std::string_view text, const EvalOptions& opts) {
    auto chunks = corpus::split_at_start_tokens(text);
    IngestOutcome out;
    out.verdicts = parallel_map(chunks.size(), opts.jobs,
                                [&](std::size_t i) { return classify_record(kind, chunks[i], opts); });
    return out;
}

IngestOutcome ingest_external_outputs(Kind kind, const std::filesystem::path& prompts_file,
                                      const std::filesystem::path& outputs_file,
                                      const EvalOptions& opts) {
    return ingest_line_aligned(kind, io::read_file(prompts_file), io::read_file(outputs_file), opts);
}

}  // namespace puzzletext::eval
