#pragma once

// Scoring of generated puzzle text. Every sample is Invalid (does not parse
// as the puzzle's notation), Incorrect (parses but does not solve) or
// Correct, with a kind-specific partial-progress measure.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "puzzletext/corpus.hpp"
#include "puzzletext/cube.hpp"
#include "puzzletext/error.hpp"
#include "json.hpp"

namespace puzzletext::eval {

using corpus::Kind;

enum class Verdict { Invalid, Incorrect, Correct };
std::string_view verdict_name(Verdict v);

enum class InvalidReason {
    None,
    SyntaxError,
    TooLong,
    LengthError,
    DigitError,
    ClueChanged,
    FramingError,
    KindError,
    BadPrompt,
    GeometryError,
    UnknownToken,
    DanglingPath,
    PromptHasPath,
    WallMismatch,
};
std::string_view reason_name(InvalidReason r);

struct CubeProgress {
    int solved_faces = 0;  // 0..6
    int solved_lines = 0;  // uniform rows plus uniform columns, 0..36
    friend bool operator==(const CubeProgress&, const CubeProgress&) = default;
};

struct SudokuProgress {
    int filled = 0;
    int violations = 0;
    friend bool operator==(const SudokuProgress&, const SudokuProgress&) = default;
};

struct MazeProgress {
    int matched_steps = 0;   // leading steps that follow the shortest path
    int shortest_steps = 0;  // 0 if the exit is unreachable
    double ratio = 0.0;
    friend bool operator==(const MazeProgress&, const MazeProgress&) = default;
};

using Progress = std::variant<std::monostate, CubeProgress, SudokuProgress, MazeProgress>;

struct SampleVerdict {
    Kind kind = Kind::Cube;
    Verdict verdict = Verdict::Invalid;
    InvalidReason reason = InvalidReason::None;
    Progress progress;
    std::string generated_text;
    std::string prompt_key;
    // Breakdown bucket: response move count (cube), clue count (sudoku),
    // WxH (maze); "-" when unknown.
    std::string group = "-";
};

enum class EvalErrc { BadPrompt, EmptyInput, LineCountMismatch };

using EvalError = CodedError<EvalErrc>;

inline constexpr std::size_t kDefaultResponseBudget = 1024;

struct EvalOptions {
    // Longer cube responses are Invalid(TooLong).
    std::size_t max_response_chars = kDefaultResponseBudget;
    // Sudoku responses that overwrite a clue are Invalid(ClueChanged).
    bool require_clues = true;
    int jobs = 1;
};

CubeProgress cube_progress(const cube::FaceletCube& c);

// If text contains [RESPONSE], keeps only what follows it; cuts at
// <|endoftext|>; trims surrounding whitespace.
std::string extract_response(std::string_view text);

// Throws EvalError{BadPrompt} if `initial` is not a valid facelet string.
SampleVerdict classify_cube(std::string_view initial, std::string_view response,
                            const EvalOptions& opts = {});

// Throws EvalError{BadPrompt} if `puzzle` does not parse or is inconsistent.
// Whitespace inside the response is ignored.
SampleVerdict classify_sudoku(std::string_view puzzle, std::string_view response,
                              const EvalOptions& opts = {});

// Scores a whole framed maze record (unsolved half and solved half); never
// throws on malformed input.
SampleVerdict classify_maze(std::string_view record_text);

// Scores one free-running sample of any kind: the prompt is taken from the
// record itself and a malformed prompt is Invalid(BadPrompt).
SampleVerdict classify_record(Kind kind, std::string_view record_text, const EvalOptions& opts = {});

struct ClassCounts {
    std::size_t invalid = 0;
    std::size_t incorrect = 0;
    std::size_t correct = 0;
    std::size_t total() const { return invalid + incorrect + correct; }
    void add(Verdict v);
};

struct EvalReport {
    Kind kind = Kind::Cube;
    ClassCounts counts;
    std::size_t total = 0;
    // Percentages in tenths of a percent, rounded half away from zero.
    long invalid_tenths = 0;
    long incorrect_tenths = 0;
    long correct_tenths = 0;
    std::map<std::string, std::size_t> invalid_reasons;
    // metric -> bucket -> count
    std::map<std::string, std::map<int, std::size_t>> histograms;
    std::string breakdown_label;
    std::map<std::string, ClassCounts> breakdown;
};

// round(1000 * count / total) / 10, computed exactly.
long percent_tenths(std::size_t count, std::size_t total);
std::string format_tenths(long tenths);

// Throws EvalError{EmptyInput} for no verdicts. All verdicts are assumed to
// share the first one's kind.
EvalReport aggregate(const std::vector<SampleVerdict>& verdicts);

// Report from raw class counts only (no histograms or breakdown).
EvalReport aggregate_counts(Kind kind, ClassCounts counts);

nlohmann::json report_to_json(const EvalReport& r);
std::string report_to_text(const EvalReport& r);

struct SkippedLine {
    std::size_t line;  // 1-based
    std::string message;
};

struct IngestOutcome {
    std::vector<SampleVerdict> verdicts;
    std::vector<SkippedLine> skipped;
};

// Line i of `prompts` (a canonical state string) pairs with line i of
// `outputs` (raw model text). Cube and Sudoku only. Lines with a bad prompt
// are skipped and reported. Throws EvalError{LineCountMismatch}.
IngestOutcome ingest_line_aligned(Kind kind, std::string_view prompts, std::string_view outputs,
                                  const EvalOptions& opts = {});

// Splits `text` at every <|startoftext|> and scores each chunk with
// classify_record.
IngestOutcome ingest_records(Kind kind, std::string_view text, const EvalOptions& opts = {});

IngestOutcome ingest_external_outputs(Kind kind, const std::filesystem::path& prompts_file,
                                      const std::filesystem::path& outputs_file,
                                      const EvalOptions& opts = {});

}  // namespace puzzletext::eval
