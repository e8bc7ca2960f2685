#pragma once

// Training records in the <|startoftext|>[WP] ... [RESPONSE] ... <|endoftext|>
// framing, corpus builders for the three puzzle kinds, ingestion of the
// two-column quizzes,solutions Sudoku CSVs, and dedup + train/test split.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "puzzletext/error.hpp"
#include "json.hpp"

namespace puzzletext::corpus {

enum class Kind { Cube, Sudoku, Maze };

std::string_view kind_name(Kind k);
Kind kind_from_name(std::string_view name);

inline constexpr std::string_view kStartToken = "<|startoftext|>";
inline constexpr std::string_view kEndToken = "<|endoftext|>";
inline constexpr std::string_view kPromptToken = "[WP]";
inline constexpr std::string_view kResponseToken = "[RESPONSE]";

struct PuzzleRecord {
    Kind kind;
    std::string prompt;
    std::string response;
    // Generation parameters; written to the metadata sidecar, not to the
    // record text.
    nlohmann::json meta = nlohmann::json::object();

    // Dedup key. For every kind this is the prompt: the cube facelet string,
    // the 81-digit puzzle, or the unsolved maze render.
    const std::string& canonical_key() const { return prompt; }
};

enum class CorpusErrc { Framing, Kind, Divisibility, Size, File, LineCountMismatch };

using CorpusError = CodedError<CorpusErrc>;

// Cube and Sudoku: one line, no trailing newline:
//   <|startoftext|>[WP] <prompt> [RESPONSE] <response> <|endoftext|>
// Maze: framing tokens and delimiters on their own lines, renders verbatim:
//   <|startoftext|>\n[WP]\n<prompt>[RESPONSE]\n<response><|endoftext|>
std::string serialize_record(const PuzzleRecord& r);

// Inverse of serialize_record. Single-line records are parsed leniently:
// whitespace around the delimiters may vary, and whitespace inside a Sudoku
// prompt or response is dropped (so wrapped 81-digit strings parse). The
// kind is inferred from the prompt shape. Throws Framing or Kind errors.
PuzzleRecord parse_record(std::string_view text);

// Corpus file text: every record followed by '\n'.
std::string serialize_corpus(const std::vector<PuzzleRecord>& records);
std::vector<PuzzleRecord> parse_corpus(std::string_view text);

// Splits text into chunks that each begin at a <|startoftext|> token. Text
// before the first token is dropped. Used to score free-running samples.
std::vector<std::string> split_at_start_tokens(std::string_view text);

// One JSON object per line: {"index", "kind", ...meta}.
std::string metadata_jsonl(const std::vector<PuzzleRecord>& records);

// Worker count for record construction; 1 runs the serial reference loop.
struct BuildOptions {
    int jobs = 1;
};

// total/max_scramble records for each scramble length 1..max_scramble, in
// length-major order. Every record i uses seed mix_seed(seed, i).
std::vector<PuzzleRecord> build_cube_corpus(std::uint64_t seed, int total, int max_scramble,
                                            BuildOptions opts = {});

std::vector<PuzzleRecord> build_sudoku_corpus(std::uint64_t seed, int total, int min_clues,
                                              int max_clues, bool require_unique = true,
                                              BuildOptions opts = {});

inline constexpr int kMaxMazeSide = 6;

// Sizes are cycled record by record; each must lie in 2..=6 per side.
std::vector<PuzzleRecord> build_maze_corpus(std::uint64_t seed, int total,
                                            const std::vector<std::pair<int, int>>& sizes,
                                            BuildOptions opts = {});

struct RowError {
    std::size_t line;  // 1-based, header is line 1
    std::string reason;
};

struct IngestResult {
    std::vector<PuzzleRecord> records;
    std::vector<RowError> errors;
};

// Header row then `quizzes,solutions` rows. Bad rows are collected in
// `errors`; reasons are LengthError, DigitError, ColumnCount, Inconsistent,
// Incomplete or ClueMismatch.
IngestResult ingest_sudoku_csv(std::string_view csv_text);
IngestResult ingest_sudoku_csv_file(const std::filesystem::path& path);

struct CorpusSplit {
    std::vector<PuzzleRecord> train;
    std::vector<PuzzleRecord> test;
    std::uint64_t seed;
};

// First occurrence of each canonical key wins; the survivors are shuffled
// and the first round(test_fraction * n) go to test.
CorpusSplit dedup_and_split(const std::vector<PuzzleRecord>& records, std::uint64_t seed,
                            double test_fraction);

std::vector<PuzzleRecord> dedup(const std::vector<PuzzleRecord>& records);

}  // namespace puzzletext::corpus
