#pragma once

// Rectangular mazes with per-cell wall masks and the ASCII codec used in the
// training records: 4 characters per cell, '+' at corners, '-' and '|' for
// walls, "**" in the entry cell and one arrow token in every cell the
// solution path enters.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "puzzletext/error.hpp"

namespace puzzletext::maze {

enum Wall : std::uint8_t { kNorth = 1, kEast = 2, kSouth = 4, kWest = 8 };
inline constexpr std::uint8_t kAllWalls = kNorth | kEast | kSouth | kWest;

enum class Direction : std::uint8_t { Up, Right, Down, Left };

// Two-character arrow token written into the cell a step enters.
std::string_view arrow_token(Direction d);
inline constexpr std::string_view kEntryToken = "**";

struct Cell {
    int x = 0;
    int y = 0;
    friend bool operator==(const Cell&, const Cell&) = default;
};

Cell step(Cell c, Direction d);

enum class MazeErrc { Size, Unreachable, InvalidPath, Geometry, UnknownToken, DanglingPath };

// Codec errors carry the 0-based line and column of the offending text;
// other errors report -1 for both.
class MazeError : public CodedError<MazeErrc> {
public:
    MazeError(MazeErrc code, std::string message, int line = -1, int column = -1)
        : CodedError(code, std::move(message), line), line_(line), column_(column) {}
    int line() const noexcept { return line_; }
    int column() const noexcept { return column_; }

private:
    int line_;
    int column_;
};

// Walls of a width x height grid. Entry is (0, 0) with an opening in the
// outer north wall; exit is (width-1, height-1) with an opening in the outer
// south wall.
class Maze {
public:
    // Fully walled grid with entry and exit openings.
    Maze(int width, int height);

    int width() const { return width_; }
    int height() const { return height_; }
    Cell entry() const { return {0, 0}; }
    Cell exit() const { return {width_ - 1, height_ - 1}; }

    bool contains(Cell c) const { return c.x >= 0 && c.y >= 0 && c.x < width_ && c.y < height_; }
    std::uint8_t walls(Cell c) const { return walls_[c.y * width_ + c.x]; }
    bool has_wall(Cell c, Direction d) const;
    // Whether one can step from c in direction d: false at the outer
    // boundary, including the entry/exit openings.
    bool open(Cell c, Direction d) const;

    // Opens or closes the wall between c and its neighbour in direction d,
    // updating both cells. The neighbour must be inside the grid.
    void set_passage(Cell c, Direction d, bool open);

    int open_internal_edges() const;

    friend bool operator==(const Maze&, const Maze&) = default;

private:
    int width_;
    int height_;
    std::vector<std::uint8_t> walls_;
};

struct MazePath {
    Cell start{0, 0};
    std::vector<Direction> steps;
    friend bool operator==(const MazePath&, const MazePath&) = default;
};

inline constexpr int kMaxSide = 64;

// Recursive backtracker from the entry cell; width, height in 2..=kMaxSide.
Maze generate_maze(std::uint64_t seed, int width, int height);

enum class Strategy { BFS, DFS };

// Neighbours tried in N, E, S, W order. Throws MazeError{Unreachable}.
MazePath solve_maze(const Maze& m, Strategy strategy = Strategy::BFS);

struct PathValid {
    friend bool operator==(const PathValid&, const PathValid&) = default;
};
struct WallCrossed {
    std::size_t step;
    friend bool operator==(const WallCrossed&, const WallCrossed&) = default;
};
struct WrongEndpoint {
    Cell cell;
    friend bool operator==(const WrongEndpoint&, const WrongEndpoint&) = default;
};
using PathCheck = std::variant<PathValid, WallCrossed, WrongEndpoint>;

// A path starting anywhere but the entry is WrongEndpoint(start). Stepping
// off the grid counts as crossing a wall.
PathCheck validate_path(const Maze& m, const MazePath& p);

// 2*height+1 lines of 4*width+1 characters, each terminated by '\n'.
// A path need not reach the exit, but it must start at the entry, stay
// inside passages and never revisit a cell; otherwise MazeError{InvalidPath}.
std::string render_maze(const Maze& m, const std::optional<MazePath>& path = std::nullopt);

struct ParsedMaze {
    Maze maze;
    std::optional<MazePath> path;
};

// Inverse of render_maze. Trailing whitespace on each line and trailing
// blank lines are ignored. Requires the entry and exit openings and no other
// gaps in the outer wall. The path is recovered by walking from "**" to the
// neighbour whose token is the arrow pointing into it; arrows that the walk
// does not reach, or a fork, raise DanglingPath. Walls are not checked
// against the path here; use validate_path.
ParsedMaze parse_maze(std::string_view text);

}  // namespace puzzletext::maze
