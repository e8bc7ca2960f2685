#include "puzzletext/maze.hpp"

#include <array>
#include <deque>

#include "puzzletext/rng.hpp"

namespace puzzletext::maze {
namespace {

constexpr std::array<Direction, 4> kSearchOrder{Direction::Up, Direction::Right, Direction::Down,
                                                Direction::Left};

std::uint8_t wall_bit(Direction d) {
    switch (d) {
        case Direction::Up: return kNorth;
        case Direction::Right: return kEast;
        case Direction::Down: return kSouth;
        case Direction::Left: return kWest;
    }
    return 0;
}

Direction opposite(Direction d) { return static_cast<Direction>((static_cast<int>(d) + 2) % 4); }

constexpr int kCellWidth = 4;

std::string_view rstrip(std::string_view s) {
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

[[noreturn]] void geometry_error(int line, int col, const std::string& what) {
    throw MazeError(MazeErrc::Geometry,
                    "maze geometry error at line " + std::to_string(line + 1) + ", column " +
                        std::to_string(col + 1) + ": " + what,
                    line, col);
}

}  // namespace

std::string_view arrow_token(Direction d) {
    switch (d) {
        case Direction::Up: return "^^";
        case Direction::Right: return ">>";
        case Direction::Down: return "vv";
        case Direction::Left: return "<<";
    }
    return "";
}

Cell step(Cell c, Direction d) {
    switch (d) {
        case Direction::Up: return {c.x, c.y - 1};
        case Direction::Right: return {c.x + 1, c.y};
        case Direction::Down: return {c.x, c.y + 1};
        case Direction::Left: return {c.x - 1, c.y};
    }
    return c;
}

Maze::Maze(int width, int height) : width_(width), height_(height) {
    if (width < 1 || height < 1 || width > kMaxSide || height > kMaxSide)
        throw MazeError(MazeErrc::Size, "maze size " + std::to_string(width) + "x" +
                                            std::to_string(height) + " out of range");
    walls_.assign(static_cast<std::size_t>(width) * height, kAllWalls);
    walls_.front() &= ~kNorth;
    walls_.back() &= ~kSouth;
}

bool Maze::has_wall(Cell c, Direction d) const { return walls(c) & wall_bit(d); }

bool Maze::open(Cell c, Direction d) const {
    return contains(c) && contains(step(c, d)) && !has_wall(c, d);
}

void Maze::set_passage(Cell c, Direction d, bool is_open) {
    Cell n = step(c, d);
    if (!contains(c) || !contains(n))
        throw MazeError(MazeErrc::Size, "passage leaves the grid");
    auto update = [&](Cell cell, Direction dir) {
        auto& w = walls_[cell.y * width_ + cell.x];
        if (is_open)
            w &= ~wall_bit(dir);
        else
            w |= wall_bit(dir);
    };
    update(c, d);
    update(n, opposite(d));
}

int Maze::open_internal_edges() const {
    int n = 0;
    for (int y = 0; y < height_; ++y)
        for (int x = 0; x < width_; ++x) {
            n += open({x, y}, Direction::Right);
            n += open({x, y}, Direction::Down);
        }
    return n;
}

Maze generate_maze(std::uint64_t seed, int width, int height) {
    if (width < 2 || height < 2 || width > kMaxSide || height > kMaxSide)
        throw MazeError(MazeErrc::Size, "maze size " + std::to_string(width) + "x" +
                                            std::to_string(height) + " out of range");
    Maze m(width, height);
    Rng rng(seed);
    std::vector<bool> visited(static_cast<std::size_t>(width) * height, false);
    auto seen = [&](Cell c) { return visited[c.y * width + c.x]; };

    std::vector<Cell> stack{m.entry()};
    visited[0] = true;
    std::vector<Direction> choices;
    while (!stack.empty()) {
        Cell cur = stack.back();
        choices.clear();
        for (Direction d : kSearchOrder) {
            Cell n = step(cur, d);
            if (m.contains(n) && !seen(n)) choices.push_back(d);
        }
        if (choices.empty()) {
            stack.pop_back();
            continue;
        }
        Direction d = choices[rng.below(choices.size())];
        m.set_passage(cur, d, true);
        Cell n = step(cur, d);
        visited[n.y * width + n.x] = true;
        stack.push_back(n);
    }
    return m;
}

namespace {

MazePath solve_bfs(const Maze& m) {
    const int w = m.width();
    std::vector<int> parent(static_cast<std::size_t>(w) * m.height(), -1);
    std::vector<Direction> via(parent.size(), Direction::Up);
    std::deque<Cell> queue{m.entry()};
    parent[0] = 0;
    while (!queue.empty()) {
        Cell cur = queue.front();
        queue.pop_front();
        if (cur == m.exit()) break;
        for (Direction d : kSearchOrder) {
            if (!m.open(cur, d)) continue;
            Cell n = step(cur, d);
            int id = n.y * w + n.x;
            if (parent[id] >= 0) continue;
            parent[id] = cur.y * w + cur.x;
            via[id] = d;
            queue.push_back(n);
        }
    }
    Cell target = m.exit();
    int id = target.y * w + target.x;
    if (parent[id] < 0) throw MazeError(MazeErrc::Unreachable, "exit is unreachable");

    MazePath path;
    while (id != 0) {
        path.steps.push_back(via[id]);
        id = parent[id];
    }
    std::reverse(path.steps.begin(), path.steps.end());
    return path;
}

MazePath solve_dfs(const Maze& m) {
    struct Frame {
        Cell cell;
        int next;
    };
    const int w = m.width();
    std::vector<bool> visited(static_cast<std::size_t>(w) * m.height(), false);
    std::vector<Frame> stack{{m.entry(), 0}};
    MazePath path;
    visited[0] = true;
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.cell == m.exit()) return path;
        if (top.next == 4) {
            stack.pop_back();
            if (!path.steps.empty()) path.steps.pop_back();
            continue;
        }
        Direction d = kSearchOrder[top.next++];
        if (!m.open(top.cell, d)) continue;
        Cell n = step(top.cell, d);
        if (visited[n.y * w + n.x]) continue;
        visited[n.y * w + n.x] = true;
        path.steps.push_back(d);
        stack.push_back({n, 0});
    }
    throw MazeError(MazeErrc::Unreachable, "exit is unreachable");
}

}  // namespace

MazePath solve_maze(const Maze& m, Strategy strategy) {
    return strategy == Strategy::BFS ? solve_bfs(m) : solve_dfs(m);
}

PathCheck validate_path(const Maze& m, const MazePath& p) {
    if (p.start != m.entry()) return WrongEndpoint{p.start};
    Cell cur = p.start;
    for (std::size_t i = 0; i < p.steps.size(); ++i) {
        if (!m.open(cur, p.steps[i])) return WallCrossed{i};
        cur = step(cur, p.steps[i]);
    }
    if (cur != m.exit()) return WrongEndpoint{cur};
    return PathValid{};
}

std::string render_maze(const Maze& m, const std::optional<MazePath>& path) {
    const int w = m.width(), h = m.height();
    std::vector<std::string_view> tokens(static_cast<std::size_t>(w) * h);
    if (path) {
        if (path->start != m.entry())
            throw MazeError(MazeErrc::InvalidPath, "path does not start at the entry");
        Cell cur = path->start;
        tokens[0] = kEntryToken;
        for (Direction d : path->steps) {
            if (!m.open(cur, d)) throw MazeError(MazeErrc::InvalidPath, "path crosses a wall");
            cur = step(cur, d);
            auto& slot = tokens[cur.y * w + cur.x];
            if (!slot.empty()) throw MazeError(MazeErrc::InvalidPath, "path revisits a cell");
            slot = arrow_token(d);
        }
    }

    std::string out;
    out.reserve(static_cast<std::size_t>(2 * h + 1) * (kCellWidth * w + 2));
    auto wall_row = [&](int y, Direction side) {
        out += '+';
        for (int x = 0; x < w; ++x) {
            out += m.has_wall({x, y}, side) ? "---" : "   ";
            out += '+';
        }
        out += '\n';
    };
    for (int y = 0; y < h; ++y) {
        wall_row(y, Direction::Up);
        out += m.has_wall({0, y}, Direction::Left) ? '|' : ' ';
        for (int x = 0; x < w; ++x) {
            std::string_view t = tokens[y * w + x];
            out += ' ';
            out += t.empty() ? std::string_view("  ") : t;
            out += m.has_wall({x, y}, Direction::Right) ? '|' : ' ';
        }
        out += '\n';
    }
    wall_row(h - 1, Direction::Down);
    return out;
}

ParsedMaze parse_maze(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        lines.push_back(rstrip(text.substr(pos, nl - pos)));
        pos = nl + 1;
    }
    while (!lines.empty() && lines.back().empty()) lines.pop_back();

    const int n = static_cast<int>(lines.size());
    if (n < 3 || n % 2 == 0)
        geometry_error(std::max(n - 1, 0), 0, "expected an odd number (>= 3) of lines");
    const int len = static_cast<int>(lines[0].size());
    if (len < 5 || (len - 1) % kCellWidth != 0)
        geometry_error(0, std::max(len - 1, 0), "wall row length is not 4*width+1");
    const int w = (len - 1) / kCellWidth, h = (n - 1) / 2;
    if (w > kMaxSide || h > kMaxSide) geometry_error(0, 0, "maze too large");

    Maze m(w, h);
    std::vector<std::string_view> tokens(static_cast<std::size_t>(w) * h);

    for (int li = 0; li < n; ++li) {
        std::string_view line = lines[li];
        if (static_cast<int>(line.size()) != len)
            geometry_error(li, std::min(static_cast<int>(line.size()), len),
                           "line length differs from the first line");
        const bool wall_line = li % 2 == 0;
        for (int col = 0; col < len; col += kCellWidth) {
            const char c = line[col];
            const int x = col / kCellWidth;
            if (wall_line) {
                if (c != '+') geometry_error(li, col, "expected '+'");
                continue;
            }
            const int y = li / 2;
            if (c != '|' && c != ' ') geometry_error(li, col, "expected '|' or ' '");
            const bool outer = x == 0 || x == w;
            if (outer && c != '|') geometry_error(li, col, "outer wall is missing");
            if (!outer) m.set_passage({x - 1, y}, Direction::Right, c == ' ');
        }
        for (int x = 0; x < w; ++x) {
            const int col = x * kCellWidth + 1;
            std::string_view seg = line.substr(col, 3);
            if (wall_line) {
                const int y = li / 2;
                bool closed;
                if (seg == "---")
                    closed = true;
                else if (seg == "   ")
                    closed = false;
                else
                    geometry_error(li, col, "expected \"---\" or \"   \"");
                if (y == 0 || y == h) {
                    const bool opening = (y == 0 && x == 0) || (y == h && x == w - 1);
                    if (closed == opening)
                        geometry_error(li, col, opening ? "entry/exit opening is missing"
                                                        : "outer wall is missing");
                } else {
                    m.set_passage({x, y - 1}, Direction::Down, !closed);
                }
                continue;
            }
            if (seg == "   ") continue;
            std::string_view tok = seg.substr(1);
            bool known = seg[0] == ' ' && tok == kEntryToken;
            for (Direction d : kSearchOrder) known = known || (seg[0] == ' ' && tok == arrow_token(d));
            if (!known)
                throw MazeError(MazeErrc::UnknownToken,
                                "unknown cell content '" + std::string(seg) + "' at line " +
                                    std::to_string(li + 1) + ", column " + std::to_string(col + 1),
                                li, col);
            tokens[(li / 2) * w + x] = tok;
        }
    }

    ParsedMaze result{m, std::nullopt};
    int marked = 0;
    std::optional<Cell> start;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            std::string_view t = tokens[y * w + x];
            if (t.empty()) continue;
            ++marked;
            if (t == kEntryToken) {
                if (start) throw MazeError(MazeErrc::DanglingPath, "more than one \"**\" cell");
                start = Cell{x, y};
            }
        }
    if (marked == 0) return result;
    if (!start) throw MazeError(MazeErrc::DanglingPath, "arrows present without a \"**\" cell");

    MazePath path{*start, {}};
    std::vector<bool> visited(tokens.size(), false);
    Cell cur = *start;
    visited[cur.y * w + cur.x] = true;
    int walked = 1;
    for (;;) {
        std::optional<Direction> next;
        for (Direction d : kSearchOrder) {
            Cell nb = step(cur, d);
            if (!m.contains(nb) || visited[nb.y * w + nb.x]) continue;
            if (tokens[nb.y * w + nb.x] != arrow_token(d)) continue;
            if (next) throw MazeError(MazeErrc::DanglingPath, "path forks");
            next = d;
        }
        if (!next) break;
        cur = step(cur, *next);
        visited[cur.y * w + cur.x] = true;
        path.steps.push_back(*next);
        ++walked;
    }
    if (walked != marked)
        throw MazeError(MazeErrc::DanglingPath,
                        std::to_string(marked - walked) + " path token(s) not connected to \"**\"");
    result.path = std::move(path);
    return result;
}

}  // namespace puzzletext::maze
