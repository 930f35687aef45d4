#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rtmapf {

// 1-based row/column coordinates: x is the row, y the column.
struct Position {
    int x = 0;
    int y = 0;

    auto operator<=>(const Position&) const = default;
};

inline int manhattan(Position a, Position b) {
    return (a.x > b.x ? a.x - b.x : b.x - a.x) + (a.y > b.y ? a.y - b.y : b.y - a.y);
}

inline bool adjacent(Position a, Position b) { return manhattan(a, b) == 1; }

class GridMap {
public:
    GridMap() = default;
    GridMap(int rows, int cols, std::vector<Position> obstacles = {});

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int cell_count() const { return rows_ * cols_; }

    bool in_bounds(Position p) const {
        return p.x >= 1 && p.x <= rows_ && p.y >= 1 && p.y <= cols_;
    }
    bool blocked(Position p) const { return blocked_[index(p)] != 0; }
    bool free(Position p) const { return in_bounds(p) && !blocked(p); }

    // Row-major 0-based cell index; caller guarantees in_bounds.
    int index(Position p) const { return (p.x - 1) * cols_ + (p.y - 1); }
    Position position(int index) const { return {index / cols_ + 1, index % cols_ + 1}; }

    // Sorted, duplicate-free.
    const std::vector<Position>& obstacles() const { return obstacles_; }

    GridMap transposed() const;

    bool operator==(const GridMap& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_ && obstacles_ == other.obstacles_;
    }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Position> obstacles_;
    std::vector<std::uint8_t> blocked_;
};

// Robot id i is placed at placement[i].
using Configuration = std::vector<Position>;

struct Plan {
    // paths[i][t] is robot i's cell at timestep t; every path has horizon()+1 entries.
    std::vector<std::vector<Position>> paths;

    int robot_count() const { return static_cast<int>(paths.size()); }
    int horizon() const { return paths.empty() ? 0 : static_cast<int>(paths.front().size()) - 1; }
    Configuration configuration_at(int t) const;

    bool operator==(const Plan&) const = default;
};

struct Instance {
    GridMap grid;
    Configuration starts;
    Configuration goals;
    bool labeled = true;

    int robot_count() const { return static_cast<int>(starts.size()); }
    bool operator==(const Instance&) const = default;
};

enum class ViolationKind {
    VertexCollision,
    EdgeSwap,
    NonAdjacentMove,
    ObstacleEntry,
    OutOfBounds,
    WrongEndpoint,
};

std::string to_string(ViolationKind kind);

struct ViolationReport {
    ViolationKind kind{};
    int time = 0;
    std::vector<int> robots;

    bool operator==(const ViolationReport&) const = default;
};

std::string describe(const ViolationReport& report);

// Per-robot checks (out-of-bounds, obstacle-entry, non-adjacent-move) are scanned
// first in robot-id order, then vertex collisions, then edge swaps. Among
// collisions the lexicographically smallest robot pair is reported. `time` is
// the index of the destination timestep (1 for a single step).
std::optional<ViolationReport> validate_step(const GridMap& grid, const Configuration& from,
                                             const Configuration& to);

// Checks a configuration on its own: bounds, obstacles, injectivity.
std::optional<ViolationReport> validate_configuration(const GridMap& grid, const Configuration& config);

std::optional<ViolationReport> validate_plan(const Instance& instance, const Plan& plan);

// Last timestep at which some robot moves; trailing waits do not count.
int makespan(const Plan& plan);

// Maximum start-goal Manhattan distance. Throws std::invalid_argument on
// unlabeled instances.
int manhattan_lower_bound(const Instance& instance);

// makespan / lower bound; nullopt when the bound is zero.
std::optional<double> optimality_ratio(const Plan& plan, const Instance& instance);

// Plan with every robot waiting at `config` for `horizon` steps.
Plan constant_plan(const Configuration& config, int horizon = 0);

// Drops trailing all-wait timesteps.
void strip_trailing_waits(Plan& plan);

Instance transposed(const Instance& instance);
Plan transposed(const Plan& plan);
inline Position transposed(Position p) { return {p.y, p.x}; }

}  // namespace rtmapf
