#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rtmapf/grid.hpp"

namespace rtmapf {

// Up decreases the row (x), Left decreases the column (y).
enum class Dir : std::uint8_t { Up, Down, Left, Right };

inline Position step(Position p, Dir d) {
    switch (d) {
        case Dir::Up:
            return {p.x - 1, p.y};
        case Dir::Down:
            return {p.x + 1, p.y};
        case Dir::Left:
            return {p.x, p.y - 1};
        case Dir::Right:
            break;
    }
    return {p.x, p.y + 1};
}

Dir direction_between(Position from, Position to);
Dir transposed(Dir d);

struct Move {
    int robot = 0;
    Dir dir = Dir::Up;

    bool operator==(const Move&) const = default;
};

using MotionStep = std::vector<Move>;

// Synchronized steps; robots absent from a step wait.
struct MotionScript {
    std::vector<MotionStep> steps;

    int length() const { return static_cast<int>(steps.size()); }
    bool empty() const { return steps.empty(); }
};

// Step-wise union of scripts acting on disjoint robots.
void merge_parallel(MotionScript& into, const MotionScript& other);
void append(MotionScript& into, const MotionScript& other);

Configuration apply_step(const Configuration& config, const MotionStep& step);
Configuration apply_script(const Configuration& config, const MotionScript& script);

// Replays the script, checking every step with validate_step; report times
// are 1-based step indices within the script.
std::optional<ViolationReport> validate_script(const GridMap& grid, const Configuration& start,
                                               const MotionScript& script);

// Records configurations while scripts are applied, then emits a Plan for
// the first `real_count` robots (higher ids are virtual).
class Timeline {
public:
    explicit Timeline(Configuration start) : history_{std::move(start)} {}

    const Configuration& current() const { return history_.back(); }
    int time() const { return static_cast<int>(history_.size()) - 1; }

    void run(const MotionScript& script);
    // Appends explicit configurations (e.g. decoded flow paths).
    void push(Configuration next) { history_.push_back(std::move(next)); }

    Plan to_plan(int real_count) const;

private:
    std::vector<Configuration> history_;
};

}  // namespace rtmapf
