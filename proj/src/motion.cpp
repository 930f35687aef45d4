#include "rtmapf/motion.hpp"

#include <stdexcept>

namespace rtmapf {

Dir direction_between(Position from, Position to) {
    if (to.x == from.x - 1 && to.y == from.y) {
        return Dir::Up;
    }
    if (to.x == from.x + 1 && to.y == from.y) {
        return Dir::Down;
    }
    if (to.x == from.x && to.y == from.y - 1) {
        return Dir::Left;
    }
    if (to.x == from.x && to.y == from.y + 1) {
        return Dir::Right;
    }
    throw std::invalid_argument("direction_between: cells are not adjacent");
}

Dir transposed(Dir d) {
    switch (d) {
        case Dir::Up:
            return Dir::Left;
        case Dir::Down:
            return Dir::Right;
        case Dir::Left:
            return Dir::Up;
        case Dir::Right:
            break;
    }
    return Dir::Down;
}

void merge_parallel(MotionScript& into, const MotionScript& other) {
    if (other.steps.size() > into.steps.size()) {
        into.steps.resize(other.steps.size());
    }
    for (std::size_t t = 0; t < other.steps.size(); ++t) {
        into.steps[t].insert(into.steps[t].end(), other.steps[t].begin(), other.steps[t].end());
    }
}

void append(MotionScript& into, const MotionScript& other) {
    into.steps.insert(into.steps.end(), other.steps.begin(), other.steps.end());
}

Configuration apply_step(const Configuration& config, const MotionStep& s) {
    Configuration next = config;
    for (const auto& m : s) {
        next[m.robot] = step(config[m.robot], m.dir);
    }
    return next;
}

Configuration apply_script(const Configuration& config, const MotionScript& script) {
    Configuration cur = config;
    for (const auto& s : script.steps) {
        cur = apply_step(cur, s);
    }
    return cur;
}

std::optional<ViolationReport> validate_script(const GridMap& grid, const Configuration& start,
                                               const MotionScript& script) {
    Configuration cur = start;
    for (int t = 0; t < script.length(); ++t) {
        Configuration next = apply_step(cur, script.steps[t]);
        if (auto v = validate_step(grid, cur, next)) {
            v->time = t + 1;
            return v;
        }
        cur = std::move(next);
    }
    return std::nullopt;
}

void Timeline::run(const MotionScript& script) {
    for (const auto& s : script.steps) {
        history_.push_back(apply_step(history_.back(), s));
    }
}

Plan Timeline::to_plan(int real_count) const {
    Plan plan;
    plan.paths.assign(real_count, {});
    for (auto& path : plan.paths) {
        path.reserve(history_.size());
    }
    for (const auto& config : history_) {
        for (int i = 0; i < real_count; ++i) {
            plan.paths[i].push_back(config[i]);
        }
    }
    return plan;
}

}  // namespace rtmapf
