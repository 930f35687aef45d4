#include "rtmapf/grid.hpp"

#include <algorithm>
#include <sstream>

namespace rtmapf {

GridMap::GridMap(int rows, int cols, std::vector<Position> obstacles)
    : rows_(rows), cols_(cols), obstacles_(std::move(obstacles)) {
    if (rows < 1 || cols < 1) {
        throw std::invalid_argument("grid dimensions must be positive");
    }
    std::sort(obstacles_.begin(), obstacles_.end());
    if (std::adjacent_find(obstacles_.begin(), obstacles_.end()) != obstacles_.end()) {
        throw std::invalid_argument("duplicate obstacle cell");
    }
    blocked_.assign(static_cast<std::size_t>(rows) * cols, 0);
    for (const auto& p : obstacles_) {
        if (!in_bounds(p)) {
            throw std::invalid_argument("obstacle outside the grid");
        }
        blocked_[index(p)] = 1;
    }
}

GridMap GridMap::transposed() const {
    std::vector<Position> obs;
    obs.reserve(obstacles_.size());
    for (const auto& p : obstacles_) {
        obs.push_back({p.y, p.x});
    }
    return GridMap(cols_, rows_, std::move(obs));
}

Configuration Plan::configuration_at(int t) const {
    Configuration c;
    c.reserve(paths.size());
    for (const auto& path : paths) {
        c.push_back(path[t]);
    }
    return c;
}

std::string to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::VertexCollision: return "vertex-collision";
        case ViolationKind::EdgeSwap: return "edge-swap";
        case ViolationKind::NonAdjacentMove: return "non-adjacent-move";
        case ViolationKind::ObstacleEntry: return "obstacle-entry";
        case ViolationKind::OutOfBounds: return "out-of-bounds";
        case ViolationKind::WrongEndpoint: return "wrong-endpoint";
    }
    return "unknown";
}

std::string describe(const ViolationReport& report) {
    std::ostringstream os;
    os << to_string(report.kind) << " at t=" << report.time << " robots";
    for (int r : report.robots) {
        os << ' ' << r;
    }
    return os.str();
}

namespace {

std::optional<ViolationReport> check_cells(const GridMap& grid, const Configuration& config, int time) {
    for (int i = 0; i < static_cast<int>(config.size()); ++i) {
        if (!grid.in_bounds(config[i])) {
            return ViolationReport{ViolationKind::OutOfBounds, time, {i}};
        }
        if (grid.blocked(config[i])) {
            return ViolationReport{ViolationKind::ObstacleEntry, time, {i}};
        }
    }
    return std::nullopt;
}

// Smallest (a, b) pair of robots sharing a cell. Requires in-bounds config.
std::optional<ViolationReport> check_injective(const GridMap& grid, const Configuration& config, int time) {
    std::vector<int> first(grid.cell_count(), -1);
    std::optional<std::pair<int, int>> best;
    for (int i = 0; i < static_cast<int>(config.size()); ++i) {
        int& slot = first[grid.index(config[i])];
        if (slot < 0) {
            slot = i;
            continue;
        }
        // slot is the lowest id in this cell; i is the lowest colliding partner
        // seen so far for it, so only the first hit per cell matters.
        std::pair<int, int> pair{slot, i};
        if (!best || pair < *best) {
            best = pair;
        }
    }
    if (best) {
        return ViolationReport{ViolationKind::VertexCollision, time, {best->first, best->second}};
    }
    return std::nullopt;
}

}  // namespace

std::optional<ViolationReport> validate_configuration(const GridMap& grid, const Configuration& config) {
    if (auto v = check_cells(grid, config, 0)) {
        return v;
    }
    return check_injective(grid, config, 0);
}

std::optional<ViolationReport> validate_step(const GridMap& grid, const Configuration& from,
                                             const Configuration& to) {
    if (from.size() != to.size()) {
        throw std::invalid_argument("validate_step: configurations differ in robot count");
    }
    const int time = 1;
    const int n = static_cast<int>(to.size());
    for (int i = 0; i < n; ++i) {
        if (!grid.in_bounds(to[i])) {
            return ViolationReport{ViolationKind::OutOfBounds, time, {i}};
        }
        if (grid.blocked(to[i])) {
            return ViolationReport{ViolationKind::ObstacleEntry, time, {i}};
        }
        if (from[i] != to[i] && !adjacent(from[i], to[i])) {
            return ViolationReport{ViolationKind::NonAdjacentMove, time, {i}};
        }
    }
    if (auto v = check_injective(grid, to, time)) {
        return v;
    }
    // Edge swaps: robot i moves a->b while the robot that sat on b moves b->a.
    std::vector<int> occupant(grid.cell_count(), -1);
    for (int i = 0; i < n; ++i) {
        if (grid.in_bounds(from[i])) {
            occupant[grid.index(from[i])] = i;
        }
    }
    for (int i = 0; i < n; ++i) {
        if (from[i] == to[i]) {
            continue;
        }
        const int j = occupant[grid.index(to[i])];
        if (j > i && to[j] == from[i]) {
            return ViolationReport{ViolationKind::EdgeSwap, time, {i, j}};
        }
    }
    return std::nullopt;
}

std::optional<ViolationReport> validate_plan(const Instance& instance, const Plan& plan) {
    const int n = instance.robot_count();
    if (plan.robot_count() != n) {
        throw std::invalid_argument("validate_plan: plan does not cover every robot");
    }
    const int horizon = plan.horizon();
    for (const auto& path : plan.paths) {
        if (static_cast<int>(path.size()) != horizon + 1) {
            throw std::invalid_argument("validate_plan: paths have unequal lengths");
        }
    }
    for (int i = 0; i < n; ++i) {
        if (plan.paths[i][0] != instance.starts[i]) {
            return ViolationReport{ViolationKind::WrongEndpoint, 0, {i}};
        }
    }
    if (auto v = validate_configuration(instance.grid, plan.configuration_at(0))) {
        return v;
    }
    Configuration prev = plan.configuration_at(0);
    for (int t = 1; t <= horizon; ++t) {
        Configuration cur = plan.configuration_at(t);
        if (auto v = validate_step(instance.grid, prev, cur)) {
            v->time = t;
            return v;
        }
        prev = std::move(cur);
    }
    if (instance.labeled) {
        for (int i = 0; i < n; ++i) {
            if (prev[i] != instance.goals[i]) {
                return ViolationReport{ViolationKind::WrongEndpoint, horizon, {i}};
            }
        }
    } else {
        auto final_cells = prev;
        auto goal_cells = instance.goals;
        std::sort(final_cells.begin(), final_cells.end());
        std::sort(goal_cells.begin(), goal_cells.end());
        if (final_cells != goal_cells) {
            for (int i = 0; i < n; ++i) {
                if (!std::binary_search(goal_cells.begin(), goal_cells.end(), prev[i])) {
                    return ViolationReport{ViolationKind::WrongEndpoint, horizon, {i}};
                }
            }
            return ViolationReport{ViolationKind::WrongEndpoint, horizon, {}};
        }
    }
    return std::nullopt;
}

int makespan(const Plan& plan) {
    for (int t = plan.horizon(); t >= 1; --t) {
        for (const auto& path : plan.paths) {
            if (path[t] != path[t - 1]) {
                return t;
            }
        }
    }
    return 0;
}

int manhattan_lower_bound(const Instance& instance) {
    if (!instance.labeled) {
        throw std::invalid_argument("manhattan_lower_bound: instance is unlabeled");
    }
    int bound = 0;
    for (int i = 0; i < instance.robot_count(); ++i) {
        bound = std::max(bound, manhattan(instance.starts[i], instance.goals[i]));
    }
    return bound;
}

std::optional<double> optimality_ratio(const Plan& plan, const Instance& instance) {
    const int bound = manhattan_lower_bound(instance);
    if (bound == 0) {
        return std::nullopt;
    }
    return static_cast<double>(makespan(plan)) / bound;
}

Plan constant_plan(const Configuration& config, int horizon) {
    Plan plan;
    plan.paths.reserve(config.size());
    for (const auto& p : config) {
        plan.paths.emplace_back(static_cast<std::size_t>(horizon) + 1, p);
    }
    return plan;
}

void strip_trailing_waits(Plan& plan) {
    const int keep = makespan(plan);
    for (auto& path : plan.paths) {
        path.resize(static_cast<std::size_t>(keep) + 1);
    }
}

Instance transposed(const Instance& instance) {
    Instance out;
    out.grid = instance.grid.transposed();
    out.labeled = instance.labeled;
    for (const auto& p : instance.starts) {
        out.starts.push_back(transposed(p));
    }
    for (const auto& p : instance.goals) {
        out.goals.push_back(transposed(p));
    }
    return out;
}

Plan transposed(const Plan& plan) {
    Plan out = plan;
    for (auto& path : out.paths) {
        for (auto& p : path) {
            p = transposed(p);
        }
    }
    return out;
}

}  // namespace rtmapf
