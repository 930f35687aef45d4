#include "rtmapf/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>

#include "rtmapf/flow_router.hpp"
#include "rtmapf/matching_opt.hpp"
#include "rtmapf/motion.hpp"
#include "rtmapf/shuffle_motion.hpp"

namespace rtmapf {

namespace {

using Clock = std::chrono::steady_clock;

void poll(const SolverConfig& config) {
    if (config.should_stop && config.should_stop()) {
        throw SolverError(SolverErrorKind::Cancelled, "solve cancelled");
    }
}

void check_instance(const Instance& inst) {
    if (inst.starts.size() != inst.goals.size()) {
        throw SolverError(SolverErrorKind::InvalidInstance, "start and goal counts differ");
    }
    if (auto v = validate_configuration(inst.grid, inst.starts)) {
        throw SolverError(SolverErrorKind::InvalidInstance, "starts: " + describe(*v));
    }
    if (auto v = validate_configuration(inst.grid, inst.goals)) {
        throw SolverError(SolverErrorKind::InvalidInstance, "goals: " + describe(*v));
    }
}

RoundOrder pick_order(const Instance& inst, const SolverConfig& config) {
    if (config.orientation) {
        return *config.orientation;
    }
    return inst.grid.rows() >= inst.grid.cols() ? RoundOrder::RCR : RoundOrder::CRC;
}

void finish(SolutionBundle& b, const Instance& inst, Clock::time_point t0) {
    strip_trailing_waits(b.plan);
    b.stats.makespan = makespan(b.plan);
    b.stats.lower_bound = manhattan_lower_bound(inst);
    b.stats.ratio = optimality_ratio(b.plan, inst);
    b.stats.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
}

// Picks the matchings for the first two rounds and records bottleneck stats.
MatchingSet choose_matchings(const AbstractTable& table, RoundOrder order, const SolverConfig& config,
                             const LineCostModel& model, SolutionBundle& b) {
    const TargetAxis axis = order == RoundOrder::RCR ? TargetAxis::Row : TargetAxis::Column;
    MatchingSet set;
    if (config.matching == MatchingMode::LBA) {
        auto lba = lba_matchings(table, order, model);
        b.stats.stage1_bottleneck = lba.stage1_bottleneck;
        b.stats.lba_fell_back = lba.fell_back;
        set = std::move(lba.matchings);
    } else {
        if (config.matching == MatchingMode::IPExport) {
            b.lp_model = export_lp(build_ip_model(table, order, model));
            if (!config.ip_export_path.empty()) {
                std::ofstream(config.ip_export_path) << b.lp_model;
            }
        }
        set = decompose_matchings(build_color_graph(table, axis));
    }
    b.stats.stage2_bottleneck = matching_set_bottleneck(table, order, model, set);
    return set;
}

// Fills unused capacity with virtual items: free start slots are paired with
// free goal slots, both in row-major cell order.
void add_virtual_items(AbstractTable& table) {
    const auto occ = table.occupancy();
    std::vector<int> goal_occ(occ.size(), 0);
    for (const auto& it : table.items()) {
        ++goal_occ[it.goal_row * table.cols() + it.goal_col];
    }
    std::vector<int> free_start;
    std::vector<int> free_goal;
    for (int r = 0; r < table.rows(); ++r) {
        for (int c = 0; c < table.cols(); ++c) {
            const int cell = r * table.cols() + c;
            for (int k = occ[cell]; k < table.capacity(r, c); ++k) {
                free_start.push_back(cell);
            }
            for (int k = goal_occ[cell]; k < table.capacity(r, c); ++k) {
                free_goal.push_back(cell);
            }
        }
    }
    int label = static_cast<int>(table.items().size());
    for (std::size_t k = 0; k < free_start.size(); ++k) {
        table.add({free_start[k] / table.cols(), free_start[k] % table.cols(), free_goal[k] / table.cols(),
                   free_goal[k] % table.cols(), label++});
    }
}

// ---------------------------------------------------------------- RTM

SolutionBundle rtm_pipeline(const Instance& inst, const SolverConfig& config, RoundOrder order) {
    const auto t0 = Clock::now();
    const GridMap& grid = inst.grid;
    const int n = inst.robot_count();
    SolutionBundle b;
    b.order = order;
    AbstractTable table(grid.rows(), grid.cols(), 1);
    for (int i = 0; i < n; ++i) {
        const auto s = inst.starts[i];
        const auto g = inst.goals[i];
        table.add({s.x - 1, s.y - 1, g.x - 1, g.y - 1, i});
    }
    add_virtual_items(table);
    const int total = static_cast<int>(table.items().size());
    LineCostModel model;
    model.lambda = config.lambda;
    model.virtual_item.assign(total, 0);
    Configuration config_all = inst.starts;
    for (int k = n; k < total; ++k) {
        model.virtual_item[k] = 1;
        config_all.push_back({table.items()[k].row + 1, table.items()[k].col + 1});
    }
    const auto matchings = choose_matchings(table, order, config, model, b);
    const auto sp = plan_labeled_with(table, order, matchings);

    Timeline tl(config_all);
    int* phase[] = {&b.phases.round1, &b.phases.round2, &b.phases.round3};
    for (int r = 0; r < 3; ++r) {
        poll(config);
        const auto& round = sp.rounds[r];
        std::vector<int> target(total);
        for (int k = 0; k < total; ++k) {
            target[k] = round.kind == LineKind::Row ? round.target[k].col + 1 : round.target[k].row + 1;
        }
        const auto script = odd_even_line_shuffle(grid, tl.current(), target, round.kind);
        *phase[r] = script.length();
        tl.run(script);
    }
    b.plan = tl.to_plan(n);
    finish(b, inst, t0);
    return b;
}

// ------------------------------------------------- banded (RTH, RTLM)

struct Span {
    int first = 1;
    int size = 3;
};

// Blocks of the banded pipelines, always in RCR form: round 1 and 3 run
// along row bands, round 2 along column bands.
struct Geometry {
    std::vector<Span> rows;
    std::vector<Span> cols;
    bool obstacle = false;
    bool half = false;  // RTLM: 2x2 blocks, slots on the first line
    std::vector<int> block_row;  // grid row -> block row
    std::vector<int> block_col;

    void index(const GridMap& grid) {
        block_row.assign(grid.rows() + 1, -1);
        block_col.assign(grid.cols() + 1, -1);
        for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
            for (int x = rows[r].first; x < rows[r].first + rows[r].size; ++x) {
                block_row[x] = r;
            }
        }
        for (int c = 0; c < static_cast<int>(cols.size()); ++c) {
            for (int y = cols[c].first; y < cols[c].first + cols[c].size; ++y) {
                block_col[y] = c;
            }
        }
    }

    // Slots parked on before row rounds ("row-centered").
    std::vector<Position> row_slots(int r, int c) const {
        const int x = half ? rows[r].first : rows[r].first + 1;
        std::vector<Position> out;
        for (int y = cols[c].first; y < cols[c].first + cols[c].size; ++y) {
            if (!(obstacle && y == cols[c].first + 1)) {
                out.push_back({x, y});
            }
        }
        return out;
    }
    // Slots parked on before column rounds ("column-centered").
    std::vector<Position> col_slots(int r, int c) const {
        const int y = (half || cols[c].size == 2) ? cols[c].first : cols[c].first + 1;
        std::vector<Position> out;
        for (int x = rows[r].first; x < rows[r].first + rows[r].size; ++x) {
            if (!(obstacle && x == rows[r].first + 1)) {
                out.push_back({x, y});
            }
        }
        return out;
    }
    int capacity(int c) const { return static_cast<int>(row_slots(0, c).size()); }
};

std::vector<Span> split_lines(int length, bool allow_pairs) {
    std::vector<Span> spans;
    int threes = length / 3;
    int twos = 0;
    if (length % 3 == 2) {
        twos = 1;
    } else if (length % 3 == 1) {
        --threes;
        twos = 2;
    }
    if (length % 3 != 0 && !allow_pairs) {
        return {};
    }
    int at = 1;
    for (int k = 0; k < threes; ++k, at += 3) {
        spans.push_back({at, 3});
    }
    for (int k = 0; k < twos; ++k, at += 2) {
        spans.push_back({at, 2});
    }
    return spans;
}

// One shuffle round over all bands of the given kind. `block_of[k]` is robot
// k's target block along the band; `exact`, when non-null, fixes the target
// coordinate instead of letting assign_slots pick a slot.
MotionScript band_round(const GridMap& grid, const Geometry& geo, const Configuration& cur, LineKind kind,
                        const std::vector<int>& block_of, const std::vector<int>* exact) {
    const bool row = kind == LineKind::Row;
    const int bands = static_cast<int>(row ? geo.rows.size() : geo.cols.size());
    const int cells = static_cast<int>(row ? geo.cols.size() : geo.rows.size());
    std::vector<std::vector<int>> members(bands);
    for (int k = 0; k < static_cast<int>(cur.size()); ++k) {
        members[row ? geo.block_row[cur[k].x] : geo.block_col[cur[k].y]].push_back(k);
    }
    MotionScript out;
    for (int b = 0; b < bands; ++b) {
        const auto& robots = members[b];
        if (robots.empty()) {
            continue;
        }
        std::vector<int> origin;
        std::vector<int> cell_of;
        for (int k : robots) {
            origin.push_back(row ? cur[k].y : cur[k].x);
            cell_of.push_back(block_of[k]);
        }
        std::vector<int> target;
        if (exact) {
            for (int k : robots) {
                target.push_back((*exact)[k]);
            }
        } else {
            std::vector<std::vector<int>> slots(cells);
            for (int c = 0; c < cells; ++c) {
                for (Position p : row ? geo.row_slots(b, c) : geo.col_slots(c, b)) {
                    slots[c].push_back(row ? p.y : p.x);
                }
            }
            target = assign_slots(origin, cell_of, slots);
        }
        const Span span = row ? geo.rows[b] : geo.cols[b];
        Band band{kind, span.first, span.size, 1, row ? grid.cols() : grid.rows()};
        const bool merge = geo.half || span.size == 2;
        merge_parallel(out, merge ? linear_merge_shuffle(grid, cur, band, robots, target)
                                  : highway_shuffle(grid, cur, band, robots, target));
    }
    return out;
}

MotionScript recenter(const GridMap& grid, const Geometry& geo, const Configuration& cur, bool to_columns) {
    std::vector<CellBlock> blocks;
    for (int r = 0; r < static_cast<int>(geo.rows.size()); ++r) {
        for (int c = 0; c < static_cast<int>(geo.cols.size()); ++c) {
            blocks.push_back({geo.rows[r].first, geo.cols[c].first, geo.rows[r].size, geo.cols[c].size,
                              to_columns ? geo.col_slots(r, c) : geo.row_slots(r, c)});
        }
    }
    return center_within_cells(grid, cur, blocks);
}

SolutionBundle banded_pipeline(const Instance& inst, const SolverConfig& config, const Geometry& geo) {
    const auto t0 = Clock::now();
    const GridMap& grid = inst.grid;
    const int n = inst.robot_count();
    SolutionBundle b;
    b.order = RoundOrder::RCR;
    const int R = static_cast<int>(geo.rows.size());
    const int K = static_cast<int>(geo.cols.size());

    SinkSpec sinks;
    for (int r = 0; r < R; ++r) {
        for (int c = 0; c < K; ++c) {
            for (Position p : geo.row_slots(r, c)) {
                sinks.cells.push_back(p);
            }
        }
    }
    poll(config);
    const FlowResult in = min_makespan_unlabeled(grid, inst.starts, sinks);
    poll(config);
    const FlowResult out = min_makespan_unlabeled(grid, inst.goals, sinks);
    poll(config);

    std::vector<int> caps(K);
    for (int c = 0; c < K; ++c) {
        caps[c] = geo.capacity(c);
    }
    AbstractTable table(R, K, caps);
    for (int i = 0; i < n; ++i) {
        const Position s = in.endpoints[i];
        const Position e = out.endpoints[i];
        table.add({geo.block_row[s.x], geo.block_col[s.y], geo.block_row[e.x], geo.block_col[e.y], i});
    }
    add_virtual_items(table);
    LineCostModel model;
    model.lambda = config.lambda;
    model.virtual_item.assign(table.items().size(), 0);
    std::fill(model.virtual_item.begin() + n, model.virtual_item.end(), 1);
    for (int c = 0; c < K; ++c) {
        model.line_coord.push_back(geo.cols[c].first + (geo.cols[c].size - 1) / 2.0);
    }
    const auto matchings = choose_matchings(table, RoundOrder::RCR, config, model, b);
    const auto sp = plan_labeled_with(table, RoundOrder::RCR, matchings);

    Timeline tl(inst.starts);
    for (int t = 1; t <= in.horizon; ++t) {
        tl.push(in.plan.configuration_at(t));
    }
    b.phases.anon_in = in.horizon;
    poll(config);

    std::vector<int> block_of(n);
    for (int k = 0; k < n; ++k) {
        block_of[k] = sp.rounds[0].target[k].col;
    }
    auto script = band_round(grid, geo, tl.current(), LineKind::Row, block_of, nullptr);
    b.phases.round1 = script.length();
    tl.run(script);
    poll(config);

    script = recenter(grid, geo, tl.current(), true);
    b.phases.round2 = script.length();
    tl.run(script);
    for (int k = 0; k < n; ++k) {
        block_of[k] = sp.rounds[1].target[k].row;
    }
    script = band_round(grid, geo, tl.current(), LineKind::Column, block_of, nullptr);
    b.phases.round2 += script.length();
    tl.run(script);
    poll(config);

    script = recenter(grid, geo, tl.current(), false);
    b.phases.round3 = script.length();
    tl.run(script);
    std::vector<int> exact(n);
    for (int k = 0; k < n; ++k) {
        block_of[k] = sp.rounds[2].target[k].col;
        exact[k] = out.endpoints[k].y;
    }
    script = band_round(grid, geo, tl.current(), LineKind::Row, block_of, &exact);
    b.phases.round3 += script.length();
    tl.run(script);

    for (int t = out.horizon - 1; t >= 0; --t) {
        tl.push(out.plan.configuration_at(t));
    }
    b.phases.anon_out = out.horizon;
    b.plan = tl.to_plan(n);
    finish(b, inst, t0);
    return b;
}

bool is_identity(const Instance& inst) { return inst.starts == inst.goals; }

SolutionBundle identity_bundle(const Instance& inst, RoundOrder order) {
    SolutionBundle b;
    b.order = order;
    b.plan = constant_plan(inst.starts);
    b.stats.lower_bound = 0;
    return b;
}

// Runs `rcr` on the transposed instance for CRC and maps the plan back.
template <class F>
SolutionBundle oriented(const Instance& inst, RoundOrder order, F rcr) {
    if (order == RoundOrder::RCR) {
        return rcr(inst);
    }
    SolutionBundle b = rcr(transposed(inst));
    b.plan = transposed(b.plan);
    b.order = RoundOrder::CRC;
    return b;
}

}  // namespace

SolutionBundle solve_rtm(const Instance& inst, const SolverConfig& config) {
    check_instance(inst);
    const GridMap& g = inst.grid;
    if (!g.obstacles().empty()) {
        throw SolverError(SolverErrorKind::ObstacleMismatch, "RTM needs an obstacle-free grid");
    }
    for (int d : {g.rows(), g.cols()}) {
        if (d < 3 || d == 5) {
            throw SolverError(SolverErrorKind::UnsupportedDimension,
                              "RTM needs both dimensions >= 3 and not 5 (got " + std::to_string(g.rows()) + "x" +
                                  std::to_string(g.cols()) + ")");
        }
    }
    const RoundOrder order = pick_order(inst, config);
    if (is_identity(inst)) {
        return identity_bundle(inst, order);
    }
    return rtm_pipeline(inst, config, order);
}

SolutionBundle solve_rth(const Instance& inst, const SolverConfig& config) {
    check_instance(inst);
    const RoundOrder order = pick_order(inst, config);
    const GridMap& g0 = inst.grid;
    // Rows of the RCR-form grid carry the 3-high bands.
    const int band_dim = order == RoundOrder::RCR ? g0.rows() : g0.cols();
    const int other_dim = order == RoundOrder::RCR ? g0.cols() : g0.rows();
    if (band_dim % 3 != 0 || other_dim < 2 || (config.obstacle_mode && other_dim % 3 != 0)) {
        throw SolverError(SolverErrorKind::UnsupportedDimension,
                          "RTH needs a multiple of 3 along the round-1 bands" +
                              std::string(config.obstacle_mode ? " and along the other axis" : ""));
    }
    if (config.obstacle_mode) {
        std::vector<Position> want;
        for (int x = 2; x <= g0.rows(); x += 3) {
            for (int y = 2; y <= g0.cols(); y += 3) {
                want.push_back({x, y});
            }
        }
        if (g0.obstacles() != want) {
            throw SolverError(SolverErrorKind::ObstacleMismatch, "obstacle mode needs obstacles exactly at block centers");
        }
    } else if (!g0.obstacles().empty()) {
        throw SolverError(SolverErrorKind::ObstacleMismatch, "RTH without obstacle mode needs an obstacle-free grid");
    }
    const long long cap = config.obstacle_mode ? 2LL * g0.rows() * g0.cols() / 9 : 1LL * g0.rows() * g0.cols() / 3;
    if (inst.robot_count() > cap) {
        throw SolverError(SolverErrorKind::DensityExceeded,
                          "RTH supports at most " + std::to_string(cap) + " robots on this grid");
    }
    if (is_identity(inst)) {
        return identity_bundle(inst, order);
    }
    return oriented(inst, order, [&](const Instance& rcr) {
        Geometry geo;
        geo.obstacle = config.obstacle_mode;
        geo.rows = split_lines(rcr.grid.rows(), false);
        geo.cols = split_lines(rcr.grid.cols(), true);
        geo.index(rcr.grid);
        return banded_pipeline(rcr, config, geo);
    });
}

SolutionBundle solve_rtlm(const Instance& inst, const SolverConfig& config) {
    check_instance(inst);
    const GridMap& g = inst.grid;
    if (g.rows() % 2 != 0 || g.cols() % 2 != 0) {
        throw SolverError(SolverErrorKind::UnsupportedDimension, "RTLM needs even dimensions");
    }
    if (!g.obstacles().empty()) {
        throw SolverError(SolverErrorKind::ObstacleMismatch, "RTLM needs an obstacle-free grid");
    }
    if (inst.robot_count() > g.rows() * g.cols() / 2) {
        throw SolverError(SolverErrorKind::DensityExceeded, "RTLM supports at most half density");
    }
    const RoundOrder order = pick_order(inst, config);
    if (is_identity(inst)) {
        return identity_bundle(inst, order);
    }
    return oriented(inst, order, [&](const Instance& rcr) {
        Geometry geo;
        geo.half = true;
        for (int x = 1; x <= rcr.grid.rows(); x += 2) {
            geo.rows.push_back({x, 2});
        }
        for (int y = 1; y <= rcr.grid.cols(); y += 2) {
            geo.cols.push_back({y, 2});
        }
        geo.index(rcr.grid);
        return banded_pipeline(rcr, config, geo);
    });
}

SolutionBundle solve(const Instance& instance, const SolverConfig& config) {
    if (config.obstacle_mode && config.algorithm != Algorithm::RTH) {
        throw SolverError(SolverErrorKind::InvalidInstance, "obstacle mode is only available with RTH");
    }
    switch (config.algorithm) {
        case Algorithm::RTM:
            return solve_rtm(instance, config);
        case Algorithm::RTLM:
            return solve_rtlm(instance, config);
        case Algorithm::RTH:
            break;
    }
    return solve_rth(instance, config);
}

}  // namespace rtmapf
