#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "rtmapf/flow_router.hpp"

using namespace rtmapf;

namespace {

Configuration sample_cells(const GridMap& g, int n, std::mt19937& rng) {
    std::vector<Position> free;
    for (int i = 0; i < g.cell_count(); ++i) {
        if (!g.blocked(g.position(i))) {
            free.push_back(g.position(i));
        }
    }
    std::shuffle(free.begin(), free.end(), rng);
    free.resize(n);
    return free;
}

void expect_valid(const GridMap& g, const Configuration& starts, const FlowResult& r) {
    Instance inst{g, starts, r.endpoints, true};
    auto v = validate_plan(inst, r.plan);
    EXPECT_FALSE(v.has_value()) << (v ? describe(*v) : "");
    EXPECT_EQ(r.plan.horizon(), r.horizon);
}

}  // namespace

TEST(FlowRouter, AdjacentSinkTakesOneStep) {
    GridMap g(1, 2);
    SinkSpec s;
    s.cells = {{1, 2}};
    auto r = min_makespan_unlabeled(g, {{1, 1}}, s);
    EXPECT_EQ(r.horizon, 1);
    EXPECT_EQ(r.endpoints, (Configuration{{1, 2}}));
}

TEST(FlowRouter, AlreadyOnSinksIsZero) {
    GridMap g(3, 3);
    SinkSpec s;
    s.cells = {{1, 1}, {2, 2}};
    auto r = min_makespan_unlabeled(g, {{2, 2}, {1, 1}}, s);
    EXPECT_EQ(r.horizon, 0);
}

TEST(FlowRouter, CorridorForbidsSwaps) {
    // Both robots shift right by two; the back one cannot overtake.
    GridMap g(1, 4);
    SinkSpec s;
    s.cells = {{1, 3}, {1, 4}};
    auto r = min_makespan_unlabeled(g, {{1, 1}, {1, 2}}, s);
    EXPECT_EQ(r.horizon, 2);
    expect_valid(g, {{1, 1}, {1, 2}}, r);
}

TEST(FlowRouter, MatchesBruteForceOnSmallGrids) {
    std::mt19937 rng(7);
    int checked = 0;
    for (int trial = 0; trial < 150; ++trial) {
        const int rows = 1 + static_cast<int>(rng() % 3);
        const int cols = 2 + static_cast<int>(rng() % 3);
        std::vector<Position> obstacles;
        GridMap base(rows, cols);
        if (rng() % 2 && rows * cols > 4) {
            obstacles.push_back(base.position(static_cast<int>(rng() % base.cell_count())));
        }
        GridMap g(rows, cols, obstacles);
        const int free = g.cell_count() - static_cast<int>(g.obstacles().size());
        const int n = 1 + static_cast<int>(rng() % std::min(4, free - 1));
        auto starts = sample_cells(g, n, rng);
        auto goals = sample_cells(g, n, rng);
        int expected = -1;
        try {
            expected = brute_force_unlabeled_optimal(g, starts, goals);
        } catch (const std::runtime_error&) {
        }
        SinkSpec s;
        s.cells = goals;
        if (expected < 0) {
            EXPECT_ANY_THROW(min_makespan_unlabeled(g, starts, s, {false, 20}));
            continue;
        }
        auto r = min_makespan_unlabeled(g, starts, s);
        EXPECT_EQ(r.horizon, expected) << "trial " << trial;
        expect_valid(g, starts, r);
        std::set<Position> ends(r.endpoints.begin(), r.endpoints.end());
        EXPECT_EQ(ends, std::set<Position>(goals.begin(), goals.end()));
        auto rb = min_makespan_unlabeled(g, starts, s, {true, -1});
        EXPECT_EQ(rb.horizon, expected);
        ++checked;
    }
    EXPECT_GT(checked, 100);
}

TEST(FlowRouter, ThirtyByThirtyToCenterSlots) {
    GridMap g(30, 30);
    std::mt19937 rng(3);
    auto starts = sample_cells(g, 300, rng);
    SinkSpec s;
    for (int x = 2; x <= 30; x += 3) {
        for (int y = 1; y <= 30; ++y) {
            s.cells.push_back({x, y});
        }
    }
    auto r = min_makespan_unlabeled(g, starts, s);
    expect_valid(g, starts, r);
    EXPECT_LE(r.horizon, 6);
    for (const auto& e : r.endpoints) {
        EXPECT_EQ(e.x % 3, 2);
    }
}

TEST(FlowRouter, BalancedGroupsRespectCapacity) {
    std::vector<Position> obstacles = {{2, 2}, {2, 5}, {5, 2}, {5, 5}};
    GridMap g(6, 6, obstacles);
    std::mt19937 rng(11);
    std::vector<SinkGroup> groups;
    for (int bx = 0; bx < 2; ++bx) {
        for (int by = 0; by < 2; ++by) {
            SinkGroup grp;
            grp.capacity = 4;
            for (int x = 1; x <= 3; ++x) {
                for (int y = 1; y <= 3; ++y) {
                    Position p{3 * bx + x, 3 * by + y};
                    if (g.free(p)) {
                        grp.cells.push_back(p);
                    }
                }
            }
            groups.push_back(grp);
        }
    }
    for (int trial = 0; trial < 10; ++trial) {
        auto starts = sample_cells(g, 16, rng);
        auto r = balanced_targets(g, starts, groups);
        expect_valid(g, starts, r);
        std::map<int, int> count;
        for (const auto& e : r.endpoints) {
            ++count[((e.x - 1) / 3) * 2 + (e.y - 1) / 3];
        }
        for (const auto& [k, c] : count) {
            EXPECT_EQ(c, 4) << k;
        }
    }
}

TEST(FlowRouter, ShortCapacityThrows) {
    GridMap g(2, 2);
    SinkSpec s;
    s.cells = {{1, 1}};
    EXPECT_THROW(min_makespan_unlabeled(g, {{1, 2}, {2, 2}}, s), std::invalid_argument);
}

TEST(FlowRouter, DumpListsNodesAndArcs) {
    GridMap g(1, 2);
    SinkSpec s;
    s.cells = {{1, 2}};
    const std::string d = dump_time_expanded_graph(g, {{1, 1}}, s, 1);
    int nodes = 0;
    int arcs = 0;
    std::istringstream is(d);
    std::string line;
    while (std::getline(is, line)) {
        nodes += line.rfind("node ", 0) == 0;
        arcs += line.rfind("arc ", 0) == 0;
    }
    // 2 cells x 2 layers x 2, one edge gadget pair, source, sink
    EXPECT_EQ(nodes, 12);
    // 4 in-out, 2 waits, 5 gadget arcs, 1 source arc, 1 sink arc
    EXPECT_EQ(arcs, 13);
}
