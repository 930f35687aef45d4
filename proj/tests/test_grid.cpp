#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "rtmapf/grid.hpp"
#include "rtmapf/io.hpp"

using namespace rtmapf;

namespace {

// Boundary 6-cycle of a full 2x3 grid, clockwise.
const std::vector<Position> kRing = {{1, 1}, {1, 2}, {1, 3}, {2, 3}, {2, 2}, {2, 1}};

Configuration rotate(const Configuration& c) {
    Configuration out(c.size());
    for (std::size_t i = 0; i < c.size(); ++i) {
        auto it = std::find(kRing.begin(), kRing.end(), c[i]);
        out[i] = kRing[(it - kRing.begin() + 1) % kRing.size()];
    }
    return out;
}

}  // namespace

TEST(ValidateStep, FullRingRotationIsLegal) {
    GridMap g(2, 3);
    Configuration from = kRing;
    EXPECT_FALSE(validate_step(g, from, rotate(from)).has_value());
}

TEST(ValidateStep, SwapIsRejected) {
    GridMap g(1, 2);
    auto v = validate_step(g, {{1, 1}, {1, 2}}, {{1, 2}, {1, 1}});
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->kind, ViolationKind::EdgeSwap);
    EXPECT_EQ(v->robots, (std::vector<int>{0, 1}));
}

TEST(ValidateStep, ObstacleEntry) {
    GridMap g(2, 2, {{1, 2}});
    auto v = validate_step(g, {{1, 1}}, {{1, 2}});
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->kind, ViolationKind::ObstacleEntry);
}

TEST(ValidateStep, ReportOrder) {
    GridMap g(3, 3);
    // Robot 2 jumps, robots 0 and 1 collide: the per-robot check wins.
    auto v = validate_step(g, {{1, 1}, {1, 3}, {3, 1}}, {{1, 2}, {1, 2}, {3, 3}});
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->kind, ViolationKind::NonAdjacentMove);
    EXPECT_EQ(v->robots, (std::vector<int>{2}));
    v = validate_step(g, {{1, 1}, {1, 3}, {2, 1}, {2, 3}}, {{1, 2}, {1, 2}, {2, 2}, {2, 2}});
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->kind, ViolationKind::VertexCollision);
    EXPECT_EQ(v->robots, (std::vector<int>{0, 1}));
}

// Independent definition: injective endpoints, each move a wait or unit step,
// and no pair exchanging cells.
static bool legal_by_definition(const Configuration& from, const Configuration& to) {
    std::set<Position> seen(to.begin(), to.end());
    if (seen.size() != to.size()) {
        return false;
    }
    for (std::size_t i = 0; i < from.size(); ++i) {
        if (manhattan(from[i], to[i]) > 1) {
            return false;
        }
        for (std::size_t j = 0; j < from.size(); ++j) {
            if (i != j && from[i] != to[i] && from[i] == to[j] && from[j] == to[i]) {
                return false;
            }
        }
    }
    return true;
}

static void exhaustive_move_sets(int rows, int cols) {
    GridMap g(rows, cols);
    Configuration full;
    for (int i = 0; i < g.cell_count(); ++i) {
        full.push_back(g.position(i));
    }
    const std::vector<Position> dirs = {{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    const int n = static_cast<int>(full.size());
    int total = 1;
    for (int i = 0; i < n; ++i) {
        total *= 5;
    }
    int legal = 0;
    for (int code = 0; code < total; ++code) {
        Configuration to(n);
        bool inside = true;
        int c = code;
        for (int i = 0; i < n; ++i) {
            const auto d = dirs[c % 5];
            c /= 5;
            to[i] = {full[i].x + d.x, full[i].y + d.y};
            inside = inside && g.in_bounds(to[i]);
        }
        if (!inside) {
            continue;
        }
        const bool expected = legal_by_definition(full, to);
        EXPECT_EQ(!validate_step(g, full, to).has_value(), expected) << "code " << code;
        legal += expected ? 1 : 0;
    }
    EXPECT_GT(legal, 1);
}

TEST(ValidateStep, ExhaustiveFull2x2) { exhaustive_move_sets(2, 2); }
TEST(ValidateStep, ExhaustiveFull2x3) { exhaustive_move_sets(2, 3); }

TEST(ValidatePlan, IdentityZeroHorizon) {
    Instance inst{GridMap(3, 3), {{1, 1}, {2, 2}}, {{1, 1}, {2, 2}}, true};
    EXPECT_FALSE(validate_plan(inst, constant_plan(inst.starts)).has_value());
}

TEST(ValidatePlan, PermutedGoalsAreWrongEndpoint) {
    Instance inst{GridMap(2, 3), kRing, kRing, true};
    std::swap(inst.goals[0], inst.goals[1]);
    Plan p = constant_plan(inst.starts, 1);
    auto v = validate_plan(inst, p);
    ASSERT_TRUE(v.has_value());
    EXPECT_EQ(v->kind, ViolationKind::WrongEndpoint);
    inst.labeled = false;
    EXPECT_FALSE(validate_plan(inst, p).has_value());
}

TEST(ValidatePlan, ReplayReachesGoals) {
    Instance inst{GridMap(2, 3), kRing, {}, true};
    Plan p;
    Configuration c = kRing;
    p.paths.assign(6, {});
    for (int t = 0; t <= 4; ++t) {
        for (int i = 0; i < 6; ++i) {
            p.paths[i].push_back(c[i]);
        }
        c = rotate(c);
    }
    inst.goals = p.configuration_at(4);
    EXPECT_FALSE(validate_plan(inst, p).has_value());
    EXPECT_EQ(makespan(p), 4);
}

TEST(Makespan, AllWaitIsZeroAndWaitsDoNotCount) {
    EXPECT_EQ(makespan(constant_plan({{1, 1}, {2, 2}}, 5)), 0);
    Plan p;
    p.paths = {{{1, 1}, {1, 2}, {1, 2}, {1, 2}}};
    EXPECT_EQ(makespan(p), 1);
    strip_trailing_waits(p);
    EXPECT_EQ(p.horizon(), 1);
}

TEST(LowerBound, Basics) {
    Instance inst{GridMap(7, 5), {{1, 1}}, {{7, 5}}, true};
    EXPECT_EQ(manhattan_lower_bound(inst), 7 + 5 - 2);
    inst.goals = inst.starts;
    EXPECT_EQ(manhattan_lower_bound(inst), 0);
    EXPECT_FALSE(optimality_ratio(constant_plan(inst.starts), inst).has_value());
    inst.labeled = false;
    EXPECT_THROW(manhattan_lower_bound(inst), std::invalid_argument);
}

TEST(LowerBound, ShortestPathRatioIsOne) {
    Instance inst{GridMap(4, 4), {{1, 1}}, {{1, 4}}, true};
    Plan p;
    p.paths = {{{1, 1}, {1, 2}, {1, 3}, {1, 4}}};
    ASSERT_FALSE(validate_plan(inst, p).has_value());
    EXPECT_DOUBLE_EQ(*optimality_ratio(p, inst), 1.0);
}

TEST(Io, RoundTrip) {
    Instance inst{GridMap(5, 4, {{2, 2}, {4, 3}}), {{1, 1}, {5, 4}}, {{3, 3}, {1, 4}}, true};
    const std::string text = instance_to_string(inst);
    EXPECT_EQ(instance_from_string(text), inst);
    EXPECT_EQ(instance_to_string(instance_from_string(text)), text);
    Plan p;
    p.paths = {{{1, 1}, {1, 2}}, {{5, 4}, {5, 4}}};
    EXPECT_EQ(plan_from_string(plan_to_string(p)), p);
    EXPECT_EQ(plan_to_string(plan_from_string(plan_to_string(p))), plan_to_string(p));
}

TEST(Transpose, PlanAndInstanceStayValid) {
    Instance inst{GridMap(4, 4), {{1, 1}}, {{1, 4}}, true};
    Plan p;
    p.paths = {{{1, 1}, {1, 2}, {1, 3}, {1, 4}}};
    EXPECT_FALSE(validate_plan(transposed(inst), transposed(p)).has_value());
}
