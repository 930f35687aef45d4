#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rtmapf/rubik_table.hpp"

using namespace rtmapf;

namespace {

// Capacity-1 table where item at cell k goes to goal cell perm[k].
AbstractTable labeled_table(int rows, int cols, const std::vector<int>& perm) {
    AbstractTable t(rows, cols);
    for (int k = 0; k < rows * cols; ++k) {
        t.add({k / cols, k % cols, perm[k] / cols, perm[k] % cols, perm[k]});
    }
    return t;
}

AbstractTable random_table(int rows, int cols, std::mt19937& rng) {
    std::vector<int> perm(rows * cols);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    return labeled_table(rows, cols, perm);
}

// A 4x3 example in the spirit of the classic illustration: every row mixes colors.
AbstractTable small_example() {
    return labeled_table(4, 3, {4, 9, 0, 11, 1, 6, 2, 7, 10, 8, 3, 5});
}

bool sorted(const AbstractTable& t) {
    return std::all_of(t.items().begin(), t.items().end(), [](const TableItem& i) {
        return i.row == i.goal_row && i.col == i.goal_col;
    });
}

using EdgeKey = std::tuple<int, int, int>;

std::multiset<EdgeKey> edge_multiset(const std::vector<ColorEdge>& edges) {
    std::multiset<EdgeKey> s;
    for (const auto& e : edges) {
        s.insert({e.color, e.line, e.item});
    }
    return s;
}

void expect_valid_decomposition(const ColorMultigraph& g, const MatchingSet& ms) {
    ASSERT_EQ(static_cast<int>(ms.matchings.size()), g.degree);
    std::vector<ColorEdge> all;
    for (const auto& m : ms.matchings) {
        std::set<int> colors;
        std::set<int> lines;
        for (const auto& e : m) {
            colors.insert(e.color);
            lines.insert(e.line);
        }
        EXPECT_EQ(static_cast<int>(colors.size()), g.vertex_count);
        EXPECT_EQ(static_cast<int>(lines.size()), g.vertex_count);
        EXPECT_EQ(static_cast<int>(m.size()), g.vertex_count);
        all.insert(all.end(), m.begin(), m.end());
    }
    EXPECT_EQ(edge_multiset(all), edge_multiset(g.edges));
}

}  // namespace

TEST(ColorGraph, SmallExampleIsThreeRegular) {
    const auto g = build_color_graph(small_example(), TargetAxis::Row);
    EXPECT_EQ(g.vertex_count, 4);
    EXPECT_EQ(g.degree, 3);
    EXPECT_EQ(g.edges.size(), 12u);
}

TEST(ColorGraph, SortedTableHasOnlyDiagonalEdges) {
    std::vector<int> id(20);
    std::iota(id.begin(), id.end(), 0);
    const auto g = build_color_graph(labeled_table(5, 4, id), TargetAxis::Row);
    for (const auto& e : g.edges) {
        EXPECT_EQ(e.color, e.line);
    }
    EXPECT_EQ(g.degree, 4);
}

TEST(ColorGraph, RandomDegreesByTally) {
    std::mt19937 rng(3);
    const auto t = random_table(6, 6, rng);
    const auto g = build_color_graph(t, TargetAxis::Column);
    std::map<int, int> color_deg;
    std::map<int, int> line_deg;
    for (const auto& e : g.edges) {
        ++color_deg[e.color];
        ++line_deg[e.line];
    }
    for (int v = 0; v < 6; ++v) {
        EXPECT_EQ(color_deg[v], 6);
        EXPECT_EQ(line_deg[v], 6);
    }
}

TEST(ColorGraph, NonRegularRejected) {
    AbstractTable t(2, 2);
    t.add({0, 0, 0, 0, 0});
    t.add({0, 1, 0, 1, 1});
    t.add({1, 0, 0, 0, -1});
    t.add({1, 1, 0, 1, -1});
    EXPECT_THROW(build_color_graph(t, TargetAxis::Row), std::invalid_argument);
}

TEST(Decompose, PermutationIsItsOwnMatching) {
    ColorMultigraph g{3, 1, {{0, 2, 0}, {1, 0, 1}, {2, 1, 2}}};
    const auto ms = decompose_matchings(g);
    ASSERT_EQ(ms.matchings.size(), 1u);
    EXPECT_EQ(edge_multiset(ms.matchings[0]), edge_multiset(g.edges));
}

TEST(Decompose, RandomRegularMultigraph) {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        // Union of 4 random permutations on 7+7 vertices.
        ColorMultigraph g{7, 4, {}};
        int item = 0;
        for (int k = 0; k < 4; ++k) {
            std::vector<int> p(7);
            std::iota(p.begin(), p.end(), 0);
            std::shuffle(p.begin(), p.end(), rng);
            for (int c = 0; c < 7; ++c) {
                g.edges.push_back({c, p[c], item++});
            }
        }
        expect_valid_decomposition(g, decompose_matchings(g));
    }
}

TEST(Decompose, NonRegularFailsLoudly) {
    ColorMultigraph g{2, 2, {{0, 0, 0}, {0, 0, 1}, {1, 1, 2}, {1, 1, 3}}};
    // Degrees are fine per vertex but the first matching forces the same pair twice.
    EXPECT_NO_THROW(decompose_matchings(g));
    ColorMultigraph bad{2, 2, {{0, 0, 0}, {0, 0, 1}, {0, 1, 2}, {1, 1, 3}}};
    EXPECT_THROW(decompose_matchings(bad), std::logic_error);
}

TEST(PlanColored, IntermediateColumnsHoldEachColorOnce) {
    const auto t = small_example();
    const auto plan = plan_colored(t, TargetAxis::Row);
    ASSERT_EQ(plan.rounds.size(), 2u);
    EXPECT_EQ(plan.shuffle_count(4, 3), 4 + 3);
    AbstractTable mid = t;
    ShufflePlan first;
    first.rounds.push_back(plan.rounds[0]);
    mid = apply_shuffle_plan(t, first);
    for (int c = 0; c < 3; ++c) {
        std::multiset<int> colors;
        for (const auto& i : mid.items()) {
            if (i.col == c) {
                colors.insert(i.goal_row);
            }
        }
        EXPECT_EQ(colors, (std::multiset<int>{0, 1, 2, 3}));
    }
    const auto done = apply_shuffle_plan(t, plan);
    for (const auto& i : done.items()) {
        EXPECT_EQ(i.row, i.goal_row);
    }
}

TEST(PlanColored, Random5x4SortsRows) {
    std::mt19937 rng(5);
    auto t = random_table(5, 4, rng);
    for (auto& i : t.items()) {
        i.goal_col = -1;
        i.label = -1;
    }
    const auto done = apply_shuffle_plan(t, plan_colored(t, TargetAxis::Row));
    for (const auto& i : done.items()) {
        EXPECT_EQ(i.row, i.goal_row);
    }
}

TEST(PlanColored, SortedTableGivesIdentityRounds) {
    std::vector<int> id(12);
    std::iota(id.begin(), id.end(), 0);
    const auto t = labeled_table(4, 3, id);
    const auto plan = plan_colored(t, TargetAxis::Row);
    // Each row holds one color, so the first round may permute within the
    // row but the second must keep every item in its row.
    const auto done = apply_shuffle_plan(t, plan);
    for (const auto& i : done.items()) {
        EXPECT_EQ(i.row, i.goal_row);
    }
}

TEST(PlanLabeled, SmallExampleElevenShuffles) {
    const auto t = small_example();
    const auto plan = plan_labeled(t, RoundOrder::RCR);
    ASSERT_EQ(plan.rounds.size(), 3u);
    EXPECT_EQ(plan.shuffle_count(4, 3), 11);
    EXPECT_TRUE(sorted(apply_shuffle_plan(t, plan)));
}

TEST(PlanLabeled, IdentityStaysPut) {
    std::vector<int> id(12);
    std::iota(id.begin(), id.end(), 0);
    const auto t = labeled_table(4, 3, id);
    const auto plan = plan_labeled(t, RoundOrder::RCR);
    AbstractTable cur = t;
    for (const auto& round : plan.rounds) {
        ShufflePlan one;
        one.rounds.push_back(round);
        cur = apply_shuffle_plan(cur, one);
        EXPECT_TRUE(sorted(cur) || &round == &plan.rounds.front() || &round == &plan.rounds[1]);
    }
    EXPECT_TRUE(sorted(cur));
}

TEST(PlanLabeled, Random6x4BothOrders) {
    std::mt19937 rng(7);
    const auto t = random_table(6, 4, rng);
    const auto rcr = plan_labeled(t, RoundOrder::RCR);
    const auto crc = plan_labeled(t, RoundOrder::CRC);
    EXPECT_TRUE(sorted(apply_shuffle_plan(t, rcr)));
    EXPECT_TRUE(sorted(apply_shuffle_plan(t, crc)));
    EXPECT_EQ(rcr.shuffle_count(6, 4), 16);
    EXPECT_EQ(crc.shuffle_count(6, 4), 14);
    EXPECT_EQ(rcr.rounds[0].kind, LineKind::Row);
    EXPECT_EQ(crc.rounds[0].kind, LineKind::Column);
}

TEST(PlanLabeled, PropertyRandomSizes) {
    std::mt19937 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
        const int cols = 2 + static_cast<int>(rng() % 11);
        const int rows = cols + static_cast<int>(rng() % (13 - cols));
        const auto t = random_table(rows, cols, rng);
        for (auto order : {RoundOrder::RCR, RoundOrder::CRC}) {
            const auto plan = plan_labeled(t, order);
            ASSERT_EQ(plan.rounds.size(), 3u);
            EXPECT_TRUE(sorted(apply_shuffle_plan(t, plan)));
        }
    }
}

TEST(PlanLabeled, CapacityThreeBands) {
    // 4 rows of blocks, 3 block columns with capacity 3 (and one of 2).
    std::mt19937 rng(9);
    AbstractTable t(4, 3, std::vector<int>{3, 2, 3});
    std::vector<std::pair<int, int>> slots;
    for (int r = 0; r < 4; ++r) {
        for (int c = 0; c < 3; ++c) {
            for (int k = 0; k < t.capacity(r, c); ++k) {
                slots.push_back({r, c});
            }
        }
    }
    auto goals = slots;
    std::shuffle(goals.begin(), goals.end(), rng);
    for (std::size_t i = 0; i < slots.size(); ++i) {
        t.add({slots[i].first, slots[i].second, goals[i].first, goals[i].second, -1});
    }
    const auto plan = plan_labeled(t, RoundOrder::RCR);
    EXPECT_TRUE(sorted(apply_shuffle_plan(t, plan)));
    EXPECT_EQ(matching_line_groups(t, TargetAxis::Row), (std::vector<int>{0, 0, 0, 1, 1, 2, 2, 2}));
}

TEST(ApplyShuffle, EmptyPlanAndInverse) {
    const auto t = small_example();
    EXPECT_EQ(apply_shuffle_plan(t, ShufflePlan{}), t);
    const auto plan = plan_labeled(t, RoundOrder::RCR);
    const auto done = apply_shuffle_plan(t, plan);
    // Inverse: replay the rounds backwards, targeting the pre-round cells.
    ShufflePlan inverse;
    std::vector<std::vector<CellRef>> before;
    std::vector<CellRef> cur;
    for (const auto& i : t.items()) {
        cur.push_back({i.row, i.col});
    }
    for (const auto& round : plan.rounds) {
        before.push_back(cur);
        cur = round.target;
    }
    for (int k = static_cast<int>(plan.rounds.size()) - 1; k >= 0; --k) {
        inverse.rounds.push_back({plan.rounds[k].kind, before[k]});
    }
    EXPECT_EQ(apply_shuffle_plan(done, inverse), t);
}

TEST(ApplyShuffle, LeavingLineRejected) {
    const auto t = small_example();
    ShufflePlan bad;
    bad.rounds.push_back({LineKind::Row, {}});
    for (const auto& i : t.items()) {
        bad.rounds[0].target.push_back({(i.row + 1) % 4, i.col});
    }
    EXPECT_THROW(apply_shuffle_plan(t, bad), std::invalid_argument);
}

TEST(TableIo, RoundTripAndJson) {
    const auto t = small_example();
    std::stringstream ss;
    write_table(ss, t);
    const auto back = read_table(ss);
    EXPECT_EQ(back, t);
    const auto j = shuffle_plan_to_json(plan_labeled(t, RoundOrder::CRC));
    EXPECT_EQ(j["rounds"].size(), 3u);
    EXPECT_EQ(j["rounds"][0]["kind"], "column");
}
