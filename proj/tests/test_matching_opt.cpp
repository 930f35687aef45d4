#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "rtmapf/matching_opt.hpp"

using namespace rtmapf;

namespace {

WeightedBipartite dense(const std::vector<std::vector<double>>& w) {
    WeightedBipartite g{static_cast<int>(w.size()), static_cast<int>(w.size()), {}};
    for (int l = 0; l < g.left_count; ++l) {
        for (int r = 0; r < g.right_count; ++r) {
            g.edges.push_back({l, r, w[l][r]});
        }
    }
    return g;
}

double exhaustive_bottleneck(const std::vector<std::vector<double>>& w) {
    std::vector<int> p(w.size());
    std::iota(p.begin(), p.end(), 0);
    double best = 1e18;
    do {
        double worst = 0;
        for (std::size_t i = 0; i < p.size(); ++i) {
            worst = std::max(worst, w[i][p[i]]);
        }
        best = std::min(best, worst);
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

AbstractTable random_table(int rows, int cols, std::mt19937& rng) {
    std::vector<int> perm(rows * cols);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    AbstractTable t(rows, cols);
    for (int k = 0; k < rows * cols; ++k) {
        t.add({k / cols, k % cols, perm[k] / cols, perm[k] % cols, perm[k]});
    }
    return t;
}

void expect_valid_matching_set(const AbstractTable& t, const MatchingSet& ms) {
    const auto g = build_color_graph(t, TargetAxis::Row);
    ASSERT_EQ(static_cast<int>(ms.matchings.size()), g.degree);
    std::vector<int> used(t.items().size(), 0);
    for (const auto& m : ms.matchings) {
        std::set<int> colors;
        std::set<int> lines;
        for (const auto& e : m) {
            colors.insert(e.color);
            lines.insert(e.line);
            EXPECT_EQ(t.items()[e.item].goal_row, e.color);
            EXPECT_EQ(t.items()[e.item].row, e.line);
            ++used[e.item];
        }
        EXPECT_EQ(static_cast<int>(colors.size()), g.vertex_count);
        EXPECT_EQ(static_cast<int>(lines.size()), g.vertex_count);
    }
    for (int u : used) {
        EXPECT_EQ(u, 1);
    }
}

}  // namespace

TEST(Bottleneck, SmallCases) {
    EXPECT_EQ(bottleneck_assignment(dense({{0, 9}, {9, 0}})).bottleneck, 0);
    const auto r = bottleneck_assignment(dense({{1, 2}, {2, 4}}));
    EXPECT_EQ(r.bottleneck, 2);
    EXPECT_EQ(r.match_of_left, (std::vector<int>{1, 0}));
}

TEST(Bottleneck, MatchesExhaustiveSearch) {
    std::mt19937 rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const int n = 2 + static_cast<int>(rng() % 5);
        std::vector<std::vector<double>> w(n, std::vector<double>(n));
        for (auto& row : w) {
            for (auto& x : row) {
                x = static_cast<double>(rng() % 20);
            }
        }
        const auto r = bottleneck_assignment(dense(w));
        EXPECT_EQ(r.bottleneck, exhaustive_bottleneck(w));
        double worst = 0;
        for (int i = 0; i < n; ++i) {
            worst = std::max(worst, w[i][r.match_of_left[i]]);
        }
        EXPECT_EQ(worst, r.bottleneck);
    }
}

TEST(Bottleneck, NoPerfectMatchingThrows) {
    WeightedBipartite g{2, 2, {{0, 0, 1}, {1, 0, 1}}};
    EXPECT_THROW(bottleneck_assignment(g), std::invalid_argument);
}

TEST(Lba, SortedInstanceHasZeroBottleneck) {
    std::vector<int> id(12);
    std::iota(id.begin(), id.end(), 0);
    AbstractTable t(4, 3);
    for (int k = 0; k < 12; ++k) {
        t.add({k / 3, k % 3, k / 3, k % 3, k});
    }
    const auto r = lba_matchings(t, RoundOrder::RCR, {});
    EXPECT_FALSE(r.fell_back);
    EXPECT_EQ(r.stage2_bottleneck, 0);
    const auto line = assignment_of(t, RoundOrder::RCR, r.matchings);
    for (int i = 0; i < 12; ++i) {
        EXPECT_EQ(line[i], t.items()[i].goal_col);
    }
}

TEST(Lba, ValidAndNoWorseThanPlainDecomposition) {
    std::mt19937 rng(8);
    for (int trial = 0; trial < 50; ++trial) {
        const auto t = random_table(4 + trial % 5, 3 + trial % 4, rng);
        const auto r = lba_matchings(t, RoundOrder::RCR, {});
        expect_valid_matching_set(t, r.matchings);
        const auto plain = decompose_matchings(build_color_graph(t, TargetAxis::Row));
        EXPECT_LE(r.stage2_bottleneck, matching_set_bottleneck(t, RoundOrder::RCR, {}, plain));
        EXPECT_EQ(r.stage2_bottleneck, matching_set_bottleneck(t, RoundOrder::RCR, {}, r.matchings));
        const auto plan = plan_labeled_with(t, RoundOrder::RCR, r.matchings);
        const auto done = apply_shuffle_plan(t, plan);
        for (const auto& i : done.items()) {
            EXPECT_EQ(i.row, i.goal_row);
            EXPECT_EQ(i.col, i.goal_col);
        }
    }
}

TEST(Lba, Deterministic) {
    std::mt19937 rng(4);
    const auto t = random_table(9, 6, rng);
    const auto a = lba_matchings(t, RoundOrder::RCR, {});
    const auto b = lba_matchings(t, RoundOrder::RCR, {});
    ASSERT_EQ(a.matchings.matchings.size(), b.matchings.matchings.size());
    for (std::size_t m = 0; m < a.matchings.matchings.size(); ++m) {
        EXPECT_EQ(a.matchings.matchings[m], b.matchings.matchings[m]);
    }
}

TEST(IpModel, CountsForThreeItems) {
    AbstractTable t(3, 1);
    t.add({0, 0, 2, 0, 2});
    t.add({1, 0, 0, 0, 0});
    t.add({2, 0, 1, 0, 1});
    const auto tt = t.transposed();
    const auto ip = build_ip_model(tt, RoundOrder::RCR, {});
    int binaries = 0;
    int eq2 = 0;
    for (char b : ip.binary) {
        binaries += b;
    }
    for (const auto& r : ip.rows) {
        eq2 += r.name.rfind("eq2_", 0) == 0;
    }
    EXPECT_EQ(binaries, 9);
    EXPECT_EQ(ip.var_names.size(), 9u + 2u);
    EXPECT_EQ(eq2, 3);

    const auto ip3 = build_ip_model(t, RoundOrder::CRC, {});
    int b3 = 0;
    for (char b : ip3.binary) {
        b3 += b;
    }
    EXPECT_EQ(b3, 9);
}

TEST(IpModel, SingleItemObjectiveForced) {
    AbstractTable t(1, 1);
    t.add({0, 0, 0, 0, 0});
    const auto ip = build_ip_model(t, RoundOrder::RCR, {});
    const auto sol = solve_ip_exact_small(ip);
    EXPECT_EQ(sol.line_of_item, (std::vector<int>{0}));
    EXPECT_EQ(sol.objective, 0);
}

TEST(IpModel, LpRoundTripAndStability) {
    std::mt19937 rng(2);
    const auto t = random_table(3, 3, rng);
    const auto ip = build_ip_model(t, RoundOrder::RCR, {});
    const auto text = export_lp(ip);
    EXPECT_EQ(read_lp(text), ip);
    EXPECT_EQ(export_lp(read_lp(text)), text);
    EXPECT_EQ(export_lp(build_ip_model(t, RoundOrder::RCR, {})), text);
    EXPECT_EQ(export_lp(IPModel{}), "Minimize\n obj:\nSubject To\nEnd\n");
    EXPECT_EQ(read_lp(export_lp(IPModel{})), IPModel{});
}

TEST(IpModel, LinearizationEqualsDirectObjective) {
    std::mt19937 rng(6);
    const auto t = random_table(3, 2, rng);
    const auto ip = build_ip_model(t, RoundOrder::RCR, {});
    const int n = 6;
    // Enumerate all 2^6 line choices, keep those meeting eq2-4, and compare
    // the smallest z0 + z1 allowed by the link rows with the direct formula.
    for (int mask = 0; mask < (1 << n); ++mask) {
        std::vector<int> line(n);
        for (int i = 0; i < n; ++i) {
            line[i] = (mask >> i) & 1;
        }
        std::vector<double> x(ip.var_names.size(), 0.0);
        for (int i = 0; i < n; ++i) {
            x[line[i] * n + i] = 1.0;
        }
        double z0 = 0.0;
        double z1 = 0.0;
        bool feasible = true;
        for (const auto& row : ip.rows) {
            if (row.name.rfind("lin", 0) == 0) {
                const double c = -row.terms[1].coef * x[row.terms[1].var];
                (row.name[3] == '0' ? z0 : z1) = std::max(row.name[3] == '0' ? z0 : z1, c);
                continue;
            }
            double s = 0.0;
            for (const auto& term : row.terms) {
                s += term.coef * x[term.var];
            }
            feasible = feasible && (row.sense == Sense::Equal ? s == row.rhs : s <= row.rhs);
        }
        if (feasible) {
            EXPECT_EQ(z0 + z1, assignment_objective(t, RoundOrder::RCR, {}, line));
        }
    }
}

TEST(IpModel, ExactOptimumDominatesLba) {
    std::mt19937 rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const auto t = random_table(2, 4, rng).transposed();  // 4 rows, 2 cols, 8 items
        for (auto order : {RoundOrder::RCR, RoundOrder::CRC}) {
            const auto ip = build_ip_model(t, order, {});
            const auto sol = solve_ip_exact_small(ip);
            const auto lba = lba_matchings(t, order, {});
            EXPECT_LE(sol.objective,
                      assignment_objective(t, order, {}, assignment_of(t, order, lba.matchings)) + 1e-9);
            EXPECT_EQ(sol.objective, assignment_objective(t, order, {}, sol.line_of_item));
        }
    }
    const auto fig = random_table(4, 3, rng);
    const auto sol = solve_ip_exact_small(build_ip_model(fig, RoundOrder::RCR, {}));
    const auto lba = lba_matchings(fig, RoundOrder::RCR, {});
    EXPECT_LE(sol.objective,
              assignment_objective(fig, RoundOrder::RCR, {}, assignment_of(fig, RoundOrder::RCR, lba.matchings)));
}

TEST(IpModel, SizeLimit) {
    std::mt19937 rng(1);
    const auto t = random_table(9, 9, rng);
    EXPECT_THROW(solve_ip_exact_small(build_ip_model(t, RoundOrder::RCR, {})), std::invalid_argument);
}
