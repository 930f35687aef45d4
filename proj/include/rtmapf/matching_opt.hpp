#pragma once

#include <string>
#include <vector>

#include "rtmapf/rubik_table.hpp"

namespace rtmapf {

struct WeightedEdge {
    int left = 0;
    int right = 0;
    double weight = 0.0;
};

struct WeightedBipartite {
    int left_count = 0;
    int right_count = 0;
    std::vector<WeightedEdge> edges;
};

struct BottleneckResult {
    std::vector<int> match_of_left;
    double bottleneck = 0.0;
};

// Perfect matching minimizing the largest edge weight: binary search over the
// distinct weights, maximum matching as the feasibility test. Parallel edges
// keep their lightest copy. Throws std::invalid_argument when no perfect
// matching exists.
BottleneckResult bottleneck_assignment(const WeightedBipartite& graph);

// Cost of sending an item to an intermediate line:
//   lambda * |line - start| + (1 - lambda) * |line - goal|
// measured along the intermediate axis (columns for RCR, rows for CRC).
// line_coord maps table lines to physical coordinates (identity if empty);
// items flagged in virtual_item cost nothing.
struct LineCostModel {
    double lambda = 0.0;
    std::vector<double> line_coord;
    std::vector<char> virtual_item;
};

double line_cost(const AbstractTable& table, RoundOrder order, const LineCostModel& model, int line, int item,
                 double lambda);

struct LbaResult {
    MatchingSet matchings;
    double stage1_bottleneck = 0.0;
    double stage2_bottleneck = 0.0;
    bool fell_back = false;
};

// Largest cost(group(m), item) over matchings m and their items.
double matching_set_bottleneck(const AbstractTable& table, RoundOrder order, const LineCostModel& model,
                               const MatchingSet& matchings);

// Two-stage bottleneck heuristic. Stage 1 fills matching slots in order,
// each with a bottleneck matching between current lines and colors where an
// edge's weight is its cheapest remaining item (lowest id on ties). Stage 2
// reassigns the finished matchings to slots by another bottleneck matching.
// Falls back to decompose_matchings (fell_back = true) if stage 1 gets stuck.
LbaResult lba_matchings(const AbstractTable& table, RoundOrder order, const LineCostModel& model);

struct LinearTerm {
    int var = 0;
    double coef = 0.0;

    bool operator==(const LinearTerm&) const = default;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct ConstraintRow {
    std::string name;
    std::vector<LinearTerm> terms;
    Sense sense = Sense::Equal;
    double rhs = 0.0;

    bool operator==(const ConstraintRow&) const = default;
};

// Generic minimization model. Binary variables are bounded to [0, 1],
// continuous ones to [0, inf).
struct IPModel {
    std::vector<std::string> var_names;
    std::vector<char> binary;
    std::vector<LinearTerm> objective;
    std::vector<ConstraintRow> rows;

    int add_var(const std::string& name, bool is_binary);
    bool operator==(const IPModel&) const = default;
};

// Assignment model over x_l_i (item i to intermediate line l) with the
// minimax objective linearized through z0 >= C(l,i,0) x_l_i and
// z1 >= C(l,i,1) x_l_i. Rows:
//   eq2_i      sum_l x_l_i = 1
//   eq3_l_t    sum_{i of color t} x_l_i <= cap(l)
//   eq4_r_l    sum_{i on line r} x_l_i = cap(l)
//   lin0_l_i, lin1_l_i
IPModel build_ip_model(const AbstractTable& table, RoundOrder order, const LineCostModel& model);

// CPLEX LP text. Bounds lists every variable in model order, which the reader
// uses to restore variable order.
std::string export_lp(const IPModel& model);
IPModel read_lp(const std::string& text);

struct IpSolution {
    std::vector<int> line_of_item;
    double objective = 0.0;
};

// Exact optimum for models produced by build_ip_model with at most 8 lines and
// 24 items. Throws std::invalid_argument above those limits or if infeasible.
IpSolution solve_ip_exact_small(const IPModel& model);

// z0 + z1 of a concrete assignment (line_of_item[i] = intermediate line).
double assignment_objective(const AbstractTable& table, RoundOrder order, const LineCostModel& model,
                            const std::vector<int>& line_of_item);

// line_of_item implied by a matching set.
std::vector<int> assignment_of(const AbstractTable& table, RoundOrder order, const MatchingSet& matchings);

}  // namespace rtmapf
