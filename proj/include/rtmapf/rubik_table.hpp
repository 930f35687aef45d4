#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace rtmapf {

// Item of an abstract Rubik table. Coordinates are 0-based table cells.
// goal_row/goal_col may be -1 when only one of them is meaningful (colored
// problems); label is -1 for unlabeled items.
struct TableItem {
    int row = 0;
    int col = 0;
    int goal_row = -1;
    int goal_col = -1;
    int label = -1;

    bool operator==(const TableItem&) const = default;
};

// A rows x cols table whose cells hold up to capacity(r, c) items. Capacity 1
// everywhere is the plain Rubik table; larger capacities model several robots
// parked in one grid block.
class AbstractTable {
public:
    AbstractTable() = default;
    AbstractTable(int rows, int cols, int capacity = 1);
    AbstractTable(int rows, int cols, std::vector<int> column_capacity);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int capacity(int row, int col) const { return capacity_[row * cols_ + col]; }
    void set_capacity(int row, int col, int cap) { capacity_[row * cols_ + col] = cap; }

    std::vector<TableItem>& items() { return items_; }
    const std::vector<TableItem>& items() const { return items_; }
    void add(const TableItem& item) { items_.push_back(item); }

    // Items currently in each cell (row-major), and whether every cell is
    // within capacity.
    std::vector<int> occupancy() const;
    bool within_capacity() const;

    AbstractTable transposed() const;

    bool operator==(const AbstractTable&) const = default;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<int> capacity_;
    std::vector<TableItem> items_;
};

// Row-target: color = goal row, lines = rows. Column-target: color = goal
// column, lines = columns.
enum class TargetAxis { Row, Column };

// Round order for the labeled problem: row/column/row or column/row/column.
enum class RoundOrder { RCR, CRC };

std::string to_string(RoundOrder order);

struct ColorEdge {
    int color = 0;
    int line = 0;
    int item = 0;

    bool operator==(const ColorEdge&) const = default;
};

struct ColorMultigraph {
    int vertex_count = 0;  // |colors| == |lines|
    int degree = 0;
    std::vector<ColorEdge> edges;
};

using Matching = std::vector<ColorEdge>;

struct MatchingSet {
    std::vector<Matching> matchings;
};

enum class LineKind { Row, Column };

struct CellRef {
    int row = 0;
    int col = 0;

    bool operator==(const CellRef&) const = default;
};

struct ShuffleRound {
    LineKind kind = LineKind::Row;
    // target[i] is item i's cell after this round.
    std::vector<CellRef> target;
};

struct ShufflePlan {
    std::vector<ShuffleRound> rounds;

    // Lines shuffled per round summed over rounds (a row round on an m1 x m2
    // table counts m1 shuffles).
    int shuffle_count(int rows, int cols) const;
};

// One edge per item from its color to its current line. Throws
// std::invalid_argument if the graph is not regular.
ColorMultigraph build_color_graph(const AbstractTable& table, TargetAxis axis);

// Splits a k-regular bipartite multigraph into k perfect matchings by repeated
// maximum matching. Throws std::logic_error if an extraction is not perfect.
MatchingSet decompose_matchings(const ColorMultigraph& graph);

// Two rounds sorting every item onto the line of its color.
ShufflePlan plan_colored(const AbstractTable& table, TargetAxis axis);

// Three rounds placing every item in its goal cell.
ShufflePlan plan_labeled(const AbstractTable& table, RoundOrder order);

// Same, with a caller-supplied decomposition of the row-target (RCR) or
// column-target (CRC) color graph. Matching m is sent to intermediate line
// group(m), where consecutive matchings fill the capacity of each line.
ShufflePlan plan_labeled_with(const AbstractTable& table, RoundOrder order, const MatchingSet& matchings);

// Intermediate line of the m-th matching, for a table whose capacities depend
// only on the intermediate line (column capacities for row-target).
std::vector<int> matching_line_groups(const AbstractTable& table, TargetAxis axis);

// Replays the rounds. Throws std::invalid_argument when a round moves an item
// off its line or overfills a cell.
AbstractTable apply_shuffle_plan(const AbstractTable& table, const ShufflePlan& plan);

// Table text format: "m1 m2 capacity" then one "r c color label" line per item.
// r, c and color (the goal row) are 1-based. label is 0 for unlabeled items;
// otherwise label-1 == goal_cell * capacity + k for some 0 <= k < capacity,
// goal_cell being the row-major index of the goal cell, and the in-memory
// label is label-1.
void write_table(std::ostream& os, const AbstractTable& table);
AbstractTable read_table(std::istream& is);

nlohmann::json shuffle_plan_to_json(const ShufflePlan& plan);

}  // namespace rtmapf
