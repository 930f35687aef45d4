#include "rtmapf/rubik_table.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "rtmapf/bipartite.hpp"

namespace rtmapf {

AbstractTable::AbstractTable(int rows, int cols, int capacity)
    : rows_(rows), cols_(cols), capacity_(static_cast<std::size_t>(rows) * cols, capacity) {
    if (rows < 1 || cols < 1 || capacity < 1) {
        throw std::invalid_argument("table dimensions and capacity must be positive");
    }
}

AbstractTable::AbstractTable(int rows, int cols, std::vector<int> column_capacity)
    : AbstractTable(rows, cols, 1) {
    if (static_cast<int>(column_capacity.size()) != cols) {
        throw std::invalid_argument("one capacity per column required");
    }
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            if (column_capacity[c] < 1) {
                throw std::invalid_argument("capacity must be positive");
            }
            set_capacity(r, c, column_capacity[c]);
        }
    }
}

std::vector<int> AbstractTable::occupancy() const {
    std::vector<int> count(capacity_.size(), 0);
    for (const auto& item : items_) {
        if (item.row < 0 || item.row >= rows_ || item.col < 0 || item.col >= cols_) {
            throw std::out_of_range("table item outside the table");
        }
        ++count[item.row * cols_ + item.col];
    }
    return count;
}

bool AbstractTable::within_capacity() const {
    const auto count = occupancy();
    for (std::size_t i = 0; i < count.size(); ++i) {
        if (count[i] > capacity_[i]) {
            return false;
        }
    }
    return true;
}

AbstractTable AbstractTable::transposed() const {
    AbstractTable t(cols_, rows_, 1);
    for (int r = 0; r < rows_; ++r) {
        for (int c = 0; c < cols_; ++c) {
            t.set_capacity(c, r, capacity(r, c));
        }
    }
    for (const auto& item : items_) {
        t.add({item.col, item.row, item.goal_col, item.goal_row, item.label});
    }
    return t;
}

std::string to_string(RoundOrder order) { return order == RoundOrder::RCR ? "RCR" : "CRC"; }

int ShufflePlan::shuffle_count(int rows, int cols) const {
    int count = 0;
    for (const auto& round : rounds) {
        count += round.kind == LineKind::Row ? rows : cols;
    }
    return count;
}

namespace {

int color_of(const TableItem& item, TargetAxis axis) {
    return axis == TargetAxis::Row ? item.goal_row : item.goal_col;
}

int line_of(const TableItem& item, TargetAxis axis) { return axis == TargetAxis::Row ? item.row : item.col; }

}  // namespace

ColorMultigraph build_color_graph(const AbstractTable& table, TargetAxis axis) {
    const int lines = axis == TargetAxis::Row ? table.rows() : table.cols();
    ColorMultigraph graph;
    graph.vertex_count = lines;
    std::vector<int> color_degree(lines, 0);
    std::vector<int> line_degree(lines, 0);
    const auto& items = table.items();
    graph.edges.reserve(items.size());
    for (int i = 0; i < static_cast<int>(items.size()); ++i) {
        const int color = color_of(items[i], axis);
        const int line = line_of(items[i], axis);
        if (color < 0 || color >= lines || line < 0 || line >= lines) {
            throw std::invalid_argument("build_color_graph: item color or line out of range");
        }
        ++color_degree[color];
        ++line_degree[line];
        graph.edges.push_back({color, line, i});
    }
    graph.degree = lines > 0 ? line_degree[0] : 0;
    for (int v = 0; v < lines; ++v) {
        if (color_degree[v] != graph.degree || line_degree[v] != graph.degree) {
            throw std::invalid_argument("build_color_graph: color multigraph is not regular");
        }
    }
    return graph;
}

MatchingSet decompose_matchings(const ColorMultigraph& graph) {
    const int n = graph.vertex_count;
    // Parallel edges per (color, line), consumed lowest item id first.
    std::vector<std::map<int, std::deque<int>>> bundles(n);
    for (const auto& e : graph.edges) {
        bundles[e.color][e.line].push_back(e.item);
    }
    for (auto& per_color : bundles) {
        for (auto& [line, items] : per_color) {
            std::sort(items.begin(), items.end());
        }
    }
    MatchingSet result;
    result.matchings.reserve(graph.degree);
    std::vector<std::vector<int>> adjacency(n);
    for (int round = 0; round < graph.degree; ++round) {
        for (int color = 0; color < n; ++color) {
            adjacency[color].clear();
            for (const auto& [line, items] : bundles[color]) {
                if (!items.empty()) {
                    adjacency[color].push_back(line);
                }
            }
        }
        const auto match = maximum_matching(n, adjacency);
        if (matching_size(match) != n) {
            throw std::logic_error("decompose_matchings: no perfect matching; input is not regular");
        }
        Matching m;
        m.reserve(n);
        for (int color = 0; color < n; ++color) {
            auto& items = bundles[color][match[color]];
            m.push_back({color, match[color], items.front()});
            items.pop_front();
        }
        result.matchings.push_back(std::move(m));
    }
    return result;
}

std::vector<int> matching_line_groups(const AbstractTable& table, TargetAxis axis) {
    std::vector<int> groups;
    if (axis == TargetAxis::Row) {
        // Intermediate lines are columns; capacity must be constant down each column.
        for (int c = 0; c < table.cols(); ++c) {
            const int cap = table.capacity(0, c);
            for (int r = 1; r < table.rows(); ++r) {
                if (table.capacity(r, c) != cap) {
                    throw std::invalid_argument("row-target planning needs per-column capacities");
                }
            }
            groups.insert(groups.end(), cap, c);
        }
    } else {
        for (int r = 0; r < table.rows(); ++r) {
            const int cap = table.capacity(r, 0);
            for (int c = 1; c < table.cols(); ++c) {
                if (table.capacity(r, c) != cap) {
                    throw std::invalid_argument("column-target planning needs per-row capacities");
                }
            }
            groups.insert(groups.end(), cap, r);
        }
    }
    return groups;
}

namespace {

// Intermediate cell assignment shared by the colored and labeled planners:
// for row-target, matching m sends each of its items to column group(m) of
// its current row.
std::vector<int> intermediate_lines(const AbstractTable& table, TargetAxis axis, const MatchingSet& matchings) {
    const auto groups = matching_line_groups(table, axis);
    if (groups.size() != matchings.matchings.size()) {
        throw std::invalid_argument("matching count does not match the table's line capacities");
    }
    const int n = static_cast<int>(table.items().size());
    std::vector<int> line(n, -1);
    for (std::size_t m = 0; m < groups.size(); ++m) {
        for (const auto& e : matchings.matchings[m]) {
            if (e.item < 0 || e.item >= n || line[e.item] >= 0) {
                throw std::invalid_argument("matching set does not cover each item exactly once");
            }
            line[e.item] = groups[m];
        }
    }
    if (std::find(line.begin(), line.end(), -1) != line.end()) {
        throw std::invalid_argument("matching set does not cover each item exactly once");
    }
    return line;
}

ShufflePlan two_rounds(const AbstractTable& table, TargetAxis axis, const std::vector<int>& mid) {
    const auto& items = table.items();
    ShufflePlan plan;
    ShuffleRound first;
    ShuffleRound second;
    first.kind = axis == TargetAxis::Row ? LineKind::Row : LineKind::Column;
    second.kind = axis == TargetAxis::Row ? LineKind::Column : LineKind::Row;
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (axis == TargetAxis::Row) {
            first.target.push_back({items[i].row, mid[i]});
            second.target.push_back({items[i].goal_row, mid[i]});
        } else {
            first.target.push_back({mid[i], items[i].col});
            second.target.push_back({mid[i], items[i].goal_col});
        }
    }
    plan.rounds.push_back(std::move(first));
    plan.rounds.push_back(std::move(second));
    return plan;
}

}  // namespace

ShufflePlan plan_colored(const AbstractTable& table, TargetAxis axis) {
    const auto matchings = decompose_matchings(build_color_graph(table, axis));
    return two_rounds(table, axis, intermediate_lines(table, axis, matchings));
}

ShufflePlan plan_labeled_with(const AbstractTable& table, RoundOrder order, const MatchingSet& matchings) {
    for (const auto& item : table.items()) {
        if (item.goal_row < 0 || item.goal_row >= table.rows() || item.goal_col < 0 ||
            item.goal_col >= table.cols()) {
            throw std::invalid_argument("plan_labeled: every item needs a goal cell");
        }
    }
    const TargetAxis axis = order == RoundOrder::RCR ? TargetAxis::Row : TargetAxis::Column;
    ShufflePlan plan = two_rounds(table, axis, intermediate_lines(table, axis, matchings));
    ShuffleRound last;
    last.kind = order == RoundOrder::RCR ? LineKind::Row : LineKind::Column;
    for (const auto& item : table.items()) {
        last.target.push_back({item.goal_row, item.goal_col});
    }
    plan.rounds.push_back(std::move(last));
    return plan;
}

ShufflePlan plan_labeled(const AbstractTable& table, RoundOrder order) {
    const TargetAxis axis = order == RoundOrder::RCR ? TargetAxis::Row : TargetAxis::Column;
    return plan_labeled_with(table, order, decompose_matchings(build_color_graph(table, axis)));
}

AbstractTable apply_shuffle_plan(const AbstractTable& table, const ShufflePlan& plan) {
    AbstractTable current = table;
    auto& items = current.items();
    for (const auto& round : plan.rounds) {
        if (round.target.size() != items.size()) {
            throw std::invalid_argument("apply_shuffle_plan: round does not cover every item");
        }
        for (std::size_t i = 0; i < items.size(); ++i) {
            const auto& to = round.target[i];
            if (to.row < 0 || to.row >= current.rows() || to.col < 0 || to.col >= current.cols()) {
                throw std::invalid_argument("apply_shuffle_plan: target outside the table");
            }
            const bool same_line = round.kind == LineKind::Row ? to.row == items[i].row : to.col == items[i].col;
            if (!same_line) {
                throw std::invalid_argument("apply_shuffle_plan: item leaves its line");
            }
            items[i].row = to.row;
            items[i].col = to.col;
        }
        if (!current.within_capacity()) {
            throw std::invalid_argument("apply_shuffle_plan: cell over capacity");
        }
    }
    return current;
}

void write_table(std::ostream& os, const AbstractTable& table) {
    const int cap = table.capacity(0, 0);
    for (int r = 0; r < table.rows(); ++r) {
        for (int c = 0; c < table.cols(); ++c) {
            if (table.capacity(r, c) != cap) {
                throw std::invalid_argument("write_table: text format needs uniform capacity");
            }
        }
    }
    os << table.rows() << ' ' << table.cols() << ' ' << cap << '\n';
    for (const auto& item : table.items()) {
        int label = 0;
        if (item.label >= 0) {
            const int goal_cell = item.goal_row * table.cols() + item.goal_col;
            if (item.label / cap != goal_cell) {
                throw std::invalid_argument("write_table: label inconsistent with goal cell");
            }
            label = item.label + 1;
        }
        os << item.row + 1 << ' ' << item.col + 1 << ' ' << item.goal_row + 1 << ' ' << label << '\n';
    }
}

AbstractTable read_table(std::istream& is) {
    int rows = 0;
    int cols = 0;
    int cap = 0;
    if (!(is >> rows >> cols >> cap)) {
        throw std::runtime_error("read_table: bad header");
    }
    AbstractTable table(rows, cols, cap);
    int r = 0;
    int c = 0;
    int color = 0;
    int label = 0;
    while (is >> r >> c >> color >> label) {
        TableItem item{r - 1, c - 1, color - 1, -1, -1};
        if (label > 0) {
            const int goal_cell = (label - 1) / cap;
            item.label = label - 1;
            item.goal_row = goal_cell / cols;
            item.goal_col = goal_cell % cols;
            if (item.goal_row != color - 1) {
                throw std::runtime_error("read_table: label disagrees with color");
            }
        }
        table.add(item);
    }
    if (!is.eof()) {
        throw std::runtime_error("read_table: trailing garbage");
    }
    table.occupancy();
    return table;
}

nlohmann::json shuffle_plan_to_json(const ShufflePlan& plan) {
    auto rounds = nlohmann::json::array();
    for (const auto& round : plan.rounds) {
        auto targets = nlohmann::json::array();
        for (const auto& t : round.target) {
            targets.push_back({t.row, t.col});
        }
        rounds.push_back({{"kind", round.kind == LineKind::Row ? "row" : "column"}, {"targets", targets}});
    }
    return {{"version", 1}, {"rounds", rounds}};
}

}  // namespace rtmapf
