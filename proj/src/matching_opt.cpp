#include "rtmapf/matching_opt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "rtmapf/bipartite.hpp"

namespace rtmapf {

namespace {

std::vector<int> match_below(const WeightedBipartite& g, const std::vector<std::vector<std::pair<int, double>>>& adj,
                             double threshold) {
    std::vector<std::vector<int>> filtered(g.left_count);
    for (int l = 0; l < g.left_count; ++l) {
        for (const auto& [r, w] : adj[l]) {
            if (w <= threshold) {
                filtered[l].push_back(r);
            }
        }
    }
    return maximum_matching(g.right_count, filtered);
}

}  // namespace

BottleneckResult bottleneck_assignment(const WeightedBipartite& graph) {
    if (graph.left_count != graph.right_count) {
        throw std::invalid_argument("bottleneck_assignment: sides differ in size");
    }
    std::vector<std::map<int, double>> lightest(graph.left_count);
    for (const auto& e : graph.edges) {
        auto [it, inserted] = lightest[e.left].emplace(e.right, e.weight);
        if (!inserted) {
            it->second = std::min(it->second, e.weight);
        }
    }
    std::vector<std::vector<std::pair<int, double>>> adj(graph.left_count);
    std::vector<double> weights;
    for (int l = 0; l < graph.left_count; ++l) {
        for (const auto& [r, w] : lightest[l]) {
            adj[l].push_back({r, w});
            weights.push_back(w);
        }
    }
    std::sort(weights.begin(), weights.end());
    weights.erase(std::unique(weights.begin(), weights.end()), weights.end());
    BottleneckResult result;
    if (graph.left_count == 0) {
        return result;
    }
    if (weights.empty() || matching_size(match_below(graph, adj, weights.back())) != graph.left_count) {
        throw std::invalid_argument("bottleneck_assignment: no perfect matching");
    }
    std::size_t lo = 0;
    std::size_t hi = weights.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (matching_size(match_below(graph, adj, weights[mid])) == graph.left_count) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    result.bottleneck = weights[lo];
    result.match_of_left = match_below(graph, adj, weights[lo]);
    return result;
}

namespace {

struct AxisView {
    TargetAxis axis;
    int current_line(const TableItem& i) const { return axis == TargetAxis::Row ? i.row : i.col; }
    int color(const TableItem& i) const { return axis == TargetAxis::Row ? i.goal_row : i.goal_col; }
    int start(const TableItem& i) const { return axis == TargetAxis::Row ? i.col : i.row; }
    int goal(const TableItem& i) const { return axis == TargetAxis::Row ? i.goal_col : i.goal_row; }
    int line_count(const AbstractTable& t) const { return axis == TargetAxis::Row ? t.rows() : t.cols(); }
    int intermediate_count(const AbstractTable& t) const { return axis == TargetAxis::Row ? t.cols() : t.rows(); }
    int capacity(const AbstractTable& t, int line) const {
        return axis == TargetAxis::Row ? t.capacity(0, line) : t.capacity(line, 0);
    }
};

AxisView view_of(RoundOrder order) { return {order == RoundOrder::RCR ? TargetAxis::Row : TargetAxis::Column}; }

}  // namespace

double line_cost(const AbstractTable& table, RoundOrder order, const LineCostModel& model, int line, int item,
                 double lambda) {
    if (!model.virtual_item.empty() && model.virtual_item[item]) {
        return 0.0;
    }
    const auto v = view_of(order);
    const auto& it = table.items()[item];
    auto coord = [&](int l) { return model.line_coord.empty() ? static_cast<double>(l) : model.line_coord[l]; };
    const double s = std::abs(coord(line) - coord(v.start(it)));
    const double g = std::abs(coord(line) - coord(v.goal(it)));
    if (lambda == 0.0) {
        return g;
    }
    if (lambda == 1.0) {
        return s;
    }
    return lambda * s + (1.0 - lambda) * g;
}

double matching_set_bottleneck(const AbstractTable& table, RoundOrder order, const LineCostModel& model,
                               const MatchingSet& matchings) {
    const auto groups = matching_line_groups(table, view_of(order).axis);
    double worst = 0.0;
    for (std::size_t m = 0; m < matchings.matchings.size(); ++m) {
        for (const auto& e : matchings.matchings[m]) {
            worst = std::max(worst, line_cost(table, order, model, groups[m], e.item, model.lambda));
        }
    }
    return worst;
}

LbaResult lba_matchings(const AbstractTable& table, RoundOrder order, const LineCostModel& model) {
    const auto v = view_of(order);
    const auto graph = build_color_graph(table, v.axis);
    const auto groups = matching_line_groups(table, v.axis);
    const int n = graph.vertex_count;
    const int k = static_cast<int>(groups.size());
    if (k != graph.degree) {
        throw std::invalid_argument("lba_matchings: line capacities do not match the color graph degree");
    }
    // remaining[color * n + line] holds item ids in ascending order.
    std::vector<std::vector<int>> remaining(static_cast<std::size_t>(n) * n);
    for (const auto& e : graph.edges) {
        remaining[e.color * n + e.line].push_back(e.item);
    }
    for (auto& bucket : remaining) {
        std::sort(bucket.begin(), bucket.end());
    }

    LbaResult result;
    std::vector<Matching> stage1;
    stage1.reserve(k);
    try {
        for (int slot = 0; slot < k; ++slot) {
            WeightedBipartite wb{n, n, {}};
            std::vector<int> best_item(static_cast<std::size_t>(n) * n, -1);
            for (int t = 0; t < n; ++t) {
                for (int r = 0; r < n; ++r) {
                    const auto& bucket = remaining[t * n + r];
                    int best = -1;
                    double best_cost = 0.0;
                    for (int item : bucket) {
                        const double c = line_cost(table, order, model, groups[slot], item, model.lambda);
                        if (best < 0 || c < best_cost) {
                            best = item;
                            best_cost = c;
                        }
                    }
                    if (best >= 0) {
                        best_item[t * n + r] = best;
                        wb.edges.push_back({t, r, best_cost});
                    }
                }
            }
            const auto bn = bottleneck_assignment(wb);
            result.stage1_bottleneck = std::max(result.stage1_bottleneck, bn.bottleneck);
            Matching m;
            for (int t = 0; t < n; ++t) {
                const int r = bn.match_of_left[t];
                const int item = best_item[t * n + r];
                m.push_back({t, r, item});
                auto& bucket = remaining[t * n + r];
                bucket.erase(std::find(bucket.begin(), bucket.end(), item));
            }
            stage1.push_back(std::move(m));
        }
    } catch (const std::invalid_argument&) {
        result.fell_back = true;
        result.matchings = decompose_matchings(graph);
        result.stage2_bottleneck = matching_set_bottleneck(table, order, model, result.matchings);
        return result;
    }

    WeightedBipartite assign{k, k, {}};
    assign.edges.reserve(static_cast<std::size_t>(k) * k);
    for (int m = 0; m < k; ++m) {
        for (int slot = 0; slot < k; ++slot) {
            double worst = 0.0;
            for (const auto& e : stage1[m]) {
                worst = std::max(worst, line_cost(table, order, model, groups[slot], e.item, model.lambda));
            }
            assign.edges.push_back({m, slot, worst});
        }
    }
    const auto bn = bottleneck_assignment(assign);
    result.stage2_bottleneck = bn.bottleneck;
    result.matchings.matchings.resize(k);
    for (int m = 0; m < k; ++m) {
        result.matchings.matchings[bn.match_of_left[m]] = std::move(stage1[m]);
    }
    return result;
}

int IPModel::add_var(const std::string& name, bool is_binary) {
    var_names.push_back(name);
    binary.push_back(is_binary ? 1 : 0);
    return static_cast<int>(var_names.size()) - 1;
}

IPModel build_ip_model(const AbstractTable& table, RoundOrder order, const LineCostModel& model) {
    const auto v = view_of(order);
    const int lines = v.intermediate_count(table);
    const int current = v.line_count(table);
    const auto& items = table.items();
    const int n = static_cast<int>(items.size());
    IPModel ip;
    for (int l = 0; l < lines; ++l) {
        for (int i = 0; i < n; ++i) {
            ip.add_var("x_" + std::to_string(l) + "_" + std::to_string(i), true);
        }
    }
    if (n == 0) {
        return ip;
    }
    const int z0 = ip.add_var("z0", false);
    const int z1 = ip.add_var("z1", false);
    auto x = [n](int l, int i) { return l * n + i; };
    ip.objective = {{z0, 1.0}, {z1, 1.0}};
    for (int i = 0; i < n; ++i) {
        ConstraintRow row{"eq2_" + std::to_string(i), {}, Sense::Equal, 1.0};
        for (int l = 0; l < lines; ++l) {
            row.terms.push_back({x(l, i), 1.0});
        }
        ip.rows.push_back(std::move(row));
    }
    for (int l = 0; l < lines; ++l) {
        for (int t = 0; t < current; ++t) {
            ConstraintRow row{"eq3_" + std::to_string(l) + "_" + std::to_string(t), {}, Sense::LessEqual,
                              static_cast<double>(v.capacity(table, l))};
            for (int i = 0; i < n; ++i) {
                if (v.color(items[i]) == t) {
                    row.terms.push_back({x(l, i), 1.0});
                }
            }
            if (!row.terms.empty()) {
                ip.rows.push_back(std::move(row));
            }
        }
    }
    for (int r = 0; r < current; ++r) {
        for (int l = 0; l < lines; ++l) {
            ConstraintRow row{"eq4_" + std::to_string(r) + "_" + std::to_string(l), {}, Sense::Equal,
                              static_cast<double>(v.capacity(table, l))};
            for (int i = 0; i < n; ++i) {
                if (v.current_line(items[i]) == r) {
                    row.terms.push_back({x(l, i), 1.0});
                }
            }
            if (!row.terms.empty()) {
                ip.rows.push_back(std::move(row));
            }
        }
    }
    for (int which = 0; which < 2; ++which) {
        for (int l = 0; l < lines; ++l) {
            for (int i = 0; i < n; ++i) {
                const double c = line_cost(table, order, model, l, i, which == 0 ? 0.0 : 1.0);
                if (c == 0.0) {
                    continue;
                }
                ip.rows.push_back({"lin" + std::to_string(which) + "_" + std::to_string(l) + "_" + std::to_string(i),
                                   {{which == 0 ? z0 : z1, 1.0}, {x(l, i), -c}},
                                   Sense::GreaterEqual,
                                   0.0});
            }
        }
    }
    return ip;
}

namespace {

std::string number(double value) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, res.ptr);
}

void write_expression(std::ostream& os, const IPModel& model, const std::vector<LinearTerm>& terms) {
    bool first = true;
    for (const auto& t : terms) {
        const double mag = std::abs(t.coef);
        if (t.coef < 0) {
            os << (first ? " - " : " - ");
        } else if (!first) {
            os << " + ";
        } else {
            os << ' ';
        }
        if (mag != 1.0) {
            os << number(mag) << ' ';
        }
        os << model.var_names[t.var];
        first = false;
    }
}

const char* sense_text(Sense s) {
    switch (s) {
        case Sense::LessEqual:
            return "<=";
        case Sense::GreaterEqual:
            return ">=";
        case Sense::Equal:
            break;
    }
    return "=";
}

}  // namespace

std::string export_lp(const IPModel& model) {
    std::ostringstream os;
    os << "Minimize\n obj:";
    write_expression(os, model, model.objective);
    os << "\nSubject To\n";
    for (const auto& row : model.rows) {
        os << ' ' << row.name << ':';
        write_expression(os, model, row.terms);
        os << ' ' << sense_text(row.sense) << ' ' << number(row.rhs) << '\n';
    }
    if (!model.var_names.empty()) {
        os << "Bounds\n";
        for (std::size_t v = 0; v < model.var_names.size(); ++v) {
            if (model.binary[v]) {
                os << " 0 <= " << model.var_names[v] << " <= 1\n";
            } else {
                os << ' ' << model.var_names[v] << " >= 0\n";
            }
        }
        os << "Binaries\n";
        for (std::size_t v = 0; v < model.var_names.size(); ++v) {
            if (model.binary[v]) {
                os << ' ' << model.var_names[v] << '\n';
            }
        }
    }
    os << "End\n";
    return os.str();
}

namespace {

double parse_number(const std::string& tok) {
    double value = 0.0;
    auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size()) {
        throw std::runtime_error("read_lp: bad number '" + tok + "'");
    }
    return value;
}

bool looks_numeric(const std::string& tok) {
    return !tok.empty() && (std::isdigit(static_cast<unsigned char>(tok[0])) || tok[0] == '.');
}

std::vector<LinearTerm> parse_terms(const std::vector<std::string>& toks, std::size_t begin, std::size_t end,
                                    const std::unordered_map<std::string, int>& index) {
    std::vector<LinearTerm> terms;
    double sign = 1.0;
    double coef = 1.0;
    for (std::size_t k = begin; k < end; ++k) {
        const auto& tok = toks[k];
        if (tok == "+") {
            sign = 1.0;
        } else if (tok == "-") {
            sign = -1.0;
        } else if (looks_numeric(tok)) {
            coef = parse_number(tok);
        } else {
            auto it = index.find(tok);
            if (it == index.end()) {
                throw std::runtime_error("read_lp: undeclared variable " + tok);
            }
            terms.push_back({it->second, sign * coef});
            sign = 1.0;
            coef = 1.0;
        }
    }
    return terms;
}

std::vector<std::string> split(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string tok;
    while (is >> tok) {
        toks.push_back(tok);
    }
    return toks;
}

}  // namespace

IPModel read_lp(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::string section;
    std::vector<std::string> objective_lines;
    std::vector<std::string> row_lines;
    std::vector<std::string> bound_lines;
    std::vector<std::string> binary_lines;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '\\') {
            continue;
        }
        if (line[0] != ' ') {
            section = line;
            continue;
        }
        if (section == "Minimize") {
            objective_lines.push_back(line);
        } else if (section == "Subject To") {
            row_lines.push_back(line);
        } else if (section == "Bounds") {
            bound_lines.push_back(line);
        } else if (section == "Binaries") {
            binary_lines.push_back(line);
        } else {
            throw std::runtime_error("read_lp: content outside a section");
        }
    }
    IPModel model;
    std::unordered_map<std::string, int> index;
    for (const auto& b : bound_lines) {
        const auto toks = split(b);
        const std::string name = toks.size() == 5 ? toks[2] : toks.at(0);
        index[name] = model.add_var(name, false);
    }
    for (const auto& b : binary_lines) {
        for (const auto& name : split(b)) {
            model.binary.at(index.at(name)) = 1;
        }
    }
    for (const auto& o : objective_lines) {
        const auto toks = split(o);
        if (toks.empty() || toks[0] != "obj:") {
            throw std::runtime_error("read_lp: bad objective");
        }
        const auto terms = parse_terms(toks, 1, toks.size(), index);
        model.objective.insert(model.objective.end(), terms.begin(), terms.end());
    }
    for (const auto& r : row_lines) {
        const auto toks = split(r);
        if (toks.size() < 3 || toks[0].back() != ':') {
            throw std::runtime_error("read_lp: bad constraint " + r);
        }
        ConstraintRow row;
        row.name = toks[0].substr(0, toks[0].size() - 1);
        const auto& s = toks[toks.size() - 2];
        row.sense = s == "<=" ? Sense::LessEqual : s == ">=" ? Sense::GreaterEqual : Sense::Equal;
        row.rhs = parse_number(toks.back());
        row.terms = parse_terms(toks, 1, toks.size() - 2, index);
        model.rows.push_back(std::move(row));
    }
    return model;
}

namespace {

bool parse_x(const std::string& name, int& l, int& i) {
    if (name.rfind("x_", 0) != 0) {
        return false;
    }
    const auto sep = name.find('_', 2);
    l = std::stoi(name.substr(2, sep - 2));
    i = std::stoi(name.substr(sep + 1));
    return true;
}

// Depth-first feasibility over items in id order under an allowed-edge mask.
class Feasibility {
public:
    Feasibility(int lines, int items, const std::vector<ConstraintRow>& rows, const std::vector<int>& var_l,
                const std::vector<int>& var_i)
        : lines_(lines), items_(items), rows_(rows) {
        // Map each x variable to its linear rows (z-free rows only).
        x_rows_.resize(static_cast<std::size_t>(lines) * items);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            bool only_x = true;
            for (const auto& t : rows[r].terms) {
                only_x = only_x && var_l[t.var] >= 0;
            }
            if (!only_x) {
                continue;
            }
            constrained_.push_back(static_cast<int>(r));
            for (const auto& t : rows[r].terms) {
                x_rows_[var_l[t.var] * items + var_i[t.var]].push_back({static_cast<int>(r), t.coef});
            }
        }
    }

    bool run(const std::vector<char>& allowed, std::vector<int>& line_of_item) {
        allowed_ = &allowed;
        sum_.assign(rows_.size(), 0.0);
        potential_.assign(rows_.size(), 0.0);
        for (int l = 0; l < lines_; ++l) {
            for (int i = 0; i < items_; ++i) {
                if (allowed[l * items_ + i]) {
                    for (const auto& [r, c] : x_rows_[l * items_ + i]) {
                        potential_[r] += c;
                    }
                }
            }
        }
        line_of_item.assign(items_, -1);
        return dfs(0, line_of_item);
    }

private:
    bool consistent() const {
        for (int r : constrained_) {
            const auto& row = rows_[r];
            if (row.sense != Sense::GreaterEqual && sum_[r] > row.rhs + 1e-9) {
                return false;
            }
            if (row.sense != Sense::LessEqual && sum_[r] + potential_[r] < row.rhs - 1e-9) {
                return false;
            }
        }
        return true;
    }

    void release(int i, int sign) {
        for (int l = 0; l < lines_; ++l) {
            if ((*allowed_)[l * items_ + i]) {
                for (const auto& [r, c] : x_rows_[l * items_ + i]) {
                    potential_[r] -= sign * c;
                }
            }
        }
    }

    bool dfs(int i, std::vector<int>& line_of_item) {
        if (i == items_) {
            return consistent();
        }
        release(i, 1);
        for (int l = 0; l < lines_; ++l) {
            if (!(*allowed_)[l * items_ + i]) {
                continue;
            }
            for (const auto& [r, c] : x_rows_[l * items_ + i]) {
                sum_[r] += c;
            }
            line_of_item[i] = l;
            if (consistent() && dfs(i + 1, line_of_item)) {
                return true;
            }
            for (const auto& [r, c] : x_rows_[l * items_ + i]) {
                sum_[r] -= c;
            }
        }
        release(i, -1);
        line_of_item[i] = -1;
        return false;
    }

    int lines_;
    int items_;
    const std::vector<ConstraintRow>& rows_;
    std::vector<std::vector<std::pair<int, double>>> x_rows_;
    std::vector<int> constrained_;
    const std::vector<char>* allowed_ = nullptr;
    std::vector<double> sum_;
    std::vector<double> potential_;
};

}  // namespace

IpSolution solve_ip_exact_small(const IPModel& model) {
    const int vars = static_cast<int>(model.var_names.size());
    std::vector<int> var_l(vars, -1);
    std::vector<int> var_i(vars, -1);
    int lines = 0;
    int items = 0;
    for (int v = 0; v < vars; ++v) {
        if (parse_x(model.var_names[v], var_l[v], var_i[v])) {
            lines = std::max(lines, var_l[v] + 1);
            items = std::max(items, var_i[v] + 1);
        }
    }
    if (lines > 8 || items > 24) {
        throw std::invalid_argument("solve_ip_exact_small: model exceeds 8 lines or 24 items");
    }
    IpSolution sol;
    if (items == 0) {
        return sol;
    }
    // Costs come from the linking rows; absent rows mean zero cost.
    std::vector<double> cost0(static_cast<std::size_t>(lines) * items, 0.0);
    std::vector<double> cost1 = cost0;
    for (const auto& row : model.rows) {
        const bool l0 = row.name.rfind("lin0_", 0) == 0;
        const bool l1 = row.name.rfind("lin1_", 0) == 0;
        if (!l0 && !l1) {
            continue;
        }
        for (const auto& t : row.terms) {
            if (var_l[t.var] >= 0) {
                (l0 ? cost0 : cost1)[var_l[t.var] * items + var_i[t.var]] = -t.coef;
            }
        }
    }
    std::vector<double> b0(cost0.begin(), cost0.end());
    std::vector<double> b1(cost1.begin(), cost1.end());
    for (auto* b : {&b0, &b1}) {
        std::sort(b->begin(), b->end());
        b->erase(std::unique(b->begin(), b->end()), b->end());
    }
    std::vector<std::pair<double, std::pair<double, double>>> pairs;
    for (double a : b0) {
        for (double b : b1) {
            pairs.push_back({a + b, {a, b}});
        }
    }
    std::sort(pairs.begin(), pairs.end());
    Feasibility feas(lines, items, model.rows, var_l, var_i);
    std::vector<char> allowed(cost0.size());
    for (const auto& [sum, bounds] : pairs) {
        for (std::size_t k = 0; k < cost0.size(); ++k) {
            allowed[k] = cost0[k] <= bounds.first && cost1[k] <= bounds.second;
        }
        if (feas.run(allowed, sol.line_of_item)) {
            double z0 = 0.0;
            double z1 = 0.0;
            for (int i = 0; i < items; ++i) {
                z0 = std::max(z0, cost0[sol.line_of_item[i] * items + i]);
                z1 = std::max(z1, cost1[sol.line_of_item[i] * items + i]);
            }
            sol.objective = z0 + z1;
            return sol;
        }
    }
    throw std::invalid_argument("solve_ip_exact_small: infeasible model");
}

double assignment_objective(const AbstractTable& table, RoundOrder order, const LineCostModel& model,
                            const std::vector<int>& line_of_item) {
    double z0 = 0.0;
    double z1 = 0.0;
    for (int i = 0; i < static_cast<int>(line_of_item.size()); ++i) {
        z0 = std::max(z0, line_cost(table, order, model, line_of_item[i], i, 0.0));
        z1 = std::max(z1, line_cost(table, order, model, line_of_item[i], i, 1.0));
    }
    return z0 + z1;
}

std::vector<int> assignment_of(const AbstractTable& table, RoundOrder order, const MatchingSet& matchings) {
    const auto groups = matching_line_groups(table, view_of(order).axis);
    std::vector<int> line(table.items().size(), -1);
    for (std::size_t m = 0; m < matchings.matchings.size(); ++m) {
        for (const auto& e : matchings.matchings[m]) {
            line[e.item] = groups[m];
        }
    }
    return line;
}

}  // namespace rtmapf
