#include "rtmapf/flow_router.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rtmapf {

int SinkSpec::total_capacity() const {
    if (groups.empty()) {
        return static_cast<int>(cells.size());
    }
    int total = 0;
    for (const auto& g : groups) {
        total += std::min<int>(g.capacity, static_cast<int>(g.cells.size()));
    }
    return total;
}

namespace {

// Dinic's algorithm over an arc list; arc 2k is forward, 2k+1 its reverse.
class FlowNetwork {
public:
    int add_node() {
        head_.push_back(-1);
        return static_cast<int>(head_.size()) - 1;
    }
    void reserve(std::size_t nodes, std::size_t arcs) {
        head_.reserve(nodes);
        to_.reserve(2 * arcs);
        cap_.reserve(2 * arcs);
        next_.reserve(2 * arcs);
    }
    int add_arc(int u, int v, int cap) {
        const int id = static_cast<int>(to_.size());
        push(u, v, cap);
        push(v, u, 0);
        return id;
    }
    int node_count() const { return static_cast<int>(head_.size()); }
    int arc_count() const { return static_cast<int>(to_.size()); }
    int to(int arc) const { return to_[arc]; }
    int residual(int arc) const { return cap_[arc]; }
    int first(int node) const { return head_[node]; }
    int next(int arc) const { return next_[arc]; }
    // Flow on a forward arc.
    int flow(int arc) const { return cap_[arc ^ 1]; }

    int max_flow(int s, int t) {
        int total = 0;
        level_.assign(head_.size(), -1);
        it_.assign(head_.size(), -1);
        while (bfs(s, t)) {
            for (std::size_t v = 0; v < head_.size(); ++v) {
                it_[v] = head_[v];
            }
            while (int f = augment(s, t)) {
                total += f;
            }
        }
        return total;
    }

private:
    void push(int u, int v, int cap) {
        to_.push_back(v);
        cap_.push_back(cap);
        next_.push_back(head_[u]);
        head_[u] = static_cast<int>(to_.size()) - 1;
    }

    bool bfs(int s, int t) {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<int> q;
        level_[s] = 0;
        q.push(s);
        while (!q.empty()) {
            const int u = q.front();
            q.pop();
            for (int a = head_[u]; a >= 0; a = next_[a]) {
                if (cap_[a] > 0 && level_[to_[a]] < 0) {
                    level_[to_[a]] = level_[u] + 1;
                    q.push(to_[a]);
                }
            }
        }
        return level_[t] >= 0;
    }

    // One augmenting path along the level graph (iterative DFS).
    int augment(int s, int t) {
        std::vector<int> path;  // arcs
        int u = s;
        while (true) {
            if (u == t) {
                int f = std::numeric_limits<int>::max();
                for (int a : path) {
                    f = std::min(f, cap_[a]);
                }
                for (int a : path) {
                    cap_[a] -= f;
                    cap_[a ^ 1] += f;
                }
                return f;
            }
            int& a = it_[u];
            while (a >= 0 && !(cap_[a] > 0 && level_[to_[a]] == level_[u] + 1)) {
                a = next_[a];
            }
            if (a >= 0) {
                path.push_back(a);
                u = to_[a];
                continue;
            }
            // Dead end: retreat.
            level_[u] = -1;
            if (path.empty()) {
                return 0;
            }
            const int back = path.back();
            path.pop_back();
            u = to_[back ^ 1];
            it_[u] = next_[it_[u]];
        }
    }

    std::vector<int> head_;
    std::vector<int> to_;
    std::vector<int> cap_;
    std::vector<int> next_;
    std::vector<int> level_;
    std::vector<int> it_;
};

struct Layout {
    std::vector<int> local;              // grid index -> free-cell id or -1
    std::vector<Position> cells;         // free-cell id -> position
    std::vector<std::pair<int, int>> edges;  // free-cell ids, first < second
};

Layout make_layout(const GridMap& grid) {
    Layout l;
    l.local.assign(grid.cell_count(), -1);
    for (int i = 0; i < grid.cell_count(); ++i) {
        const Position p = grid.position(i);
        if (!grid.blocked(p)) {
            l.local[i] = static_cast<int>(l.cells.size());
            l.cells.push_back(p);
        }
    }
    for (int c = 0; c < static_cast<int>(l.cells.size()); ++c) {
        const Position p = l.cells[c];
        for (Position q : {Position{p.x + 1, p.y}, Position{p.x, p.y + 1}}) {
            if (grid.free(q)) {
                l.edges.push_back({c, l.local[grid.index(q)]});
            }
        }
    }
    return l;
}

// Node numbering: in(v,t) = 2(tC+v), out(v,t) = in + 1; edge gadgets after
// all vertex nodes; then source, sink and group nodes.
struct Expanded {
    FlowNetwork net;
    int C = 0;
    int E = 0;
    int T = 0;
    int source = 0;
    int sink = 0;
    int in(int v, int t) const { return 2 * (t * C + v); }
    int out(int v, int t) const { return in(v, t) + 1; }
    int gadget_a(int e, int t) const { return 2 * C * (T + 1) + 2 * (t * E + e); }
    int vertex_nodes() const { return 2 * C * (T + 1); }
    int gadget_nodes() const { return 2 * E * T; }
};

void build(Expanded& x, const GridMap& grid, const Layout& l, const Configuration& starts, const SinkSpec& sinks,
           int horizon) {
    x.C = static_cast<int>(l.cells.size());
    x.E = static_cast<int>(l.edges.size());
    x.T = horizon;
    const std::size_t nodes = static_cast<std::size_t>(x.vertex_nodes()) + x.gadget_nodes() + 2 + sinks.groups.size();
    const std::size_t arcs = static_cast<std::size_t>(x.C) * (2 * horizon + 1) + 5ull * x.E * horizon +
                             starts.size() + l.cells.size() + 2 * sinks.groups.size();
    x.net.reserve(nodes, arcs);
    for (std::size_t k = 0; k < nodes; ++k) {
        x.net.add_node();
    }
    x.source = x.vertex_nodes() + x.gadget_nodes();
    x.sink = x.source + 1;
    // Arc insertion order fixes the search order: waits first, then edges.
    for (int t = 0; t <= horizon; ++t) {
        for (int v = 0; v < x.C; ++v) {
            x.net.add_arc(x.in(v, t), x.out(v, t), 1);
        }
    }
    for (int t = 0; t < horizon; ++t) {
        for (int v = 0; v < x.C; ++v) {
            x.net.add_arc(x.out(v, t), x.in(v, t + 1), 1);
        }
        for (int e = 0; e < x.E; ++e) {
            const auto [u, v] = l.edges[e];
            const int a = x.gadget_a(e, t);
            x.net.add_arc(x.out(u, t), a, 1);
            x.net.add_arc(x.out(v, t), a, 1);
            x.net.add_arc(a, a + 1, 1);
            x.net.add_arc(a + 1, x.in(u, t + 1), 1);
            x.net.add_arc(a + 1, x.in(v, t + 1), 1);
        }
    }
    for (const auto& s : starts) {
        x.net.add_arc(x.source, x.in(l.local[grid.index(s)], 0), 1);
    }
    if (sinks.groups.empty()) {
        for (const auto& g : sinks.cells) {
            x.net.add_arc(x.out(l.local[grid.index(g)], horizon), x.sink, 1);
        }
    } else {
        for (std::size_t k = 0; k < sinks.groups.size(); ++k) {
            const int node = x.sink + 1 + static_cast<int>(k);
            for (const auto& g : sinks.groups[k].cells) {
                x.net.add_arc(x.out(l.local[grid.index(g)], horizon), node, 1);
            }
            x.net.add_arc(node, x.sink, sinks.groups[k].capacity);
        }
    }
}

// Follows one unit of flow from a start, consuming it.
std::vector<Position> decode(Expanded& x, const Layout& l, int start_cell, std::vector<int>& used) {
    std::vector<Position> path{l.cells[start_cell]};
    int v = start_cell;
    for (int t = 0; t < x.T; ++t) {
        const int u = x.out(v, t);
        int nxt = -1;
        for (int a = x.net.first(u); a >= 0; a = x.net.next(a)) {
            if ((a & 1) == 0 && x.net.flow(a) - used[a / 2] > 0) {
                ++used[a / 2];
                nxt = x.net.to(a);
                break;
            }
        }
        if (nxt < 0) {
            throw std::logic_error("flow decode: broken path");
        }
        if (nxt >= x.vertex_nodes()) {
            // Through an edge gadget: a -> b -> in(w, t+1); a -> b carries one unit.
            const int b = nxt + 1;
            int target = -1;
            for (int a = x.net.first(b); a >= 0; a = x.net.next(a)) {
                if ((a & 1) == 0 && x.net.flow(a) - used[a / 2] > 0) {
                    ++used[a / 2];
                    target = x.net.to(a);
                    break;
                }
            }
            nxt = target;
        }
        v = (nxt / 2) % x.C;
        path.push_back(l.cells[v]);
    }
    return path;
}

void check_inputs(const GridMap& grid, const Configuration& starts, const SinkSpec& sinks) {
    if (auto v = validate_configuration(grid, starts)) {
        throw std::invalid_argument("invalid start configuration: " + describe(*v));
    }
    auto check_cell = [&](Position p) {
        if (!grid.free(p)) {
            throw std::invalid_argument("sink cell outside the free grid");
        }
    };
    for (const auto& c : sinks.cells) {
        check_cell(c);
    }
    for (const auto& g : sinks.groups) {
        for (const auto& c : g.cells) {
            check_cell(c);
        }
    }
    if (sinks.total_capacity() < static_cast<int>(starts.size())) {
        throw std::invalid_argument("sink capacity below robot count");
    }
}

int distance_lower_bound(const GridMap& grid, const Configuration& starts, const SinkSpec& sinks) {
    std::vector<int> dist(grid.cell_count(), -1);
    std::queue<Position> q;
    auto seed = [&](Position p) {
        if (dist[grid.index(p)] < 0) {
            dist[grid.index(p)] = 0;
            q.push(p);
        }
    };
    for (const auto& c : sinks.cells) {
        if (sinks.groups.empty()) {
            seed(c);
        }
    }
    for (const auto& g : sinks.groups) {
        for (const auto& c : g.cells) {
            seed(c);
        }
    }
    while (!q.empty()) {
        const Position p = q.front();
        q.pop();
        for (Position n : {Position{p.x - 1, p.y}, Position{p.x + 1, p.y}, Position{p.x, p.y - 1},
                           Position{p.x, p.y + 1}}) {
            if (grid.free(n) && dist[grid.index(n)] < 0) {
                dist[grid.index(n)] = dist[grid.index(p)] + 1;
                q.push(n);
            }
        }
    }
    int lb = 0;
    for (const auto& s : starts) {
        const int d = dist[grid.index(s)];
        if (d < 0) {
            return -1;
        }
        lb = std::max(lb, d);
    }
    return lb;
}

}  // namespace

bool route_with_horizon(const GridMap& grid, const Configuration& starts, const SinkSpec& sinks, int horizon,
                        FlowResult* result) {
    const Layout l = make_layout(grid);
    Expanded x;
    build(x, grid, l, starts, sinks, horizon);
    const int n = static_cast<int>(starts.size());
    if (x.net.max_flow(x.source, x.sink) != n) {
        return false;
    }
    if (result) {
        std::vector<int> used(x.net.arc_count() / 2, 0);
        result->plan.paths.clear();
        result->endpoints.clear();
        for (const auto& s : starts) {
            result->plan.paths.push_back(decode(x, l, l.local[grid.index(s)], used));
            result->endpoints.push_back(result->plan.paths.back().back());
        }
        result->horizon = horizon;
    }
    return true;
}

FlowResult min_makespan_unlabeled(const GridMap& grid, const Configuration& starts, const SinkSpec& sinks,
                                  const FlowOptions& options) {
    check_inputs(grid, starts, sinks);
    const int n = static_cast<int>(starts.size());
    const int cap = options.max_horizon >= 0 ? options.max_horizon : grid.cell_count() + n;
    FlowResult result;
    if (n == 0) {
        return result;
    }
    const int lb = distance_lower_bound(grid, starts, sinks);
    if (lb < 0 || lb > cap) {
        throw std::runtime_error("unlabeled routing infeasible: some robot cannot reach any sink");
    }
    if (!options.binary_search) {
        for (int t = lb; t <= cap; ++t) {
            if (route_with_horizon(grid, starts, sinks, t, &result)) {
                return result;
            }
        }
        throw std::runtime_error("unlabeled routing infeasible within the horizon cap");
    }
    // Galloping upward then bisection; feasibility is monotone in the horizon.
    int lo = lb;
    int hi = lb;
    int step = 1;
    while (!route_with_horizon(grid, starts, sinks, hi, nullptr)) {
        if (hi >= cap) {
            throw std::runtime_error("unlabeled routing infeasible within the horizon cap");
        }
        lo = hi + 1;
        hi = std::min(cap, hi + step);
        step *= 2;
    }
    while (lo < hi) {
        const int mid = lo + (hi - lo) / 2;
        if (route_with_horizon(grid, starts, sinks, mid, nullptr)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    route_with_horizon(grid, starts, sinks, hi, &result);
    return result;
}

FlowResult balanced_targets(const GridMap& grid, const Configuration& starts, const std::vector<SinkGroup>& groups) {
    SinkSpec spec;
    spec.groups = groups;
    return min_makespan_unlabeled(grid, starts, spec);
}

int brute_force_unlabeled_optimal(const GridMap& grid, const Configuration& starts, const Configuration& goals) {
    const int cells = grid.cell_count();
    const int n = static_cast<int>(starts.size());
    if (cells > 12 || n > 4 || goals.size() != starts.size()) {
        throw std::invalid_argument("brute force limited to 12 cells and 4 robots");
    }
    auto mask_of = [&](const Configuration& c) {
        unsigned m = 0;
        for (const auto& p : c) {
            m |= 1u << grid.index(p);
        }
        return m;
    };
    const unsigned goal = mask_of(goals);
    std::vector<int> dist(1u << cells, -1);
    std::queue<unsigned> q;
    dist[mask_of(starts)] = 0;
    q.push(mask_of(starts));
    const std::vector<Position> deltas = {{0, 0}, {-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    while (!q.empty()) {
        const unsigned m = q.front();
        q.pop();
        if (m == goal) {
            return dist[m];
        }
        Configuration from;
        for (int i = 0; i < cells; ++i) {
            if (m & (1u << i)) {
                from.push_back(grid.position(i));
            }
        }
        int combos = 1;
        for (int k = 0; k < n; ++k) {
            combos *= 5;
        }
        for (int code = 0; code < combos; ++code) {
            Configuration to(n);
            bool inside = true;
            int c = code;
            for (int k = 0; k < n && inside; ++k) {
                to[k] = {from[k].x + deltas[c % 5].x, from[k].y + deltas[c % 5].y};
                c /= 5;
                inside = grid.in_bounds(to[k]);
            }
            if (!inside || validate_step(grid, from, to)) {
                continue;
            }
            const unsigned next = mask_of(to);
            if (dist[next] < 0) {
                dist[next] = dist[m] + 1;
                q.push(next);
            }
        }
    }
    throw std::runtime_error("goal configuration unreachable");
}

std::string dump_time_expanded_graph(const GridMap& grid, const Configuration& starts, const SinkSpec& sinks,
                                     int horizon) {
    const Layout l = make_layout(grid);
    Expanded x;
    build(x, grid, l, starts, sinks, horizon);
    std::ostringstream os;
    for (int t = 0; t <= horizon; ++t) {
        for (int v = 0; v < x.C; ++v) {
            os << "node " << x.in(v, t) << " in " << l.cells[v].x << ' ' << l.cells[v].y << ' ' << t << '\n';
            os << "node " << x.out(v, t) << " out " << l.cells[v].x << ' ' << l.cells[v].y << ' ' << t << '\n';
        }
    }
    for (int t = 0; t < horizon; ++t) {
        for (int e = 0; e < x.E; ++e) {
            const Position p = l.cells[l.edges[e].first];
            os << "node " << x.gadget_a(e, t) << " edge " << p.x << ' ' << p.y << ' ' << t << '\n';
            os << "node " << x.gadget_a(e, t) + 1 << " edge " << p.x << ' ' << p.y << ' ' << t << '\n';
        }
    }
    os << "node " << x.source << " source 0 0 0\n";
    os << "node " << x.sink << " sink 0 0 " << horizon << '\n';
    for (int a = 0; a < x.net.arc_count(); a += 2) {
        os << "arc " << x.net.to(a + 1) << ' ' << x.net.to(a) << ' ' << x.net.residual(a) << '\n';
    }
    return os.str();
}

}  // namespace rtmapf
