#include "rtmapf/gadgets.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace rtmapf {

namespace {

constexpr int kCols = 2;

int neighbor(int cell, char d, int rows) {
    int r = cell / kCols;
    int c = cell % kCols;
    switch (d) {
        case 'U':
            --r;
            break;
        case 'D':
            ++r;
            break;
        case 'L':
            --c;
            break;
        case 'R':
            ++c;
            break;
        default:
            return cell;
    }
    if (r < 0 || r >= rows || c < 0 || c >= kCols) {
        return -1;
    }
    return r * kCols + c;
}

char dir_char(int from, int to) {
    if (to == from - kCols) {
        return 'U';
    }
    if (to == from + kCols) {
        return 'D';
    }
    return to == from - 1 ? 'L' : 'R';
}

// Directed simple cycles, each found once from its smallest vertex.
void find_cycles(int rows, int start, int v, std::vector<int>& path, std::vector<char>& on_path,
                 std::vector<std::vector<int>>& out) {
    for (char d : {'U', 'D', 'L', 'R'}) {
        const int w = neighbor(v, d, rows);
        if (w < 0) {
            continue;
        }
        if (w == start && path.size() >= 3) {
            out.push_back(path);
        } else if (w > start && !on_path[w]) {
            on_path[w] = 1;
            path.push_back(w);
            find_cycles(rows, start, w, path, on_path, out);
            path.pop_back();
            on_path[w] = 0;
        }
    }
}

// Every non-empty set of vertex-disjoint directed cycles as a move string.
std::vector<std::string> step_moves(int rows) {
    const int cells = rows * kCols;
    std::vector<std::vector<int>> cycles;
    for (int s = 0; s < cells; ++s) {
        std::vector<int> path{s};
        std::vector<char> on_path(cells, 0);
        on_path[s] = 1;
        find_cycles(rows, s, s, path, on_path, cycles);
    }
    std::vector<std::string> moves;
    std::string current(cells, '.');
    auto rec = [&](auto&& self, std::size_t k) -> void {
        if (k == cycles.size()) {
            if (current != std::string(cells, '.')) {
                moves.push_back(current);
            }
            return;
        }
        self(self, k + 1);
        const auto& cyc = cycles[k];
        for (int v : cyc) {
            if (current[v] != '.') {
                return;
            }
        }
        for (std::size_t i = 0; i < cyc.size(); ++i) {
            current[cyc[i]] = dir_char(cyc[i], cyc[(i + 1) % cyc.size()]);
        }
        self(self, k + 1);
        for (int v : cyc) {
            current[v] = '.';
        }
    };
    rec(rec, 0);
    return moves;
}

std::string apply_move(const std::string& state, const std::string& move, int rows) {
    std::string next = state;
    for (std::size_t c = 0; c < move.size(); ++c) {
        if (move[c] != '.') {
            next[neighbor(static_cast<int>(c), move[c], rows)] = state[c];
        }
    }
    return next;
}

std::vector<GadgetScript> solve_shape(int rows) {
    const int cells = rows * kCols;
    const auto moves = step_moves(rows);
    std::string start(cells, 'a');
    for (int c = 0; c < cells; ++c) {
        start[c] = static_cast<char>('a' + c);
    }
    std::map<std::string, std::pair<std::string, int>> parent;
    parent[start] = {"", -1};
    std::queue<std::string> q;
    q.push(start);
    while (!q.empty()) {
        const auto s = q.front();
        q.pop();
        for (int m = 0; m < static_cast<int>(moves.size()); ++m) {
            auto next = apply_move(s, moves[m], rows);
            if (parent.emplace(next, std::make_pair(s, m)).second) {
                q.push(std::move(next));
            }
        }
    }
    std::vector<GadgetScript> out;
    for (unsigned subset = 0; subset < (1u << rows); ++subset) {
        std::string target = start;
        for (int r = 0; r < rows; ++r) {
            if (subset & (1u << r)) {
                std::swap(target[r * kCols], target[r * kCols + 1]);
            }
        }
        auto it = parent.find(target);
        if (it == parent.end()) {
            throw std::logic_error("gadget target unreachable");
        }
        GadgetScript script{rows, subset, {}};
        while (it->second.second >= 0) {
            script.steps.push_back(moves[it->second.second]);
            it = parent.find(it->second.first);
        }
        std::reverse(script.steps.begin(), script.steps.end());
        out.push_back(std::move(script));
    }
    return out;
}

}  // namespace

const GadgetScript& GadgetTable::get(int rows, unsigned subset) const {
    if (rows == 3) {
        return three.at(subset);
    }
    if (rows == 4) {
        return four.at(subset);
    }
    throw std::invalid_argument("gadgets exist only for 3x2 and 4x2 blocks");
}

GadgetTable compute_gadget_tables() { return {solve_shape(3), solve_shape(4)}; }

const GadgetTable& gadget_tables() {
    static const GadgetTable table = compute_gadget_tables();
    return table;
}

std::string gadget_table_text(const GadgetTable& table) {
    std::ostringstream os;
    os << "rtmapf-gadgets v1\n";
    for (const auto* shape : {&table.three, &table.four}) {
        if (shape->empty()) {
            continue;
        }
        os << "shape " << shape->front().rows << " 2 subsets " << shape->size() << '\n';
        for (const auto& s : *shape) {
            os << "subset " << s.subset << " length " << s.length() << '\n';
            for (const auto& st : s.steps) {
                os << "step " << st << '\n';
            }
        }
    }
    return os.str();
}

GadgetTable parse_gadget_table(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != "rtmapf-gadgets v1") {
        throw std::runtime_error("gadget table: bad header");
    }
    GadgetTable table;
    std::vector<GadgetScript>* shape = nullptr;
    int rows = 0;
    std::string word;
    while (is >> word) {
        if (word == "shape") {
            int cols = 0;
            std::string tag;
            int count = 0;
            is >> rows >> cols >> tag >> count;
            shape = rows == 3 ? &table.three : rows == 4 ? &table.four : nullptr;
            if (!shape || cols != 2) {
                throw std::runtime_error("gadget table: unknown shape");
            }
        } else if (word == "subset" && shape) {
            GadgetScript s{rows, 0, {}};
            std::string tag;
            int length = 0;
            is >> s.subset >> tag >> length;
            for (int t = 0; t < length; ++t) {
                std::string st;
                is >> tag >> st;
                if (tag != "step" || static_cast<int>(st.size()) != rows * kCols) {
                    throw std::runtime_error("gadget table: bad step");
                }
                s.steps.push_back(st);
            }
            shape->push_back(std::move(s));
        } else {
            throw std::runtime_error("gadget table: unexpected token " + word);
        }
    }
    return table;
}

MotionScript gadget_motion(const GadgetScript& script, const std::vector<int>& robot_at_cell) {
    MotionScript out;
    std::vector<int> occupant = robot_at_cell;
    for (const auto& st : script.steps) {
        MotionStep step_moves;
        std::vector<int> next = occupant;
        for (int c = 0; c < static_cast<int>(st.size()); ++c) {
            if (st[c] == '.') {
                continue;
            }
            const Dir d = st[c] == 'U' ? Dir::Up : st[c] == 'D' ? Dir::Down : st[c] == 'L' ? Dir::Left : Dir::Right;
            step_moves.push_back({occupant[c], d});
            next[neighbor(c, st[c], script.rows)] = occupant[c];
        }
        occupant = std::move(next);
        out.steps.push_back(std::move(step_moves));
    }
    return out;
}

}  // namespace rtmapf
