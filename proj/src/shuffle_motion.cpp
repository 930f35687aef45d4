#include "rtmapf/shuffle_motion.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace rtmapf {

namespace {

std::vector<int> gadget_groups(int lines) {
    std::vector<int> sizes;
    int fours = 0;
    if (lines % 3 == 1) {
        fours = 1;
    } else if (lines % 3 == 2) {
        fours = 2;
    }
    if (lines < 3 || lines < 4 * fours) {
        throw std::invalid_argument("odd-even shuffle needs a perpendicular size other than 1, 2 or 5");
    }
    const int threes = (lines - 4 * fours) / 3;
    sizes.assign(threes, 3);
    sizes.insert(sizes.end(), fours, 4);
    return sizes;
}

// Row frame: every robot sorts along its row.
MotionScript odd_even_rows(int rows, int cols, const Configuration& config, const std::vector<int>& target) {
    const auto groups = gadget_groups(rows);
    std::vector<std::vector<int>> occ(rows, std::vector<int>(cols, -1));
    for (int i = 0; i < static_cast<int>(config.size()); ++i) {
        auto& slot = occ[config[i].x - 1][config[i].y - 1];
        if (slot >= 0) {
            throw std::invalid_argument("odd-even shuffle: two robots share a cell");
        }
        slot = i;
    }
    for (int r = 0; r < rows; ++r) {
        std::vector<int> seen(cols, 0);
        for (int c = 0; c < cols; ++c) {
            if (occ[r][c] < 0) {
                throw std::invalid_argument("odd-even shuffle: grid must be fully occupied");
            }
            const int t = target[occ[r][c]];
            if (t < 1 || t > cols || seen[t - 1]++) {
                throw std::invalid_argument("odd-even shuffle: targets must permute each line");
            }
        }
    }
    const auto& table = gadget_tables();
    auto is_sorted = [&] {
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                if (target[occ[r][c]] != c + 1) {
                    return false;
                }
            }
        }
        return true;
    };
    MotionScript out;
    for (int phase = 0; !is_sorted(); ++phase) {
        if (phase > cols) {
            throw std::logic_error("odd-even shuffle did not converge");
        }
        MotionScript step_script;
        for (int c = phase % 2; c + 1 < cols; c += 2) {
            int top = 0;
            for (int size : groups) {
                unsigned subset = 0;
                std::vector<int> robots;
                for (int k = 0; k < size; ++k) {
                    const int a = occ[top + k][c];
                    const int b = occ[top + k][c + 1];
                    robots.push_back(a);
                    robots.push_back(b);
                    if (target[a] > target[b]) {
                        subset |= 1u << k;
                        std::swap(occ[top + k][c], occ[top + k][c + 1]);
                    }
                }
                if (subset != 0) {
                    merge_parallel(step_script, gadget_motion(table.get(size, subset), robots));
                }
                top += size;
            }
        }
        append(out, step_script);
    }
    return out;
}

}  // namespace

MotionScript odd_even_line_shuffle(const GridMap& grid, const Configuration& config, const std::vector<int>& target,
                                   LineKind axis) {
    if (!grid.obstacles().empty()) {
        throw std::invalid_argument("odd-even shuffle: obstacles are not supported");
    }
    if (static_cast<int>(config.size()) != grid.cell_count() || target.size() != config.size()) {
        throw std::invalid_argument("odd-even shuffle: grid must be fully occupied");
    }
    if (axis == LineKind::Row) {
        return odd_even_rows(grid.rows(), grid.cols(), config, target);
    }
    Configuration t(config.size());
    std::transform(config.begin(), config.end(), t.begin(), [](Position p) { return transposed(p); });
    MotionScript script = odd_even_rows(grid.cols(), grid.rows(), t, target);
    for (auto& s : script.steps) {
        for (auto& m : s) {
            m.dir = transposed(m.dir);
        }
    }
    return script;
}

namespace {

// Direction of travel along the band axis and toward a given side line.
Dir along(const Band& band, bool increasing) {
    if (band.axis == LineKind::Row) {
        return increasing ? Dir::Right : Dir::Left;
    }
    return increasing ? Dir::Down : Dir::Up;
}

Dir across(const Band& band, bool toward_higher_line) {
    if (band.axis == LineKind::Row) {
        return toward_higher_line ? Dir::Down : Dir::Up;
    }
    return toward_higher_line ? Dir::Right : Dir::Left;
}

int line_of(const Band& band, Position p) { return band.axis == LineKind::Row ? p.x : p.y; }
int coord_of(const Band& band, Position p) { return band.axis == LineKind::Row ? p.y : p.x; }

}  // namespace

MotionScript highway_shuffle(const GridMap& grid, const Configuration& config, const Band& band,
                             const std::vector<int>& robots, const std::vector<int>& target) {
    if (band.width != 3 || robots.size() != target.size()) {
        throw std::invalid_argument("highway shuffle: needs a 3-wide band and one target per robot");
    }
    const int center = band.center();
    std::vector<char> taken(band.length(), 0);
    int longest = 0;
    for (std::size_t k = 0; k < robots.size(); ++k) {
        const Position p = config[robots[k]];
        if (line_of(band, p) != center || coord_of(band, p) < band.begin || coord_of(band, p) > band.end) {
            throw std::invalid_argument("highway shuffle: robot not on the band's center line");
        }
        const int t = target[k];
        if (t < band.begin || t > band.end || !grid.free(band.at(center, t)) || taken[t - band.begin]++) {
            throw std::invalid_argument("highway shuffle: targets must be distinct free center cells");
        }
        longest = std::max(longest, std::abs(t - coord_of(band, p)));
    }
    MotionScript out;
    if (longest == 0) {
        return out;
    }
    out.steps.resize(longest + 2);
    for (std::size_t k = 0; k < robots.size(); ++k) {
        const int from = coord_of(band, config[robots[k]]);
        const int d = target[k] - from;
        if (d == 0) {
            continue;
        }
        const bool inc = d > 0;
        const int dist = std::abs(d);
        out.steps[0].push_back({robots[k], across(band, inc)});
        for (int s = 1; s <= dist; ++s) {
            out.steps[s].push_back({robots[k], along(band, inc)});
        }
        out.steps[dist + 1].push_back({robots[k], across(band, !inc)});
    }
    return out;
}

std::vector<int> assign_slots(const std::vector<int>& origin, const std::vector<int>& cell_of,
                              const std::vector<std::vector<int>>& cell_slots) {
    const int n = static_cast<int>(origin.size());
    std::vector<int> result(n, 0);
    std::vector<std::vector<int>> by_cell(cell_slots.size());
    for (int k = 0; k < n; ++k) {
        by_cell.at(cell_of[k]).push_back(k);
    }
    for (std::size_t c = 0; c < cell_slots.size(); ++c) {
        auto& members = by_cell[c];
        if (members.empty()) {
            continue;
        }
        std::vector<int> slots = cell_slots[c];
        std::sort(slots.begin(), slots.end());
        if (members.size() > slots.size()) {
            throw std::invalid_argument("assign_slots: cell over capacity");
        }
        std::vector<char> used(slots.size(), 0);
        std::vector<int> arrivals;
        for (int k : members) {
            auto it = std::find(slots.begin(), slots.end(), origin[k]);
            if (it != slots.end()) {
                used[it - slots.begin()] = 1;
                result[k] = origin[k];
            } else {
                arrivals.push_back(k);
            }
        }
        std::stable_sort(arrivals.begin(), arrivals.end(), [&](int a, int b) { return origin[a] < origin[b]; });
        std::size_t s = 0;
        for (int k : arrivals) {
            while (used[s]) {
                ++s;
            }
            used[s] = 1;
            result[k] = slots[s];
        }
    }
    return result;
}

MotionScript linear_merge_shuffle(const GridMap& grid, const Configuration& config, const Band& band,
                                  const std::vector<int>& robots, const std::vector<int>& target) {
    if (band.width != 2 || robots.size() != target.size()) {
        throw std::invalid_argument("linear merge: needs a 2-wide band and one target per robot");
    }
    const int len = band.length();
    const int line1 = band.first_line;
    // occ[j]: robot at local coordinate j of line 1; virtual robots are negative.
    std::vector<int> occ(len, 0);
    std::vector<char> filled(len, 0);
    std::vector<char> aimed(len, 0);
    std::map<int, int> goal;
    for (std::size_t k = 0; k < robots.size(); ++k) {
        const Position p = config[robots[k]];
        const int j = coord_of(band, p) - band.begin;
        const int t = target[k] - band.begin;
        if (line_of(band, p) != line1 || j < 0 || j >= len || filled[j]) {
            throw std::invalid_argument("linear merge: robot not on the band's first line");
        }
        if (t < 0 || t >= len || aimed[t] || !grid.free(band.at(line1, target[k]))) {
            throw std::invalid_argument("linear merge: targets must be distinct free cells");
        }
        filled[j] = 1;
        aimed[t] = 1;
        occ[j] = robots[k];
        goal[robots[k]] = t;
    }
    for (int j = 0; j < len; ++j) {
        if (!grid.free(band.at(line1, band.begin + j)) || !grid.free(band.at(line1 + 1, band.begin + j))) {
            throw std::invalid_argument("linear merge: band must be obstacle-free");
        }
    }
    // Virtual robots fill the gaps, keeping their left-to-right order.
    {
        int next_free = 0;
        int virtual_id = -1;
        for (int j = 0; j < len; ++j) {
            if (filled[j]) {
                continue;
            }
            while (aimed[next_free]) {
                ++next_free;
            }
            aimed[next_free] = 1;
            occ[j] = virtual_id;
            goal[virtual_id] = next_free;
            --virtual_id;
        }
    }

    // Merge tree: segments (lo, mid, hi) grouped by depth.
    std::vector<std::vector<std::array<int, 3>>> levels;
    auto split = [&](auto&& self, int lo, int hi, std::size_t depth) -> void {
        if (hi - lo < 2) {
            return;
        }
        const int mid = lo + (hi - lo + 1) / 2;
        if (levels.size() <= depth) {
            levels.resize(depth + 1);
        }
        levels[depth].push_back({lo, mid, hi});
        self(self, lo, mid, depth + 1);
        self(self, mid, hi, depth + 1);
    };
    split(split, 0, len, 0);

    MotionScript out;
    const Dir left = along(band, false);
    const Dir right = along(band, true);
    const Dir down = across(band, true);
    const Dir up = across(band, false);
    for (auto level = levels.rbegin(); level != levels.rend(); ++level) {
        // final[j]: destination of the robot now at j after this level.
        std::vector<int> fin(len);
        std::iota(fin.begin(), fin.end(), 0);
        for (const auto& seg : *level) {
            std::vector<int> order(seg[2] - seg[0]);
            std::iota(order.begin(), order.end(), seg[0]);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return goal[occ[a]] < goal[occ[b]]; });
            for (std::size_t r = 0; r < order.size(); ++r) {
                fin[order[r]] = seg[0] + static_cast<int>(r);
            }
        }
        struct Mover {
            int robot;
            int cur;
            int fin;
            bool lower;  // travelling on the second line
            int segment_end;
        };
        std::vector<Mover> lefts;
        std::vector<Mover> rights;
        // Virtual robots are not on the grid: they neither move nor block.
        for (const auto& seg : *level) {
            for (int j = seg[0]; j < seg[2]; ++j) {
                if (occ[j] < 0) {
                    continue;
                }
                if (fin[j] < j) {
                    lefts.push_back({occ[j], j, fin[j], false, seg[2]});
                } else if (fin[j] > j) {
                    rights.push_back({occ[j], j, fin[j], false, seg[2]});
                }
            }
        }
        std::vector<int> next(len);
        for (int j = 0; j < len; ++j) {
            next[fin[j]] = occ[j];
        }
        std::size_t done = 0;
        const std::size_t total = lefts.size() + rights.size();
        bool first = true;
        while (done < total) {
            MotionStep step_moves;
            auto emit = [&](int robot, Dir d) { step_moves.push_back({robot, d}); };
            for (auto& m : rights) {
                if (m.cur == m.fin && !m.lower) {
                    continue;
                }
                if (first) {
                    emit(m.robot, down);
                    m.lower = true;
                } else if (m.cur < m.fin) {
                    emit(m.robot, right);
                    ++m.cur;
                } else {
                    bool blocked = false;
                    for (const auto& l : lefts) {
                        if (l.segment_end == m.segment_end && l.cur > m.cur && l.fin < m.cur) {
                            blocked = true;
                            break;
                        }
                    }
                    if (!blocked) {
                        emit(m.robot, up);
                        m.lower = false;
                        ++done;
                    }
                }
            }
            for (auto& l : lefts) {
                if (l.cur > l.fin) {
                    emit(l.robot, left);
                    if (--l.cur == l.fin) {
                        ++done;
                    }
                }
            }
            first = false;
            out.steps.push_back(std::move(step_moves));
        }
        occ = std::move(next);
    }
    return out;
}

namespace {

struct BlockKey {
    int height;
    int width;
    unsigned obstacles;
    std::vector<int> robots;
    unsigned slots;

    bool operator<(const BlockKey& o) const {
        return std::tie(height, width, obstacles, robots, slots) <
               std::tie(o.height, o.width, o.obstacles, o.robots, o.slots);
    }
};

// Per step, the direction of each robot (index into key.robots) or -1 to wait.
using BlockPlan = std::vector<std::vector<int>>;

BlockPlan solve_block(const BlockKey& key) {
    const int cells = key.height * key.width;
    const int k = static_cast<int>(key.robots.size());
    auto encode = [&](const std::vector<int>& pos) {
        int code = 0;
        for (int p : pos) {
            code = code * cells + p;
        }
        return code;
    };
    auto neighbor = [&](int c, int d) {
        int r = c / key.width;
        int col = c % key.width;
        r += d == 0 ? -1 : d == 1 ? 1 : 0;
        col += d == 2 ? -1 : d == 3 ? 1 : 0;
        if (r < 0 || r >= key.height || col < 0 || col >= key.width) {
            return -1;
        }
        const int n = r * key.width + col;
        return (key.obstacles >> n) & 1u ? -1 : n;
    };
    std::map<int, std::pair<int, std::vector<int>>> parent;
    std::vector<std::vector<int>> frontier{key.robots};
    parent[encode(key.robots)] = {-1, {}};
    auto is_goal = [&](const std::vector<int>& pos) {
        return std::all_of(pos.begin(), pos.end(), [&](int p) { return (key.slots >> p) & 1u; });
    };
    std::vector<int> found;
    bool ok = is_goal(key.robots);
    if (ok) {
        found = key.robots;
    }
    while (!ok && !frontier.empty()) {
        std::vector<std::vector<int>> next_frontier;
        for (const auto& pos : frontier) {
            std::vector<int> choice(k, -1);
            std::vector<int> dest(k);
            auto rec = [&](auto&& self, int i) -> bool {
                if (i == k) {
                    for (int a = 0; a < k; ++a) {
                        for (int b = a + 1; b < k; ++b) {
                            if (dest[a] == dest[b] || (dest[a] == pos[b] && dest[b] == pos[a])) {
                                return false;
                            }
                        }
                    }
                    const int code = encode(dest);
                    if (parent.count(code)) {
                        return false;
                    }
                    parent[code] = {encode(pos), choice};
                    if (is_goal(dest)) {
                        found = dest;
                        return true;
                    }
                    next_frontier.push_back(dest);
                    return false;
                }
                for (int d = -1; d < 4; ++d) {
                    const int to = d < 0 ? pos[i] : neighbor(pos[i], d);
                    if (to < 0) {
                        continue;
                    }
                    choice[i] = d;
                    dest[i] = to;
                    if (self(self, i + 1)) {
                        return true;
                    }
                }
                return false;
            };
            if (rec(rec, 0)) {
                ok = true;
                break;
            }
        }
        frontier = std::move(next_frontier);
    }
    if (!ok) {
        throw std::invalid_argument("center_within_cells: slots unreachable inside the block");
    }
    BlockPlan plan;
    for (int code = encode(found); parent[code].first >= 0; code = parent[code].first) {
        plan.push_back(parent[code].second);
    }
    std::reverse(plan.begin(), plan.end());
    return plan;
}

const BlockPlan& cached_block_plan(const BlockKey& key) {
    static std::mutex mu;
    static std::map<BlockKey, BlockPlan> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, solve_block(key)).first;
    }
    return it->second;
}

}  // namespace

MotionScript center_within_cells(const GridMap& grid, const Configuration& config,
                                 const std::vector<CellBlock>& blocks) {
    std::vector<int> block_of(grid.cell_count(), -1);
    for (int b = 0; b < static_cast<int>(blocks.size()); ++b) {
        const auto& blk = blocks[b];
        if (blk.height * blk.width > 16) {
            throw std::invalid_argument("center_within_cells: block too large");
        }
        for (int r = 0; r < blk.height; ++r) {
            for (int c = 0; c < blk.width; ++c) {
                block_of[grid.index({blk.top + r, blk.left + c})] = b;
            }
        }
    }
    std::vector<std::vector<std::pair<int, int>>> members(blocks.size());
    for (int i = 0; i < static_cast<int>(config.size()); ++i) {
        const int b = block_of[grid.index(config[i])];
        if (b >= 0) {
            const auto& blk = blocks[b];
            members[b].push_back({(config[i].x - blk.top) * blk.width + (config[i].y - blk.left), i});
        }
    }
    MotionScript out;
    for (std::size_t b = 0; b < blocks.size(); ++b) {
        const auto& blk = blocks[b];
        auto& mem = members[b];
        if (mem.empty()) {
            continue;
        }
        if (mem.size() > blk.slots.size()) {
            throw std::invalid_argument("center_within_cells: block holds more robots than slots");
        }
        std::sort(mem.begin(), mem.end());
        BlockKey key{blk.height, blk.width, 0, {}, 0};
        for (int r = 0; r < blk.height; ++r) {
            for (int c = 0; c < blk.width; ++c) {
                if (grid.blocked({blk.top + r, blk.left + c})) {
                    key.obstacles |= 1u << (r * blk.width + c);
                }
            }
        }
        for (const auto& s : blk.slots) {
            key.slots |= 1u << ((s.x - blk.top) * blk.width + (s.y - blk.left));
        }
        for (const auto& [cell, robot] : mem) {
            key.robots.push_back(cell);
        }
        const auto& plan = cached_block_plan(key);
        MotionScript local;
        for (const auto& st : plan) {
            MotionStep moves;
            for (std::size_t i = 0; i < st.size(); ++i) {
                if (st[i] >= 0) {
                    moves.push_back({mem[i].second, static_cast<Dir>(st[i])});
                }
            }
            local.steps.push_back(std::move(moves));
        }
        merge_parallel(out, local);
    }
    return out;
}

}  // namespace rtmapf
