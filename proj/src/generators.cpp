#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

#include "rtmapf/bench.hpp"

namespace rtmapf {

std::string to_string(GeneratorKind k) {
    switch (k) {
        case GeneratorKind::SortingObstacles:
            return "sorting-obstacles";
        case GeneratorKind::Squares:
            return "squares";
        case GeneratorKind::Blocks:
            return "blocks";
        case GeneratorKind::Uniform:
            break;
    }
    return "uniform";
}

GeneratorKind parse_generator(const std::string& s) {
    for (auto k : {GeneratorKind::Uniform, GeneratorKind::SortingObstacles, GeneratorKind::Squares,
                   GeneratorKind::Blocks}) {
        if (to_string(k) == s) {
            return k;
        }
    }
    throw std::invalid_argument("unknown generator kind: " + s);
}

namespace {

std::vector<Position> sorting_obstacles(int rows, int cols) {
    std::vector<Position> out;
    for (int x = 2; x <= rows; x += 3) {
        for (int y = 2; y <= cols; y += 3) {
            out.push_back({x, y});
        }
    }
    return out;
}

// Ring cells of the selected rings, outermost first, clockwise from the
// ring's top-left corner.
std::vector<Position> ring_cells(int m) {
    std::vector<Position> out;
    for (int k = 1; 2 * k < m; k += 3) {
        const int lo = k + 1;
        const int hi = m - k;
        for (int y = lo; y <= hi; ++y) {
            out.push_back({lo, y});
        }
        for (int x = lo + 1; x <= hi; ++x) {
            out.push_back({x, hi});
        }
        if (hi > lo) {
            for (int y = hi - 1; y >= lo; --y) {
                out.push_back({hi, y});
            }
            for (int x = hi - 1; x > lo; --x) {
                out.push_back({x, lo});
            }
        }
    }
    return out;
}

std::vector<Position> free_cells(const GridMap& g) {
    std::vector<Position> out;
    for (int i = 0; i < g.cell_count(); ++i) {
        if (!g.blocked(g.position(i))) {
            out.push_back(g.position(i));
        }
    }
    return out;
}

}  // namespace

int GeneratorSpec::robot_count() const {
    if (robots >= 0) {
        return robots;
    }
    if (kind == GeneratorKind::Squares && density < 0) {
        return static_cast<int>(ring_cells(rows).size());
    }
    const int cells = rows * cols;
    const int free = kind == GeneratorKind::SortingObstacles ? cells - static_cast<int>(sorting_obstacles(rows, cols).size())
                                                             : cells;
    if (density >= 0) {
        return static_cast<int>(density * free + 1e-9);
    }
    if (kind == GeneratorKind::SortingObstacles) {
        return 2 * cells / 9;
    }
    return cells / 3;
}

Instance generate_instance(const GeneratorSpec& spec) {
    if (spec.rows < 1 || spec.cols < 1) {
        throw std::invalid_argument("generator: empty grid");
    }
    std::mt19937_64 rng(spec.seed);
    const int n = spec.robot_count();
    Instance inst;
    inst.labeled = true;
    switch (spec.kind) {
        case GeneratorKind::Uniform:
        case GeneratorKind::SortingObstacles: {
            if (spec.kind == GeneratorKind::SortingObstacles && (spec.rows % 3 != 0 || spec.cols % 3 != 0)) {
                throw std::invalid_argument("sorting-obstacles needs dimensions divisible by 3");
            }
            inst.grid = spec.kind == GeneratorKind::Uniform
                            ? GridMap(spec.rows, spec.cols)
                            : GridMap(spec.rows, spec.cols, sorting_obstacles(spec.rows, spec.cols));
            const auto free = free_cells(inst.grid);
            if (n > static_cast<int>(free.size())) {
                throw std::invalid_argument("generator: more robots than free cells");
            }
            auto a = free;
            std::shuffle(a.begin(), a.end(), rng);
            a.resize(n);
            auto b = free;
            std::shuffle(b.begin(), b.end(), rng);
            b.resize(n);
            inst.starts = std::move(a);
            inst.goals = std::move(b);
            break;
        }
        case GeneratorKind::Squares: {
            if (spec.rows != spec.cols) {
                throw std::invalid_argument("squares needs a square grid");
            }
            inst.grid = GridMap(spec.rows, spec.cols);
            auto cells = ring_cells(spec.rows);
            if (n > static_cast<int>(cells.size())) {
                throw std::invalid_argument("squares: more robots than ring cells");
            }
            cells.resize(n);
            inst.starts = cells;
            for (const auto& p : cells) {
                inst.goals.push_back({spec.rows + 1 - p.x, spec.cols + 1 - p.y});
            }
            break;
        }
        case GeneratorKind::Blocks: {
            const int s = spec.block_size;
            if (s < 1 || spec.rows % s != 0 || spec.cols % s != 0) {
                throw std::invalid_argument("blocks: block size must divide both dimensions");
            }
            inst.grid = GridMap(spec.rows, spec.cols);
            const int br = spec.rows / s;
            const int bc = spec.cols / s;
            const int blocks = br * bc;
            if (n % blocks != 0 || n / blocks > s * s) {
                throw std::invalid_argument("blocks: robot count must split evenly over blocks");
            }
            const int per = n / blocks;
            std::vector<int> perm(blocks);
            std::iota(perm.begin(), perm.end(), 0);
            std::shuffle(perm.begin(), perm.end(), rng);
            std::vector<int> local(s * s);
            for (int b = 0; b < blocks; ++b) {
                std::iota(local.begin(), local.end(), 0);
                std::shuffle(local.begin(), local.end(), rng);
                for (int k = 0; k < per; ++k) {
                    const int dx = local[k] / s;
                    const int dy = local[k] % s;
                    inst.starts.push_back({(b / bc) * s + dx + 1, (b % bc) * s + dy + 1});
                    inst.goals.push_back({(perm[b] / bc) * s + dx + 1, (perm[b] % bc) * s + dy + 1});
                }
            }
            break;
        }
    }
    return inst;
}

SolverConfig solver_by_name(const std::string& name) {
    SolverConfig c;
    if (name == "RTM") {
        c.algorithm = Algorithm::RTM;
    } else if (name == "RTLM") {
        c.algorithm = Algorithm::RTLM;
    } else if (name == "RTH") {
    } else if (name == "RTH-LBA") {
        c.matching = MatchingMode::LBA;
    } else if (name == "RTH-LL") {
        c.orientation = RoundOrder::CRC;
    } else if (name == "RTH-LBA-LL") {
        c.matching = MatchingMode::LBA;
        c.orientation = RoundOrder::CRC;
    } else if (name == "RTH-RCR") {
        c.orientation = RoundOrder::RCR;
    } else if (name == "RTH-OBS") {
        c.obstacle_mode = true;
    } else if (name == "RTH-LBA-OBS") {
        c.obstacle_mode = true;
        c.matching = MatchingMode::LBA;
    } else if (name == "RTH-IP") {
        c.matching = MatchingMode::IPExport;
    } else {
        throw std::invalid_argument("unknown solver: " + name);
    }
    return c;
}

}  // namespace rtmapf
