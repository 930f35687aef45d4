#include <algorithm>
#include <iomanip>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "rtmapf/solvers.hpp"

namespace rtmapf {

std::string to_string(Algorithm a) {
    switch (a) {
        case Algorithm::RTM:
            return "RTM";
        case Algorithm::RTLM:
            return "RTLM";
        case Algorithm::RTH:
            break;
    }
    return "RTH";
}

std::string to_string(MatchingMode m) {
    switch (m) {
        case MatchingMode::LBA:
            return "lba";
        case MatchingMode::IPExport:
            return "ip-export";
        case MatchingMode::Plain:
            break;
    }
    return "plain";
}

std::string to_string(SolverErrorKind k) {
    switch (k) {
        case SolverErrorKind::UnsupportedDimension:
            return "unsupported-dimension";
        case SolverErrorKind::DensityExceeded:
            return "density-exceeded";
        case SolverErrorKind::ObstacleMismatch:
            return "obstacle-mismatch";
        case SolverErrorKind::InvalidInstance:
            return "invalid-instance";
        case SolverErrorKind::Cancelled:
            break;
    }
    return "cancelled";
}

namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

std::string fixed(double v, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

Algorithm parse_algorithm(const std::string& s) {
    const auto v = lower(s);
    if (v == "rtm") {
        return Algorithm::RTM;
    }
    if (v == "rth") {
        return Algorithm::RTH;
    }
    if (v == "rtlm") {
        return Algorithm::RTLM;
    }
    throw std::invalid_argument("unknown algorithm: " + s);
}

MatchingMode parse_matching(const std::string& s) {
    const auto v = lower(s);
    if (v == "plain") {
        return MatchingMode::Plain;
    }
    if (v == "lba") {
        return MatchingMode::LBA;
    }
    if (v == "ip-export" || v == "ip") {
        return MatchingMode::IPExport;
    }
    throw std::invalid_argument("unknown matching mode: " + s);
}

RoundOrder parse_order(const std::string& s) {
    const auto v = lower(s);
    if (v == "rcr") {
        return RoundOrder::RCR;
    }
    if (v == "crc") {
        return RoundOrder::CRC;
    }
    throw std::invalid_argument("unknown orientation: " + s);
}

std::string stats_csv_header() {
    return "algorithm,orientation,matching,obstacle_mode,rows,cols,robots,makespan,lower_bound,ratio,"
           "anon_in,round1,round2,round3,anon_out,stage1_bottleneck,stage2_bottleneck";
}

std::string stats_csv_row(const Instance& instance, const SolverConfig& config, const SolutionBundle& b) {
    std::ostringstream os;
    os << to_string(config.algorithm) << ',' << to_string(b.order) << ',' << to_string(config.matching) << ','
       << (config.obstacle_mode ? 1 : 0) << ',' << instance.grid.rows() << ',' << instance.grid.cols() << ','
       << instance.robot_count() << ',' << b.stats.makespan << ',' << b.stats.lower_bound << ','
       << (b.stats.ratio ? fixed(*b.stats.ratio) : "") << ',' << b.phases.anon_in << ',' << b.phases.round1 << ','
       << b.phases.round2 << ',' << b.phases.round3 << ',' << b.phases.anon_out << ','
       << fixed(b.stats.stage1_bottleneck, 3) << ',' << fixed(b.stats.stage2_bottleneck, 3);
    return os.str();
}

nlohmann::json bundle_to_json(const SolverConfig& config, const SolutionBundle& b) {
    nlohmann::json j;
    j["algorithm"] = to_string(config.algorithm);
    j["orientation"] = to_string(b.order);
    j["matching"] = to_string(config.matching);
    j["obstacle_mode"] = config.obstacle_mode;
    j["makespan"] = b.stats.makespan;
    j["lower_bound"] = b.stats.lower_bound;
    j["ratio"] = b.stats.ratio ? nlohmann::json(*b.stats.ratio) : nlohmann::json(nullptr);
    j["wall_seconds"] = b.stats.wall_seconds;
    j["phases"] = {{"anon_in", b.phases.anon_in},
                   {"round1", b.phases.round1},
                   {"round2", b.phases.round2},
                   {"round3", b.phases.round3},
                   {"anon_out", b.phases.anon_out}};
    j["bottleneck"] = {{"stage1", b.stats.stage1_bottleneck},
                       {"stage2", b.stats.stage2_bottleneck},
                       {"lba_fell_back", b.stats.lba_fell_back}};
    return j;
}

LifelongStats lifelong_batch_run(const GridMap& grid, int robots, int batches, const SolverConfig& config,
                                 std::uint64_t seed, bool identity_goals) {
    if (grid.rows() != grid.cols()) {
        throw SolverError(SolverErrorKind::UnsupportedDimension, "lifelong runs need a square grid");
    }
    std::vector<Position> free;
    for (int i = 0; i < grid.cell_count(); ++i) {
        if (!grid.blocked(grid.position(i))) {
            free.push_back(grid.position(i));
        }
    }
    if (robots > static_cast<int>(free.size())) {
        throw SolverError(SolverErrorKind::DensityExceeded, "more robots than free cells");
    }
    std::mt19937_64 rng(seed);
    auto sample = [&] {
        auto cells = free;
        std::shuffle(cells.begin(), cells.end(), rng);
        cells.resize(robots);
        return cells;
    };
    LifelongStats st;
    st.robots = robots;
    st.batch_upper_bound = 3.0 * robots / (2.0 * grid.rows());
    Configuration current = sample();
    for (int k = 0; k < batches; ++k) {
        Instance inst{grid, current, identity_goals ? current : sample(), true};
        SolverConfig c = config;
        c.algorithm = Algorithm::RTH;
        const auto b = solve(inst, c);
        st.timesteps += b.stats.makespan;
        st.goals_reached += robots;
        current = inst.goals;
        ++st.batches;
    }
    if (st.timesteps > 0) {
        st.throughput = static_cast<double>(st.goals_reached) / static_cast<double>(st.timesteps);
        if (st.batch_upper_bound > 0) {
            st.throughput_ratio = *st.throughput / st.batch_upper_bound;
        }
    }
    return st;
}

}  // namespace rtmapf
