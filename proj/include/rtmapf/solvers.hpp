#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json_fwd.hpp>

#include "rtmapf/grid.hpp"
#include "rtmapf/rubik_table.hpp"

namespace rtmapf {

enum class Algorithm { RTM, RTH, RTLM };
enum class MatchingMode { Plain, LBA, IPExport };

std::string to_string(Algorithm a);
std::string to_string(MatchingMode m);
Algorithm parse_algorithm(const std::string& s);
MatchingMode parse_matching(const std::string& s);
RoundOrder parse_order(const std::string& s);

struct SolverConfig {
    Algorithm algorithm = Algorithm::RTH;
    // Unset: RCR when rows >= cols, CRC otherwise.
    std::optional<RoundOrder> orientation;
    MatchingMode matching = MatchingMode::Plain;
    bool obstacle_mode = false;
    std::uint64_t seed = 0;
    // Weight of the start side in the LBA line cost.
    double lambda = 0.0;
    // Where IPExport writes the LP model; empty keeps it in the bundle only.
    std::string ip_export_path;
    // Polled between phases; returning true aborts with SolverError::Cancelled.
    std::function<bool()> should_stop;
};

enum class SolverErrorKind { UnsupportedDimension, DensityExceeded, ObstacleMismatch, InvalidInstance, Cancelled };

class SolverError : public std::runtime_error {
public:
    SolverError(SolverErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    SolverErrorKind kind() const { return kind_; }

private:
    SolverErrorKind kind_;
};

std::string to_string(SolverErrorKind k);

// Script lengths of the five phases; round2 and round3 include the
// recentering that precedes them.
struct PhaseBreakdown {
    int anon_in = 0;
    int round1 = 0;
    int round2 = 0;
    int round3 = 0;
    int anon_out = 0;

    int total() const { return anon_in + round1 + round2 + round3 + anon_out; }
    int core() const { return round1 + round2 + round3; }
};

struct SolveStats {
    int makespan = 0;
    int lower_bound = 0;
    std::optional<double> ratio;
    double wall_seconds = 0.0;
    double stage1_bottleneck = 0.0;  // LBA only
    double stage2_bottleneck = 0.0;  // bottleneck of the matchings used, any mode
    bool lba_fell_back = false;
};

struct SolutionBundle {
    Plan plan;
    RoundOrder order = RoundOrder::RCR;
    PhaseBreakdown phases;
    SolveStats stats;
    std::string lp_model;  // IPExport only
};

// Dispatches on config.algorithm.
SolutionBundle solve(const Instance& instance, const SolverConfig& config = {});

// Full density via virtual robots; odd-even line shuffles per round.
SolutionBundle solve_rtm(const Instance& instance, const SolverConfig& config = {});
// <= 1/3 density; 3x3 blocks (3x2 where the column count forces it).
SolutionBundle solve_rth(const Instance& instance, const SolverConfig& config = {});
// <= 1/2 density; 2x2 blocks, linear merge shuffles.
SolutionBundle solve_rtlm(const Instance& instance, const SolverConfig& config = {});

struct LifelongStats {
    int batches = 0;
    int robots = 0;
    long long goals_reached = 0;
    long long timesteps = 0;
    std::optional<double> throughput;        // goals per timestep
    double batch_upper_bound = 0.0;          // 3n / (2m)
    std::optional<double> throughput_ratio;  // throughput / batch_upper_bound
};

// Uniform random start, then `batches` rounds of fresh uniform goals, each
// solved with solve_rth from where the previous batch ended. When
// `identity_goals` is set every batch asks robots to stay put.
LifelongStats lifelong_batch_run(const GridMap& grid, int robots, int batches, const SolverConfig& config,
                                 std::uint64_t seed, bool identity_goals = false);

// Stats CSV: fixed column order, no timing columns so rows are reproducible.
std::string stats_csv_header();
std::string stats_csv_row(const Instance& instance, const SolverConfig& config, const SolutionBundle& bundle);
nlohmann::json bundle_to_json(const SolverConfig& config, const SolutionBundle& bundle);

}  // namespace rtmapf
