#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rtmapf/grid.hpp"
#include "rtmapf/solvers.hpp"

namespace rtmapf {

enum class GeneratorKind { Uniform, SortingObstacles, Squares, Blocks };

std::string to_string(GeneratorKind k);
GeneratorKind parse_generator(const std::string& s);

struct GeneratorSpec {
    GeneratorKind kind = GeneratorKind::Uniform;
    int rows = 30;
    int cols = 30;
    // Robot count; when negative, density * free cells (rounded down). When
    // both are negative: 1/3 of the free cells, 2/9 of all cells with
    // sorting obstacles, every third ring for squares.
    int robots = -1;
    double density = -1.0;
    int block_size = 3;  // blocks kind
    std::uint64_t seed = 0;

    int robot_count() const;
};

// Deterministic in the spec. Throws std::invalid_argument on inconsistent
// dimensions or counts.
Instance generate_instance(const GeneratorSpec& spec);

// Named solver variants: RTM, RTH, RTH-LBA, RTH-LL (CRC), RTH-LBA-LL, RTH-OBS,
// RTH-IP (model export, plain plan), RTLM.
SolverConfig solver_by_name(const std::string& name);

struct BenchmarkRow {
    GeneratorSpec gen;
    std::string solver;
    int robots = 0;
    bool ok = false;
    std::string error;
    int makespan = 0;
    int lower_bound = 0;
    std::optional<double> ratio;
    PhaseBreakdown phases;
    double wall_seconds = 0.0;  // not part of the CSV

    bool operator==(const BenchmarkRow& o) const;  // ignores wall_seconds
};

struct BenchmarkOptions {
    int seeds = 1;
    std::uint64_t sweep_seed = 1;
    double time_limit_seconds = 300.0;
    // 0: RT_WORKERS from the environment, else hardware concurrency.
    int workers = 0;
};

// Number of workers from `requested`, RT_WORKERS, or the hardware.
int resolve_workers(int requested);

// Instance seed for (spec index, seed index); every solver sees the same
// instance for a given pair.
std::uint64_t derive_seed(std::uint64_t sweep_seed, std::size_t spec_index, int seed_index);

// Runs every (spec, seed, solver) combination. Rows come back in that nested
// order regardless of the worker count. A failing or overrunning row is
// recorded with its reason; plans are validated before scoring.
std::vector<BenchmarkRow> run_benchmark(const std::vector<GeneratorSpec>& specs,
                                        const std::vector<std::string>& solvers, const BenchmarkOptions& options);

// Columns: kind,rows,cols,robots,block_size,seed,solver,status,makespan,
// lower_bound,ratio,anon_in,round1,round2,round3,anon_out,error
std::string benchmark_csv_header();
std::string benchmark_csv_row(const BenchmarkRow& row);
std::string benchmark_csv(const std::vector<BenchmarkRow>& rows);
std::vector<BenchmarkRow> parse_benchmark_csv(const std::string& text);

// Wall-clock times in a separate file: kind,rows,cols,seed,solver,wall_seconds
std::string timing_csv(const std::vector<BenchmarkRow>& rows);

struct SummaryRow {
    GeneratorKind kind = GeneratorKind::Uniform;
    int rows = 0;
    int cols = 0;
    std::string solver;
    int runs = 0;
    int failures = 0;
    double mean_ratio = 0.0;
    double std_ratio = 0.0;
    double mean_makespan = 0.0;
    double mean_wall_seconds = 0.0;
};

// Per (kind, rows, cols, solver) over successful rows, in first-seen order.
std::vector<SummaryRow> summarize(const std::vector<BenchmarkRow>& rows);
std::string summary_csv(const std::vector<SummaryRow>& rows);

struct RenderOptions {
    int cell = 20;
    double seconds_per_step = 0.4;
    bool draw_partition = false;  // 3x3 block boundaries
};

// One animated SVG (SMIL). A plan of horizon 0 yields a static frame.
std::string render_svg(const Instance& instance, const Plan& plan, const RenderOptions& options = {});
// Static snapshot at timestep t.
std::string render_frame(const Instance& instance, const Plan& plan, int t, const RenderOptions& options = {});

}  // namespace rtmapf
