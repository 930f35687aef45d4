// rtmapf command-line front end: gen, solve, validate, bench, render,
// lifelong, gadgets.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rtmapf/bench.hpp"
#include "rtmapf/gadgets.hpp"
#include "rtmapf/io.hpp"
#include "rtmapf/solvers.hpp"

using namespace rtmapf;

namespace {

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << text;
}

// "30x20" -> {30, 20}
std::pair<int, int> parse_size(const std::string& s) {
    const auto x = s.find('x');
    if (x == std::string::npos) {
        throw std::invalid_argument("size must look like ROWSxCOLS: " + s);
    }
    return {std::stoi(s.substr(0, x)), std::stoi(s.substr(x + 1))};
}

struct GenArgs {
    std::string kind = "uniform";
    int rows = 30;
    int cols = 30;
    int robots = -1;
    double density = -1.0;
    int block_size = 3;
    std::uint64_t seed = 1;
    std::string out;
};

struct SolveArgs {
    std::string instance;
    std::string solver;
    std::string algorithm = "RTH";
    std::string orientation;
    std::string matching = "plain";
    bool obstacle_mode = false;
    double lambda = 0.0;
    std::string ip_export;
    std::string out;
    std::string stats_json;
    bool csv = false;
};

struct BenchArgs {
    std::string kind = "uniform";
    std::vector<std::string> sizes = {"30x30"};
    std::vector<std::string> solvers = {"RTH"};
    int robots = -1;
    double density = -1.0;
    int block_size = 3;
    int seeds = 20;
    std::uint64_t sweep_seed = 1;
    double time_limit = 300.0;
    int workers = 0;
    std::string csv = "-";
    std::string summary;
    std::string timing;
};

SolverConfig config_from(const SolveArgs& a) {
    SolverConfig c;
    if (!a.solver.empty()) {
        c = solver_by_name(a.solver);
    } else {
        c.algorithm = parse_algorithm(a.algorithm);
        c.matching = parse_matching(a.matching);
        c.obstacle_mode = a.obstacle_mode;
    }
    if (!a.orientation.empty()) {
        c.orientation = parse_order(a.orientation);
    }
    c.lambda = a.lambda;
    c.ip_export_path = a.ip_export;
    if (!a.ip_export.empty()) {
        c.matching = MatchingMode::IPExport;
    }
    return c;
}

int run_solve(const SolveArgs& a) {
    const Instance inst = load_instance(a.instance);
    const SolverConfig c = config_from(a);
    const SolutionBundle b = solve(inst, c);
    if (auto v = validate_plan(inst, b.plan)) {
        std::cerr << "internal error: solver produced an invalid plan: " << describe(*v) << "\n";
        return 2;
    }
    write_text(a.out, plan_to_string(b.plan));
    if (!a.stats_json.empty()) {
        write_text(a.stats_json, bundle_to_json(c, b).dump(2) + "\n");
    }
    if (a.csv) {
        std::cerr << stats_csv_header() << "\n" << stats_csv_row(inst, c, b) << "\n";
    }
    return 0;
}

int run_validate(const std::string& instance, const std::string& plan) {
    const Instance inst = load_instance(instance);
    const Plan p = load_plan(plan);
    if (auto v = validate_plan(inst, p)) {
        std::cout << "invalid: " << describe(*v) << "\n";
        return 1;
    }
    const auto ratio = optimality_ratio(p, inst);
    std::cout << "valid makespan=" << makespan(p) << " lower_bound=" << manhattan_lower_bound(inst);
    if (ratio) {
        std::cout << " ratio=" << *ratio;
    }
    std::cout << "\n";
    return 0;
}

int run_bench(const BenchArgs& a) {
    std::vector<GeneratorSpec> specs;
    for (const auto& s : a.sizes) {
        const auto [rows, cols] = parse_size(s);
        specs.push_back({parse_generator(a.kind), rows, cols, a.robots, a.density, a.block_size, 0});
    }
    BenchmarkOptions opt;
    opt.seeds = a.seeds;
    opt.sweep_seed = a.sweep_seed;
    opt.time_limit_seconds = a.time_limit;
    opt.workers = a.workers;
    const auto rows = run_benchmark(specs, a.solvers, opt);
    write_text(a.csv, benchmark_csv(rows));
    const auto summary = summary_csv(summarize(rows));
    if (!a.summary.empty()) {
        write_text(a.summary, summary);
    } else {
        std::cerr << summary;
    }
    if (!a.timing.empty()) {
        write_text(a.timing, timing_csv(rows));
    }
    for (const auto& r : rows) {
        if (!r.ok) {
            return 1;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Rubik-table multi-robot path planning on grids"};
    app.require_subcommand(1);

    GenArgs g;
    auto* gen = app.add_subcommand("gen", "Generate an instance");
    gen->add_option("--kind", g.kind, "uniform | sorting-obstacles | squares | blocks")->capture_default_str();
    gen->add_option("--rows", g.rows)->capture_default_str();
    gen->add_option("--cols", g.cols)->capture_default_str();
    gen->add_option("-n,--robots", g.robots, "robot count (default: kind-specific density)");
    gen->add_option("--density", g.density, "fraction of free cells");
    gen->add_option("--block-size", g.block_size, "blocks kind only")->capture_default_str();
    gen->add_option("--seed", g.seed)->capture_default_str();
    gen->add_option("-o,--out", g.out, "instance file (default stdout)");

    SolveArgs s;
    auto* sol = app.add_subcommand("solve", "Solve an instance");
    sol->add_option("-i,--instance", s.instance)->required();
    sol->add_option("--solver", s.solver, "named variant, e.g. RTH-LBA, RTH-LL, RTH-OBS (overrides the flags below)");
    sol->add_option("-a,--algorithm", s.algorithm, "RTM | RTH | RTLM")->capture_default_str();
    sol->add_option("--orientation", s.orientation, "RCR | CRC (default: RCR when rows >= cols)");
    sol->add_option("--matching", s.matching, "plain | lba | ip-export")->capture_default_str();
    sol->add_flag("--obstacle-mode", s.obstacle_mode, "RTH with obstacles at 3x3 block centers");
    sol->add_option("--lambda", s.lambda, "LBA start-side weight")->capture_default_str();
    sol->add_option("--ip-export", s.ip_export, "write the matching IP model (LP format) here");
    sol->add_option("-o,--out", s.out, "plan file (default stdout)");
    sol->add_option("--stats-json", s.stats_json, "write stats as JSON");
    sol->add_flag("--csv", s.csv, "print the stats CSV header and row to stderr");

    std::string v_instance;
    std::string v_plan;
    auto* val = app.add_subcommand("validate", "Check a plan against an instance");
    val->add_option("-i,--instance", v_instance)->required();
    val->add_option("-p,--plan", v_plan)->required();

    BenchArgs b;
    auto* bench = app.add_subcommand("bench", "Run a benchmark sweep (workers: --workers or RT_WORKERS)");
    bench->add_option("--kind", b.kind)->capture_default_str();
    bench->add_option("--sizes", b.sizes, "ROWSxCOLS list")->capture_default_str();
    bench->add_option("--solvers", b.solvers, "RTM RTH RTH-LBA RTH-LL RTH-LBA-LL RTH-OBS RTH-IP RTLM")
        ->capture_default_str();
    bench->add_option("-n,--robots", b.robots);
    bench->add_option("--density", b.density);
    bench->add_option("--block-size", b.block_size)->capture_default_str();
    bench->add_option("--seeds", b.seeds)->capture_default_str();
    bench->add_option("--sweep-seed", b.sweep_seed)->capture_default_str();
    bench->add_option("--time-limit", b.time_limit, "seconds per run")->capture_default_str();
    bench->add_option("--workers", b.workers, "0: RT_WORKERS or hardware threads")->capture_default_str();
    bench->add_option("--csv", b.csv, "rows CSV (default stdout)")->capture_default_str();
    bench->add_option("--summary", b.summary, "summary CSV (default stderr)");
    bench->add_option("--timing", b.timing, "wall-clock CSV");

    std::string r_instance;
    std::string r_plan;
    std::string r_out = "-";
    std::string r_frames;
    RenderOptions ropt;
    auto* render = app.add_subcommand("render", "Render a plan as animated SVG");
    render->add_option("-i,--instance", r_instance)->required();
    render->add_option("-p,--plan", r_plan, "plan file (default: a still of the starts)");
    render->add_option("-o,--out", r_out)->capture_default_str();
    render->add_option("--frames-dir", r_frames, "also write one SVG per timestep here");
    render->add_option("--cell", ropt.cell, "pixels per cell")->capture_default_str();
    render->add_option("--step-seconds", ropt.seconds_per_step)->capture_default_str();
    render->add_flag("--partition", ropt.draw_partition, "draw 3x3 block boundaries");

    int l_side = 30;
    int l_robots = 300;
    int l_batches = 10;
    std::uint64_t l_seed = 1;
    std::string l_solver = "RTH";
    auto* life = app.add_subcommand("lifelong", "Batch lifelong run on a square grid");
    life->add_option("--side", l_side)->capture_default_str();
    life->add_option("-n,--robots", l_robots)->capture_default_str();
    life->add_option("--batches", l_batches)->capture_default_str();
    life->add_option("--seed", l_seed)->capture_default_str();
    life->add_option("--solver", l_solver, "RTH variant")->capture_default_str();

    std::string gd_out = "-";
    auto* gadgets = app.add_subcommand("gadgets", "Recompute the 3x2/4x2 swap gadget table");
    gadgets->add_option("-o,--out", gd_out)->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            GeneratorSpec spec{parse_generator(g.kind), g.rows, g.cols, g.robots, g.density, g.block_size, g.seed};
            write_text(g.out, instance_to_string(generate_instance(spec)));
            return 0;
        }
        if (sol->parsed()) {
            return run_solve(s);
        }
        if (val->parsed()) {
            return run_validate(v_instance, v_plan);
        }
        if (bench->parsed()) {
            return run_bench(b);
        }
        if (render->parsed()) {
            const Instance inst = load_instance(r_instance);
            const Plan plan = r_plan.empty() ? constant_plan(inst.starts) : load_plan(r_plan);
            write_text(r_out, render_svg(inst, plan, ropt));
            if (!r_frames.empty()) {
                std::filesystem::create_directories(r_frames);
                for (int t = 0; t <= plan.horizon(); ++t) {
                    std::ostringstream name;
                    name << r_frames << "/frame_" << std::setw(5) << std::setfill('0') << t << ".svg";
                    write_text(name.str(), render_frame(inst, plan, t, ropt));
                }
            }
            return 0;
        }
        if (life->parsed()) {
            const auto st = lifelong_batch_run(GridMap(l_side, l_side), l_robots, l_batches,
                                               solver_by_name(l_solver), l_seed);
            nlohmann::json j{{"batches", st.batches},
                             {"robots", st.robots},
                             {"goals_reached", st.goals_reached},
                             {"timesteps", st.timesteps},
                             {"batch_upper_bound", st.batch_upper_bound}};
            j["throughput"] = st.throughput ? nlohmann::json(*st.throughput) : nlohmann::json(nullptr);
            j["throughput_ratio"] =
                st.throughput_ratio ? nlohmann::json(*st.throughput_ratio) : nlohmann::json(nullptr);
            std::cout << j.dump(2) << "\n";
            return 0;
        }
        if (gadgets->parsed()) {
            write_text(gd_out, gadget_table_text(compute_gadget_tables()));
            return 0;
        }
    } catch (const SolverError& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
