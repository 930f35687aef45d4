#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <iomanip>
#include <map>
#include <sstream>
#include <thread>

#include "rtmapf/bench.hpp"

namespace rtmapf {

bool BenchmarkRow::operator==(const BenchmarkRow& o) const {
    return gen.kind == o.gen.kind && gen.rows == o.gen.rows && gen.cols == o.gen.cols &&
           gen.block_size == o.gen.block_size && gen.seed == o.gen.seed && solver == o.solver &&
           robots == o.robots && ok == o.ok && error == o.error && makespan == o.makespan &&
           lower_bound == o.lower_bound && ratio == o.ratio && phases.anon_in == o.phases.anon_in &&
           phases.round1 == o.phases.round1 && phases.round2 == o.phases.round2 &&
           phases.round3 == o.phases.round3 && phases.anon_out == o.phases.anon_out;
}

int resolve_workers(int requested) {
    if (requested > 0) {
        return requested;
    }
    if (const char* env = std::getenv("RT_WORKERS")) {
        const int v = std::atoi(env);
        if (v > 0) {
            return v;
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::uint64_t derive_seed(std::uint64_t sweep_seed, std::size_t spec_index, int seed_index) {
    // splitmix64 over the packed triple
    std::uint64_t z = sweep_seed * 0x9E3779B97F4A7C15ull + spec_index * 0xBF58476D1CE4E5B9ull +
                      static_cast<std::uint64_t>(seed_index) + 1;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

namespace {

BenchmarkRow run_row(const GeneratorSpec& gen, const std::string& solver, double limit) {
    using Clock = std::chrono::steady_clock;
    BenchmarkRow row;
    row.gen = gen;
    row.solver = solver;
    const auto t0 = Clock::now();
    try {
        const Instance inst = generate_instance(gen);
        row.robots = inst.robot_count();
        SolverConfig config = solver_by_name(solver);
        config.seed = gen.seed;
        const auto deadline = t0 + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(limit));
        config.should_stop = [deadline] { return Clock::now() > deadline; };
        const auto b = solve(inst, config);
        if (auto v = validate_plan(inst, b.plan)) {
            row.error = "invalid plan: " + describe(*v);
        } else if (Clock::now() > deadline) {
            row.error = "time limit exceeded";
        } else {
            row.ok = true;
            row.makespan = b.stats.makespan;
            row.lower_bound = b.stats.lower_bound;
            // Rounded to what the CSV keeps, so rows survive a round trip.
            if (b.stats.ratio) {
                row.ratio = std::round(*b.stats.ratio * 1e6) / 1e6;
            }
            row.phases = b.phases;
        }
    } catch (const SolverError& e) {
        row.error = e.kind() == SolverErrorKind::Cancelled ? "time limit exceeded" : e.what();
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return row;
}

std::string fixed(double v, int digits = 6) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

// Errors are free text; keep the CSV single-line and comma-free.
std::string sanitize(std::string s) {
    for (char& c : s) {
        if (c == ',' || c == '\n' || c == '\r') {
            c = ';';
        }
    }
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::vector<BenchmarkRow> run_benchmark(const std::vector<GeneratorSpec>& specs,
                                        const std::vector<std::string>& solvers, const BenchmarkOptions& options) {
    std::vector<BenchmarkRow> rows;
    std::vector<std::pair<GeneratorSpec, std::string>> jobs;
    for (std::size_t s = 0; s < specs.size(); ++s) {
        for (int k = 0; k < options.seeds; ++k) {
            GeneratorSpec gen = specs[s];
            gen.seed = derive_seed(options.sweep_seed, s, k);
            for (const auto& name : solvers) {
                jobs.push_back({gen, name});
            }
        }
    }
    rows.resize(jobs.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            rows[j] = run_row(jobs[j].first, jobs[j].second, options.time_limit_seconds);
            rows[j].error = sanitize(rows[j].error);
        }
    };
    const int workers = std::min<int>(resolve_workers(options.workers), static_cast<int>(std::max<std::size_t>(1, jobs.size())));
    std::vector<std::thread> pool;
    for (int w = 1; w < workers; ++w) {
        pool.emplace_back(worker);
    }
    worker();
    for (auto& t : pool) {
        t.join();
    }
    return rows;
}

std::string benchmark_csv_header() {
    return "kind,rows,cols,robots,block_size,seed,solver,status,makespan,lower_bound,ratio,anon_in,round1,round2,"
           "round3,anon_out,error";
}

std::string benchmark_csv_row(const BenchmarkRow& r) {
    std::ostringstream os;
    os << to_string(r.gen.kind) << ',' << r.gen.rows << ',' << r.gen.cols << ',' << r.robots << ','
       << r.gen.block_size << ',' << r.gen.seed << ',' << r.solver << ',' << (r.ok ? "ok" : "failed") << ','
       << r.makespan << ',' << r.lower_bound << ',' << (r.ratio ? fixed(*r.ratio) : "") << ',' << r.phases.anon_in
       << ',' << r.phases.round1 << ',' << r.phases.round2 << ',' << r.phases.round3 << ',' << r.phases.anon_out
       << ',' << sanitize(r.error);
    return os.str();
}

std::string benchmark_csv(const std::vector<BenchmarkRow>& rows) {
    std::string out = benchmark_csv_header() + "\n";
    for (const auto& r : rows) {
        out += benchmark_csv_row(r) + "\n";
    }
    return out;
}

std::vector<BenchmarkRow> parse_benchmark_csv(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line) || line != benchmark_csv_header()) {
        throw std::invalid_argument("benchmark CSV: unexpected header");
    }
    std::vector<BenchmarkRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != 17) {
            throw std::invalid_argument("benchmark CSV: expected 17 fields");
        }
        BenchmarkRow r;
        r.gen.kind = parse_generator(f[0]);
        r.gen.rows = std::stoi(f[1]);
        r.gen.cols = std::stoi(f[2]);
        r.robots = std::stoi(f[3]);
        r.gen.robots = r.robots;
        r.gen.block_size = std::stoi(f[4]);
        r.gen.seed = std::stoull(f[5]);
        r.solver = f[6];
        r.ok = f[7] == "ok";
        r.makespan = std::stoi(f[8]);
        r.lower_bound = std::stoi(f[9]);
        if (!f[10].empty()) {
            r.ratio = std::stod(f[10]);
        }
        r.phases = {std::stoi(f[11]), std::stoi(f[12]), std::stoi(f[13]), std::stoi(f[14]), std::stoi(f[15])};
        r.error = f[16];
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string timing_csv(const std::vector<BenchmarkRow>& rows) {
    std::string out = "kind,rows,cols,seed,solver,wall_seconds\n";
    for (const auto& r : rows) {
        out += to_string(r.gen.kind) + "," + std::to_string(r.gen.rows) + "," + std::to_string(r.gen.cols) + "," +
               std::to_string(r.gen.seed) + "," + r.solver + "," + fixed(r.wall_seconds, 3) + "\n";
    }
    return out;
}

std::vector<SummaryRow> summarize(const std::vector<BenchmarkRow>& rows) {
    std::vector<SummaryRow> out;
    std::map<std::tuple<int, int, int, std::string>, std::size_t> index;
    std::vector<std::vector<double>> ratios;
    for (const auto& r : rows) {
        const auto key = std::make_tuple(static_cast<int>(r.gen.kind), r.gen.rows, r.gen.cols, r.solver);
        auto it = index.find(key);
        if (it == index.end()) {
            it = index.emplace(key, out.size()).first;
            SummaryRow s;
            s.kind = r.gen.kind;
            s.rows = r.gen.rows;
            s.cols = r.gen.cols;
            s.solver = r.solver;
            out.push_back(s);
            ratios.emplace_back();
        }
        auto& s = out[it->second];
        ++s.runs;
        if (!r.ok) {
            ++s.failures;
            continue;
        }
        s.mean_makespan += r.makespan;
        s.mean_wall_seconds += r.wall_seconds;
        if (r.ratio) {
            ratios[it->second].push_back(*r.ratio);
        }
    }
    for (std::size_t k = 0; k < out.size(); ++k) {
        auto& s = out[k];
        const int good = s.runs - s.failures;
        if (good > 0) {
            s.mean_makespan /= good;
            s.mean_wall_seconds /= good;
        }
        const auto& v = ratios[k];
        if (!v.empty()) {
            double sum = 0.0;
            for (double x : v) {
                sum += x;
            }
            s.mean_ratio = sum / static_cast<double>(v.size());
            double sq = 0.0;
            for (double x : v) {
                sq += (x - s.mean_ratio) * (x - s.mean_ratio);
            }
            s.std_ratio = v.size() > 1 ? std::sqrt(sq / static_cast<double>(v.size() - 1)) : 0.0;
        }
    }
    return out;
}

std::string summary_csv(const std::vector<SummaryRow>& rows) {
    std::string out = "kind,rows,cols,solver,runs,failures,mean_ratio,std_ratio,mean_makespan,mean_wall_seconds\n";
    for (const auto& s : rows) {
        out += to_string(s.kind) + "," + std::to_string(s.rows) + "," + std::to_string(s.cols) + "," + s.solver +
               "," + std::to_string(s.runs) + "," + std::to_string(s.failures) + "," + fixed(s.mean_ratio, 4) + "," +
               fixed(s.std_ratio, 4) + "," + fixed(s.mean_makespan, 2) + "," + fixed(s.mean_wall_seconds, 3) + "\n";
    }
    return out;
}

}  // namespace rtmapf
