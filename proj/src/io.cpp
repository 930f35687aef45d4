#include "rtmapf/io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace rtmapf {

namespace {

template <typename T>
T read_value(std::istream& is, const char* what) {
    T value{};
    if (!(is >> value)) {
        throw std::runtime_error(std::string("parse error: expected ") + what);
    }
    return value;
}

Position read_position(std::istream& is) {
    Position p;
    p.x = read_value<int>(is, "row coordinate");
    p.y = read_value<int>(is, "column coordinate");
    return p;
}

}  // namespace

void write_instance(std::ostream& os, const Instance& instance) {
    const auto& g = instance.grid;
    os << g.rows() << ' ' << g.cols() << ' ' << instance.robot_count() << ' '
       << (instance.labeled ? 1 : 0) << '\n';
    os << g.obstacles().size() << '\n';
    for (const auto& p : g.obstacles()) {
        os << p.x << ' ' << p.y << '\n';
    }
    for (int i = 0; i < instance.robot_count(); ++i) {
        os << instance.starts[i].x << ' ' << instance.starts[i].y << ' ' << instance.goals[i].x << ' '
           << instance.goals[i].y << '\n';
    }
}

Instance read_instance(std::istream& is) {
    const int rows = read_value<int>(is, "rows");
    const int cols = read_value<int>(is, "cols");
    const int n = read_value<int>(is, "robot count");
    const int labeled = read_value<int>(is, "labeled flag");
    if (n < 0 || (labeled != 0 && labeled != 1)) {
        throw std::runtime_error("parse error: bad instance header");
    }
    const int k = read_value<int>(is, "obstacle count");
    if (k < 0) {
        throw std::runtime_error("parse error: negative obstacle count");
    }
    std::vector<Position> obstacles;
    obstacles.reserve(k);
    for (int i = 0; i < k; ++i) {
        obstacles.push_back(read_position(is));
    }
    Instance instance;
    instance.grid = GridMap(rows, cols, std::move(obstacles));
    instance.labeled = labeled == 1;
    instance.starts.reserve(n);
    instance.goals.reserve(n);
    for (int i = 0; i < n; ++i) {
        instance.starts.push_back(read_position(is));
        instance.goals.push_back(read_position(is));
    }
    if (auto v = validate_configuration(instance.grid, instance.starts)) {
        throw std::runtime_error("invalid start configuration: " + describe(*v));
    }
    if (auto v = validate_configuration(instance.grid, instance.goals)) {
        throw std::runtime_error("invalid goal configuration: " + describe(*v));
    }
    return instance;
}

void write_plan(std::ostream& os, const Plan& plan) {
    os << plan.robot_count() << ' ' << plan.horizon() << '\n';
    for (const auto& path : plan.paths) {
        for (const auto& p : path) {
            os << p.x << ' ' << p.y << '\n';
        }
    }
}

Plan read_plan(std::istream& is) {
    const int n = read_value<int>(is, "robot count");
    const int horizon = read_value<int>(is, "horizon");
    if (n < 0 || horizon < 0) {
        throw std::runtime_error("parse error: bad plan header");
    }
    Plan plan;
    plan.paths.resize(n);
    for (auto& path : plan.paths) {
        path.reserve(static_cast<std::size_t>(horizon) + 1);
        for (int t = 0; t <= horizon; ++t) {
            path.push_back(read_position(is));
        }
    }
    return plan;
}

std::string instance_to_string(const Instance& instance) {
    std::ostringstream os;
    write_instance(os, instance);
    return os.str();
}

Instance instance_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_instance(is);
}

std::string plan_to_string(const Plan& plan) {
    std::ostringstream os;
    write_plan(os, plan);
    return os.str();
}

Plan plan_from_string(const std::string& text) {
    std::istringstream is(text);
    return read_plan(is);
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_instance(in);
}

void save_instance(const std::string& path, const Instance& instance) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write_instance(out, instance);
}

Plan load_plan(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return read_plan(in);
}

void save_plan(const std::string& path, const Plan& plan) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    write_plan(out, plan);
}

}  // namespace rtmapf
