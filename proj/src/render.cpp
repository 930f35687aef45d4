#include <iomanip>
#include <sstream>

#include "rtmapf/bench.hpp"

namespace rtmapf {

namespace {

// Fixed palette cycled by robot id.
const char* const kColors[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                               "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

double center(int coord, int cell) { return (coord - 0.5) * cell; }

void open_svg(std::ostringstream& os, const Instance& inst, const RenderOptions& opt) {
    const int w = inst.grid.cols() * opt.cell;
    const int h = inst.grid.rows() * opt.cell;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h << "\" viewBox=\"0 0 "
       << w << ' ' << h << "\">\n";
    os << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
    os << "<g stroke=\"#dddddd\" stroke-width=\"1\">\n";
    for (int y = 0; y <= inst.grid.cols(); ++y) {
        os << "<line x1=\"" << y * opt.cell << "\" y1=\"0\" x2=\"" << y * opt.cell << "\" y2=\"" << h << "\"/>\n";
    }
    for (int x = 0; x <= inst.grid.rows(); ++x) {
        os << "<line x1=\"0\" y1=\"" << x * opt.cell << "\" x2=\"" << w << "\" y2=\"" << x * opt.cell << "\"/>\n";
    }
    os << "</g>\n";
    if (opt.draw_partition) {
        os << "<g stroke=\"#888888\" stroke-width=\"2\">\n";
        for (int y = 0; y <= inst.grid.cols(); y += 3) {
            os << "<line x1=\"" << y * opt.cell << "\" y1=\"0\" x2=\"" << y * opt.cell << "\" y2=\"" << h << "\"/>\n";
        }
        for (int x = 0; x <= inst.grid.rows(); x += 3) {
            os << "<line x1=\"0\" y1=\"" << x * opt.cell << "\" x2=\"" << w << "\" y2=\"" << x * opt.cell << "\"/>\n";
        }
        os << "</g>\n";
    }
    for (const auto& p : inst.grid.obstacles()) {
        os << "<rect class=\"obstacle\" x=\"" << (p.y - 1) * opt.cell << "\" y=\"" << (p.x - 1) * opt.cell
           << "\" width=\"" << opt.cell << "\" height=\"" << opt.cell << "\" fill=\"black\"/>\n";
    }
}

}  // namespace

std::string render_frame(const Instance& inst, const Plan& plan, int t, const RenderOptions& opt) {
    std::ostringstream os;
    open_svg(os, inst, opt);
    const double r = opt.cell * 0.38;
    for (int i = 0; i < plan.robot_count(); ++i) {
        const auto& path = plan.paths[i];
        const Position p = path[std::min<std::size_t>(t, path.size() - 1)];
        os << "<circle class=\"robot\" data-id=\"" << i << "\" cx=\"" << center(p.y, opt.cell) << "\" cy=\""
           << center(p.x, opt.cell) << "\" r=\"" << r << "\" fill=\"" << kColors[i % 10] << "\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

std::string render_svg(const Instance& inst, const Plan& plan, const RenderOptions& opt) {
    if (plan.horizon() == 0) {
        return render_frame(inst, plan, 0, opt);
    }
    std::ostringstream os;
    open_svg(os, inst, opt);
    const double r = opt.cell * 0.38;
    const double dur = opt.seconds_per_step * plan.horizon();
    for (int i = 0; i < plan.robot_count(); ++i) {
        const auto& path = plan.paths[i];
        std::ostringstream xs;
        std::ostringstream ys;
        for (std::size_t t = 0; t < path.size(); ++t) {
            xs << (t ? ";" : "") << center(path[t].y, opt.cell);
            ys << (t ? ";" : "") << center(path[t].x, opt.cell);
        }
        os << "<circle class=\"robot\" data-id=\"" << i << "\" cx=\"" << center(path.front().y, opt.cell)
           << "\" cy=\"" << center(path.front().x, opt.cell) << "\" r=\"" << r << "\" fill=\"" << kColors[i % 10]
           << "\">\n";
        os << "<animate attributeName=\"cx\" dur=\"" << dur << "s\" fill=\"freeze\" calcMode=\"linear\" values=\""
           << xs.str() << "\"/>\n";
        os << "<animate attributeName=\"cy\" dur=\"" << dur << "s\" fill=\"freeze\" calcMode=\"linear\" values=\""
           << ys.str() << "\"/>\n";
        os << "</circle>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace rtmapf
