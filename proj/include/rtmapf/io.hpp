#pragma once

#include <iosfwd>
#include <string>

#include "rtmapf/grid.hpp"

namespace rtmapf {

// Instance text format (ASCII, LF line endings, 1-based coordinates):
//   rows cols n labeled(0|1)
//   k
//   ox oy            (k obstacle lines)
//   sx sy gx gy      (n robot lines)
void write_instance(std::ostream& os, const Instance& instance);
Instance read_instance(std::istream& is);

// Plan text format:
//   n T
//   x y              (T+1 lines per robot, robots in id order)
void write_plan(std::ostream& os, const Plan& plan);
Plan read_plan(std::istream& is);

std::string instance_to_string(const Instance& instance);
Instance instance_from_string(const std::string& text);
std::string plan_to_string(const Plan& plan);
Plan plan_from_string(const std::string& text);

Instance load_instance(const std::string& path);
void save_instance(const std::string& path, const Instance& instance);
Plan load_plan(const std::string& path);
void save_plan(const std::string& path, const Plan& plan);

}  // namespace rtmapf
