#pragma once

#include <string>
#include <vector>

#include "rtmapf/motion.hpp"

namespace rtmapf {

// Optimal script on a fully occupied rows x 2 block exchanging the two robots
// of every row whose bit is set in `subset` (bit r = row r, top row first).
struct GadgetScript {
    int rows = 3;
    unsigned subset = 0;
    // steps[t][cell] is one of ".UDLR" for the robot in that cell (row-major,
    // 0-based) at the start of step t.
    std::vector<std::string> steps;

    int length() const { return static_cast<int>(steps.size()); }
    bool operator==(const GadgetScript&) const = default;
};

struct GadgetTable {
    std::vector<GadgetScript> three;  // 3x2, indexed by subset
    std::vector<GadgetScript> four;   // 4x2, indexed by subset

    const GadgetScript& get(int rows, unsigned subset) const;
    bool operator==(const GadgetTable&) const = default;
};

// Breadth-first search over placements of a fully occupied block. One step
// rotates any set of vertex-disjoint simple cycles, each in either direction.
GadgetTable compute_gadget_tables();

// Computed once per process.
const GadgetTable& gadget_tables();

// Versioned text form; regeneration reproduces it byte for byte.
std::string gadget_table_text(const GadgetTable& table);
GadgetTable parse_gadget_table(const std::string& text);

// Moves realizing the script; robot_at_cell lists the occupant of each block
// cell in row-major order.
MotionScript gadget_motion(const GadgetScript& script, const std::vector<int>& robot_at_cell);

}  // namespace rtmapf
