#pragma once

#include <string>
#include <vector>

#include "rtmapf/grid.hpp"

namespace rtmapf {

// At most `capacity` robots may end on `cells`.
struct SinkGroup {
    std::vector<Position> cells;
    int capacity = 1;
};

// Either explicit goal cells (one robot each) or capacitated groups; groups
// take precedence when non-empty.
struct SinkSpec {
    std::vector<Position> cells;
    std::vector<SinkGroup> groups;

    int total_capacity() const;
};

struct FlowOptions {
    bool binary_search = false;
    // Horizon cap; -1 means rows * cols + n.
    int max_horizon = -1;
};

struct FlowResult {
    Plan plan;
    Configuration endpoints;  // endpoints[i] is where robot i ends
    int horizon = 0;
};

// Minimum-horizon unlabeled routing through a time-expanded network with unit
// vertex capacities and one shared unit arc per edge and step (no swaps).
// Searches upward from the largest start-to-nearest-sink distance. Throws
// std::invalid_argument if capacity is short, std::runtime_error if no
// horizon up to the cap works.
FlowResult min_makespan_unlabeled(const GridMap& grid, const Configuration& starts, const SinkSpec& sinks,
                                  const FlowOptions& options = {});

// Feasibility of one horizon; fills `result` when feasible.
bool route_with_horizon(const GridMap& grid, const Configuration& starts, const SinkSpec& sinks, int horizon,
                        FlowResult* result);

// Routes robots so that each group holds at most `capacity` of them and
// returns the chosen end cells (the flow endpoints).
FlowResult balanced_targets(const GridMap& grid, const Configuration& starts, const std::vector<SinkGroup>& groups);

// Exact optimum by BFS over sets of occupied cells; rows * cols <= 12 and at
// most 4 robots, otherwise std::invalid_argument.
int brute_force_unlabeled_optimal(const GridMap& grid, const Configuration& starts, const Configuration& goals);

// Text dump of the network for one horizon: "node <id> <kind> <x> <y> <t>"
// lines, then "arc <from> <to> <capacity>" lines.
std::string dump_time_expanded_graph(const GridMap& grid, const Configuration& starts, const SinkSpec& sinks,
                                     int horizon);

}  // namespace rtmapf
