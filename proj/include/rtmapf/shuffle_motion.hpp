#pragma once

#include <vector>

#include "rtmapf/gadgets.hpp"
#include "rtmapf/motion.hpp"
#include "rtmapf/rubik_table.hpp"

namespace rtmapf {

// Row: robots travel along a row (their column changes). Column: along a column.
// LineKind from rubik_table is reused for the axis.

// Parallel odd-even transposition sort of every line of a fully occupied,
// obstacle-free grid. target[i] is robot i's final coordinate along its line
// (column for Row, row for Column); targets must permute each line. The
// perpendicular dimension is split into 3- and 4-line gadget groups, so it
// must not be 1, 2 or 5 (std::invalid_argument).
MotionScript odd_even_line_shuffle(const GridMap& grid, const Configuration& config, const std::vector<int>& target,
                                   LineKind axis);

// A band of 2 or 3 parallel grid lines. For Row, lines are rows and the band
// extends along the columns [begin, end] (1-based, inclusive).
struct Band {
    LineKind axis = LineKind::Row;
    int first_line = 1;  // lowest line index in the band
    int width = 3;       // 3 for highway, 2 for linear merge
    int begin = 1;
    int end = 1;

    int center() const { return first_line + 1; }
    int length() const { return end - begin + 1; }
    Position at(int line, int coord) const {
        return axis == LineKind::Row ? Position{line, coord} : Position{coord, line};
    }
};

// Highway shuffle on a 3-wide band. `robots` sit on the center line (the lanes
// must be empty); each moves to coordinate target[k] on the center line.
// Movers step into the lane on the lower-index side when heading to smaller
// coordinates and the higher-index side otherwise, advance one cell per step
// and turn back in at their target. Targets must be distinct free cells.
// Length is max |displacement| + 2, or 0 when nothing moves.
MotionScript highway_shuffle(const GridMap& grid, const Configuration& config, const Band& band,
                             const std::vector<int>& robots, const std::vector<int>& target);

// Linear merge shuffle on a 2-wide band: robots on line `first_line` move to
// distinct target coordinates on the same line. Empty cells of the first line
// are padded internally with virtual robots whose moves are dropped. Merges
// balanced halves bottom-up; right-movers travel on the second line.
MotionScript linear_merge_shuffle(const GridMap& grid, const Configuration& config, const Band& band,
                                  const std::vector<int>& robots, const std::vector<int>& target);

// One block of cells in which robots are re-parked onto any of `slots`.
struct CellBlock {
    int top = 1;
    int left = 1;
    int height = 3;
    int width = 3;
    std::vector<Position> slots;
};

// Moves the robots inside each block onto that block's slots (any robot to
// any slot), blocks in parallel. Each block is solved by BFS over joint
// placements (cached); robots never leave their block. Throws
// std::invalid_argument when a block holds more robots than slots.
MotionScript center_within_cells(const GridMap& grid, const Configuration& config,
                                 const std::vector<CellBlock>& blocks);

// Picks a slot coordinate for every robot k heading to cell cell_of[k], whose
// slot coordinates are cell_slots[cell_of[k]]. Robots already on a slot of
// their target cell keep it; the others take the remaining slots in
// ascending order, sorted by origin.
std::vector<int> assign_slots(const std::vector<int>& origin, const std::vector<int>& cell_of,
                              const std::vector<std::vector<int>>& cell_slots);

}  // namespace rtmapf
