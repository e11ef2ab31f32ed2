#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "sreg/point_set.hpp"

namespace sreg {

enum class CellState : std::uint8_t { unknown = 0, free = 1, occupied = 2 };

// 2-D cell lattice with a metric resolution.  origin_x/origin_y give the
// metric position of the (0,0) cell's corner so grids can live in a shared
// frame; loaders default them to zero.
struct OccupancyGrid {
    int width = 0;
    int height = 0;
    double resolution = 1.0;  // meters per cell
    double origin_x = 0.0;
    double origin_y = 0.0;
    std::vector<CellState> cells;  // row-major, width*height entries

    CellState at(int x, int y) const { return cells[static_cast<std::size_t>(y) * width + x]; }
    CellState& at(int x, int y) { return cells[static_cast<std::size_t>(y) * width + x]; }
    bool in_bounds(int x, int y) const { return x >= 0 && x < width && y >= 0 && y < height; }

    void validate() const;
};

// Gray-level cutoffs on the raw PGM values: <= occupied_max -> occupied,
// >= free_min -> free, in between -> unknown.
struct GridThresholds {
    int occupied_max = 64;
    int free_min = 192;
};

// PGM (P2 ASCII or P5 binary, maxval <= 255) reader; '#' comments allowed in
// the header.  Malformed input raises ParseError carrying the byte offset.
OccupancyGrid load_pgm(const std::filesystem::path& path, const GridThresholds& thresholds = {},
                       double resolution = 1.0);
OccupancyGrid read_pgm(std::istream& in, const GridThresholds& thresholds = {},
                       double resolution = 1.0);

// Writes P5 (or P2 when `binary` is false) with occupied -> 0, free -> 255,
// unknown -> 128, which round-trips exactly under the default thresholds.
void save_pgm(const OccupancyGrid& grid, const std::filesystem::path& path, bool binary = true);
void write_pgm(const OccupancyGrid& grid, std::ostream& out, bool binary = true);

// Metric 2-D coordinates (cell centers) of every occupied cell with at
// least one free 4-neighbor, in row-major cell order.  Raises EmptyEdgeError
// when no such cell exists.
PointSet extract_edge_points(const OccupancyGrid& grid);

}  // namespace sreg
