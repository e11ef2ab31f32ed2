#include "sreg/occupancy_grid.hpp"

#include <cctype>
#include <fstream>
#include <string>

#include "sreg/errors.hpp"

namespace sreg {

void OccupancyGrid::validate() const {
    if (width < 1 || height < 1) throw InvalidValueError("grid must be at least 1x1");
    if (!(resolution > 0.0)) throw InvalidValueError("grid resolution must be positive");
    if (cells.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw InvalidValueError("cell array length does not equal width * height");
}

namespace {

// Header tokenizer that treats '#' comments as whitespace and tracks the
// byte offset for error reporting.
struct PgmCursor {
    std::istream& in;
    std::size_t offset = 0;

    int get() {
        const int ch = in.get();
        if (ch != EOF) ++offset;
        return ch;
    }

    void skip_separators() {
        while (true) {
            const int ch = in.peek();
            if (ch == EOF) return;
            if (ch == '#') {
                while (true) {
                    const int c = get();
                    if (c == EOF || c == '\n') break;
                }
                continue;
            }
            if (std::isspace(ch)) {
                get();
                continue;
            }
            return;
        }
    }

    std::size_t read_uint(const char* what, std::size_t max_value) {
        skip_separators();
        const std::size_t start = offset;
        std::size_t value = 0;
        bool any = false;
        while (true) {
            const int ch = in.peek();
            if (ch == EOF || !std::isdigit(ch)) break;
            get();
            any = true;
            value = value * 10 + static_cast<std::size_t>(ch - '0');
            if (value > max_value)
                throw ParseError(std::string(what) + " out of range", start);
        }
        if (!any) throw ParseError(std::string("expected ") + what, start);
        return value;
    }
};

CellState classify(int value, const GridThresholds& t) {
    if (value <= t.occupied_max) return CellState::occupied;
    if (value >= t.free_min) return CellState::free;
    return CellState::unknown;
}

}  // namespace

OccupancyGrid read_pgm(std::istream& in, const GridThresholds& thresholds, double resolution) {
    PgmCursor cur{in};
    const int p = cur.get();
    const int kind = cur.get();
    if (p != 'P' || (kind != '2' && kind != '5'))
        throw ParseError("not a PGM file (expected P2 or P5 magic)", 0);
    const bool binary = kind == '5';

    OccupancyGrid grid;
    grid.resolution = resolution;
    grid.width = static_cast<int>(cur.read_uint("width", 1 << 20));
    grid.height = static_cast<int>(cur.read_uint("height", 1 << 20));
    const std::size_t maxval = cur.read_uint("maxval", 65535);
    if (maxval == 0 || maxval > 255)
        throw ParseError("unsupported maxval (must be 1..255)", cur.offset);
    if (grid.width < 1 || grid.height < 1)
        throw ParseError("degenerate image dimensions", cur.offset);

    const std::size_t count =
        static_cast<std::size_t>(grid.width) * static_cast<std::size_t>(grid.height);
    grid.cells.resize(count);

    if (binary) {
        // Exactly one whitespace byte separates the header from the raster.
        const int sep = cur.get();
        if (sep == EOF || !std::isspace(sep))
            throw ParseError("missing separator before binary raster", cur.offset);
        for (std::size_t i = 0; i < count; ++i) {
            const int ch = cur.get();
            if (ch == EOF) throw ParseError("binary raster truncated", cur.offset);
            if (static_cast<std::size_t>(ch) > maxval)
                throw ParseError("pixel value exceeds maxval", cur.offset - 1);
            grid.cells[i] = classify(ch, thresholds);
        }
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            const std::size_t v = cur.read_uint("pixel value", maxval);
            grid.cells[i] = classify(static_cast<int>(v), thresholds);
        }
    }
    return grid;
}

OccupancyGrid load_pgm(const std::filesystem::path& path, const GridThresholds& thresholds,
                       double resolution) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    return read_pgm(in, thresholds, resolution);
}

void write_pgm(const OccupancyGrid& grid, std::ostream& out, bool binary) {
    grid.validate();
    out << (binary ? "P5" : "P2") << '\n'
        << grid.width << ' ' << grid.height << '\n'
        << 255 << '\n';
    auto gray = [](CellState s) -> int {
        switch (s) {
            case CellState::occupied: return 0;
            case CellState::free: return 255;
            case CellState::unknown: return 128;
        }
        return 128;
    };
    if (binary) {
        for (const CellState s : grid.cells) out.put(static_cast<char>(gray(s)));
    } else {
        for (int y = 0; y < grid.height; ++y) {
            for (int x = 0; x < grid.width; ++x)
                out << (x ? " " : "") << gray(grid.at(x, y));
            out << '\n';
        }
    }
}

void save_pgm(const OccupancyGrid& grid, const std::filesystem::path& path, bool binary) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    write_pgm(grid, out, binary);
}

PointSet extract_edge_points(const OccupancyGrid& grid) {
    grid.validate();
    std::vector<double> coords;
    for (int y = 0; y < grid.height; ++y) {
        for (int x = 0; x < grid.width; ++x) {
            if (grid.at(x, y) != CellState::occupied) continue;
            const bool edge =
                (grid.in_bounds(x - 1, y) && grid.at(x - 1, y) == CellState::free) ||
                (grid.in_bounds(x + 1, y) && grid.at(x + 1, y) == CellState::free) ||
                (grid.in_bounds(x, y - 1) && grid.at(x, y - 1) == CellState::free) ||
                (grid.in_bounds(x, y + 1) && grid.at(x, y + 1) == CellState::free);
            if (!edge) continue;
            coords.push_back(grid.origin_x + (x + 0.5) * grid.resolution);
            coords.push_back(grid.origin_y + (y + 0.5) * grid.resolution);
        }
    }
    if (coords.empty())
        throw EmptyEdgeError("grid has no occupied cell adjacent to free space");
    return PointSet(2, std::move(coords));
}

}  // namespace sreg
