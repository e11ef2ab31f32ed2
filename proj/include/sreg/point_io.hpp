#pragma once

#include <filesystem>
#include <iosfwd>

#include "sreg/point_set.hpp"

namespace sreg {

// Reads a point set from a plain-text file (one point per line,
// whitespace-separated reals, dimension inferred from the first data line;
// blank lines and '#' comments skipped) or from an ASCII PLY file (vertex
// x/y/z properties; other elements ignored).  PLY is detected by its magic
// bytes regardless of extension.
PointSet load_point_set(const std::filesystem::path& path);

PointSet read_text_points(std::istream& in);
PointSet read_ascii_ply(std::istream& in);

// Writes the plain-text format with full double precision.
void save_point_set(const PointSet& points, const std::filesystem::path& path);

}  // namespace sreg
