#include "sreg/point_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "sreg/errors.hpp"

namespace sreg {

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

std::vector<double> parse_reals(const std::string& line, std::size_t line_offset) {
    std::vector<double> values;
    std::istringstream ss(line);
    std::string token;
    while (ss >> token) {
        if (token[0] == '#') break;
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(token, &used);
        } catch (const std::exception&) {
            throw ParseError("not a real number: '" + token + "'", line_offset);
        }
        if (used != token.size())
            throw ParseError("trailing junk in number: '" + token + "'", line_offset);
        values.push_back(v);
    }
    return values;
}

}  // namespace

PointSet read_text_points(std::istream& in) {
    std::vector<double> coords;
    int dim = 0;
    std::string line;
    std::size_t offset = 0;
    while (std::getline(in, line)) {
        const std::size_t line_offset = offset;
        offset += line.size() + 1;
        if (is_blank_or_comment(line)) continue;
        const auto values = parse_reals(line, line_offset);
        if (values.empty()) continue;
        if (dim == 0) {
            dim = static_cast<int>(values.size());
            if (dim < 2) throw ParseError("points must have at least two coordinates", line_offset);
        } else if (static_cast<int>(values.size()) != dim) {
            throw ParseError("inconsistent coordinate count (expected " + std::to_string(dim) +
                                 ", got " + std::to_string(values.size()) + ")",
                             line_offset);
        }
        coords.insert(coords.end(), values.begin(), values.end());
    }
    if (coords.empty()) throw ParseError("no points found", offset);
    return PointSet(dim, std::move(coords));
}

PointSet read_ascii_ply(std::istream& in) {
    std::string line;
    std::size_t offset = 0;
    auto next_line = [&]() -> bool {
        if (!std::getline(in, line)) return false;
        offset += line.size() + 1;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        return true;
    };

    if (!next_line() || line != "ply") throw ParseError("missing 'ply' magic", 0);

    std::size_t vertex_count = 0;
    bool in_vertex_element = false;
    bool seen_vertex_element = false;
    int x_prop = -1, y_prop = -1, z_prop = -1;
    int prop_index = 0;
    bool ascii = false;

    while (true) {
        if (!next_line()) throw ParseError("unterminated PLY header", offset);
        std::istringstream ss(line);
        std::string word;
        ss >> word;
        if (word == "comment" || word.empty()) continue;
        if (word == "format") {
            std::string fmt;
            ss >> fmt;
            ascii = (fmt == "ascii");
            if (!ascii) throw ParseError("only ASCII PLY is supported", offset - line.size() - 1);
        } else if (word == "element") {
            std::string name;
            std::size_t count = 0;
            ss >> name >> count;
            in_vertex_element = (name == "vertex");
            if (in_vertex_element) {
                vertex_count = count;
                seen_vertex_element = true;
                prop_index = 0;
            }
        } else if (word == "property" && in_vertex_element) {
            std::string type, name;
            ss >> type >> name;
            if (type == "list") {
                in_vertex_element = false;  // vertex lists are not coordinates
                continue;
            }
            if (name == "x") x_prop = prop_index;
            if (name == "y") y_prop = prop_index;
            if (name == "z") z_prop = prop_index;
            ++prop_index;
        } else if (word == "end_header") {
            break;
        }
    }
    if (!seen_vertex_element || vertex_count == 0)
        throw ParseError("PLY file declares no vertices", offset);
    if (x_prop < 0 || y_prop < 0 || z_prop < 0)
        throw ParseError("PLY vertex element lacks x/y/z properties", offset);

    std::vector<double> coords;
    coords.reserve(vertex_count * 3);
    for (std::size_t i = 0; i < vertex_count; ++i) {
        if (!next_line()) throw ParseError("PLY vertex data ended early", offset);
        const auto values = parse_reals(line, offset - line.size() - 1);
        const int needed = std::max({x_prop, y_prop, z_prop}) + 1;
        if (static_cast<int>(values.size()) < needed)
            throw ParseError("PLY vertex line has too few values", offset - line.size() - 1);
        coords.push_back(values[x_prop]);
        coords.push_back(values[y_prop]);
        coords.push_back(values[z_prop]);
    }
    // Anything after the vertex element (faces, ...) is ignored.
    return PointSet(3, std::move(coords));
}

PointSet load_point_set(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open '" + path.string() + "'", 0);
    char magic[3] = {0, 0, 0};
    in.read(magic, 3);
    in.seekg(0);
    if (magic[0] == 'p' && magic[1] == 'l' && magic[2] == 'y') return read_ascii_ply(in);
    return read_text_points(in);
}

void save_point_set(const PointSet& points, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    char buf[64];
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto p = points.point(i);
        for (int c = 0; c < points.dim(); ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", p[c]);
            out << (c ? " " : "") << buf;
        }
        out << '\n';
    }
}

}  // namespace sreg
