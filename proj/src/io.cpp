#include "holescope/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace holescope::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_points_csv(const std::string& path, const PointSet& ps) {
    std::ofstream out(path, std::ios::binary);  // binary: byte-identical reruns
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    for (int j = 0; j < ps.dim; ++j) out << (j ? "," : "") << "x" << (j + 1);
    out << "\n";
    for (std::size_t i = 0; i < ps.size(); ++i) {
        const auto p = ps[i];
        for (int j = 0; j < ps.dim; ++j) out << (j ? "," : "") << format_double(p[j]);
        out << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

PointSet read_points_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("empty point file: " + path);

    int dim = 1;
    for (const char c : line)
        if (c == ',') ++dim;
    if (dim < 2) throw std::runtime_error("point file must have at least 2 columns: " + path);

    PointSet ps;
    ps.dim = dim;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        int col = 0;
        while (std::getline(row, cell, ',')) {
            std::size_t used = 0;
            double v = 0;
            try {
                v = std::stod(cell, &used);
            } catch (const std::exception&) {
                throw std::runtime_error(path + ":" + std::to_string(lineno) + ": bad number '" + cell + "'");
            }
            ps.coords.push_back(v);
            ++col;
        }
        if (col != dim)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                                     " columns");
    }
    if (ps.size() == 0) throw std::runtime_error("point file has no rows: " + path);
    return ps;
}

}  // namespace holescope::io
