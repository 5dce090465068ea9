#pragma once

#include "modeset/error.hpp"

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace modeset::cli {

/// One number per line; blank lines and surrounding whitespace are ignored.
/// Throws DomainError naming the offending line.
std::vector<double> read_column(std::istream& in);

struct PointRows {
    std::vector<double> coords;  ///< row-major
    std::size_t dim = 0;
};

/// Headerless CSV, one point per row, every row the same width.
PointRows read_points(std::istream& in);

/// Opens `path` for reading ("-" reads stdin) and applies `reader`.
template <typename Reader>
auto read_input(const std::string& path, Reader reader)
{
    if (path == "-") return reader(std::cin);
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open input file '" + path + "'");
    return reader(in);
}

/// Comma-separated list of numbers, e.g. "-1,1,-2,2".
std::vector<double> parse_number_list(const std::string& text);

} // namespace modeset::cli

