#include "input.hpp"

#include "modeset/error.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

namespace modeset::cli {
namespace {

std::string_view trim(std::string_view s)
{
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto first = s.find_first_not_of(ws);
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(ws);
    return s.substr(first, last - first + 1);
}

double parse_number(std::string_view token, std::size_t line)
{
    token = trim(token);
    if (!token.empty() && token.front() == '+') token.remove_prefix(1);
    double value = 0.0;
    const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (token.empty() || ec != std::errc{} || end != token.data() + token.size() || !std::isfinite(value)) {
        throw DomainError("line " + std::to_string(line) + ": '" + std::string(token) +
                          "' is not a finite number");
    }
    return value;
}

} // namespace

std::vector<double> read_column(std::istream& in)
{
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) continue;
        out.push_back(parse_number(t, line_no));
    }
    if (out.empty()) throw DomainError("input holds no data");
    return out;
}

PointRows read_points(std::istream& in)
{
    PointRows rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = trim(line);
        if (t.empty()) continue;
        std::size_t width = 0;
        std::size_t start = 0;
        for (;;) {
            const auto comma = t.find(',', start);
            rows.coords.push_back(parse_number(t.substr(start, comma - start), line_no));
            ++width;
            if (comma == std::string_view::npos) break;
            start = comma + 1;
        }
        if (rows.dim == 0) rows.dim = width;
        if (width != rows.dim) {
            throw DomainError("line " + std::to_string(line_no) + ": expected " +
                              std::to_string(rows.dim) + " columns, found " + std::to_string(width));
        }
    }
    if (rows.coords.empty()) throw DomainError("input holds no points");
    return rows;
}

std::vector<double> parse_number_list(const std::string& text)
{
    std::vector<double> out;
    std::string_view t = text;
    std::size_t start = 0;
    for (;;) {
        const auto comma = t.find(',', start);
        out.push_back(parse_number(t.substr(start, comma - start), 1));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

} // namespace modeset::cli
