#include "ltppm/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <vector>

namespace ltppm {

namespace {

std::vector<std::string_view> split_fields(std::string_view line)
{
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        fields.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

std::string_view strip_cr(std::string_view line)
{
    if (!line.empty() && line.back() == '\r') {
        line.remove_suffix(1);
    }
    return line;
}

} // namespace

std::string format_real(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", value);
    return std::string(buf, static_cast<std::size_t>(n));
}

double parse_real(std::string_view field)
{
    double value = 0.0;
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw CsvError("not a real number: '" + std::string(field) + "'");
    }
    return value;
}

std::uint64_t parse_count(std::string_view field)
{
    std::uint64_t value = 0;
    const char* end = field.data() + field.size();
    const auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (ec != std::errc() || ptr != end || field.empty()) {
        throw CsvError("not a non-negative integer: '" + std::string(field) + "'");
    }
    return value;
}

void write_points_csv(std::ostream& out, const Eigen::Ref<const Matrix>& points)
{
    for (Index c = 0; c < points.cols(); ++c) {
        for (Index r = 0; r < points.rows(); ++r) {
            if (r > 0) {
                out << ',';
            }
            out << format_real(points(r, c));
        }
        out << '\n';
    }
}

Matrix read_points_csv(std::istream& in)
{
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = strip_cr(line);
        if (text.empty()) {
            continue;
        }
        std::vector<double> row;
        for (std::string_view field : split_fields(text)) {
            row.push_back(parse_real(field));
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw CsvError("line " + std::to_string(line_no) + ": expected "
                           + std::to_string(rows.front().size()) + " fields, got "
                           + std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        return Matrix();
    }
    Matrix points(static_cast<Index>(rows.front().size()), static_cast<Index>(rows.size()));
    for (std::size_t c = 0; c < rows.size(); ++c) {
        for (std::size_t r = 0; r < rows[c].size(); ++r) {
            points(static_cast<Index>(r), static_cast<Index>(c)) = rows[c][r];
        }
    }
    return points;
}

void write_trace_csv(std::ostream& out, const RunTrace& trace)
{
    out << kTraceHeader << '\n';
    for (const TraceRow& row : trace.rows) {
        out << row.iter << ',' << row.evals << ',' << format_real(row.h) << ','
            << row.archive_size << ',' << format_real(row.sp) << ',' << format_real(row.igd)
            << ',' << format_real(row.elapsed_ms) << '\n';
    }
}

RunTrace read_trace_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || strip_cr(line) != kTraceHeader) {
        throw CsvError("trace: missing or unexpected header (want '" + std::string(kTraceHeader)
                       + "')");
    }
    RunTrace trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string_view text = strip_cr(line);
        if (text.empty()) {
            continue;
        }
        const auto fields = split_fields(text);
        if (fields.size() != 7) {
            throw CsvError("trace line " + std::to_string(line_no) + ": expected 7 fields, got "
                           + std::to_string(fields.size()));
        }
        try {
            TraceRow row;
            row.iter = parse_count(fields[0]);
            row.evals = parse_count(fields[1]);
            row.h = parse_real(fields[2]);
            row.archive_size = parse_count(fields[3]);
            row.sp = parse_real(fields[4]);
            row.igd = parse_real(fields[5]);
            row.elapsed_ms = parse_real(fields[6]);
            trace.rows.push_back(row);
        } catch (const CsvError& e) {
            throw CsvError("trace line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return trace;
}

} // namespace ltppm
