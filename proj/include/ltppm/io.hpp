#pragma once

#include "ltppm/core.hpp"
#include "ltppm/optimizer.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ltppm {

/// Malformed CSV input.
class CsvError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest round-trippable text: 17 significant digits (%.17g), with
/// non-finite values spelled nan, inf and -inf.
std::string format_real(double value);

/// Parses a real written by format_real (or any decimal float). Throws
/// CsvError when the whole field is not consumed.
double parse_real(std::string_view field);
std::uint64_t parse_count(std::string_view field);

/// Headerless CSV, one point (matrix column) per row.
void write_points_csv(std::ostream& out, const Eigen::Ref<const Matrix>& points);
/// Inverse of write_points_csv; every row must have the same field count.
Matrix read_points_csv(std::istream& in);

inline constexpr std::string_view kTraceHeader = "iter,evals,h,archive_size,sp,igd,elapsed_ms";

void write_trace_csv(std::ostream& out, const RunTrace& trace);
RunTrace read_trace_csv(std::istream& in);

} // namespace ltppm
