#pragma once

#include "ltppm/core.hpp"
#include "ltppm/optimizer.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ltppm {

/// Config-file error carrying the offending line (0 when not tied to a line)
/// and key.
class PlanError : public ConfigError {
public:
    PlanError(std::size_t line, std::string key, const std::string& message);

    std::size_t line() const { return line_; }
    const std::string& key() const { return key_; }

private:
    std::size_t line_;
    std::string key_;
};

enum class Algorithm { Ltppm, Baseline };
std::string_view to_string(Algorithm algorithm);

/// A problem x dimension x seed sweep plus the shared optimizer settings.
struct ExperimentPlan {
    std::vector<int> problems;
    std::vector<Index> dimensions{1000};
    std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    Index objectives = 3;
    OptimizerConfig optimizer;
    Index reference_points = 1000;
    std::filesystem::path output_dir = "results";
    bool run_ltppm = true;
    bool baseline = false;
    bool timing = true;
};

/// Parses the flat `key = value` format:
///
///   # comment                      (also allowed after a value)
///   problems   = lsmop1, lsmop5    required
///   dimensions = 1000, 2000, 5000  default 1000
///   seeds      = 1, 2, 3           default 1..10
///   objectives = 3
///   N = 300    offspring_per_gen = 300  (alias P)
///   e = 100000   r = 0.9   h0 = 1.0
///   step_mode = continuous | ceiling     step_scale = 0.1
///   kde_space = objective | decision     igd_squared = false
///   reference_points = 1000   out = results   baseline = false   timing = true
///
/// Throws PlanError naming the line and key on unknown or repeated keys,
/// malformed values, empty lists and out-of-range settings.
ExperimentPlan parse_plan(std::string_view text);
ExperimentPlan load_plan(const std::filesystem::path& path);

/// Replaces the seed list with the single seed in `value` (the LTPPM_SEED
/// environment variable). A null pointer leaves the plan unchanged.
void apply_seed_override(ExperimentPlan& plan, const char* value);

struct Cell {
    Algorithm algorithm;
    int problem;
    Index dimension;
    std::uint64_t seed;

    std::string trace_name() const;
};

/// Every (algorithm, problem, dimension, seed) combination in plan order.
std::vector<Cell> expand_cells(const ExperimentPlan& plan);

struct CellOutcome {
    Cell cell;
    bool ok = false;
    std::string error;
    TraceRow final_row;
    double evaluation_ms = 0.0;
    double io_ms = 0.0;
};

/// Mean and median of final SP/IGD over the successful runs of one
/// (algorithm, problem, dimension) group. Non-finite values are skipped.
struct GroupSummary {
    Algorithm algorithm;
    int problem;
    Index dimension;
    std::size_t runs = 0;
    std::size_t failed = 0;
    double mean_sp = 0.0;
    double median_sp = 0.0;
    double mean_igd = 0.0;
    double median_igd = 0.0;
    double mean_elapsed_ms = 0.0;
    double mean_evaluation_ms = 0.0;
    double mean_io_ms = 0.0;
    std::string errors;
};

struct ExperimentSummary {
    std::vector<CellOutcome> cells;
    std::vector<GroupSummary> groups;

    bool all_ok() const;
};

/// Runs one cell and writes its trace into `plan.output_dir / "traces"`.
CellOutcome run_cell(const ExperimentPlan& plan, const Cell& cell);

/// Runs every cell on up to `jobs` threads, then writes summary.csv and
/// timing.csv into the output directory.
ExperimentSummary run_experiments(const ExperimentPlan& plan, unsigned jobs = 1,
                                  std::ostream* log = nullptr);

std::vector<GroupSummary> summarize(const std::vector<CellOutcome>& cells);

inline constexpr std::string_view kSummaryHeader =
    "algorithm,problem,d,runs,failed,mean_sp,median_sp,mean_igd,median_igd,mean_elapsed_ms,errors";
inline constexpr std::string_view kTimingHeader =
    "algorithm,problem,d,runs,mean_elapsed_ms,mean_evaluation_ms,mean_io_ms";

void write_summary_csv(std::ostream& out, const std::vector<GroupSummary>& groups);
void write_timing_csv(std::ostream& out, const std::vector<GroupSummary>& groups);

/// Rebuilds the summary from the trace files in `dir/traces` and compares
/// every group's statistics with `dir/summary.csv`. Returns a list of
/// mismatches; empty means consistent.
std::vector<std::string> check_summary(const std::filesystem::path& dir);

} // namespace ltppm
