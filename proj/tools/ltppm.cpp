// Command-line driver: experiment sweeps, the uniform baseline, standalone
// metrics and reference-front export.

#include "ltppm/experiment.hpp"
#include "ltppm/io.hpp"
#include "ltppm/metrics.hpp"
#include "ltppm/problems.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

namespace {

using namespace ltppm;

ltppm::Matrix read_points_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path);
    }
    return read_points_csv(in);
}

int run_plan(const std::string& config_path, unsigned jobs, const std::optional<std::string>& out,
             bool baseline_only)
{
    ExperimentPlan plan = load_plan(config_path);
    apply_seed_override(plan, std::getenv("LTPPM_SEED"));
    if (out) {
        plan.output_dir = *out;
    }
    if (baseline_only) {
        plan.run_ltppm = false;
        plan.baseline = true;
    }
    const ExperimentSummary summary = run_experiments(plan, jobs, &std::cerr);
    std::cout << "wrote " << summary.cells.size() << " cells to " << plan.output_dir.string()
              << '\n';
    return summary.all_ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"LT-PPM large-scale multi-objective optimizer and LSMOP benchmark driver"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned jobs = 1;
    std::optional<std::string> out_dir;

    auto* run_cmd = app.add_subcommand("run", "Run LT-PPM (and the baseline if enabled) over a plan");
    run_cmd->add_option("--config", config_path, "Plan file (key = value)")->required()->check(CLI::ExistingFile);
    run_cmd->add_option("--jobs", jobs, "Concurrent cells")->check(CLI::PositiveNumber);
    run_cmd->add_option("--out", out_dir, "Output directory (overrides the plan's out)");

    auto* base_cmd = app.add_subcommand("baseline", "Run only the uniform random-search baseline");
    base_cmd->add_option("--config", config_path, "Plan file (key = value)")->required()->check(CLI::ExistingFile);
    base_cmd->add_option("--jobs", jobs, "Concurrent cells")->check(CLI::PositiveNumber);
    base_cmd->add_option("--out", out_dir, "Output directory (overrides the plan's out)");

    std::string front_path;
    std::string reference_path;
    bool igd_squared = false;
    auto* metrics_cmd = app.add_subcommand("metrics", "SP and IGD of a front against a reference");
    metrics_cmd->add_option("--front", front_path, "Obtained front CSV")->required()->check(CLI::ExistingFile);
    metrics_cmd->add_option("--reference", reference_path, "Reference front CSV")->required()->check(CLI::ExistingFile);
    metrics_cmd->add_flag("--igd-squared", igd_squared, "Average squared distances");

    std::string problem_name = "lsmop1";
    ltppm::Index objectives = 3;
    ltppm::Index points = 1000;
    std::optional<std::string> output_path;
    auto* ref_cmd = app.add_subcommand("reference", "Export a reference front as CSV");
    ref_cmd->add_option("--problem", problem_name, "lsmop1..lsmop9")->required();
    ref_cmd->add_option("--objectives", objectives, "Objective count")->capture_default_str();
    ref_cmd->add_option("--points", points, "Requested point count")->capture_default_str();
    ref_cmd->add_option("--output", output_path, "File to write (default stdout)");

    std::string check_dir;
    auto* check_cmd = app.add_subcommand("check-summary", "Recompute summary.csv from trace files");
    check_cmd->add_option("--out", check_dir, "Experiment output directory")->required()->check(CLI::ExistingDirectory);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run_cmd) {
            return run_plan(config_path, jobs, out_dir, false);
        }
        if (*base_cmd) {
            return run_plan(config_path, jobs, out_dir, true);
        }
        if (*metrics_cmd) {
            const Matrix front = read_points_file(front_path);
            const Matrix reference = read_points_file(reference_path);
            const MetricReport report = measure(reference, front, igd_squared);
            std::cout << "sp," << format_real(report.sp) << '\n'
                      << "igd," << format_real(report.igd) << '\n'
                      << "front_size," << report.front_size << '\n'
                      << "reference_size," << report.reference_size << '\n';
            return 0;
        }
        if (*ref_cmd) {
            // The front depends only on the problem and m; any valid d will do.
            const LsmopInstance problem =
                make_lsmop(parse_problem_id(problem_name), objectives, std::max<ltppm::Index>(100, objectives + 1));
            const ReferenceFront front = reference_front(problem, points);
            if (output_path) {
                std::ofstream out(*output_path);
                write_points_csv(out, front.points);
            } else {
                write_points_csv(std::cout, front.points);
            }
            return 0;
        }
        if (*check_cmd) {
            const auto issues = check_summary(check_dir);
            for (const auto& issue : issues) {
                std::cerr << issue << '\n';
            }
            std::cout << (issues.empty() ? "summary consistent with traces\n"
                                         : "summary inconsistent\n");
            return issues.empty() ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "ltppm: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
