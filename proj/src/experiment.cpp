#include "ltppm/experiment.hpp"

#include "ltppm/io.hpp"
#include "ltppm/problems.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <regex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace ltppm {

namespace fs = std::filesystem;

PlanError::PlanError(std::size_t line, std::string key, const std::string& message)
    : ConfigError(line > 0 ? "line " + std::to_string(line) + ", key '" + key + "': " + message
                           : "key '" + key + "': " + message),
      line_(line), key_(std::move(key))
{
}

std::string_view to_string(Algorithm algorithm)
{
    return algorithm == Algorithm::Ltppm ? "ltppm" : "baseline";
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view value)
{
    std::vector<std::string_view> items;
    std::size_t start = 0;
    for (;;) {
        const auto comma = value.find(',', start);
        items.push_back(trim(value.substr(start, comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return items;
}

struct Entry {
    std::size_t line;
    std::string key;
    std::string_view value;

    [[noreturn]] void fail(const std::string& message) const { throw PlanError(line, key, message); }

    template <typename T>
    T integer() const
    {
        T out{};
        const char* end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, out);
        if (value.empty() || ec != std::errc() || ptr != end) {
            fail("expected an integer, got '" + std::string(value) + "'");
        }
        return out;
    }

    double real() const
    {
        double out = 0.0;
        const char* end = value.data() + value.size();
        const auto [ptr, ec] = std::from_chars(value.data(), end, out);
        if (value.empty() || ec != std::errc() || ptr != end || !std::isfinite(out)) {
            fail("expected a finite number, got '" + std::string(value) + "'");
        }
        return out;
    }

    bool boolean() const
    {
        if (value == "true" || value == "yes" || value == "1") {
            return true;
        }
        if (value == "false" || value == "no" || value == "0") {
            return false;
        }
        fail("expected true or false, got '" + std::string(value) + "'");
    }

    std::vector<std::string_view> list() const
    {
        std::vector<std::string_view> items = split_list(value);
        if (value.empty()) {
            fail("list must not be empty");
        }
        for (std::string_view item : items) {
            if (item.empty()) {
                fail("empty list element");
            }
        }
        return items;
    }

    template <typename T>
    std::vector<T> integer_list() const
    {
        std::vector<T> out;
        for (std::string_view item : list()) {
            Entry sub{line, key, item};
            out.push_back(sub.integer<T>());
        }
        return out;
    }
};

} // namespace

ExperimentPlan parse_plan(std::string_view text)
{
    ExperimentPlan plan;
    std::map<std::string, std::size_t> seen;
    std::size_t line_no = 0;
    std::size_t problems_line = 0;
    std::size_t dims_line = 0;
    std::size_t e_line = 0;

    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto nl = text.find('\n', pos);
        std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        if (const auto hash = raw.find('#'); hash != std::string_view::npos) {
            raw = raw.substr(0, hash);
        }
        raw = trim(raw);
        if (raw.empty()) {
            continue;
        }
        const auto eq = raw.find('=');
        if (eq == std::string_view::npos) {
            throw PlanError(line_no, std::string(raw), "expected 'key = value'");
        }
        Entry entry{line_no, std::string(trim(raw.substr(0, eq))), trim(raw.substr(eq + 1))};
        if (entry.key.empty()) {
            entry.fail("missing key before '='");
        }
        std::string canonical = entry.key == "P" ? "offspring_per_gen" : entry.key;
        if (!seen.emplace(canonical, line_no).second) {
            entry.fail("repeated key (first set on line " + std::to_string(seen[canonical]) + ")");
        }

        const std::string& key = canonical;
        if (key == "problems") {
            plan.problems.clear();
            for (std::string_view name : entry.list()) {
                try {
                    plan.problems.push_back(parse_problem_id(name));
                } catch (const ConfigError& e) {
                    entry.fail(e.what());
                }
            }
            problems_line = line_no;
        } else if (key == "dimensions") {
            plan.dimensions = entry.integer_list<Index>();
            dims_line = line_no;
        } else if (key == "seeds") {
            plan.seeds = entry.integer_list<std::uint64_t>();
        } else if (key == "objectives") {
            plan.objectives = entry.integer<Index>();
            if (plan.objectives < 2) {
                entry.fail("need at least 2 objectives");
            }
        } else if (key == "N") {
            plan.optimizer.capacity = entry.integer<Index>();
            if (plan.optimizer.capacity < 1) {
                entry.fail("N must be at least 1");
            }
        } else if (key == "offspring_per_gen") {
            plan.optimizer.offspring = entry.integer<Index>();
            if (plan.optimizer.offspring < 1) {
                entry.fail("offspring_per_gen must be at least 1");
            }
        } else if (key == "e") {
            plan.optimizer.evaluations = entry.integer<std::uint64_t>();
            e_line = line_no;
        } else if (key == "r") {
            plan.optimizer.attenuation = entry.real();
            if (!(plan.optimizer.attenuation > 0.0 && plan.optimizer.attenuation < 1.0)) {
                entry.fail("r must lie in (0, 1)");
            }
        } else if (key == "h0") {
            plan.optimizer.h0 = entry.real();
            if (!(plan.optimizer.h0 > 0.0)) {
                entry.fail("h0 must be positive");
            }
        } else if (key == "step_mode") {
            try {
                plan.optimizer.step_mode = parse_step_mode(entry.value);
            } catch (const ConfigError& e) {
                entry.fail(e.what());
            }
        } else if (key == "step_scale") {
            plan.optimizer.step_scale = entry.real();
            if (!(plan.optimizer.step_scale > 0.0)) {
                entry.fail("step_scale must be positive");
            }
        } else if (key == "kde_space") {
            try {
                plan.optimizer.kde_space = parse_kde_space(entry.value);
            } catch (const ConfigError& e) {
                entry.fail(e.what());
            }
        } else if (key == "igd_squared") {
            plan.optimizer.igd_squared = entry.boolean();
        } else if (key == "reference_points") {
            plan.reference_points = entry.integer<Index>();
        } else if (key == "out") {
            if (entry.value.empty()) {
                entry.fail("output directory must not be empty");
            }
            plan.output_dir = std::string(entry.value);
        } else if (key == "baseline") {
            plan.baseline = entry.boolean();
        } else if (key == "timing") {
            plan.timing = entry.boolean();
        } else {
            entry.fail("unknown key");
        }
    }

    if (plan.problems.empty()) {
        throw PlanError(problems_line, "problems", "at least one problem is required");
    }
    for (Index d : plan.dimensions) {
        if (d <= plan.objectives || d < 100) {
            throw PlanError(dims_line, "dimensions",
                            "dimension " + std::to_string(d)
                                + " must be at least 100 and exceed the objective count");
        }
    }
    if (plan.reference_points < plan.objectives) {
        throw PlanError(seen.count("reference_points") ? seen["reference_points"] : 0,
                        "reference_points", "need at least one point per objective");
    }
    if (plan.optimizer.evaluations < static_cast<std::uint64_t>(plan.optimizer.offspring)) {
        throw PlanError(e_line, "e", "evaluation limit must be at least offspring_per_gen");
    }
    plan.optimizer.validate();
    return plan;
}

ExperimentPlan load_plan(const fs::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path.string());
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_plan(buffer.str());
}

void apply_seed_override(ExperimentPlan& plan, const char* value)
{
    if (value == nullptr) {
        return;
    }
    Entry entry{0, "LTPPM_SEED", trim(value)};
    plan.seeds = {entry.integer<std::uint64_t>()};
}

std::string Cell::trace_name() const
{
    return std::string(to_string(algorithm)) + "_lsmop" + std::to_string(problem) + "_d"
        + std::to_string(dimension) + "_s" + std::to_string(seed) + ".csv";
}

std::vector<Cell> expand_cells(const ExperimentPlan& plan)
{
    std::vector<Algorithm> algorithms;
    if (plan.run_ltppm) {
        algorithms.push_back(Algorithm::Ltppm);
    }
    if (plan.baseline) {
        algorithms.push_back(Algorithm::Baseline);
    }
    std::vector<Cell> cells;
    for (Algorithm a : algorithms) {
        for (int p : plan.problems) {
            for (Index d : plan.dimensions) {
                for (std::uint64_t s : plan.seeds) {
                    cells.push_back({a, p, d, s});
                }
            }
        }
    }
    return cells;
}

CellOutcome run_cell(const ExperimentPlan& plan, const Cell& cell)
{
    CellOutcome outcome;
    outcome.cell = cell;
    try {
        const LsmopInstance problem = make_lsmop(cell.problem, plan.objectives, cell.dimension);
        OptimizerConfig config = plan.optimizer;
        config.seed = cell.seed;
        RunOptions options;
        options.reference = reference_front(problem, plan.reference_points).points;
        options.timing = plan.timing;

        const RunResult result = cell.algorithm == Algorithm::Ltppm
            ? run(problem, config, options)
            : run_uniform_baseline(problem, config, options);

        const auto t0 = std::chrono::steady_clock::now();
        const fs::path dir = plan.output_dir / "traces";
        fs::create_directories(dir);
        std::ofstream out(dir / cell.trace_name());
        write_trace_csv(out, result.trace);
        out.close();
        if (!out) {
            throw std::runtime_error("failed writing " + (dir / cell.trace_name()).string());
        }
        outcome.io_ms = plan.timing
            ? std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()
            : 0.0;
        outcome.final_row = result.trace.rows.back();
        outcome.evaluation_ms = outcome.final_row.evaluation_ms;
        outcome.ok = true;
    } catch (const std::exception& e) {
        outcome.error = e.what();
    }
    return outcome;
}

bool ExperimentSummary::all_ok() const
{
    return std::all_of(cells.begin(), cells.end(), [](const CellOutcome& c) { return c.ok; });
}

namespace {

double finite_mean(const std::vector<double>& values)
{
    double sum = 0.0;
    std::size_t n = 0;
    for (double v : values) {
        if (std::isfinite(v)) {
            sum += v;
            ++n;
        }
    }
    return n == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(n);
}

double finite_median(std::vector<double> values)
{
    std::erase_if(values, [](double v) { return !std::isfinite(v); });
    if (values.empty()) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

std::string sanitize(std::string text)
{
    std::replace_if(text.begin(), text.end(), [](char c) { return c == ',' || c == '\n' || c == '\r'; },
                    ' ');
    return text;
}

using GroupKey = std::tuple<int, int, Index>;

} // namespace

std::vector<GroupSummary> summarize(const std::vector<CellOutcome>& cells)
{
    std::map<GroupKey, std::vector<const CellOutcome*>> grouped;
    std::vector<GroupKey> order;
    for (const CellOutcome& c : cells) {
        const GroupKey key{static_cast<int>(c.cell.algorithm), c.cell.problem, c.cell.dimension};
        auto [it, inserted] = grouped.try_emplace(key);
        if (inserted) {
            order.push_back(key);
        }
        it->second.push_back(&c);
    }

    std::vector<GroupSummary> groups;
    for (const GroupKey& key : order) {
        auto members = grouped[key];
        std::stable_sort(members.begin(), members.end(),
                         [](const CellOutcome* a, const CellOutcome* b) {
                             return a->cell.seed < b->cell.seed;
                         });
        GroupSummary g;
        g.algorithm = static_cast<Algorithm>(std::get<0>(key));
        g.problem = std::get<1>(key);
        g.dimension = std::get<2>(key);
        std::vector<double> sp, igd_values, elapsed, evals, io;
        for (const CellOutcome* c : members) {
            if (!c->ok) {
                ++g.failed;
                if (!g.errors.empty()) {
                    g.errors += "; ";
                }
                g.errors += "seed " + std::to_string(c->cell.seed) + ": " + sanitize(c->error);
                continue;
            }
            ++g.runs;
            sp.push_back(c->final_row.sp);
            igd_values.push_back(c->final_row.igd);
            elapsed.push_back(c->final_row.elapsed_ms);
            evals.push_back(c->evaluation_ms);
            io.push_back(c->io_ms);
        }
        g.mean_sp = finite_mean(sp);
        g.median_sp = finite_median(sp);
        g.mean_igd = finite_mean(igd_values);
        g.median_igd = finite_median(igd_values);
        g.mean_elapsed_ms = finite_mean(elapsed);
        g.mean_evaluation_ms = finite_mean(evals);
        g.mean_io_ms = finite_mean(io);
        groups.push_back(std::move(g));
    }
    return groups;
}

void write_summary_csv(std::ostream& out, const std::vector<GroupSummary>& groups)
{
    out << kSummaryHeader << '\n';
    for (const GroupSummary& g : groups) {
        out << to_string(g.algorithm) << ",lsmop" << g.problem << ',' << g.dimension << ','
            << g.runs << ',' << g.failed << ',' << format_real(g.mean_sp) << ','
            << format_real(g.median_sp) << ',' << format_real(g.mean_igd) << ','
            << format_real(g.median_igd) << ',' << format_real(g.mean_elapsed_ms) << ','
            << g.errors << '\n';
    }
}

void write_timing_csv(std::ostream& out, const std::vector<GroupSummary>& groups)
{
    out << kTimingHeader << '\n';
    for (const GroupSummary& g : groups) {
        out << to_string(g.algorithm) << ",lsmop" << g.problem << ',' << g.dimension << ','
            << g.runs << ',' << format_real(g.mean_elapsed_ms) << ','
            << format_real(g.mean_evaluation_ms) << ',' << format_real(g.mean_io_ms) << '\n';
    }
}

ExperimentSummary run_experiments(const ExperimentPlan& plan, unsigned jobs, std::ostream* log)
{
    const std::vector<Cell> cells = expand_cells(plan);
    ExperimentSummary summary;
    summary.cells.resize(cells.size());
    fs::create_directories(plan.output_dir);

    std::atomic<std::size_t> next{0};
    std::mutex log_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) {
            summary.cells[i] = run_cell(plan, cells[i]);
            if (log != nullptr) {
                const CellOutcome& c = summary.cells[i];
                std::lock_guard lock(log_mutex);
                *log << to_string(c.cell.algorithm) << " lsmop" << c.cell.problem << " d="
                     << c.cell.dimension << " seed=" << c.cell.seed << ": "
                     << (c.ok ? "igd=" + format_real(c.final_row.igd) : "FAILED " + c.error)
                     << '\n';
            }
        }
    };
    jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(cells.size())));
    {
        std::vector<std::jthread> pool;
        for (unsigned j = 1; j < jobs; ++j) {
            pool.emplace_back(worker);
        }
        worker();
    }

    summary.groups = summarize(summary.cells);
    std::ofstream sum_out(plan.output_dir / "summary.csv");
    write_summary_csv(sum_out, summary.groups);
    std::ofstream time_out(plan.output_dir / "timing.csv");
    write_timing_csv(time_out, summary.groups);
    return summary;
}

std::vector<std::string> check_summary(const fs::path& dir)
{
    std::vector<std::string> problems;
    const std::regex name_re(R"(^(ltppm|baseline)_lsmop([1-9])_d([0-9]+)_s([0-9]+)\.csv$)");

    std::vector<CellOutcome> cells;
    const fs::path traces = dir / "traces";
    if (fs::is_directory(traces)) {
        for (const auto& entry : fs::directory_iterator(traces)) {
            const std::string name = entry.path().filename().string();
            std::smatch m;
            if (!std::regex_match(name, m, name_re)) {
                continue;
            }
            CellOutcome c;
            c.cell = {m[1] == "ltppm" ? Algorithm::Ltppm : Algorithm::Baseline,
                      std::stoi(m[2]), static_cast<Index>(std::stoll(m[3])),
                      std::stoull(m[4])};
            std::ifstream in(entry.path());
            const RunTrace trace = read_trace_csv(in);
            if (trace.rows.empty()) {
                problems.push_back(name + ": empty trace");
                continue;
            }
            c.final_row = trace.rows.back();
            c.ok = true;
            cells.push_back(c);
        }
    }
    std::sort(cells.begin(), cells.end(), [](const CellOutcome& a, const CellOutcome& b) {
        return std::tie(a.cell.algorithm, a.cell.problem, a.cell.dimension, a.cell.seed)
            < std::tie(b.cell.algorithm, b.cell.problem, b.cell.dimension, b.cell.seed);
    });

    std::map<std::string, std::vector<std::string>> recomputed;
    for (const GroupSummary& g : summarize(cells)) {
        const std::string key = std::string(to_string(g.algorithm)) + ",lsmop"
            + std::to_string(g.problem) + "," + std::to_string(g.dimension);
        recomputed[key] = {std::to_string(g.runs),        format_real(g.mean_sp),
                           format_real(g.median_sp),      format_real(g.mean_igd),
                           format_real(g.median_igd),     format_real(g.mean_elapsed_ms)};
    }

    std::ifstream in(dir / "summary.csv");
    if (!in) {
        problems.push_back("missing summary.csv");
        return problems;
    }
    std::string line;
    std::getline(in, line);
    if (line != kSummaryHeader) {
        problems.push_back("summary.csv: unexpected header");
        return problems;
    }
    std::set<std::string> listed;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) {
            fields.push_back(field);
        }
        if (fields.size() < 10) {
            problems.push_back("summary.csv: short row '" + line + "'");
            continue;
        }
        const std::string key = fields[0] + "," + fields[1] + "," + fields[2];
        listed.insert(key);
        const std::vector<std::string> stored{fields[3], fields[5], fields[6],
                                              fields[7], fields[8], fields[9]};
        const auto it = recomputed.find(key);
        if (it == recomputed.end()) {
            if (fields[3] != "0") {
                problems.push_back(key + ": no trace files for a group with runs");
            }
            continue;
        }
        if (it->second != stored) {
            problems.push_back(key + ": summary disagrees with traces");
        }
    }
    for (const auto& [key, _] : recomputed) {
        if (!listed.count(key)) {
            problems.push_back(key + ": traces present but group missing from summary");
        }
    }
    return problems;
}

} // namespace ltppm
