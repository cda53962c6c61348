#pragma once

#include "ltppm/core.hpp"
#include "ltppm/random.hpp"
#include "ltppm/sampling.hpp"
#include "ltppm/tpm.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace ltppm {

/// Bandwidths never decay below this, so kernel and step variances stay finite.
inline constexpr double kMinBandwidth = 1e-300;

/// Bounded set of mutually non-dominated particles, kept in insertion order.
struct Archive {
    std::vector<Particle> particles;
    Index capacity = 0;

    Index size() const { return static_cast<Index>(particles.size()); }
    bool empty() const { return particles.empty(); }

    /// Objective vectors, one per column.
    Matrix objectives() const;
    bool mutually_nondominated() const;
};

struct OptimizerConfig {
    Index capacity = 300;           // N
    Index offspring = 300;          // P
    std::uint64_t evaluations = 100000; // e
    double attenuation = 0.9;       // r
    double h0 = 1.0;
    std::uint64_t seed = 1;
    StepMode step_mode = StepMode::Continuous;
    double step_scale = 0.1;
    KdeSpace kde_space = KdeSpace::Objective;
    bool igd_squared = false;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;
};

/// One entry of an archive audit: which union member left and why.
struct Removal {
    enum class Reason { Dominated, Truncated };
    Reason reason;
    Vector objectives;
    /// Objectives of a dominating member (Dominated only).
    Vector dominated_by;
};

/// P uniform random solutions with uniform random unit directions, evaluated
/// and reduced to their non-dominated subset. Capacity is set to P.
Archive initialize(const Problem& problem, Index count, RandomStream& rng,
                   EvaluationBudget& budget);

/// Non-dominated subset of archive followed by offspring, in that order.
/// Identical objective vectors do not dominate each other and are all kept.
Archive update_archive(const Archive& archive, std::span<const Particle> offspring,
                       std::vector<Removal>* audit = nullptr);

/// Repeatedly removes the member of highest kernel density until at most
/// `capacity` remain. Densities within a relative 1e-12 of each other count as
/// tied and the lowest index goes first. Densities are refreshed after every
/// removal.
Archive truncate(const Archive& archive, Index capacity, double h,
                 KdeSpace space = KdeSpace::Objective, std::vector<Removal>* audit = nullptr);

struct TraceRow {
    std::uint64_t iter = 0;
    std::uint64_t evals = 0;
    double h = 0.0;
    std::uint64_t archive_size = 0;
    double sp = 0.0;
    double igd = 0.0;
    double elapsed_ms = 0.0;

    /// Cumulative milliseconds spent inside objective evaluations (not serialized).
    double evaluation_ms = 0.0;
};

struct RunTrace {
    std::vector<TraceRow> rows;
};

/// Read-only view handed to an iteration observer.
struct IterationView {
    std::uint64_t iteration;
    double h;
    const Archive& archive;
    const EvaluationBudget& budget;
    const Generation* generation; // null for the initial archive
};

struct RunOptions {
    /// Reference front (one point per column) for per-iteration SP/IGD; when
    /// absent both columns are NaN.
    std::optional<Matrix> reference;
    /// Record wall-clock columns; when false elapsed_ms is written as 0 so
    /// traces are byte-reproducible.
    bool timing = true;
    std::function<void(const IterationView&)> on_iteration;
    /// Collects every removal from the archive with its reason.
    std::vector<Removal>* audit = nullptr;
};

struct RunResult {
    Archive archive;
    RunTrace trace;
    std::uint64_t evaluations_used = 0;
};

/// The generate / filter / truncate / decay loop, run until the evaluation
/// budget is spent. The generation in which the budget runs out is still
/// filtered into the archive.
RunResult run(const Problem& problem, const OptimizerConfig& config,
              const RunOptions& options = {});

/// Control: the same loop with offspring drawn uniformly from the box.
RunResult run_uniform_baseline(const Problem& problem, const OptimizerConfig& config,
                               const RunOptions& options = {});

} // namespace ltppm
