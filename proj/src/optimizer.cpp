#include "ltppm/optimizer.hpp"

#include "ltppm/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

namespace ltppm {

namespace {

using clock = std::chrono::steady_clock;

double seconds_since(clock::time_point t0)
{
    return std::chrono::duration<double>(clock::now() - t0).count();
}

// Wall clock that can be paused while metrics are computed.
class Stopwatch {
public:
    void start() { t0_ = clock::now(); }
    void stop() { total_ += seconds_since(t0_); }
    double elapsed_ms() const { return total_ * 1e3; }

private:
    clock::time_point t0_;
    double total_ = 0.0;
};

double bandwidth_at(const OptimizerConfig& config, std::uint64_t k)
{
    return std::max(config.h0 * std::pow(config.attenuation, static_cast<double>(k)),
                    kMinBandwidth);
}

Particle random_particle(const Problem& problem, RandomStream& rng, EvaluationBudget& budget,
                         double& eval_seconds)
{
    const Bounds& b = problem.bounds();
    Vector x(b.size());
    for (Index i = 0; i < x.size(); ++i) {
        x(i) = rng.uniform(b.lower(i), b.upper(i));
    }
    Vector v = rng.unit_vector(b.size());
    const auto t0 = clock::now();
    Vector f = evaluate_counted(problem, x, budget);
    eval_seconds += seconds_since(t0);
    return {std::move(x), std::move(f), std::move(v)};
}

Archive initialize_timed(const Problem& problem, Index count, RandomStream& rng,
                         EvaluationBudget& budget, double& eval_seconds)
{
    if (budget.remaining() < static_cast<std::uint64_t>(count)) {
        throw ContractViolation("initialize: budget smaller than the initial population");
    }
    Archive population;
    population.capacity = count;
    population.particles.reserve(static_cast<std::size_t>(count));
    for (Index i = 0; i < count; ++i) {
        population.particles.push_back(random_particle(problem, rng, budget, eval_seconds));
    }
    Archive empty;
    empty.capacity = count;
    return update_archive(empty, population.particles);
}

TraceRow make_row(std::uint64_t iter, double h, const Archive& archive,
                  const EvaluationBudget& budget, const RunOptions& options, bool igd_squared,
                  const Stopwatch& watch, double eval_seconds)
{
    TraceRow row;
    row.iter = iter;
    row.evals = budget.used();
    row.h = h;
    row.archive_size = static_cast<std::uint64_t>(archive.size());
    row.sp = std::numeric_limits<double>::quiet_NaN();
    row.igd = std::numeric_limits<double>::quiet_NaN();
    if (options.reference && !archive.empty()) {
        const MetricReport report = measure(*options.reference, archive.objectives(), igd_squared);
        row.sp = report.sp;
        row.igd = report.igd;
    }
    row.elapsed_ms = options.timing ? watch.elapsed_ms() : 0.0;
    row.evaluation_ms = options.timing ? eval_seconds * 1e3 : 0.0;
    return row;
}

template <typename Generate>
RunResult run_loop(const Problem& problem, const OptimizerConfig& config,
                   const RunOptions& options, Generate&& generate)
{
    config.validate();
    RandomStream rng(config.seed);
    EvaluationBudget budget(config.evaluations);
    Stopwatch watch;
    double eval_seconds = 0.0;

    RunResult result;
    watch.start();
    Archive archive = initialize_timed(problem, config.offspring, rng, budget, eval_seconds);
    archive = truncate(archive, config.capacity, config.h0, config.kde_space, options.audit);
    archive.capacity = config.capacity;
    watch.stop();

    double h = config.h0;
    result.trace.rows.push_back(
        make_row(0, h, archive, budget, options, config.igd_squared, watch, eval_seconds));
    if (options.on_iteration) {
        options.on_iteration({0, h, archive, budget, nullptr});
    }

    std::uint64_t k = 0;
    while (!budget.exhausted()) {
        watch.start();
        Generation gen = generate(archive, h, rng, budget);
        eval_seconds += gen.evaluation_seconds;
        archive = update_archive(archive, gen.offspring, options.audit);
        archive = truncate(archive, config.capacity, h, config.kde_space, options.audit);
        ++k;
        h = bandwidth_at(config, k);
        watch.stop();

        result.trace.rows.push_back(
            make_row(k, h, archive, budget, options, config.igd_squared, watch, eval_seconds));
        if (options.on_iteration) {
            options.on_iteration({k, h, archive, budget, &gen});
        }
        if (gen.exhausted) {
            break;
        }
    }
    result.archive = std::move(archive);
    result.evaluations_used = budget.used();
    return result;
}

} // namespace

Matrix Archive::objectives() const
{
    if (particles.empty()) {
        return Matrix();
    }
    Matrix f(particles.front().objectives.size(), size());
    for (Index i = 0; i < size(); ++i) {
        f.col(i) = particles[static_cast<std::size_t>(i)].objectives;
    }
    return f;
}

bool Archive::mutually_nondominated() const
{
    for (const Particle& a : particles) {
        for (const Particle& b : particles) {
            if (dominates(a.objectives, b.objectives)) {
                return false;
            }
        }
    }
    return true;
}

void OptimizerConfig::validate() const
{
    if (capacity < 1) {
        throw ConfigError("N (archive capacity) must be at least 1");
    }
    if (offspring < 1) {
        throw ConfigError("P (offspring per generation) must be at least 1");
    }
    if (!(attenuation > 0.0 && attenuation < 1.0)) {
        throw ConfigError("r (bandwidth attenuation) must lie in (0, 1)");
    }
    if (evaluations < static_cast<std::uint64_t>(offspring)) {
        throw ConfigError("e (evaluation limit) must be at least P");
    }
    if (!(h0 > 0.0) || !std::isfinite(h0)) {
        throw ConfigError("h0 (initial bandwidth) must be positive");
    }
    if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
        throw ConfigError("step_scale must be positive");
    }
}

Archive initialize(const Problem& problem, Index count, RandomStream& rng,
                   EvaluationBudget& budget)
{
    double ignored = 0.0;
    return initialize_timed(problem, count, rng, budget, ignored);
}

Archive update_archive(const Archive& archive, std::span<const Particle> offspring,
                       std::vector<Removal>* audit)
{
    std::vector<const Particle*> pool;
    pool.reserve(archive.particles.size() + offspring.size());
    for (const Particle& p : archive.particles) {
        pool.push_back(&p);
    }
    for (const Particle& p : offspring) {
        pool.push_back(&p);
    }

    Archive result;
    result.capacity = archive.capacity;
    result.particles.reserve(pool.size());
    for (std::size_t i = 0; i < pool.size(); ++i) {
        const Particle* dominator = nullptr;
        for (std::size_t j = 0; j < pool.size(); ++j) {
            if (j != i && dominates(pool[j]->objectives, pool[i]->objectives)) {
                dominator = pool[j];
                break;
            }
        }
        if (dominator == nullptr) {
            result.particles.push_back(*pool[i]);
        } else if (audit != nullptr) {
            audit->push_back({Removal::Reason::Dominated, pool[i]->objectives,
                              dominator->objectives});
        }
    }
    return result;
}

namespace {
constexpr double kTieTolerance = 1e-12;
}

Archive truncate(const Archive& archive, Index capacity, double h, KdeSpace space,
                 std::vector<Removal>* audit)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ConfigError("truncate: bandwidth must be positive");
    }
    if (capacity < 1) {
        throw ConfigError("truncate: capacity must be at least 1");
    }
    if (archive.size() <= capacity) {
        return archive;
    }

    const Matrix raw = particle_coordinates(archive.particles, space);
    const Index n = raw.cols();
    const Index dims = raw.rows();
    std::vector<Index> alive(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        alive[static_cast<std::size_t>(i)] = i;
    }

    Matrix z(dims, n);
    Vector sums(n);
    Vector lo(dims);
    Vector hi(dims);

    // Normalizes the surviving members and recomputes their kernel sums; the
    // summation order matches density() so the first pass agrees bit for bit.
    auto rebuild = [&] {
        Matrix subset(dims, static_cast<Index>(alive.size()));
        for (std::size_t c = 0; c < alive.size(); ++c) {
            subset.col(static_cast<Index>(c)) = raw.col(alive[c]);
        }
        lo = subset.rowwise().minCoeff();
        hi = subset.rowwise().maxCoeff();
        const Vector dens = density(subset, h);
        const Matrix zs = minmax_normalize(subset);
        const double n_h = static_cast<double>(alive.size()) * h;
        for (std::size_t c = 0; c < alive.size(); ++c) {
            z.col(alive[c]) = zs.col(static_cast<Index>(c));
            sums(alive[c]) = dens(static_cast<Index>(c)) * n_h;
        }
    };

    rebuild();
    while (static_cast<Index>(alive.size()) > capacity) {
        // Incremental updates leave rounding noise, so near-equal sums count
        // as ties and the lowest index wins.
        std::size_t densest = 0;
        for (std::size_t c = 1; c < alive.size(); ++c) {
            if (sums(alive[c]) > sums(alive[densest]) * (1.0 + kTieTolerance)) {
                densest = c;
            }
        }
        const Index victim = alive[densest];
        alive.erase(alive.begin() + static_cast<std::ptrdiff_t>(densest));
        if (audit != nullptr) {
            audit->push_back({Removal::Reason::Truncated,
                              archive.particles[static_cast<std::size_t>(victim)].objectives,
                              Vector()});
        }

        bool was_extreme = false;
        for (Index r = 0; r < dims; ++r) {
            if (raw(r, victim) == lo(r) || raw(r, victim) == hi(r)) {
                was_extreme = true;
                break;
            }
        }
        if (was_extreme) {
            rebuild();
        } else {
            for (Index i : alive) {
                sums(i) -= gaussian_kernel((z.col(i) - z.col(victim)).norm() / h);
            }
        }
    }

    Archive result;
    result.capacity = archive.capacity;
    result.particles.reserve(alive.size());
    for (Index i : alive) {
        result.particles.push_back(archive.particles[static_cast<std::size_t>(i)]);
    }
    return result;
}

RunResult run(const Problem& problem, const OptimizerConfig& config, const RunOptions& options)
{
    TpmConfig tpm;
    tpm.step_mode = config.step_mode;
    tpm.offspring = config.offspring;
    tpm.step_scale = config.step_scale;
    tpm.kde_space = config.kde_space;
    return run_loop(problem, config, options,
                    [&](const Archive& archive, double h, RandomStream& rng,
                        EvaluationBudget& budget) {
                        tpm.bandwidth = h;
                        return tpm_generate(archive.particles, problem, tpm, rng, budget);
                    });
}

RunResult run_uniform_baseline(const Problem& problem, const OptimizerConfig& config,
                               const RunOptions& options)
{
    return run_loop(problem, config, options,
                    [&](const Archive&, double, RandomStream& rng, EvaluationBudget& budget) {
                        Generation gen;
                        for (Index i = 0; i < config.offspring && !budget.exhausted(); ++i) {
                            gen.offspring.push_back(
                                random_particle(problem, rng, budget, gen.evaluation_seconds));
                            gen.parents.push_back(-1);
                        }
                        gen.exhausted = budget.exhausted();
                        return gen;
                    });
}

} // namespace ltppm
