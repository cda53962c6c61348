#include "ltppm/tpm.hpp"

#include <chrono>
#include <cmath>
#include <string>

namespace ltppm {

HouseholderToAxis::HouseholderToAxis(const Eigen::Ref<const Vector>& v)
{
    const Index d = v.size();
    if (d < 1) {
        throw ContractViolation("householder: empty vector");
    }
    if (std::abs(v.norm() - 1.0) > 1e-9) {
        throw ContractViolation("householder: direction must be a unit vector");
    }
    w_ = v;
    const double tail = v.tail(d - 1).squaredNorm();
    // v_0 - 1 suffers cancellation when v is close to e_1; for unit v it
    // equals -tail / (1 + v_0).
    w_(0) = v(0) > 0.0 ? -tail / (1.0 + v(0)) : v(0) - 1.0;
    const double wtw = w_(0) * w_(0) + tail;
    beta_ = wtw > 0.0 ? 2.0 / wtw : 0.0;
}

Vector HouseholderToAxis::apply(const Eigen::Ref<const Vector>& y) const
{
    if (y.size() != w_.size()) {
        throw ContractViolation("householder: dimension mismatch");
    }
    if (beta_ == 0.0) {
        return y;
    }
    return y - (beta_ * w_.dot(y)) * w_;
}

Matrix HouseholderToAxis::matrix() const
{
    const Index d = w_.size();
    return Matrix::Identity(d, d) - beta_ * w_ * w_.transpose();
}

Vector randpick(const Eigen::Ref<const Vector>& v, double theta, RandomStream& rng)
{
    const Index d = v.size();
    const HouseholderToAxis to_axis(v);
    if (d == 1) {
        return std::cos(theta) >= 0.0 ? Vector(v) : Vector(-v);
    }
    Vector y(d);
    y(0) = std::cos(theta);
    y.tail(d - 1) = std::sin(theta) * rng.unit_vector(d - 1);
    return to_axis.apply(y);
}

StepMode parse_step_mode(std::string_view text)
{
    if (text == "continuous" || text == "continuous-magnitude") {
        return StepMode::Continuous;
    }
    if (text == "ceiling" || text == "ceiling-faithful") {
        return StepMode::Ceiling;
    }
    throw ConfigError("step_mode must be 'continuous' or 'ceiling', got '" + std::string(text)
                      + "'");
}

std::string_view to_string(StepMode mode)
{
    return mode == StepMode::Continuous ? "continuous" : "ceiling";
}

void TpmConfig::validate() const
{
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
        throw ConfigError("tpm: bandwidth must be positive");
    }
    if (offspring < 0) {
        throw ConfigError("tpm: offspring count must be non-negative");
    }
    if (!(step_scale > 0.0) || !std::isfinite(step_scale)) {
        throw ConfigError("tpm: step_scale must be positive");
    }
}

Generation tpm_generate(std::span<const Particle> archive, const Problem& problem,
                        const TpmConfig& config, RandomStream& rng, EvaluationBudget& budget)
{
    config.validate();
    Generation gen;
    if (config.offspring == 0) {
        gen.exhausted = budget.exhausted();
        return gen;
    }
    if (archive.empty()) {
        throw ContractViolation("tpm_generate: empty archive");
    }

    const double h = config.bandwidth;
    const double theta_sd = std::sqrt(1.0 / h);
    const double lambda_sd = std::sqrt(h);
    const Bounds& bounds = problem.bounds();
    const Vector scale = config.step_mode == StepMode::Continuous
        ? Vector(bounds.width() * config.step_scale)
        : Vector::Ones(bounds.size());

    const ImportanceDistribution dist = importance_distribution(archive, h, config.kde_space);
    gen.offspring.reserve(static_cast<std::size_t>(config.offspring));
    gen.parents.reserve(static_cast<std::size_t>(config.offspring));

    using clock = std::chrono::steady_clock;
    for (Index i = 0; i < config.offspring; ++i) {
        if (budget.exhausted()) {
            break;
        }
        SampledParent parent = isample(archive, dist, rng);
        const double theta = rng.normal(0.0, theta_sd);
        Vector u = randpick(parent.direction, theta, rng);
        const double lambda = rng.normal(0.0, lambda_sd);
        const double step = config.step_mode == StepMode::Continuous ? std::abs(lambda)
                                                                     : std::ceil(lambda);

        Vector x = clamp_to_bounds(parent.solution + step * scale.cwiseProduct(u), bounds);
        const auto t0 = clock::now();
        Vector f = evaluate_counted(problem, x, budget);
        gen.evaluation_seconds += std::chrono::duration<double>(clock::now() - t0).count();

        gen.offspring.push_back({std::move(x), std::move(f), std::move(u)});
        gen.parents.push_back(parent.index);
    }
    gen.exhausted = budget.exhausted();
    return gen;
}

} // namespace ltppm
