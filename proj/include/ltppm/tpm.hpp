#pragma once

#include "ltppm/core.hpp"
#include "ltppm/random.hpp"
#include "ltppm/sampling.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace ltppm {

/// Reflection H = I - 2 w w^T / (w^T w), w = v - e_1, mapping the unit vector
/// v onto e_1. H is symmetric and orthogonal, so it is its own inverse and
/// also maps e_1 back onto v. Applying it costs O(d); the matrix is never
/// formed on the fast path.
class HouseholderToAxis {
public:
    /// Throws ContractViolation unless |v| = 1 within 1e-9.
    explicit HouseholderToAxis(const Eigen::Ref<const Vector>& v);

    Index dimension() const { return w_.size(); }
    bool is_identity() const { return beta_ == 0.0; }

    Vector apply(const Eigen::Ref<const Vector>& y) const;

    /// Dense d x d matrix, for inspection and tests.
    Matrix matrix() const;

private:
    Vector w_;
    double beta_ = 0.0; // 2 / (w^T w), or 0 for the identity
};

/// A unit vector at angle |theta| from v (theta is used as given, so angles
/// beyond pi wrap through the cosine). The orthogonal component is uniform
/// on the unit sphere of v's complement; for d = 1 the result is
/// sign(cos theta) * v.
Vector randpick(const Eigen::Ref<const Vector>& v, double theta, RandomStream& rng);

/// Offspring step rule.
enum class StepMode {
    /// lambda' = |lambda|, applied per dimension as lambda' * width * step_scale.
    Continuous,
    /// lambda' = ceil(lambda), applied to the raw unit direction.
    Ceiling,
};

StepMode parse_step_mode(std::string_view text);
std::string_view to_string(StepMode mode);

struct TpmConfig {
    double bandwidth = 1.0;
    StepMode step_mode = StepMode::Continuous;
    Index offspring = 300;
    /// Fraction of each dimension's bound width per unit of |lambda|.
    double step_scale = 0.1;
    KdeSpace kde_space = KdeSpace::Objective;

    void validate() const;
};

struct Generation {
    std::vector<Particle> offspring;
    /// Archive index of each offspring's parent.
    std::vector<Index> parents;
    /// True once the evaluation budget is used up.
    bool exhausted = false;
    /// Wall time spent inside objective evaluations.
    double evaluation_seconds = 0.0;
};

/// Produces up to config.offspring new particles from `archive`: each picks a
/// parent by importance sampling, turns its heading by an angle drawn from
/// N(0, 1/h), steps a distance drawn from N(0, h), and is clamped, evaluated
/// and charged to `budget`. Stops early when the budget runs out.
Generation tpm_generate(std::span<const Particle> archive, const Problem& problem,
                        const TpmConfig& config, RandomStream& rng, EvaluationBudget& budget);

} // namespace ltppm
