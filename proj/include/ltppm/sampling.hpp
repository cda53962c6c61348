#pragma once

#include "ltppm/core.hpp"
#include "ltppm/random.hpp"

#include <span>
#include <string_view>
#include <vector>

namespace ltppm {

/// Which coordinates the kernel density estimate is computed in.
enum class KdeSpace { Objective, Decision };

KdeSpace parse_kde_space(std::string_view text);

/// Smallest density used before taking reciprocals.
inline constexpr double kDensityFloor = 1e-12;

/// Standard Gaussian density at t.
double gaussian_kernel(double t);

/// Per-row min-max scaling of a point set stored one point per column. Rows
/// whose values are all equal map to 0.
Matrix minmax_normalize(const Eigen::Ref<const Matrix>& points);

/// Stacks the chosen coordinates of each particle into columns.
Matrix particle_coordinates(std::span<const Particle> archive, KdeSpace space);

/// Kernel density estimate at every point of the set, after min-max
/// normalization:
///
///   density_k = 1 / (n h) * sum_i kappa(|z_k - z_i| / h)
///
/// Throws ConfigError for h <= 0 and ContractViolation for an empty set.
Vector density(const Eigen::Ref<const Matrix>& points, double h);

Vector density(std::span<const Particle> archive, double h, KdeSpace space = KdeSpace::Objective);

/// Element-wise reciprocal; densities below kDensityFloor are floored first.
Vector sparseness(const Eigen::Ref<const Vector>& densities);

/// Parent-selection distribution: normalized sparseness in archive order.
struct ImportanceDistribution {
    Vector weights;
    Index source_size = 0;
    double bandwidth = 0.0;

    /// Draws one index by inversion of the cumulative weights. O(log n).
    Index draw(RandomStream& rng) const;

    Vector cumulative;
};

ImportanceDistribution importance_distribution(const Eigen::Ref<const Vector>& sparseness,
                                               double bandwidth = 0.0);

/// Density, sparseness and normalization over an archive in one pass.
ImportanceDistribution importance_distribution(std::span<const Particle> archive, double h,
                                               KdeSpace space = KdeSpace::Objective);

struct SampledParent {
    Index index;
    Vector solution;
    Vector direction;
};

/// Draws a parent from an already-built distribution over `archive`.
SampledParent isample(std::span<const Particle> archive, const ImportanceDistribution& dist,
                      RandomStream& rng);

/// Builds the distribution for `archive` and draws one parent from it.
SampledParent isample(std::span<const Particle> archive, double h, RandomStream& rng,
                      KdeSpace space = KdeSpace::Objective);

} // namespace ltppm
