#include "ltppm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace ltppm {

KdeSpace parse_kde_space(std::string_view text)
{
    if (text == "objective") {
        return KdeSpace::Objective;
    }
    if (text == "decision") {
        return KdeSpace::Decision;
    }
    throw ConfigError("kde_space must be 'objective' or 'decision', got '" + std::string(text)
                      + "'");
}

double gaussian_kernel(double t)
{
    return std::exp(-0.5 * t * t) * (0.5 * std::numbers::inv_sqrtpi * std::numbers::sqrt2);
}

Matrix minmax_normalize(const Eigen::Ref<const Matrix>& points)
{
    Matrix z(points.rows(), points.cols());
    for (Index r = 0; r < points.rows(); ++r) {
        const double lo = points.row(r).minCoeff();
        const double hi = points.row(r).maxCoeff();
        const double span = hi - lo;
        if (span > 0.0) {
            z.row(r) = (points.row(r).array() - lo) / span;
        } else {
            z.row(r).setZero();
        }
    }
    return z;
}

Matrix particle_coordinates(std::span<const Particle> archive, KdeSpace space)
{
    if (archive.empty()) {
        return Matrix();
    }
    const auto& first = space == KdeSpace::Objective ? archive.front().objectives
                                                     : archive.front().solution;
    Matrix pts(first.size(), static_cast<Index>(archive.size()));
    for (std::size_t i = 0; i < archive.size(); ++i) {
        pts.col(static_cast<Index>(i)) = space == KdeSpace::Objective ? archive[i].objectives
                                                                      : archive[i].solution;
    }
    return pts;
}

Vector density(const Eigen::Ref<const Matrix>& points, double h)
{
    if (!(h > 0.0) || !std::isfinite(h)) {
        throw ConfigError("kde bandwidth must be positive and finite");
    }
    const Index n = points.cols();
    if (n == 0) {
        throw ContractViolation("density: empty point set");
    }
    const Matrix z = minmax_normalize(points);
    Vector sums = Vector::Constant(n, gaussian_kernel(0.0));
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double k = gaussian_kernel((z.col(i) - z.col(j)).norm() / h);
            sums(i) += k;
            sums(j) += k;
        }
    }
    return sums / (static_cast<double>(n) * h);
}

Vector density(std::span<const Particle> archive, double h, KdeSpace space)
{
    if (archive.empty()) {
        throw ContractViolation("density: empty archive");
    }
    return density(particle_coordinates(archive, space), h);
}

Vector sparseness(const Eigen::Ref<const Vector>& densities)
{
    return densities.cwiseMax(kDensityFloor).cwiseInverse();
}

Index ImportanceDistribution::draw(RandomStream& rng) const
{
    const double u = rng.uniform01() * cumulative(cumulative.size() - 1);
    const double* begin = cumulative.data();
    const double* end = begin + cumulative.size();
    const auto it = std::upper_bound(begin, end, u);
    return std::min<Index>(static_cast<Index>(it - begin), cumulative.size() - 1);
}

ImportanceDistribution importance_distribution(const Eigen::Ref<const Vector>& sparseness,
                                               double bandwidth)
{
    if (sparseness.size() == 0) {
        throw ContractViolation("importance distribution: no particles");
    }
    ImportanceDistribution dist;
    dist.weights = sparseness / sparseness.sum();
    dist.source_size = sparseness.size();
    dist.bandwidth = bandwidth;
    dist.cumulative.resize(dist.weights.size());
    double acc = 0.0;
    for (Index i = 0; i < dist.weights.size(); ++i) {
        acc += dist.weights(i);
        dist.cumulative(i) = acc;
    }
    return dist;
}

ImportanceDistribution importance_distribution(std::span<const Particle> archive, double h,
                                               KdeSpace space)
{
    return importance_distribution(sparseness(density(archive, h, space)), h);
}

SampledParent isample(std::span<const Particle> archive, const ImportanceDistribution& dist,
                      RandomStream& rng)
{
    if (static_cast<Index>(archive.size()) != dist.source_size) {
        throw ContractViolation("isample: distribution was built for a different archive");
    }
    const Index k = dist.draw(rng);
    const Particle& p = archive[static_cast<std::size_t>(k)];
    return {k, p.solution, p.direction};
}

SampledParent isample(std::span<const Particle> archive, double h, RandomStream& rng,
                      KdeSpace space)
{
    return isample(archive, importance_distribution(archive, h, space), rng);
}

} // namespace ltppm
