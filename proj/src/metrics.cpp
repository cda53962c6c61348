#include "ltppm/metrics.hpp"

#include <cmath>
#include <limits>

namespace ltppm {

double spacing(const Eigen::Ref<const Matrix>& front)
{
    const Index n = front.cols();
    if (n < 2) {
        throw UndefinedMetric("spacing needs at least two points");
    }
    Vector nearest = Vector::Constant(n, std::numeric_limits<double>::infinity());
    for (Index i = 0; i < n; ++i) {
        for (Index j = i + 1; j < n; ++j) {
            const double dist = (front.col(i) - front.col(j)).norm();
            nearest(i) = std::min(nearest(i), dist);
            nearest(j) = std::min(nearest(j), dist);
        }
    }
    const double mean = nearest.mean();
    return std::sqrt((nearest.array() - mean).square().sum() / static_cast<double>(n - 1));
}

double igd(const Eigen::Ref<const Matrix>& reference, const Eigen::Ref<const Matrix>& front,
           bool squared)
{
    if (reference.cols() == 0 || front.cols() == 0) {
        throw UndefinedMetric("igd needs non-empty reference and front");
    }
    if (reference.rows() != front.rows()) {
        throw ContractViolation("igd: reference and front differ in objective count");
    }
    double total = 0.0;
    for (Index r = 0; r < reference.cols(); ++r) {
        double best = std::numeric_limits<double>::infinity();
        for (Index c = 0; c < front.cols(); ++c) {
            best = std::min(best, (reference.col(r) - front.col(c)).squaredNorm());
        }
        total += squared ? best : std::sqrt(best);
    }
    return total / static_cast<double>(reference.cols());
}

MetricReport measure(const Eigen::Ref<const Matrix>& reference,
                     const Eigen::Ref<const Matrix>& front, bool igd_squared)
{
    MetricReport report;
    report.front_size = front.cols();
    report.reference_size = reference.cols();
    report.sp = front.cols() >= 2 ? spacing(front) : std::numeric_limits<double>::quiet_NaN();
    report.igd = igd(reference, front, igd_squared);
    return report;
}

} // namespace ltppm
