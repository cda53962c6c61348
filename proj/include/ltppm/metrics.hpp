#pragma once

#include "ltppm/core.hpp"

namespace ltppm {

/// Schott's spacing of a point set (one point per column). E_i is the
/// distance from point i to its nearest other point, and
///
///   SP = sqrt( 1/(n-1) * sum_i (E_i - mean(E))^2 ).
///
/// Throws UndefinedMetric for fewer than two points.
double spacing(const Eigen::Ref<const Matrix>& front);

/// Inverted generational distance: mean over reference points of the
/// Euclidean distance to the nearest front point. With `squared` the squared
/// distance is averaged instead. Throws UndefinedMetric on empty input.
double igd(const Eigen::Ref<const Matrix>& reference, const Eigen::Ref<const Matrix>& front,
           bool squared = false);

struct MetricReport {
    double sp = 0.0; // NaN when the front has a single point
    double igd = 0.0;
    Index front_size = 0;
    Index reference_size = 0;
};

MetricReport measure(const Eigen::Ref<const Matrix>& reference,
                     const Eigen::Ref<const Matrix>& front, bool igd_squared = false);

} // namespace ltppm
