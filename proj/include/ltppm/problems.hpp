#pragma once

#include "ltppm/core.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace ltppm {

/// Landscape functions used on the distance-variable subgroups.
enum class Landscape { Sphere, Schwefel, Rosenbrock, Rastrigin, Griewank, Ackley };

/// How distance variables are coupled to the first position variable.
enum class Linkage { Linear, Nonlinear };

enum class FrontShape { Linear, Spherical, Disconnected };

double landscape_value(Landscape kind, const Eigen::Ref<const Vector>& y);

/// Contiguous run of decision variables [start, start + length).
struct Subgroup {
    Index start;
    Index length;
};

/// One LSMOP1..LSMOP9 problem with m objectives and d decision variables.
///
/// Variables 0..m-2 are position variables in [0, 1]; the remaining d-m+1
/// distance variables lie in [0, 10] and are split into m groups of n_k = 5
/// subgroups each, with group sizes drawn from a logistic-map chaos sequence.
/// See PROBLEMS.md for the exact construction and the pinned constants.
class LsmopInstance final : public Problem {
public:
    static constexpr int kSubgroups = 5;

    LsmopInstance(int id, Index m, Index d);

    int id() const { return id_; }
    std::string name() const override { return "lsmop" + std::to_string(id_); }
    Index num_objectives() const override { return m_; }
    Index dimension() const override { return d_; }
    const Bounds& bounds() const override { return bounds_; }

    Linkage linkage() const { return linkage_; }
    FrontShape front_shape() const { return shape_; }
    Landscape odd_landscape() const { return odd_; }
    Landscape even_landscape() const { return even_; }

    /// groups()[i] holds the n_k subgroups feeding objective i's distance term.
    const std::vector<std::vector<Subgroup>>& groups() const { return groups_; }

    /// Distance variables after applying the variable linkage; position
    /// variables are copied through unchanged.
    Vector linked(const Eigen::Ref<const Vector>& x) const;

    /// Per-objective distance terms g_i, each >= 0 and zero on the optimal set.
    Vector distance_terms(const Eigen::Ref<const Vector>& x) const;

    /// A decision vector with the given position variables whose distance
    /// variables sit at the landscape optimum (so it maps onto the true front).
    Vector optimal_solution(const Eigen::Ref<const Vector>& position) const;

    Vector evaluate(const Eigen::Ref<const Vector>& x) const override;

private:
    int id_;
    Index m_;
    Index d_;
    Bounds bounds_;
    Linkage linkage_;
    FrontShape shape_;
    Landscape odd_;
    Landscape even_;
    std::vector<std::vector<Subgroup>> groups_;
};

/// Validates and builds an instance; throws ConfigError on a bad id, m < 2,
/// d <= m or d < 100.
LsmopInstance make_lsmop(int id, Index m, Index d);

/// Parses "lsmop1" .. "lsmop9" (case-insensitive) into the numeric id.
int parse_problem_id(std::string_view name);

/// Points sampled deterministically from the true Pareto front, one per
/// column (m x count).
struct ReferenceFront {
    Matrix points;
    Index requested = 0;

    Index size() const { return points.cols(); }
};

/// Simplex-lattice design: all points with non-negative coordinates that are
/// multiples of 1/divisions and sum to one, one per column.
Matrix simplex_lattice(Index m, Index divisions);

/// Largest lattice with at most k points (k >= m).
Matrix uniform_simplex_points(Index m, Index k);

/// k well-spread points on the instance's analytic front (k >= m). Linear
/// fronts use the simplex lattice, spherical fronts the normalized lattice,
/// and the disconnected front a grid over its non-dominated segments.
ReferenceFront reference_front(const LsmopInstance& instance, Index k);

/// Residual of the analytic front equation for a point: sum f - 1 (linear),
/// sum f^2 - 1 (spherical), or f_m minus its value implied by f_1..f_{m-1}
/// (disconnected).
double front_residual(FrontShape shape, const Eigen::Ref<const Vector>& f);

} // namespace ltppm
