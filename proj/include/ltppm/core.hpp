#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ltppm {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

/// Invalid user-supplied configuration (bad id, non-positive bandwidth, ...).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A precondition of an operation was violated by the caller.
class ContractViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised by evaluate_counted when no evaluations remain. The optimizer
/// treats it as the normal termination signal.
class BudgetExhausted : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A quality indicator is not defined for the given input sizes.
class UndefinedMetric : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Pareto dominance for minimization: a is no worse than b everywhere and
/// strictly better somewhere.
template <typename DerivedA, typename DerivedB>
bool dominates(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b)
{
    if (a.size() != b.size()) {
        throw ContractViolation("dominates: objective vectors differ in length");
    }
    bool strictly_better = false;
    for (Index i = 0; i < a.size(); ++i) {
        if (a(i) > b(i)) {
            return false;
        }
        if (a(i) < b(i)) {
            strictly_better = true;
        }
    }
    return strictly_better;
}

/// Axis-aligned box [lower, upper].
struct Bounds {
    Vector lower;
    Vector upper;

    Bounds() = default;
    Bounds(Vector lo, Vector hi);

    Index size() const { return lower.size(); }
    Vector width() const { return upper - lower; }

    template <typename Derived>
    bool contains(const Eigen::MatrixBase<Derived>& x) const
    {
        return x.size() == size() && (x.array() >= lower.array()).all()
            && (x.array() <= upper.array()).all();
    }
};

/// Component-wise projection onto the box. Components already inside are
/// returned bit-for-bit unchanged.
template <typename Derived>
Vector clamp_to_bounds(const Eigen::MatrixBase<Derived>& x, const Bounds& bounds)
{
    if (x.size() != bounds.size()) {
        throw ContractViolation("clamp_to_bounds: dimension mismatch");
    }
    return x.derived().cwiseMax(bounds.lower).cwiseMin(bounds.upper);
}

/// A minimization problem over a box-bounded decision space.
class Problem {
public:
    virtual ~Problem() = default;

    virtual std::string name() const = 0;
    virtual Index num_objectives() const = 0;
    virtual Index dimension() const = 0;
    virtual const Bounds& bounds() const = 0;

    /// Pure and thread-safe. Throws ContractViolation on a size mismatch.
    virtual Vector evaluate(const Eigen::Ref<const Vector>& x) const = 0;
};

/// Counts objective-function evaluations against a fixed limit.
class EvaluationBudget {
public:
    explicit EvaluationBudget(std::uint64_t limit) : limit_(limit) {}

    std::uint64_t used() const { return used_; }
    std::uint64_t limit() const { return limit_; }
    std::uint64_t remaining() const { return limit_ - used_; }
    bool exhausted() const { return used_ >= limit_; }

    /// Records one evaluation; throws BudgetExhausted if none remain.
    void consume();

private:
    std::uint64_t used_ = 0;
    std::uint64_t limit_;
};

Vector evaluate_counted(const Problem& problem, const Eigen::Ref<const Vector>& x,
                        EvaluationBudget& budget);

/// A solution paired with the unit decision-space direction it moved along
/// when it was produced. Objectives are cached at creation and never
/// recomputed.
struct Particle {
    Vector solution;
    Vector objectives;
    Vector direction;
};

} // namespace ltppm
