#include "ltppm/core.hpp"

#include <utility>

namespace ltppm {

Bounds::Bounds(Vector lo, Vector hi) : lower(std::move(lo)), upper(std::move(hi))
{
    if (lower.size() != upper.size()) {
        throw ConfigError("bounds: lower and upper differ in length");
    }
    if (!lower.allFinite() || !upper.allFinite() || (lower.array() > upper.array()).any()) {
        throw ConfigError("bounds: need finite lower <= upper in every dimension");
    }
}

void EvaluationBudget::consume()
{
    if (exhausted()) {
        throw BudgetExhausted("evaluation budget of " + std::to_string(limit_) + " exhausted");
    }
    ++used_;
}

Vector evaluate_counted(const Problem& problem, const Eigen::Ref<const Vector>& x,
                        EvaluationBudget& budget)
{
    if (budget.exhausted()) {
        throw BudgetExhausted("evaluation budget of " + std::to_string(budget.limit())
                              + " exhausted");
    }
    Vector f = problem.evaluate(x);
    budget.consume();
    return f;
}

} // namespace ltppm
