#include "ltppm/problems.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

namespace ltppm {

namespace {

using std::numbers::pi;

struct Recipe {
    Landscape odd;
    Landscape even;
    Linkage linkage;
    FrontShape shape;
};

Recipe recipe_for(int id)
{
    switch (id) {
    case 1: return {Landscape::Sphere, Landscape::Sphere, Linkage::Linear, FrontShape::Linear};
    case 2: return {Landscape::Griewank, Landscape::Schwefel, Linkage::Linear, FrontShape::Linear};
    case 3: return {Landscape::Rastrigin, Landscape::Rosenbrock, Linkage::Linear, FrontShape::Linear};
    case 4: return {Landscape::Ackley, Landscape::Griewank, Linkage::Linear, FrontShape::Linear};
    case 5: return {Landscape::Sphere, Landscape::Sphere, Linkage::Nonlinear, FrontShape::Spherical};
    case 6: return {Landscape::Rosenbrock, Landscape::Schwefel, Linkage::Nonlinear, FrontShape::Spherical};
    case 7: return {Landscape::Ackley, Landscape::Rosenbrock, Linkage::Nonlinear, FrontShape::Spherical};
    case 8: return {Landscape::Griewank, Landscape::Sphere, Linkage::Nonlinear, FrontShape::Spherical};
    case 9: return {Landscape::Sphere, Landscape::Ackley, Linkage::Nonlinear, FrontShape::Disconnected};
    default: throw ConfigError("lsmop: problem id must be in 1..9, got " + std::to_string(id));
    }
}

// Value of the linked variable at which each landscape attains its minimum.
double landscape_optimum(Landscape kind)
{
    return kind == Landscape::Rosenbrock ? 1.0 : 0.0;
}

// Linkage multiplier for 0-based variable index i (the construction uses
// 1-based indices).
double linkage_factor(Linkage linkage, Index i, Index d)
{
    const double t = static_cast<double>(i + 1) / static_cast<double>(d);
    return linkage == Linkage::Linear ? 1.0 + t : 1.0 + std::cos(0.5 * pi * t);
}

// Disconnected-front segments of the position variables: [0, a] and [b, c].
constexpr double kSegA = 0.251412;
constexpr double kSegB = 0.631627;
constexpr double kSegC = 0.859401;

double disconnected_last_objective(const Eigen::Ref<const Vector>& head, double one_plus_g)
{
    const auto m = static_cast<double>(head.size() + 1);
    double h = m;
    for (Index k = 0; k < head.size(); ++k) {
        h -= head(k) / one_plus_g * (1.0 + std::sin(3.0 * pi * head(k)));
    }
    return one_plus_g * h;
}

} // namespace

double landscape_value(Landscape kind, const Eigen::Ref<const Vector>& y)
{
    const Index n = y.size();
    switch (kind) {
    case Landscape::Sphere:
        return y.squaredNorm();
    case Landscape::Schwefel:
        return n == 0 ? 0.0 : y.cwiseAbs().maxCoeff();
    case Landscape::Rosenbrock: {
        double s = 0.0;
        for (Index i = 0; i + 1 < n; ++i) {
            const double a = y(i) * y(i) - y(i + 1);
            const double b = y(i) - 1.0;
            s += 100.0 * a * a + b * b;
        }
        return s;
    }
    case Landscape::Rastrigin: {
        double s = 0.0;
        for (Index i = 0; i < n; ++i) {
            s += y(i) * y(i) - 10.0 * std::cos(2.0 * pi * y(i)) + 10.0;
        }
        return s;
    }
    case Landscape::Griewank: {
        double sum = 0.0;
        double prod = 1.0;
        for (Index i = 0; i < n; ++i) {
            sum += y(i) * y(i);
            prod *= std::cos(y(i) / std::sqrt(static_cast<double>(i + 1)));
        }
        return sum / 4000.0 - prod + 1.0;
    }
    case Landscape::Ackley: {
        if (n == 0) {
            return 0.0;
        }
        const double mean_sq = y.squaredNorm() / static_cast<double>(n);
        double mean_cos = 0.0;
        for (Index i = 0; i < n; ++i) {
            mean_cos += std::cos(2.0 * pi * y(i));
        }
        mean_cos /= static_cast<double>(n);
        // Grouped so both brackets are non-negative in floating point.
        return (20.0 - 20.0 * std::exp(-0.2 * std::sqrt(mean_sq)))
            + (std::exp(1.0) - std::exp(mean_cos));
    }
    }
    return 0.0;
}

LsmopInstance::LsmopInstance(int id, Index m, Index d) : id_(id), m_(m), d_(d)
{
    const Recipe r = recipe_for(id);
    linkage_ = r.linkage;
    shape_ = r.shape;
    odd_ = r.odd;
    even_ = r.even;

    if (m < 2) {
        throw ConfigError("lsmop: need at least 2 objectives");
    }
    if (d <= m) {
        throw ConfigError("lsmop: decision dimension " + std::to_string(d)
                          + " must exceed objective count " + std::to_string(m));
    }
    if (d < 100) {
        throw ConfigError("lsmop: decision dimension must be at least 100, got "
                          + std::to_string(d));
    }

    Vector lo = Vector::Zero(d);
    Vector hi = Vector::Constant(d, 10.0);
    hi.head(m - 1).setOnes();
    bounds_ = Bounds(std::move(lo), std::move(hi));

    // Chaos-based group sizes: c_1 = 3.8 * 0.1 * 0.9, c_{k+1} = 3.8 c_k (1 - c_k).
    std::vector<double> c(static_cast<std::size_t>(m));
    c[0] = 3.8 * 0.1 * (1.0 - 0.1);
    for (std::size_t i = 1; i < c.size(); ++i) {
        c[i] = 3.8 * c[i - 1] * (1.0 - c[i - 1]);
    }
    double c_sum = 0.0;
    for (double v : c) {
        c_sum += v;
    }
    const Index n_distance = d - m + 1;
    const double per_subgroup = static_cast<double>(n_distance) / kSubgroups;

    groups_.resize(static_cast<std::size_t>(m));
    Index start = m - 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
        const auto len = static_cast<Index>(std::floor(c[i] / c_sum * per_subgroup));
        if (len < 1) {
            throw ConfigError("lsmop: decision dimension too small for " + std::to_string(m)
                              + " objectives (empty subgroup)");
        }
        for (int j = 0; j < kSubgroups; ++j) {
            groups_[i].push_back({start, len});
            start += len;
        }
    }
    // Variables left over by the floor go to the final subgroup.
    groups_.back().back().length += d - start;
}

Vector LsmopInstance::linked(const Eigen::Ref<const Vector>& x) const
{
    Vector y = x;
    const double shift = 10.0 * x(0);
    for (Index i = m_ - 1; i < d_; ++i) {
        y(i) = linkage_factor(linkage_, i, d_) * x(i) - shift;
    }
    return y;
}

Vector LsmopInstance::distance_terms(const Eigen::Ref<const Vector>& x) const
{
    if (x.size() != d_) {
        throw ContractViolation(name() + ": expected " + std::to_string(d_)
                                + " decision variables, got " + std::to_string(x.size()));
    }
    const Vector y = linked(x);
    Vector g(m_);
    for (Index i = 0; i < m_; ++i) {
        const Landscape kind = (i % 2 == 0) ? odd_ : even_;
        double sum = 0.0;
        for (const Subgroup& s : groups_[static_cast<std::size_t>(i)]) {
            sum += landscape_value(kind, y.segment(s.start, s.length))
                / static_cast<double>(s.length);
        }
        g(i) = sum / kSubgroups;
    }
    return g;
}

Vector LsmopInstance::optimal_solution(const Eigen::Ref<const Vector>& position) const
{
    if (position.size() != m_ - 1) {
        throw ContractViolation(name() + ": expected " + std::to_string(m_ - 1)
                                + " position variables");
    }
    Vector x(d_);
    x.head(m_ - 1) = position;
    for (Index i = 0; i < m_; ++i) {
        const double target = landscape_optimum((i % 2 == 0) ? odd_ : even_);
        for (const Subgroup& s : groups_[static_cast<std::size_t>(i)]) {
            for (Index j = s.start; j < s.start + s.length; ++j) {
                x(j) = (target + 10.0 * position(0)) / linkage_factor(linkage_, j, d_);
            }
        }
    }
    if (!bounds_.contains(x)) {
        throw ContractViolation(name() + ": optimal distance variables leave the box "
                                         "for this position");
    }
    return x;
}

Vector LsmopInstance::evaluate(const Eigen::Ref<const Vector>& x) const
{
    const Vector g = distance_terms(x);
    Vector f(m_);
    switch (shape_) {
    case FrontShape::Linear:
        for (Index k = 0; k < m_; ++k) {
            double s = 1.0 + g(k);
            for (Index j = 0; j + 1 < m_ - k; ++j) {
                s *= x(j);
            }
            if (k > 0) {
                s *= 1.0 - x(m_ - 1 - k);
            }
            f(k) = s;
        }
        break;
    case FrontShape::Spherical:
        for (Index k = 0; k < m_; ++k) {
            const double g_next = (k + 1 < m_) ? g(k + 1) : 0.0;
            double s = 1.0 + g(k) + g_next;
            for (Index j = 0; j + 1 < m_ - k; ++j) {
                s *= std::cos(0.5 * pi * x(j));
            }
            if (k > 0) {
                s *= std::sin(0.5 * pi * x(m_ - 1 - k));
            }
            f(k) = s;
        }
        break;
    case FrontShape::Disconnected: {
        const double big_g = 1.0 + g.sum();
        f.head(m_ - 1) = x.head(m_ - 1);
        f(m_ - 1) = disconnected_last_objective(x.head(m_ - 1), 1.0 + big_g);
        break;
    }
    }
    return f;
}

LsmopInstance make_lsmop(int id, Index m, Index d)
{
    return LsmopInstance(id, m, d);
}

int parse_problem_id(std::string_view name)
{
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    constexpr std::string_view prefix = "lsmop";
    if (lower.size() == prefix.size() + 1 && lower.starts_with(prefix)) {
        const char digit = lower.back();
        if (digit >= '1' && digit <= '9') {
            return digit - '0';
        }
    }
    throw ConfigError("unknown problem '" + std::string(name) + "' (expected lsmop1..lsmop9)");
}

Matrix simplex_lattice(Index m, Index divisions)
{
    std::vector<std::vector<Index>> rows;
    std::vector<Index> current(static_cast<std::size_t>(m), 0);
    // Enumerate compositions of `divisions` into m parts in lexicographic order.
    auto recurse = [&](auto&& self, Index pos, Index left) -> void {
        if (pos == m - 1) {
            current[static_cast<std::size_t>(pos)] = left;
            rows.push_back(current);
            return;
        }
        for (Index v = left; v >= 0; --v) {
            current[static_cast<std::size_t>(pos)] = v;
            self(self, pos + 1, left - v);
        }
    };
    recurse(recurse, 0, divisions);

    Matrix points(m, static_cast<Index>(rows.size()));
    for (std::size_t c = 0; c < rows.size(); ++c) {
        for (Index r = 0; r < m; ++r) {
            points(r, static_cast<Index>(c)) = static_cast<double>(rows[c][static_cast<std::size_t>(r)])
                / static_cast<double>(divisions);
        }
    }
    return points;
}

namespace {

// C(n, k) saturating at `cap` + 1 so large arguments cannot overflow.
Index capped_binomial(Index n, Index k, Index cap)
{
    k = std::min(k, n - k);
    double result = 1.0;
    for (Index i = 1; i <= k; ++i) {
        result = result * static_cast<double>(n - k + i) / static_cast<double>(i);
        if (result > static_cast<double>(cap)) {
            return cap + 1;
        }
    }
    return static_cast<Index>(std::llround(result));
}

} // namespace

Matrix uniform_simplex_points(Index m, Index k)
{
    if (k < m) {
        throw ContractViolation("reference front: need k >= m");
    }
    Index divisions = 1;
    while (capped_binomial(divisions + 1 + m - 1, m - 1, k) <= k) {
        ++divisions;
    }
    return simplex_lattice(m, divisions);
}

ReferenceFront reference_front(const LsmopInstance& instance, Index k)
{
    const Index m = instance.num_objectives();
    if (k < m) {
        throw ContractViolation("reference front: need k >= m");
    }
    ReferenceFront front;
    front.requested = k;
    switch (instance.front_shape()) {
    case FrontShape::Linear:
        front.points = uniform_simplex_points(m, k);
        break;
    case FrontShape::Spherical:
        front.points = uniform_simplex_points(m, k).colwise().normalized();
        break;
    case FrontShape::Disconnected: {
        // Grid over the m-1 position coordinates, folded onto the two
        // non-dominated segments [0, a] and [b, c].
        const Index dims = m - 1;
        Index per_axis = 1;
        auto pow_index = [](Index base, Index e) {
            Index r = 1;
            for (Index i = 0; i < e; ++i) {
                r *= base;
            }
            return r;
        };
        while (pow_index(per_axis + 1, dims) <= k) {
            ++per_axis;
        }
        per_axis = std::max<Index>(per_axis, 2);
        const Index count = pow_index(per_axis, dims);
        const double split = kSegA / (kSegC - kSegB + kSegA);

        front.points.resize(m, count);
        for (Index c = 0; c < count; ++c) {
            Index rest = c;
            Vector head(dims);
            for (Index j = dims - 1; j >= 0; --j) {
                const double t = static_cast<double>(rest % per_axis)
                    / static_cast<double>(per_axis - 1);
                rest /= per_axis;
                head(j) = (t <= split) ? t * kSegA / split
                                       : (t - split) * (kSegC - kSegB) / (1.0 - split) + kSegB;
            }
            front.points.col(c).head(dims) = head;
            front.points(m - 1, c) = disconnected_last_objective(head, 2.0);
        }
        break;
    }
    }
    return front;
}

double front_residual(FrontShape shape, const Eigen::Ref<const Vector>& f)
{
    switch (shape) {
    case FrontShape::Linear:
        return f.sum() - 1.0;
    case FrontShape::Spherical:
        return f.squaredNorm() - 1.0;
    case FrontShape::Disconnected: {
        const Index m = f.size();
        return f(m - 1) - disconnected_last_objective(f.head(m - 1), 2.0);
    }
    }
    return 0.0;
}

} // namespace ltppm
