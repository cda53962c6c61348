#include "ltppm/sampling.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace ltppm;

namespace {

const double kappa0 = 1.0 / std::sqrt(2.0 * std::numbers::pi);

Particle particle_at(std::initializer_list<double> f)
{
    Particle p;
    p.objectives.resize(static_cast<Index>(f.size()));
    Index i = 0;
    for (double v : f) {
        p.objectives(i++) = v;
    }
    p.solution = Vector::Zero(4);
    p.direction = Vector::Unit(4, 0);
    return p;
}

std::vector<oracle::Point> objective_points(const std::vector<Particle>& archive)
{
    std::vector<oracle::Point> pts;
    for (const Particle& p : archive) {
        pts.emplace_back(p.objectives.data(), p.objectives.data() + p.objectives.size());
    }
    return pts;
}

// Five non-dominated points on a bent 3-objective front.
std::vector<Particle> five_particles()
{
    return {particle_at({0.0, 0.2, 1.0}), particle_at({0.1, 0.3, 0.7}),
            particle_at({0.15, 0.35, 0.6}), particle_at({0.6, 0.8, 0.1}),
            particle_at({1.0, 0.0, 0.4})};
}

} // namespace

TEST_CASE("gaussian kernel")
{
    CHECK(gaussian_kernel(0.0) == doctest::Approx(0.3989422804014327).epsilon(1e-15));
    CHECK(gaussian_kernel(1.0) == doctest::Approx(std::exp(-0.5) * kappa0).epsilon(1e-15));
    CHECK(gaussian_kernel(-2.0) == gaussian_kernel(2.0));
}

TEST_CASE("density: documented examples")
{
    SUBCASE("single particle")
    {
        const std::vector<Particle> a{particle_at({0.3, 0.7})};
        const Vector d = density(a, 1.0);
        CHECK(d(0) == doctest::Approx(kappa0).epsilon(1e-15));
        CHECK(d(0) == doctest::Approx(0.39894228).epsilon(1e-8));
    }
    SUBCASE("two coincident particles")
    {
        const std::vector<Particle> a{particle_at({0.3, 0.7}), particle_at({0.3, 0.7})};
        const Vector d = density(a, 1.0);
        CHECK(d(0) == doctest::Approx(kappa0).epsilon(1e-15));
        CHECK(d(1) == doctest::Approx(kappa0).epsilon(1e-15));
    }
    SUBCASE("mirror-symmetric pair")
    {
        const std::vector<Particle> a{particle_at({0.0, 1.0}), particle_at({1.0, 0.0})};
        const Vector d = density(a, 0.5);
        CHECK(d(0) == d(1));
    }
}

TEST_CASE("density matches the direct oracle")
{
    RandomStream rng(4);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<Particle> a;
        const int n = 1 + static_cast<int>(rng.index(40));
        for (int i = 0; i < n; ++i) {
            a.push_back(particle_at({rng.uniform01(), rng.uniform01() * 5, rng.uniform01()}));
        }
        const double h = rng.uniform(0.05, 3.0);
        const Vector d = density(a, h);
        const std::vector<double> expected = oracle::kde(objective_points(a), h);
        for (int i = 0; i < n; ++i) {
            CHECK(d(i) == doctest::Approx(expected[static_cast<std::size_t>(i)]).epsilon(1e-12));
            CHECK(d(i) > 0.0);
        }
    }
}

TEST_CASE("density: degenerate objective maps to zero")
{
    const Matrix pts = (Matrix(2, 3) << 0.0, 0.5, 1.0, 2.0, 2.0, 2.0).finished();
    const Matrix z = minmax_normalize(pts);
    CHECK(z.row(1).isZero());
    CHECK(z(0, 1) == 0.5);
}

TEST_CASE("density: errors")
{
    const std::vector<Particle> a{particle_at({0.3, 0.7})};
    CHECK_THROWS_AS(density(a, 0.0), ConfigError);
    CHECK_THROWS_AS(density(a, -1.0), ConfigError);
    CHECK_THROWS_AS(density(std::vector<Particle>{}, 1.0), ContractViolation);
}

TEST_CASE("density in decision space uses solutions")
{
    std::vector<Particle> a{particle_at({0.0, 1.0}), particle_at({1.0, 0.0}),
                            particle_at({0.5, 0.5})};
    a[0].solution << 0, 0, 0, 0;
    a[1].solution << 0, 0, 0, 0.01;
    a[2].solution << 5, 5, 5, 5;
    const Vector d = density(a, 0.3, KdeSpace::Decision);
    CHECK(d(0) > d(2));
    CHECK(d(1) > d(2));
    CHECK(parse_kde_space("decision") == KdeSpace::Decision);
    CHECK_THROWS_AS(parse_kde_space("both"), ConfigError);
}

TEST_CASE("sparseness")
{
    Vector d(3);
    d << 0.5, 1.0, 1e-300;
    const Vector s = sparseness(d);
    CHECK(s(0) == 2.0);
    CHECK(s(1) == 1.0);
    CHECK(s(2) == doctest::Approx(1e12).epsilon(1e-12));
}

TEST_CASE("importance_distribution")
{
    Vector s(2);
    s << 1.0, 1.0;
    CHECK(importance_distribution(s).weights(0) == 0.5);
    s << 3.0, 1.0;
    const ImportanceDistribution d = importance_distribution(s);
    CHECK(d.weights(0) == 0.75);
    CHECK(d.weights(1) == 0.25);
    CHECK(d.source_size == 2);

    SUBCASE("collinear equally spaced: middle is least likely")
    {
        const std::vector<Particle> a{particle_at({0.0, 2.0}), particle_at({1.0, 1.0}),
                                      particle_at({2.0, 0.0})};
        for (double h : {0.1, 0.5, 1.0, 4.0}) {
            const ImportanceDistribution w = importance_distribution(a, h);
            CHECK(w.weights(1) < w.weights(0));
            CHECK(w.weights(1) < w.weights(2));
        }
    }
}

TEST_CASE("importance weights form a distribution for any bandwidth scale")
{
    RandomStream rng(10);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Particle> a;
        const int n = 1 + static_cast<int>(rng.index(30));
        for (int i = 0; i < n; ++i) {
            a.push_back(particle_at({rng.uniform01(), rng.uniform01(), rng.uniform01()}));
        }
        for (double h : {1e-6, 1e-2, 1.0, 1e3}) {
            const ImportanceDistribution w = importance_distribution(a, h);
            CHECK(w.weights.minCoeff() >= 0.0);
            CHECK(std::abs(w.weights.sum() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("adding a duplicate lowers the particle's sparseness")
{
    RandomStream rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<Particle> a;
        for (int i = 0; i < 6; ++i) {
            a.push_back(particle_at({rng.uniform01(), rng.uniform01(), rng.uniform01()}));
        }
        const double h = rng.uniform(0.1, 2.0);
        const double before = sparseness(density(a, h))(2);
        // Unnormalized kernel sums: compare sums directly so the 1/n factor
        // change does not mask the effect.
        const double sum_before = density(a, h)(2) * 6 * h;
        a.push_back(a[2]);
        const double sum_after = density(a, h)(2) * 7 * h;
        CHECK(sum_after > sum_before);
        CHECK(1.0 / sum_after < 1.0 / sum_before);
        CHECK(before > 0.0);
    }
}

TEST_CASE("isample")
{
    RandomStream rng(5);
    SUBCASE("archive of one")
    {
        const std::vector<Particle> a{particle_at({1.0, 2.0})};
        for (int i = 0; i < 100; ++i) {
            const SampledParent s = isample(a, 1.0, rng);
            CHECK(s.index == 0);
            CHECK(s.direction == a[0].direction);
            CHECK(s.solution == a[0].solution);
        }
    }
    SUBCASE("mirror-symmetric pair is picked evenly")
    {
        const std::vector<Particle> a{particle_at({0.0, 1.0}), particle_at({1.0, 0.0})};
        const ImportanceDistribution dist = importance_distribution(a, 0.7);
        std::vector<std::size_t> counts(2, 0);
        for (int i = 0; i < 100000; ++i) {
            ++counts[static_cast<std::size_t>(isample(a, dist, rng).index)];
        }
        CHECK(oracle::chi_square_p(counts, {0.5, 0.5}) > 0.01);
    }
    SUBCASE("five particles follow the oracle weights")
    {
        const std::vector<Particle> a = five_particles();
        const double h = 0.3;
        const std::vector<double> w = oracle::importance_weights(objective_points(a), h);
        const ImportanceDistribution dist = importance_distribution(a, h);
        for (int i = 0; i < 5; ++i) {
            CHECK(dist.weights(i) == doctest::Approx(w[static_cast<std::size_t>(i)]).epsilon(1e-12));
        }
        std::vector<std::size_t> counts(5, 0);
        for (int i = 0; i < 100000; ++i) {
            ++counts[static_cast<std::size_t>(isample(a, dist, rng).index)];
        }
        CHECK(oracle::chi_square_p(counts, w) > 0.01);
    }
    SUBCASE("mismatched distribution is rejected")
    {
        const std::vector<Particle> a = five_particles();
        const ImportanceDistribution dist = importance_distribution(a, 1.0);
        const std::vector<Particle> b(a.begin(), a.begin() + 3);
        CHECK_THROWS_AS(isample(b, dist, rng), ContractViolation);
    }
}
