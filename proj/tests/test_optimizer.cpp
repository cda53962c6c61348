#include "ltppm/optimizer.hpp"
#include "ltppm/problems.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace ltppm;

namespace {

Particle particle_at(std::initializer_list<double> f)
{
    Particle p;
    p.objectives.resize(static_cast<Index>(f.size()));
    Index i = 0;
    for (double v : f) {
        p.objectives(i++) = v;
    }
    p.solution = Vector::Zero(2);
    p.direction = Vector::Unit(2, 0);
    return p;
}

Archive archive_of(std::vector<Particle> ps, Index capacity = 100)
{
    Archive a;
    a.particles = std::move(ps);
    a.capacity = capacity;
    return a;
}

oracle::Point to_point(const Vector& v)
{
    return oracle::Point(v.data(), v.data() + v.size());
}

OptimizerConfig small_config()
{
    OptimizerConfig c;
    c.capacity = 20;
    c.offspring = 20;
    c.evaluations = 400;
    c.seed = 3;
    return c;
}

} // namespace

TEST_CASE("update_archive: documented examples")
{
    SUBCASE("dominated offspring is dropped")
    {
        const Archive a = archive_of({particle_at({1, 1})});
        const std::vector<Particle> off{particle_at({2, 2})};
        const Archive u = update_archive(a, off);
        REQUIRE(u.size() == 1);
        CHECK(u.particles[0].objectives == a.particles[0].objectives);
    }
    SUBCASE("dominating offspring replaces")
    {
        const Archive a = archive_of({particle_at({1, 1})});
        const std::vector<Particle> off{particle_at({0, 0})};
        const Archive u = update_archive(a, off);
        REQUIRE(u.size() == 1);
        CHECK(u.particles[0].objectives == off[0].objectives);
    }
    SUBCASE("trade-off keeps both, archive first")
    {
        const Archive a = archive_of({particle_at({0, 1})});
        const std::vector<Particle> off{particle_at({1, 0})};
        const Archive u = update_archive(a, off);
        REQUIRE(u.size() == 2);
        CHECK(u.particles[0].objectives(0) == 0.0);
        CHECK(u.particles[1].objectives(0) == 1.0);
    }
    SUBCASE("duplicates are kept")
    {
        const Archive a = archive_of({particle_at({0.5, 0.5})});
        const std::vector<Particle> off{particle_at({0.5, 0.5})};
        CHECK(update_archive(a, off).size() == 2);
    }
    SUBCASE("empty offspring leaves the archive as is")
    {
        const Archive a = archive_of({particle_at({0, 1}), particle_at({1, 0})});
        CHECK(update_archive(a, {}).size() == 2);
    }
}

TEST_CASE("update_archive matches the brute-force filter")
{
    RandomStream rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Particle> all;
        for (int i = 0; i < 200; ++i) {
            // Coarse values give ties and plenty of dominance.
            all.push_back(particle_at({double(rng.index(10)), double(rng.index(10)),
                                       double(rng.index(10))}));
        }
        std::vector<oracle::Point> pts;
        for (const Particle& p : all) {
            pts.push_back(to_point(p.objectives));
        }
        const std::vector<std::size_t> keep = oracle::nondominated(pts);

        const Archive empty = archive_of({});
        std::vector<Removal> audit;
        const Archive u = update_archive(empty, all, &audit);
        REQUIRE(static_cast<std::size_t>(u.size()) == keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            CHECK(u.particles[i].objectives == all[keep[i]].objectives);
        }
        CHECK(u.mutually_nondominated());
        CHECK(audit.size() == all.size() - keep.size());
        for (const Removal& r : audit) {
            CHECK(r.reason == Removal::Reason::Dominated);
            CHECK(dominates(r.dominated_by, r.objectives));
        }
    }
}

TEST_CASE("truncate: documented examples")
{
    SUBCASE("under capacity is unchanged")
    {
        const Archive a = archive_of({particle_at({0, 1}), particle_at({1, 0})});
        CHECK(truncate(a, 5, 1.0).size() == 2);
    }
    SUBCASE("the crowded middle goes first")
    {
        const Archive a = archive_of({particle_at({0, 1}), particle_at({0.5, 0.5}),
                                      particle_at({0.51, 0.49}), particle_at({1, 0})});
        const Archive t = truncate(a, 3, 0.1);
        REQUIRE(t.size() == 3);
        CHECK(t.particles[0].objectives(0) == 0.0);
        CHECK(t.particles[2].objectives(0) == 1.0);
    }
    SUBCASE("errors")
    {
        const Archive a = archive_of({particle_at({0, 1}), particle_at({1, 0})});
        CHECK_THROWS_AS(truncate(a, 1, 0.0), ConfigError);
        CHECK_THROWS_AS(truncate(a, 0, 1.0), ConfigError);
    }
}

TEST_CASE("truncate matches the full-recompute oracle")
{
    RandomStream rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<Particle> ps;
        const int n = 10 + static_cast<int>(rng.index(50));
        for (int i = 0; i < n; ++i) {
            const double a = rng.uniform01();
            const double b = rng.uniform01();
            ps.push_back(particle_at({a, 1 - a + 0.1 * b, b}));
        }
        const Index capacity = 1 + static_cast<Index>(rng.index(static_cast<std::uint64_t>(n)));
        const double h = rng.uniform(0.02, 2.0);
        std::vector<oracle::Point> pts;
        for (const Particle& p : ps) {
            pts.push_back(to_point(p.objectives));
        }
        const std::vector<std::size_t> keep =
            oracle::truncate(pts, static_cast<std::size_t>(capacity), h);

        std::vector<Removal> audit;
        const Archive t = truncate(archive_of(ps), capacity, h, KdeSpace::Objective, &audit);
        REQUIRE(static_cast<std::size_t>(t.size()) == keep.size());
        for (std::size_t i = 0; i < keep.size(); ++i) {
            CHECK(t.particles[i].objectives == ps[keep[i]].objectives);
        }
        CHECK(audit.size() == ps.size() - keep.size());
        for (const Removal& r : audit) {
            CHECK(r.reason == Removal::Reason::Truncated);
        }
    }
}

TEST_CASE("initialize")
{
    const LsmopInstance p = make_lsmop(1, 3, 100);
    SUBCASE("single particle")
    {
        RandomStream rng(1);
        EvaluationBudget budget(10);
        const Archive a = initialize(p, 1, rng, budget);
        CHECK(a.size() == 1);
        CHECK(a.capacity == 1);
        CHECK(budget.used() == 1);
    }
    SUBCASE("deterministic and non-dominated")
    {
        RandomStream r1(2);
        RandomStream r2(2);
        EvaluationBudget b1(1000);
        EvaluationBudget b2(1000);
        const Archive a = initialize(p, 300, r1, b1);
        const Archive b = initialize(p, 300, r2, b2);
        CHECK(b1.used() == 300);
        REQUIRE(a.size() == b.size());
        CHECK(a.objectives() == b.objectives());
        CHECK(a.mutually_nondominated());
        for (const Particle& q : a.particles) {
            CHECK(p.bounds().contains(q.solution));
            CHECK(std::abs(q.direction.norm() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("optimizer config validation")
{
    OptimizerConfig c;
    CHECK_NOTHROW(c.validate());
    c.attenuation = 1.5;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c.attenuation = 0.9;
    c.evaluations = 10;
    c.offspring = 300;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = OptimizerConfig{};
    c.h0 = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = OptimizerConfig{};
    c.capacity = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

TEST_CASE("run: a budget of one population performs no iterations")
{
    const LsmopInstance p = make_lsmop(1, 3, 100);
    OptimizerConfig c = small_config();
    c.evaluations = static_cast<std::uint64_t>(c.offspring);
    const RunResult r = run(p, c);
    CHECK(r.evaluations_used == c.evaluations);
    REQUIRE(r.trace.rows.size() == 1);
    CHECK(r.trace.rows[0].iter == 0);
    CHECK(r.trace.rows[0].evals == c.evaluations);
    CHECK(r.archive.size() <= c.capacity);
}

TEST_CASE("run: equal seeds give identical results")
{
    const LsmopInstance p = make_lsmop(5, 3, 100);
    const OptimizerConfig c = small_config();
    RunOptions o;
    o.timing = false;
    o.reference = reference_front(p, 100).points;
    const RunResult a = run(p, c, o);
    const RunResult b = run(p, c, o);
    REQUIRE(a.trace.rows.size() == b.trace.rows.size());
    CHECK(a.archive.objectives() == b.archive.objectives());
    for (std::size_t i = 0; i < a.trace.rows.size(); ++i) {
        CHECK(a.trace.rows[i].igd == b.trace.rows[i].igd);
        CHECK(a.trace.rows[i].elapsed_ms == 0.0);
    }
    OptimizerConfig other = c;
    other.seed = 4;
    CHECK(run(p, other, o).archive.objectives() != a.archive.objectives());
}

TEST_CASE("run: invariants hold after every iteration")
{
    const LsmopInstance p = make_lsmop(2, 3, 100);
    OptimizerConfig c = small_config();
    c.evaluations = 1000;
    RunOptions o;
    std::uint64_t last_iter = 0;
    std::uint64_t calls = 0;
    double last_h = INFINITY;
    o.on_iteration = [&](const IterationView& v) {
        if (calls > 0) {
            CHECK(v.iteration == last_iter + 1);
            CHECK(v.h < last_h);
            REQUIRE(v.generation != nullptr);
        }
        CHECK(v.h == doctest::Approx(c.h0 * std::pow(c.attenuation, double(v.iteration))));
        CHECK(v.archive.size() <= c.capacity);
        CHECK(v.archive.size() >= 1);
        CHECK(v.archive.mutually_nondominated());
        // P initial evaluations plus P per completed generation, capped by e.
        const std::uint64_t expected =
            std::min<std::uint64_t>(c.evaluations, std::uint64_t(c.offspring) * (1 + v.iteration));
        CHECK(v.budget.used() == expected);
        for (const Particle& q : v.archive.particles) {
            CHECK(p.bounds().contains(q.solution));
        }
        last_iter = v.iteration;
        last_h = v.h;
        ++calls;
    };
    const RunResult r = run(p, c, o);
    CHECK(calls == r.trace.rows.size());
    CHECK(r.evaluations_used == 1000);
    CHECK(last_iter == 1000 / 20 - 1);
}

TEST_CASE("run: a partial final generation is still absorbed")
{
    const LsmopInstance p = make_lsmop(1, 3, 100);
    OptimizerConfig c = small_config();
    c.evaluations = 410;
    const RunResult r = run(p, c);
    CHECK(r.evaluations_used == 410);
    CHECK(r.trace.rows.back().evals == 410);
}

TEST_CASE("run: archive members only leave through dominance or truncation")
{
    const LsmopInstance p = make_lsmop(1, 3, 100);
    const OptimizerConfig c = small_config();
    std::vector<Removal> audit;
    RunOptions o;
    o.audit = &audit;
    const RunResult r = run(p, c, o);
    CHECK_FALSE(audit.empty());
    for (const Removal& rem : audit) {
        if (rem.reason == Removal::Reason::Dominated) {
            CHECK(dominates(rem.dominated_by, rem.objectives));
        }
    }
    CHECK(r.archive.mutually_nondominated());
}

TEST_CASE("run: trace columns")
{
    const LsmopInstance p = make_lsmop(1, 3, 100);
    const OptimizerConfig c = small_config();
    SUBCASE("without a reference the metrics are NaN")
    {
        const RunResult r = run(p, c);
        CHECK(std::isnan(r.trace.rows.back().igd));
        CHECK(std::isnan(r.trace.rows.back().sp));
    }
    SUBCASE("with a reference IGD is finite and elapsed is non-decreasing")
    {
        RunOptions o;
        o.reference = reference_front(p, 100).points;
        const RunResult r = run(p, c, o);
        double last = 0.0;
        for (const TraceRow& row : r.trace.rows) {
            CHECK(std::isfinite(row.igd));
            CHECK(row.elapsed_ms >= last);
            CHECK(row.evaluation_ms <= row.elapsed_ms + 1e-9);
            last = row.elapsed_ms;
        }
    }
}

TEST_CASE("uniform baseline runs the same loop")
{
    const LsmopInstance p = make_lsmop(1, 3, 100);
    const OptimizerConfig c = small_config();
    const RunResult r = run_uniform_baseline(p, c);
    CHECK(r.evaluations_used == c.evaluations);
    CHECK(r.trace.rows.size() == 400 / 20);
    CHECK(r.archive.mutually_nondominated());
    CHECK(r.archive.size() <= c.capacity);
}
