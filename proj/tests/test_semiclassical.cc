#include "shutter/semiclassical.hpp"

#include <cmath>
#include <doctest.h>

#include "shutter/error.hpp"

using namespace shutter;

namespace
{
EnsembleConfig small_config(LaunchGeometry geometry)
{
    EnsembleConfig c;
    c.particle_count = 400'000;
    c.geometry = geometry;
    return c;
}

double survival_integral(double lo, double hi, double t, EnsembleConfig const& c)
{
    // Simpson rule for the bin average of P(v > x/t)
    int const n = 200;
    double const h = (hi - lo) / n;
    double sum = 0;
    for (int i = 0; i <= n; ++i)
    {
        double const w = (i == 0 || i == n) ? 1 : (i % 2 ? 4 : 2);
        sum += w * speed_survival((lo + i * h) / t, c.v_min, c.v_max);
    }
    return sum * h / 3;
}

}  // namespace

TEST_CASE("truncated 1/v^2 speed law")
{
    EnsembleConfig c;
    c.particle_count = 1'000'000;
    auto const particles = sample_ensemble(c);
    double const v0 = 2 * c.v_min;
    std::uint64_t above = 0;
    for (auto const& p : particles)
    {
        CHECK_MESSAGE(p.velocity >= c.v_min, "speed below v_min");
        above += p.velocity > v0;
    }
    double const expect = speed_survival(v0, c.v_min, c.v_max);
    CHECK(expect == doctest::Approx((c.v_min / v0) * (c.v_max - v0)
                                    / (c.v_max - c.v_min)));
    double const n = double(c.particle_count);
    double const se = std::sqrt(expect * (1 - expect) / n);
    CHECK(std::fabs(double(above) / n - expect) < 3 * se);

    EnsembleConfig narrow;
    narrow.particle_count = 1000;
    narrow.v_max = 1;
    narrow.v_min = 1 - 1e-9;
    for (auto const& p : sample_ensemble(narrow))
        CHECK(p.velocity == doctest::Approx(1).epsilon(1e-8));
}

TEST_CASE("sampling is deterministic and independent of threads")
{
    auto c = small_config(LaunchGeometry::uniform_reservoir);
    c.particle_count = 100'003;
    auto const a = sample_ensemble(c, 1);
    auto const b = sample_ensemble(c, 1);
    auto const d = sample_ensemble(c, 7);
    REQUIRE(a.size() == d.size());
    bool same = true;
    for (std::size_t i = 0; i < a.size(); ++i)
    {
        same = same && a[i].velocity == b[i].velocity
               && a[i].position == b[i].position
               && a[i].velocity == d[i].velocity
               && a[i].position == d[i].position;
    }
    CHECK(same);
    c.seed += 1;
    CHECK(sample_ensemble(c, 1)[0].velocity != a[0].velocity);
    for (auto const& p : a)
    {
        CHECK_MESSAGE((p.position >= -c.reservoir_depth && p.position < 0),
                      "position outside the reservoir");
    }
}

TEST_CASE("shutter-plane estimates match the analytic expectation")
{
    auto const c = small_config(LaunchGeometry::shutter_plane);
    auto const particles = sample_ensemble(c);
    double const C = c.v_min * c.v_max / (c.v_max - c.v_min);
    for (double x0 : {1.0, 4.0})
    {
        for (double t : {0.2, 1.0, 2.0})
        {
            double const w = 0.2 * x0;
            double const lo = x0 - w / 2, hi = x0 + w / 2;
            auto const e = estimate_at(particles, c.reservoir_depth, x0, t, w);
            double const rho = c.reservoir_depth / w
                               * (speed_survival(lo / t, c.v_min, c.v_max)
                                  - speed_survival(hi / t, c.v_min, c.v_max));
            double const j = c.reservoir_depth * C / w * std::log(hi / lo);
            CHECK(std::fabs(e.rho_hat.value - rho) < 4 * e.rho_hat.std_error);
            CHECK(std::fabs(e.j_hat.value - j) < 4 * e.j_hat.std_error);
            // Narrow-bin limits: rho -> L C t / x0^2, j -> L C / x0
            CHECK(rho == doctest::Approx(c.reservoir_depth * C * t / (x0 * x0)).epsilon(0.02));
            CHECK(j == doctest::Approx(c.reservoir_depth * C / x0).epsilon(0.01));
        }
    }
}

TEST_CASE("uniform-reservoir estimates depend on x0/t only")
{
    // A shallow reservoir keeps enough particles near the detectors
    auto c = small_config(LaunchGeometry::uniform_reservoir);
    c.particle_count = 2'000'000;
    c.v_max = 20;
    c.reservoir_depth = 45;
    c.validate();
    auto const particles = sample_ensemble(c);
    double const C = c.v_min * c.v_max / (c.v_max - c.v_min);
    auto x_log_x = [](double x) { return x * std::log(x) - x; };
    for (double x0 : {1.0, 4.0})
    {
        for (double t : {0.5, 2.0})
        {
            double const w = 0.2 * x0;
            double const lo = x0 - w / 2, hi = x0 + w / 2;
            auto const e = estimate_at(particles, c.reservoir_depth, x0, t, w);
            double const rho = survival_integral(lo, hi, t, c) / w;
            CHECK(std::fabs(e.rho_hat.value - rho) < 4 * e.rho_hat.std_error);
            // Bin average of j(x) = C ln(v_max t / x)
            double const j
                = C * (std::log(c.v_max * t) - (x_log_x(hi) - x_log_x(lo)) / w);
            CHECK(std::fabs(e.j_hat.value - j) < 4 * e.j_hat.std_error);
            CHECK(e.j_hat.std_error < 0.1 * j);
        }
    }
}

TEST_CASE("kinematic causality and the flux identity")
{
    auto const c = small_config(LaunchGeometry::shutter_plane);
    auto const particles = sample_ensemble(c);
    for (double x0 : {1.0, 2.0, 4.0})
    {
        double const w = 0.2 * x0;
        double const t_early = 0.99 * (x0 - w / 2) / c.v_max;
        auto const e = estimate_at(particles, c.reservoir_depth, x0, t_early, w);
        CHECK(e.count == 0);
        CHECK(e.empty());
        CHECK(e.rho_hat.value == 0);
        CHECK(e.j_hat.value == 0);

        double const t = 1;
        auto const f = estimate_at(particles, c.reservoir_depth, x0, t, 0.02 * x0);
        CHECK(f.j_hat.value
              == doctest::Approx(f.rho_hat.value * x0 / t).epsilon(1e-3));
    }
    CHECK_THROWS_AS(estimate_at(particles, c.reservoir_depth, 0, 1, 1), DomainError);
    CHECK_THROWS_AS(estimate_at(particles, c.reservoir_depth, 1, 1, 0), DomainError);
}

TEST_CASE("scaling exponents at 1e6 particles")
{
    EnsembleConfig c;
    auto const particles = sample_ensemble(c);
    std::vector<double> xs, js, rhos;
    for (double x0 : c.detectors)
    {
        auto const e = estimate_at(particles, c.reservoir_depth, x0, 1, 0.2 * x0);
        xs.push_back(x0);
        js.push_back(e.j_hat.value);
        rhos.push_back(e.rho_hat.value);
    }
    CHECK(fit_loglog(xs, js).slope == doctest::Approx(-1).epsilon(0.05));
    CHECK(fit_loglog(xs, rhos).slope == doctest::Approx(-2).epsilon(0.025));

    std::vector<DetectorEstimate> series;
    for (double t : c.times)
        series.push_back(estimate_at(particles, c.reservoir_depth, 1, t, 0.2));
    auto const report = time_independence_report(series);
    CHECK(std::fabs(report.current_vs_time.slope) < 0.05);
    CHECK(report.density_vs_time.slope == doctest::Approx(1).epsilon(0.05));
    CHECK(report.current_vs_time.ci_low <= report.current_vs_time.slope);
    CHECK(report.current_vs_time.ci_high >= report.current_vs_time.slope);
}

TEST_CASE("log-log fits")
{
    std::vector<double> const x{1, 2, 4, 8};
    std::vector<double> const flat{3, 3, 3, 3};
    auto const f = fit_loglog(x, flat);
    CHECK(f.slope == 0);
    CHECK(f.slope_std_error == 0);
    std::vector<double> const power{5, 5 / 8.0, 5 / 64.0, 5 / 512.0};
    CHECK(fit_loglog(x, power).slope == doctest::Approx(-3).epsilon(1e-14));
    CHECK_THROWS_AS(fit_loglog(std::vector<double>{1, 2}, std::vector<double>{1, 2}),
                    AnalysisError);
    CHECK_THROWS_AS(fit_loglog(x, std::vector<double>{1, 0, 1, 1}), AnalysisError);

    std::vector<DetectorEstimate> short_span;
    for (double t : {1.0, 2.0, 3.0})
        short_span.push_back({1, t, {1, 0.1}, {1, 0.1}, 10});
    CHECK_THROWS_AS(time_independence_report(short_span), AnalysisError);
    std::vector<DetectorEstimate> synthetic;
    for (double t : {0.1, 0.5, 1.0, 5.0})
        synthetic.push_back({2, t, {t, 0.1}, {7, 0.1}, 10});
    auto const r = time_independence_report(synthetic);
    CHECK(r.current_vs_time.slope == 0);
    CHECK(r.density_vs_time.slope == doctest::Approx(1).epsilon(1e-14));
    synthetic[1].count = 0;
    CHECK_THROWS_AS(time_independence_report(synthetic), AnalysisError);
}

TEST_CASE("ensemble config invariants are named")
{
    EnsembleConfig c;
    CHECK_NOTHROW(c.validate());
    c.reservoir_depth = 1000;  // v_max * 2 = 2000 > L
    CHECK_THROWS_WITH_AS(c.validate(),
                         doctest::Contains("v_max * max(times) < reservoir_depth"),
                         ConfigError);
    c = {};
    c.v_min = c.v_max;
    CHECK_THROWS_WITH_AS(c.validate(), doctest::Contains("v_max must exceed v_min"),
                         ConfigError);
    c = {};
    c.particle_count = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = {};
    c.detectors = {1, -1};
    CHECK_THROWS_AS(c.validate(), ConfigError);
}
