#include "shutter/semiclassical.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <string>
#include <thread>

#include "shutter/error.hpp"

namespace shutter
{
namespace
{
//---------------------------------------------------------------------------//
// Counter-based uniform variates: particle i, lane k -> one 64-bit hash.
//---------------------------------------------------------------------------//
constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ull;

std::uint64_t mix64(std::uint64_t z)
{
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

double uniform01(std::uint64_t base, std::uint64_t index, unsigned lane)
{
    std::uint64_t const h = mix64(base + golden_gamma * (2 * index + lane + 1));
    return double(h >> 11) * 0x1.0p-53;
}

void fill_range(EnsembleConfig const& config,
                std::uint64_t begin,
                std::uint64_t end,
                std::vector<Particle>& out)
{
    std::uint64_t const base = mix64(config.seed);
    double const inv_lo = 1 / config.v_min;
    double const inv_span = inv_lo - 1 / config.v_max;
    bool const reservoir = config.geometry == LaunchGeometry::uniform_reservoir;
    for (std::uint64_t i = begin; i < end; ++i)
    {
        double const u = uniform01(base, i, 0);
        Particle& p = out[i];
        p.velocity = 1 / (inv_lo - u * inv_span);
        p.position = reservoir ? config.reservoir_depth
                                     * (uniform01(base, i, 1) - 1)
                               : 0.0;
    }
}

void config_fail(std::string const& what)
{
    throw ConfigError("ensemble config: " + what);
}

}  // namespace

//---------------------------------------------------------------------------//
void EnsembleConfig::validate() const
{
    if (particle_count < 1)
        config_fail("particle_count must be >= 1");
    if (!(v_min > 0) || !std::isfinite(v_min))
        config_fail("v_min must be > 0");
    if (!(v_max > v_min) || !std::isfinite(v_max))
        config_fail("v_max must exceed v_min");
    if (!(reservoir_depth > 0) || !std::isfinite(reservoir_depth))
        config_fail("reservoir_depth must be > 0");
    if (detectors.empty())
        config_fail("at least one detector is required");
    for (double x0 : detectors)
    {
        if (!(x0 > 0) || !std::isfinite(x0))
            config_fail("detector positions must be > 0");
    }
    if (times.empty())
        config_fail("at least one time is required");
    for (double t : times)
    {
        if (!(t > 0) || !std::isfinite(t))
            config_fail("times must be > 0");
    }
    if (!(bin_fraction > 0 && bin_fraction < 2))
        config_fail("bin_fraction must lie in (0, 2)");
    double const t_max = *std::max_element(times.begin(), times.end());
    if (!(v_max * t_max < reservoir_depth))
    {
        config_fail("v_max * max(times) < reservoir_depth is violated ("
                    + std::to_string(v_max * t_max)
                    + " >= " + std::to_string(reservoir_depth) + ")");
    }
}

//---------------------------------------------------------------------------//
std::vector<Particle> sample_ensemble(EnsembleConfig const& config,
                                      unsigned threads)
{
    config.validate();
    std::uint64_t const n = config.particle_count;
    std::vector<Particle> result(n);
    threads = std::max(1u, threads);
    if (threads == 1 || n < 2 * threads)
    {
        fill_range(config, 0, n, result);
        return result;
    }
    std::vector<std::jthread> workers;
    std::uint64_t const chunk = (n + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k)
    {
        std::uint64_t const begin = std::min<std::uint64_t>(n, k * chunk);
        std::uint64_t const end = std::min<std::uint64_t>(n, begin + chunk);
        workers.emplace_back([&config, &result, begin, end] {
            fill_range(config, begin, end, result);
        });
    }
    return result;
}

double speed_survival(double v0, double v_min, double v_max)
{
    if (v0 <= v_min)
        return 1;
    if (v0 >= v_max)
        return 0;
    return (v_min / v0) * (v_max - v0) / (v_max - v_min);
}

//---------------------------------------------------------------------------//
DetectorEstimate estimate_at(std::span<Particle const> particles,
                             double reservoir_depth,
                             double x0,
                             double t,
                             double bin_width)
{
    if (!(x0 > 0) || !(t > 0) || !(bin_width > 0))
    {
        throw DomainError("estimate_at requires x0 > 0, t > 0, bin_width > 0");
    }
    if (particles.empty() || !(reservoir_depth > 0))
    {
        throw DomainError("estimate_at requires particles and a reservoir");
    }
    double const lo = x0 - 0.5 * bin_width;
    double const hi = x0 + 0.5 * bin_width;
    std::uint64_t count = 0;
    double sum_v = 0;
    double sum_v2 = 0;
    for (Particle const& p : particles)
    {
        double const x = p.position + p.velocity * t;
        if (x >= lo && x < hi)
        {
            ++count;
            sum_v += p.velocity;
            sum_v2 += p.velocity * p.velocity;
        }
    }
    double const line_density = double(particles.size()) / reservoir_depth;
    double const scale = 1 / (bin_width * line_density);

    DetectorEstimate result;
    result.x0 = x0;
    result.t = t;
    result.count = count;
    result.rho_hat = {count * scale, std::sqrt(double(count)) * scale};
    result.j_hat = {sum_v * scale, std::sqrt(sum_v2) * scale};
    return result;
}

//---------------------------------------------------------------------------//
LogLogFit fit_loglog(std::span<double const> x, std::span<double const> y)
{
    if (x.size() != y.size())
    {
        throw AnalysisError("fit_loglog: x and y differ in length");
    }
    std::size_t const n = x.size();
    if (n < 3)
    {
        throw AnalysisError("fit_loglog: at least 3 points are required");
    }
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        if (!(x[i] > 0) || !(y[i] > 0))
        {
            throw AnalysisError("fit_loglog: values must be > 0");
        }
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0))
    {
        throw AnalysisError("fit_loglog: abscissae are all equal");
    }
    LogLogFit fit;
    fit.points = n;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ssr = 0;
    for (std::size_t i = 0; i < n; ++i)
    {
        double const r = ly[i] - (fit.intercept + fit.slope * lx[i]);
        ssr += r * r;
    }
    fit.slope_std_error = std::sqrt(ssr / double(n - 2) / sxx);
    boost::math::students_t dist(double(n - 2));
    double const q = boost::math::quantile(dist, 0.975);
    fit.ci_low = fit.slope - q * fit.slope_std_error;
    fit.ci_high = fit.slope + q * fit.slope_std_error;
    return fit;
}

TimeIndependenceReport
time_independence_report(std::span<DetectorEstimate const> estimates)
{
    if (estimates.size() < 3)
    {
        throw AnalysisError("time independence needs at least 3 estimates");
    }
    double const x0 = estimates.front().x0;
    std::vector<double> t, j, rho;
    for (DetectorEstimate const& e : estimates)
    {
        if (e.x0 != x0)
        {
            throw AnalysisError("estimates must share one detector position");
        }
        if (e.empty())
        {
            throw AnalysisError("empty detector bin at t = "
                                + std::to_string(e.t));
        }
        t.push_back(e.t);
        j.push_back(e.j_hat.value);
        rho.push_back(e.rho_hat.value);
    }
    auto const [t_lo, t_hi] = std::minmax_element(t.begin(), t.end());
    if (*t_hi < 10 * *t_lo * (1 - 1e-12))
    {
        throw AnalysisError("estimates must span at least a decade in t");
    }
    TimeIndependenceReport report;
    report.x0 = x0;
    report.current_vs_time = fit_loglog(t, j);
    report.density_vs_time = fit_loglog(t, rho);
    return report;
}

}  // namespace shutter
