#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace shutter
{
//---------------------------------------------------------------------------//
/*!
 * Where the classical particles start when the shutter opens.
 *
 * - \c shutter_plane: every particle leaves from x = 0, so a particle seen at
 *   x0 at time t has speed exactly x0/t. This reproduces rho ~ t/x0^2 and the
 *   time-independent j ~ 1/x0.
 * - \c uniform_reservoir: positions uniform on [-L, 0). Free streaming then
 *   gives rho(x0, t) = n P(v > x0/t), a function of x0/t only.
 */
enum class LaunchGeometry
{
    shutter_plane,
    uniform_reservoir,
};

struct EnsembleConfig
{
    std::uint64_t particle_count = 1'000'000;
    double v_min = 0.1;
    double v_max = 1000;
    double reservoir_depth = 1e4;
    std::uint64_t seed = 20240607;
    std::vector<double> detectors{1, 2, 4};
    std::vector<double> times{0.2, 0.3, 0.5, 0.7, 1, 1.5, 2};
    //! Detector bin width as a fraction of the detector position
    double bin_fraction = 0.2;
    LaunchGeometry geometry = LaunchGeometry::shutter_plane;

    //! Throws ConfigError naming the first violated invariant
    void validate() const;
};

struct Particle
{
    double position;
    double velocity;
};

//! Speeds with pdf C/v^2 on [v_min, v_max] by inverse CDF; one counter-based
//! stream per particle, so the result does not depend on \p threads.
std::vector<Particle> sample_ensemble(EnsembleConfig const& config,
                                      unsigned threads = 1);

//! Truncated 1/v^2 law: P(v > v0)
double speed_survival(double v0, double v_min, double v_max);

struct Estimate
{
    double value;
    double std_error;
};

struct DetectorEstimate
{
    double x0;
    double t;
    Estimate rho_hat;
    Estimate j_hat;
    std::uint64_t count;
    //! No particle in the bin: relative error is unbounded
    bool empty() const { return count == 0; }
};

/*!
 * Density and current in the bin [x0 - w/2, x0 + w/2) at time t.
 *
 * Both are normalized by the reservoir line density N/L so that the
 * uniform reservoir has unit density.
 */
DetectorEstimate estimate_at(std::span<Particle const> particles,
                             double reservoir_depth,
                             double x0,
                             double t,
                             double bin_width);

struct LogLogFit
{
    double slope;
    double intercept;
    double slope_std_error;
    double ci_low;  //!< 95% two-sided, Student t with n-2 dof
    double ci_high;
    std::size_t points;
};

//! Ordinary least squares of log(y) on log(x); throws AnalysisError if
//! fewer than three points or any non-positive value.
LogLogFit fit_loglog(std::span<double const> x, std::span<double const> y);

struct TimeIndependenceReport
{
    double x0;
    LogLogFit current_vs_time;
    LogLogFit density_vs_time;
};

//! Requires >= 3 non-empty estimates at one x0 spanning >= a decade in t.
TimeIndependenceReport
time_independence_report(std::span<DetectorEstimate const> estimates);

}  // namespace shutter
