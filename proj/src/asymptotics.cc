#include "shutter/asymptotics.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "shutter/error.hpp"

namespace shutter
{
namespace
{
constexpr double pi = std::numbers::pi;

void require_positive(double v, char const* name)
{
    if (!(v > 0) || !std::isfinite(v))
    {
        throw DomainError(std::string(name) + " must be finite and > 0");
    }
}

void require_finite(double v, char const* name)
{
    if (!std::isfinite(v))
    {
        throw DomainError(std::string(name) + " must be finite");
    }
}

}  // namespace

//---------------------------------------------------------------------------//
double plateau_current(double x, PhysicalScales const& scales)
{
    require_positive(x, "x");
    scales.validate();
    return scales.hbar * scales.density_n / (2 * pi * scales.mass * x);
}

double shorttime_density_step(double x, double t, PhysicalScales const& scales)
{
    require_positive(x, "x");
    require_finite(t, "t");
    scales.validate();
    return 0.5 * scales.hbar_over_mass() * std::fabs(t) * scales.density_n
           / (pi * x * x);
}

//---------------------------------------------------------------------------//
ShortTimeSample shorttime_smooth(double x,
                                 double t,
                                 double xi,
                                 PhysicalScales const& scales)
{
    require_positive(x, "x");
    require_finite(t, "t");
    if (!(xi >= 0))
    {
        throw DomainError("xi must be >= 0");
    }
    scales.validate();
    double const hm = scales.hbar_over_mass();
    double const n = scales.density_n;
    double const tau = 2 * t * hm;
    double const xi4 = xi * xi * xi * xi;
    double const d = tau * tau + xi4;
    double const damping = std::exp(-2 * xi * xi * x * x / d);

    ShortTimeSample result;
    Complex const s2{xi * xi, tau};
    result.psi = 0.5 * std::sqrt(n) * std::numbers::inv_sqrtpi * std::sqrt(s2)
                 / x * std::exp(-x * x / s2);
    result.rho = n / (4 * pi) * std::sqrt(d) / (x * x) * damping;
    result.j = 0.5 * hm * n / (pi * x) * tau / std::sqrt(d) * damping;
    result.ratio = 4 * x * t * hm * hm / d;
    return result;
}

//---------------------------------------------------------------------------//
RegimeSample linear_regime(double x,
                           double t,
                           double xi,
                           PhysicalScales const& scales)
{
    require_positive(x, "x");
    require_positive(xi, "xi");
    require_finite(t, "t");
    scales.validate();
    double const hm = scales.hbar_over_mass();
    double const n = scales.density_n;
    double const q = x / xi;
    double const tail = std::exp(-2 * q * q);

    RegimeSample result;
    result.j = hm * hm * n / (pi * x) * t / (xi * xi) * tail;
    result.rho = n / (4 * pi) * (xi * xi) / (x * x) * tail;
    result.ratio = hm * hm * 4 * x * t / (xi * xi * xi * xi);
    return result;
}

RegimeSample exponential_regime(double x,
                                double t,
                                double xi,
                                PhysicalScales const& scales)
{
    require_positive(x, "x");
    require_positive(t, "t");
    if (!(xi >= 0))
    {
        throw DomainError("xi must be >= 0");
    }
    scales.validate();
    double const hm = scales.hbar_over_mass();
    double const n = scales.density_n;
    double const th = t * hm;
    double const rise = std::exp(-xi * xi * x * x / (2 * th * th));

    RegimeSample result;
    result.rho = 0.5 * hm * n / pi * t / (x * x) * rise;
    result.j = 0.5 * hm * n / (pi * x) * rise;
    result.ratio = x / t;
    return result;
}

LongTimeSample longtime(double x, double t, PhysicalScales const& scales)
{
    require_finite(x, "x");
    require_positive(t, "t");
    scales.validate();
    LongTimeSample result;
    result.rho = scales.density_n / 4;
    result.j = std::sqrt(scales.hbar_over_mass() / (pi * t))
               * scales.density_n / 4;
    return result;
}

//---------------------------------------------------------------------------//
std::string_view to_string(RegimeTag tag)
{
    switch (tag)
    {
        case RegimeTag::non_causal:
            return "non_causal";
        case RegimeTag::linear_rise:
            return "linear_rise";
        case RegimeTag::exponential_rise:
            return "exponential_rise";
        case RegimeTag::plateau:
            return "plateau";
        case RegimeTag::long_time_decay:
            return "long_time_decay";
    }
    return "unknown";
}

Regime classify_regime(double x,
                       double t,
                       double xi,
                       PhysicalScales const& scales)
{
    require_positive(x, "x");
    require_positive(t, "t");
    if (!(xi >= 0) || !std::isfinite(xi))
    {
        throw DomainError("xi must be finite and >= 0");
    }
    scales.validate();
    double const scale = 2 * scales.mass / scales.hbar;

    Regime result;
    result.t_causal = std::isfinite(scales.light_speed)
                          ? x / scales.light_speed
                          : 0.0;
    result.t_lin = scale * xi * xi;
    result.t_sat = scale * x * xi;
    result.t_plateau_end = scale * x * x;

    if (t < result.t_causal)
        result.tag = RegimeTag::non_causal;
    else if (t < result.t_lin)
        result.tag = RegimeTag::linear_rise;
    else if (t < result.t_sat)
        result.tag = RegimeTag::exponential_rise;
    else if (t < result.t_plateau_end)
        result.tag = RegimeTag::plateau;
    else
        result.tag = RegimeTag::long_time_decay;
    return result;
}

}  // namespace shutter
