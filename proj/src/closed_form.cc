#include "shutter/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "shutter/error.hpp"

namespace shutter
{
namespace
{
constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;

void require_finite(double v, char const* name)
{
    if (!std::isfinite(v))
    {
        throw DomainError(std::string(name) + " must be finite");
    }
}

void check_point(double x, double t, PhysicalScales const& scales)
{
    require_finite(x, "x");
    require_finite(t, "t");
    scales.validate();
}

// exp(-x^2 / s^2) with s^2 = xi^2 + i tau, using the exact split
//   -x^2/s^2 = -x^2 (xi^2 - i tau) / (xi^4 + tau^2)
Complex gaussian_factor(double x, double xi, double tau)
{
    double const d = xi * xi * xi * xi + tau * tau;
    double const x2 = x * x;
    return std::polar(std::exp(-x2 * xi * xi / d), x2 * tau / d);
}

// |exp(-x^2/s^2)|^2
double gaussian_factor_norm(double x, double xi, double tau)
{
    double const d = xi * xi * xi * xi + tau * tau;
    return std::exp(-2 * x * x * xi * xi / d);
}

bool at_singularity(double x, double t, InitialCondition const& ic)
{
    return ic.is_singular() && x == 0 && t == 0;
}

}  // namespace

//---------------------------------------------------------------------------//
void PhysicalScales::validate() const
{
    if (!(hbar > 0) || !(mass > 0) || !(density_n > 0) || !(light_speed > 0)
        || !std::isfinite(hbar) || !std::isfinite(mass)
        || !std::isfinite(density_n) || std::isnan(light_speed))
    {
        throw DomainError(
            "physical scales must be strictly positive (hbar, mass, n, c)");
    }
}

PhysicalScales PhysicalScales::rubidium87(double density_n)
{
    PhysicalScales result;
    result.hbar = si_hbar;
    result.mass = rb87_mass;
    result.density_n = density_n;
    result.light_speed = 299792458.0;
    return result;
}

InitialCondition InitialCondition::smoothed(double xi)
{
    if (!(xi >= 0) || !std::isfinite(xi))
    {
        throw DomainError("gradient width xi must be finite and >= 0");
    }
    return InitialCondition{xi};
}

//---------------------------------------------------------------------------//
Complex complex_width(double t, double xi, PhysicalScales const& scales)
{
    return std::sqrt(Complex{xi * xi, 2 * t * scales.hbar_over_mass()});
}

//---------------------------------------------------------------------------//
Complex psi(double x,
            double t,
            InitialCondition const& ic,
            PhysicalScales const& scales)
{
    check_point(x, t, scales);
    if (at_singularity(x, t, ic))
    {
        throw SingularityError("psi is undefined at the step (x = 0, t = 0)");
    }
    if (t < 0)
    {
        return std::conj(psi(x, -t, ic, scales));
    }
    double const amp = std::sqrt(scales.density_n);
    if (t == 0)
    {
        if (ic.is_singular())
        {
            return x < 0 ? amp : 0.0;
        }
        return 0.5 * amp * std::erfc(x / ic.xi());
    }
    Complex const u = x / complex_width(t, ic.xi(), scales);
    return 0.5 * amp * erfc_complex(u);
}

//---------------------------------------------------------------------------//
Complex psi_dx(double x,
               double t,
               InitialCondition const& ic,
               PhysicalScales const& scales)
{
    check_point(x, t, scales);
    if (at_singularity(x, t, ic))
    {
        throw SingularityError("dpsi/dx is undefined at the step");
    }
    if (t < 0)
    {
        return std::conj(psi_dx(x, -t, ic, scales));
    }
    double const amp = std::sqrt(scales.density_n);
    if (t == 0)
    {
        if (ic.is_singular())
        {
            return 0.0;
        }
        double const u = x / ic.xi();
        return -amp * inv_sqrt_pi * std::exp(-u * u) / ic.xi();
    }
    double const tau = 2 * t * scales.hbar_over_mass();
    Complex const s = complex_width(t, ic.xi(), scales);
    return -amp * inv_sqrt_pi * gaussian_factor(x, ic.xi(), tau) / s;
}

//---------------------------------------------------------------------------//
double density(double x,
               double t,
               InitialCondition const& ic,
               PhysicalScales const& scales)
{
    return std::norm(psi(x, std::fabs(t), ic, scales));
}

//---------------------------------------------------------------------------//
double current(double x,
               double t,
               InitialCondition const& ic,
               PhysicalScales const& scales)
{
    check_point(x, t, scales);
    if (at_singularity(x, t, ic))
    {
        throw SingularityError("current is undefined at the step");
    }
    if (t < 0)
    {
        return -current(x, -t, ic, scales);
    }
    if (t == 0)
    {
        return 0;
    }
    double const hm = scales.hbar_over_mass();
    if (x < 0)
    {
        Complex const p = psi(x, t, ic, scales);
        Complex const dp = psi_dx(x, t, ic, scales);
        return hm * std::imag(std::conj(p) * dp);
    }
    // conj(psi) dpsi/dx = -(n / 2 sqrt(pi)) conj(w(iu)) |exp(-u^2)|^2 / s,
    // which avoids the rapidly rotating phase of exp(-u^2).
    double const tau = 2 * t * hm;
    Complex const s = complex_width(t, ic.xi(), scales);
    Complex const u = x / s;
    Complex const w = faddeyeva(Complex{-u.imag(), u.real()});
    double const mag = gaussian_factor_norm(x, ic.xi(), tau);
    return -hm * scales.density_n * 0.5 * inv_sqrt_pi
           * std::imag(std::conj(w) * mag / s);
}

//---------------------------------------------------------------------------//
FieldSample sample(double x,
                   double t,
                   InitialCondition const& ic,
                   PhysicalScales const& scales)
{
    FieldSample result;
    result.x = x;
    result.t = t;
    result.psi = psi(x, t, ic, scales);
    result.rho = std::norm(result.psi);
    result.j = current(x, t, ic, scales);
    return result;
}

//---------------------------------------------------------------------------//
double trap_potential(double x, double xi, PhysicalScales const& scales)
{
    require_finite(x, "x");
    if (!(xi > 0) || !std::isfinite(xi))
    {
        throw DomainError("trap potential requires xi > 0");
    }
    scales.validate();
    double const energy = scales.hbar * scales.hbar / (scales.mass * xi * xi);
    double const u = x / xi;
    // exp(-u^2)/erfc(u) = 1/erfcx(u); for u < 0 erfc(u) lies in (1, 2]
    double const shape = u < 0 ? u * std::exp(-u * u) / std::erfc(u)
                               : u / erfc_scaled(u);
    return 2 * inv_sqrt_pi * energy * shape;
}

double trap_eigen_residual(double x, double xi, PhysicalScales const& scales)
{
    double const v = trap_potential(x, xi, scales);
    double const amp = std::sqrt(scales.density_n);
    double const u = x / xi;
    double const psi0 = 0.5 * amp * std::erfc(u);
    double const psi0_xx = 2 * amp * inv_sqrt_pi * u * std::exp(-u * u)
                           / (xi * xi);
    double const kinetic = -0.5 * scales.hbar * scales.hbar / scales.mass;
    return kinetic * psi0_xx + v * psi0;
}

}  // namespace shutter
