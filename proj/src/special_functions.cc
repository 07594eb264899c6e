#include "shutter/special_functions.hpp"

#include <cmath>
#include <numbers>

#include "shutter/error.hpp"

namespace shutter
{
namespace
{
//---------------------------------------------------------------------------//
// Region thresholds for the upper half-plane.
//
//   |z| < 0.5          power series (valid in either half-plane)
//   |z| >= 28          asymptotic expansion, first omitted term < 1e-17
//   Im z > 7           Laplace continued fraction
//   otherwise          trapezoidal-sum series (Zaghloul & Ali, TOMS 916)
//---------------------------------------------------------------------------//
constexpr double taylor_radius = 0.5;
constexpr double asymptotic_radius = 28.0;
constexpr double fraction_height = 7.0;

constexpr double inv_sqrt_pi = std::numbers::inv_sqrtpi;
// Trapezoid step of the series; discretization error ~ exp(-(pi/a)^2)
constexpr double series_step = 0.518321480430085929872;
constexpr double series_coef = 2 * series_step / std::numbers::pi;

double sinc(double v)
{
    if (std::fabs(v) < 1e-4)
    {
        return 1 - v * v / 6;
    }
    return std::sin(v) / v;
}

void require_finite(Complex z, char const* what)
{
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    {
        throw DomainError(std::string(what) + ": argument is not finite");
    }
}

// exp(y^2) erfc(y) for 0 <= y <= fraction_height
double erfcx_moderate(double y)
{
    return std::exp(y * y) * std::erfc(y);
}

// w(z) = sum (iz)^n / Gamma(n/2 + 1); even and odd terms recur separately
Complex faddeyeva_taylor(Complex z)
{
    Complex const iz{-z.imag(), z.real()};
    Complex const iz2 = iz * iz;
    Complex even_term{1.0, 0.0};
    Complex odd_term = 2 * inv_sqrt_pi * iz;
    Complex sum = even_term + odd_term;
    for (int k = 1; k < 40; ++k)
    {
        even_term *= iz2 / double(k);
        odd_term *= iz2 / (k + 0.5);
        sum += even_term + odd_term;
        if (std::abs(even_term) + std::abs(odd_term) < 1e-17 * std::abs(sum))
        {
            break;
        }
    }
    return sum;
}

// i/(sqrt(pi) z) * sum_k (2k-1)!! / (2 z^2)^k
Complex faddeyeva_asymptotic(Complex z)
{
    Complex const inv_2z2 = 1.0 / (2.0 * z * z);
    Complex term{1.0, 0.0};
    Complex sum = term;
    for (int k = 1; k < 12; ++k)
    {
        term *= double(2 * k - 1) * inv_2z2;
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum))
        {
            break;
        }
    }
    return Complex{0, inv_sqrt_pi} * sum / z;
}

// w(z) = (i/sqrt(pi)) / (z - (1/2)/(z - (2/2)/(z - (3/2)/(z - ...))))
// evaluated with the modified Lentz algorithm.
Complex faddeyeva_fraction(Complex z)
{
    constexpr double tiny = 1e-300;
    Complex f = z;
    Complex c = f;
    Complex d{0, 0};
    for (int k = 1; k < 2000; ++k)
    {
        double const a = -0.5 * k;
        d = z + a * d;
        if (std::abs(d) < tiny)
        {
            d = tiny;
        }
        c = z + a / c;
        if (std::abs(c) < tiny)
        {
            c = tiny;
        }
        d = 1.0 / d;
        Complex const delta = c * d;
        f *= delta;
        if (std::abs(delta - 1.0) < 1e-16)
        {
            break;
        }
    }
    return Complex{0, inv_sqrt_pi} / f;
}

// Upper half-plane, moderate |z|. Sums are written in terms of
// exp(-(a n -+ x)^2) so that no factor overflows for x up to 28.
Complex faddeyeva_series(Complex z)
{
    double const xs = z.real();
    double const x = std::fabs(xs);
    double const y = z.imag();
    double const a = series_step;
    double const c = series_coef;

    int const n_max = std::max(13, int(std::ceil((x + 6.2) / a)));
    double sum1 = 0;   // sum e^{-a²n²-x²} / (a²n² + y²)
    double sum23 = 0;  // sum (e^{-(an-x)²} + e^{-(an+x)²}) / (a²n² + y²)
    double sum54 = 0;  // sum an (e^{-(an-x)²} - e^{-(an+x)²}) / (a²n² + y²)
    for (int n = 1; n <= n_max; ++n)
    {
        double const an = a * n;
        double const denom = an * an + y * y;
        double const centered = std::exp(-(an * an + x * x));
        double const minus = std::exp(-(an - x) * (an - x));
        double const plus = std::exp(-(an + x) * (an + x));
        sum1 += centered / denom;
        sum23 += (minus + plus) / denom;
        double const arg = 2 * an * x;
        double const diff = arg < 1 ? centered * 2 * std::sinh(arg)
                                    : minus - plus;
        sum54 += an * diff / denom;
    }

    double const expx2 = std::exp(-x * x);
    double const coef1 = expx2 * erfcx_moderate(y) - c * y * sum1;
    double const coef2 = c * xs * expx2;
    double const xy = xs * y;
    double const re = coef1 * std::cos(2 * xy)
                      + coef2 * std::sin(xy) * sinc(xy) + 0.5 * c * y * sum23;
    double const im = coef2 * sinc(2 * xy) - coef1 * std::sin(2 * xy)
                      + 0.5 * c * std::copysign(sum54, xs);
    return {re, im};
}

Complex faddeyeva_upper(Complex z)
{
    double const r = std::abs(z);
    if (r < taylor_radius)
    {
        return faddeyeva_taylor(z);
    }
    if (r >= asymptotic_radius)
    {
        return faddeyeva_asymptotic(z);
    }
    if (z.imag() > fraction_height)
    {
        return faddeyeva_fraction(z);
    }
    return faddeyeva_series(z);
}

// exp(-z^2) with the real part of the exponent formed as (y - x)(y + x)
Complex exp_minus_square(Complex z)
{
    double const x = z.real();
    double const y = z.imag();
    double const re = (y - x) * (y + x);
    if (re > 709.0)
    {
        throw NumericError("exp(-z^2) overflows");
    }
    return std::polar(std::exp(re), -2 * x * y);
}

}  // namespace

//---------------------------------------------------------------------------//
Complex faddeyeva(Complex z)
{
    require_finite(z, "faddeyeva");
    if (std::abs(z) < taylor_radius)
    {
        return faddeyeva_taylor(z);
    }
    if (z.imag() >= 0)
    {
        return faddeyeva_upper(z);
    }
    Complex const result = 2.0 * exp_minus_square(z) - faddeyeva_upper(-z);
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
    {
        throw NumericError("faddeyeva: result overflows");
    }
    return result;
}

//---------------------------------------------------------------------------//
Complex erfc_complex(Complex z)
{
    require_finite(z, "erfc_complex");
    if (z.real() < 0)
    {
        return 2.0 - erfc_complex(-z);
    }
    // Re z >= 0 puts iz in the closed upper half-plane
    Complex const iz{-z.imag(), z.real()};
    Complex const w = faddeyeva(iz);
    double const x = z.real();
    double const y = z.imag();
    double const log_scale = (y - x) * (y + x);
    if (log_scale > 700.0)
    {
        // Combine magnitudes in log space; only the product must be finite
        double const log_mag = log_scale + std::log(std::abs(w));
        if (log_mag > 709.0)
        {
            throw NumericError("erfc_complex: result overflows");
        }
        return std::polar(std::exp(log_mag), std::arg(w) - 2 * x * y);
    }
    Complex const result = exp_minus_square(z) * w;
    if (!std::isfinite(result.real()) || !std::isfinite(result.imag()))
    {
        throw NumericError("erfc_complex: result overflows");
    }
    return result;
}

//---------------------------------------------------------------------------//
Complex erfc_scaled(Complex z)
{
    require_finite(z, "erfc_scaled");
    return faddeyeva(Complex{-z.imag(), z.real()});
}

double erfc_scaled(double x)
{
    if (!std::isfinite(x))
    {
        throw DomainError("erfc_scaled: argument is not finite");
    }
    return faddeyeva(Complex{0, x}).real();
}

}  // namespace shutter
