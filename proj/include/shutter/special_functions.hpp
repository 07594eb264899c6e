#pragma once

#include <complex>

namespace shutter
{
using Complex = std::complex<double>;

//---------------------------------------------------------------------------//
/*!
 * Faddeyeva function w(z) = exp(-z^2) erfc(-iz).
 *
 * Relative accuracy is better than 1e-10 across the plane wherever the result
 * is representable. The lower half-plane is reached through
 * w(z) = 2 exp(-z^2) - w(-z); a NumericError is thrown when that value
 * overflows and a DomainError when z is not finite.
 */
Complex faddeyeva(Complex z);

//! Complementary error function of a complex argument.
Complex erfc_complex(Complex z);

//! Scaled complementary error function exp(z^2) erfc(z), i.e. w(iz).
Complex erfc_scaled(Complex z);

//! Real scaled complementary error function exp(x^2) erfc(x).
double erfc_scaled(double x);

}  // namespace shutter
