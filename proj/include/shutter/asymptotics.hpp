#pragma once

#include <string_view>

#include "closed_form.hpp"

namespace shutter
{
//---------------------------------------------------------------------------//
// Asymptotic laws for the density and current at a detector x > 0.
//
// None of these check that (x, t, xi) actually lies in the regime where the
// approximation is accurate; use classify_regime for that.
//---------------------------------------------------------------------------//

//! Time-independent current hbar n / (2 pi m x)
double plateau_current(double x, PhysicalScales const& scales = {});

//! Singular-step short-time density (hbar/2m) |t| n / (pi x^2)
double shorttime_density_step(double x,
                              double t,
                              PhysicalScales const& scales = {});

struct ShortTimeSample
{
    Complex psi;
    double rho;
    double j;
    //! j / rho = 4 x t (hbar/m)^2 / ((2 t hbar/m)^2 + xi^4)
    double ratio;
};

//! Leading large-|x/s| behaviour of the exact solution, valid for any xi.
ShortTimeSample shorttime_smooth(double x,
                                 double t,
                                 double xi,
                                 PhysicalScales const& scales = {});

struct RegimeSample
{
    double rho;
    double j;
    double ratio;  //!< j / rho
};

//! t << 2 m xi^2 / hbar: density frozen, current rising linearly.
RegimeSample linear_regime(double x,
                           double t,
                           double xi,
                           PhysicalScales const& scales = {});

//! 2 m xi^2 / hbar << t << 2 m x xi / hbar: exp(-xi^2 x^2 / 2 (t hbar/m)^2)
RegimeSample exponential_regime(double x,
                                double t,
                                double xi,
                                PhysicalScales const& scales = {});

struct LongTimeSample
{
    double rho;
    double j;
};

//! t >> 2 m x^2 / hbar: rho -> n/4, j -> (n/4) sqrt(hbar / (pi m t)).
//! The leading-order law does not depend on x.
LongTimeSample longtime(double x, double t, PhysicalScales const& scales = {});

//---------------------------------------------------------------------------//
enum class RegimeTag
{
    non_causal,
    linear_rise,
    exponential_rise,
    plateau,
    long_time_decay,
};

std::string_view to_string(RegimeTag tag);

struct Regime
{
    RegimeTag tag;
    double t_causal;  //!< x / c (zero when c is infinite)
    double t_lin;  //!< 2 m xi^2 / hbar
    double t_sat;  //!< 2 m x xi / hbar
    double t_plateau_end;  //!< 2 m x^2 / hbar
};

//! Half-open classification: [0, t_causal) [.., t_lin) [.., t_sat) ...
Regime classify_regime(double x,
                       double t,
                       double xi,
                       PhysicalScales const& scales = {});

}  // namespace shutter
