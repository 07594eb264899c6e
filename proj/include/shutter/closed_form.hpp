#pragma once

#include <limits>

#include "special_functions.hpp"

namespace shutter
{
//---------------------------------------------------------------------------//
/*!
 * Physical constants of the problem.
 *
 * The defaults are the nondimensional units hbar = m = n = 1 with an infinite
 * speed of light (no causality flagging). Any consistent unit system works;
 * \c rubidium87() gives SI values for cold Rb-87 atoms.
 */
struct PhysicalScales
{
    double hbar = 1;
    double mass = 1;
    double density_n = 1;
    double light_speed = std::numeric_limits<double>::infinity();

    //! hbar / m, the "diffusivity" of free Schroedinger dynamics
    double hbar_over_mass() const { return hbar / mass; }

    void validate() const;

    static PhysicalScales rubidium87(double density_n = 1);
};

inline constexpr double si_hbar = 1.054571817e-34;  // J s
inline constexpr double rb87_mass = 1.443e-25;  // kg

//---------------------------------------------------------------------------//
enum class ProfileKind
{
    singular_step,
    smoothed_erfc,
};

//! Initial amplitude: sqrt(n) step at x = 0, or (sqrt(n)/2) erfc(x/xi).
class InitialCondition
{
  public:
    static InitialCondition step() { return InitialCondition{0}; }

    //! xi == 0 normalizes to the singular step; xi < 0 is a DomainError
    static InitialCondition smoothed(double xi);

    ProfileKind kind() const
    {
        return xi_ > 0 ? ProfileKind::smoothed_erfc
                       : ProfileKind::singular_step;
    }
    double xi() const { return xi_; }
    bool is_singular() const { return xi_ == 0; }

  private:
    explicit InitialCondition(double xi) : xi_(xi) {}
    double xi_;
};

//! Wavefunction, density and current at one spacetime point.
struct FieldSample
{
    double x;
    double t;
    Complex psi;
    double rho;
    double j;
};

//---------------------------------------------------------------------------//
// Exact free evolution of the initial profile:
//   psi(x, t) = (sqrt(n)/2) erfc(x / s(t)),   s(t) = sqrt(xi^2 + 2 i t hbar/m)
// Negative times are the complex conjugate of the positive-time solution.
//---------------------------------------------------------------------------//

//! Principal square root of xi^2 + 2 i t hbar/m
Complex complex_width(double t, double xi, PhysicalScales const& scales = {});

Complex psi(double x,
            double t,
            InitialCondition const& ic,
            PhysicalScales const& scales = {});

double density(double x,
               double t,
               InitialCondition const& ic,
               PhysicalScales const& scales = {});

//! Probability current (hbar/m) Im(conj(psi) dpsi/dx), analytic derivative.
double current(double x,
               double t,
               InitialCondition const& ic,
               PhysicalScales const& scales = {});

//! Analytic spatial derivative of psi.
Complex psi_dx(double x,
               double t,
               InitialCondition const& ic,
               PhysicalScales const& scales = {});

FieldSample sample(double x,
                   double t,
                   InitialCondition const& ic,
                   PhysicalScales const& scales = {});

//---------------------------------------------------------------------------//
/*!
 * Potential whose zero-energy eigenstate is the smoothed profile:
 *   V(x) = (2/sqrt(pi)) (hbar^2 / m xi^2) (x/xi) exp(-(x/xi)^2) / erfc(x/xi)
 * evaluated as (x/xi) / erfcx(x/xi) so it stays finite far right of the trap.
 */
double trap_potential(double x, double xi, PhysicalScales const& scales = {});

//! (-hbar^2/2m) psi0'' + V psi0 for psi0 = (sqrt(n)/2) erfc(x/xi)
double trap_eigen_residual(double x,
                           double xi,
                           PhysicalScales const& scales = {});

}  // namespace shutter
