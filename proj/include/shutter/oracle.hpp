#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "closed_form.hpp"
#include "tridiagonal.hpp"

namespace shutter
{
//---------------------------------------------------------------------------//
// Crank-Nicolson propagation of the free Schroedinger equation on a uniform
// grid, used as an independent check of the closed forms.
//---------------------------------------------------------------------------//

enum class BoundaryMode
{
    //! psi(x_min) and psi(x_max) held at their initial values
    pinned,
    //! Dirichlet data taken from the exact solution at each new time level
    closed_form,
};

struct GridSpec
{
    double x_min = -20;
    double x_max = 20;
    std::size_t point_count = 8001;
    double dt = 2.5e-6;
    std::uint64_t step_count = 400000;
    BoundaryMode boundary = BoundaryMode::pinned;

    double spacing() const { return (x_max - x_min) / double(point_count - 1); }
    double x(std::size_t i) const { return x_min + double(i) * spacing(); }
    double final_time() const { return dt * double(step_count); }

    //! Grid with hbar dt / (m spacing^2) = ratio reaching t_final
    static GridSpec with_ratio(double x_min,
                               double x_max,
                               std::size_t point_count,
                               double ratio,
                               double t_final,
                               PhysicalScales const& scales = {});

    //! Throws ConfigError on bad geometry or a spread-safety violation
    void validate(PhysicalScales const& scales = {}) const;
};

struct GridState
{
    GridSpec spec;
    double t = 0;
    std::vector<Complex> amplitudes;
};

enum class Resolution
{
    enforce,  //!< reject xi < 2 * spacing with ConfigError
    unchecked,  //!< sample anyway (for demonstrating under-resolved runs)
};

//! Sample the initial profile; requires xi >= 2 * spacing by default.
GridState initialize(GridSpec const& spec,
                     InitialCondition const& ic,
                     PhysicalScales const& scales = {},
                     Resolution resolution = Resolution::enforce);

class CrankNicolson
{
  public:
    CrankNicolson(GridSpec const& spec,
                  PhysicalScales const& scales = {},
                  InitialCondition ic = InitialCondition::step());

    //! Advance by spec.dt in place
    void step(GridState& state) const;

    //! Advance until state.t reaches step index target_step
    void advance_to(GridState& state, std::uint64_t target_step) const;

  private:
    GridSpec spec_;
    PhysicalScales scales_;
    InitialCondition ic_;
    Complex half_coupling_;  // i r / 2 with r = (hbar/2m) dt / h^2
    TridiagonalSolver solver_;
    mutable std::vector<Complex> rhs_;
};

//! Convenience one-step propagation (builds a solver per call)
GridState step(GridState const& state, PhysicalScales const& scales = {});

struct GridObservables
{
    std::vector<double> rho;
    //! Centered differences; end points use one-sided differences
    std::vector<double> j;
};

GridObservables observables(GridState const& state,
                            PhysicalScales const& scales = {});

//! Observables of the time-midpoint state (prev + next)/2, the level at which
//! Crank-Nicolson is centered.
GridObservables midpoint_observables(GridState const& prev,
                                     GridState const& next,
                                     PhysicalScales const& scales = {});

//! max_i |(rho_next - rho_prev)/dt + (j_{i+1} - j_{i-1})/(2h)| over the
//! interior, with j from the midpoint state, divided by max_i |drho/dt|.
double continuity_residual(GridState const& prev,
                           GridState const& next,
                           PhysicalScales const& scales = {});

struct ProbeError
{
    double t;
    double l2;  //!< sqrt(h sum |psi_grid - psi_exact|^2)
    double max_abs;
};

//! Propagate from t = 0 and compare against the closed form at each probe
//! time (rounded to the nearest step).
std::vector<ProbeError> compare_closed_form(GridSpec const& spec,
                                            InitialCondition const& ic,
                                            PhysicalScales const& scales,
                                            std::span<double const> probe_times);

struct VerificationRun
{
    std::vector<ProbeError> probes;
    //! continuity_residual over the final step
    double continuity;
};

//! compare_closed_form plus the continuity residual of the last step.
VerificationRun verify_against_closed_form(
    GridSpec const& spec,
    InitialCondition const& ic,
    PhysicalScales const& scales,
    std::span<double const> probe_times,
    Resolution resolution = Resolution::enforce);

//! Complex linear interpolation of the grid wavefunction
Complex interpolate(GridState const& state, double x);

}  // namespace shutter
