#include "shutter/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "shutter/error.hpp"

#if defined(__SSE2__)
#    include <xmmintrin.h>
#endif

namespace shutter
{
namespace
{
// The far tails of the state decay into subnormal range, where x86
// arithmetic is two orders of magnitude slower. They carry no information,
// so flush them to zero while propagating.
class FlushSubnormals
{
  public:
#if defined(__SSE2__)
    FlushSubnormals() : saved_(_mm_getcsr()) { _mm_setcsr(saved_ | 0x8040u); }
    ~FlushSubnormals() { _mm_setcsr(saved_); }

  private:
    unsigned saved_;
#endif
};

TridiagonalSolver
make_implicit_operator(std::size_t n, Complex half_coupling)
{
    // (1 + i r) psi_i - (i r / 2)(psi_{i-1} + psi_{i+1}); boundary rows are
    // identities carrying the Dirichlet data.
    std::vector<Complex> lower(n, -half_coupling);
    std::vector<Complex> diag(n, 1.0 + 2.0 * half_coupling);
    std::vector<Complex> upper(n, -half_coupling);
    lower[0] = upper[0] = 0;
    diag[0] = 1;
    lower[n - 1] = upper[n - 1] = 0;
    diag[n - 1] = 1;
    return TridiagonalSolver(std::move(lower), std::move(diag), std::move(upper));
}

Complex coupling_for(GridSpec const& spec, PhysicalScales const& scales)
{
    double const h = spec.spacing();
    double const r = 0.5 * scales.hbar_over_mass() * spec.dt / (h * h);
    return Complex{0, 0.5 * r};
}

void require_same_grid(GridState const& a, GridState const& b)
{
    if (a.spec.point_count != b.spec.point_count || a.spec.x_min != b.spec.x_min
        || a.spec.x_max != b.spec.x_max
        || a.amplitudes.size() != b.amplitudes.size())
    {
        throw UsageError("grid states come from different grid specs");
    }
}

std::vector<double> centered_current(std::span<Complex const> psi,
                                     double h,
                                     double hbar_over_mass)
{
    std::size_t const n = psi.size();
    std::vector<double> j(n, 0.0);
    if (n < 2)
    {
        return j;
    }
    for (std::size_t i = 1; i + 1 < n; ++i)
    {
        Complex const d = (psi[i + 1] - psi[i - 1]) / (2 * h);
        j[i] = hbar_over_mass * std::imag(std::conj(psi[i]) * d);
    }
    j[0] = hbar_over_mass * std::imag(std::conj(psi[0]) * (psi[1] - psi[0]) / h);
    j[n - 1] = hbar_over_mass
               * std::imag(std::conj(psi[n - 1]) * (psi[n - 1] - psi[n - 2]) / h);
    return j;
}

}  // namespace

//---------------------------------------------------------------------------//
GridSpec GridSpec::with_ratio(double x_min,
                              double x_max,
                              std::size_t point_count,
                              double ratio,
                              double t_final,
                              PhysicalScales const& scales)
{
    GridSpec spec;
    spec.x_min = x_min;
    spec.x_max = x_max;
    spec.point_count = point_count;
    if (!(ratio > 0) || !(t_final >= 0) || point_count < 3)
    {
        throw ConfigError("grid: ratio must be > 0, t_final >= 0, points >= 3");
    }
    double const h = spec.spacing();
    double const dt_target = ratio * h * h / scales.hbar_over_mass();
    spec.step_count = std::uint64_t(std::ceil(t_final / dt_target - 1e-9));
    spec.dt = spec.step_count > 0 ? t_final / double(spec.step_count)
                                  : dt_target;
    return spec;
}

void GridSpec::validate(PhysicalScales const& scales) const
{
    if (point_count < 3)
        throw ConfigError("grid: point_count must be >= 3");
    if (!(x_min < 0 && 0 < x_max) || !std::isfinite(x_min)
        || !std::isfinite(x_max))
        throw ConfigError("grid: require x_min < 0 < x_max");
    if (!(dt > 0) || !std::isfinite(dt))
        throw ConfigError("grid: dt must be > 0");
    double const spread = std::sqrt(2 * scales.hbar_over_mass() * final_time());
    double const room = 0.25 * std::min(-x_min, x_max);
    if (spread > room)
    {
        throw ConfigError("grid: spread safety violated, sqrt(2 hbar t/m) = "
                          + std::to_string(spread) + " exceeds 0.25 * "
                          + "min(|x_min|, x_max) = " + std::to_string(room));
    }
}

//---------------------------------------------------------------------------//
GridState initialize(GridSpec const& spec,
                     InitialCondition const& ic,
                     PhysicalScales const& scales,
                     Resolution resolution)
{
    scales.validate();
    spec.validate(scales);
    if (ic.is_singular()
        || (resolution == Resolution::enforce && ic.xi() < 2 * spec.spacing()))
    {
        throw ConfigError("grid: the initial gradient width xi must be at "
                          "least twice the grid spacing");
    }
    GridState state;
    state.spec = spec;
    state.t = 0;
    state.amplitudes.resize(spec.point_count);
    for (std::size_t i = 0; i < spec.point_count; ++i)
    {
        state.amplitudes[i] = psi(spec.x(i), 0.0, ic, scales);
    }
    if (spec.boundary == BoundaryMode::pinned)
    {
        state.amplitudes.front() = std::sqrt(scales.density_n);
        state.amplitudes.back() = 0.0;
    }
    return state;
}

//---------------------------------------------------------------------------//
CrankNicolson::CrankNicolson(GridSpec const& spec,
                             PhysicalScales const& scales,
                             InitialCondition ic)
    : spec_(spec)
    , scales_(scales)
    , ic_(ic)
    , half_coupling_(coupling_for(spec, scales))
    , solver_(make_implicit_operator(spec.point_count, half_coupling_))
    , rhs_(spec.point_count)
{
    scales.validate();
    spec.validate(scales);
}

void CrankNicolson::step(GridState& state) const
{
    auto& psi_n = state.amplitudes;
    std::size_t const n = psi_n.size();
    if (n != spec_.point_count)
    {
        throw UsageError("grid state does not match the propagator grid");
    }
    FlushSubnormals const guard;
    // Explicit half: psi_i + (i r / 2)(psi_{i-1} - 2 psi_i + psi_{i+1})
    double const a = half_coupling_.imag();
    for (std::size_t i = 1; i + 1 < n; ++i)
    {
        Complex const lap = psi_n[i - 1] - 2.0 * psi_n[i] + psi_n[i + 1];
        rhs_[i] = psi_n[i] + Complex{-a * lap.imag(), a * lap.real()};
    }
    double const t_next = state.t + spec_.dt;
    if (spec_.boundary == BoundaryMode::closed_form)
    {
        rhs_[0] = psi(spec_.x_min, t_next, ic_, scales_);
        rhs_[n - 1] = psi(spec_.x_max, t_next, ic_, scales_);
    }
    else
    {
        rhs_[0] = psi_n[0];
        rhs_[n - 1] = psi_n[n - 1];
    }
    solver_.solve(rhs_, psi_n);
    state.t = t_next;
}

void CrankNicolson::advance_to(GridState& state,
                               std::uint64_t target_step) const
{
    FlushSubnormals const guard;
    auto current = std::uint64_t(std::llround(state.t / spec_.dt));
    for (; current < target_step; ++current)
    {
        step(state);
    }
    // Keep t an exact multiple of dt rather than an accumulated sum
    state.t = double(target_step) * spec_.dt;
}

GridState step(GridState const& state, PhysicalScales const& scales)
{
    if (state.spec.boundary != BoundaryMode::pinned)
    {
        throw UsageError("single-step helper supports pinned boundaries only; "
                         "use CrankNicolson for closed-form boundaries");
    }
    GridState next = state;
    CrankNicolson(state.spec, scales).step(next);
    return next;
}

//---------------------------------------------------------------------------//
GridObservables observables(GridState const& state,
                            PhysicalScales const& scales)
{
    GridObservables result;
    result.rho.resize(state.amplitudes.size());
    std::transform(state.amplitudes.begin(),
                   state.amplitudes.end(),
                   result.rho.begin(),
                   [](Complex p) { return std::norm(p); });
    result.j = centered_current(
        state.amplitudes, state.spec.spacing(), scales.hbar_over_mass());
    return result;
}

GridObservables midpoint_observables(GridState const& prev,
                                     GridState const& next,
                                     PhysicalScales const& scales)
{
    require_same_grid(prev, next);
    GridState mid = prev;
    for (std::size_t i = 0; i < mid.amplitudes.size(); ++i)
    {
        mid.amplitudes[i] = 0.5 * (prev.amplitudes[i] + next.amplitudes[i]);
    }
    mid.t = 0.5 * (prev.t + next.t);
    return observables(mid, scales);
}

double continuity_residual(GridState const& prev,
                           GridState const& next,
                           PhysicalScales const& scales)
{
    require_same_grid(prev, next);
    double const dt = next.t - prev.t;
    if (!(dt > 0))
    {
        throw UsageError("continuity residual needs next.t > prev.t");
    }
    std::size_t const n = prev.amplitudes.size();
    double const h = prev.spec.spacing();
    auto const mid = midpoint_observables(prev, next, scales);

    double worst = 0;
    double rate_scale = 0;
    for (std::size_t i = 2; i + 2 < n; ++i)
    {
        double const drho = (std::norm(next.amplitudes[i])
                             - std::norm(prev.amplitudes[i]))
                            / dt;
        double const div_j = (mid.j[i + 1] - mid.j[i - 1]) / (2 * h);
        worst = std::max(worst, std::fabs(drho + div_j));
        rate_scale = std::max(rate_scale, std::fabs(drho));
    }
    return rate_scale > 0 ? worst / rate_scale : worst;
}

//---------------------------------------------------------------------------//
namespace
{
void check_probe_times(std::vector<double> const& times, GridSpec const& spec)
{
    for (double t : times)
    {
        if (!(t >= 0) || t > spec.final_time() * (1 + 1e-12))
        {
            throw ConfigError("probe time " + std::to_string(t)
                              + " lies outside [0, dt * step_count]");
        }
    }
}

ProbeError measure(GridState const& state,
                   InitialCondition const& ic,
                   PhysicalScales const& scales)
{
    GridSpec const& spec = state.spec;
    ProbeError err{state.t, 0, 0};
    double sum = 0;
    for (std::size_t i = 0; i < spec.point_count; ++i)
    {
        double const e = std::abs(state.amplitudes[i]
                                  - psi(spec.x(i), state.t, ic, scales));
        sum += e * e;
        err.max_abs = std::max(err.max_abs, e);
    }
    err.l2 = std::sqrt(spec.spacing() * sum);
    return err;
}

}  // namespace

std::vector<ProbeError> compare_closed_form(GridSpec const& spec,
                                            InitialCondition const& ic,
                                            PhysicalScales const& scales,
                                            std::span<double const> probe_times)
{
    std::vector<double> times(probe_times.begin(), probe_times.end());
    std::sort(times.begin(), times.end());
    check_probe_times(times, spec);
    GridState state = initialize(spec, ic, scales);
    CrankNicolson const propagator(spec, scales, ic);

    std::vector<ProbeError> report;
    for (double t : times)
    {
        propagator.advance_to(state, std::uint64_t(std::llround(t / spec.dt)));
        report.push_back(measure(state, ic, scales));
    }
    return report;
}

VerificationRun verify_against_closed_form(GridSpec const& spec,
                                           InitialCondition const& ic,
                                           PhysicalScales const& scales,
                                           std::span<double const> probe_times,
                                           Resolution resolution)
{
    std::vector<double> times(probe_times.begin(), probe_times.end());
    std::sort(times.begin(), times.end());
    check_probe_times(times, spec);
    if (spec.step_count == 0)
    {
        throw ConfigError("grid: continuity check needs at least one step");
    }
    GridState state = initialize(spec, ic, scales, resolution);
    CrankNicolson const propagator(spec, scales, ic);

    VerificationRun run;
    std::optional<GridState> prev;
    for (double t : times)
    {
        auto const target = std::uint64_t(std::llround(t / spec.dt));
        if (target == spec.step_count)
        {
            propagator.advance_to(state, target - 1);
            prev = state;
        }
        propagator.advance_to(state, target);
        run.probes.push_back(measure(state, ic, scales));
    }
    if (!prev)
    {
        propagator.advance_to(state, spec.step_count - 1);
        prev = state;
        propagator.advance_to(state, spec.step_count);
    }
    run.continuity = continuity_residual(*prev, state, scales);
    return run;
}

Complex interpolate(GridState const& state, double x)
{
    GridSpec const& spec = state.spec;
    if (!(x >= spec.x_min && x <= spec.x_max))
    {
        throw DomainError("interpolation point outside the grid");
    }
    double const pos = (x - spec.x_min) / spec.spacing();
    auto i = std::size_t(std::floor(pos));
    i = std::min(i, spec.point_count - 2);
    double const f = pos - double(i);
    return (1 - f) * state.amplitudes[i] + f * state.amplitudes[i + 1];
}

}  // namespace shutter
