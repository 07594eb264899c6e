#include "shutter/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

namespace shutter
{
namespace
{
using csv::format_number;

std::string optional_number(std::optional<double> v)
{
    return v ? format_number(*v) : std::string{};
}

struct Fields
{
    std::optional<Complex> psi;
    std::optional<double> rho;
    std::optional<double> j;
};

double lerp(std::vector<double> const& values, GridSpec const& spec, double x)
{
    double const pos = (x - spec.x_min) / spec.spacing();
    auto i = std::size_t(std::floor(pos));
    i = std::min(i, spec.point_count - 2);
    double const f = pos - double(i);
    return (1 - f) * values[i] + f * values[i + 1];
}

Fields oracle_fields(GridState const& state, PhysicalScales const& scales, double x)
{
    Complex const p = interpolate(state, x);
    auto const obs = observables(state, scales);
    return {p, std::norm(p), lerp(obs.j, state.spec, x)};
}

GridSpec oracle_spec(SweepRequest const& request, double t_final)
{
    auto const& g = request.grid;
    GridSpec spec = GridSpec::with_ratio(
        g.x_min, g.x_max, g.point_count, g.ratio, t_final, request.scales);
    spec.boundary = g.boundary;
    return spec;
}

Fields analytic_fields(Source source,
                       double x,
                       double t,
                       SweepRequest const& request)
{
    auto const& sc = request.scales;
    double const xi = request.xi;
    if (source == Source::exact)
    {
        auto const s = sample(x, t, InitialCondition::smoothed(xi), sc);
        return {s.psi, s.rho, s.j};
    }
    // Asymptotic laws describe a detector at x > 0 after the opening
    if (!(x > 0) || !(t > 0))
    {
        return {};
    }
    switch (source)
    {
        case Source::shorttime: {
            auto const s = shorttime_smooth(x, t, xi, sc);
            return {s.psi, s.rho, s.j};
        }
        case Source::linear: {
            auto const s = linear_regime(x, t, xi, sc);
            return {std::nullopt, s.rho, s.j};
        }
        case Source::exponential: {
            auto const s = exponential_regime(x, t, xi, sc);
            return {std::nullopt, s.rho, s.j};
        }
        case Source::plateau:
            return {std::nullopt,
                    shorttime_density_step(x, t, sc),
                    plateau_current(x, sc)};
        case Source::longtime: {
            auto const s = longtime(x, t, sc);
            return {std::nullopt, s.rho, s.j};
        }
        default:
            break;
    }
    return {};
}

std::vector<std::string> make_row(double coordinate,
                                  Source source,
                                  Fields const& f,
                                  std::string regime)
{
    return {format_number(coordinate),
            std::string(to_string(source)),
            f.psi ? format_number(f.psi->real()) : std::string{},
            f.psi ? format_number(f.psi->imag()) : std::string{},
            optional_number(f.rho),
            optional_number(f.j),
            std::move(regime)};
}

std::string regime_field(double x, double t, SweepRequest const& request)
{
    if (!(x > 0) || !(t > 0))
        return {};
    return std::string(
        to_string(classify_regime(x, t, request.xi, request.scales).tag));
}

}  // namespace

//---------------------------------------------------------------------------//
std::string_view to_string(Source source)
{
    switch (source)
    {
        case Source::exact:
            return "exact";
        case Source::shorttime:
            return "shorttime";
        case Source::linear:
            return "linear";
        case Source::exponential:
            return "exponential";
        case Source::plateau:
            return "plateau";
        case Source::longtime:
            return "longtime";
        case Source::oracle:
            return "oracle";
    }
    return "unknown";
}

Source parse_source(std::string_view name)
{
    for (auto s : {Source::exact,
                   Source::shorttime,
                   Source::linear,
                   Source::exponential,
                   Source::plateau,
                   Source::longtime,
                   Source::oracle})
    {
        if (to_string(s) == name)
            return s;
    }
    throw UsageError("unknown source '" + std::string(name)
                     + "' (exact, shorttime, linear, exponential, plateau, "
                       "longtime, oracle)");
}

void SweepRequest::validate() const
{
    if (!(min < max) || !std::isfinite(min) || !std::isfinite(max))
        throw UsageError("sweep: require finite min < max");
    if (points < 2)
        throw UsageError("sweep: require points >= 2");
    if (spacing == Spacing::log && !(min > 0))
        throw UsageError("sweep: log spacing requires min > 0");
    if (sources.empty())
        throw UsageError("sweep: at least one source is required");
    if (!(xi >= 0) || !std::isfinite(xi))
        throw UsageError("sweep: xi must be finite and >= 0");
    if (!std::isfinite(fixed))
        throw UsageError("sweep: the fixed coordinate must be finite");
    for (std::size_t i = 0; i < sources.size(); ++i)
    {
        if (std::count(sources.begin(), sources.end(), sources[i]) > 1)
            throw UsageError("sweep: duplicate source '"
                             + std::string(to_string(sources[i])) + "'");
    }
    auto const has = [&](Source s) {
        return std::find(sources.begin(), sources.end(), s) != sources.end();
    };
    if (has(Source::linear) && !(xi > 0))
        throw UsageError("sweep: the linear source requires xi > 0");

    if (has(Source::oracle))
    {
        if (!(xi > 0))
            throw UsageError("sweep: the oracle cannot propagate the "
                             "singular step; give xi > 0");
        double const t_lo = mode == SweepMode::fix_t_scan_x ? fixed : min;
        double const x_lo = mode == SweepMode::fix_t_scan_x ? min : fixed;
        double const x_hi = mode == SweepMode::fix_t_scan_x ? max : fixed;
        if (t_lo < 0)
            throw UsageError("sweep: the oracle runs forward in time only");
        if (x_lo < grid.x_min || x_hi > grid.x_max)
            throw UsageError("sweep: oracle probes must lie inside the grid");
    }
}

std::vector<double> SweepRequest::coordinates() const
{
    std::vector<double> result(points);
    for (std::size_t i = 0; i < points; ++i)
    {
        double const f = double(i) / double(points - 1);
        result[i] = spacing == Spacing::linear
                        ? min + f * (max - min)
                        : std::exp(std::log(min)
                                   + f * (std::log(max) - std::log(min)));
    }
    result.front() = min;
    result.back() = max;
    return result;
}

csv::Table run_sweep(SweepRequest const& request)
{
    request.validate();
    csv::Table table;
    table.header.assign(std::begin(sweep_header), std::end(sweep_header));

    auto const coordinates = request.coordinates();
    bool const fix_t = request.mode == SweepMode::fix_t_scan_x;
    bool const wants_oracle
        = std::find(request.sources.begin(), request.sources.end(), Source::oracle)
          != request.sources.end();

    // One propagation serves the whole sweep
    std::optional<CrankNicolson> propagator;
    std::optional<GridState> state;
    if (wants_oracle)
    {
        double const t_final = fix_t ? request.fixed : coordinates.back();
        GridSpec const spec = oracle_spec(request, t_final);
        auto const ic = InitialCondition::smoothed(request.xi);
        propagator.emplace(spec, request.scales, ic);
        state = initialize(spec, ic, request.scales);
        if (fix_t)
            propagator->advance_to(*state, spec.step_count);
    }

    for (double c : coordinates)
    {
        double const x = fix_t ? c : request.fixed;
        double const t = fix_t ? request.fixed : c;
        std::string const regime = regime_field(x, t, request);
        for (Source source : request.sources)
        {
            Fields f;
            if (source == Source::oracle)
            {
                if (!fix_t)
                {
                    auto const dt = state->spec.dt;
                    propagator->advance_to(*state,
                                           std::uint64_t(std::llround(t / dt)));
                }
                f = oracle_fields(*state, request.scales, x);
            }
            else
            {
                f = analytic_fields(source, x, t, request);
            }
            table.add_row(make_row(c, source, f, regime));
        }
    }
    return table;
}

//---------------------------------------------------------------------------//
RegimeFormula recommended_formula(RegimeTag tag)
{
    switch (tag)
    {
        case RegimeTag::non_causal:
            return {"0", "0"};
        case RegimeTag::linear_rise:
            return {"n xi^2 exp(-2 x^2/xi^2) / (4 pi x^2)",
                    "(hbar/m)^2 n t exp(-2 x^2/xi^2) / (pi x xi^2)"};
        case RegimeTag::exponential_rise:
            return {"hbar n t exp(-m^2 xi^2 x^2 / (2 hbar^2 t^2)) / (2 pi m x^2)",
                    "hbar n exp(-m^2 xi^2 x^2 / (2 hbar^2 t^2)) / (2 pi m x)"};
        case RegimeTag::plateau:
            return {"hbar n t / (2 pi m x^2)", "hbar n / (2 pi m x)"};
        case RegimeTag::long_time_decay:
            return {"n / 4", "(n / 4) sqrt(hbar / (pi m t))"};
    }
    return {"", ""};
}

void write_regime_report(std::ostream& os,
                         double x,
                         double t,
                         double xi,
                         PhysicalScales const& scales)
{
    Regime const r = classify_regime(x, t, xi, scales);
    RegimeFormula const f = recommended_formula(r.tag);
    os << "x = " << format_number(x) << '\n'
       << "t = " << format_number(t) << '\n'
       << "xi = " << format_number(xi) << '\n'
       << "t_causal = " << format_number(r.t_causal) << '\n'
       << "t_lin = " << format_number(r.t_lin) << '\n'
       << "t_sat = " << format_number(r.t_sat) << '\n'
       << "t_plateau_end = " << format_number(r.t_plateau_end) << '\n'
       << "regime = " << to_string(r.tag) << '\n'
       << "rho = " << f.rho << '\n'
       << "j = " << f.j << '\n';
}

//---------------------------------------------------------------------------//
ExperimentWindow
experiment_window(double x, double xi, double mass, double hbar)
{
    if (!(x > 0) || !(xi > 0) || !(mass > 0) || !(hbar > 0)
        || !std::isfinite(x) || !std::isfinite(mass))
    {
        throw DomainError("experiment window: x, xi, mass and hbar must be > 0");
    }
    if (!(xi < x))
    {
        throw DomainError("experiment window: no plateau window when xi >= x");
    }
    ExperimentWindow w;
    w.t_min = 2 * mass * x * xi / hbar;
    w.t_max = 2 * mass * x * x / hbar;
    w.feasible = x / xi >= 100;
    return w;
}

//---------------------------------------------------------------------------//
SemiclassicalRun load_semiclassical(KeyValueFile& file)
{
    SemiclassicalRun run;
    auto& c = run.ensemble;
    c.particle_count = file.count("particle_count", c.particle_count);
    c.v_min = file.number("v_min", c.v_min);
    c.v_max = file.number("v_max", c.v_max);
    c.reservoir_depth = file.number("reservoir_depth", c.reservoir_depth);
    c.seed = file.count("seed", c.seed);
    c.detectors = file.numbers("detectors", c.detectors);
    c.times = file.numbers("times", c.times);
    c.bin_fraction = file.number("bin_fraction", c.bin_fraction);
    auto const geometry = file.text("geometry", "shutter_plane");
    if (geometry == "shutter_plane")
        c.geometry = LaunchGeometry::shutter_plane;
    else if (geometry == "uniform_reservoir")
        c.geometry = LaunchGeometry::uniform_reservoir;
    else
        throw ConfigError("ensemble config: geometry must be shutter_plane "
                          "or uniform_reservoir, got '" + geometry + "'");
    auto const threads = file.count("threads", 1);
    if (threads == 0 || threads > 1024)
        throw ConfigError("ensemble config: threads must be in [1, 1024]");
    run.threads = unsigned(threads);
    file.finish();
    c.validate();
    return run;
}

csv::Table semiclassical_table(SemiclassicalRun const& run)
{
    auto const& c = run.ensemble;
    c.validate();
    auto const particles = sample_ensemble(c, run.threads);

    csv::Table table;
    table.header = {"x0", "t", "rho_hat", "rho_se", "j_hat", "j_se"};
    std::vector<std::vector<DetectorEstimate>> by_detector;
    for (double x0 : c.detectors)
    {
        auto& column = by_detector.emplace_back();
        for (double t : c.times)
        {
            auto const e = estimate_at(
                particles, c.reservoir_depth, x0, t, c.bin_fraction * x0);
            column.push_back(e);
            table.add_row({format_number(e.x0),
                           format_number(e.t),
                           format_number(e.rho_hat.value),
                           format_number(e.rho_hat.std_error),
                           format_number(e.j_hat.value),
                           format_number(e.j_hat.std_error)});
        }
    }

    auto describe = [](LogLogFit const& f) {
        return format_number(f.slope) + " se=" + format_number(f.slope_std_error)
               + " ci95=[" + format_number(f.ci_low) + ","
               + format_number(f.ci_high) + "]";
    };
    for (auto const& column : by_detector)
    {
        std::string const x0 = format_number(column.front().x0);
        try
        {
            auto const report = time_independence_report(column);
            table.trailer.push_back("x0=" + x0 + " slope_log_j_vs_log_t="
                                    + describe(report.current_vs_time));
            table.trailer.push_back("x0=" + x0 + " slope_log_rho_vs_log_t="
                                    + describe(report.density_vs_time));
        }
        catch (AnalysisError const& e)
        {
            table.trailer.push_back("x0=" + x0 + " no fit: " + e.what());
        }
    }
    for (std::size_t k = 0; k < c.times.size(); ++k)
    {
        std::vector<double> xs, js;
        bool usable = true;
        for (auto const& column : by_detector)
        {
            usable = usable && !column[k].empty();
            xs.push_back(column[k].x0);
            js.push_back(column[k].j_hat.value);
        }
        std::string const t = format_number(c.times[k]);
        if (!usable || xs.size() < 3)
        {
            table.trailer.push_back("t=" + t + " no fit: need three non-empty "
                                    "detectors");
            continue;
        }
        table.trailer.push_back("t=" + t + " slope_log_j_vs_log_x0="
                                + describe(fit_loglog(xs, js)));
    }
    return table;
}

//---------------------------------------------------------------------------//
OracleVerifySpec load_oracle_spec(KeyValueFile& file)
{
    OracleVerifySpec spec;
    spec.xi = file.number("xi", spec.xi);
    spec.scales.hbar = file.number("hbar", 1);
    spec.scales.mass = file.number("mass", 1);
    spec.scales.density_n = file.number("density", 1);
    try
    {
        spec.scales.validate();
    }
    catch (DomainError const& e)
    {
        throw ConfigError(std::string("oracle spec: ") + e.what());
    }

    double const x_min = file.number("x_min", -20);
    double const x_max = file.number("x_max", 20);
    auto const points = file.count("points", 8001);
    bool const by_ratio = file.contains("ratio");
    bool const by_step = file.contains("dt") || file.contains("steps");
    if (by_ratio == by_step)
    {
        throw ConfigError("oracle spec: give either 'ratio' with 't_final', "
                          "or 'dt' with 'steps'");
    }
    if (by_ratio)
    {
        double const ratio = file.number("ratio", 0.1);
        double const t_final = file.number("t_final", 1);
        spec.grid = GridSpec::with_ratio(
            x_min, x_max, points, ratio, t_final, spec.scales);
        spec.ratio = ratio;
    }
    else
    {
        spec.grid.x_min = x_min;
        spec.grid.x_max = x_max;
        spec.grid.point_count = points;
        spec.grid.dt = file.number("dt", spec.grid.dt);
        spec.grid.step_count = file.count("steps", spec.grid.step_count);
    }
    auto const boundary = file.text("boundary", "pinned");
    if (boundary == "pinned")
        spec.grid.boundary = BoundaryMode::pinned;
    else if (boundary == "closed_form")
        spec.grid.boundary = BoundaryMode::closed_form;
    else
        throw ConfigError("oracle spec: boundary must be pinned or "
                          "closed_form, got '" + boundary + "'");

    spec.probe_times
        = file.numbers("probe_times", {spec.grid.final_time()});
    spec.l2_tolerance = file.number("l2_tolerance", spec.l2_tolerance);
    spec.continuity_tolerance
        = file.number("continuity_tolerance", spec.continuity_tolerance);
    if (file.contains("min_order"))
        spec.min_order = file.number("min_order", 0);
    if (file.contains("min_continuity_reduction"))
        spec.min_continuity_reduction
            = file.number("min_continuity_reduction", 0);
    file.finish();

    if (!(spec.xi > 0))
        throw ConfigError("oracle spec: xi must be > 0");
    if ((spec.min_order || spec.min_continuity_reduction) && !spec.ratio)
        throw ConfigError("oracle spec: refinement checks need 'ratio'");
    if (spec.min_order || spec.min_continuity_reduction)
    {
        if ((spec.grid.point_count - 1) % 2 != 0)
            throw ConfigError("oracle spec: refinement needs an odd point "
                              "count so the coarse grid nests");
    }
    // Fail on geometry before any compute
    spec.grid.validate(spec.scales);
    return spec;
}

bool CheckResult::passed() const
{
    if (!std::isfinite(measured))
        return false;
    return relation == "<=" ? measured <= tolerance : measured >= tolerance;
}

std::vector<CheckResult> oracle_verify(OracleVerifySpec const& spec)
{
    auto const ic = InitialCondition::smoothed(spec.xi);
    std::vector<CheckResult> checks;
    double const h = spec.grid.spacing();
    checks.push_back({"resolution_xi_over_spacing", ">=", 2, spec.xi / h});

    auto const fine = verify_against_closed_form(
        spec.grid, ic, spec.scales, spec.probe_times, Resolution::unchecked);
    for (auto const& p : fine.probes)
    {
        checks.push_back(
            {"l2_error_t=" + format_number(p.t), "<=", spec.l2_tolerance, p.l2});
    }
    checks.push_back(
        {"continuity_residual", "<=", spec.continuity_tolerance, fine.continuity});

    if (spec.min_order || spec.min_continuity_reduction)
    {
        GridSpec coarse = GridSpec::with_ratio(spec.grid.x_min,
                                               spec.grid.x_max,
                                               (spec.grid.point_count - 1) / 2 + 1,
                                               *spec.ratio,
                                               spec.grid.final_time(),
                                               spec.scales);
        coarse.boundary = spec.grid.boundary;
        auto const rough = verify_against_closed_form(
            coarse, ic, spec.scales, spec.probe_times, Resolution::unchecked);
        if (spec.min_order)
        {
            for (std::size_t i = 0; i < fine.probes.size(); ++i)
            {
                double const order
                    = std::log2(rough.probes[i].l2 / fine.probes[i].l2);
                checks.push_back({"convergence_order_t="
                                      + format_number(fine.probes[i].t),
                                  ">=",
                                  *spec.min_order,
                                  order});
            }
        }
        if (spec.min_continuity_reduction)
        {
            checks.push_back({"continuity_reduction",
                              ">=",
                              *spec.min_continuity_reduction,
                              rough.continuity / fine.continuity});
        }
    }
    return checks;
}

//---------------------------------------------------------------------------//
int exit_code(ErrorKind kind)
{
    switch (kind)
    {
        case ErrorKind::usage:
            return 2;
        case ErrorKind::domain:
            return 3;
        case ErrorKind::config:
            return 4;
        case ErrorKind::verification:
            return 5;
    }
    return 1;
}

namespace
{
void add_scales(CLI::App* cmd, PhysicalScales& scales)
{
    cmd->add_option("--hbar", scales.hbar, "Reduced Planck constant")
        ->capture_default_str();
    cmd->add_option("--mass", scales.mass, "Particle mass")->capture_default_str();
    cmd->add_option("--density", scales.density_n, "Reservoir density n")
        ->capture_default_str();
    cmd->add_option("--light-speed", scales.light_speed,
                    "Signal speed for the causality floor (default: none)");
}

template<class Enum>
std::map<std::string, Enum> choices(std::initializer_list<std::pair<std::string, Enum>> l)
{
    return std::map<std::string, Enum>(l.begin(), l.end());
}

}  // namespace

int run_cli(std::vector<std::string> const& args,
            std::ostream& out,
            std::ostream& err)
{
    CLI::App app{"Density and current after a quantum shutter opens"};
    app.name("shutter");
    app.require_subcommand(1);

    // sweep
    SweepRequest sweep;
    std::vector<std::string> source_names{"exact"};
    auto* sweep_cmd = app.add_subcommand(
        "sweep", "Tabulate psi, rho and j along x (fixed t) or t (fixed x)");
    sweep_cmd
        ->add_option("--mode", sweep.mode, "fix-t scans x; fix-x scans t")
        ->transform(CLI::CheckedTransformer(
            choices<SweepMode>({{"fix-t", SweepMode::fix_t_scan_x},
                                {"fix-x", SweepMode::fix_x_scan_t}})))
        ->required();
    sweep_cmd->add_option("--at", sweep.fixed, "Fixed t (fix-t) or x (fix-x)")
        ->required();
    sweep_cmd->add_option("--min", sweep.min, "Scan start")->required();
    sweep_cmd->add_option("--max", sweep.max, "Scan end")->required();
    sweep_cmd->add_option("--points", sweep.points, "Number of samples")
        ->capture_default_str();
    sweep_cmd
        ->add_option("--spacing", sweep.spacing, "linear or log")
        ->transform(CLI::CheckedTransformer(choices<Spacing>(
            {{"linear", Spacing::linear}, {"log", Spacing::log}})));
    sweep_cmd->add_option("--xi", sweep.xi, "Initial gradient width (0: step)")
        ->capture_default_str();
    sweep_cmd
        ->add_option("--sources", source_names,
                     "Comma list of exact, shorttime, linear, exponential, "
                     "plateau, longtime, oracle")
        ->delimiter(',')
        ->capture_default_str();
    sweep_cmd->add_option("--grid-x-min", sweep.grid.x_min)->capture_default_str();
    sweep_cmd->add_option("--grid-x-max", sweep.grid.x_max)->capture_default_str();
    sweep_cmd->add_option("--grid-points", sweep.grid.point_count)
        ->capture_default_str();
    sweep_cmd->add_option("--grid-ratio", sweep.grid.ratio,
                          "hbar dt / (m spacing^2)")
        ->capture_default_str();
    sweep_cmd
        ->add_option("--grid-boundary", sweep.grid.boundary)
        ->transform(CLI::CheckedTransformer(choices<BoundaryMode>(
            {{"pinned", BoundaryMode::pinned},
             {"closed_form", BoundaryMode::closed_form}})));
    add_scales(sweep_cmd, sweep.scales);

    // regimes
    double rx = 0, rt = 0, rxi = 0;
    PhysicalScales regime_scales;
    auto* regimes_cmd = app.add_subcommand(
        "regimes", "Boundary times, regime and leading-order formulas");
    regimes_cmd->add_option("--x", rx, "Detector position")->required();
    regimes_cmd->add_option("--t", rt, "Time")->required();
    regimes_cmd->add_option("--xi", rxi, "Initial gradient width")
        ->capture_default_str();
    add_scales(regimes_cmd, regime_scales);

    // semiclassical
    std::string semi_config;
    auto* semi_cmd = app.add_subcommand(
        "semiclassical", "Classical 1/v^2 ensemble: detector estimates and fits");
    semi_cmd->add_option("--config", semi_config, "key = value config file")
        ->required();

    // oracle-verify
    std::string oracle_config;
    auto* oracle_cmd = app.add_subcommand(
        "oracle-verify", "Crank-Nicolson run checked against the closed form");
    oracle_cmd->add_option("--spec", oracle_config, "key = value grid spec")
        ->required();

    // experiment-window
    double wx = 0, wxi = 0, wmass = rb87_mass, whbar = si_hbar;
    auto* window_cmd = app.add_subcommand(
        "experiment-window", "Plateau window for a cold-atom setup (SI units)");
    window_cmd->add_option("--x", wx, "Detector distance [m]")->required();
    window_cmd->add_option("--xi", wxi, "Gradient width [m]")->required();
    window_cmd->add_option("--mass", wmass, "Atom mass [kg] (default Rb-87)")
        ->capture_default_str();
    window_cmd->add_option("--hbar", whbar, "Reduced Planck constant [J s]")
        ->capture_default_str();

    // potential
    double pxi = 1, pmin = -5, pmax = 20;
    std::size_t ppoints = 26;
    PhysicalScales potential_scales;
    auto* potential_cmd = app.add_subcommand(
        "potential", "Trap potential holding the smoothed profile");
    potential_cmd->add_option("--xi", pxi, "Gradient width")->required();
    potential_cmd->add_option("--min", pmin)->capture_default_str();
    potential_cmd->add_option("--max", pmax)->capture_default_str();
    potential_cmd->add_option("--points", ppoints)->capture_default_str();
    add_scales(potential_cmd, potential_scales);

    try
    {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    }
    catch (CLI::CallForHelp const&)
    {
        out << (app.get_subcommands().empty()
                    ? app.help()
                    : app.get_subcommands().front()->help());
        return 0;
    }
    catch (CLI::CallForAllHelp const&)
    {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    }
    catch (CLI::ParseError const& e)
    {
        err << "usage error: " << e.what() << '\n'
            << "run 'shutter --help' for usage\n";
        return exit_code(ErrorKind::usage);
    }

    try
    {
        if (*sweep_cmd)
        {
            sweep.sources.clear();
            for (auto const& name : source_names)
                sweep.sources.push_back(parse_source(name));
            csv::write(out, run_sweep(sweep));
        }
        else if (*regimes_cmd)
        {
            write_regime_report(out, rx, rt, rxi, regime_scales);
        }
        else if (*semi_cmd)
        {
            auto file = KeyValueFile::load(semi_config);
            csv::write(out, semiclassical_table(load_semiclassical(file)));
        }
        else if (*oracle_cmd)
        {
            auto file = KeyValueFile::load(oracle_config);
            auto const checks = oracle_verify(load_oracle_spec(file));
            csv::Table report;
            report.header = {"check", "relation", "tolerance", "measured", "status"};
            std::size_t failed = 0;
            for (auto const& c : checks)
            {
                failed += !c.passed();
                report.add_row({c.name,
                                c.relation,
                                format_number(c.tolerance),
                                format_number(c.measured),
                                c.passed() ? "pass" : "fail"});
            }
            csv::write(out, report);
            if (failed > 0)
            {
                throw VerificationError(std::to_string(failed) + " of "
                                        + std::to_string(checks.size())
                                        + " oracle checks failed");
            }
        }
        else if (*window_cmd)
        {
            auto const w = experiment_window(wx, wxi, wmass, whbar);
            out << "t_min_s = " << format_number(w.t_min) << '\n'
                << "t_max_s = " << format_number(w.t_max) << '\n'
                << "t_max_over_t_min = " << format_number(w.t_max / w.t_min)
                << '\n'
                << "feasible = " << (w.feasible ? "true" : "false") << '\n';
        }
        else if (*potential_cmd)
        {
            if (!(pmin < pmax) || ppoints < 2)
                throw UsageError("potential: require min < max and points >= 2");
            if (!(pxi > 0))
                throw DomainError("potential: xi must be > 0");
            potential_scales.validate();
            double const unit = potential_scales.hbar * potential_scales.hbar
                                * std::sqrt(potential_scales.density_n)
                                / (potential_scales.mass * pxi * pxi);
            csv::Table table;
            table.header = {"x", "V", "residual"};
            for (std::size_t i = 0; i < ppoints; ++i)
            {
                double x = pmin + (pmax - pmin) * double(i) / double(ppoints - 1);
                if (i + 1 == ppoints)
                    x = pmax;
                table.add_row(
                    {format_number(x),
                     format_number(trap_potential(x, pxi, potential_scales)),
                     format_number(
                         trap_eigen_residual(x, pxi, potential_scales) / unit)});
            }
            csv::write(out, table);
        }
    }
    catch (Error const& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_code(e.kind());
    }
    return 0;
}

}  // namespace shutter
