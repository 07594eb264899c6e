#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "asymptotics.hpp"
#include "csv.hpp"
#include "error.hpp"
#include "key_value.hpp"
#include "oracle.hpp"
#include "semiclassical.hpp"

namespace shutter
{
//---------------------------------------------------------------------------//
// Parameter sweeps
//---------------------------------------------------------------------------//
enum class SweepMode
{
    fix_t_scan_x,
    fix_x_scan_t,
};

enum class Spacing
{
    linear,
    log,
};

enum class Source
{
    exact,
    shorttime,
    linear,
    exponential,
    plateau,
    longtime,
    oracle,
};

std::string_view to_string(Source source);
Source parse_source(std::string_view name);

//! Grid used when the oracle source is requested
struct OracleGrid
{
    double x_min = -20;
    double x_max = 20;
    std::size_t point_count = 8001;
    double ratio = 0.1;
    BoundaryMode boundary = BoundaryMode::pinned;
};

struct SweepRequest
{
    SweepMode mode = SweepMode::fix_t_scan_x;
    double fixed = 1;  //!< t for fix_t_scan_x, x for fix_x_scan_t
    double min = 0;
    double max = 1;
    std::size_t points = 2;
    Spacing spacing = Spacing::linear;
    double xi = 0;
    PhysicalScales scales;
    std::vector<Source> sources;
    OracleGrid grid;

    //! Throws UsageError
    void validate() const;
    std::vector<double> coordinates() const;
};

inline constexpr char const* sweep_header[]
    = {"coordinate", "source", "re_psi", "im_psi", "rho", "j", "regime"};

/*!
 * One row per (coordinate, source), coordinate-major, sources in request
 * order. Fields a source does not define (psi for current-only laws, any
 * asymptotic law at x <= 0 or t <= 0) are left empty.
 */
csv::Table run_sweep(SweepRequest const& request);

//---------------------------------------------------------------------------//
// Regime report
//---------------------------------------------------------------------------//
struct RegimeFormula
{
    std::string rho;
    std::string j;
};

//! Leading-order expressions recommended for each regime
RegimeFormula recommended_formula(RegimeTag tag);

void write_regime_report(std::ostream& os,
                         double x,
                         double t,
                         double xi,
                         PhysicalScales const& scales);

//---------------------------------------------------------------------------//
// Cold-atom experiment window (SI units)
//---------------------------------------------------------------------------//
struct ExperimentWindow
{
    double t_min;  //!< 2 m x xi / hbar
    double t_max;  //!< 2 m x^2 / hbar
    bool feasible;  //!< t_max / t_min = x / xi >= 100
};

ExperimentWindow experiment_window(double x,
                                   double xi,
                                   double mass = rb87_mass,
                                   double hbar = si_hbar);

//---------------------------------------------------------------------------//
// Config files
//---------------------------------------------------------------------------//
struct SemiclassicalRun
{
    EnsembleConfig ensemble;
    unsigned threads = 1;
};

SemiclassicalRun load_semiclassical(KeyValueFile& file);

//! Everything needed to write the semiclassical CSV and summary
csv::Table semiclassical_table(SemiclassicalRun const& run);

struct OracleVerifySpec
{
    GridSpec grid;
    double xi = 0.1;
    PhysicalScales scales;
    std::vector<double> probe_times;
    double l2_tolerance = 1e-4;
    double continuity_tolerance = 1e-4;
    //! Optional refinement study against a grid with twice the spacing
    std::optional<double> min_order;
    std::optional<double> min_continuity_reduction;
    //! Set when the grid was built from a spacing ratio (needed to refine)
    std::optional<double> ratio;
};

OracleVerifySpec load_oracle_spec(KeyValueFile& file);

struct CheckResult
{
    std::string name;
    std::string relation;  //!< "<=" or ">="
    double tolerance;
    double measured;
    bool passed() const;
};

std::vector<CheckResult> oracle_verify(OracleVerifySpec const& spec);

//---------------------------------------------------------------------------//
//! Run the command line; returns the process exit status.
int run_cli(std::vector<std::string> const& args,
            std::ostream& out,
            std::ostream& err);

//! Exit status for an error category
int exit_code(ErrorKind kind);

}  // namespace shutter
