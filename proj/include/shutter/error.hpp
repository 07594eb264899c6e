#pragma once

#include <stdexcept>
#include <string>

namespace shutter
{
//! Failure categories; each maps to one process exit status in the CLI.
enum class ErrorKind
{
    usage,         //!< malformed command line or request
    domain,        //!< argument outside the mathematical domain
    config,        //!< invalid configuration file or grid/ensemble settings
    verification,  //!< a measured error exceeded its tolerance
};

class Error : public std::runtime_error
{
  public:
    Error(ErrorKind kind, std::string const& what)
        : std::runtime_error(what), kind_(kind)
    {
    }

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

struct UsageError : Error
{
    explicit UsageError(std::string const& what)
        : Error(ErrorKind::usage, what)
    {
    }
};

struct DomainError : Error
{
    explicit DomainError(std::string const& what)
        : Error(ErrorKind::domain, what)
    {
    }
};

//! Evaluation exactly at the step discontinuity at t = 0.
struct SingularityError : DomainError
{
    using DomainError::DomainError;
};

//! Result not representable in double precision, or a solver broke down.
struct NumericError : DomainError
{
    using DomainError::DomainError;
};

//! Statistics requested on inadequate data.
struct AnalysisError : DomainError
{
    using DomainError::DomainError;
};

struct ConfigError : Error
{
    explicit ConfigError(std::string const& what)
        : Error(ErrorKind::config, what)
    {
    }
};

struct VerificationError : Error
{
    explicit VerificationError(std::string const& what)
        : Error(ErrorKind::verification, what)
    {
    }
};

}  // namespace shutter
