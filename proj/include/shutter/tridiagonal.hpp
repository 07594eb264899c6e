#pragma once

#include <complex>
#include <span>
#include <vector>

namespace shutter
{
//---------------------------------------------------------------------------//
/*!
 * Thomas algorithm for a fixed complex tridiagonal matrix.
 *
 * Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i];
 * lower[0] and upper[n-1] are ignored. The forward elimination factors are
 * computed once at construction, so repeated solves (one per time step) only
 * cost the two sweeps.
 */
class TridiagonalSolver
{
  public:
    using Complex = std::complex<double>;

    TridiagonalSolver(std::vector<Complex> lower,
                      std::vector<Complex> diag,
                      std::vector<Complex> upper);

    std::size_t size() const { return inv_pivot_.size(); }

    //! Solve in place of x; rhs and x may alias.
    void solve(std::span<Complex const> rhs, std::span<Complex> x) const;

  private:
    std::vector<Complex> lower_prime_;
    std::vector<Complex> upper_prime_;
    std::vector<Complex> inv_pivot_;
};

}  // namespace shutter
