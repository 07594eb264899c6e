#include "shutter/tridiagonal.hpp"

#include <cmath>

#include "shutter/error.hpp"

namespace shutter
{
TridiagonalSolver::TridiagonalSolver(std::vector<Complex> lower,
                                     std::vector<Complex> diag,
                                     std::vector<Complex> upper)
{
    std::size_t const n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n)
    {
        throw DomainError("tridiagonal: inconsistent band sizes");
    }
    lower_prime_.resize(n);
    upper_prime_.resize(n);
    inv_pivot_.resize(n);

    Complex prev_upper{0, 0};
    for (std::size_t i = 0; i < n; ++i)
    {
        Complex const pivot = i == 0 ? diag[0]
                                     : diag[i] - lower[i] * prev_upper;
        if (std::abs(pivot) == 0 || !std::isfinite(std::abs(pivot)))
        {
            throw NumericError("tridiagonal: zero pivot in row "
                               + std::to_string(i));
        }
        inv_pivot_[i] = 1.0 / pivot;
        lower_prime_[i] = i > 0 ? lower[i] * inv_pivot_[i] : Complex{};
        upper_prime_[i] = i + 1 < n ? upper[i] * inv_pivot_[i] : Complex{};
        prev_upper = upper_prime_[i];
    }
}

void TridiagonalSolver::solve(std::span<Complex const> rhs,
                              std::span<Complex> x) const
{
    std::size_t const n = size();
    if (rhs.size() != n || x.size() != n)
    {
        throw DomainError("tridiagonal: vector size mismatch");
    }
    // Explicit real arithmetic: the loop-carried recurrences defeat the
    // vectorizer, which otherwise shuffles each complex product.
    auto const* ip = reinterpret_cast<double const*>(inv_pivot_.data());
    auto const* lp = reinterpret_cast<double const*>(lower_prime_.data());
    auto const* up = reinterpret_cast<double const*>(upper_prime_.data());
    auto const* r = reinterpret_cast<double const*>(rhs.data());
    auto* out = reinterpret_cast<double*>(x.data());

    // Forward sweep; only one product sits on the loop-carried chain
    double xr = r[0] * ip[0] - r[1] * ip[1];
    double xi = r[0] * ip[1] + r[1] * ip[0];
    out[0] = xr;
    out[1] = xi;
    for (std::size_t i = 1; i < n; ++i)
    {
        double const br = r[2 * i] * ip[2 * i] - r[2 * i + 1] * ip[2 * i + 1];
        double const bi = r[2 * i] * ip[2 * i + 1] + r[2 * i + 1] * ip[2 * i];
        double const lr = lp[2 * i], li = lp[2 * i + 1];
        double const nr = br - (lr * xr - li * xi);
        double const ni = bi - (lr * xi + li * xr);
        xr = nr;
        xi = ni;
        out[2 * i] = xr;
        out[2 * i + 1] = xi;
    }
    // Back substitution
    for (std::size_t i = n - 1; i > 0; --i)
    {
        double const ur = up[2 * (i - 1)], ui = up[2 * (i - 1) + 1];
        double const nr = out[2 * (i - 1)] - (ur * xr - ui * xi);
        double const ni = out[2 * (i - 1) + 1] - (ur * xi + ui * xr);
        xr = nr;
        xi = ni;
        out[2 * (i - 1)] = xr;
        out[2 * (i - 1) + 1] = xi;
    }
}

}  // namespace shutter
