#ifndef SEMICIRCLE_ORTHOPOLY_HPP
#define SEMICIRCLE_ORTHOPOLY_HPP

// Monic Chebyshev polynomials on [-2, 2]:
//   Phi_n(2 cos th) = sin((n+1) th) / sin th   (second kind, orthonormal for the semicircle law)
//   T_n(2 cos th)   = 2 cos(n th)              (first kind)

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "report.hpp"

namespace semicircle
{

namespace detail
{
inline void require_support(double x, const char* what)
{
    if (!(std::fabs(x) <= 2.0))
        throw domain_error(std::string(what) + ": x must lie in [-2, 2]");
}
} // namespace detail

/// Phi_0 .. Phi_{n_max} at x by x Phi_n = Phi_{n+1} + Phi_{n-1}.
inline std::vector<double> phi_all(int n_max, double x)
{
    if (n_max < 0)
        throw domain_error("phi_all: degree must be non-negative");
    detail::require_support(x, "phi_all");
    std::vector<double> v(static_cast<std::size_t>(n_max) + 1);
    v[0] = 1.0;
    if (n_max >= 1)
        v[1] = x;
    for (int n = 1; n < n_max; ++n)
        v[n + 1] = x * v[n] - v[n - 1];
    return v;
}

inline double phi(int n, double x)
{
    if (n < 0)
        throw domain_error("phi: degree must be non-negative");
    detail::require_support(x, "phi");
    double prev = 0.0, cur = 1.0; // Phi_{-1} = 0
    for (int k = 0; k < n; ++k)
    {
        const double next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// T_n(x) = 2 cos(n arccos(x/2)); T_0 = 2.
inline double t_cheb(int n, double x)
{
    if (n < 0)
        throw domain_error("t_cheb: degree must be non-negative");
    detail::require_support(x, "t_cheb");
    if (n == 0)
        return 2.0;
    // T_1 = x, T_{n+1} = x T_n - T_{n-1} with T_0 = 2 -- exact for polynomial arguments
    double prev = 2.0, cur = x;
    for (int k = 1; k < n; ++k)
    {
        const double next = x * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

/// Sum_n c_n Phi_n(x), by Clenshaw.
template <typename T>
T phi_series_eval(const std::vector<T>& c, double x)
{
    detail::require_support(x, "phi_series_eval");
    T b1{}, b2{};
    for (std::size_t k = c.size(); k-- > 0;)
    {
        const T b0 = c[k] + x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    return b1;
}

struct quadrature_rule
{
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// M-point Gauss rule for mu(dy) = sqrt(4 - y^2) dy / (2 pi):
/// nodes 2 cos(k pi/(M+1)), weights 2 sin^2(k pi/(M+1)) / (M+1), k = 1..M.
/// Exact for polynomials of degree <= 2M - 1.
inline quadrature_rule gauss_u_rule(int m)
{
    if (m < 1)
        throw domain_error("gauss_u_rule: need at least one node");
    quadrature_rule r;
    r.nodes.resize(m);
    r.weights.resize(m);
    for (int k = 1; k <= m; ++k)
    {
        const double th = k * M_PI / (m + 1.0);
        const double s = std::sin(th);
        r.nodes[k - 1] = 2.0 * std::cos(th);
        r.weights[k - 1] = 2.0 * s * s / (m + 1.0);
    }
    return r;
}

/// T_{n+1} = Phi_{n+1} - Phi_{n-1},  2 T_{n+1} = x T_n - (4 - x^2) Phi_{n-1},  T_{n+1} = 2 Phi_{n+1} - x Phi_n,
/// for 0 <= n <= n_max (Phi_{-1} = 0), relative to max(1, |T_{n+1}|).
inline check_report connection_checks(int n_max, const std::vector<double>& x_grid, double tol = 1e-10)
{
    if (n_max < 1)
        throw domain_error("connection_checks: n_max must be at least 1");
    check_report report;
    auto& c2 = report.add("orthopoly", "T_{n+1} = Phi_{n+1} - Phi_{n-1}", tol);
    auto& c3 = report.add("orthopoly", "2 T_{n+1} = x T_n - (4 - x^2) Phi_{n-1}", tol);
    auto& c4 = report.add("orthopoly", "T_{n+1} = 2 Phi_{n+1} - x Phi_n", tol);
    for (double x : x_grid)
    {
        const auto ph = phi_all(n_max + 1, x);
        for (int n = 0; n <= n_max; ++n)
        {
            const double tn1 = t_cheb(n + 1, x);
            const double scale = std::max(1.0, std::fabs(tn1));
            const double phm1 = n >= 1 ? ph[n - 1] : 0.0;
            const std::string where = "n=" + std::to_string(n) + " x=" + std::to_string(x);
            check_report::observe(c2, std::fabs(tn1 - (ph[n + 1] - phm1)) / scale, where);
            check_report::observe(c3, std::fabs(2.0 * tn1 - (x * t_cheb(n, x) - (4.0 - x * x) * phm1)) / (2.0 * scale),
                                  where);
            check_report::observe(c4, std::fabs(tn1 - (2.0 * ph[n + 1] - x * ph[n])) / scale, where);
        }
    }
    return report;
}

/// Recurrence vs trigonometric form on the interior, and Gauss-U orthonormality.
inline check_report orthopoly_checks(int n_max = 200, int n_orth = 20, int m_nodes = 64)
{
    check_report report;
    auto& trig = report.add("orthopoly", "Phi_n(2cos th) = sin((n+1)th)/sin th", 1e-10);
    for (int j = 1; j <= 101; ++j)
    {
        const double th = j * M_PI / 102.0;
        const double x = 2.0 * std::cos(th);
        const auto ph = phi_all(n_max, x);
        for (int n = 0; n <= n_max; ++n)
        {
            const double ref = std::sin((n + 1) * th) / std::sin(th);
            check_report::observe(trig, std::fabs(ph[n] - ref) / std::max(1.0, std::fabs(ref)),
                                  "n=" + std::to_string(n) + " th=" + std::to_string(th));
        }
    }

    auto& orth = report.add("orthopoly", "<Phi_m, Phi_n>_mu = delta_mn", 1e-12);
    const auto rule = gauss_u_rule(m_nodes);
    std::vector<std::vector<double>> vals;
    for (double x : rule.nodes)
        vals.push_back(phi_all(n_orth, x));
    for (int m = 0; m <= n_orth; ++m)
        for (int n = 0; n <= n_orth; ++n)
        {
            double s = 0.0;
            for (std::size_t k = 0; k < rule.nodes.size(); ++k)
                s += rule.weights[k] * vals[k][m] * vals[k][n];
            check_report::observe(orth, std::fabs(s - (m == n ? 1.0 : 0.0)),
                                  "m=" + std::to_string(m) + " n=" + std::to_string(n));
        }

    std::vector<double> grid;
    for (int j = 0; j <= 100; ++j)
        grid.push_back(-2.0 + 4.0 * j / 100.0);
    report.merge(connection_checks(100, grid));
    return report;
}

} // namespace semicircle

#endif
