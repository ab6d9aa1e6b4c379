#ifndef SEMICIRCLE_HILBERT_HPP
#define SEMICIRCLE_HILBERT_HPP

// The mu-Hilbert transform H f(x) = 2 p.v. int f(y) / (x - y) mu(dy) on L^2([-2, 2], mu),
// spectrally (H Phi_n = T_{n+1}) and by principal-value quadrature; the free momentum
// P = i H; the Schroedinger-type realization on L^2(dx) through rho; Kapteyn-type
// Bessel sums and the principal-value closed forms they produce.

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "orthopoly.hpp"
#include "report.hpp"
#include "specfun.hpp"

namespace semicircle
{

using cplx = std::complex<double>;

/// f = sum_n coeffs[n] Phi_n.
struct cheb_series
{
    std::vector<cplx> coeffs;

    std::size_t size() const { return coeffs.size(); }
    cplx operator()(double x) const { return phi_series_eval(coeffs, x); }
};

/// g = sum_j coeffs[j] T_j.
struct t_series
{
    std::vector<cplx> coeffs;
};

/// H(sum c_n Phi_n) = sum c_n T_{n+1}.
inline t_series hilbert_mu_spectral(const cheb_series& f)
{
    t_series g;
    g.coeffs.assign(f.size() + 1, cplx{});
    for (std::size_t n = 0; n < f.size(); ++n)
        g.coeffs[n + 1] = f.coeffs[n];
    return g;
}

/// Re-expands a T-series without constant term in the Phi basis: T_1 = Phi_1, T_{n+1} = Phi_{n+1} - Phi_{n-1}.
inline cheb_series t_to_phi(const t_series& g)
{
    if (!g.coeffs.empty() && g.coeffs[0] != cplx{})
        throw domain_error("t_to_phi: T_0 component is not handled");
    cheb_series f;
    f.coeffs.assign(g.coeffs.size(), cplx{});
    for (std::size_t j = 1; j < g.coeffs.size(); ++j)
    {
        f.coeffs[j] += g.coeffs[j];
        if (j >= 2)
            f.coeffs[j - 2] -= g.coeffs[j];
    }
    return f;
}

/// P f = i H f, in the Phi basis.
inline cheb_series momentum_apply(const cheb_series& f)
{
    auto r = t_to_phi(hilbert_mu_spectral(f));
    for (auto& c : r.coeffs)
        c *= cplx(0.0, 1.0);
    return r;
}

/// E f = P^2 f / 2 = -H^2 f / 2.
inline cheb_series kinetic_apply(const cheb_series& f)
{
    auto r = momentum_apply(momentum_apply(f));
    for (auto& c : r.coeffs)
        c *= 0.5;
    return r;
}

/// Multiplication by x: x Phi_n = Phi_{n+1} + Phi_{n-1}.
inline cheb_series position_apply(const cheb_series& f)
{
    cheb_series r;
    r.coeffs.assign(f.size() + 1, cplx{});
    for (std::size_t n = 0; n < f.size(); ++n)
    {
        r.coeffs[n + 1] += f.coeffs[n];
        if (n >= 1)
            r.coeffs[n - 1] += f.coeffs[n];
    }
    return r;
}

/// <f, g>_mu = sum conj(f_n) g_n.
inline cplx inner(const cheb_series& f, const cheb_series& g)
{
    cplx s{};
    for (std::size_t n = 0; n < std::min(f.size(), g.size()); ++n)
        s += std::conj(f.coeffs[n]) * g.coeffs[n];
    return s;
}

/// Coefficients of f padded or cut to length n.
inline cheb_series resized(cheb_series f, std::size_t n)
{
    f.coeffs.resize(n, cplx{});
    return f;
}

inline cheb_series random_cheb_series(std::size_t degree, std::mt19937_64& rng)
{
    std::normal_distribution<double> g(0.0, 1.0);
    cheb_series f;
    for (std::size_t n = 0; n <= degree; ++n)
        f.coeffs.emplace_back(g(rng), g(rng));
    return f;
}

inline constexpr int default_pv_nodes = 2048;

/// H f(x) by singularity subtraction on the M-point Gauss rule for mu:
///   2 sum_k w_k (f(y_k) - f(x)) / (x - y_k) + 2 f(x) p.v. int mu(dy)/(x - y),  with the last integral = x/2.
/// Exact up to rounding when f is a polynomial of degree <= 2M.
template <typename F>
double hilbert_mu_pv(F&& f, double x, int m = default_pv_nodes)
{
    if (!(std::fabs(x) < 2.0))
        throw domain_error("hilbert_mu_pv: x must lie in (-2, 2)");
    const auto rule = gauss_u_rule(m);
    const double fx = f(x);
    double s = 0.0;
    for (std::size_t k = 0; k < rule.nodes.size(); ++k)
    {
        const double d = x - rule.nodes[k];
        if (std::fabs(d) <= 1e-13)
            throw numerical_error("hilbert_mu_pv: x = " + std::to_string(x) + " coincides with a quadrature node");
        s += rule.weights[k] * (f(rule.nodes[k]) - fx) / d;
    }
    return 2.0 * s + fx * x;
}

/// rho(x) = (4 - x^2)^{1/4} / sqrt(2 pi) on [-2, 2], 0 outside; rho^2 is the semicircle density.
inline double rho_weight(double x)
{
    if (!(std::fabs(x) <= 2.0))
        return 0.0;
    return std::pow(4.0 - x * x, 0.25) / std::sqrt(2.0 * M_PI);
}

/// ([Q, P] psi)(x) for psi = Phi_n rho on L^2(dx), with Q = multiplication by x and P = i rho H rho^{-1},
/// H evaluated by hilbert_mu_pv with m nodes. rho^{-1} is only taken at interior points.
inline std::vector<cplx> schrodinger_commutator_values(int n, const std::vector<double>& grid, int m = default_pv_nodes)
{
    auto psi = [n](double y) { return phi(n, y) * rho_weight(y); };
    auto q_psi = [&](double y) { return y * psi(y); };
    const cplx i(0.0, 1.0);
    // P g(x) = i rho(x) H(g / rho)(x)
    auto p_apply = [&](auto&& g, double x) {
        return i * rho_weight(x) * hilbert_mu_pv([&](double y) { return g(y) / rho_weight(y); }, x, m);
    };
    std::vector<cplx> out;
    out.reserve(grid.size());
    for (double x : grid)
        out.push_back(x * p_apply(psi, x) - p_apply(q_psi, x));
    return out;
}

/// Interior evaluation grid whose points never meet the nodes of the m-point rule:
/// nodes of the (m/2)-point rule, (m+1) and (m/2+1) being coprime for m = 2048.
inline std::vector<double> schrodinger_grid(int m = default_pv_nodes) { return gauss_u_rule(m / 2).nodes; }

/// ([Q, P])(Phi_n rho) = 2 i rho delta_{n0} on the grid; also int rho^2 dx = 1.
inline check_report schrodinger_commutator_check(int n, int m = default_pv_nodes, double tol = 1e-8)
{
    check_report report;
    auto& e = report.add("hilbert", "[Q,P](Phi_" + std::to_string(n) + " rho) = 2i rho delta_n0", tol);
    const auto grid = schrodinger_grid(m);
    const auto vals = schrodinger_commutator_values(n, grid, m);
    for (std::size_t j = 0; j < grid.size(); ++j)
    {
        const cplx expected = n == 0 ? cplx(0.0, 2.0 * rho_weight(grid[j])) : cplx{};
        check_report::observe(e, std::abs(vals[j] - expected), "x=" + std::to_string(grid[j]));
    }
    // int rho^2 dx with x = 2 cos(th): (2/pi) int_0^pi sin^2(th) d th, trapezoid is exact for this trigonometric polynomial
    auto& norm = report.add("hilbert", "int rho^2 dx = 1", 1e-14);
    const int k = 64;
    double s = 0.0;
    for (int j = 0; j < k; ++j)
    {
        const double th = (j + 0.5) * M_PI / k;
        const double x = 2.0 * std::cos(th);
        s += rho_weight(x) * rho_weight(x) * 2.0 * std::sin(th);
    }
    check_report::observe(norm, std::fabs(s * M_PI / k - 1.0), "midpoint in theta");
    return report;
}

namespace detail
{

/// p.v. int_0^pi g(phi) / (cos th - cos phi) d phi. The p.v. of 1/(cos th - cos phi) over [0, pi] vanishes,
/// so subtracting g(th) leaves a smooth, even, 2 pi-periodic integrand and the midpoint rule converges
/// geometrically. dg is the derivative of g, used for the removable value g'(th)/sin(th) at nodes close to th.
template <typename G, typename DG>
double pv_cos_kernel(G&& g, DG&& dg, double th, int m = 4096)
{
    const double gt = g(th), ct = std::cos(th), lim = dg(th) / std::sin(th);
    const double h = M_PI / m;
    double s = 0.0;
    for (int j = 0; j < m; ++j)
    {
        const double ph = (j + 0.5) * h;
        const double d = ct - std::cos(ph);
        s += std::fabs(d) < 1e-9 ? lim : (g(ph) - gt) / d;
    }
    return s * h;
}

inline void require_kapteyn_args(double t, double th, const char* what)
{
    if (!(th > 0.0 && th < M_PI))
        throw domain_error(std::string(what) + ": theta must lie in (0, pi)");
    if (!(std::fabs(t) <= 8.0))
        throw domain_error(std::string(what) + ": |t| must not exceed 8");
}

inline double int_cos_sin(double t, double th)
{
    return pv_cos_kernel([t](double p) { return std::cos(2.0 * t * std::sin(p)); },
                         [t](double p) { return -std::sin(2.0 * t * std::sin(p)) * 2.0 * t * std::cos(p); }, th);
}

inline double int_sin_sin(double t, double th)
{
    return pv_cos_kernel([t](double p) { return std::sin(2.0 * t * std::sin(p)) * std::sin(p); },
                         [t](double p) {
                             return std::cos(2.0 * t * std::sin(p)) * 2.0 * t * std::cos(p) * std::sin(p) +
                                    std::sin(2.0 * t * std::sin(p)) * std::cos(p);
                         },
                         th);
}

inline constexpr int kapteyn_term_cap = 400;

template <typename Trig>
double kapteyn_series(double t, double th, Trig trig, const char* what)
{
    require_kapteyn_args(t, th, what);
    const int n_star = bessel_tail_index(t, 1e-17);
    if (n_star > kapteyn_term_cap)
        throw convergence_error(std::string(what) + ": tail index exceeds 400");
    detail::kahan_sum<double> acc;
    for (int m = n_star; m >= 1; --m)
        acc.add((m % 2 ? -1.0 : 1.0) * bessel_j_value(m, 2.0 * t) * trig(m * th));
    return acc.value();
}

} // namespace detail

/// sum_{m>=1} (-1)^m J_m(2t) sin(m th).
inline double kapteyn_sum_sin(double t, double th)
{
    return detail::kapteyn_series(t, th, [](double a) { return std::sin(a); }, "kapteyn_sum_sin");
}

/// sum_{m>=1} (-1)^m J_m(2t) cos(m th).
inline double kapteyn_sum_cos(double t, double th)
{
    return detail::kapteyn_series(t, th, [](double a) { return std::cos(a); }, "kapteyn_sum_cos");
}

/// -sin(2t sin th)/2 - sin(th)/(2 pi) p.v. int_0^pi cos(2t sin phi) / (cos th - cos phi) d phi
inline double kapteyn_sin_pv(double t, double th)
{
    detail::require_kapteyn_args(t, th, "kapteyn_sin_pv");
    return -std::sin(2.0 * t * std::sin(th)) / 2.0 - std::sin(th) / (2.0 * M_PI) * detail::int_cos_sin(t, th);
}

/// (cos(2t sin th) - J_0(2t))/2 - 1/(2 pi) p.v. int_0^pi sin(2t sin phi) sin(phi) / (cos th - cos phi) d phi
inline double kapteyn_cos_pv(double t, double th)
{
    detail::require_kapteyn_args(t, th, "kapteyn_cos_pv");
    return (std::cos(2.0 * t * std::sin(th)) - bessel_j_value(0, 2.0 * t)) / 2.0 -
           detail::int_sin_sin(t, th) / (2.0 * M_PI);
}

namespace detail
{
inline double interior_theta(double x, const char* what)
{
    if (!(std::fabs(x) <= 2.0 - 1e-6))
        throw domain_error(std::string(what) + ": |x| must not exceed 2 - 1e-6");
    return std::acos(x / 2.0);
}
} // namespace detail

/// (e^{itP} Phi_0)(x) = J_0(2t) - x sin(2t sin th) / (2 sin th) - x/(2 pi) p.v. int_0^pi cos(2t sin phi)/(cos th - cos phi),
/// x = 2 cos th.
inline cplx evolved_vacuum_closed_form(double t, double x)
{
    const double th = detail::interior_theta(x, "evolved_vacuum_closed_form");
    if (!(std::fabs(t) <= 8.0))
        throw domain_error("evolved_vacuum_closed_form: |t| must not exceed 8");
    return bessel_j_value(0, 2.0 * t) - x * std::sin(2.0 * t * std::sin(th)) / (2.0 * std::sin(th)) -
           x / (2.0 * M_PI) * detail::int_cos_sin(t, th);
}

/// (e^{itP} Phi_1)(x) = 2 J_1(2t) + x cos(2t sin th) - x/pi p.v. int_0^pi sin(2t sin phi) sin(phi)/(cos th - cos phi).
inline cplx evolved_phi1_closed_form(double t, double x)
{
    const double th = detail::interior_theta(x, "evolved_phi1_closed_form");
    if (!(std::fabs(t) <= 8.0))
        throw domain_error("evolved_phi1_closed_form: |t| must not exceed 8");
    return 2.0 * bessel_j_value(1, 2.0 * t) + x * std::cos(2.0 * t * std::sin(th)) -
           x / M_PI * detail::int_sin_sin(t, th);
}

/// Spectral vs quadrature transform, skew-adjointness, [P, x] = -2i <Phi_0, .> Phi_0 and the kinetic operator,
/// all on random series of degree <= 16.
inline check_report hilbert_checks(std::mt19937_64& rng, int n_max = 12, int pairs = 50)
{
    check_report report;
    auto& pv = report.add("hilbert", "hilbert_mu_pv(Phi_n) = T_{n+1}", 1e-6);
    for (int n = 0; n <= n_max; ++n)
        for (int j = 0; j < 25; ++j)
        {
            const double x = -1.9 + 3.8 * (j + 0.5) / 25.0;
            const double v = hilbert_mu_pv([n](double y) { return phi(n, y); }, x);
            check_report::observe(pv, std::fabs(v - t_cheb(n + 1, x)), "n=" + std::to_string(n) + " x=" + std::to_string(x));
        }

    auto& skew = report.add("hilbert", "<f, H g> + <H f, g> = 0", 1e-10);
    auto& comm = report.add("hilbert", "P x - x P = 2i <Phi_0, .> Phi_0", 1e-13);
    auto& kin = report.add("hilbert", "kinetic = -H^2/2", 1e-12);
    for (int r = 0; r < pairs; ++r)
    {
        const auto f = random_cheb_series(16, rng), g = random_cheb_series(16, rng);
        // H f = -i P f
        auto hilb = [](const cheb_series& s) {
            auto p = momentum_apply(s);
            for (auto& c : p.coeffs)
                c *= cplx(0.0, -1.0);
            return p;
        };
        const auto hf = hilb(f), hg = hilb(g);
        const std::size_t len = hf.size();
        check_report::observe(skew, std::abs(inner(resized(f, len), hg) + inner(hf, resized(g, len))),
                              "pair " + std::to_string(r));

        const auto lhs = momentum_apply(position_apply(f));
        const auto rhs = position_apply(momentum_apply(f));
        double d = 0.0;
        for (std::size_t n = 0; n < lhs.size(); ++n)
        {
            const cplx expected = n == 0 ? cplx(0.0, -2.0) * f.coeffs[0] : cplx{};
            // [P, x] = -[x, P]
            d = std::max(d, std::abs(lhs.coeffs[n] - resized(rhs, lhs.size()).coeffs[n] - expected));
        }
        check_report::observe(comm, d, "pair " + std::to_string(r));

        const auto k = kinetic_apply(f);
        const auto h2 = hilb(hilb(f));
        double dk = 0.0;
        for (std::size_t n = 0; n < k.size(); ++n)
            dk = std::max(dk, std::abs(k.coeffs[n] + 0.5 * h2.coeffs[n]));
        check_report::observe(kin, dk, "pair " + std::to_string(r));
    }
    return report;
}

/// Kapteyn series against their p.v. integral forms.
inline check_report kapteyn_checks(const std::vector<double>& ts, const std::vector<double>& thetas, double tol = 1e-6)
{
    check_report report;
    auto& s = report.add("hilbert", "Kapteyn sine sum = p.v. integral form", tol);
    auto& c = report.add("hilbert", "Kapteyn cosine sum = p.v. integral form", tol);
    for (double t : ts)
        for (double th : thetas)
        {
            const std::string where = "t=" + std::to_string(t) + " th=" + std::to_string(th);
            check_report::observe(s, std::fabs(kapteyn_sum_sin(t, th) - kapteyn_sin_pv(t, th)), where);
            check_report::observe(c, std::fabs(kapteyn_sum_cos(t, th) - kapteyn_cos_pv(t, th)), where);
        }
    return report;
}

} // namespace semicircle

#endif
