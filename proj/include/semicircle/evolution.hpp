#ifndef SEMICIRCLE_EVOLUTION_HPP
#define SEMICIRCLE_EVOLUTION_HPP

// Matrix elements of e^{itP}, e^{itX}, e^{itP^2} in the basis Phi_n, computed two ways:
// from the normal-ordered exponential series (sign-word class sizes |Theta|) and from
// Bessel / 1F1 closed forms. Heisenberg evolution of a+ for the generators P and P^2.

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "fock.hpp"
#include "matrix.hpp"
#include "orthopoly.hpp"
#include "specfun.hpp"

namespace semicircle
{

using cplx = std::complex<double>;

enum class generator_kind
{
    P,
    X,
    P2,
    H1, ///< omega_Lambda + omega_{Lambda+1}
};

enum class coefficient_path
{
    closed_form, ///< Bessel / 1F1
    series,      ///< exponential series with |Theta| counts
};

inline constexpr double coefficient_t_limit = 16.0;

namespace detail
{

using cld = std::complex<long double>;

inline cplx to_cplx(cld z) { return {static_cast<double>(z.real()), static_cast<double>(z.imag())}; }

inline cld i_pow(long long k)
{
    switch (((k % 4) + 4) % 4)
    {
    case 0: return {1.0L, 0.0L};
    case 1: return {0.0L, 1.0L};
    case 2: return {-1.0L, 0.0L};
    default: return {0.0L, -1.0L};
    }
}

inline constexpr int theta_series_cap = 500;

/// sum_p (-1)^p t^{j+2p}/(j+2p)! |Theta(m, n, p)|, j = m + n.
/// Tail: |Theta| <= 2^{2p+j+1}, so the terms after p are dominated by 2 (2|t|)^{j+2q}/(j+2q)!.
inline long double theta_series_linear(unsigned m, unsigned n, double t)
{
    const unsigned j = m + n;
    const long double tl = t, at = std::fabs(tl);
    long double f = power_over_factorial(tl, static_cast<int>(j)); // t^{j+2p}/(j+2p)!
    long double b = 2.0L * power_over_factorial(2.0L * at, static_cast<int>(j));
    kahan_sum<long double> acc;
    for (int p = 0; p < theta_series_cap; ++p)
    {
        const long double sign = (p % 2) ? -1.0L : 1.0L;
        acc.add(sign * f * theta_count_real(m, n, static_cast<std::uint64_t>(p)));
        const long double d1 = j + 2.0L * p + 1.0L, d2 = j + 2.0L * p + 2.0L;
        f *= tl * tl / (d1 * d2);
        b *= 4.0L * at * at / (d1 * d2);
        const long double r = 4.0L * at * at / ((d1 + 2.0L) * (d2 + 2.0L));
        if (r < 1.0L)
        {
            const long double tail = b / (1.0L - r);
            if (tail <= series_rel_tol * std::fabs(acc.value()) || tail <= 1e-300L)
                return acc.value();
        }
    }
    throw convergence_error("theta series for (" + std::to_string(m) + ", " + std::to_string(n) +
                            ") did not converge within 500 terms");
}

/// sum_p (it)^{h+p}/(h+p)! |Theta(m, n, p)|, h = (m+n)/2. Tail dominated by 2 (4|t|)^{h+q}/(h+q)!.
inline cld theta_series_kinetic(unsigned m, unsigned n, double t)
{
    const unsigned h = (m + n) / 2;
    const long double tl = t, at = std::fabs(tl);
    long double f = power_over_factorial(tl, static_cast<int>(h)); // t^{h+p}/(h+p)!
    long double b = 2.0L * power_over_factorial(4.0L * at, static_cast<int>(h));
    kahan_sum<cld> acc;
    for (int p = 0; p < theta_series_cap; ++p)
    {
        acc.add(i_pow(h + p) * (f * theta_count_real(m, n, static_cast<std::uint64_t>(p))));
        const long double d = h + p + 1.0L;
        f *= tl / d;
        b *= 4.0L * at / d;
        const long double r = 4.0L * at / (d + 1.0L);
        if (r < 1.0L)
        {
            const long double tail = b / (1.0L - r);
            if (tail <= series_rel_tol * std::abs(acc.value()) || tail <= 1e-300L)
                return acc.value();
        }
    }
    throw convergence_error("kinetic theta series for (" + std::to_string(m) + ", " + std::to_string(n) +
                            ") did not converge within 500 terms");
}

inline void require_coeff_t(double t, double limit, const char* what)
{
    if (!(std::fabs(t) <= limit))
        throw domain_error(std::string(what) + ": |t| must not exceed " + std::to_string(limit));
}

} // namespace detail

/// I_{m,n}(t) = (-1)^m (m+n+1) J_{m+n+1}(2t) / t.
inline cplx coeff_I_closed(unsigned m, unsigned n, double t)
{
    detail::require_coeff_t(t, coefficient_t_limit, "coeff_I");
    const double r = bessel_j_ratio(static_cast<int>(m + n), t);
    return (m % 2) ? -r : r;
}

/// I_{m,n}(t) = sum_p (-1)^{p+m} t^{m+n+2p}/(m+n+2p)! |Theta_{m+n+2p}(m, n)|.
inline cplx coeff_I_series(unsigned m, unsigned n, double t)
{
    detail::require_coeff_t(t, coefficient_t_limit, "coeff_I");
    const long double v = detail::theta_series_linear(m, n, t);
    return static_cast<double>((m % 2) ? -v : v);
}

/// I_{m,n}(t) by the closed form, after checking that the series agrees within tol.
inline cplx coeff_I(unsigned m, unsigned n, double t, double tol = 1e-11)
{
    const cplx a = coeff_I_closed(m, n, t), b = coeff_I_series(m, n, t);
    if (!(std::abs(a - b) <= tol))
        throw numerical_error("coeff_I(" + std::to_string(m) + ", " + std::to_string(n) + ", " + std::to_string(t) +
                              "): evaluation paths differ by " + std::to_string(std::abs(a - b)));
    return a;
}

/// Coefficient of (a+)^m a^n in e^{itX}: i^{m+n} (J_{m+n+2}(2t) + J_{m+n}(2t)).
inline cplx coeff_X_closed(unsigned m, unsigned n, double t)
{
    detail::require_coeff_t(t, coefficient_t_limit, "coeff_X");
    const int j = static_cast<int>(m + n);
    return detail::to_cplx(detail::i_pow(j)) * (bessel_j_value(j + 2, 2.0 * t) + bessel_j_value(j, 2.0 * t));
}

/// Same coefficient from sum_p (it)^{m+n+2p}/(m+n+2p)! |Theta_{m+n+2p}(m, n)|.
inline cplx coeff_X_series(unsigned m, unsigned n, double t)
{
    detail::require_coeff_t(t, coefficient_t_limit, "coeff_X");
    return detail::to_cplx(detail::i_pow(m + n) * detail::theta_series_linear(m, n, t));
}

/// I2_{m,n}(t) = chi_even(m+n) (-1)^m (-it)^h / h! 1F1((2h+1)/2; 2h+2; 4it),  h = (m+n)/2.
inline cplx coeff_I2_closed(unsigned m, unsigned n, double t)
{
    detail::require_coeff_t(t, 8.0, "coeff_I2");
    const unsigned j = m + n;
    if (j % 2)
        return 0.0;
    const unsigned h = j / 2;
    cplx pre = 1.0;
    for (unsigned k = 0; k < h; ++k)
        pre *= cplx(0.0, -t) / static_cast<double>(k + 1);
    const cplx v = pre * hyp1f1((j + 1) / 2.0, j + 2.0, cplx(0.0, 4.0 * t)).value;
    return (m % 2) ? -v : v;
}

/// I2_{m,n}(t) = chi_even(m+n) (-1)^{(3m+n)/2} sum_p (it)^{h+p}/(h+p)! |Theta_{m+n+2p}(m, n)|.
inline cplx coeff_I2_series(unsigned m, unsigned n, double t)
{
    detail::require_coeff_t(t, 8.0, "coeff_I2");
    if ((m + n) % 2)
        return 0.0;
    const cplx v = detail::to_cplx(detail::theta_series_kinetic(m, n, t));
    return (((3 * m + n) / 2) % 2) ? -v : v;
}

inline cplx coeff_I2(unsigned m, unsigned n, double t, double tol = 1e-11)
{
    const cplx a = coeff_I2_closed(m, n, t), b = coeff_I2_series(m, n, t);
    if (!(std::abs(a - b) <= tol))
        throw numerical_error("coeff_I2(" + std::to_string(m) + ", " + std::to_string(n) + ", " + std::to_string(t) +
                              "): evaluation paths differ by " + std::to_string(std::abs(a - b)));
    return a;
}

enum class coeff_kind
{
    momentum_I,
    position_I,
    kinetic_I2,
};

/// One coefficient family at a single t, entries(m, n) for m <= m_max, n <= n_max.
struct coeff_table
{
    double t = 0.0;
    coeff_kind kind = coeff_kind::momentum_I;
    matrix<cplx> entries;
    matrix<cplx> series_entries; ///< the same coefficients from the |Theta| series
    double tail_tol = 0.0;

    double max_path_difference() const { return max_abs_diff(entries, series_entries); }
};

inline cplx coeff_value(coeff_kind kind, unsigned m, unsigned n, double t, coefficient_path path)
{
    const bool closed = path == coefficient_path::closed_form;
    switch (kind)
    {
    case coeff_kind::momentum_I: return closed ? coeff_I_closed(m, n, t) : coeff_I_series(m, n, t);
    case coeff_kind::position_I: return closed ? coeff_X_closed(m, n, t) : coeff_X_series(m, n, t);
    default: return closed ? coeff_I2_closed(m, n, t) : coeff_I2_series(m, n, t);
    }
}

inline coeff_table build_coeff_table(coeff_kind kind, double t, unsigned m_max, unsigned n_max, double tail_tol = 1e-11)
{
    coeff_table tab{t, kind, matrix<cplx>(m_max + 1, n_max + 1), matrix<cplx>(m_max + 1, n_max + 1), tail_tol};
    for (unsigned m = 0; m <= m_max; ++m)
        for (unsigned n = 0; n <= n_max; ++n)
        {
            tab.entries(m, n) = coeff_value(kind, m, n, t, coefficient_path::closed_form);
            tab.series_entries(m, n) = coeff_value(kind, m, n, t, coefficient_path::series);
        }
    return tab;
}

/// <Phi_l, U Phi_k> = sum_{m <= l ^ k} c_{l-m, k-m}: since a^n Phi_k = Phi_{k-n}, only the terms
/// (a+)^{l-m} a^{k-m} with m <= min(l, k) reach Phi_l.
inline cplx matrix_element(coeff_kind kind, unsigned l, unsigned k, double t,
                           coefficient_path path = coefficient_path::closed_form)
{
    cplx s = 0.0;
    for (unsigned m = 0; m <= std::min(l, k); ++m)
        s += coeff_value(kind, l - m, k - m, t, path);
    return s;
}

inline cplx matrix_element_P(unsigned l, unsigned k, double t, coefficient_path path = coefficient_path::closed_form)
{
    return matrix_element(coeff_kind::momentum_I, l, k, t, path);
}
inline cplx matrix_element_X(unsigned l, unsigned k, double t, coefficient_path path = coefficient_path::closed_form)
{
    return matrix_element(coeff_kind::position_I, l, k, t, path);
}
inline cplx matrix_element_P2(unsigned l, unsigned k, double t, coefficient_path path = coefficient_path::closed_form)
{
    return matrix_element(coeff_kind::kinetic_I2, l, k, t, path);
}

/// Amplitudes <Phi_l, e^{itG} Phi_k>, l = 0 .. L_max.
struct evolved_state
{
    double t = 0.0;
    unsigned k = 0;
    generator_kind generator = generator_kind::P;
    std::vector<cplx> amplitudes;
    int tail_index = 0;        ///< level bound used to certify the truncation
    double tail_bound = 0.0;   ///< bound on sum of |amplitude| beyond L_max
    double norm_defect = 0.0;  ///< | sum |a_l|^2 - 1 |

    /// sum_l a_l Phi_l(x)
    cplx at(double x) const { return phi_series_eval(amplitudes, x); }
};

namespace detail
{

inline void finish_state(evolved_state& s)
{
    double n2 = 0.0;
    for (const auto& a : s.amplitudes)
        n2 += std::norm(a);
    s.norm_defect = std::fabs(n2 - 1.0);
}

/// Sum over l > L of the bound B_l = sum_{m <= l ^ k} |t|^{l+k-2m}/(l+k-2m)! e^{t^2}(1 + t^2/2) on
/// |<Phi_l, e^{itP} Phi_k>| and |<Phi_l, e^{itX} Phi_k>|.
inline double linear_level_tail(double t, unsigned k, unsigned big_l)
{
    double s = 0.0;
    for (unsigned l = big_l + 1;; ++l)
    {
        double b = 0.0;
        for (unsigned m = 0; m <= std::min(l, k); ++m)
            b += coefficient_bound(t, static_cast<int>(l + k - 2 * m));
        s += b;
        if ((l > k + 2 * std::fabs(t) + 2 && b <= 1e-30 * s) || b == 0.0 || l > big_l + 5000)
            break;
    }
    return s;
}

/// Same for e^{itP^2}: |I2_{0,2h}| <= 2 sum_{q >= h} (4|t|)^q / q!.
inline double kinetic_level_tail(double t, unsigned k, unsigned big_l)
{
    const double y = 4.0 * std::fabs(t);
    auto upper = [y](unsigned h) {
        double term = std::exp(h * std::log(std::max(y, 1e-300)) - std::lgamma(h + 1.0)), s = 0.0;
        if (y == 0.0)
            return h == 0 ? 1.0 : 0.0;
        for (unsigned q = h;; ++q)
        {
            s += term;
            term *= y / (q + 1.0);
            if (q > y && term <= 1e-30 * s)
                break;
        }
        return s;
    };
    double s = 0.0;
    for (unsigned l = big_l + 1;; ++l)
    {
        double b = 0.0;
        for (unsigned m = 0; m <= std::min(l, k); ++m)
            b += 2.0 * upper((l + k - 2 * m + 1) / 2);
        s += b;
        if ((l > k + 2 * y + 2 && b <= 1e-30 * s) || b == 0.0 || l > big_l + 5000)
            break;
    }
    return s;
}

} // namespace detail

/// e^{itP} Phi_k on levels 0 .. L_max; needs L_max >= bessel_tail_index(t, tol) + k.
inline evolved_state evolve_P(unsigned k, double t, unsigned l_max, double tol = 1e-10)
{
    const int n_star = bessel_tail_index(t, tol);
    if (l_max < static_cast<unsigned>(n_star) + k)
        throw truncation_error("evolve_P: L_max = " + std::to_string(l_max) + " below the required " +
                               std::to_string(n_star + static_cast<int>(k)));
    evolved_state s{t, k, generator_kind::P, {}, n_star, detail::linear_level_tail(t, k, l_max), 0.0};
    for (unsigned l = 0; l <= l_max; ++l)
        s.amplitudes.push_back(matrix_element_P(l, k, t));
    detail::finish_state(s);
    return s;
}

/// e^{itX} Phi_k on levels 0 .. L_max.
inline evolved_state evolve_X(unsigned k, double t, unsigned l_max, double tol = 1e-10)
{
    const int n_star = bessel_tail_index(t, tol);
    if (l_max < static_cast<unsigned>(n_star) + k)
        throw truncation_error("evolve_X: L_max = " + std::to_string(l_max) + " below the required " +
                               std::to_string(n_star + static_cast<int>(k)));
    evolved_state s{t, k, generator_kind::X, {}, n_star, detail::linear_level_tail(t, k, l_max), 0.0};
    for (unsigned l = 0; l <= l_max; ++l)
        s.amplitudes.push_back(matrix_element_X(l, k, t));
    detail::finish_state(s);
    return s;
}

/// e^{itP^2} Phi_k on levels 0 .. L_max; truncation_error when the level tail bound exceeds tol.
inline evolved_state evolve_P2(unsigned k, double t, unsigned l_max, double tol = 1e-10)
{
    const double tail = detail::kinetic_level_tail(t, k, l_max);
    if (!(tail <= tol))
        throw truncation_error("evolve_P2: level tail bound " + std::to_string(tail) + " exceeds tol at L_max = " +
                               std::to_string(l_max));
    evolved_state s{t, k, generator_kind::P2, {}, static_cast<int>(l_max), tail, 0.0};
    for (unsigned l = 0; l <= l_max; ++l)
        s.amplitudes.push_back(matrix_element_P2(l, k, t));
    detail::finish_state(s);
    return s;
}

/// e^{itP^2} Phi_0: supported on even levels, amplitude (-1)^m sum_p (it)^{m+p} |Theta_{2m+2p}(2m, 0)| / (m+p)! at 2m.
inline evolved_state evolve_P2_vacuum(double t, unsigned l_max, double tol = 1e-10)
{
    return evolve_P2(0, t, l_max, tol);
}

/// Smallest L_max accepted by evolve_P2 for the given tol.
inline unsigned kinetic_level(double t, unsigned k, double tol)
{
    unsigned l = k + 1;
    while (!(detail::kinetic_level_tail(t, k, l) <= tol))
        ++l;
    return l;
}

/// e^{itH_1} Phi_k = e^{it(omega_k + omega_{k+1})} Phi_k with omega_0 = 0, omega_n = omega1.
inline evolved_state evolve_H1(unsigned k, double t, unsigned l_max, double omega1 = 1.0)
{
    if (l_max < k)
        throw truncation_error("evolve_H1: L_max below k");
    evolved_state s{t, k, generator_kind::H1, std::vector<cplx>(l_max + 1, cplx{}), static_cast<int>(k), 0.0, 0.0};
    const double h = (k == 0 ? 0.0 : omega1) + omega1;
    s.amplitudes[k] = std::exp(cplx(0.0, t * h));
    detail::finish_state(s);
    return s;
}

/// (e^{itP} Phi_k)(x) = J_0 Phi_k - sum_{n=1}^k J_n T_{k-n+2} - x J_{k+1}
///                      + x sum_{n=0}^k sum_{m >= n+2} (-1)^{m-n} J_m Phi_{m+k-2n-1},   J_n = J_n(2t).
inline cplx evolve_P_pointwise(unsigned k, double t, double x)
{
    detail::require_coeff_t(t, 8.0, "evolve_P_pointwise");
    const int kk = static_cast<int>(k);
    const int m_top = bessel_tail_index(t, 1e-18) + kk + 2;
    std::vector<double> j(m_top + 1);
    for (int m = 0; m <= m_top; ++m)
        j[m] = bessel_j_value(m, 2.0 * t);
    const auto ph = phi_all(m_top + kk + 1, x);
    double s = j[0] * ph[k];
    for (int n = 1; n <= kk; ++n)
        s -= j[n] * t_cheb(kk - n + 2, x);
    s -= x * j[kk + 1];
    double d = 0.0;
    for (int n = 0; n <= kk; ++n)
        for (int m = n + 2; m <= m_top; ++m)
            d += ((m - n) % 2 ? -1.0 : 1.0) * j[m] * ph[m + kk - 2 * n - 1];
    return s + x * d;
}

/// (e^{itX} Phi_k)(x) = J_0 Phi_k + x sum_{n=1}^k i^n J_n Phi_{k-n+1} + i^{k+1} J_{k+1} x
///                      + sum_{n=0}^k sum_{m >= n+2} i^m J_m T_{m+k-2n}.
inline cplx evolve_X_pointwise(unsigned k, double t, double x)
{
    detail::require_coeff_t(t, 8.0, "evolve_X_pointwise");
    const int kk = static_cast<int>(k);
    const int m_top = bessel_tail_index(t, 1e-18) + kk + 2;
    std::vector<double> j(m_top + 1);
    for (int m = 0; m <= m_top; ++m)
        j[m] = bessel_j_value(m, 2.0 * t);
    const auto ph = phi_all(kk + 1, x);
    auto ip = [](int n) { return detail::to_cplx(detail::i_pow(n)); };
    cplx s = j[0] * ph[k];
    for (int n = 1; n <= kk; ++n)
        s += x * ip(n) * j[n] * ph[kk - n + 1];
    s += ip(kk + 1) * j[kk + 1] * x;
    for (int n = 0; n <= kk; ++n)
        for (int m = n + 2; m <= m_top; ++m)
            s += ip(m) * j[m] * t_cheb(m + kk - 2 * n, x);
    return s;
}

/// (e^{itX} Phi_0)(x) = e^{itx}: X acts on L^2(mu) as multiplication by x and Phi_0 = 1.
inline cplx evolve_X_vacuum_pointwise(double t, double x)
{
    detail::require_support(x, "evolve_X_vacuum_pointwise");
    return std::exp(cplx(0.0, t * x));
}

/// <Phi_0, e^{itP} Phi_0> = <Phi_0, e^{itX} Phi_0> = J_1(2t)/t.
inline cplx char_function(generator_kind g, double t)
{
    if (g != generator_kind::P && g != generator_kind::X)
        throw domain_error("char_function: generator must be P or X");
    detail::require_coeff_t(t, coefficient_t_limit, "char_function");
    return bessel_j_ratio(0, t);
}

/// sum_p (-t^2)^p C_p / (2p)!, the moment series of the semicircle law.
inline double char_function_catalan(double t)
{
    detail::require_coeff_t(t, 8.0, "char_function_catalan");
    return static_cast<double>(detail::theta_series_linear(0, 0, t));
}

/// <Phi_l, e^{itP} Phi_l> = sum_{m <= l} I_{m,m}(t).
inline cplx state_char_function(unsigned l, double t)
{
    cplx s = 0.0;
    for (unsigned m = 0; m <= l; ++m)
        s += coeff_I_closed(m, m, t);
    return s;
}

/// Entry (m, n) of a+_t - a+ for a+_t = e^{itP} a+ e^{-itP}:
///   omega (-1)^{m+n} int_0^t (m+1) J_{m+1}(2s)/s (n+1) J_{n+1}(2s)/s ds.
inline double heisenberg_aplus_P(double t, unsigned m, unsigned n, double omega = 1.0)
{
    detail::require_coeff_t(t, coefficient_t_limit, "heisenberg_aplus_P");
    if (t == 0.0)
        return 0.0;
    auto f = [m, n](double s) {
        return bessel_j_ratio(static_cast<int>(m), s) * bessel_j_ratio(static_cast<int>(n), s);
    };
    double err = 0.0;
    const double a = std::min(0.0, t), b = std::max(0.0, t);
    double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 15, 1e-14, &err);
    if (!(err <= 1e-10 * std::max(1.0, std::fabs(v))))
        throw convergence_error("heisenberg_aplus_P: quadrature error estimate " + std::to_string(err));
    if (t < 0.0)
        v = -v;
    return omega * (((m + n) % 2) ? -v : v);
}

inline matrix<cplx> heisenberg_aplus_P_table(double t, unsigned m_max, unsigned n_max, double omega = 1.0)
{
    matrix<cplx> r(m_max + 1, n_max + 1);
    for (unsigned m = 0; m <= m_max; ++m)
        for (unsigned n = 0; n <= n_max; ++n)
            r(m, n) = heisenberg_aplus_P(t, m, n, omega);
    return r;
}

namespace detail
{

/// Rank-two integrand (i U Phi_1)(U Phi_0)^* + (U Phi_0)(i U Phi_1)^*, U = e^{isP^2}, on the given block.
inline matrix<cplx> kinetic_heisenberg_integrand(double s, unsigned m_max, unsigned n_max)
{
    const unsigned top = std::max(m_max, n_max);
    std::vector<cplx> u0(top + 1), u1(top + 1);
    for (unsigned l = 0; l <= top; ++l)
    {
        u0[l] = matrix_element_P2(l, 0, s);
        u1[l] = cplx(0.0, 1.0) * matrix_element_P2(l, 1, s);
    }
    matrix<cplx> r(m_max + 1, n_max + 1);
    for (unsigned m = 0; m <= m_max; ++m)
        for (unsigned n = 0; n <= n_max; ++n)
            r(m, n) = u1[m] * std::conj(u0[n]) + u0[m] * std::conj(u1[n]);
    return r;
}

inline matrix<cplx> composite_gauss(double t, unsigned m_max, unsigned n_max, int panels)
{
    using rule = boost::math::quadrature::gauss<double, 20>;
    matrix<cplx> acc(m_max + 1, n_max + 1);
    const double h = t / panels;
    for (int p = 0; p < panels; ++p)
    {
        const double a = p * h, half = h / 2.0, mid = a + half;
        const auto& x = rule::abscissa();
        const auto& w = rule::weights();
        for (std::size_t i = 0; i < x.size(); ++i)
        {
            // boost stores the non-negative half of a symmetric rule
            acc += (half * w[i]) * kinetic_heisenberg_integrand(mid + half * x[i], m_max, n_max);
            if (x[i] != 0.0)
                acc += (half * w[i]) * kinetic_heisenberg_integrand(mid - half * x[i], m_max, n_max);
        }
    }
    return acc;
}

} // namespace detail

/// a+_t - a+ for a+_t = e^{itP^2} a+ e^{-itP^2}, block (m_max+1) x (n_max+1), from
///   d/ds a+_s = e^{isP^2} [i P^2, a+] e^{-isP^2} = (i U_s Phi_1)(U_s Phi_0)^* + (U_s Phi_0)(i U_s Phi_1)^*
/// integrated by composite Gauss-Legendre, panels doubled until two successive results agree.
inline matrix<cplx> heisenberg_aplus_P2(double t, unsigned m_max, unsigned n_max, double omega = 1.0)
{
    detail::require_coeff_t(t, 8.0, "heisenberg_aplus_P2");
    if (t == 0.0)
        return matrix<cplx>(m_max + 1, n_max + 1);
    int panels = std::max(1, static_cast<int>(std::ceil(4.0 * std::fabs(t))));
    auto prev = detail::composite_gauss(t, m_max, n_max, panels);
    for (int it = 0; it < 8; ++it)
    {
        panels *= 2;
        auto cur = detail::composite_gauss(t, m_max, n_max, panels);
        if (max_abs_diff(cur, prev) <= 1e-13)
            return cplx(omega) * cur;
        prev = std::move(cur);
    }
    throw convergence_error("heisenberg_aplus_P2: composite quadrature did not settle");
}

/// Same correction from the double exponential series of U_s Phi_0 and U_s Phi_1 integrated term by term:
///   sum c_{mnpq} [D_m Phi_{2n}^* - Phi_{2m} D_n^*],  D_j = Phi_{2j+1} - Phi_{2j-1},
///   c = (-1)^{m+q} |Theta(2m,0,p)| |Theta(2n,0,q)| / ((m+p)! (n+q)!) (it)^{K+1}/(K+1),  K = m+n+p+q.
/// Intended for |t| <= 1, where the series converge without cancellation.
inline matrix<cplx> heisenberg_aplus_P2_series(double t, unsigned m_max, unsigned n_max, double omega = 1.0)
{
    detail::require_coeff_t(t, 1.0, "heisenberg_aplus_P2_series");
    const unsigned top = std::max(m_max, n_max);
    const unsigned half = top / 2 + 1;
    const int p_cap = 80;
    // a[m][p] = |Theta(2m,0,p)| / (m+p)!
    std::vector<std::vector<long double>> a(half + 1, std::vector<long double>(p_cap));
    for (unsigned m = 0; m <= half; ++m)
        for (int p = 0; p < p_cap; ++p)
            a[m][p] = theta_count_real(2 * m, 0, p) / std::tgamma(static_cast<long double>(m + p + 1));
    matrix<cplx> r(m_max + 1, n_max + 1);
    auto add = [&](long long row, long long col, cplx v) {
        if (row >= 0 && col >= 0 && row <= static_cast<long long>(m_max) && col <= static_cast<long long>(n_max))
            r(row, col) += v;
    };
    const long double tl = t;
    for (unsigned m = 0; m <= half; ++m)
        for (unsigned n = 0; n <= half; ++n)
        {
            detail::kahan_sum<detail::cld> acc;
            for (int p = 0; p < p_cap; ++p)
                for (int q = 0; q < p_cap; ++q)
                {
                    const unsigned kk = m + n + p + q;
                    const long double mag = a[m][p] * a[n][q] * std::pow(std::fabs(tl), kk + 1.0L) / (kk + 1.0L);
                    if (mag == 0.0L)
                        continue;
                    const long double sign = ((m + q) % 2 ? -1.0L : 1.0L) * ((tl < 0 && (kk + 1) % 2) ? -1.0L : 1.0L);
                    acc.add(detail::i_pow(kk + 1) * (sign * mag));
                }
            const cplx c = detail::to_cplx(acc.value());
            const long long m2 = 2 * m, n2 = 2 * n;
            add(m2 + 1, n2, c);
            add(m2 - 1, n2, -c);
            add(m2, n2 + 1, -c);
            add(m2, n2 - 1, c);
        }
    return cplx(omega) * r;
}

} // namespace semicircle

#endif
