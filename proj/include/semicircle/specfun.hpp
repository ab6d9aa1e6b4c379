#ifndef SEMICIRCLE_SPECFUN_HPP
#define SEMICIRCLE_SPECFUN_HPP

// Power-series special functions: Bessel J_n of the first kind and the
// confluent hypergeometric 1F1. Terms are generated by their exact ratio,
// accumulated in extended precision with compensated summation, and the
// omitted tail is bounded by a geometric majorant.

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <vector>

#include "errors.hpp"

namespace semicircle
{

template <typename T>
struct series_result
{
    T value{};
    int terms_used = 0;
    double tail_bound = 0.0; ///< upper bound on |sum of omitted terms|
};

namespace detail
{

/// Kahan-compensated accumulator.
template <typename T>
class kahan_sum
{
public:
    void add(T x)
    {
        const T y = x - c_;
        const T t = sum_ + y;
        c_ = (t - sum_) - y;
        sum_ = t;
    }
    T value() const { return sum_; }

private:
    T sum_{};
    T c_{};
};

template <typename T>
class kahan_sum<std::complex<T>>
{
public:
    void add(std::complex<T> x)
    {
        re_.add(x.real());
        im_.add(x.imag());
    }
    std::complex<T> value() const { return {re_.value(), im_.value()}; }

private:
    kahan_sum<T> re_, im_;
};

inline long double magnitude(long double x) { return std::fabs(x); }
inline long double magnitude(const std::complex<long double>& z) { return std::abs(z); }

/// Sums sum_p term_p with term_{p+1} = term_p * ratio(p).
/// ratio_sup(q) must bound sup_{r >= q} |ratio(r)| (or return +inf when no bound is known yet);
/// the tail after term p is then at most |term_{p+1}| / (1 - ratio_sup(p+1)).
template <typename T, typename Ratio, typename RatioSup>
series_result<T> sum_ratio_series(T first, Ratio ratio, RatioSup ratio_sup, int max_terms, long double rel_tol,
                                  const char* name)
{
    kahan_sum<T> acc;
    T term = first;
    for (int p = 0; p < max_terms; ++p)
    {
        acc.add(term);
        const T next = term * ratio(p);
        const long double sup = ratio_sup(p + 1);
        if (sup < 1.0L)
        {
            const long double tail = magnitude(next) / (1.0L - sup);
            const long double scale = magnitude(acc.value());
            if (tail <= rel_tol * scale || tail <= std::numeric_limits<long double>::min())
            {
                return {acc.value(), p + 1, static_cast<double>(tail)};
            }
        }
        term = next;
    }
    throw convergence_error(std::string(name) + ": series did not converge within " + std::to_string(max_terms) +
                            " terms");
}

inline constexpr long double series_rel_tol = 1e-19L;

/// (y^n / n!) built as a product so large n underflows gracefully.
inline long double power_over_factorial(long double y, int n)
{
    long double r = 1.0L;
    for (int i = 1; i <= n; ++i)
        r *= y / static_cast<long double>(i);
    return r;
}

inline long double bessel_series_ld(int n, long double x, int& terms, double& tail)
{
    const long double half = x / 2.0L;
    const long double q = half * half;
    const auto res = sum_ratio_series<long double>(
        power_over_factorial(half, n),
        [=](int p) { return -q / (static_cast<long double>(p + 1) * static_cast<long double>(n + p + 1)); },
        [=](int p) { return q / (static_cast<long double>(p + 1) * static_cast<long double>(n + p + 1)); }, 500,
        series_rel_tol, "bessel_j");
    terms = res.terms_used;
    tail = res.tail_bound;
    return res.value;
}

} // namespace detail

inline constexpr double bessel_argument_limit = 64.0;

/// J_n(x) = sum_p (-1)^p / (p! (n+p)!) (x/2)^{n+2p}.
/// Accuracy degrades through cancellation as |x| grows; intended for |x| up to ~16.
inline series_result<double> bessel_j(int n, double x)
{
    if (n < 0)
        throw domain_error("bessel_j: order must be non-negative");
    if (!(std::fabs(x) <= bessel_argument_limit))
        throw domain_error("bessel_j: |x| must not exceed 64");
    series_result<double> r;
    r.value = static_cast<double>(detail::bessel_series_ld(n, x, r.terms_used, r.tail_bound));
    return r;
}

/// Value-only shorthand for bessel_j.
inline double bessel_j_value(int n, double x) { return bessel_j(n, x).value; }

/// (n+1) J_{n+1}(2t) / t, evaluated from its own power series
/// (n+1) sum_p (-1)^p t^{n+2p} / (p! (n+p+1)!), so t = 0 needs no special case.
inline double bessel_j_ratio(int n, double t)
{
    if (n < 0)
        throw domain_error("bessel_j_ratio: order must be non-negative");
    if (!(std::fabs(2.0 * t) <= bessel_argument_limit))
        throw domain_error("bessel_j_ratio: |2t| must not exceed 64");
    const long double tl = t;
    const long double q = tl * tl;
    // first term: (n+1) t^n / (n+1)! = t^n / n!
    const auto res = detail::sum_ratio_series<long double>(
        detail::power_over_factorial(tl, n),
        [=](int p) { return -q / (static_cast<long double>(p + 1) * static_cast<long double>(n + p + 2)); },
        [=](int p) { return q / (static_cast<long double>(p + 1) * static_cast<long double>(n + p + 2)); }, 500,
        detail::series_rel_tol, "bessel_j_ratio");
    return static_cast<double>(res.value);
}

/// 1F1(a; b; z) = sum_k (a)_k / ((b)_k k!) z^k.
inline series_result<std::complex<double>> hyp1f1(double a, double b, std::complex<double> z)
{
    if (b <= 0.0 && b == std::floor(b))
        throw domain_error("hyp1f1: b is a non-positive integer (pole)");
    if (!(std::abs(z) <= bessel_argument_limit))
        throw domain_error("hyp1f1: |z| must not exceed 64");
    using cld = std::complex<long double>;
    const cld zl(z.real(), z.imag());
    const long double al = a, bl = b, az = std::abs(zl);
    const auto res = detail::sum_ratio_series<cld>(
        cld(1.0L, 0.0L),
        [=](int k) {
            // (a)_{k+1} / (a)_k = a + k, likewise for b, and (k+1)!/k! = k + 1
            return zl * ((al + k) / ((bl + k) * static_cast<long double>(k + 1)));
        },
        [=](int k) {
            const long double ak = al + k, bk = bl + k;
            if (bk <= 0.0L || ak < 0.0L)
                return std::numeric_limits<long double>::infinity();
            // (a+q)/(b+q) is monotone towards 1 for q >= k; 1/(q+1) decreases.
            return az * std::max(1.0L, ak / bk) / static_cast<long double>(k + 1);
        },
        1000, detail::series_rel_tol, "hyp1f1");
    return {std::complex<double>(static_cast<double>(res.value.real()), static_cast<double>(res.value.imag())),
            res.terms_used, res.tail_bound};
}

/// Upper bound |t|^n / n! * e^{t^2} (1 + t^2/2) on |I_{0,n}(t)|.
inline double coefficient_bound(double t, int n)
{
    if (t == 0.0)
        return n == 0 ? 1.0 : 0.0;
    const double at = std::fabs(t);
    return std::exp(n * std::log(at) - std::lgamma(n + 1.0) + at * at + std::log1p(at * at / 2.0));
}

/// Smallest n* >= 1 with sum_{n > n*} |t|^n / n! e^{t^2} (1 + t^2/2) < tol,
/// i.e. a level beyond which the Bessel-coefficient series are negligible.
inline int bessel_tail_index(double t, double tol)
{
    if (!(tol > 0.0))
        throw domain_error("bessel_tail_index: tol must be positive");
    const double at = std::fabs(t);
    for (int n_star = 1;; ++n_star)
    {
        // Terms after n* decay with ratio |t|/(n+1) <= |t|/(n*+2).
        const double rho = at / (n_star + 2.0);
        if (rho >= 1.0)
            continue;
        if (coefficient_bound(t, n_star + 1) / (1.0 - rho) < tol)
            return n_star;
    }
}

} // namespace semicircle

#endif
