#ifndef SEMICIRCLE_ORACLE_HPP
#define SEMICIRCLE_ORACLE_HPP

// Brute-force ground truth for the closed forms: exponentials of truncated operators
// by Taylor series with certified remainders, and truncation levels that make the
// N-dimensional evolution agree with the infinite one.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <string>

#include "errors.hpp"
#include "fock.hpp"
#include "matrix.hpp"
#include "specfun.hpp"

namespace semicircle
{

template <typename R>
struct expm_result
{
    R value;
    std::size_t dim = 0;
    int series_terms = 0;       ///< Taylor terms summed, over all sub-steps
    double residual_bound = 0.0; ///< bound on the distance to the exact exponential (2-norm)
};

namespace detail
{

/// ||A||_2 <= sqrt(||A||_1 ||A||_inf)
inline double spectral_norm_bound(const matrix<cplx>& a) { return std::sqrt(a.norm_one() * a.norm_inf()); }

inline bool is_skew_hermitian(const matrix<cplx>& b)
{
    const double scale = std::max(1.0, b.norm_inf());
    return max_abs_diff(b.adjoint(), -1.0 * b) <= 1e-14 * scale;
}

inline double vec_norm(const std::vector<cplx>& v)
{
    double s = 0.0;
    for (const auto& c : v)
        s += std::norm(c);
    return std::sqrt(s);
}

inline constexpr int expm_term_cap = 200;

} // namespace detail

/// e^{zA} v. The interval is cut into s = ceil(||zA||) steps of norm <= 1; on each step the Taylor series
/// of e^{B} w is summed until the Lagrange remainder ||B||^{k+1}/(k+1)! e^{||B||} ||w|| is below tol/s.
/// For skew-Hermitian zA local errors do not grow, and norm preservation is asserted to 1e-12.
inline expm_result<fock_vector<cplx>> expm_apply(const fock_operator<cplx>& a, cplx z, const fock_vector<cplx>& v,
                                                 double tol = 1e-14)
{
    if (!(tol > 0.0))
        throw domain_error("expm_apply: tol must be positive");
    if (v.dim() != a.dim())
        throw dimension_error("expm_apply: vector and operator dimensions differ");
    if (!std::isfinite(std::abs(z)))
        throw domain_error("expm_apply: z is not finite");
    const matrix<cplx> b = z * a.entries;
    const double nb = detail::spectral_norm_bound(b);
    if (!std::isfinite(nb))
        throw domain_error("expm_apply: ||zA|| is not finite");
    const bool unitary = detail::is_skew_hermitian(b);
    const int steps = std::max(1, static_cast<int>(std::ceil(nb)));
    const matrix<cplx> bs = (1.0 / steps) * b;
    const double ns = nb / steps;
    // An error made at step j is amplified by at most e^{||B|| (s - j) / s} afterwards.
    const double growth = unitary ? 1.0 : std::exp(nb);

    expm_result<fock_vector<cplx>> r{v, v.dim(), 0, 0.0};
    std::vector<cplx> w = v.coeffs;
    for (int j = 0; j < steps; ++j)
    {
        const double wn = detail::vec_norm(w);
        std::vector<cplx> acc = w, term = w;
        double rem = 0.0;
        int k = 0;
        for (;;)
        {
            ++k;
            if (k > detail::expm_term_cap)
                throw convergence_error("expm_apply: tolerance unreachable within the term cap");
            term = bs.apply(term);
            for (auto& c : term)
                c /= static_cast<double>(k);
            for (std::size_t i = 0; i < acc.size(); ++i)
                acc[i] += term[i];
            // remainder after the degree-k polynomial: ns^{k+1}/(k+1)! e^{ns} ||w||
            rem = std::exp((k + 1) * std::log(std::max(ns, 1e-300)) - std::lgamma(k + 2.0) + ns) * wn;
            if (rem <= tol / steps || ns == 0.0)
                break;
        }
        r.series_terms += k;
        r.residual_bound += growth * (ns == 0.0 ? 0.0 : rem);
        w = std::move(acc);
    }
    r.value.coeffs = std::move(w);
    if (unitary)
    {
        const double n0 = detail::vec_norm(v.coeffs), n1 = detail::vec_norm(r.value.coeffs);
        if (std::fabs(n1 - n0) > 1e-12 * std::max(1.0, n0))
            throw numerical_error("expm_apply: norm not preserved by a unitary evolution");
    }
    return r;
}

/// e^{zA} by scaling and squaring with a Taylor core: B = zA / 2^s with ||B|| <= 1/2.
/// Squaring X_j -> X_j^2 with exact value Y_j gives E_{j+1} <= 2 ||Y_j|| E_j + E_j^2, where ||Y_j|| = 1 for
/// skew-Hermitian zA and <= e^{2^j ||B||} otherwise; the core tolerance is chosen so that E_s <= tol.
inline expm_result<matrix<cplx>> expm(const fock_operator<cplx>& a, cplx z, double tol = 1e-14)
{
    if (!(tol > 0.0))
        throw domain_error("expm: tol must be positive");
    if (!std::isfinite(std::abs(z)))
        throw domain_error("expm: z is not finite");
    const matrix<cplx> b0 = z * a.entries;
    const double nb = detail::spectral_norm_bound(b0);
    if (!std::isfinite(nb))
        throw domain_error("expm: ||zA|| is not finite");
    const bool unitary = detail::is_skew_hermitian(b0);
    int s = 0;
    while (std::ldexp(nb, -s) > 0.5)
        ++s;
    const matrix<cplx> b = std::ldexp(1.0, -s) * b0;
    const double ns = std::ldexp(nb, -s);
    const std::size_t n = a.dim();

    auto propagate = [&](double e0) {
        double e = e0, nj = ns;
        for (int j = 0; j < s; ++j)
        {
            e = 2.0 * (unitary ? 1.0 : std::exp(nj)) * e + e * e;
            nj *= 2.0;
        }
        return e;
    };
    // log of the linear amplification prod_j 2 ||Y_j||
    const double log_gain = s * std::log(2.0) + (unitary ? 0.0 : ns * (std::ldexp(1.0, s) - 1.0));
    const double core_tol = std::exp(std::log(tol / 2.0) - log_gain);

    matrix<cplx> acc = matrix<cplx>::identity(n), term = acc;
    int k = 0;
    double err = 0.0;
    for (;;)
    {
        ++k;
        if (k > detail::expm_term_cap)
            throw convergence_error("expm: tolerance unreachable within the term cap");
        term = term * b;
        term *= cplx(1.0 / k);
        acc += term;
        err = ns == 0.0 ? 0.0 : std::exp((k + 1) * std::log(ns) - std::lgamma(k + 2.0) + ns);
        if (err <= core_tol)
            break;
    }
    for (int j = 0; j < s; ++j)
        acc = acc * acc;
    const double e = propagate(err);
    if (unitary)
    {
        const double d = max_abs_diff(acc.adjoint() * acc, matrix<cplx>::identity(n));
        if (d > 1e-12)
            throw numerical_error("expm: result of a skew-Hermitian exponent is not unitary (defect " +
                                  std::to_string(d) + ")");
    }
    return {std::move(acc), n, k, e};
}

/// Smallest N >= k + 2 such that the N-truncated e^{itP} (or e^{itX}) evolution of Phi_k differs from
/// the infinite one by < tol in norm. By Duhamel the defect is at most |t| sup_s (|c_{N-1}(s)| + |c_N(s)|),
/// c_l(s) the exact amplitudes, and |c_l(s)| <= B_l = sum_{m <= l ^ k} |t|^{l+k-2m}/(l+k-2m)! e^{t^2}(1 + t^2/2).
/// The sum over all l >= N-1 (counted three times) keeps the bound valid for either generator.
inline std::size_t truncation_level(double t, std::size_t k, double tol)
{
    if (!(tol > 0.0))
        throw domain_error("truncation_level: tol must be positive");
    if (t == 0.0)
        return k + 2;
    const double at = std::fabs(t);
    auto amp = [&](std::size_t l) {
        double s = 0.0;
        for (std::size_t m = 0; m <= std::min(l, k); ++m)
            s += coefficient_bound(at, static_cast<int>(l + k - 2 * m));
        return s;
    };
    auto tail = [&](std::size_t from) {
        double s = 0.0;
        for (std::size_t l = from;; ++l)
        {
            const double b = amp(l);
            s += b;
            // amp decays at least geometrically with ratio |t|/(l-k+1) once l > k + 2|t|
            if (l > k + 2 * at + 2 && b <= 1e-30 * s)
                break;
            if (l > from + 10000)
                break;
        }
        return s;
    };
    for (std::size_t n = k + 2;; ++n)
        if (3.0 * at * tail(n - 1) < tol)
            return n;
}

/// Self-consistency variant for generators without a closed-form bound: starting at k + 2, doubles N until
/// the interior amplitudes of e^{z G_N} Phi_k and e^{z G_{2N}} Phi_k differ by < tol.
inline std::size_t truncation_level_doubling(const std::function<fock_operator<cplx>(std::size_t)>& generator, cplx z,
                                             std::size_t k, double tol, std::size_t n_max = 512)
{
    if (!(tol > 0.0))
        throw domain_error("truncation_level_doubling: tol must be positive");
    std::size_t n = k + 2;
    auto run = [&](std::size_t dim) {
        return expm_apply(generator(dim), z, fock_vector<cplx>::basis(dim, k), tol * 1e-2).value;
    };
    auto cur = run(n);
    while (2 * n <= n_max)
    {
        const auto next = run(2 * n);
        double d = 0.0;
        for (std::size_t l = 0; l < n; ++l)
            d = std::max(d, std::abs(cur.coeffs[l] - next.coeffs[l]));
        for (std::size_t l = n; l < 2 * n; ++l)
            d = std::max(d, std::abs(next.coeffs[l]));
        if (d < tol)
            return n;
        n *= 2;
        cur = next;
    }
    throw truncation_error("truncation_level_doubling: no stable level up to N = " + std::to_string(n_max));
}

} // namespace semicircle

#endif
