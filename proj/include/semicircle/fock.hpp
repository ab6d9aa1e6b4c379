#ifndef SEMICIRCLE_FOCK_HPP
#define SEMICIRCLE_FOCK_HPP

// Truncated one-mode interacting Fock space with omega_n = 1 for n >= 1:
// the monic basis Phi_n is orthonormal, a Phi_n = Phi_{n-1}, a+ Phi_n = Phi_{n+1}.
// On an N-dimensional truncation a+ sends the top vector to 0, so identities
// involving a+ hold only on the interior block (indices < N-1).

#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "errors.hpp"
#include "matrix.hpp"
#include "report.hpp"

namespace semicircle
{

using cplx = std::complex<double>;

enum class boundary
{
    exact_interior, ///< no truncation artefact (diagonal operators, annihilation)
    truncated,      ///< the top row/column differs from the infinite-space operator
};

/// Coefficients over Phi_0 .. Phi_{N-1}.
template <typename T>
struct fock_vector
{
    std::vector<T> coeffs;

    fock_vector() = default;
    explicit fock_vector(std::size_t dim) : coeffs(dim, T{}) {}
    explicit fock_vector(std::vector<T> c) : coeffs(std::move(c)) {}

    static fock_vector basis(std::size_t dim, std::size_t n)
    {
        if (n >= dim)
            throw dimension_error("fock_vector::basis: level " + std::to_string(n) + " outside dimension " +
                                  std::to_string(dim));
        fock_vector v(dim);
        v.coeffs[n] = T{1};
        return v;
    }

    std::size_t dim() const { return coeffs.size(); }

    double norm2() const
    {
        double s = 0.0;
        for (const auto& c : coeffs)
        {
            const double a = scalar_traits<T>::abs(c);
            s += a * a;
        }
        return s;
    }
};

template <typename T>
struct fock_operator
{
    matrix<T> entries;
    boundary bnd = boundary::exact_interior;

    std::size_t dim() const { return entries.rows(); }

    fock_operator adjoint() const { return {entries.adjoint(), bnd}; }

    fock_vector<T> apply(const fock_vector<T>& v) const
    {
        return fock_vector<T>(entries.apply(v.coeffs));
    }

    /// Restriction to the rows/columns < N-1, where truncation has no effect.
    matrix<T> interior() const { return entries.block(0, 0, dim() - 1, dim() - 1); }

    friend fock_operator operator*(const fock_operator& a, const fock_operator& b)
    {
        return {a.entries * b.entries, combine(a, b)};
    }
    friend fock_operator operator+(const fock_operator& a, const fock_operator& b)
    {
        return {a.entries + b.entries, combine(a, b)};
    }
    friend fock_operator operator-(const fock_operator& a, const fock_operator& b)
    {
        return {a.entries - b.entries, combine(a, b)};
    }
    friend fock_operator operator*(const T& s, const fock_operator& a) { return {s * a.entries, a.bnd}; }

private:
    static boundary combine(const fock_operator& a, const fock_operator& b)
    {
        if (a.dim() != b.dim())
            throw dimension_error("fock_operator: dimension mismatch " + std::to_string(a.dim()) + " vs " +
                                  std::to_string(b.dim()));
        return (a.bnd == boundary::truncated || b.bnd == boundary::truncated) ? boundary::truncated
                                                                               : boundary::exact_interior;
    }
};

namespace detail
{
inline void require_dim(std::size_t n, std::size_t min, const char* what)
{
    if (n < min)
        throw dimension_error(std::string(what) + ": dimension must be at least " + std::to_string(min));
}
} // namespace detail

/// a: e_n -> e_{n-1}, e_0 -> 0.
template <typename T>
fock_operator<T> annihilation(std::size_t n)
{
    detail::require_dim(n, 2, "annihilation");
    matrix<T> m(n, n);
    for (std::size_t j = 1; j < n; ++j)
        m(j - 1, j) = T{1};
    return {std::move(m), boundary::exact_interior};
}

/// a+: e_n -> e_{n+1}, e_{N-1} -> 0.
template <typename T>
fock_operator<T> creation(std::size_t n)
{
    detail::require_dim(n, 2, "creation");
    matrix<T> m(n, n);
    for (std::size_t j = 0; j + 1 < n; ++j)
        m(j + 1, j) = T{1};
    return {std::move(m), boundary::truncated};
}

/// F_Lambda = diag(F(0), ..., F(N-1)).
template <typename T>
fock_operator<T> number_function(std::size_t n, const std::function<T(std::size_t)>& f)
{
    detail::require_dim(n, 1, "number_function");
    matrix<T> m(n, n);
    for (std::size_t j = 0; j < n; ++j)
        m(j, j) = f(j);
    return {std::move(m), boundary::exact_interior};
}

/// Lambda = diag(0, 1, ..., N-1).
template <typename T>
fock_operator<T> number_operator(std::size_t n)
{
    return number_function<T>(n, [](std::size_t k) { return T(static_cast<long long>(k)); });
}

/// P_{Phi_0} = Phi_0 Phi_0^* = delta_{0, Lambda}.
template <typename T>
fock_operator<T> vacuum_projector(std::size_t n)
{
    return number_function<T>(n, [](std::size_t k) { return k == 0 ? T{1} : T{}; });
}

/// Phi_m Phi_n^*.
template <typename T>
fock_operator<T> rank_one(std::size_t dim, std::size_t m, std::size_t n)
{
    if (m >= dim || n >= dim)
        throw dimension_error("rank_one: level outside dimension");
    matrix<T> r(dim, dim);
    r(m, n) = T{1};
    return {std::move(r), boundary::exact_interior};
}

/// X = a + a+.
template <typename T>
fock_operator<T> position(std::size_t n)
{
    return annihilation<T>(n) + creation<T>(n);
}

/// P = i (a+ - a), the momentum canonically conjugate to X.
template <typename T>
    requires has_imag_unit<T>
fock_operator<T> momentum(std::size_t n)
{
    return scalar_traits<T>::imag_unit() * (creation<T>(n) - annihilation<T>(n));
}

template <typename T>
fock_operator<T> commutator(const fock_operator<T>& a, const fock_operator<T>& b)
{
    return a * b - b * a;
}

template <typename T>
fock_operator<T> power(const fock_operator<T>& a, unsigned k)
{
    fock_operator<T> r{matrix<T>::identity(a.dim()), boundary::exact_interior};
    for (unsigned i = 0; i < k; ++i)
        r = r * a;
    return r;
}

enum class observable
{
    X,
    P,
};

/// <Phi_0, A^n Phi_0> for A = X or P, in exact Gaussian-integer arithmetic.
/// Every entry of A^k e_0 is bounded by the 2^k walks of length k, so n <= 62 cannot overflow.
inline double vacuum_moment(unsigned n, observable which, std::size_t dim)
{
    if (n > 62)
        throw overflow_error("vacuum_moment: order " + std::to_string(n) + " exceeds the 64-bit range (max 62)");
    if (dim <= 2 * static_cast<std::size_t>(n))
        throw truncation_error("vacuum_moment: dimension " + std::to_string(dim) + " must exceed 2n = " +
                               std::to_string(2 * n));
    const auto a = which == observable::X ? position<gauss_int>(dim) : momentum<gauss_int>(dim);
    auto v = fock_vector<gauss_int>::basis(dim, 0);
    for (unsigned k = 0; k < n; ++k)
        v = a.apply(v);
    // P^n has vacuum expectation i^n * (real integer); odd n vanish and even n are real.
    const gauss_int m = v.coeffs[0];
    if (m.im != 0)
        throw numerical_error("vacuum_moment: non-real moment");
    return static_cast<double>(m.re);
}

/// Commutation relations of the *-Lie algebra generated by a and a+, in integer arithmetic on the
/// interior block:
///   [a, P0 a^m] = -P0 a^{m+1},  [a+^m P0, a+] = -a+^{m+1} P0,
///   [a+^m P0, P0 a^n] = Phi_m Phi_n^* - delta_{mn} P0.
/// The diagonal correction in the last relation comes from <Phi_0, a^n a+^m Phi_0> = delta_{mn}.
inline check_report lie_bracket_checks(std::size_t dim, unsigned m_max, unsigned n_max)
{
    if (m_max + n_max + 2 > dim)
        throw dimension_error("lie_bracket_checks: need m_max + n_max + 2 <= N");
    using op = fock_operator<long long>;
    const op a = annihilation<long long>(dim);
    const op ap = creation<long long>(dim);
    const op p0 = vacuum_projector<long long>(dim);

    check_report report;
    auto& basic = report.add("fock", "[a,a+] = P0, [a,P0] = -P0 a, [a+,P0] = a+ P0", 0.0);
    check_report::observe(basic, max_abs_diff(commutator(a, ap).interior(), p0.interior()), "[a,a+]");
    check_report::observe(basic, max_abs_diff(commutator(a, p0).interior(), (-1LL * (p0 * a)).interior()), "[a,P0]");
    check_report::observe(basic, max_abs_diff(commutator(ap, p0).interior(), (ap * p0).interior()), "[a+,P0]");

    auto& left = report.add("fock", "[a, P0 a^m] = -P0 a^{m+1}", 0.0);
    auto& right = report.add("fock", "[a+^m P0, a+] = -a+^{m+1} P0", 0.0);
    for (unsigned m = 0; m <= m_max; ++m)
    {
        const op p0am = p0 * power(a, m);
        check_report::observe(left, max_abs_diff(commutator(a, p0am).interior(), (-1LL * (p0 * power(a, m + 1))).interior()),
                              "m=" + std::to_string(m));
        const op apmp0 = power(ap, m) * p0;
        check_report::observe(right,
                              max_abs_diff(commutator(apmp0, ap).interior(), (-1LL * (power(ap, m + 1) * p0)).interior()),
                              "m=" + std::to_string(m));
    }

    auto& rank = report.add("fock", "[a+^m P0, P0 a^n] = Phi_m Phi_n^* - delta_mn P0", 0.0);
    for (unsigned m = 0; m <= m_max; ++m)
        for (unsigned n = 0; n <= n_max; ++n)
        {
            const op lhs = commutator(op(power(ap, m) * p0), op(p0 * power(a, n)));
            op rhs = rank_one<long long>(dim, m, n);
            if (m == n)
                rhs = rhs - p0;
            check_report::observe(rank, max_abs_diff(lhs.interior(), rhs.interior()),
                                  "m=" + std::to_string(m) + " n=" + std::to_string(n));
        }
    return report;
}

/// Interior-block identities of the free CAP operators, the number-function exchange rules,
/// the finite-N norm of X and the Catalan vacuum moments.
inline check_report fock_checks(std::size_t dim)
{
    detail::require_dim(dim, 4, "fock_checks");
    using iop = fock_operator<long long>;
    using gop = fock_operator<gauss_int>;
    const iop a = annihilation<long long>(dim), ap = creation<long long>(dim);
    const iop p0 = vacuum_projector<long long>(dim);
    const iop one{matrix<long long>::identity(dim), boundary::exact_interior};

    check_report report;
    auto& mt = report.add("fock", "a a+ = 1, a+ a = 1 - P0, [a,a+] = P0 (interior)", 0.0);
    check_report::observe(mt, max_abs_diff((a * ap).interior(), one.interior()), "a a+");
    check_report::observe(mt, max_abs_diff((ap * a).interior(), (one - p0).interior()), "a+ a");
    check_report::observe(mt, max_abs_diff(commutator(a, ap).interior(), p0.interior()), "[a,a+]");

    auto& xp = report.add("fock", "[X,P] = 2i P0 (interior)", 0.0);
    const gop x = position<gauss_int>(dim), p = momentum<gauss_int>(dim);
    const gop target = gauss_int{0, 2} * vacuum_projector<gauss_int>(dim);
    check_report::observe(xp, max_abs_diff(commutator(x, p).interior(), target.interior()), "[X,P]");

    auto& herm = report.add("fock", "X and P Hermitian", 0.0);
    check_report::observe(herm, max_abs_diff(x.adjoint().entries, x.entries), "X");
    check_report::observe(herm, max_abs_diff(p.adjoint().entries, p.entries), "P");

    // F(n) = n^2 + 3n + 1 is an arbitrary non-affine test function.
    auto& fl = report.add("fock", "F_L a+ = a+ F_{L+1}, a F_L = F_{L+1} a (interior)", 0.0);
    auto f = [](std::size_t n) { return static_cast<long long>(n * n + 3 * n + 1); };
    const iop fl0 = number_function<long long>(dim, f);
    const iop fl1 = number_function<long long>(dim, [&](std::size_t n) { return f(n + 1); });
    check_report::observe(fl, max_abs_diff((fl0 * ap).interior(), (ap * fl1).interior()), "F a+");
    check_report::observe(fl, max_abs_diff((a * fl0).interior(), (fl1 * a).interior()), "a F");

    auto& norm = report.add("fock", "||X_N|| = 2 cos(pi/(N+1))", 1e-12);
    {
        const auto eig = tridiagonal_eigenvalues(std::vector<double>(dim, 0.0), std::vector<double>(dim - 1, 1.0));
        const double expected = 2.0 * std::cos(M_PI / (dim + 1.0));
        check_report::observe(norm, std::fabs(std::max(-eig.front(), eig.back()) - expected), "N=" + std::to_string(dim));
    }

    auto& mom = report.add("fock", "<Phi0, X^2n Phi0> = <Phi0, P^2n Phi0> = C_n", 0.0);
    for (unsigned n = 0; 4 * n + 2 < dim; ++n)
    {
        const double c = static_cast<double>(catalan(n));
        check_report::observe(mom, std::fabs(vacuum_moment(2 * n, observable::X, dim) - c), "X n=" + std::to_string(n));
        check_report::observe(mom, std::fabs(vacuum_moment(2 * n, observable::P, dim) - c), "P n=" + std::to_string(n));
        check_report::observe(mom, std::fabs(vacuum_moment(2 * n + 1, observable::P, dim)), "odd n=" + std::to_string(n));
    }
    return report;
}

/// <psi_u, psi_v> = 1 / (1 - conj(u) v) for the coherent vectors psi_z = sum_n z^n Phi_n.
inline cplx coherent_kernel(cplx u, cplx v)
{
    if (!(std::abs(u) < 1.0) || !(std::abs(v) < 1.0))
        throw domain_error("coherent_kernel: |u| and |v| must be < 1");
    return 1.0 / (1.0 - std::conj(u) * v);
}

struct truncated_sum
{
    cplx value;
    double tail_bound = 0.0;
};

/// sum_{n < N} (conj(u) v)^n together with the geometric bound on the omitted tail.
inline truncated_sum coherent_kernel_truncated(cplx u, cplx v, std::size_t n_terms)
{
    if (!(std::abs(u) < 1.0) || !(std::abs(v) < 1.0))
        throw domain_error("coherent_kernel_truncated: |u| and |v| must be < 1");
    const cplx q = std::conj(u) * v;
    cplx sum = 0.0, term = 1.0;
    for (std::size_t n = 0; n < n_terms; ++n)
    {
        sum += term;
        term *= q;
    }
    const double aq = std::abs(q);
    return {sum, std::pow(aq, static_cast<double>(n_terms)) / (1.0 - aq)};
}

/// Characteristic function of the Bernoulli law on {omega1, 2 omega1} with weights (p, 1-p):
/// <xi, e^{itH_1} xi> for the oscillator H_1 = omega_Lambda + omega_{Lambda+1} and |xi_0|^2 = p.
inline cplx harmonic_char(double t, double p_xi, double omega1)
{
    if (!(p_xi >= 0.0 && p_xi <= 1.0))
        throw domain_error("harmonic_char: p_xi must lie in [0, 1]");
    if (!(omega1 > 0.0))
        throw domain_error("harmonic_char: omega1 must be positive");
    const cplx i(0.0, 1.0);
    return p_xi * std::exp(i * t * omega1) + (1.0 - p_xi) * std::exp(2.0 * i * t * omega1);
}

/// Unit vector (sqrt(p), sqrt(1-p), 0, ...).
inline fock_vector<cplx> bernoulli_state(double p_xi, std::size_t dim)
{
    detail::require_dim(dim, 2, "bernoulli_state");
    if (!(p_xi >= 0.0 && p_xi <= 1.0))
        throw domain_error("bernoulli_state: p_xi must lie in [0, 1]");
    fock_vector<cplx> v(dim);
    v.coeffs[0] = std::sqrt(p_xi);
    v.coeffs[1] = std::sqrt(1.0 - p_xi);
    return v;
}

/// <xi, e^{itH_1} xi> by exponentiating the diagonal H_1 = diag(omega_n + omega_{n+1}),
/// omega_0 = 0, omega_n = omega1.
inline cplx harmonic_char_diagonal(const fock_vector<cplx>& xi, double t, double omega1)
{
    const cplx i(0.0, 1.0);
    cplx s = 0.0;
    for (std::size_t n = 0; n < xi.dim(); ++n)
    {
        const double h = (n == 0 ? 0.0 : omega1) + omega1;
        s += std::conj(xi.coeffs[n]) * std::exp(i * t * h) * xi.coeffs[n];
    }
    return s;
}

} // namespace semicircle

#endif
