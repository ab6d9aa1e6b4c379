#ifndef SEMICIRCLE_VERIFY_HPP
#define SEMICIRCLE_VERIFY_HPP

// Every invariant suite of the library in one report.

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "combinatorics.hpp"
#include "evolution.hpp"
#include "fock.hpp"
#include "hilbert.hpp"
#include "oracle.hpp"
#include "orthopoly.hpp"
#include "report.hpp"
#include "specfun.hpp"

namespace semicircle
{

inline const std::vector<double>& evolution_times()
{
    static const std::vector<double> ts{0.25, 0.5, 1.0, 2.0, 4.0};
    return ts;
}

/// Three-term recurrence, Jacobi-Anger at theta = 0 and the Neumann normalization.
inline check_report specfun_checks()
{
    check_report report;
    auto& rec = report.add("specfun", "2n J_n(x)/x = J_{n+1}(x) + J_{n-1}(x)", 1e-12);
    for (int j = 1; j <= 40; ++j)
    {
        const double x = 0.2 * j;
        for (int n = 1; n <= 30; ++n)
            check_report::observe(rec,
                                  std::fabs(2.0 * n * bessel_j_value(n, x) / x - bessel_j_value(n + 1, x) -
                                            bessel_j_value(n - 1, x)),
                                  "n=" + std::to_string(n) + " x=" + std::to_string(x));
    }
    auto& ja = report.add("specfun", "J_0(2t) + 2 sum i^m J_m(2t) = e^{2it}", 1e-10);
    for (int j = 0; j <= 40; ++j)
    {
        const double t = -4.0 + 0.2 * j;
        cplx s = bessel_j_value(0, 2.0 * t);
        const cplx i(0.0, 1.0);
        cplx ip = 1.0;
        for (int m = 1; m <= bessel_tail_index(t, 1e-17); ++m)
        {
            ip *= i;
            s += 2.0 * ip * bessel_j_value(m, 2.0 * t);
        }
        check_report::observe(ja, std::abs(s - std::exp(2.0 * i * t)), "t=" + std::to_string(t));
    }
    auto& nm = report.add("specfun", "J_0(x)^2 + 2 sum J_m(x)^2 = 1", 1e-10);
    for (int j = 0; j <= 32; ++j)
    {
        const double x = -8.0 + 0.5 * j;
        double s = std::pow(bessel_j_value(0, x), 2);
        for (int m = 1; m <= bessel_tail_index(x / 2.0, 1e-17); ++m)
            s += 2.0 * std::pow(bessel_j_value(m, x), 2);
        check_report::observe(nm, std::fabs(s - 1.0), "x=" + std::to_string(x));
    }
    auto& kum = report.add("specfun", "1F1(1; 2; z) = (e^z - 1)/z", 1e-13);
    for (const cplx z : {cplx(1.0, 0.0), cplx(-3.0, 0.5), cplx(0.0, 4.0), cplx(2.0, -2.0)})
        check_report::observe(kum, std::abs(hyp1f1(1.0, 2.0, z).value - (std::exp(z) - 1.0) / z) / std::abs((std::exp(z) - 1.0) / z),
                              "z=" + std::to_string(z.real()) + "+" + std::to_string(z.imag()) + "i");
    return report;
}

/// Coherent kernel and the Bernoulli characteristic function of the harmonic oscillator.
inline check_report fock_state_checks()
{
    check_report report;
    auto& ck = report.add("fock", "sum_{n<N} (conj(u) v)^n within tail bound of 1/(1 - conj(u) v)", 0.0);
    for (const auto& [u, v] : std::vector<std::pair<cplx, cplx>>{{0.0, 0.5}, {0.5, 0.5}, {cplx(0.0, 0.3), 0.4},
                                                                  {cplx(0.6, -0.2), cplx(-0.3, 0.7)}})
    {
        const auto tr = coherent_kernel_truncated(u, v, 200);
        const double excess = std::abs(tr.value - coherent_kernel(u, v)) - tr.tail_bound - 1e-15;
        check_report::observe(ck, std::max(0.0, excess), "u=" + std::to_string(u.real()));
    }
    auto& hc = report.add("fock", "Bernoulli char = <xi, e^{itH1} xi>", 1e-14);
    for (double p : {0.0, 0.25, 0.5, 1.0})
        for (double t : {0.0, 0.7, 2.0, -3.1})
            for (double w : {1.0, 0.5})
                check_report::observe(hc,
                                      std::abs(harmonic_char(t, p, w) - harmonic_char_diagonal(bernoulli_state(p, 8), t, w)),
                                      "p=" + std::to_string(p) + " t=" + std::to_string(t));
    return report;
}

inline check_report oracle_checks(std::mt19937_64& rng)
{
    check_report report;
    std::normal_distribution<double> g(0.0, 1.0);
    auto random_vec = [&](std::size_t n) {
        fock_vector<cplx> v(n);
        for (auto& c : v.coeffs)
            c = {g(rng), g(rng)};
        return v;
    };
    const std::size_t n = 48;
    const auto p = momentum<cplx>(n);

    auto& un = report.add("oracle", "||e^{itP_N} v|| = ||v||", 1e-12);
    auto& gp = report.add("oracle", "e^{itP}e^{isP} v = e^{i(t+s)P} v", 1e-10);
    for (int r = 0; r < 10; ++r)
    {
        const auto v = random_vec(n);
        const double t = 4.0 * std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        const double s = 2.0 * std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
        const auto a = expm_apply(p, cplx(0.0, t), v).value;
        check_report::observe(un, std::fabs(std::sqrt(a.norm2()) - std::sqrt(v.norm2())) / std::sqrt(v.norm2()),
                              "t=" + std::to_string(t));
        const auto b = expm_apply(p, cplx(0.0, s), a).value;
        const auto c = expm_apply(p, cplx(0.0, t + s), v).value;
        double d = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            d = std::max(d, std::abs(b.coeffs[k] - c.coeffs[k]));
        check_report::observe(gp, d, "t=" + std::to_string(t) + " s=" + std::to_string(s));
    }

    auto& dg = report.add("oracle", "e^{it Lambda} v = (e^{itn} v_n)", 1e-13);
    {
        const auto lam = number_operator<cplx>(n);
        const auto v = random_vec(n);
        const double t = 0.7;
        const auto a = expm_apply(lam, cplx(0.0, t), v).value;
        double d = 0.0;
        for (std::size_t k = 0; k < n; ++k)
            d = std::max(d, std::abs(a.coeffs[k] - std::exp(cplx(0.0, t * k)) * v.coeffs[k]));
        check_report::observe(dg, d, "t=0.7");
    }

    auto& mx = report.add("oracle", "scaling-and-squaring e^{zA} = columnwise e^{zA} e_k", 1e-12);
    {
        const auto x = position<cplx>(24);
        const auto u = expm(x, cplx(0.0, 2.5)).value;
        double d = 0.0;
        for (std::size_t k = 0; k < 24; ++k)
        {
            const auto col = expm_apply(x, cplx(0.0, 2.5), fock_vector<cplx>::basis(24, k)).value;
            for (std::size_t l = 0; l < 24; ++l)
                d = std::max(d, std::abs(col.coeffs[l] - u(l, k)));
        }
        check_report::observe(mx, d, "X_24, z = 2.5i");
    }

    auto& rf = report.add("oracle", "doubling N moves interior amplitudes by < tol", 0.0);
    for (double t : evolution_times())
        for (std::size_t k : {0u, 8u})
        {
            const double tol = 1e-10;
            const std::size_t nn = truncation_level(t, k, tol);
            const auto a = expm_apply(momentum<cplx>(nn), cplx(0.0, t), fock_vector<cplx>::basis(nn, k));
            const auto b = expm_apply(momentum<cplx>(2 * nn), cplx(0.0, t), fock_vector<cplx>::basis(2 * nn, k));
            double d = 0.0;
            for (std::size_t l = 0; l < nn; ++l)
                d = std::max(d, std::abs(a.value.coeffs[l] - b.value.coeffs[l]));
            check_report::observe(rf, std::max(0.0, d - tol - a.residual_bound - b.residual_bound),
                                  "t=" + std::to_string(t) + " k=" + std::to_string(k));
        }
    return report;
}

/// Closed-form matrix elements vs the matrix-exponential oracle for k, l <= 12, with
/// N = truncation_level(t, k, 1e-10) (doubling self-consistency for P^2).
inline check_report evolution_oracle_checks(double tol_linear = 1e-8, double tol_kinetic = 1e-7)
{
    check_report report;
    auto& ep = report.add("evolution", "<Phi_l, e^{itP} Phi_k> = oracle", tol_linear);
    auto& ex = report.add("evolution", "<Phi_l, e^{itX} Phi_k> = oracle", tol_linear);
    auto& e2 = report.add("evolution", "<Phi_l, e^{itP^2} Phi_0> = oracle", tol_kinetic);
    for (double t : evolution_times())
    {
        for (unsigned k = 0; k <= 12; ++k)
        {
            const std::size_t n = truncation_level(t, k, 1e-10);
            const auto up = expm_apply(momentum<cplx>(n), cplx(0.0, t), fock_vector<cplx>::basis(n, k)).value;
            const auto ux = expm_apply(position<cplx>(n), cplx(0.0, t), fock_vector<cplx>::basis(n, k)).value;
            for (unsigned l = 0; l <= 12; ++l)
            {
                const std::string where = "t=" + std::to_string(t) + " l=" + std::to_string(l) + " k=" + std::to_string(k);
                // levels >= N do not exist in the truncation; their exact amplitudes are below the bound
                const cplx op = l < n ? up.coeffs[l] : cplx{}, ox = l < n ? ux.coeffs[l] : cplx{};
                check_report::observe(ep, std::abs(op - matrix_element_P(l, k, t)), where);
                check_report::observe(ex, std::abs(ox - matrix_element_X(l, k, t)), where);
            }
        }
        auto kinetic = [](std::size_t d) {
            const auto p = momentum<cplx>(d);
            return p * p;
        };
        const std::size_t n = truncation_level_doubling(kinetic, cplx(0.0, t), 0, 1e-10);
        const auto u = expm_apply(kinetic(n), cplx(0.0, t), fock_vector<cplx>::basis(n, 0)).value;
        for (unsigned l = 0; l <= 12; ++l)
            check_report::observe(e2, std::abs((l < n ? u.coeffs[l] : cplx{}) - matrix_element_P2(l, 0, t)),
                                  "t=" + std::to_string(t) + " l=" + std::to_string(l));
    }
    return report;
}

/// Norm defect of every closed-form evolution, and U(t)U(s) = U(t+s) on the 13 x 13 block.
inline check_report evolution_group_checks(double tol = 1e-8)
{
    check_report report;
    auto& un = report.add("evolution", "sum_l |<Phi_l, U Phi_k>|^2 = 1", tol);
    for (double t : evolution_times())
    {
        for (unsigned k = 0; k <= 12; ++k)
        {
            const unsigned l_max = static_cast<unsigned>(bessel_tail_index(t, 1e-12)) + k;
            const std::string where = "t=" + std::to_string(t) + " k=" + std::to_string(k);
            check_report::observe(un, evolve_P(k, t, l_max).norm_defect, "P " + where);
            check_report::observe(un, evolve_X(k, t, l_max).norm_defect, "X " + where);
        }
        check_report::observe(un, evolve_P2_vacuum(t, kinetic_level(t, 0, 1e-12)).norm_defect,
                              "P2 t=" + std::to_string(t));
    }

    auto& gl = report.add("evolution", "U(t) U(s) = U(t+s)", tol);
    const unsigned block = 12;
    for (double t : {0.3, 0.7})
        for (double s : {0.3, 0.7})
            for (auto kind : {coeff_kind::momentum_I, coeff_kind::position_I, coeff_kind::kinetic_I2})
            {
                const unsigned inner_top =
                    kind == coeff_kind::kinetic_I2 ? kinetic_level(std::max(t, s), block, 1e-14)
                                                   : static_cast<unsigned>(bessel_tail_index(std::max(t, s), 1e-14)) + 2 * block;
                double d = 0.0;
                for (unsigned l = 0; l <= block; ++l)
                    for (unsigned k = 0; k <= block; ++k)
                    {
                        cplx acc = 0.0;
                        for (unsigned j = 0; j <= inner_top; ++j)
                            acc += matrix_element(kind, l, j, t) * matrix_element(kind, j, k, s);
                        d = std::max(d, std::abs(acc - matrix_element(kind, l, k, t + s)));
                    }
                check_report::observe(gl, d,
                                      std::string(kind == coeff_kind::momentum_I   ? "P"
                                                  : kind == coeff_kind::position_I ? "X"
                                                                                   : "P2") +
                                          " t=" + std::to_string(t) + " s=" + std::to_string(s));
            }
    return report;
}

/// Series vs closed form, symmetry and parity relations, and values at t = 0.
inline check_report coefficient_checks(double tol = 1e-11)
{
    check_report report;
    auto& pi = report.add("evolution", "I_{m,n}: |Theta| series = Bessel form", tol);
    auto& px = report.add("evolution", "e^{itX} coefficients: |Theta| series = Bessel form", tol);
    auto& p2 = report.add("evolution", "I2_{m,n}: |Theta| series = 1F1 form", tol);
    for (double t : {-2.5, -1.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0, 4.0})
        for (unsigned m = 0; m <= 16; ++m)
            for (unsigned n = 0; m + n <= 16; ++n)
            {
                const std::string where = "t=" + std::to_string(t) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
                check_report::observe(pi, std::abs(coeff_I_closed(m, n, t) - coeff_I_series(m, n, t)), where);
                check_report::observe(px, std::abs(coeff_X_closed(m, n, t) - coeff_X_series(m, n, t)), where);
                check_report::observe(p2, std::abs(coeff_I2_closed(m, n, t) - coeff_I2_series(m, n, t)), where);
            }

    auto& sym = report.add("evolution", "I_{m,n} = (-1)^m I_{0,m+n} = (-1)^n I_{m+n,0}", 1e-15);
    auto& par = report.add("evolution", "I2_{m,n} = 0 for m+n odd; I2_{m,n} = (-1)^m I2_{0,m+n}", 1e-15);
    for (double t : {0.4, 1.3, 3.0})
        for (unsigned m = 0; m <= 20; ++m)
            for (unsigned n = 0; m + n <= 20; ++n)
            {
                const std::string where = "t=" + std::to_string(t) + " m=" + std::to_string(m) + " n=" + std::to_string(n);
                const cplx v = coeff_I_series(m, n, t);
                const double sm = m % 2 ? -1.0 : 1.0, sn = n % 2 ? -1.0 : 1.0;
                const double scale = std::max(1e-300, std::abs(v));
                check_report::observe(sym, std::abs(v - sm * coeff_I_series(0, m + n, t)) / scale, where);
                check_report::observe(sym, std::abs(v - sn * coeff_I_series(m + n, 0, t)) / scale, where);
                if (m + n <= 16)
                {
                    const cplx w = coeff_I2_series(m, n, t);
                    if ((m + n) % 2)
                        check_report::observe(par, std::abs(w), where);
                    else
                        check_report::observe(par, std::abs(w - sm * coeff_I2_series(0, m + n, t)) / std::abs(w), where);
                }
            }

    auto& zero = report.add("evolution", "coefficients at t = 0 equal delta_{m+n,0}", 0.0);
    for (unsigned m = 0; m <= 6; ++m)
        for (unsigned n = 0; n <= 6; ++n)
        {
            const double d = (m + n == 0) ? 1.0 : 0.0;
            const std::string where = "m=" + std::to_string(m) + " n=" + std::to_string(n);
            for (auto path : {coefficient_path::closed_form, coefficient_path::series})
            {
                check_report::observe(zero, std::abs(coeff_value(coeff_kind::momentum_I, m, n, 0.0, path) - d), where);
                check_report::observe(zero, std::abs(coeff_value(coeff_kind::kinetic_I2, m, n, 0.0, path) - d), where);
            }
        }
    return report;
}

/// Vacuum and level-l characteristic functions.
inline check_report char_checks()
{
    check_report report;
    auto& cat = report.add("evolution", "J_1(2t)/t = sum (-t^2)^p C_p/(2p)!", 1e-12);
    for (int j = 0; j <= 40; ++j)
    {
        const double t = 0.2 * j;
        check_report::observe(cat, std::abs(char_function(generator_kind::P, t) - char_function_catalan(t)),
                              "t=" + std::to_string(t));
    }
    auto& quad = report.add("evolution", "J_1(2t)/t = int e^{itx} mu(dx)", 1e-10);
    const auto rule = gauss_u_rule(64);
    for (int j = 0; j <= 20; ++j)
    {
        const double t = 0.2 * j;
        cplx s = 0.0;
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            s += rule.weights[k] * std::exp(cplx(0.0, t * rule.nodes[k]));
        check_report::observe(quad, std::abs(char_function(generator_kind::P, t) - s), "t=" + std::to_string(t));
        check_report::observe(quad, std::abs(char_function(generator_kind::X, t) - s), "X t=" + std::to_string(t));
    }
    auto& st = report.add("evolution", "sum_{m<=l} I_{m,m}(t) = <Phi_l, e^{itP} Phi_l>", 1e-10);
    for (double t : {0.5, 1.3, 3.0})
    {
        const std::size_t n = truncation_level(t, 8, 1e-12);
        for (unsigned l = 0; l <= 8; ++l)
        {
            const auto u = expm_apply(momentum<cplx>(n), cplx(0.0, t), fock_vector<cplx>::basis(n, l)).value;
            check_report::observe(st, std::abs(state_char_function(l, t) - u.coeffs[l]),
                                  "t=" + std::to_string(t) + " l=" + std::to_string(l));
        }
    }
    return report;
}

/// Closed-form pointwise evolutions against the level series sum_l <Phi_l, U Phi_k> Phi_l(x).
inline check_report pointwise_checks(double tol = 1e-10, double tol_pv = 1e-6)
{
    check_report report;
    auto& xv = report.add("evolution", "(e^{itX} Phi_0)(x) = e^{itx}", tol);
    auto& pk = report.add("evolution", "(e^{itP} Phi_k)(x) Bessel/T display = level series", tol);
    auto& xk = report.add("evolution", "(e^{itX} Phi_k)(x) Bessel/T display = level series", tol);
    auto& v0 = report.add("hilbert", "(e^{itP} Phi_0)(x) p.v. form = level series", tol_pv);
    auto& v1 = report.add("hilbert", "(e^{itP} Phi_1)(x) p.v. form = level series", tol_pv);
    for (double t : {0.5, 1.0, 2.0})
    {
        const unsigned l_max = static_cast<unsigned>(bessel_tail_index(t, 1e-16)) + 8;
        std::vector<evolved_state> sp, sx;
        for (unsigned k = 0; k <= 5; ++k)
        {
            sp.push_back(evolve_P(k, t, l_max));
            sx.push_back(evolve_X(k, t, l_max));
        }
        for (int j = 0; j < 15; ++j)
        {
            const double x = -1.9 + 3.8 * (j + 0.5) / 15.0;
            const std::string where = "t=" + std::to_string(t) + " x=" + std::to_string(x);
            check_report::observe(xv, std::abs(evolve_X_vacuum_pointwise(t, x) - sx[0].at(x)), where);
            for (unsigned k = 0; k <= 5; ++k)
            {
                check_report::observe(pk, std::abs(evolve_P_pointwise(k, t, x) - sp[k].at(x)), where);
                check_report::observe(xk, std::abs(evolve_X_pointwise(k, t, x) - sx[k].at(x)), where);
            }
            check_report::observe(v0, std::abs(evolved_vacuum_closed_form(t, x) - sp[0].at(x)), where);
            check_report::observe(v1, std::abs(evolved_phi1_closed_form(t, x) - sp[1].at(x)), where);
        }
    }
    return report;
}

/// a+_t - a+ on the 8 x 8 block against U a+ U^* - a+ with U from the oracle.
inline check_report heisenberg_checks(double tol = 1e-6)
{
    check_report report;
    auto conj_oracle = [](const fock_operator<cplx>& g, double t) {
        const std::size_t n = 64;
        const auto u = expm(g, cplx(0.0, t)).value;
        const auto ap = creation<cplx>(n).entries;
        return (u * ap * u.adjoint() - ap).block(0, 0, 8, 8);
    };
    auto& hp = report.add("evolution", "a+_t - a+ (generator P) = oracle conjugation", tol);
    for (double t : {0.3, 0.9})
        check_report::observe(hp, max_abs_diff(heisenberg_aplus_P_table(t, 7, 7), conj_oracle(momentum<cplx>(64), t)),
                              "t=" + std::to_string(t));
    auto& hs = report.add("evolution", "a+_t - a+ is symmetric in (m, n) (generator P)", 0.0);
    {
        const auto h = heisenberg_aplus_P_table(0.9, 7, 7);
        double d = 0.0;
        for (std::size_t i = 0; i < 8; ++i)
            for (std::size_t j = 0; j < 8; ++j)
                d = std::max(d, std::abs(h(i, j) - h(j, i)));
        check_report::observe(hs, d, "t=0.9");
    }
    auto& h2 = report.add("evolution", "a+_t - a+ (generator P^2) = oracle conjugation", tol);
    auto& h2s = report.add("evolution", "a+_t - a+ (generator P^2): term-wise series = quadrature", 1e-12);
    {
        const auto p = momentum<cplx>(64);
        const auto q = heisenberg_aplus_P2(0.25, 7, 7);
        check_report::observe(h2, max_abs_diff(q, conj_oracle(p * p, 0.25)), "t=0.25");
        check_report::observe(h2s, max_abs_diff(q, heisenberg_aplus_P2_series(0.25, 7, 7)), "t=0.25");
    }
    return report;
}

struct verify_options
{
    double tol = 1e-8; ///< tolerance of the oracle-equivalence, unitarity and group-law checks
    std::uint64_t seed = 0;
};

inline check_report verify_all(const verify_options& opt = {})
{
    std::mt19937_64 rng(opt.seed);
    check_report r;
    r.merge(combinatorics_checks(14));
    r.merge(specfun_checks());
    r.merge(lie_bracket_checks(12, 4, 4));
    r.merge(fock_checks(40));
    r.merge(fock_state_checks());
    r.merge(orthopoly_checks());
    r.merge(hilbert_checks(rng));
    for (int n = 0; n <= 6; ++n)
        r.merge(schrodinger_commutator_check(n));
    r.merge(kapteyn_checks({0.5, 1.0, 2.0, 4.0}, {M_PI / 6, M_PI / 3, M_PI / 2, 2 * M_PI / 3}));
    r.merge(oracle_checks(rng));
    r.merge(coefficient_checks());
    r.merge(char_checks());
    r.merge(evolution_oracle_checks(opt.tol, std::max(opt.tol, 1e-7)));
    r.merge(evolution_group_checks(opt.tol));
    r.merge(pointwise_checks());
    r.merge(heisenberg_checks());
    return r;
}

} // namespace semicircle

#endif
