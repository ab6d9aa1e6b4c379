#include <gtest/gtest.h>

#include <random>

#include "semicircle/evolution.hpp"
#include "semicircle/fock.hpp"
#include "semicircle/hilbert.hpp"
#include "support.hpp"

using namespace semicircle;

namespace
{

cheb_series basis_series(std::size_t n)
{
    cheb_series f;
    f.coeffs.assign(n + 1, cplx{});
    f.coeffs[n] = 1.0;
    return f;
}

cplx eval_t(const t_series& g, double x)
{
    cplx s = 0.0;
    for (std::size_t j = 0; j < g.coeffs.size(); ++j)
        s += g.coeffs[j] * t_cheb(static_cast<int>(j), x);
    return s;
}

std::vector<cplx> matrix_action(const fock_operator<cplx>& a, const cheb_series& f)
{
    return a.apply(fock_vector<cplx>(resized(f, a.dim()).coeffs)).coeffs;
}

} // namespace

TEST(HilbertSpectral, Examples)
{
    const auto g0 = hilbert_mu_spectral(basis_series(0));
    ASSERT_EQ(g0.coeffs.size(), 2u);
    EXPECT_EQ(g0.coeffs[0], cplx{});
    EXPECT_EQ(g0.coeffs[1], cplx(1.0));
    const auto g3 = hilbert_mu_spectral(basis_series(3));
    for (std::size_t j = 0; j < g3.coeffs.size(); ++j)
        EXPECT_EQ(g3.coeffs[j], j == 4 ? cplx(1.0) : cplx{});
    for (const auto& c : hilbert_mu_spectral(cheb_series{{0.0, 0.0}}).coeffs)
        EXPECT_EQ(c, cplx{});
}

TEST(HilbertPV, Examples)
{
    auto phi_n = [](int n) { return [n](double y) { return phi(n, y); }; };
    // 1 = 2 cos(683 pi / 2049) is a node of the default rule, so evaluation there needs another grid
    EXPECT_THROW(hilbert_mu_pv(phi_n(0), 1.0), numerical_error);
    EXPECT_NEAR(hilbert_mu_pv(phi_n(0), 1.0, default_pv_nodes - 1), 1.0, 1e-12);
    EXPECT_NEAR(hilbert_mu_pv(phi_n(2), 0.5), -1.375, 1e-12);
    EXPECT_NEAR(hilbert_mu_pv(phi_n(1), 0.0), -2.0, 1e-12);
    EXPECT_THROW(hilbert_mu_pv(phi_n(1), 2.0), domain_error);
    EXPECT_THROW(hilbert_mu_pv(phi_n(1), 2.0 * std::cos(M_PI / 9.0), 8), numerical_error);
}

TEST(HilbertPV, AgreesWithSpectralPath)
{
    for (int n = 0; n <= 12; ++n)
        for (int j = 0; j < 25; ++j)
        {
            const double x = -1.9 + 3.8 * (j + 0.5) / 25.0;
            const double pv = hilbert_mu_pv([n](double y) { return phi(n, y); }, x);
            EXPECT_NEAR(pv, eval_t(hilbert_mu_spectral(basis_series(n)), x).real(), 1e-6);
            EXPECT_NEAR(pv, t_cheb(n + 1, x), 1e-6);
        }
}

TEST(HilbertPV, ExponentialAgainstModifiedBesselExpansion)
{
    // e^x = sum_n (I_n(2) - I_{n+2}(2)) Phi_n, hence H e^x = sum_n (I_n(2) - I_{n+2}(2)) T_{n+1}
    for (double x : {-1.77, -0.31, 0.52, 1.93})
    {
        double ref = 0.0;
        for (int n = 0; n < 40; ++n)
            ref += (std::cyl_bessel_i(n, 2.0) - std::cyl_bessel_i(n + 2, 2.0)) * t_cheb(n + 1, x);
        EXPECT_NEAR(hilbert_mu_pv([](double y) { return std::exp(y); }, x), ref, 1e-11);
    }
}

TEST(Momentum, BasisAction)
{
    const auto p0 = momentum_apply(basis_series(0));
    EXPECT_EQ(p0.coeffs[0], cplx{});
    EXPECT_EQ(p0.coeffs[1], cplx(0.0, 1.0));
    for (std::size_t n = 1; n < 10; ++n)
    {
        const auto p = momentum_apply(basis_series(n));
        for (std::size_t j = 0; j < p.size(); ++j)
        {
            const cplx expected = j == n + 1 ? cplx(0.0, 1.0) : j + 1 == n ? cplx(0.0, -1.0) : cplx{};
            EXPECT_EQ(p.coeffs[j], expected);
        }
    }
}

TEST(Momentum, MatchesFockMatrixOnRandomSeries)
{
    std::mt19937_64 rng(0);
    const std::size_t dim = 20;
    const auto p = momentum<cplx>(dim);
    const auto x = position<cplx>(dim);
    for (int r = 0; r < 50; ++r)
    {
        const auto f = random_cheb_series(16, rng);
        const auto pm = matrix_action(p, f), xm = matrix_action(x, f);
        const auto ps = resized(momentum_apply(f), dim), xs = resized(position_apply(f), dim);
        const auto ks = resized(kinetic_apply(f), dim);
        const auto km = matrix_action(fock_operator<cplx>{0.5 * (p * p).entries, boundary::truncated}, f);
        for (std::size_t j = 0; j < dim; ++j)
        {
            EXPECT_LT(std::abs(ps.coeffs[j] - pm[j]), 1e-13);
            EXPECT_LT(std::abs(xs.coeffs[j] - xm[j]), 1e-13);
            EXPECT_LT(std::abs(ks.coeffs[j] - km[j]), 1e-12);
        }
    }
}

TEST(Momentum, HermitianOnRandomPairs)
{
    std::mt19937_64 rng(7);
    for (int r = 0; r < 50; ++r)
    {
        const auto f = random_cheb_series(16, rng), g = random_cheb_series(16, rng);
        const auto pf = momentum_apply(f), pg = momentum_apply(g);
        EXPECT_LT(std::abs(inner(resized(f, pg.size()), pg) - inner(pf, resized(g, pf.size()))), 1e-10);
    }
}

TEST(Momentum, PointwiseEqualsITimesTransform)
{
    std::mt19937_64 rng(3);
    cheb_series f = random_cheb_series(9, rng);
    for (auto& c : f.coeffs)
        c = c.real();
    const auto pf = momentum_apply(f);
    for (double x : {-1.41, 0.07, 1.66})
    {
        const double h = hilbert_mu_pv([&](double y) { return f(y).real(); }, x);
        EXPECT_LT(std::abs(pf(x) - cplx(0.0, h)), 1e-11);
    }
}

TEST(Kinetic, ZeroAndVacuum)
{
    for (const auto& c : kinetic_apply(cheb_series{{0.0}}).coeffs)
        EXPECT_EQ(c, cplx{});
    // P^2 Phi_0 = Phi_0 - Phi_2
    const auto k = kinetic_apply(basis_series(0));
    EXPECT_EQ(k.coeffs[0], cplx(0.5));
    EXPECT_EQ(k.coeffs[1], cplx{});
    EXPECT_EQ(k.coeffs[2], cplx(-0.5));
}

TEST(Schrodinger, VacuumGivesTwoIRho)
{
    const auto grid = schrodinger_grid();
    const auto vals = schrodinger_commutator_values(0, grid);
    for (std::size_t j = 0; j < grid.size(); j += 7)
    {
        EXPECT_NEAR(vals[j].real(), 0.0, 1e-8);
        EXPECT_NEAR(vals[j].imag(), 2.0 * rho_weight(grid[j]), 1e-8);
    }
}

TEST(Schrodinger, HigherLevelsVanish)
{
    for (int n : {1, 3, 6})
    {
        const auto r = schrodinger_commutator_check(n);
        EXPECT_TRUE(r.passed()) << describe_failure(r);
    }
}

TEST(Schrodinger, DensityNormalized)
{
    EXPECT_EQ(rho_weight(2.5), 0.0);
    EXPECT_NEAR(rho_weight(0.0), std::sqrt(2.0) / std::sqrt(2.0 * M_PI), 1e-15);
    const auto r = schrodinger_commutator_check(0);
    EXPECT_TRUE(r.passed()) << describe_failure(r);
}

TEST(Schrodinger, GridAvoidsNodes)
{
    const auto grid = schrodinger_grid();
    const auto nodes = gauss_u_rule(default_pv_nodes).nodes;
    double closest = 1.0;
    for (double x : grid)
        for (double y : nodes)
            closest = std::min(closest, std::fabs(x - y));
    EXPECT_GT(closest, 1e-9);
}

TEST(Kapteyn, ZeroTime)
{
    for (double th : {0.3, 1.2, 2.9})
    {
        EXPECT_EQ(kapteyn_sum_sin(0.0, th), 0.0);
        EXPECT_EQ(kapteyn_sum_cos(0.0, th), 0.0);
        EXPECT_NEAR(kapteyn_sin_pv(0.0, th), 0.0, 1e-14);
        EXPECT_NEAR(kapteyn_cos_pv(0.0, th), 0.0, 1e-14);
    }
}

TEST(Kapteyn, SeriesMatchStandardLibraryBessel)
{
    for (double t : {0.5, 2.0, 4.0})
        for (double th : {0.4, 1.9})
        {
            double s = 0.0, c = 0.0;
            for (int m = 1; m < 80; ++m)
            {
                const double j = (m % 2 ? -1.0 : 1.0) * std::cyl_bessel_j(m, 2.0 * t);
                s += j * std::sin(m * th);
                c += j * std::cos(m * th);
            }
            EXPECT_NEAR(kapteyn_sum_sin(t, th), s, 1e-14);
            EXPECT_NEAR(kapteyn_sum_cos(t, th), c, 1e-14);
        }
}

TEST(Kapteyn, SeriesEqualsPrincipalValueForm)
{
    EXPECT_NEAR(kapteyn_sum_sin(1.0, M_PI / 3.0), kapteyn_sin_pv(1.0, M_PI / 3.0), 1e-6);
    std::vector<double> thetas;
    for (int j = 1; j < 12; ++j)
        thetas.push_back(j * M_PI / 12.0 + 0.01);
    const auto r = kapteyn_checks({0.25, 0.5, 1.0, 2.0, 4.0, 7.0}, thetas, 1e-10);
    EXPECT_TRUE(r.passed()) << describe_failure(r);
    EXPECT_THROW(kapteyn_sum_sin(1.0, 0.0), domain_error);
    EXPECT_THROW(kapteyn_cos_pv(9.0, 1.0), domain_error);
}

TEST(EvolvedVacuum, ClosedFormMatchesSeries)
{
    for (double x : {-1.9, -0.7, 0.0, 0.4, 1.3})
        EXPECT_NEAR(std::abs(evolved_vacuum_closed_form(0.0, x) - 1.0), 0.0, 1e-14);
    for (double t : {0.5, 1.0, 2.0, 3.5})
    {
        const auto s0 = evolve_P(0, t, 60), s1 = evolve_P(1, t, 60);
        for (double x : {-1.9, -0.7, 0.0, 0.4, 1.3})
        {
            EXPECT_LT(std::abs(evolved_vacuum_closed_form(t, x) - s0.at(x)), 1e-10) << t << ' ' << x;
            EXPECT_LT(std::abs(evolved_phi1_closed_form(t, x) - s1.at(x)), 1e-10) << t << ' ' << x;
        }
    }
    EXPECT_THROW(evolved_vacuum_closed_form(1.0, 2.0), domain_error);
}

TEST(EvolvedVacuum, SeriesAtOrigin)
{
    double ref = 0.0;
    for (int l = 0; l < 40; ++l)
        ref += (l % 2 ? -1.0 : 1.0) * (l + 1) * std::cyl_bessel_j(l + 1, 1.0) / 0.5 * phi(l, 0.0);
    EXPECT_NEAR(evolved_vacuum_closed_form(0.5, 0.0).real(), ref, 1e-12);
}

TEST(HilbertSuite, Passes)
{
    std::mt19937_64 rng(0);
    const auto r = hilbert_checks(rng);
    EXPECT_TRUE(r.passed()) << describe_failure(r);
}
