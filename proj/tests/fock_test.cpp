#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "semicircle/fock.hpp"
#include "semicircle/verify.hpp"
#include "support.hpp"

using namespace semicircle;

namespace
{

Eigen::MatrixXcd to_eigen(const matrix<cplx>& m)
{
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            e(i, j) = m(i, j);
    return e;
}

template <typename T>
bool is_basis(const fock_vector<T>& v, std::size_t n)
{
    for (std::size_t j = 0; j < v.dim(); ++j)
        if (!(v.coeffs[j] == (j == n ? T{1} : T{})))
            return false;
    return true;
}

} // namespace

TEST(Ladder, ShiftActions)
{
    const std::size_t n = 6;
    const auto a = annihilation<long long>(n);
    const auto ap = creation<long long>(n);
    EXPECT_EQ(a.apply(fock_vector<long long>::basis(n, 0)).norm2(), 0.0);
    EXPECT_TRUE(is_basis(ap.apply(fock_vector<long long>::basis(n, 2)), 3));
    EXPECT_EQ(ap.apply(fock_vector<long long>::basis(n, n - 1)).norm2(), 0.0);
    for (std::size_t k = 0; k + 2 <= n; ++k)
        EXPECT_TRUE(is_basis((a * ap).apply(fock_vector<long long>::basis(n, k)), k));
    EXPECT_THROW(fock_vector<long long>::basis(n, n), dimension_error);
}

TEST(Ladder, BoundaryFlags)
{
    EXPECT_EQ(annihilation<double>(4).bnd, boundary::exact_interior);
    EXPECT_EQ(creation<double>(4).bnd, boundary::truncated);
    EXPECT_EQ((annihilation<double>(4) * creation<double>(4)).bnd, boundary::truncated);
    EXPECT_THROW(annihilation<double>(4) + creation<double>(5), dimension_error);
}

TEST(NumberFunction, Examples)
{
    const std::size_t n = 7;
    const auto lam = number_operator<long long>(n);
    const auto omega = number_function<long long>(n, [](std::size_t k) { return k == 0 ? 0LL : 1LL; });
    const auto delta = number_function<long long>(n, [](std::size_t k) { return k == 0 ? 1LL : 0LL; });
    const auto one = matrix<long long>::identity(n);
    for (std::size_t k = 0; k < n; ++k)
        EXPECT_EQ(lam.entries(k, k), static_cast<long long>(k));
    EXPECT_EQ(max_abs_diff(omega.entries, one - vacuum_projector<long long>(n).entries), 0.0);
    EXPECT_EQ(max_abs_diff(delta.entries, vacuum_projector<long long>(n).entries), 0.0);
    // a+ a = omega_Lambda on the interior
    const auto apa = creation<long long>(n) * annihilation<long long>(n);
    EXPECT_EQ(max_abs_diff(apa.interior(), omega.interior()), 0.0);
}

TEST(Position, MatrixEntryAndSpectrum)
{
    EXPECT_EQ(position<double>(5).entries(0, 1), 1.0);
    const auto x = position<cplx>(5);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(x.entries));
    std::vector<double> expected;
    for (int k = 5; k >= 1; --k)
        expected.push_back(2.0 * std::cos(k * M_PI / 6.0));
    for (int i = 0; i < 5; ++i)
    {
        EXPECT_NEAR(es.eigenvalues()(i), expected[i], 1e-14);
        EXPECT_LT(std::fabs(es.eigenvalues()(i)), 2.0);
    }
}

TEST(Position, NormMatchesEigenSolver)
{
    for (std::size_t n : {3u, 8u, 17u, 40u})
    {
        const auto ev = tridiagonal_eigenvalues(std::vector<double>(n, 0.0), std::vector<double>(n - 1, 1.0));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(position<cplx>(n).entries));
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_NEAR(ev[i], es.eigenvalues()(static_cast<Eigen::Index>(i)), 1e-12);
        EXPECT_NEAR(ev.back(), 2.0 * std::cos(M_PI / (n + 1.0)), 1e-12);
    }
}

TEST(Momentum, HermitianAndUnitarilyEquivalentToPosition)
{
    const std::size_t n = 12;
    const auto p = momentum<cplx>(n);
    EXPECT_EQ(max_abs_diff(p.adjoint().entries, p.entries), 0.0);
    // P = U X U* with U = diag(i^k)
    const auto u = number_function<cplx>(n, [](std::size_t k) { return std::pow(cplx(0.0, 1.0), static_cast<int>(k)); });
    EXPECT_LT(max_abs_diff((u * position<cplx>(n) * u.adjoint()).entries, p.entries), 1e-15);
}

TEST(Commutators, InteriorBlocks)
{
    const std::size_t n = 9;
    const auto a = annihilation<gauss_int>(n), ap = creation<gauss_int>(n);
    EXPECT_EQ(max_abs_diff(commutator(a, ap).interior(), vacuum_projector<gauss_int>(n).interior()), 0.0);
    EXPECT_EQ(max_abs_diff(commutator(a, a).entries, matrix<gauss_int>(n, n)), 0.0);
    const auto xp = commutator(position<gauss_int>(n), momentum<gauss_int>(n));
    EXPECT_EQ(max_abs_diff(xp.interior(), (gauss_int{0, 2} * vacuum_projector<gauss_int>(n)).interior()), 0.0);
    // the truncation shows up only in the last row and column
    EXPECT_NE(max_abs_diff(xp.entries, (gauss_int{0, 2} * vacuum_projector<gauss_int>(n)).entries), 0.0);
}

TEST(Commutators, VacuumProjectorRelations)
{
    const std::size_t n = 10;
    using op = fock_operator<long long>;
    const op a = annihilation<long long>(n), ap = creation<long long>(n), p0 = vacuum_projector<long long>(n);
    EXPECT_EQ(max_abs_diff(commutator(a, p0).interior(), (-1LL * (p0 * a)).interior()), 0.0);
    EXPECT_EQ(max_abs_diff(commutator(ap, p0).interior(), (ap * p0).interior()), 0.0);
    // [a+ P0, P0 a] = Phi_1 Phi_1^* - P0, straight from the matrix products
    const op lhs = commutator(op(ap * p0), op(p0 * a));
    matrix<long long> rhs(n, n);
    rhs(1, 1) = 1;
    rhs(0, 0) = -1;
    EXPECT_EQ(max_abs_diff(lhs.entries, rhs), 0.0);
}

TEST(Commutators, RandomInteriorMultiplication)
{
    // (A B) restricted to the interior is unaffected by the truncation whenever A is lower-banded by 1
    std::mt19937_64 rng(0);
    std::uniform_int_distribution<int> d(-3, 3);
    const std::size_t n = 8;
    matrix<long long> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = d(rng);
    const fock_operator<long long> b{m, boundary::exact_interior};
    const auto a = annihilation<long long>(n);
    // a shifts rows up: (a B)(i, j) = B(i+1, j)
    const auto ab = (a * b).entries;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            EXPECT_EQ(ab(i, j), m(i + 1, j));
}

TEST(Moments, Examples)
{
    EXPECT_EQ(vacuum_moment(2, observable::X, 16), 1.0);
    EXPECT_EQ(vacuum_moment(1, observable::P, 16), 0.0);
    EXPECT_EQ(vacuum_moment(6, observable::X, 16), 5.0);
    EXPECT_THROW(vacuum_moment(8, observable::X, 16), truncation_error);
}

TEST(Moments, CatalanAndSpectralOracle)
{
    const std::size_t dim = 64;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(position<cplx>(dim).entries));
    for (unsigned n = 0; n <= 12; ++n)
    {
        const double c = static_cast<double>(catalan(n));
        EXPECT_EQ(vacuum_moment(2 * n, observable::X, dim), c);
        EXPECT_EQ(vacuum_moment(2 * n, observable::P, dim), c);
        EXPECT_EQ(vacuum_moment(2 * n + 1, observable::X, dim), 0.0);
        double s = 0.0;
        for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
            s += std::norm(es.eigenvectors()(0, k)) * std::pow(es.eigenvalues()(k), 2.0 * n);
        EXPECT_NEAR(s, c, 1e-11 * c);
    }
}

TEST(LieAlgebra, SuitePassesAndRejectsSmallDimension)
{
    const auto r = lie_bracket_checks(16, 6, 6);
    EXPECT_TRUE(r.passed()) << describe_failure(r);
    EXPECT_THROW(lie_bracket_checks(8, 4, 4), dimension_error);
}

TEST(FockSuite, PassesForSeveralDimensions)
{
    for (std::size_t n : {4u, 9u, 24u})
    {
        const auto r = fock_checks(n);
        EXPECT_TRUE(r.passed()) << describe_failure(r);
    }
}

TEST(CoherentKernel, Examples)
{
    EXPECT_EQ(coherent_kernel(0.0, cplx(0.3, 0.2)), cplx(1.0));
    EXPECT_NEAR(std::abs(coherent_kernel(0.5, 0.5) - 4.0 / 3.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(coherent_kernel(cplx(0.0, 0.3), 0.4) - 1.0 / cplx(1.0, 0.12)), 0.0, 1e-15);
    EXPECT_THROW(coherent_kernel(1.0, 0.0), domain_error);
}

TEST(CoherentKernel, TruncatedSeriesWithinBound)
{
    for (auto [u, v] : {std::pair<cplx, cplx>{cplx(0.0, 0.3), 0.4}, {cplx(0.7, 0.1), cplx(-0.2, 0.6)}, {0.9, 0.95}})
        for (std::size_t n : {5u, 50u, 200u})
        {
            const auto s = coherent_kernel_truncated(u, v, n);
            // the bound covers the omitted terms; the n summed terms add rounding of order n eps |sum|
            const double rounding = 4.0 * n * 2.2e-16 * std::abs(coherent_kernel(u, v));
            EXPECT_LE(std::abs(s.value - coherent_kernel(u, v)), s.tail_bound + rounding);
            EXPECT_GT(std::abs(s.value - coherent_kernel(u, v)), 0.5 * s.tail_bound * (1.0 - std::abs(std::conj(u) * v)) - rounding);
        }
    // the inner product of explicit truncated vectors gives the same sum
    const cplx u(0.2, 0.5), v(-0.4, 0.3);
    cplx ip = 0.0;
    for (int n = 0; n < 200; ++n)
        ip += std::conj(std::pow(u, n)) * std::pow(v, n);
    EXPECT_LT(std::abs(ip - coherent_kernel(u, v)), 1e-14);
}

TEST(HarmonicOscillator, Examples)
{
    EXPECT_EQ(harmonic_char(0.0, 0.3, 1.0), cplx(1.0));
    for (double t : {0.4, 2.5})
        EXPECT_LT(std::abs(harmonic_char(t, 1.0, 1.7) - std::exp(cplx(0.0, t * 1.7))), 1e-15);
    const double t = 0.9;
    const cplx expected = 0.25 * std::exp(cplx(0.0, t)) + 0.75 * std::exp(cplx(0.0, 2.0 * t));
    EXPECT_LT(std::abs(harmonic_char(t, 0.25, 1.0) - expected), 1e-15);
    EXPECT_THROW(harmonic_char(t, 1.5, 1.0), domain_error);
}

TEST(HarmonicOscillator, DiagonalOracle)
{
    for (double p : {0.0, 0.25, 0.6, 1.0})
        for (double t : {-1.3, 0.2, 3.0})
            for (double w : {0.5, 1.0, 2.0})
                EXPECT_LT(std::abs(harmonic_char(t, p, w) - harmonic_char_diagonal(bernoulli_state(p, 6), t, w)), 1e-14);
}

TEST(FockStateSuite, Passes)
{
    const auto r = fock_state_checks();
    EXPECT_TRUE(r.passed()) << describe_failure(r);
}

TEST(Moments, OverflowGuard)
{
    EXPECT_EQ(vacuum_moment(62, observable::X, 126), static_cast<double>(catalan(31)));
    EXPECT_THROW(vacuum_moment(64, observable::X, 130), overflow_error);
}
