#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>
#include <random>

#include "semicircle/oracle.hpp"
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

fock_vector<cplx> random_vector(std::size_t n, std::mt19937_64& rng)
{
    std::normal_distribution<double> g;
    fock_vector<cplx> v(n);
    for (auto& c : v.coeffs)
        c = {g(rng), g(rng)};
    return v;
}

double distance(const std::vector<cplx>& a, const std::vector<cplx>& b, std::size_t len)
{
    double s = 0.0;
    for (std::size_t i = 0; i < len; ++i)
        s += std::norm((i < a.size() ? a[i] : 0.0) - (i < b.size() ? b[i] : 0.0));
    return std::sqrt(s);
}

} // namespace

TEST(ExpmApply, ZeroExponentIsIdentity)
{
    std::mt19937_64 rng(0);
    const auto v = random_vector(10, rng);
    const auto r = expm_apply(momentum<cplx>(10), 0.0, v);
    for (std::size_t i = 0; i < 10; ++i)
        EXPECT_EQ(r.value.coeffs[i], v.coeffs[i]);
    EXPECT_EQ(r.residual_bound, 0.0);
}

TEST(ExpmApply, DiagonalGenerator)
{
    std::mt19937_64 rng(1);
    const std::size_t n = 12;
    const auto v = random_vector(n, rng);
    const double t = 0.83;
    const auto r = expm_apply(number_operator<cplx>(n), cplx(0.0, t), v);
    for (std::size_t k = 0; k < n; ++k)
        EXPECT_LT(std::abs(r.value.coeffs[k] - std::exp(cplx(0.0, t * k)) * v.coeffs[k]), 1e-13);
    EXPECT_LE(r.residual_bound, 1e-14);
}

TEST(ExpmApply, MomentumOnVacuumMatchesBessel)
{
    const std::size_t n = 64;
    const auto r = expm_apply(momentum<cplx>(n), cplx(0.0, 1.0), fock_vector<cplx>::basis(n, 0));
    for (std::size_t l = 0; l < 30; ++l)
    {
        const double ref = (l % 2 ? -1.0 : 1.0) * (l + 1.0) * std::cyl_bessel_j(l + 1.0, 2.0);
        EXPECT_LT(std::abs(r.value.coeffs[l] - ref), 1e-9);
    }
}

TEST(ExpmApply, MatchesEigenOnHermitianAndGeneralGenerators)
{
    std::mt19937_64 rng(2);
    const std::size_t n = 16;
    const auto v = random_vector(n, rng);
    Eigen::VectorXcd ve(n);
    for (std::size_t i = 0; i < n; ++i)
        ve(i) = v.coeffs[i];
    for (auto [op, z] : {std::pair{momentum<cplx>(n), cplx(0.0, 3.0)}, {position<cplx>(n), cplx(0.0, -2.5)},
                         {position<cplx>(n), cplx(0.7, 0.0)}, {momentum<cplx>(n) * momentum<cplx>(n), cplx(0.0, 1.4)}})
    {
        const auto r = expm_apply(op, z, v, 1e-13);
        const Eigen::MatrixXcd e = (z * to_eigen(op.entries)).exp();
        const Eigen::VectorXcd ref = e * ve;
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_LT(std::abs(r.value.coeffs[i] - ref(i)), 1e-11 * std::max(1.0, std::abs(ref(i))));
    }
}

TEST(ExpmApply, PreservesNormForHermitianGenerators)
{
    std::mt19937_64 rng(3);
    for (double t : {0.1, 2.0, 9.0})
    {
        const auto v = random_vector(40, rng);
        const auto r = expm_apply(momentum<cplx>(40), cplx(0.0, t), v);
        EXPECT_NEAR(std::sqrt(r.value.norm2()), std::sqrt(v.norm2()), 1e-12 * std::sqrt(v.norm2()));
        EXPECT_LE(r.residual_bound, 1e-14);
    }
}

TEST(ExpmApply, GroupProperty)
{
    std::mt19937_64 rng(4);
    const auto p = momentum<cplx>(30);
    const auto v = random_vector(30, rng);
    for (auto [t, s] : {std::pair{0.4, 1.1}, {-2.0, 3.5}, {1.5, 1.5}})
    {
        const auto lhs = expm_apply(p, cplx(0.0, t), expm_apply(p, cplx(0.0, s), v).value).value;
        const auto rhs = expm_apply(p, cplx(0.0, t + s), v).value;
        EXPECT_LT(distance(lhs.coeffs, rhs.coeffs, 30), 1e-10);
    }
}

TEST(ExpmApply, RejectsBadInput)
{
    const auto v = fock_vector<cplx>::basis(5, 0);
    EXPECT_THROW(expm_apply(momentum<cplx>(5), 1.0, v, 0.0), domain_error);
    EXPECT_THROW(expm_apply(momentum<cplx>(6), 1.0, v), dimension_error);
    EXPECT_THROW(expm_apply(momentum<cplx>(5), cplx(std::numeric_limits<double>::infinity()), v), domain_error);
}

TEST(Expm, MatchesSpectralDecomposition)
{
    const std::size_t n = 20;
    const auto x = position<cplx>(n);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(to_eigen(x.entries));
    for (double t : {0.3, 2.2, 6.0})
    {
        const auto r = expm(x, cplx(0.0, t));
        Eigen::VectorXcd phases(n);
        for (std::size_t k = 0; k < n; ++k)
            phases(k) = std::exp(cplx(0.0, t * es.eigenvalues()(k)));
        const Eigen::MatrixXcd ref = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                EXPECT_LT(std::abs(r.value(i, j) - ref(i, j)), 1e-12);
        EXPECT_LE(r.residual_bound, 1e-14);
    }
}

TEST(Expm, AgreesWithExpmApply)
{
    const std::size_t n = 24;
    const auto p = momentum<cplx>(n);
    const auto m = expm(p, cplx(0.0, 1.7)).value;
    for (std::size_t k = 0; k < n; k += 5)
    {
        const auto col = expm_apply(p, cplx(0.0, 1.7), fock_vector<cplx>::basis(n, k)).value;
        for (std::size_t i = 0; i < n; ++i)
            EXPECT_LT(std::abs(m(i, k) - col.coeffs[i]), 1e-13);
    }
}

TEST(TruncationLevel, Examples)
{
    for (std::size_t k : {0u, 3u, 11u})
        EXPECT_EQ(truncation_level(0.0, k, 1e-10), k + 2);
    EXPECT_THROW(truncation_level(1.0, 0, 0.0), domain_error);
    EXPECT_THROW(truncation_level_doubling([](std::size_t d) { return momentum<cplx>(d); }, 1.0, 0, -1.0), domain_error);
}

TEST(TruncationLevel, TruncatedEvolutionWithinToleranceOfLargeReference)
{
    for (auto [t, k, tol] : {std::tuple{1.0, 0u, 1e-10}, {4.0, 8u, 1e-8}, {2.0, 12u, 1e-10}, {0.25, 5u, 1e-12}})
    {
        const std::size_t n = truncation_level(t, k, tol);
        EXPECT_GE(n, k + 2);
        const std::size_t big = 4 * n + 40;
        const auto small = expm_apply(momentum<cplx>(n), cplx(0.0, t), fock_vector<cplx>::basis(n, k), tol * 1e-3);
        const auto ref = expm_apply(momentum<cplx>(big), cplx(0.0, t), fock_vector<cplx>::basis(big, k), tol * 1e-3);
        EXPECT_LT(distance(small.value.coeffs, ref.value.coeffs, big), tol) << "t = " << t << ", k = " << k;
        const auto xs = expm_apply(position<cplx>(n), cplx(0.0, t), fock_vector<cplx>::basis(n, k), tol * 1e-3);
        const auto xr = expm_apply(position<cplx>(big), cplx(0.0, t), fock_vector<cplx>::basis(big, k), tol * 1e-3);
        EXPECT_LT(distance(xs.value.coeffs, xr.value.coeffs, big), tol) << "t = " << t << ", k = " << k;
    }
}

TEST(TruncationLevel, DoublingVariantIsSelfConsistent)
{
    auto gen = [](std::size_t d) { return momentum<cplx>(d); };
    for (auto [t, k] : {std::pair{1.0, 0u}, {4.0, 8u}})
    {
        const std::size_t n = truncation_level_doubling(gen, cplx(0.0, t), k, 1e-10);
        const auto a = expm_apply(gen(n), cplx(0.0, t), fock_vector<cplx>::basis(n, k)).value;
        const auto b = expm_apply(gen(2 * n), cplx(0.0, t), fock_vector<cplx>::basis(2 * n, k)).value;
        for (std::size_t l = 0; l < 2 * n; ++l)
            EXPECT_LT(std::abs((l < n ? a.coeffs[l] : 0.0) - b.coeffs[l]), 1e-10);
    }
    EXPECT_THROW(truncation_level_doubling(gen, cplx(0.0, 30.0), 0, 1e-12, 16), truncation_error);
}

TEST(OracleSuite, Passes)
{
    std::mt19937_64 rng(0);
    const auto r = oracle_checks(rng);
    EXPECT_TRUE(r.passed()) << describe_failure(r);
}

TEST(Expm, ResidualBoundWithinToleranceForGeneralExponent)
{
    const auto x = position<cplx>(12);
    for (double tol : {1e-10, 1e-14})
    {
        const auto r = expm(x, cplx(1.3, 0.4), tol);
        EXPECT_LE(r.residual_bound, tol);
        const Eigen::MatrixXcd ref = (cplx(1.3, 0.4) * to_eigen(x.entries)).exp();
        for (std::size_t i = 0; i < 12; ++i)
            for (std::size_t j = 0; j < 12; ++j)
                EXPECT_LT(std::abs(r.value(i, j) - ref(i, j)), 1e-11 * std::max(1.0, std::abs(ref(i, j))));
    }
}
