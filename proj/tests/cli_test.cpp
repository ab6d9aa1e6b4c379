#include <gtest/gtest.h>

#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using namespace semicircle;
using namespace semicircle::cli;

namespace
{

struct outcome
{
    int code;
    std::string out;
    std::string err;
};

outcome run_with(const run_config& c)
{
    std::ostringstream out, err;
    const int code = run(c, out, err);
    return {code, out.str(), err.str()};
}

run_config make(command cmd, generator_kind g, std::vector<double> t)
{
    run_config c;
    c.cmd = cmd;
    c.generator = g;
    c.t_values = std::move(t);
    return c;
}

std::vector<std::string> lines(const std::string& s)
{
    std::vector<std::string> r;
    std::istringstream is(s);
    for (std::string l; std::getline(is, l);)
        r.push_back(l);
    return r;
}

} // namespace

TEST(Cli, CharVacuumRow)
{
    const auto o = run_with(make(command::char_fn, generator_kind::P, {1.0}));
    ASSERT_EQ(o.code, exit_ok);
    const auto ls = lines(o.out);
    ASSERT_EQ(ls.size(), 2u);
    EXPECT_EQ(ls[0], "t,re,im");
    EXPECT_EQ(ls[1], "1,0.5767248077568734,0");
}

TEST(Cli, EvolveAtZeroTime)
{
    auto c = make(command::evolve, generator_kind::P, {0.0});
    c.l_max = 5;
    const auto o = run_with(c);
    ASSERT_EQ(o.code, exit_ok);
    const auto ls = lines(o.out);
    EXPECT_EQ(ls[0], "l,re,im");
    EXPECT_EQ(ls[1], "0,1,0");
    EXPECT_EQ(ls[2], "1,0,0");
    EXPECT_NE(std::find(ls.begin(), ls.end(), "# norm_defect=0"), ls.end());
}

TEST(Cli, CoeffsColumnsAndAgreement)
{
    auto c = make(command::coeffs, generator_kind::P2, {0.5, 2.0});
    c.m_max = 2;
    c.n_max = 3;
    const auto o = run_with(c);
    ASSERT_EQ(o.code, exit_ok);
    const auto ls = lines(o.out);
    EXPECT_EQ(ls[0], "m,n,t,re,im,method_agreement");
    EXPECT_EQ(ls.size(), 1u + 2u * 3u * 4u + 1u);
}

TEST(Cli, JsonSchemaAndRoundTrip)
{
    auto c = make(command::evolve, generator_kind::X, {0.7});
    c.k = 2;
    c.l_max = 30;
    c.format = output_format::json;
    const auto o = run_with(c);
    ASSERT_EQ(o.code, exit_ok);
    const auto j = nlohmann::json::parse(o.out);
    ASSERT_TRUE(j.contains("config_echo"));
    ASSERT_TRUE(j.contains("rows"));
    ASSERT_TRUE(j.contains("residuals"));
    EXPECT_EQ(j["config_echo"]["generator"], "X");
    EXPECT_EQ(j["config_echo"]["seed"], 0);
    EXPECT_EQ(j["rows"].size(), 31u);
    const auto s = evolve_X(2, 0.7, 30);
    for (std::size_t l = 0; l <= 30; ++l)
    {
        EXPECT_EQ(j["rows"][l]["l"].get<int>(), static_cast<int>(l));
        EXPECT_EQ(j["rows"][l]["re"].get<double>(), s.amplitudes[l].real());
        EXPECT_EQ(j["rows"][l]["im"].get<double>(), s.amplitudes[l].imag());
    }
    EXPECT_EQ(j["residuals"]["norm_defect"].get<double>(), s.norm_defect);
}

TEST(Cli, SeventeenSignificantDigits)
{
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");
    EXPECT_EQ(format_double(1.0 / 3.0), "0.33333333333333331");
    EXPECT_EQ(std::stod(format_double(M_PI)), M_PI);
}

TEST(Cli, Deterministic)
{
    auto c = make(command::heisenberg, generator_kind::P2, {0.25});
    c.m_max = c.n_max = 3;
    const auto a = run_with(c), b = run_with(c);
    ASSERT_EQ(a.code, exit_ok);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(lines(a.out)[0], "t,m,n,re,im");
}

TEST(Cli, HarmonicCharacteristicFunction)
{
    auto c = make(command::char_fn, generator_kind::H1, {0.9});
    c.p_xi = 0.25;
    const auto o = run_with(c);
    ASSERT_EQ(o.code, exit_ok);
    const cplx v = harmonic_char(0.9, 0.25, 1.0);
    EXPECT_EQ(lines(o.out)[1], "0.90000000000000002," + format_double(v.real()) + "," + format_double(v.imag()));
}

TEST(Cli, Tables)
{
    auto c = make(command::table, generator_kind::P, {});
    c.n_max = 5;
    auto o = run_with(c);
    ASSERT_EQ(o.code, exit_ok);
    auto ls = lines(o.out);
    EXPECT_EQ(ls[0], "n,catalan,moment_X,moment_P,moment_quadrature");
    EXPECT_EQ(ls[6].substr(0, 11), "5,42,42,42,");
    c.table = table_kind::hilbert;
    c.n_max = 2;
    o = run_with(c);
    ASSERT_EQ(o.code, exit_ok);
    ls = lines(o.out);
    EXPECT_EQ(ls[0], "n,x,pv,spectral,residual");
    EXPECT_EQ(ls.size(), 1u + 3u * 25u + 1u);
}

TEST(Cli, ConfigErrorsExitTwo)
{
    auto bad_tol = make(command::char_fn, generator_kind::P, {1.0});
    bad_tol.tol = 0.0;
    EXPECT_EQ(run_with(bad_tol).code, exit_config);

    EXPECT_EQ(run_with(make(command::char_fn, generator_kind::P, {})).code, exit_config);

    auto levels = make(command::evolve, generator_kind::P, {1.0});
    levels.k = 5;
    levels.l_max = 3;
    const auto o = run_with(levels);
    EXPECT_EQ(o.code, exit_config);
    EXPECT_NE(o.err.find("l-max"), std::string::npos);

    EXPECT_EQ(run_with(make(command::coeffs, generator_kind::H1, {1.0})).code, exit_config);
    EXPECT_EQ(run_with(make(command::evolve, generator_kind::P, {1.0, 2.0})).code, exit_config);
    EXPECT_EQ(run_with(make(command::heisenberg, generator_kind::X, {1.0})).code, exit_config);

    auto short_levels = make(command::evolve, generator_kind::P, {4.0});
    short_levels.l_max = 10;
    EXPECT_EQ(run_with(short_levels).code, exit_config);

    auto big = make(command::table, generator_kind::P, {});
    big.n_max = 40;
    EXPECT_EQ(run_with(big).code, exit_config);

    EXPECT_EQ(run_with(make(command::char_fn, generator_kind::P, {std::nan("")})).code, exit_config);
}

TEST(Cli, VerifyPasses)
{
    run_config c;
    c.cmd = command::verify;
    const auto o = run_with(c);
    EXPECT_EQ(o.code, exit_ok) << o.err;
    const auto ls = lines(o.out);
    EXPECT_EQ(ls[0], "module,identity,max_residual,tolerance,passed,worst_case");
    EXPECT_EQ(ls.back(), "# failed_checks=0");
    for (std::size_t i = 1; i + 1 < ls.size(); ++i)
        EXPECT_EQ(ls[i].find(",false,"), std::string::npos) << ls[i];
}
