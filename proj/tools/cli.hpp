#ifndef SEMICIRCLE_TOOLS_CLI_HPP
#define SEMICIRCLE_TOOLS_CLI_HPP

// Command layer of the semicircle tool, separate from argument parsing so it can be tested in-process.

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "semicircle/evolution.hpp"
#include "semicircle/fock.hpp"
#include "semicircle/hilbert.hpp"
#include "semicircle/orthopoly.hpp"
#include "semicircle/verify.hpp"

namespace semicircle::cli
{

enum class command
{
    coeffs,
    evolve,
    char_fn,
    heisenberg,
    verify,
    table,
};

enum class output_format
{
    csv,
    json,
};

enum class table_kind
{
    catalan,
    hilbert,
};

struct run_config
{
    command cmd = command::verify;
    generator_kind generator = generator_kind::P;
    std::vector<double> t_values;
    unsigned k = 0;
    unsigned l_max = 40;
    unsigned m_max = 4;
    unsigned n_max = 4;
    double tol = 1e-8;
    double omega = 1.0;
    double p_xi = 1.0;
    table_kind table = table_kind::catalan;
    output_format format = output_format::csv;
    std::uint64_t seed = 0;
};

inline constexpr int exit_ok = 0;
inline constexpr int exit_failure = 1;
inline constexpr int exit_config = 2;

/// Invalid configuration; mapped to exit code 2.
class config_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

inline const char* to_string(command c)
{
    switch (c)
    {
    case command::coeffs: return "coeffs";
    case command::evolve: return "evolve";
    case command::char_fn: return "char";
    case command::heisenberg: return "heisenberg";
    case command::verify: return "verify";
    default: return "table";
    }
}

inline const char* to_string(generator_kind g)
{
    switch (g)
    {
    case generator_kind::P: return "P";
    case generator_kind::X: return "X";
    case generator_kind::P2: return "P2";
    default: return "H1";
    }
}

inline std::optional<generator_kind> parse_generator(const std::string& s)
{
    if (s == "P")
        return generator_kind::P;
    if (s == "X")
        return generator_kind::X;
    if (s == "P2")
        return generator_kind::P2;
    if (s == "H1")
        return generator_kind::H1;
    return std::nullopt;
}

using cell = std::variant<long long, double, std::string, bool>;

struct result_table
{
    std::vector<std::string> columns;
    std::vector<std::vector<cell>> rows;
    std::vector<std::pair<std::string, double>> residuals;
};

inline std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string q = "\"";
    for (char c : s)
    {
        if (c == '"')
            q += '"';
        q += c;
    }
    return q + "\"";
}

inline std::string cell_text(const cell& c, bool json)
{
    return std::visit(
        [json](const auto& v) -> std::string {
            using V = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<V, long long>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<V, double>)
                return (json && !std::isfinite(v)) ? "null" : format_double(v);
            else if constexpr (std::is_same_v<V, bool>)
                return v ? "true" : "false";
            else
                return json ? nlohmann::json(v).dump() : csv_field(v);
        },
        c);
}

inline nlohmann::json config_echo(const run_config& c)
{
    nlohmann::json j;
    j["command"] = to_string(c.cmd);
    j["generator"] = to_string(c.generator);
    j["k"] = c.k;
    j["l_max"] = c.l_max;
    j["m_max"] = c.m_max;
    j["n_max"] = c.n_max;
    j["omega"] = c.omega;
    j["p_xi"] = c.p_xi;
    j["seed"] = c.seed;
    j["table"] = c.table == table_kind::catalan ? "catalan" : "hilbert";
    j["t_values"] = c.t_values;
    j["tol"] = c.tol;
    return j;
}

/// CSV: header row, data rows, then one "# name=value" line per residual.
/// JSON: {"config_echo": ..., "rows": [{column: value}], "residuals": {name: value}}.
inline void write(const result_table& t, const run_config& c, std::ostream& out)
{
    if (c.format == output_format::csv)
    {
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows)
        {
            for (std::size_t i = 0; i < row.size(); ++i)
                out << (i ? "," : "") << cell_text(row[i], false);
            out << '\n';
        }
        for (const auto& [name, v] : t.residuals)
            out << "# " << name << '=' << format_double(v) << '\n';
        return;
    }
    // Numbers are emitted by hand so every double carries 17 significant digits.
    out << "{\"config_echo\":" << config_echo(c).dump() << ",\"rows\":[";
    for (std::size_t r = 0; r < t.rows.size(); ++r)
    {
        out << (r ? "," : "") << '{';
        for (std::size_t i = 0; i < t.columns.size(); ++i)
            out << (i ? "," : "") << nlohmann::json(t.columns[i]).dump() << ':' << cell_text(t.rows[r][i], true);
        out << '}';
    }
    out << "],\"residuals\":{";
    for (std::size_t i = 0; i < t.residuals.size(); ++i)
        out << (i ? "," : "") << nlohmann::json(t.residuals[i].first).dump() << ':'
            << cell_text(t.residuals[i].second, true);
    out << "}}\n";
}

namespace detail
{

inline void require_t(const run_config& c)
{
    if (c.t_values.empty())
        throw config_error("at least one --t value is required");
}

inline coeff_kind kind_of(generator_kind g)
{
    switch (g)
    {
    case generator_kind::P: return coeff_kind::momentum_I;
    case generator_kind::X: return coeff_kind::position_I;
    case generator_kind::P2: return coeff_kind::kinetic_I2;
    default: throw config_error("generator H1 has no coefficient table");
    }
}

inline result_table run_coeffs(const run_config& c)
{
    require_t(c);
    const auto kind = kind_of(c.generator);
    result_table t{{"m", "n", "t", "re", "im", "method_agreement"}, {}, {}};
    double worst = 0.0;
    for (double tv : c.t_values)
    {
        const auto tab = build_coeff_table(kind, tv, c.m_max, c.n_max, c.tol);
        for (unsigned m = 0; m <= c.m_max; ++m)
            for (unsigned n = 0; n <= c.n_max; ++n)
            {
                const cplx v = tab.entries(m, n);
                const double agree = std::abs(v - tab.series_entries(m, n));
                worst = std::max(worst, agree);
                t.rows.push_back({static_cast<long long>(m), static_cast<long long>(n), tv, v.real(), v.imag(), agree});
            }
    }
    t.residuals.emplace_back("max_method_agreement", worst);
    return t;
}

inline result_table run_evolve(const run_config& c)
{
    require_t(c);
    if (c.t_values.size() != 1)
        throw config_error("evolve takes exactly one --t value");
    const double tv = c.t_values.front();
    evolved_state s;
    switch (c.generator)
    {
    case generator_kind::P: s = evolve_P(c.k, tv, c.l_max, c.tol); break;
    case generator_kind::X: s = evolve_X(c.k, tv, c.l_max, c.tol); break;
    case generator_kind::P2: s = evolve_P2(c.k, tv, c.l_max, c.tol); break;
    default: s = evolve_H1(c.k, tv, c.l_max, c.omega); break;
    }
    result_table t{{"l", "re", "im"}, {}, {}};
    for (std::size_t l = 0; l < s.amplitudes.size(); ++l)
        t.rows.push_back({static_cast<long long>(l), s.amplitudes[l].real(), s.amplitudes[l].imag()});
    t.residuals.emplace_back("norm_defect", s.norm_defect);
    t.residuals.emplace_back("tail_bound", s.tail_bound);
    t.residuals.emplace_back("tail_index", static_cast<double>(s.tail_index));
    return t;
}

inline result_table run_char(const run_config& c)
{
    require_t(c);
    result_table t{{"t", "re", "im"}, {}, {}};
    for (double tv : c.t_values)
    {
        cplx v;
        switch (c.generator)
        {
        case generator_kind::P: v = c.k == 0 ? char_function(generator_kind::P, tv) : state_char_function(c.k, tv); break;
        case generator_kind::X:
            v = c.k == 0 ? char_function(generator_kind::X, tv) : matrix_element_X(c.k, c.k, tv);
            break;
        case generator_kind::P2: v = matrix_element_P2(c.k, c.k, tv); break;
        default: v = harmonic_char(tv, c.p_xi, c.omega); break;
        }
        t.rows.push_back({tv, v.real(), v.imag()});
    }
    return t;
}

inline result_table run_heisenberg(const run_config& c)
{
    require_t(c);
    if (c.generator != generator_kind::P && c.generator != generator_kind::P2)
        throw config_error("heisenberg supports generators P and P2");
    result_table t{{"t", "m", "n", "re", "im"}, {}, {}};
    for (double tv : c.t_values)
    {
        const auto h = c.generator == generator_kind::P ? heisenberg_aplus_P_table(tv, c.m_max, c.n_max, c.omega)
                                                        : heisenberg_aplus_P2(tv, c.m_max, c.n_max, c.omega);
        for (unsigned m = 0; m <= c.m_max; ++m)
            for (unsigned n = 0; n <= c.n_max; ++n)
                t.rows.push_back(
                    {tv, static_cast<long long>(m), static_cast<long long>(n), h(m, n).real(), h(m, n).imag()});
    }
    return t;
}

inline result_table run_verify(const run_config& c, check_report& report)
{
    report = verify_all({c.tol, c.seed});
    result_table t{{"module", "identity", "max_residual", "tolerance", "passed", "worst_case"}, {}, {}};
    std::size_t failed = 0;
    for (const auto& e : report.entries())
    {
        t.rows.push_back({e.module, e.identity, e.max_residual, e.tolerance, e.passed(), e.worst_case});
        failed += !e.passed();
    }
    t.residuals.emplace_back("failed_checks", static_cast<double>(failed));
    return t;
}

inline result_table run_table(const run_config& c)
{
    if (c.table == table_kind::catalan)
    {
        if (c.n_max > 31)
            throw config_error("table: --n-max must not exceed 31 for exact integer moments");
        // moments of the semicircle law: integer matrix powers and Gauss-U quadrature
        result_table t{{"n", "catalan", "moment_X", "moment_P", "moment_quadrature"}, {}, {}};
        const auto rule = gauss_u_rule(64);
        double worst = 0.0;
        for (unsigned n = 0; n <= c.n_max; ++n)
        {
            const std::size_t dim = 2 * (2 * n) + 2;
            double q = 0.0;
            for (std::size_t j = 0; j < rule.nodes.size(); ++j)
                q += rule.weights[j] * std::pow(rule.nodes[j], 2.0 * n);
            const auto cn = static_cast<long long>(catalan(n));
            worst = std::max(worst, std::fabs(q - static_cast<double>(cn)));
            t.rows.push_back({static_cast<long long>(n), cn, vacuum_moment(2 * n, observable::X, dim),
                              vacuum_moment(2 * n, observable::P, dim), q});
        }
        t.residuals.emplace_back("max_quadrature_defect", worst);
        return t;
    }
    result_table t{{"n", "x", "pv", "spectral", "residual"}, {}, {}};
    double worst = 0.0;
    for (unsigned n = 0; n <= c.n_max; ++n)
        for (int j = 0; j < 25; ++j)
        {
            const double x = -1.9 + 3.8 * (j + 0.5) / 25.0;
            cheb_series f;
            f.coeffs.assign(n + 1, cplx{});
            f.coeffs[n] = 1.0;
            const auto g = hilbert_mu_spectral(f);
            cplx spectral = 0.0;
            for (std::size_t i = 1; i < g.coeffs.size(); ++i)
                spectral += g.coeffs[i] * t_cheb(static_cast<int>(i), x);
            const double pv = hilbert_mu_pv([n](double y) { return phi(static_cast<int>(n), y); }, x);
            const double r = std::fabs(pv - spectral.real());
            worst = std::max(worst, r);
            t.rows.push_back({static_cast<long long>(n), x, pv, spectral.real(), r});
        }
    t.residuals.emplace_back("max_residual", worst);
    return t;
}

} // namespace detail

inline void validate(const run_config& c)
{
    if (!(c.tol > 0.0))
        throw config_error("--tol must be positive");
    if (c.l_max < c.k)
        throw config_error("--l-max must be at least --k");
    for (double t : c.t_values)
        if (!std::isfinite(t))
            throw config_error("--t values must be finite");
    if (!(c.omega > 0.0))
        throw config_error("--omega must be positive");
}

/// Executes one command and writes its artifact to out; diagnostics go to err. Returns the exit status.
inline int run(const run_config& c, std::ostream& out, std::ostream& err = std::cerr)
{
    try
    {
        validate(c);
        result_table t;
        check_report report;
        switch (c.cmd)
        {
        case command::coeffs: t = detail::run_coeffs(c); break;
        case command::evolve: t = detail::run_evolve(c); break;
        case command::char_fn: t = detail::run_char(c); break;
        case command::heisenberg: t = detail::run_heisenberg(c); break;
        case command::verify: t = detail::run_verify(c, report); break;
        default: t = detail::run_table(c); break;
        }
        write(t, c, out);
        if (c.cmd == command::verify && !report.passed())
        {
            for (const auto& e : report.entries())
                if (!e.passed())
                    err << "FAIL " << e.module << ": " << e.identity << " residual " << format_double(e.max_residual)
                        << " > " << format_double(e.tolerance) << " at " << e.worst_case << '\n';
            return exit_failure;
        }
        return exit_ok;
    }
    catch (const config_error& e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const domain_error& e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const dimension_error& e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const truncation_error& e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const overflow_error& e)
    {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    }
    catch (const error& e)
    {
        err << "error: " << e.what() << '\n';
        return exit_failure;
    }
}

} // namespace semicircle::cli

#endif
