#ifndef SEMICIRCLE_COMBINATORICS_HPP
#define SEMICIRCLE_COMBINATORICS_HPP

// Exact integer combinatorics of the inverse normal-order problem for the
// free relation a a+ = 1: Catalan numbers, the ballot-type count of sign
// words reducing to (a+)^m+ a^m-, and brute-force enumeration over words.

#include <algorithm>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "errors.hpp"
#include "report.hpp"

namespace semicircle
{

enum class sign : std::uint8_t
{
    plus,  ///< creation a+
    minus, ///< annihilation a
};

/// A product a^{e(1)} ... a^{e(k)}, read left to right.
struct sign_word
{
    std::vector<sign> signs;

    std::size_t size() const { return signs.size(); }

    std::size_t nu_plus() const
    {
        std::size_t n = 0;
        for (auto s : signs)
            n += (s == sign::plus);
        return n;
    }

    std::size_t nu_minus() const { return size() - nu_plus(); }

    /// Parses a string of '+' and '-' characters.
    static sign_word parse(std::string_view text)
    {
        sign_word w;
        w.signs.reserve(text.size());
        for (char c : text)
        {
            if (c == '+')
                w.signs.push_back(sign::plus);
            else if (c == '-')
                w.signs.push_back(sign::minus);
            else
                throw domain_error("sign_word: unexpected character '" + std::string(1, c) + "'");
        }
        return w;
    }

    /// Word of length k whose j-th symbol is minus when bit j of mask is set.
    static sign_word from_mask(unsigned k, std::uint64_t mask)
    {
        sign_word w;
        w.signs.resize(k);
        for (unsigned j = 0; j < k; ++j)
            w.signs[j] = ((mask >> j) & 1u) ? sign::minus : sign::plus;
        return w;
    }
};

/// Exponents of the normally ordered form (a+)^m_plus a^m_minus.
struct normal_form
{
    std::uint64_t m_plus = 0;
    std::uint64_t m_minus = 0;

    friend bool operator==(const normal_form&, const normal_form&) = default;
};

namespace detail
{

using u128 = unsigned __int128;

inline constexpr u128 u64_max = std::numeric_limits<std::uint64_t>::max();

/// binomial(n, k) in 128-bit arithmetic; throws if a partial product leaves 128 bits.
inline u128 binomial_u128(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    u128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i)
    {
        // r * (n - k + i) / i stays integral at every step.
        const u128 factor = n - k + i;
        if (r > std::numeric_limits<u128>::max() / factor)
            throw overflow_error("binomial(" + std::to_string(n) + ", " + std::to_string(k) + ") overflows");
        r = r * factor / i;
    }
    return r;
}

inline std::uint64_t narrow(u128 r, const std::string& what)
{
    if (r > u64_max)
        throw overflow_error(what + " exceeds 64 bits");
    return static_cast<std::uint64_t>(r);
}

} // namespace detail

/// Exact binomial coefficient; overflow_error beyond 64 bits.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k)
{
    return detail::narrow(detail::binomial_u128(n, k),
                          "binomial(" + std::to_string(n) + ", " + std::to_string(k) + ")");
}

/// Catalan number C_p = binomial(2p, p) / (p + 1).
inline std::uint64_t catalan(std::uint64_t p)
{
    return detail::narrow(detail::binomial_u128(2 * p, p) / (p + 1), "catalan(" + std::to_string(p) + ")");
}

/// Number of words of length m_plus + m_minus + 2p that normal-order to (a+)^m_plus a^m_minus:
/// (m + 1) / (2p + m + 1) * binomial(2p + m + 1, p) with m = m_plus + m_minus.
inline std::uint64_t theta_count(std::uint64_t m_plus, std::uint64_t m_minus, std::uint64_t p)
{
    const std::uint64_t m = m_plus + m_minus;
    const std::string what =
        "theta_count(" + std::to_string(m_plus) + ", " + std::to_string(m_minus) + ", " + std::to_string(p) + ")";
    const detail::u128 b = detail::binomial_u128(2 * p + m + 1, p);
    if (b > std::numeric_limits<detail::u128>::max() / (m + 1))
        throw overflow_error(what + " overflows");
    return detail::narrow(b * (m + 1) / (2 * p + m + 1), what);
}

/// Same count in extended precision, for series whose terms need p far beyond the 64-bit range.
/// Exact whenever the count is below 2^64.
inline long double theta_count_real(std::uint64_t m_plus, std::uint64_t m_minus, std::uint64_t p)
{
    const long double m = static_cast<long double>(m_plus + m_minus);
    // binomial(2p + m + 1, p) * (m + 1) / (2p + m + 1) == binomial(2p + m, p) * (m + 1) / (p + m + 1)
    long double b = 1.0L;
    for (std::uint64_t i = 1; i <= p; ++i)
        b = b * (m + static_cast<long double>(p + i)) / static_cast<long double>(i);
    return b * (m + 1.0L) / (m + static_cast<long double>(p) + 1.0L);
}

/// Reduces a word with the rule a a+ -> 1 in a single left-to-right pass.
/// After reduction no minus precedes a plus, so the word is +^m_plus -^m_minus.
inline normal_form normal_order(const sign_word& word)
{
    normal_form nf;
    for (auto s : word.signs)
    {
        if (s == sign::minus)
            ++nf.m_minus;
        else if (nf.m_minus > 0)
            --nf.m_minus; // an unmatched a on the left absorbs this a+
        else
            ++nf.m_plus;
    }
    return nf;
}

namespace detail
{

inline normal_form normal_order_mask(unsigned k, std::uint64_t mask)
{
    normal_form nf;
    for (unsigned j = 0; j < k; ++j)
    {
        if ((mask >> j) & 1u)
            ++nf.m_minus;
        else if (nf.m_minus > 0)
            --nf.m_minus;
        else
            ++nf.m_plus;
    }
    return nf;
}

inline constexpr unsigned max_enumeration_length = 22;

inline void check_enumeration_length(unsigned k)
{
    if (k > max_enumeration_length)
        throw domain_error("enumeration over {+,-}^" + std::to_string(k) + " refused (limit " +
                           std::to_string(max_enumeration_length) + ")");
}

} // namespace detail

/// Counts the words of length k that normal-order to (a+)^m_plus a^m_minus by enumerating all 2^k words.
inline std::uint64_t brute_force_theta(unsigned k, std::uint64_t m_plus, std::uint64_t m_minus)
{
    detail::check_enumeration_length(k);
    const normal_form target{m_plus, m_minus};
    std::uint64_t count = 0;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
        count += (detail::normal_order_mask(k, mask) == target);
    return count;
}

/// Every word of length k in the class of (a+)^m_plus a^m_minus.
inline std::vector<sign_word> enumerate_theta(unsigned k, std::uint64_t m_plus, std::uint64_t m_minus)
{
    detail::check_enumeration_length(k);
    const normal_form target{m_plus, m_minus};
    std::vector<sign_word> out;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
        if (detail::normal_order_mask(k, mask) == target)
            out.push_back(sign_word::from_mask(k, mask));
    return out;
}

/// Number of creators in any word of the class Theta_{m_plus + m_minus + 2p}(m_plus, m_minus).
inline std::uint64_t nu_plus_on_theta(std::uint64_t m_plus, std::uint64_t /*m_minus*/, std::uint64_t p)
{
    return p + m_plus;
}

/// Enumeration-vs-formula checks for every length k <= k_max: class sizes, the
/// disjoint-union identity sum = 2^k, the Catalan specialisation and nu_plus on each class.
inline check_report combinatorics_checks(unsigned k_max)
{
    detail::check_enumeration_length(k_max);
    check_report report;
    auto& counts = report.add("combinatorics", "brute_force_theta == theta_count", 0.0);
    auto& unions = report.add("combinatorics", "sum of class sizes == 2^k", 0.0);
    auto& nu = report.add("combinatorics", "nu_plus == p + m_plus on each class", 0.0);
    auto& cat = report.add("combinatorics", "theta_count(0,0,p) == catalan(p)", 0.0);

    for (unsigned k = 0; k <= k_max; ++k)
    {
        // One pass over all words, bucketed by normal form.
        std::vector<std::vector<std::uint64_t>> bucket(k + 1, std::vector<std::uint64_t>(k + 1, 0));
        std::vector<std::vector<std::uint64_t>> bad_nu(k + 1, std::vector<std::uint64_t>(k + 1, 0));
        for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask)
        {
            const auto nf = detail::normal_order_mask(k, mask);
            ++bucket[nf.m_plus][nf.m_minus];
            const std::uint64_t p = (k - nf.m_plus - nf.m_minus) / 2;
            const auto plus = static_cast<std::uint64_t>(k - static_cast<unsigned>(__builtin_popcountll(mask)));
            bad_nu[nf.m_plus][nf.m_minus] += (plus != nu_plus_on_theta(nf.m_plus, nf.m_minus, p));
        }
        std::uint64_t total = 0;
        for (unsigned mp = 0; mp <= k; ++mp)
            for (unsigned mm = 0; mp + mm <= k; ++mm)
            {
                const std::string where = "k=" + std::to_string(k) + " m+=" + std::to_string(mp) +
                                          " m-=" + std::to_string(mm);
                if ((k - mp - mm) % 2 != 0)
                {
                    check_report::observe(counts, static_cast<double>(bucket[mp][mm]), where);
                    continue;
                }
                const auto formula = theta_count(mp, mm, (k - mp - mm) / 2);
                const auto diff = bucket[mp][mm] > formula ? bucket[mp][mm] - formula : formula - bucket[mp][mm];
                check_report::observe(counts, static_cast<double>(diff), where);
                check_report::observe(nu, static_cast<double>(bad_nu[mp][mm]), where);
                total += bucket[mp][mm];
            }
        const auto expected = std::uint64_t{1} << k;
        check_report::observe(unions, static_cast<double>(total > expected ? total - expected : expected - total),
                              "k=" + std::to_string(k));
        if (k % 2 == 0)
        {
            const auto p = k / 2;
            const auto a = theta_count(0, 0, p), b = catalan(p);
            check_report::observe(cat, static_cast<double>(a > b ? a - b : b - a), "p=" + std::to_string(p));
        }
    }
    return report;
}

} // namespace semicircle

#endif
