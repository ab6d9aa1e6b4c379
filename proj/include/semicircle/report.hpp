#ifndef SEMICIRCLE_REPORT_HPP
#define SEMICIRCLE_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <deque>
#include <optional>
#include <string>
#include <vector>

namespace semicircle
{

/// One identity checked numerically: the largest residual seen and the bound it must respect.
struct check_entry
{
    std::string module;
    std::string identity;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::string worst_case; ///< human-readable location of max_residual

    bool passed() const { return std::isfinite(max_residual) && max_residual <= tolerance; }
};

/// Collection of identity checks produced by the *_checks functions and by `verify`.
class check_report
{
public:
    check_entry& add(std::string module, std::string identity, double tolerance)
    {
        entries_.push_back({std::move(module), std::move(identity), 0.0, tolerance, {}});
        return entries_.back();
    }

    /// Records a residual against an entry; NaN or infinity sticks as the worst case.
    static void observe(check_entry& entry, double residual, const std::string& where)
    {
        if (std::isnan(entry.max_residual))
            return;
        if (std::isnan(residual) || residual >= entry.max_residual)
        {
            entry.max_residual = residual;
            entry.worst_case = where;
        }
    }

    void merge(const check_report& other)
    {
        entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    }

    bool passed() const
    {
        return std::all_of(entries_.begin(), entries_.end(), [](const check_entry& e) { return e.passed(); });
    }

    std::optional<check_entry> first_failure() const
    {
        for (const auto& e : entries_)
            if (!e.passed())
                return e;
        return std::nullopt;
    }

    const std::deque<check_entry>& entries() const { return entries_; }

private:
    std::deque<check_entry> entries_; // add() hands out references that must stay valid
};

} // namespace semicircle

#endif
