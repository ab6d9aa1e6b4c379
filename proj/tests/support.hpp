#ifndef SEMICIRCLE_TESTS_SUPPORT_HPP
#define SEMICIRCLE_TESTS_SUPPORT_HPP

#include <sstream>
#include <string>

#include "semicircle/report.hpp"

inline std::string describe_failure(const semicircle::check_report& r)
{
    const auto f = r.first_failure();
    if (!f)
        return "all checks passed";
    std::ostringstream os;
    os.precision(17);
    os << f->module << ": " << f->identity << " residual " << f->max_residual << " > " << f->tolerance << " at "
       << f->worst_case;
    return os.str();
}

#endif
