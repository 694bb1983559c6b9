#include "exptower/xreal.hpp"

#include <cmath>
#include <limits>

namespace exptower {

double abs_diff(XReal a, XReal b) {
    if (a == b) return 0.0;
    if (a.infinite() || b.infinite()) return std::numeric_limits<double>::infinity();
    return std::fabs(a.value() - b.value());
}

XReal apply_sign(Sign s, Base a, XReal x) {
    // a*x never produces NaN: a is finite positive and x is never NaN.
    const double e = std::exp(a.value() * x.value());
    return XReal(s == Sign::plus ? e : -e);
}

XReal inverse_sign(Sign s, Base a, XReal t) {
    const double tv = t.value();
    if (s == Sign::plus ? (tv < 0.0) : (tv > 0.0))
        throw DomainError(s == Sign::plus
                              ? "inverse_sign: plus requires t in [0, +inf]"
                              : "inverse_sign: minus requires t in [-inf, 0]");
    return XReal(std::log(std::fabs(tv)) / a.value());
}

} // namespace exptower
