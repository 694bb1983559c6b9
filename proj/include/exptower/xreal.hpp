#ifndef EXPTOWER_XREAL_HPP
#define EXPTOWER_XREAL_HPP

#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>

#include "exptower/errors.hpp"

namespace exptower {

// Sign symbol choosing between the upper map x -> e^{ax} and the lower map
// x -> -e^{ax}.
enum class Sign : std::uint8_t { plus, minus };

constexpr char to_char(Sign s) { return s == Sign::plus ? '+' : '-'; }
constexpr Sign flipped(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

// Extended-real scalar: binary64 with +inf and -inf as first-class values and
// NaN banned.  -0 is normalized to +0 so sign tests and ordering are
// unambiguous.  Overflow saturates to the infinite endpoints.
class XReal {
public:
    constexpr XReal() = default;
    XReal(double v) : v_(normalized(v)) {}

    static XReal plus_infinity() { return XReal(std::numeric_limits<double>::infinity()); }
    static XReal minus_infinity() { return XReal(-std::numeric_limits<double>::infinity()); }

    double value() const { return v_; }
    bool finite() const { return std::isfinite(v_); }
    bool infinite() const { return std::isinf(v_); }

    XReal operator-() const { return XReal(-v_); }

    friend constexpr auto operator<=>(const XReal&, const XReal&) = default;

private:
    static double normalized(double v) {
        if (std::isnan(v)) throw DomainError("XReal: NaN is not an extended real");
        return v == 0.0 ? 0.0 : v;
    }

    double v_ = 0.0;
};

// |a - b| on the extended line.  Equal values (including equal infinities)
// have distance 0; a finite value is infinitely far from an infinite one.
double abs_diff(XReal a, XReal b);

// Strictly positive finite base parameter of the maps +/- e^{ax}.
class Base {
public:
    explicit Base(double a) : a_(a) {
        if (!(a > 0.0) || !std::isfinite(a))
            throw DomainError("Base: parameter must be a positive finite real");
    }
    double value() const { return a_; }

private:
    double a_;
};

// Applies one signed exponential: e^{ax} for plus, -e^{ax} for minus, with
// the conventions e^{-inf} = 0 and e^{+inf} = +inf.
XReal apply_sign(Sign s, Base a, XReal x);

// Inverse of apply_sign on its closed image: returns ln|t| / a with
// ln 0 = -inf and ln +inf = +inf.  Throws DomainError when t has the wrong
// sign for s (t < 0 with plus, t > 0 with minus); t = 0 is legal for both.
XReal inverse_sign(Sign s, Base a, XReal t);

} // namespace exptower

#endif
