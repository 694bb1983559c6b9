#include "exptower/representer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "exptower/evaluator.hpp"

namespace exptower {

std::string_view to_string(RoundTripVerdict v) {
    switch (v) {
    case RoundTripVerdict::represented: return "Represented";
    case RoundTripVerdict::not_represented: return "NotRepresented";
    case RoundTripVerdict::undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Expansion expand(Base a, XReal t, std::size_t n_signs) {
    Expansion out;
    out.orbit.reserve(n_signs + 1);

    std::vector<Sign> signs;
    signs.reserve(n_signs);

    XReal u = t;
    out.orbit.push_back(u);
    if (u == XReal(0.0)) out.hit_zero_at = 0;
    for (std::size_t k = 0; k < n_signs; ++k) {
        const Sign s = u >= XReal(0.0) ? Sign::plus : Sign::minus;
        signs.push_back(s);
        u = inverse_sign(s, a, u);
        out.orbit.push_back(u);
        if (u == XReal(0.0) && !out.hit_zero_at) out.hit_zero_at = k + 1;
    }

    // The orbit is absorbed by the first infinity it reaches: +inf repeats
    // under Plus, and -inf forces one Minus before the same +inf tail.
    std::size_t first_inf = n_signs + 1;
    for (std::size_t j = 0; j <= n_signs; ++j) {
        if (out.orbit[j].infinite()) {
            first_inf = j;
            break;
        }
    }
    if (first_inf <= n_signs) {
        const std::size_t prefix_len =
            out.orbit[first_inf].value() > 0 ? first_inf : first_inf + 1;
        if (prefix_len <= n_signs) {
            std::vector<Sign> prefix(signs.begin(),
                                     signs.begin() + static_cast<std::ptrdiff_t>(prefix_len));
            out.word = InfiniteWord(FiniteWord(std::move(prefix)),
                                    FiniteWord(std::vector<Sign>{Sign::plus}));
            out.tail_periodic = true;
            return out;
        }
    }
    out.word = FiniteWord(std::move(signs));
    return out;
}

std::optional<Expansion> alternate_expansion(Base a, XReal t, std::size_t n_signs) {
    Expansion primary = expand(a, t, n_signs);
    if (!primary.hit_zero_at) return std::nullopt;
    const std::size_t k = *primary.hit_zero_at;
    if (k + 1 > n_signs) return std::nullopt; // the free sign was never emitted

    auto flip_at = [k](const FiniteWord& w) {
        std::vector<Sign> signs = w.signs();
        signs[k] = Sign::minus;
        return FiniteWord(std::move(signs));
    };
    if (auto* f = std::get_if<FiniteWord>(&primary.word)) {
        primary.word = flip_at(*f);
    } else {
        // A zero at k is followed by -inf then the +inf tail, so position
        // k+1 always falls inside the emitted prefix.
        const auto& w = std::get<InfiniteWord>(primary.word);
        primary.word = InfiniteWord(flip_at(w.prefix()), w.cycle());
    }
    return primary;
}

RoundTrip roundtrip(Base a, XReal t, std::size_t n_signs, double tol) {
    RoundTrip rt;
    rt.target = t;
    rt.expansion = expand(a, t, n_signs);
    rt.residuals.reserve(n_signs);
    for (std::size_t n = 1; n <= n_signs; ++n)
        rt.residuals.push_back(XReal(abs_diff(truncation_value(a, rt.expansion.word, n), t)));
    rt.final_residual = rt.residuals.empty() ? XReal(abs_diff(XReal(1.0), t)) : rt.residuals.back();

    const std::size_t n = rt.residuals.size();
    const std::size_t window = std::min<std::size_t>(k_window, n);

    // Small slack for rounding noise once residuals reach machine scale.
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor = t.finite() ? std::max(tol * 1e-3, 64 * eps * (1.0 + std::fabs(t.value())))
                                    : tol * 1e-3;

    bool decreasing = n >= 2;
    for (std::size_t i = n / 2; i + 1 < n && decreasing; ++i)
        decreasing = rt.residuals[i + 1].value() <= std::max(rt.residuals[i].value(), floor);

    if (rt.final_residual.value() < tol && decreasing && n >= 2) {
        rt.verdict = RoundTripVerdict::represented;
        return rt;
    }

    if (window >= 2) {
        bool all_inf = true, all_finite = true;
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (std::size_t i = n - window; i < n; ++i) {
            const XReal r = rt.residuals[i];
            all_inf = all_inf && r.infinite();
            all_finite = all_finite && r.finite();
            if (r.finite()) {
                lo = std::min(lo, r.value());
                hi = std::max(hi, r.value());
            }
        }
        const bool stuck_finite = all_finite && hi - lo < tol && lo > 10 * tol;
        if (all_inf || stuck_finite) {
            rt.verdict = RoundTripVerdict::not_represented;
            return rt;
        }
    }

    rt.verdict = RoundTripVerdict::undetermined;
    return rt;
}

} // namespace exptower
