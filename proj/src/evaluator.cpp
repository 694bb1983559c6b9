#include "exptower/evaluator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "exptower/errors.hpp"

namespace exptower {

Interval::Interval(XReal lo, XReal hi) : lo_(lo), hi_(hi) {
    if (hi_ < lo_) throw DomainError("interval endpoints out of order");
}

Interval Interval::hull(XReal a, XReal b) {
    return a <= b ? Interval(a, b) : Interval(b, a);
}

XReal Interval::width() const { return XReal(abs_diff(lo_, hi_)); }

bool interiors_disjoint(const Interval& a, const Interval& b) {
    if (a.is_singleton() || b.is_singleton()) return true;
    return a.hi() <= b.lo() || b.hi() <= a.lo();
}

bool subset_of(const Interval& inner, const Interval& outer) {
    return outer.lo() <= inner.lo() && inner.hi() <= outer.hi();
}

std::string_view to_string(TowerStatus s) {
    switch (s) {
    case TowerStatus::converged_finite: return "ConvergedFinite";
    case TowerStatus::converged_plus_inf: return "ConvergedPlusInf";
    case TowerStatus::converged_minus_inf: return "ConvergedMinusInf";
    case TowerStatus::two_cycle: return "TwoCycle";
    case TowerStatus::undetermined: return "Undetermined";
    }
    return "Undetermined";
}

namespace {

// Applies signs w[n], w[n-1], ..., w[1] to the seed 1.  Callers have already
// checked that n signs exist.
template <class W>
XReal run_truncation(Base a, const W& w, std::size_t n) {
    XReal x(1.0);
    for (std::size_t k = n; k >= 1; --k) x = apply_sign(sign_at(w, k), a, x);
    return x;
}

} // namespace

XReal truncation_value(Base a, const FiniteWord& w, std::size_t n) {
    if (!has_at_least(w, n)) throw InsufficientSignsError("word has fewer signs than the requested depth");
    return run_truncation(a, w, n);
}

XReal truncation_value(Base a, const InfiniteWord& w, std::size_t n) {
    return run_truncation(a, w, n);
}

XReal truncation_value(Base a, const Word& w, std::size_t n) {
    if (const auto* f = std::get_if<FiniteWord>(&w)) return truncation_value(a, *f, n);
    return truncation_value(a, std::get<InfiniteWord>(w), n);
}

XReal apply_word(Base a, const FiniteWord& gamma, XReal x) {
    for (std::size_t k = gamma.size(); k >= 1; --k) x = apply_sign(gamma.sign_at(k), a, x);
    return x;
}

Interval apply_word(Base a, const FiniteWord& gamma, const Interval& I) {
    // Each sign map is a monotone bijection of the extended line and exp is
    // evaluated monotonically, so pushing the two endpoints through the same
    // operation chain brackets the image of every interior point.
    return Interval::hull(apply_word(a, gamma, I.lo()), apply_word(a, gamma, I.hi()));
}

Interval image_interval(Base a, const FiniteWord& gamma) {
    return apply_word(a, gamma, Interval(XReal::minus_infinity(), XReal::plus_infinity()));
}

std::vector<Interval> interval_sequence(Base a, const InfiniteWord& w, std::size_t N) {
    std::vector<Interval> out;
    out.reserve(N);
    for (std::size_t n = 1; n <= N; ++n) out.push_back(image_interval(a, prefix_of(w, n)));
    return out;
}

Interval limit_interval(Base a, const InfiniteWord& w, std::size_t N) {
    return image_interval(a, prefix_of(w, N));
}

TowerReport classify(Base a, const InfiniteWord& w, std::size_t max_steps, double tol) {
    TowerReport rep;
    rep.trace.reserve(std::min<std::size_t>(max_steps, 1024));

    const std::size_t cycle_len = w.cycle().size();
    const bool cycle_all_plus =
        std::all_of(w.cycle().signs().begin(), w.cycle().signs().end(),
                    [](Sign s) { return s == Sign::plus; });
    const std::size_t inf_window = std::max(k_window, cycle_len);

    for (std::size_t n = 1; n <= max_steps; ++n) {
        rep.trace.push_back(truncation_value(a, w, n));
        if (n < k_window) continue;

        const auto* last = rep.trace.data() + (n - k_window);

        bool all_finite = true;
        for (std::size_t i = 0; i < k_window; ++i) all_finite = all_finite && last[i].finite();

        if (all_finite) {
            double lo = last[0].value(), hi = last[0].value();
            for (std::size_t i = 1; i < k_window; ++i) {
                lo = std::min(lo, last[i].value());
                hi = std::max(hi, last[i].value());
            }
            if (hi - lo < tol) {
                rep.status = TowerStatus::converged_finite;
                rep.limit = rep.trace.back();
                rep.steps_used = n;
                return rep;
            }
        } else if (cycle_all_plus && n >= inf_window) {
            const XReal tail = rep.trace.back();
            bool pinned = tail.infinite();
            for (std::size_t i = n - inf_window; pinned && i < n; ++i)
                pinned = rep.trace[i] == tail;
            if (pinned) {
                rep.status = tail.value() > 0 ? TowerStatus::converged_plus_inf
                                              : TowerStatus::converged_minus_inf;
                rep.limit = tail;
                rep.steps_used = n;
                return rep;
            }
        }

        if (all_finite) {
            double fd[k_window - 1];
            bool oscillating = true;
            for (std::size_t i = 0; i + 1 < k_window; ++i) {
                fd[i] = std::fabs(last[i + 1].value() - last[i].value());
                oscillating = oscillating && fd[i] >= 10 * tol;
            }
            bool period2 = true;
            for (std::size_t i = 0; i + 2 < k_window; ++i)
                period2 = period2 && std::fabs(last[i + 2].value() - last[i].value()) < tol;
            // A slow alternating approach to a fixed point also looks
            // 2-periodic over a short window; a genuine cycle keeps its
            // amplitude steady while a damped oscillation keeps shrinking.
            const auto [fd_min, fd_max] = std::minmax_element(fd, fd + k_window - 1);
            const bool steady = *fd_max - *fd_min <= 0.02 * *fd_max + tol;
            if (oscillating && period2 && steady) {
                rep.status = TowerStatus::two_cycle;
                const XReal p = rep.trace[n - 2], q = rep.trace[n - 1];
                rep.cycle = p <= q ? std::make_pair(p, q) : std::make_pair(q, p);
                rep.steps_used = n;
                return rep;
            }
        }
    }

    rep.status = TowerStatus::undetermined;
    rep.steps_used = max_steps;
    return rep;
}

} // namespace exptower
