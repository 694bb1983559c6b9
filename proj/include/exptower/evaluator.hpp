#ifndef EXPTOWER_EVALUATOR_HPP
#define EXPTOWER_EVALUATOR_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "exptower/words.hpp"
#include "exptower/xreal.hpp"

namespace exptower {

// Closed interval [lo, hi] on the extended line, endpoints ordered.
class Interval {
public:
    Interval(XReal lo, XReal hi);

    // Endpoints in either order.
    static Interval hull(XReal a, XReal b);

    XReal lo() const { return lo_; }
    XReal hi() const { return hi_; }

    XReal width() const; // 0 for singletons (also [+inf,+inf]), +inf if one end is infinite
    bool is_singleton() const { return lo_ == hi_; }
    bool contains(XReal x) const { return lo_ <= x && x <= hi_; }
    bool interior_contains(XReal x) const { return lo_ < x && x < hi_; }

    bool operator==(const Interval&) const = default;

private:
    XReal lo_;
    XReal hi_;
};

// Open interiors ]lo,hi[ have no common point; a shared endpoint is allowed.
bool interiors_disjoint(const Interval& a, const Interval& b);

// inner is contained in outer, both taken as closed sets.
bool subset_of(const Interval& inner, const Interval& outer);

enum class TowerStatus {
    converged_finite,
    converged_plus_inf,
    converged_minus_inf,
    two_cycle,
    undetermined,
};

std::string_view to_string(TowerStatus s);

struct TowerReport {
    TowerStatus status = TowerStatus::undetermined;
    std::optional<XReal> limit;                   // present iff converged_*
    std::optional<std::pair<XReal, XReal>> cycle; // present iff two_cycle, first < second
    std::size_t steps_used = 0;
    std::vector<XReal> trace; // u_1 .. u_{steps_used}
};

inline constexpr double k_default_tol = 1e-12;
inline constexpr std::size_t k_default_max_steps = 10000;
inline constexpr std::size_t k_window = 8;

// Value of the depth-n truncation: seed 1, then apply the word's signs from
// index n (innermost) up to index 1 (outermost).  n = 0 gives 1.
// Throws InsufficientSignsError when a finite word is shorter than n.
XReal truncation_value(Base a, const Word& w, std::size_t n);
XReal truncation_value(Base a, const FiniteWord& w, std::size_t n);
XReal truncation_value(Base a, const InfiniteWord& w, std::size_t n);

// Image of a point or an interval under the composition named by gamma
// (gamma's last sign acts first).  Intervals are pushed endpoint-wise and
// re-sorted, which is exact because each map is a monotone bijection of the
// extended line.
XReal apply_word(Base a, const FiniteWord& gamma, XReal x);
Interval apply_word(Base a, const FiniteWord& gamma, const Interval& I);

// Image of the whole extended line under gamma's composition.
Interval image_interval(Base a, const FiniteWord& gamma);

// [I(1), ..., I(N)] where I(n) is the image interval of the first n signs.
std::vector<Interval> interval_sequence(Base a, const InfiniteWord& w, std::size_t N);

// Classifies the truncation sequence of an eventually periodic word.
//  - converged_finite: the last `k_window` values pairwise differ by < tol;
//  - converged_plus_inf / converged_minus_inf: the trace saturates at one
//    infinite value over max(k_window, cycle length) steps and the cycle is
//    all-plus, the only tail whose inner towers stay pinned at +inf (a minus
//    anywhere maps +inf onward: -e^{a inf} = -inf, then e^{-a inf} = 0);
//  - two_cycle: period-2 differences < tol across the window while
//    consecutive differences stay >= 10*tol and the oscillation amplitude is
//    steady (amplitudes within 2% across the window), which separates a true
//    cycle from slow alternating convergence near the neutral base;
//  - undetermined after max_steps otherwise.
TowerReport classify(Base a, const InfiniteWord& w,
                     std::size_t max_steps = k_default_max_steps,
                     double tol = k_default_tol);

// I(N) directly, without materializing the whole sequence.
Interval limit_interval(Base a, const InfiniteWord& w, std::size_t N);

} // namespace exptower

#endif
