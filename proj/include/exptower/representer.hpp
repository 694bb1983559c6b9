#ifndef EXPTOWER_REPRESENTER_HPP
#define EXPTOWER_REPRESENTER_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "exptower/words.hpp"
#include "exptower/xreal.hpp"

namespace exptower {

// Result of the greedy backward expansion of a target value.
//
// The orbit is u_0 = t, u_{k+1} = inverse_sign(sigma_{k+1}, a, u_k) where
// sigma_{k+1} is Plus when u_k >= 0 (ties at exactly 0 go to Plus) and Minus
// otherwise.  Once the orbit reaches -inf the continuation is forced:
// -inf -> +inf -> +inf -> ..., with signs Minus then Plus forever, so the
// word is emitted in prefix+"(+)" form and tail_periodic is set.
struct Expansion {
    Word word;
    std::vector<XReal> orbit; // u_0 .. u_{n_signs}
    std::optional<std::size_t> hit_zero_at;
    bool tail_periodic = false;
};

enum class RoundTripVerdict {
    represented,
    not_represented,
    undetermined,
};

std::string_view to_string(RoundTripVerdict v);

struct RoundTrip {
    XReal target;
    Expansion expansion;
    std::vector<XReal> residuals; // |u_{n,word} - t| for n = 1 .. n_signs
    XReal final_residual;
    RoundTripVerdict verdict = RoundTripVerdict::undetermined;
};

// Greedy expansion of t into n_signs signs.  Every extended real has one.
Expansion expand(Base a, XReal t, std::size_t n_signs);

// The second word allowed when the orbit hits exactly 0 at index k: both
// sign choices at position k+1 have preimage -inf, so sigma_{k+1} may be
// flipped to Minus without changing the orbit.  Empty when the orbit never
// hits 0 among the first n_signs positions.
std::optional<Expansion> alternate_expansion(Base a, XReal t, std::size_t n_signs);

inline constexpr double k_roundtrip_tol = 1e-6;

// Expands t, re-evaluates the truncations of the resulting word, and judges
// whether they return to t:
//  - represented: final residual < tol and the residual trace is eventually
//    non-increasing (second half, up to a rounding floor);
//  - not_represented: the last residuals stabilized away from zero (all
//    +inf, or all finite within tol of each other yet above 10*tol);
//  - undetermined otherwise.
RoundTrip roundtrip(Base a, XReal t, std::size_t n_signs, double tol = k_roundtrip_tol);

} // namespace exptower

#endif
