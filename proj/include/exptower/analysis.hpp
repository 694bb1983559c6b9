#ifndef EXPTOWER_ANALYSIS_HPP
#define EXPTOWER_ANALYSIS_HPP

#include <cstddef>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "exptower/evaluator.hpp"
#include "exptower/words.hpp"
#include "exptower/xreal.hpp"

namespace exptower {

// Double nearest to 1/e; bases at or below it put the increasing map's fixed
// points on the real line.
inline constexpr double k_inv_e = 0.36787944117144233;

// Fixed points m <= M of x -> e^{ax}, the roots of g(x) = x e^{-ax} = 1.
// They coincide at a = 1/e and do not exist for larger bases.
struct PlusFixedPoints {
    double m;
    double M;
};

// Throws OutOfRangeError when a > 1/e (the maximum of g is 1/(ae) < 1).
PlusFixedPoints plus_fixed_points(Base a);

// The unique fixed point of x -> -e^{ax}, i.e. the root of x + e^{ax};
// always in (-1, 0).  It repels nearby orbits exactly when a*m_minus < -1,
// equivalently a > e.
struct MinusFixedPoint {
    double m_minus;
    bool repulsive;
};

MinusFixedPoint minus_fixed_point(Base a);

// Exchanged pair of the lower map: f_-(p) = q and f_-(q) = p with
// p < m_minus < q.  Obtained by iterating the endpoint recursion
// [lo,hi] -> [f_-(hi), f_-(lo)] from the full extended line until the
// endpoints stabilize.
struct CyclePair {
    double p;
    double q;
    std::size_t steps;
};

// Throws NoCycleError for a <= e, where the pair collapses to m_minus.
CyclePair two_cycle(Base a, double tol = 1e-12);

// The two roots of (x+1) x^{-1/(x+1)} = e, one on each side of 1; they are
// reciprocal (A*B = 1) and bound the range certified by certify_pow.
struct Constants {
    double A;
    double B;
};

Constants constants_ab(double tol = 1e-12);

struct GridSpec {
    double lo = -40.0;
    double hi = 40.0;
    std::size_t points = 100000;
};

// Certificate for the weight phi(t) = 1 + lambda t^2.  The base is
// parametrized as a = (2+t) e^{-t} with t in [-sqrt3, sqrt3] and
// lambda = (2+t) e^{-2t} / (2-t); the certificate holds when
// lambda <= a^2 (convexity) and F(y) = e^{-y} + lambda e^y - a - lambda y^2/a
// stays nonnegative, checked on a uniform grid plus analytic dominance bounds
// beyond the grid ends.  lambda_override bypasses the parametrization (then
// t_param is absent).
struct QuadCertificate {
    double base;
    std::optional<double> t_param;
    std::optional<double> lambda;
    bool convex_ok = false;
    std::optional<double> grid_min;
    bool tail_ok = false;
    GridSpec grid;
    bool verdict = false;
};

QuadCertificate certify_quad(Base a, GridSpec grid = {},
                             std::optional<double> lambda_override = std::nullopt);

// Certificate for the weight phi(t) = max(1, |at|^nu) with nu = 1 + 1/a and
// the mirrored exponent nu_prime = 1 + a:
//   cond1:  nu * a^{1/nu}        <= e
//   cond2:  nu_prime * a^{-1/nu_prime} <= e
// Both hold exactly for a in [A, B].
struct PowCertificate {
    double base;
    double nu;
    double nu_prime;
    double lhs1;
    double lhs2;
    bool cond1 = false;
    bool cond2 = false;
    bool verdict = false;
};

PowCertificate certify_pow(Base a);

// Root of t = 2 tanh t on (1,2) and the base value (2+t*) e^{-t*} it yields,
// the lower edge reached when the quadratic-weight grid condition is relaxed
// to the |t| <= 2 tanh |t| region.
struct ExtendedScan {
    double t_star;
    double a_low;
};

ExtendedScan scan_quad_extended();

// Values of the parametrization a(t) = (2+t) e^{-t} at t = -sqrt3 and
// t = +sqrt3, the two ends of the admissible parameter interval.
struct QuadParameterRange {
    double a_at_minus_sqrt3; // ~1.5145
    double a_at_plus_sqrt3;  // ~0.6603
};

QuadParameterRange quad_parameter_range();

// Weight families for the interval measure m(I) = integral over I of dt/phi.
struct QuadPhi {
    double lambda; // > 0
};
struct PowPhi {
    double a;  // > 0
    double nu; // > 1
};
using PhiFamily = std::variant<QuadPhi, PowPhi>;

// Odd antiderivative of 1/phi evaluated at t (finite at +-inf for both
// families).  Odd symmetry holds bit-for-bit: primitive(-t) == -primitive(t).
double phi_primitive(const PhiFamily& family, XReal t);

// Nonnegative weighted length of I; 0 for singletons, finite for the whole
// extended line.
double phi_measure(const PhiFamily& family, const Interval& I);

struct ContractionCheck {
    double m_before;
    double m_after_plus;
    double m_after_minus;
    bool contracted;
};

// Measures I and both of its images.  The two images are mirror intervals,
// so their measures agree exactly; contracted demands strict decrease except
// for singletons, which pass trivially.
ContractionCheck contraction_check(Base a, const PhiFamily& family, const Interval& I);

// One open interval of the non-representable set together with the word that
// produced it: box = f_gamma(]-w, w[) where ]-w, w[ is the core piece.
struct AtlasPiece {
    FiniteWord gamma;
    Interval box;
};

// Depth-bounded picture of the non-representable set for a <= 1/e: all
// pieces f_gamma(core) with |gamma| <= depth in breadth-first order, plus
// the two base rays ]m,+inf] and [-inf,-m[, merged into sorted pairwise
// disjoint components (touching endpoints are kept separate: unions of open
// intervals sharing only an endpoint are not intervals).
struct Atlas {
    double base;
    std::size_t depth;
    double m;               // fixed point of e^{ax}, polished to a fixed double
    double core_half_width; // e^{-am}, i.e. 1/m up to rounding
    std::vector<AtlasPiece> pieces;
    std::vector<Interval> components;
};

// Throws OutOfRangeError when a > 1/e.
Atlas atlas_build(Base a, std::size_t depth);

// Membership is decided against the open sets: strict inequalities on the
// rays, open interiors for pieces.  witness is the shortest word whose piece
// contains t (absent for ray hits); a miss is inconclusive, deeper atlases
// capture more of the set.
struct AtlasMembership {
    bool in_x = false;
    std::optional<FiniteWord> witness;
    std::optional<Interval> component;
};

AtlasMembership atlas_membership(const Atlas& atlas, XReal t);

enum class SuitabilityKind {
    suitable_certified,
    not_suitable_small,
    not_suitable_large,
    unknown,
};

std::string_view to_string(SuitabilityKind k);

// Verdict on whether every word converges and every extended real is
// reachable for this base: impossible for a <= 1/e and for a > e; certified
// in between when either weight-family certificate passes; otherwise open.
struct SuitabilityReport {
    SuitabilityKind kind;
    double base;
    std::optional<PowCertificate> pow;
    std::optional<QuadCertificate> quad;
};

SuitabilityReport suitability_report(Base a);

} // namespace exptower

#endif
