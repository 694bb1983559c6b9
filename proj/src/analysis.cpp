#include "exptower/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "exptower/errors.hpp"

namespace exptower {

namespace {

// Bisection on a bracket with opposite signs; iterates until the bracket
// collapses to adjacent doubles.  Endpoint roots are returned as-is.
template <class F>
double bisect(F f, double lo, double hi, int max_iter = 300) {
    double flo = f(lo);
    if (flo == 0.0) return lo;
    if (f(hi) == 0.0) return hi;
    if ((flo < 0.0) == (f(hi) < 0.0))
        throw DomainError("bisection bracket does not straddle a root");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace

PlusFixedPoints plus_fixed_points(Base a) {
    const double av = a.value();
    if (av > k_inv_e)
        throw OutOfRangeError("no real fixed points of the increasing map: base must satisfy a <= 1/e");
    const auto g1 = [av](double x) { return x * std::exp(-av * x) - 1.0; };
    const double peak = 1.0 / av; // g is increasing below 1/a, decreasing above
    if (g1(peak) < 0.0) return {peak, peak}; // boundary case within rounding of a = 1/e

    const double m = bisect(g1, 0.0, peak);
    double hi = 2.0 * peak;
    while (g1(hi) >= 0.0) hi *= 2.0;
    const double M = bisect(g1, peak, hi);
    return {m, M};
}

MinusFixedPoint minus_fixed_point(Base a) {
    const double av = a.value();
    const double m = bisect([av](double x) { return x + std::exp(av * x); }, -1.0, 0.0);
    return {m, av * m < -1.0};
}

CyclePair two_cycle(Base a, double tol) {
    if (!(a.value() > std::numbers::e))
        throw NoCycleError("no 2-cycle of the decreasing map: base must exceed e");
    XReal lo = XReal::minus_infinity();
    XReal hi = XReal::plus_infinity();
    XReal prev_lo = lo;
    XReal prev_hi = hi;
    std::size_t steps = 0;
    const std::size_t cap = 1000000;
    while (steps < cap) {
        const XReal nlo = apply_sign(Sign::minus, a, hi);
        const XReal nhi = apply_sign(Sign::minus, a, lo);
        ++steps;
        // Stop on an exactly stationary pair, on a period-2 rounding orbit
        // (one-ulp flicker), or once the motion drops well under tol.
        const bool settled = (nlo == lo && nhi == hi) || (nlo == prev_lo && nhi == prev_hi) ||
                             (abs_diff(nlo, lo) <= tol * 1e-4 && abs_diff(nhi, hi) <= tol * 1e-4);
        prev_lo = lo;
        prev_hi = hi;
        lo = nlo;
        hi = nhi;
        if (settled) break;
    }
    return {lo.value(), hi.value(), steps};
}

namespace {

double reciprocal_pair_fn(double x) { return (x + 1.0) * std::pow(x, -1.0 / (x + 1.0)); }

} // namespace

Constants constants_ab(double tol) {
    (void)tol; // bisection runs to bracket collapse, well below any practical tol
    const auto f = [](double x) { return reciprocal_pair_fn(x) - std::numbers::e; };
    const double A = bisect(f, 1e-6, 1.0); // f decreases from huge to 2 - e < 0
    const double B = bisect(f, 1.0, 4.0);  // f increases back through e
    return {A, B};
}

namespace {

double quad_parametrization(double t) { return (2.0 + t) * std::exp(-t); }

double quad_lambda_of(double t) { return (2.0 + t) * std::exp(-2.0 * t) / (2.0 - t); }

// p(s) = c_exp e^s - c_quad s^2 - c_const stays positive for all s >= s0
// when its value is positive and its first two derivatives are nonnegative
// at s0 (the third derivative is c_exp e^s > 0, so positivity of p'' at s0
// propagates upward through p' and p).
bool exp_dominates_quadratic(double c_exp, double c_quad, double c_const, double s0) {
    const double es = c_exp * std::exp(s0);
    return es - c_quad * s0 * s0 - c_const > 0.0 && es - 2.0 * c_quad * s0 >= 0.0 &&
           es - 2.0 * c_quad >= 0.0;
}

} // namespace

QuadCertificate certify_quad(Base a, GridSpec grid, std::optional<double> lambda_override) {
    if (grid.points < 2 || !(grid.lo < grid.hi))
        throw DomainError("grid needs at least 2 points and lo < hi");
    const double av = a.value();
    QuadCertificate cert;
    cert.base = av;
    cert.grid = grid;

    if (lambda_override) {
        if (!(*lambda_override > 0.0)) throw DomainError("lambda must be positive");
        cert.lambda = *lambda_override;
    } else {
        const double s3 = std::sqrt(3.0);
        // a(t) = (2+t)e^{-t} rises to e at t = -1 and falls beyond; the
        // falling branch [-1, sqrt3] alone covers every attainable value,
        // the rising branch [-sqrt3, -1] is kept as a fallback.
        const auto on_branch = [av](double lo, double hi) {
            const double flo = quad_parametrization(lo) - av;
            const double fhi = quad_parametrization(hi) - av;
            return flo == 0.0 || fhi == 0.0 || (flo < 0.0) != (fhi < 0.0);
        };
        std::optional<double> t;
        if (on_branch(-1.0, s3))
            t = bisect([av](double x) { return quad_parametrization(x) - av; }, -1.0, s3);
        else if (on_branch(-s3, -1.0))
            t = bisect([av](double x) { return quad_parametrization(x) - av; }, -s3, -1.0);
        if (!t) return cert; // base outside the attainable range: verdict stays false
        cert.t_param = *t;
        cert.lambda = quad_lambda_of(*t);
    }

    const double lam = *cert.lambda;
    cert.convex_ok = lam <= av * av;

    double gmin = std::numeric_limits<double>::infinity();
    const double span = grid.hi - grid.lo;
    for (std::size_t i = 0; i < grid.points; ++i) {
        const double y = grid.lo + span * static_cast<double>(i) / static_cast<double>(grid.points - 1);
        const double f = std::exp(-y) + lam * std::exp(y) - av - lam * y * y / av;
        gmin = std::min(gmin, f);
    }
    cert.grid_min = gmin;

    // Beyond the grid the exponential term on the dominant side absorbs the
    // quadratic: for y >= hi use lam e^y, for y <= lo use e^{-y}.
    cert.tail_ok = exp_dominates_quadratic(lam, lam / av, av, grid.hi) &&
                   exp_dominates_quadratic(1.0, lam / av, av, -grid.lo);

    cert.verdict = cert.convex_ok && cert.tail_ok && gmin >= -1e-12;
    return cert;
}

PowCertificate certify_pow(Base a) {
    const double av = a.value();
    PowCertificate cert;
    cert.base = av;
    cert.nu = 1.0 + 1.0 / av;
    cert.nu_prime = 1.0 + av;
    cert.lhs1 = cert.nu * std::pow(av, 1.0 / cert.nu);
    cert.lhs2 = cert.nu_prime * std::pow(av, -1.0 / cert.nu_prime);
    cert.cond1 = cert.lhs1 <= std::numbers::e;
    cert.cond2 = cert.lhs2 <= std::numbers::e;
    cert.verdict = cert.cond1 && cert.cond2;
    return cert;
}

ExtendedScan scan_quad_extended() {
    const double t_star = bisect([](double t) { return t - 2.0 * std::tanh(t); }, 1.0, 2.0);
    return {t_star, quad_parametrization(t_star)};
}

QuadParameterRange quad_parameter_range() {
    const double s3 = std::sqrt(3.0);
    return {quad_parametrization(-s3), quad_parametrization(s3)};
}

namespace {

void validate_family(const PhiFamily& family) {
    if (const auto* q = std::get_if<QuadPhi>(&family)) {
        if (!(q->lambda > 0.0) || !std::isfinite(q->lambda))
            throw DomainError("quadratic weight needs lambda > 0");
    } else {
        const auto& p = std::get<PowPhi>(family);
        if (!(p.a > 0.0) || !std::isfinite(p.a) || !(p.nu > 1.0) || !std::isfinite(p.nu))
            throw DomainError("power weight needs a > 0 and nu > 1");
    }
}

} // namespace

double phi_primitive(const PhiFamily& family, XReal t) {
    validate_family(family);
    const double u = std::fabs(t.value());
    double p;
    if (const auto* q = std::get_if<QuadPhi>(&family)) {
        const double r = std::sqrt(q->lambda);
        p = std::atan(r * u) / r; // u = +inf lands on (pi/2)/r
    } else {
        const auto& f = std::get<PowPhi>(family);
        const double knee = 1.0 / f.a;
        if (u <= knee)
            p = u;
        else
            p = knee + (1.0 - std::pow(f.a * u, 1.0 - f.nu)) / (f.a * (f.nu - 1.0));
    }
    return std::copysign(p, t.value());
}

double phi_measure(const PhiFamily& family, const Interval& I) {
    // The primitive is odd and increasing; the clamp only absorbs sub-ulp
    // non-monotonicity of the underlying libm calls.
    return std::max(0.0, phi_primitive(family, I.hi()) - phi_primitive(family, I.lo()));
}

ContractionCheck contraction_check(Base a, const PhiFamily& family, const Interval& I) {
    ContractionCheck out{};
    out.m_before = phi_measure(family, I);
    const Interval up = Interval::hull(apply_sign(Sign::plus, a, I.lo()),
                                       apply_sign(Sign::plus, a, I.hi()));
    const Interval down = Interval::hull(apply_sign(Sign::minus, a, I.lo()),
                                         apply_sign(Sign::minus, a, I.hi()));
    out.m_after_plus = phi_measure(family, up);
    out.m_after_minus = phi_measure(family, down);
    out.contracted = I.is_singleton() ||
                     (out.m_after_plus < out.m_before && out.m_after_minus < out.m_before);
    return out;
}

Atlas atlas_build(Base a, std::size_t depth) {
    const double av = a.value();
    if (av > k_inv_e) throw OutOfRangeError("base must satisfy a <= 1/e");

    double m = plus_fixed_points(a).m;
    // Settle onto a double actually fixed by x -> e^{ax} (the iteration is
    // attracting here) so that the rays map onto themselves exactly.
    for (int i = 0; i < 200; ++i) {
        const double next = std::exp(av * m);
        if (next == m) break;
        m = next;
    }
    const double w = std::exp(-av * m); // half-width of the core piece, = 1/m exactly in the limit

    Atlas atlas{av, depth, m, w, {}, {}};
    atlas.pieces.push_back({FiniteWord{}, Interval(XReal(-w), XReal(w))});
    std::size_t gen_begin = 0;
    std::size_t gen_end = 1;
    for (std::size_t d = 0; d < depth; ++d) {
        for (std::size_t i = gen_begin; i < gen_end; ++i) {
            const AtlasPiece parent = atlas.pieces[i];
            for (const Sign s : {Sign::plus, Sign::minus}) {
                FiniteWord head;
                head.push_back(s);
                atlas.pieces.push_back({concat(head, parent.gamma),
                                        Interval::hull(apply_sign(s, a, parent.box.lo()),
                                                       apply_sign(s, a, parent.box.hi()))});
            }
        }
        gen_begin = gen_end;
        gen_end = atlas.pieces.size();
    }

    std::vector<Interval> boxes;
    boxes.reserve(atlas.pieces.size());
    for (const auto& piece : atlas.pieces) boxes.push_back(piece.box);
    std::sort(boxes.begin(), boxes.end(), [](const Interval& x, const Interval& y) {
        return x.lo() < y.lo() || (x.lo() == y.lo() && x.hi() < y.hi());
    });

    atlas.components.push_back(Interval(XReal::minus_infinity(), XReal(-m)));
    for (const auto& b : boxes) {
        // Open intervals merge only on strict overlap; all of them sit
        // strictly between the rays.
        if (atlas.components.size() > 1 && b.lo() < atlas.components.back().hi()) {
            if (atlas.components.back().hi() < b.hi())
                atlas.components.back() = Interval(atlas.components.back().lo(), b.hi());
        } else {
            atlas.components.push_back(b);
        }
    }
    atlas.components.push_back(Interval(XReal(m), XReal::plus_infinity()));
    return atlas;
}

AtlasMembership atlas_membership(const Atlas& atlas, XReal t) {
    AtlasMembership out;
    if (t > XReal(atlas.m)) {
        out.in_x = true;
        out.component = Interval(XReal(atlas.m), XReal::plus_infinity());
        return out;
    }
    if (t < XReal(-atlas.m)) {
        out.in_x = true;
        out.component = Interval(XReal::minus_infinity(), XReal(-atlas.m));
        return out;
    }
    for (const auto& piece : atlas.pieces) {
        if (piece.box.interior_contains(t)) {
            out.in_x = true;
            out.witness = piece.gamma;
            out.component = piece.box;
            return out;
        }
    }
    return out;
}

std::string_view to_string(SuitabilityKind k) {
    switch (k) {
    case SuitabilityKind::suitable_certified: return "SuitableCertified";
    case SuitabilityKind::not_suitable_small: return "NotSuitableSmall";
    case SuitabilityKind::not_suitable_large: return "NotSuitableLarge";
    case SuitabilityKind::unknown: return "Unknown";
    }
    return "Unknown";
}

SuitabilityReport suitability_report(Base a) {
    SuitabilityReport report{SuitabilityKind::unknown, a.value(), std::nullopt, std::nullopt};
    if (a.value() <= k_inv_e) {
        report.kind = SuitabilityKind::not_suitable_small;
        return report;
    }
    if (a.value() > std::numbers::e) {
        report.kind = SuitabilityKind::not_suitable_large;
        return report;
    }
    report.pow = certify_pow(a);
    report.quad = certify_quad(a);
    report.kind = (report.pow->verdict || report.quad->verdict) ? SuitabilityKind::suitable_certified
                                                                : SuitabilityKind::unknown;
    return report;
}

} // namespace exptower
