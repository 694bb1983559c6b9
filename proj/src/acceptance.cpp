#include "exptower/acceptance.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <utility>

#include "exptower/analysis.hpp"
#include "exptower/evaluator.hpp"
#include "exptower/representer.hpp"
#include "exptower/words.hpp"
#include "exptower/xreal.hpp"

namespace exptower {

namespace {

// Hand-rolled draws on top of mt19937_64 so results do not depend on the
// standard library's distribution implementations.
std::size_t pick_index(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

double pick_real(std::mt19937_64& rng, double lo, double hi) {
    const double unit = static_cast<double>(rng() >> 11) * 0x1.0p-53; // [0,1)
    return lo + (hi - lo) * unit;
}

Sign pick_sign(std::mt19937_64& rng) { return (rng() & 1u) ? Sign::minus : Sign::plus; }

InfiniteWord random_word(std::mt19937_64& rng, std::size_t max_prefix, std::size_t max_cycle) {
    std::vector<Sign> prefix(pick_index(rng, 0, max_prefix));
    for (auto& s : prefix) s = pick_sign(rng);
    std::vector<Sign> cycle(pick_index(rng, 1, max_cycle));
    for (auto& s : cycle) s = pick_sign(rng);
    return InfiniteWord(FiniteWord(std::move(prefix)), FiniteWord(std::move(cycle)));
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

struct Check {
    bool passed = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            if (!detail.str().empty()) detail << "; ";
            detail << "failed: " << what;
            passed = false;
        }
    }
};

CriterionResult run_one(int id, const std::string& name, const std::function<void(Check&)>& body) {
    Check c;
    try {
        body(c);
    } catch (const std::exception& e) {
        c.passed = false;
        c.detail << "exception: " << e.what();
    }
    return {id, name, c.passed, c.detail.str()};
}

void criterion_constants(Check& c) {
    const Constants k = constants_ab();
    c.require(std::fabs(k.A - 0.3942) <= 5e-5, "A within 5e-5 of 0.3942, got " + fmt(k.A));
    c.require(std::fabs(k.B - 2.5367) <= 5e-5, "B within 5e-5 of 2.5367, got " + fmt(k.B));
    c.require(std::fabs(k.A * k.B - 1.0) <= 1e-9, "A*B within 1e-9 of 1, got " + fmt(k.A * k.B));
    c.detail << "A=" << fmt(k.A) << " B=" << fmt(k.B);
}

void criterion_parameter_range(Check& c) {
    const QuadParameterRange r = quad_parameter_range();
    c.require(std::fabs(r.a_at_minus_sqrt3 - 1.51) <= 5e-3,
              "upper endpoint within 5e-3 of 1.51, got " + fmt(r.a_at_minus_sqrt3));
    c.require(std::fabs(r.a_at_plus_sqrt3 - 0.66) <= 5e-3,
              "lower endpoint within 5e-3 of 0.66, got " + fmt(r.a_at_plus_sqrt3));
    c.detail << "endpoints " << fmt(r.a_at_minus_sqrt3) << ", " << fmt(r.a_at_plus_sqrt3);
}

void criterion_extended_scan(Check& c) {
    const ExtendedScan s = scan_quad_extended();
    c.require(std::fabs(s.a_low - 0.577) <= 5e-3, "a_low within 5e-3 of 0.577, got " + fmt(s.a_low));
    c.detail << "t_star=" << fmt(s.t_star) << " a_low=" << fmt(s.a_low);
}

void criterion_simple_certificate(Check& c) {
    const QuadCertificate cert = certify_quad(Base(1.0), GridSpec{-40.0, 40.0, 100000}, 1.0);
    c.require(cert.grid_min.has_value(), "grid evaluated");
    if (cert.grid_min)
        c.require(*cert.grid_min >= 1.0 - 1e-12, "grid min >= 1 - 1e-12, got " + fmt(*cert.grid_min));
    if (cert.grid_min) c.detail << "grid_min=" << fmt(*cert.grid_min);
}

void criterion_roundtrips(Check& c) {
    const Base a(1.0);
    const XReal targets[] = {XReal(0.0),
                             XReal::plus_infinity(),
                             XReal::minus_infinity(),
                             XReal(1.0),
                             XReal(-1.0),
                             XReal(std::numbers::e),
                             XReal(-std::numbers::pi),
                             XReal(0.5)};
    for (const XReal t : targets) {
        const RoundTrip rt = roundtrip(a, t, 200, 1e-6);
        c.require(rt.verdict == RoundTripVerdict::represented,
                  "target " + fmt(t.value()) + " represented, got verdict " +
                      std::string(to_string(rt.verdict)) + " with final residual " +
                      fmt(rt.final_residual.value()));
    }
    c.detail << "8 targets, 200 signs, tol 1e-6";
}

void criterion_small_base_miss(Check& c) {
    const Base a(0.3);
    const PlusFixedPoints fp = plus_fixed_points(a);
    const XReal oracle = apply_sign(Sign::plus, a,
                                    apply_sign(Sign::plus, a,
                                               apply_sign(Sign::minus, a, XReal(fp.m))));
    c.require(std::fabs(oracle.value() - 1.201893000808715) <= 1e-9,
              "direct-composition oracle near 1.201893, got " + fmt(oracle.value()));

    const Expansion ex = expand(a, XReal(1.0), 16);
    const auto* w = std::get_if<InfiniteWord>(&ex.word);
    c.require(w != nullptr, "expansion reaches its periodic tail");
    if (!w) return;
    const TowerReport rep = classify(a, *w);
    c.require(rep.status == TowerStatus::converged_finite, "expansion word converges");
    if (rep.limit) {
        c.require(abs_diff(*rep.limit, oracle) <= 1e-6,
                  "limit within 1e-6 of oracle, got " + fmt(rep.limit->value()));
        c.require(std::fabs(rep.limit->value() - 1.0) > 0.1, "limit misses the target by more than 0.1");
        c.detail << "limit=" << fmt(rep.limit->value());
    }

    const Atlas atlas = atlas_build(a, 1);
    const AtlasMembership hit = atlas_membership(atlas, XReal(1.0));
    c.require(hit.in_x, "t=1 lies in the depth-1 atlas");
    c.require(hit.witness && format_word(*hit.witness) == "+",
              "witness word is \"+\"");
}

void criterion_small_base_convergence(Check& c, std::mt19937_64& rng) {
    const Base a(0.3);
    for (int i = 0; i < 100; ++i) {
        const InfiniteWord w = random_word(rng, 6, 4);
        const TowerReport rep = classify(a, w, 10000, 1e-12);
        const bool converged = rep.status == TowerStatus::converged_finite ||
                               rep.status == TowerStatus::converged_plus_inf ||
                               rep.status == TowerStatus::converged_minus_inf;
        c.require(converged, "word " + format_word(w) + " converges, got " +
                                 std::string(to_string(rep.status)));
        if (!c.passed) return;
    }
    c.detail << "100 random periodic words";
}

void criterion_two_cycle(Check& c) {
    const Base a(3.0);
    const InfiniteWord w = std::get<InfiniteWord>(parse_word("(-)"));
    const TowerReport rep = classify(a, w);
    c.require(rep.status == TowerStatus::two_cycle,
              "status TwoCycle, got " + std::string(to_string(rep.status)));
    if (!rep.cycle) return;
    const XReal p = rep.cycle->first;
    const XReal q = rep.cycle->second;
    const double r1 = abs_diff(apply_sign(Sign::minus, a, p), q);
    const double r2 = abs_diff(apply_sign(Sign::minus, a, q), p);
    c.require(r1 < 1e-10 && r2 < 1e-10,
              "cycle residuals below 1e-10, got " + fmt(r1) + ", " + fmt(r2));

    const Interval li = limit_interval(a, w, 3000);
    c.require(abs_diff(li.lo(), p) <= 1e-8 && abs_diff(li.hi(), q) <= 1e-8,
              "cycle matches limit interval endpoints within 1e-8");

    const double mid = 0.5 * (p.value() + q.value());
    const Expansion ex = expand(a, XReal(mid), 80);
    std::size_t leading_minus = 0;
    while (leading_minus < 80 && sign_at(ex.word, leading_minus + 1) == Sign::minus) ++leading_minus;
    c.require(leading_minus >= 60,
              "midpoint expansion has >= 60 leading minus signs, got " + std::to_string(leading_minus));
    c.detail << "p=" << fmt(p.value()) << " q=" << fmt(q.value());
}

void criterion_disjoint_interiors(Check& c, std::mt19937_64& rng) {
    for (int i = 0; i < 500; ++i) {
        const Base a(pick_real(rng, 0.05, 4.0));
        const InfiniteWord w1 = random_word(rng, 6, 4);
        InfiniteWord w2 = random_word(rng, 6, 4);
        while (same_sequence(w1, w2)) w2 = random_word(rng, 6, 4);
        const auto n0 = first_difference(w1, w2, 64);
        c.require(n0.has_value(), "distinct words differ within the scan bound");
        if (!n0) return;
        for (std::size_t n = *n0; n <= 30; ++n) {
            const bool ok = interiors_disjoint(image_interval(a, prefix_of(w1, n)),
                                               image_interval(a, prefix_of(w2, n)));
            c.require(ok, "interiors disjoint at n=" + std::to_string(n) + " for " +
                              format_word(w1) + " vs " + format_word(w2) + " at a=" +
                              fmt(a.value()));
            if (!c.passed) return;
        }
    }
    c.detail << "500 pairs, depths up to 30";
}

void criterion_nesting_membership(Check& c, std::mt19937_64& rng) {
    for (int i = 0; i < 500; ++i) {
        double av = 0;
        switch (i % 3) {
        case 0: av = pick_real(rng, 0.02, k_inv_e); break;
        case 1: av = pick_real(rng, k_inv_e, std::numbers::e); break;
        default: av = pick_real(rng, std::numbers::e, 4.0); break;
        }
        const Base a(av);
        const InfiniteWord w = random_word(rng, 6, 4);
        const std::vector<Interval> seq = interval_sequence(a, w, 51);
        for (std::size_t n = 1; n <= 50; ++n) {
            c.require(subset_of(seq[n], seq[n - 1]),
                      "I(n+1) inside I(n) at n=" + std::to_string(n) + " for " + format_word(w) +
                          " at a=" + fmt(av));
            c.require(seq[n - 1].contains(truncation_value(a, w, n)),
                      "u_n inside I(n) at n=" + std::to_string(n) + " for " + format_word(w) +
                          " at a=" + fmt(av));
            if (!c.passed) return;
        }
    }
    c.detail << "500 base/word pairs across all regimes, depths up to 50";
}

void criterion_measure_contraction(Check& c, std::mt19937_64& rng) {
    const Base a(1.0);
    const PhiFamily family = QuadPhi{1.0};
    for (int i = 0; i < 1000; ++i) {
        double lo = pick_real(rng, -10.0, 10.0);
        double hi = pick_real(rng, -10.0, 10.0);
        if (lo > hi) std::swap(lo, hi);
        if (hi - lo < 1e-6) {
            --i;
            continue;
        }
        const ContractionCheck chk = contraction_check(a, family, Interval(XReal(lo), XReal(hi)));
        c.require(chk.m_after_plus < chk.m_before && chk.m_after_minus < chk.m_before,
                  "strict contraction on [" + fmt(lo) + ", " + fmt(hi) + "]");
        c.require(chk.m_after_plus == chk.m_after_minus,
                  "mirror images measure identically on [" + fmt(lo) + ", " + fmt(hi) + "]");
        if (!c.passed) return;
    }
    c.detail << "1000 random intervals in [-10,10]";
}

void criterion_pow_boundary(Check& c) {
    for (const double good : {0.40, 1.0, 2.0, 2.53})
        c.require(certify_pow(Base(good)).verdict, "verdict true at a=" + fmt(good));
    for (const double bad : {0.39, 2.54})
        c.require(!certify_pow(Base(bad)).verdict, "verdict false at a=" + fmt(bad));
    c.detail << "six pinned bases";
}

} // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<CriterionResult> out;
    out.push_back(run_one(1, "boundary constants are reciprocal roots", criterion_constants));
    out.push_back(run_one(2, "parametrization endpoint values", criterion_parameter_range));
    out.push_back(run_one(3, "extended-scan lower edge", criterion_extended_scan));
    out.push_back(run_one(4, "unit-base simple certificate grid minimum", criterion_simple_certificate));
    out.push_back(run_one(5, "unit-base round trips for reference targets", criterion_roundtrips));
    out.push_back(run_one(6, "small-base expansion misses its target and lands in the atlas",
                          criterion_small_base_miss));
    out.push_back(run_one(7, "small-base words always converge",
                          [&](Check& c) { criterion_small_base_convergence(c, rng); }));
    out.push_back(run_one(8, "large-base alternating word settles on a 2-cycle", criterion_two_cycle));
    out.push_back(run_one(9, "distinct words have disjoint interval interiors",
                          [&](Check& c) { criterion_disjoint_interiors(c, rng); }));
    out.push_back(run_one(10, "interval nesting and trace membership",
                          [&](Check& c) { criterion_nesting_membership(c, rng); }));
    out.push_back(run_one(11, "quadratic weight strictly contracts intervals",
                          [&](Check& c) { criterion_measure_contraction(c, rng); }));
    out.push_back(run_one(12, "power certificate verdicts at boundary bases", criterion_pow_boundary));
    return out;
}

bool all_passed(const std::vector<CriterionResult>& results) {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

} // namespace exptower
