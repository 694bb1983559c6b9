#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "exptower/evaluator.hpp"
#include "exptower/representer.hpp"

using namespace exptower;

namespace {

const XReal k_pinf = XReal::plus_infinity();
const XReal k_minf = XReal::minus_infinity();

} // namespace

TEST_SUITE_BEGIN("representer");

TEST_CASE("greedy expansion of e at unit base") {
    Expansion x = expand(Base(1.0), XReal(std::numbers::e), 6);
    CHECK(format_word(x.word) == "+++-(+)");
    CHECK(x.tail_periodic);
    REQUIRE(x.orbit.size() == 7);
    CHECK(x.orbit[0].value() == std::numbers::e);
    CHECK(x.orbit[1].value() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(x.orbit[2] == XReal(0.0));
    CHECK(x.orbit[3] == k_minf);
    CHECK(x.orbit[4] == k_pinf);
    CHECK(x.orbit[5] == k_pinf);
    CHECK(x.orbit[6] == k_pinf);
    CHECK(x.hit_zero_at == std::size_t{2});
}

TEST_CASE("greedy expansion of zero") {
    Expansion x = expand(Base(1.0), XReal(0.0), 8);
    CHECK(format_word(x.word) == "+-(+)");
    CHECK(x.hit_zero_at == std::size_t{0});
    CHECK(x.orbit[0] == XReal(0.0));
    CHECK(x.orbit[1] == k_minf);
    CHECK(x.orbit[2] == k_pinf);
    CHECK(x.tail_periodic);
}

TEST_CASE("greedy expansion of the infinities") {
    Expansion up = expand(Base(1.0), k_pinf, 5);
    CHECK(format_word(up.word) == "(+)");
    CHECK(up.tail_periodic);
    CHECK_FALSE(up.hit_zero_at.has_value());
    for (const XReal& u : up.orbit) CHECK(u == k_pinf);

    Expansion down = expand(Base(1.0), k_minf, 5);
    CHECK(format_word(down.word) == "-(+)");
    CHECK(down.orbit[0] == k_minf);
    CHECK(down.orbit[1] == k_pinf);
}

TEST_CASE("greedy expansion picks minus below zero") {
    // the sign rule is forced at every step: u >= 0 takes plus, u < 0 minus
    Expansion x = expand(Base(1.0), XReal(-0.5), 4);
    CHECK(format_word(x.word) == "----");
    CHECK_FALSE(x.tail_periodic);
    CHECK_FALSE(x.hit_zero_at.has_value());
    REQUIRE(x.orbit.size() == 5);
    CHECK(x.orbit[0].value() == -0.5);
    CHECK(x.orbit[1].value() == doctest::Approx(-0.6931471805599453).epsilon(1e-14));
    CHECK(x.orbit[2].value() == doctest::Approx(-0.36651292058166435).epsilon(1e-14));
    CHECK(x.orbit[3].value() == doctest::Approx(-1.00372150430231).epsilon(1e-13));
    CHECK(x.orbit[4].value() == doctest::Approx(0.003714596637805006).epsilon(1e-11));
}

TEST_CASE("expansion orbit satisfies the backward recurrence") {
    Base a(0.8);
    Expansion x = expand(a, XReal(2.25), 30);
    const Word& w = x.word;
    for (std::size_t k = 0; k + 1 < x.orbit.size(); ++k) {
        // applying the chosen sign to u_{k+1} recovers u_k up to rounding
        XReal forward = apply_sign(sign_at(w, k + 1), a, x.orbit[k + 1]);
        CHECK(abs_diff(forward, x.orbit[k]) <= 1e-12 * (1.0 + std::fabs(x.orbit[k].value())));
    }
}

TEST_CASE("short finite expansions when the tail never leaves the line") {
    Expansion x = expand(Base(1.0), XReal(1.0), 1);
    REQUIRE(std::holds_alternative<FiniteWord>(x.word));
    CHECK(format_word(x.word) == "+");
    CHECK(x.hit_zero_at == std::size_t{1});
    CHECK_FALSE(x.tail_periodic);

    // two signs still end before the -inf step, so the word stays finite
    Expansion y = expand(Base(1.0), XReal(1.0), 2);
    CHECK(format_word(y.word) == "++");
    CHECK_FALSE(y.tail_periodic);

    // three signs reach -inf and the periodic tail becomes visible
    Expansion z = expand(Base(1.0), XReal(1.0), 3);
    CHECK(format_word(z.word) == "++-(+)");
    CHECK(z.tail_periodic);
}

TEST_CASE("alternate expansion flips the free sign after a zero") {
    auto alt = alternate_expansion(Base(1.0), XReal(std::numbers::e), 6);
    REQUIRE(alt.has_value());
    CHECK(format_word(alt->word) == "++--(+)");
    CHECK(alt->hit_zero_at == std::size_t{2});

    auto alt0 = alternate_expansion(Base(1.0), XReal(0.0), 8);
    REQUIRE(alt0.has_value());
    CHECK(format_word(alt0->word) == "--(+)");

    // finite-word case
    auto altf = alternate_expansion(Base(1.0), XReal(1.0), 2);
    REQUIRE(altf.has_value());
    CHECK(format_word(altf->word) == "+-");
}

TEST_CASE("alternate expansion is absent without a zero") {
    CHECK_FALSE(alternate_expansion(Base(1.0), XReal(-0.5), 4).has_value());
    CHECK_FALSE(alternate_expansion(Base(1.0), XReal(std::numbers::pi), 40).has_value());
    // the zero appears at the last orbit slot: the flippable sign was never emitted
    CHECK_FALSE(alternate_expansion(Base(1.0), XReal(1.0), 1).has_value());
}

TEST_CASE("alternate expansion converges to the same target") {
    Base a(1.0);
    auto alt = alternate_expansion(a, XReal(0.0), 8);
    REQUIRE(alt.has_value());
    const auto& w = std::get<InfiniteWord>(alt->word);
    TowerReport r = classify(a, w);
    REQUIRE(r.status == TowerStatus::converged_finite);
    CHECK(std::fabs(r.limit->value()) < 1e-12);
}

TEST_CASE("round trip represents reachable targets at unit base") {
    Base a(1.0);
    for (double t : {0.0, 1.0, -1.0, 0.5, std::numbers::e, -std::numbers::pi}) {
        RoundTrip rt = roundtrip(a, XReal(t), 200);
        CHECK(rt.verdict == RoundTripVerdict::represented);
        CHECK(rt.final_residual.value() < 1e-6);
        CHECK(rt.residuals.size() == 200);
        CHECK(rt.target == XReal(t));
    }
    CHECK(roundtrip(a, k_pinf, 200).verdict == RoundTripVerdict::represented);
    CHECK(roundtrip(a, k_minf, 200).verdict == RoundTripVerdict::represented);
}

TEST_CASE("round trip of the saturating target reaches residual zero") {
    RoundTrip rt = roundtrip(Base(1.0), k_pinf, 12);
    CHECK(rt.verdict == RoundTripVerdict::represented);
    CHECK(rt.final_residual == XReal(0.0));
    // towers of depth >= 4 saturate at unit base
    for (std::size_t i = 3; i < rt.residuals.size(); ++i) CHECK(rt.residuals[i] == XReal(0.0));
}

TEST_CASE("round trip fails inside the small-base gap") {
    // at a = 0.3 the value 1 sits between the core and the first piece of the
    // representable set; the greedy word converges to a different point
    RoundTrip rt = roundtrip(Base(0.3), XReal(1.0), 60);
    CHECK(rt.verdict == RoundTripVerdict::not_represented);
    CHECK(rt.final_residual.value() > 0.1);

    // -inf is unreachable for small bases: every tower stays finite
    RoundTrip rt2 = roundtrip(Base(0.3), k_minf, 60);
    CHECK(rt2.verdict == RoundTripVerdict::not_represented);
    CHECK(rt2.final_residual == k_pinf);
}

TEST_CASE("round trip with too few signs is undetermined") {
    RoundTrip rt = roundtrip(Base(1.0), XReal(-0.5), 3);
    CHECK(rt.verdict == RoundTripVerdict::undetermined);

    RoundTrip rt0 = roundtrip(Base(1.0), XReal(1.0), 0);
    CHECK(rt0.verdict == RoundTripVerdict::undetermined);
    CHECK(rt0.final_residual == XReal(0.0));
    CHECK(rt0.residuals.empty());
}

TEST_CASE("round trip residuals match recomputed truncations") {
    Base a(1.0);
    XReal t(0.5);
    RoundTrip rt = roundtrip(a, t, 24);
    REQUIRE(rt.residuals.size() == 24);
    for (std::size_t n = 1; n <= 24; ++n)
        CHECK(rt.residuals[n - 1] ==
              XReal(abs_diff(truncation_value(a, rt.expansion.word, n), t)));
    CHECK(rt.final_residual == rt.residuals.back());
}

TEST_SUITE_END();
