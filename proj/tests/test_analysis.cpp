#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "exptower/analysis.hpp"

using namespace exptower;

namespace {

const XReal k_pinf = XReal::plus_infinity();
const XReal k_minf = XReal::minus_infinity();

double draw_unit(std::mt19937_64& rng) { return (rng() >> 11) * 0x1.0p-53; }

} // namespace

TEST_SUITE_BEGIN("analysis");

TEST_CASE("fixed points of the increasing map at a small base") {
    PlusFixedPoints fp = plus_fixed_points(Base(0.3));
    CHECK(fp.m == doctest::Approx(1.631340757267383).epsilon(1e-9));
    CHECK(fp.M == doctest::Approx(5.937790078072092).epsilon(1e-9));
    CHECK(fp.m < fp.M);
    // both satisfy e^{ax} = x to full precision
    CHECK(std::fabs(std::exp(0.3 * fp.m) - fp.m) <= 1e-12 * fp.m);
    CHECK(std::fabs(std::exp(0.3 * fp.M) - fp.M) <= 1e-12 * fp.M);
}

TEST_CASE("fixed points merge at the tangent base") {
    PlusFixedPoints fp = plus_fixed_points(Base(k_inv_e));
    CHECK(fp.m == fp.M);
    CHECK(fp.m == doctest::Approx(std::numbers::e).epsilon(1e-12));
}

TEST_CASE("fixed points disappear above the tangent base") {
    CHECK_THROWS_AS(plus_fixed_points(Base(0.36788)), OutOfRangeError);
    CHECK_THROWS_AS(plus_fixed_points(Base(0.5)), OutOfRangeError);
    CHECK_THROWS_AS(plus_fixed_points(Base(1.0)), OutOfRangeError);
}

TEST_CASE("fixed point of the decreasing map") {
    MinusFixedPoint one = minus_fixed_point(Base(1.0));
    CHECK(one.m_minus == doctest::Approx(-0.5671432904097839).epsilon(1e-10));
    CHECK_FALSE(one.repulsive);

    MinusFixedPoint three = minus_fixed_point(Base(3.0));
    CHECK(three.m_minus == doctest::Approx(-0.34996963165468).epsilon(1e-10));
    CHECK(three.repulsive);

    // a = e is the neutral boundary: a * m = -1, not strictly repelling
    MinusFixedPoint neutral = minus_fixed_point(Base(std::numbers::e));
    CHECK(neutral.m_minus == doctest::Approx(-k_inv_e).epsilon(1e-12));
    CHECK_FALSE(neutral.repulsive);
}

TEST_CASE("decreasing-map fixed point identity across bases") {
    std::mt19937_64 rng(71001);
    for (int trial = 0; trial < 100; ++trial) {
        double av = 0.05 + 5.0 * draw_unit(rng);
        MinusFixedPoint fp = minus_fixed_point(Base(av));
        CHECK(fp.m_minus > -1.0);
        CHECK(fp.m_minus < 0.0);
        CHECK(std::fabs(fp.m_minus + std::exp(av * fp.m_minus)) <= 1e-12);
        CHECK(fp.repulsive == (av * fp.m_minus < -1.0));
    }
}

TEST_CASE("two-cycle of the decreasing map at base three") {
    CyclePair c = two_cycle(Base(3.0));
    CHECK(c.p == doctest::Approx(-0.664739762279161).epsilon(1e-8));
    CHECK(c.q == doctest::Approx(-0.13611988327877657).epsilon(1e-8));
    CHECK(c.p < c.q);
    CHECK(c.steps >= 1);
    // the pair is exchanged by the map
    CHECK(std::fabs(-std::exp(3.0 * c.p) - c.q) <= 1e-12);
    CHECK(std::fabs(-std::exp(3.0 * c.q) - c.p) <= 1e-12);
    // and straddles the fixed point
    MinusFixedPoint fp = minus_fixed_point(Base(3.0));
    CHECK(c.p < fp.m_minus);
    CHECK(fp.m_minus < c.q);
}

TEST_CASE("two-cycle matches the classified truncation cycle") {
    CyclePair c = two_cycle(Base(3.0));
    TowerReport r = classify(Base(3.0), std::get<InfiniteWord>(parse_word("(-)")));
    REQUIRE(r.cycle.has_value());
    CHECK(r.cycle->first.value() == doctest::Approx(c.p).epsilon(1e-8));
    CHECK(r.cycle->second.value() == doctest::Approx(c.q).epsilon(1e-8));
}

TEST_CASE("two-cycle exchange identity at other bases") {
    for (double av : {2.8, 3.5, 4.0}) {
        CyclePair c = two_cycle(Base(av));
        CHECK(std::fabs(-std::exp(av * c.p) - c.q) <= 1e-11);
        CHECK(std::fabs(-std::exp(av * c.q) - c.p) <= 1e-11);
    }
}

TEST_CASE("no two-cycle at or below the neutral base") {
    CHECK_THROWS_AS(two_cycle(Base(std::numbers::e)), NoCycleError);
    CHECK_THROWS_AS(two_cycle(Base(2.0)), NoCycleError);
    CHECK_THROWS_AS(two_cycle(Base(0.5)), NoCycleError);
}

TEST_CASE("boundary constants are reciprocal roots") {
    Constants c = constants_ab();
    CHECK(c.A == doctest::Approx(0.3942083955719353).epsilon(1e-12));
    CHECK(c.B == doctest::Approx(2.5367293320812076).epsilon(1e-12));
    CHECK(std::fabs(c.A * c.B - 1.0) <= 1e-12);
    const auto f = [](double x) { return (x + 1.0) * std::pow(x, -1.0 / (x + 1.0)); };
    CHECK(std::fabs(f(c.A) - std::numbers::e) <= 1e-10);
    CHECK(std::fabs(f(c.B) - std::numbers::e) <= 1e-10);
}

TEST_CASE("parametrization endpoint values") {
    QuadParameterRange r = quad_parameter_range();
    CHECK(r.a_at_minus_sqrt3 == doctest::Approx(1.5145114483894326).epsilon(1e-12));
    CHECK(r.a_at_plus_sqrt3 == doctest::Approx(0.6602789309142719).epsilon(1e-12));
}

TEST_CASE("extended scan solves the tanh equation") {
    ExtendedScan s = scan_quad_extended();
    CHECK(s.t_star == doctest::Approx(1.9150080481545375).epsilon(1e-12));
    CHECK(s.a_low == doctest::Approx(0.5768398178899829).epsilon(1e-12));
    CHECK(std::fabs(s.t_star - 2.0 * std::tanh(s.t_star)) <= 1e-12);
    CHECK(s.a_low == doctest::Approx((2.0 + s.t_star) * std::exp(-s.t_star)).epsilon(1e-15));
}

TEST_CASE("quadratic certificate at unit base") {
    QuadCertificate cert = certify_quad(Base(1.0));
    CHECK(cert.verdict);
    CHECK(cert.convex_ok);
    CHECK(cert.tail_ok);
    REQUIRE(cert.t_param.has_value());
    REQUIRE(cert.lambda.has_value());
    CHECK(*cert.t_param == doctest::Approx(1.1461932206205826).epsilon(1e-9));
    CHECK(*cert.lambda == doctest::Approx(0.3722674035575067).epsilon(1e-9));
    REQUIRE(cert.grid_min.has_value());
    // the gap function has a double root at t, so the grid minimum is tiny
    // but not significantly negative
    CHECK(*cert.grid_min >= -1e-12);
    CHECK(*cert.grid_min < 1e-5);
}

TEST_CASE("quadratic certificate at the neutral base") {
    QuadCertificate cert = certify_quad(Base(std::numbers::e));
    CHECK(cert.verdict);
    REQUIRE(cert.t_param.has_value());
    CHECK(*cert.t_param == -1.0); // the parametrization hits e exactly at t = -1
    CHECK(*cert.lambda == doctest::Approx(2.4630186996435501).epsilon(1e-14));
    CHECK(*cert.grid_min >= -1e-12);
}

TEST_CASE("quadratic certificate covers bases beyond the power range") {
    QuadCertificate cert = certify_quad(Base(2.6));
    CHECK(cert.verdict);
    REQUIRE(cert.t_param.has_value());
    CHECK(*cert.t_param > -1.0);
    CHECK(*cert.t_param < 0.0);
}

TEST_CASE("quadratic certificate fails outside the attainable range") {
    QuadCertificate low = certify_quad(Base(0.5));
    CHECK_FALSE(low.verdict);
    CHECK_FALSE(low.t_param.has_value());
    CHECK_FALSE(low.lambda.has_value());
    CHECK_FALSE(low.grid_min.has_value());

    QuadCertificate high = certify_quad(Base(4.0));
    CHECK_FALSE(high.verdict);
    CHECK_FALSE(high.t_param.has_value());
}

TEST_CASE("quadratic certificate with an explicit weight") {
    QuadCertificate cert = certify_quad(Base(1.0), {}, 1.0);
    CHECK(cert.verdict);
    CHECK_FALSE(cert.t_param.has_value());
    CHECK(*cert.lambda == 1.0);
    // with lambda = 1 the gap function is 2 cosh y - 1 - y^2 >= 1
    CHECK(*cert.grid_min >= 1.0 - 1e-12);

    QuadCertificate bad = certify_quad(Base(1.0), {}, 1.5);
    CHECK_FALSE(bad.convex_ok);
    CHECK_FALSE(bad.verdict);
}

TEST_CASE("quadratic certificate validates its inputs") {
    CHECK_THROWS_AS(certify_quad(Base(1.0), {0.0, 0.0, 100}), DomainError);
    CHECK_THROWS_AS(certify_quad(Base(1.0), {1.0, -1.0, 100}), DomainError);
    CHECK_THROWS_AS(certify_quad(Base(1.0), {-40.0, 40.0, 1}), DomainError);
    CHECK_THROWS_AS(certify_quad(Base(1.0), {}, -2.0), DomainError);
    CHECK_THROWS_AS(certify_quad(Base(1.0), {}, 0.0), DomainError);
    QuadCertificate cert = certify_quad(Base(1.0), {-30.0, 30.0, 50000});
    CHECK(cert.grid.points == 50000);
    CHECK(cert.grid.lo == -30.0);
    CHECK(cert.verdict);
}

TEST_CASE("power certificate at unit base") {
    PowCertificate cert = certify_pow(Base(1.0));
    CHECK(cert.nu == 2.0);
    CHECK(cert.nu_prime == 2.0);
    CHECK(cert.lhs1 == 2.0);
    CHECK(cert.lhs2 == 2.0);
    CHECK(cert.cond1);
    CHECK(cert.cond2);
    CHECK(cert.verdict);
}

TEST_CASE("power certificate verdicts at boundary bases") {
    CHECK(certify_pow(Base(0.40)).verdict);
    CHECK(certify_pow(Base(2.53)).verdict);
    CHECK_FALSE(certify_pow(Base(0.39)).verdict);
    CHECK_FALSE(certify_pow(Base(2.54)).verdict);
}

TEST_CASE("power certificate flips exactly at the reciprocal roots") {
    Constants c = constants_ab();
    CHECK(certify_pow(Base(c.A + 1e-3)).verdict);
    CHECK_FALSE(certify_pow(Base(c.A - 1e-3)).verdict);
    CHECK(certify_pow(Base(c.B - 1e-3)).verdict);
    CHECK_FALSE(certify_pow(Base(c.B + 1e-3)).verdict);
}

TEST_CASE("quadratic weight primitive and measure") {
    PhiFamily quad = QuadPhi{1.0};
    CHECK(phi_primitive(quad, XReal(0.0)) == 0.0);
    CHECK(phi_primitive(quad, k_pinf) == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
    CHECK(phi_measure(quad, Interval(k_minf, k_pinf)) ==
          doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(phi_measure(quad, Interval(XReal(0.0), XReal(1.0))) ==
          doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
    CHECK(phi_measure(quad, Interval(XReal(-1.0), XReal(1.0))) ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));

    PhiFamily steep = QuadPhi{4.0};
    CHECK(phi_measure(steep, Interval(k_minf, k_pinf)) ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
}

TEST_CASE("power weight primitive and measure") {
    PhiFamily pow1 = PowPhi{1.0, 2.0};
    // below the knee the weight is 1 and the primitive is the identity
    CHECK(phi_primitive(pow1, XReal(0.5)) == 0.5);
    CHECK(phi_primitive(pow1, XReal(1.0)) == 1.0);
    CHECK(phi_primitive(pow1, XReal(2.0)) == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(phi_primitive(pow1, k_pinf) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(phi_measure(pow1, Interval(k_minf, k_pinf)) == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(phi_measure(pow1, Interval(XReal(1.0), XReal(2.0))) ==
          doctest::Approx(0.5).epsilon(1e-14));
    CHECK(phi_measure(pow1, Interval(XReal(-1.0), XReal(1.0))) == 2.0);

    PhiFamily pow2 = PowPhi{2.0, 1.5};
    CHECK(phi_measure(pow2, Interval(k_minf, k_pinf)) == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("weight primitives are odd bit-for-bit") {
    std::mt19937_64 rng(71002);
    std::vector<PhiFamily> families = {QuadPhi{1.0}, QuadPhi{0.37}, PowPhi{1.0, 2.0},
                                       PowPhi{0.8, 2.25}};
    for (const auto& family : families) {
        for (int trial = 0; trial < 200; ++trial) {
            double t = -50.0 + 100.0 * draw_unit(rng);
            CHECK(phi_primitive(family, XReal(-t)) == -phi_primitive(family, XReal(t)));
        }
        CHECK(phi_primitive(family, k_minf) == -phi_primitive(family, k_pinf));
    }
}

TEST_CASE("weight measures are nonnegative monotone and additive") {
    std::mt19937_64 rng(71003);
    PhiFamily family = QuadPhi{0.37};
    for (int trial = 0; trial < 200; ++trial) {
        double v[3] = {-8.0 + 16.0 * draw_unit(rng), -8.0 + 16.0 * draw_unit(rng),
                       -8.0 + 16.0 * draw_unit(rng)};
        std::sort(v, v + 3);
        const double lo = v[0], mid = v[1], hi = v[2];
        double whole = phi_measure(family, Interval(XReal(lo), XReal(hi)));
        double left = phi_measure(family, Interval(XReal(lo), XReal(mid)));
        double right = phi_measure(family, Interval(XReal(mid), XReal(hi)));
        CHECK(whole >= 0.0);
        CHECK(left <= whole + 1e-15);
        CHECK(std::fabs(left + right - whole) <= 1e-12);
    }
    CHECK(phi_measure(family, Interval(XReal(3.0), XReal(3.0))) == 0.0);
    CHECK(phi_measure(family, Interval(k_pinf, k_pinf)) == 0.0);
}

TEST_CASE("weight families validate their parameters") {
    CHECK_THROWS_AS(phi_primitive(QuadPhi{0.0}, XReal(1.0)), DomainError);
    CHECK_THROWS_AS(phi_primitive(QuadPhi{-1.0}, XReal(1.0)), DomainError);
    CHECK_THROWS_AS(phi_primitive(PowPhi{1.0, 1.0}, XReal(1.0)), DomainError);
    CHECK_THROWS_AS(phi_primitive(PowPhi{0.0, 2.0}, XReal(1.0)), DomainError);
    CHECK_THROWS_AS(phi_measure(QuadPhi{0.0}, Interval(XReal(0.0), XReal(1.0))), DomainError);
}

TEST_CASE("contraction of a unit interval at unit base") {
    ContractionCheck c = contraction_check(Base(1.0), QuadPhi{1.0},
                                           Interval(XReal(0.0), XReal(1.0)));
    CHECK(c.m_before == doctest::Approx(std::numbers::pi / 4).epsilon(1e-14));
    CHECK(c.m_after_plus == doctest::Approx(0.4328847416198293).epsilon(1e-12));
    CHECK(c.m_after_plus == c.m_after_minus);
    CHECK(c.contracted);
}

TEST_CASE("contraction of the full line") {
    ContractionCheck c = contraction_check(Base(1.0), QuadPhi{1.0}, Interval(k_minf, k_pinf));
    CHECK(c.m_before == doctest::Approx(std::numbers::pi).epsilon(1e-14));
    CHECK(c.m_after_plus == doctest::Approx(std::numbers::pi / 2).epsilon(1e-14));
    CHECK(c.contracted);
}

TEST_CASE("contraction with the power weight") {
    ContractionCheck c = contraction_check(Base(1.0), PowPhi{1.0, 2.0},
                                           Interval(XReal(0.0), XReal(1.0)));
    CHECK(c.m_before == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(c.m_after_plus == doctest::Approx(1.0 - 1.0 / std::numbers::e).epsilon(1e-13));
    CHECK(c.contracted);
}

TEST_CASE("contraction can fail for an unsuitable weight") {
    // lambda tuned for unit base does not contract under base 4
    ContractionCheck c = contraction_check(Base(4.0), QuadPhi{1.0},
                                           Interval(XReal(0.0), XReal(0.5)));
    CHECK_FALSE(c.contracted);
    CHECK(c.m_after_plus > c.m_before);
}

TEST_CASE("contraction is trivial on singletons") {
    ContractionCheck c = contraction_check(Base(1.0), QuadPhi{1.0},
                                           Interval(XReal(2.0), XReal(2.0)));
    CHECK(c.contracted);
    CHECK(c.m_before == 0.0);
    CHECK(c.m_after_plus == 0.0);
    CHECK(c.m_after_minus == 0.0);
}

TEST_CASE("mirror images always measure identically") {
    std::mt19937_64 rng(71004);
    for (int trial = 0; trial < 300; ++trial) {
        double av = 0.1 + 3.0 * draw_unit(rng);
        double x = -6.0 + 12.0 * draw_unit(rng);
        double y = -6.0 + 12.0 * draw_unit(rng);
        PhiFamily family =
            (rng() & 1) ? PhiFamily(QuadPhi{0.1 + draw_unit(rng)})
                        : PhiFamily(PowPhi{0.5 + draw_unit(rng), 1.5 + draw_unit(rng)});
        ContractionCheck c =
            contraction_check(Base(av), family, Interval::hull(XReal(x), XReal(y)));
        CHECK(c.m_after_plus == c.m_after_minus);
    }
}

TEST_CASE("atlas at depth zero") {
    Atlas atlas = atlas_build(Base(0.3), 0);
    CHECK(atlas.base == 0.3);
    CHECK(atlas.depth == 0);
    CHECK(atlas.m == doctest::Approx(1.631340757267383).epsilon(1e-12));
    // the fixed point is an exactly fixed double, so the rays map onto
    // themselves without drift
    CHECK(apply_sign(Sign::plus, Base(0.3), XReal(atlas.m)) == XReal(atlas.m));
    CHECK(std::fabs(atlas.core_half_width * atlas.m - 1.0) <= 4e-16);

    REQUIRE(atlas.pieces.size() == 1);
    CHECK(atlas.pieces[0].gamma.empty());
    CHECK(atlas.pieces[0].box == Interval(XReal(-atlas.core_half_width),
                                          XReal(atlas.core_half_width)));

    REQUIRE(atlas.components.size() == 3);
    CHECK(atlas.components[0] == Interval(k_minf, XReal(-atlas.m)));
    CHECK(atlas.components[1] == atlas.pieces[0].box);
    CHECK(atlas.components[2] == Interval(XReal(atlas.m), k_pinf));
}

TEST_CASE("atlas at depth one") {
    Atlas atlas = atlas_build(Base(0.3), 1);
    REQUIRE(atlas.pieces.size() == 3);
    CHECK(format_word(atlas.pieces[0].gamma).empty());
    CHECK(format_word(atlas.pieces[1].gamma) == "+");
    CHECK(format_word(atlas.pieces[2].gamma) == "-");

    const Interval& up = atlas.pieces[1].box;
    CHECK(up.lo().value() == doctest::Approx(0.8320208199291721).epsilon(1e-9));
    CHECK(up.hi().value() == doctest::Approx(1.201893000808715).epsilon(1e-9));
    // endpoints are reciprocal: e^{-aw} * e^{aw} = 1
    CHECK(std::fabs(up.lo().value() * up.hi().value() - 1.0) <= 1e-15);

    const Interval& down = atlas.pieces[2].box;
    CHECK(down == Interval(-up.hi(), -up.lo()));

    REQUIRE(atlas.components.size() == 5);
    for (std::size_t i = 0; i + 1 < atlas.components.size(); ++i) {
        CHECK(atlas.components[i].hi() < atlas.components[i + 1].lo());
        CHECK(interiors_disjoint(atlas.components[i], atlas.components[i + 1]));
    }
    CHECK(atlas.components[3] == up);
}

TEST_CASE("atlas pieces grow as a full binary tree") {
    for (std::size_t depth : {0u, 1u, 2u, 3u}) {
        Atlas atlas = atlas_build(Base(0.3), depth);
        CHECK(atlas.pieces.size() == (std::size_t{2} << depth) - 1);
        CHECK(atlas.components.size() == atlas.pieces.size() + 2);
    }
    Atlas other = atlas_build(Base(0.2), 2);
    CHECK(other.pieces.size() == 7);
    CHECK(other.components.size() == 9);
    CHECK(apply_sign(Sign::plus, Base(0.2), XReal(other.m)) == XReal(other.m));
}

TEST_CASE("atlas pieces match their words exactly") {
    Base a(0.3);
    Atlas atlas = atlas_build(a, 3);
    const Interval core = atlas.pieces[0].box;
    for (const auto& piece : atlas.pieces) {
        CHECK(piece.box == apply_word(a, piece.gamma, core));
        CHECK(subset_of(piece.box, image_interval(a, piece.gamma)));
        CHECK(piece.gamma.size() <= 3);
    }
    // distinct pieces never overlap
    for (std::size_t i = 0; i < atlas.pieces.size(); ++i)
        for (std::size_t j = i + 1; j < atlas.pieces.size(); ++j)
            CHECK(interiors_disjoint(atlas.pieces[i].box, atlas.pieces[j].box));
}

TEST_CASE("atlas is deterministic") {
    Atlas one = atlas_build(Base(0.3), 2);
    Atlas two = atlas_build(Base(0.3), 2);
    CHECK(one.m == two.m);
    REQUIRE(one.pieces.size() == two.pieces.size());
    for (std::size_t i = 0; i < one.pieces.size(); ++i) {
        CHECK(one.pieces[i].gamma == two.pieces[i].gamma);
        CHECK(one.pieces[i].box == two.pieces[i].box);
    }
}

TEST_CASE("atlas gaps shrink with depth") {
    double previous = std::numeric_limits<double>::infinity();
    for (std::size_t depth = 0; depth <= 3; ++depth) {
        Atlas atlas = atlas_build(Base(0.3), depth);
        double widest = 0.0;
        for (std::size_t i = 0; i + 1 < atlas.components.size(); ++i)
            widest = std::max(widest, atlas.components[i + 1].lo().value() -
                                          atlas.components[i].hi().value());
        CHECK(widest < previous);
        previous = widest;
    }
}

TEST_CASE("atlas membership") {
    Atlas atlas = atlas_build(Base(0.3), 1);

    AtlasMembership hit = atlas_membership(atlas, XReal(1.0));
    CHECK(hit.in_x);
    REQUIRE(hit.witness.has_value());
    CHECK(format_word(*hit.witness) == "+");
    CHECK(hit.component == atlas.pieces[1].box);

    AtlasMembership core = atlas_membership(atlas, XReal(0.0));
    CHECK(core.in_x);
    REQUIRE(core.witness.has_value());
    CHECK(core.witness->empty());

    AtlasMembership ray = atlas_membership(atlas, XReal(2.0));
    CHECK(ray.in_x);
    CHECK_FALSE(ray.witness.has_value());
    CHECK(ray.component == Interval(XReal(atlas.m), k_pinf));
    CHECK(atlas_membership(atlas, k_pinf).in_x);

    AtlasMembership neg = atlas_membership(atlas, XReal(-2.0));
    CHECK(neg.in_x);
    CHECK(neg.component == Interval(k_minf, XReal(-atlas.m)));

    // boundary points are never interior
    CHECK_FALSE(atlas_membership(atlas, XReal(atlas.m)).in_x);
    CHECK_FALSE(atlas_membership(atlas, XReal(-atlas.m)).in_x);
    CHECK_FALSE(atlas_membership(atlas, XReal(atlas.core_half_width)).in_x);
    // points the depth-1 atlas cannot see yet
    CHECK_FALSE(atlas_membership(atlas, XReal(0.7)).in_x);
}

TEST_CASE("deeper atlases cover more") {
    // 0.7 sits in the image of the core under the word +-
    Atlas atlas = atlas_build(Base(0.3), 2);
    AtlasMembership m2 = atlas_membership(atlas, XReal(0.7));
    CHECK(m2.in_x);
    REQUIRE(m2.witness.has_value());
    CHECK(format_word(*m2.witness) == "+-");
}

TEST_CASE("atlas witness midpoints agree with their pieces") {
    Base a(0.3);
    Atlas atlas = atlas_build(a, 3);
    for (const auto& piece : atlas.pieces) {
        const double mid = 0.5 * (piece.box.lo().value() + piece.box.hi().value());
        AtlasMembership m = atlas_membership(atlas, XReal(mid));
        CHECK(m.in_x);
        REQUIRE(m.witness.has_value());
        CHECK(*m.witness == piece.gamma);
    }
}

TEST_CASE("atlas refuses large bases") {
    CHECK_THROWS_AS(atlas_build(Base(0.5), 1), OutOfRangeError);
    CHECK_THROWS_AS(atlas_build(Base(1.0), 1), OutOfRangeError);
    try {
        atlas_build(Base(0.4), 0);
        FAIL("expected OutOfRangeError");
    } catch (const OutOfRangeError& e) {
        CHECK(std::string(e.what()).find("base must satisfy") != std::string::npos);
    }
}

TEST_CASE("suitability verdicts across the base ranges") {
    SuitabilityReport small = suitability_report(Base(0.3));
    CHECK(small.kind == SuitabilityKind::not_suitable_small);
    CHECK_FALSE(small.pow.has_value());
    CHECK_FALSE(small.quad.has_value());

    CHECK(suitability_report(Base(k_inv_e)).kind == SuitabilityKind::not_suitable_small);

    SuitabilityReport large = suitability_report(Base(4.0));
    CHECK(large.kind == SuitabilityKind::not_suitable_large);

    SuitabilityReport unit = suitability_report(Base(1.0));
    CHECK(unit.kind == SuitabilityKind::suitable_certified);
    REQUIRE(unit.pow.has_value());
    REQUIRE(unit.quad.has_value());
    CHECK(unit.pow->verdict);
    CHECK(unit.quad->verdict);

    // only the power certificate reaches below the quadratic range
    SuitabilityReport half = suitability_report(Base(0.5));
    CHECK(half.kind == SuitabilityKind::suitable_certified);
    CHECK(half.pow->verdict);
    CHECK_FALSE(half.quad->verdict);

    // only the quadratic certificate reaches beyond the power range
    SuitabilityReport wide = suitability_report(Base(2.6));
    CHECK(wide.kind == SuitabilityKind::suitable_certified);
    CHECK_FALSE(wide.pow->verdict);
    CHECK(wide.quad->verdict);

    // the neutral base itself is still certified
    CHECK(suitability_report(Base(std::numbers::e)).kind == SuitabilityKind::suitable_certified);

    // between 1/e and the power root no certificate applies
    SuitabilityReport open = suitability_report(Base(0.38));
    CHECK(open.kind == SuitabilityKind::unknown);
    CHECK_FALSE(open.pow->verdict);
    CHECK_FALSE(open.quad->verdict);
}

TEST_CASE("suitability kinds have stable names") {
    CHECK(to_string(SuitabilityKind::suitable_certified) == "SuitableCertified");
    CHECK(to_string(SuitabilityKind::not_suitable_small) == "NotSuitableSmall");
    CHECK(to_string(SuitabilityKind::not_suitable_large) == "NotSuitableLarge");
    CHECK(to_string(SuitabilityKind::unknown) == "Unknown");
}

TEST_SUITE_END();
