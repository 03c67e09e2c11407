#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace coulomb;
using namespace testing_helpers;

namespace {

Presentation principal(const VarNames& vars, const MultiPoly& f) {
    Presentation p;
    p.vars = vars;
    p.gens = {f};
    p.normalize();
    return p;
}

/// prod_s (c_s - x1) over the eliminated ambient x1, c1..cw.
MultiPoly sqed_relation(int w) {
    const std::size_t n = static_cast<std::size_t>(w) + 1;
    MultiPoly r(n, 1);
    for (std::size_t s = 1; s < n; ++s) r *= MultiPoly::variable(n, s) - MultiPoly::variable(n, 0);
    return r;
}

std::size_t dim_at(const Presentation& p, std::vector<Rational> pt) { return quotient_dimension(p, pt).value; }

} // namespace

TEST(BalgebraHom, SqedWithFlavorIsPrincipal) {
    for (int w = 1; w <= 4; ++w) {
        Presentation full = balgebra_presentation_hom(sqed(w), 2);
        Presentation e = eliminate(full);
        ASSERT_EQ(e.vars.size(), static_cast<std::size_t>(w) + 1);
        EXPECT_TRUE(ideal_equal(e, principal(e.vars, sqed_relation(w)))) << w;
        EXPECT_TRUE(normal_form(sqed_relation(w), buchberger(e)).is_zero());
        EXPECT_EQ(dim_at(full, std::vector<Rational>(static_cast<std::size_t>(w), 0)), static_cast<std::size_t>(w));
    }
}

TEST(BalgebraHom, FlavorOffIsTruncatedPolynomialRing) {
    for (int w = 1; w <= 4; ++w) {
        GaugeTheory t = GaugeTheory::raw(1, 0, {{{1}, {}, w}});
        Presentation e = eliminate(balgebra_presentation_hom(t, 2));
        MultiPoly xw(1, 1);
        for (int k = 0; k < w; ++k) xw *= MultiPoly::variable(1, 0);
        EXPECT_TRUE(ideal_equal(e, principal(e.vars, xw)));
        EXPECT_EQ(quotient_dimension(e).value, static_cast<std::size_t>(w));
    }
}

TEST(BalgebraHom, PureTorusIsZero) {
    Presentation p = balgebra_presentation_hom(pure_torus(1), 2);
    EXPECT_TRUE(buchberger(p).is_unit());
    EXPECT_EQ(quotient_dimension(p).value, 0u);
}

TEST(BalgebraHom, Sqed3DimensionAtZeroAndGenericFlavor) {
    Presentation p = balgebra_presentation_hom(sqed(3), 3);
    EXPECT_EQ(dim_at(p, {0, 0, 0}), 3u);
    EXPECT_EQ(dim_at(p, {1, 2, 3}), 3u);
}

TEST(BalgebraHom, RadiusValidation) {
    EXPECT_THROW(balgebra_presentation_hom(sqed(1), 0), InvalidArgument);
    GaugeTheory t = GaugeTheory::raw(2, 0, {{{1, 2}, {}, 1}, {{2, 1}, {}, 1}});
    EXPECT_THROW(balgebra_presentation_hom(t, 1), RadiusTooSmall);
}

TEST(BalgebraHom, StableInRadius) {
    for (const auto& t : law_theories()) {
        const int r0 = t.gauge_rank() == 1 ? 2 : 1;
        Presentation a = eliminate(balgebra_presentation_hom(t, r0));
        Presentation b = eliminate(balgebra_presentation_hom(t, r0 + 1));
        EXPECT_TRUE(ideal_equal(a, b)) << t.name();
    }
}

TEST(BalgebraHom, FlatOverRandomFlavorPoints) {
    for (const auto& t : {sqed(2), sqed(3), abelian_a2()}) {
        Presentation p = balgebra_presentation_hom(t, 2);
        const std::size_t base = dim_at(p, std::vector<Rational>(t.flavor_rank(), 0));
        for (const auto& pt : sample_flavor_points(t.flavor_rank(), 5, 7, -50, 50))
            EXPECT_EQ(dim_at(p, pt), base) << t.name();
    }
}

TEST(BalgebraK, SqedDimensionAtUnitFlavor) {
    for (int w = 1; w <= 3; ++w) {
        Presentation p = balgebra_presentation_k(sqed(w), 2);
        EXPECT_EQ(dim_at(p, std::vector<Rational>(static_cast<std::size_t>(w), 1)), static_cast<std::size_t>(w));
    }
}

TEST(BalgebraK, SqedPrincipalAfterUnits) {
    GaugeTheory t = sqed(2);
    Presentation e = eliminate(balgebra_presentation_k(t, 2));
    // Ambient t1, a1, a2, u with u*t1*a1*a2 = 1; relation prod_s (1 - t1 a_s^{-1}) cleared of units.
    const VarNames& v = e.vars;
    Presentation expected;
    expected.vars = v;
    expected.gens = {P("(a1 - t1)*(a2 - t1)", v), P("u*t1*a1*a2 - 1", v)};
    expected.normalize();
    EXPECT_TRUE(ideal_equal(e, expected));
}

TEST(BalgebraK, FlavorOffSqed1) {
    GaugeTheory t = chi_equals_x();
    Presentation e = eliminate(balgebra_presentation_k(t, 2));
    EXPECT_EQ(quotient_dimension(e).value, 1u);
    Presentation expected;
    expected.vars = e.vars;
    expected.gens = {P("t1 - 1", e.vars), P("u*t1 - 1", e.vars)};
    expected.normalize();
    EXPECT_TRUE(ideal_equal(e, expected));
}

TEST(BalgebraK, PureTorusIsZero) {
    EXPECT_EQ(quotient_dimension(balgebra_presentation_k(pure_torus(1), 2)).value, 0u);
}

TEST(BalgebraK, StableInRadius) {
    for (const auto& t : {sqed(1), sqed(3), abelian_a2()}) {
        const int r0 = t.gauge_rank() == 1 ? 2 : 1;
        EXPECT_TRUE(ideal_equal(eliminate(balgebra_presentation_k(t, r0)), eliminate(balgebra_presentation_k(t, r0 + 1))))
            << t.name();
    }
}
