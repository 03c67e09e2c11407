#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace coulomb;
using namespace testing_helpers;

namespace {

const VarNames kXH = {"x", "hbar"};
const VarNames kTQ = {"t", "q"};

} // namespace

TEST(Rational, LowestTermsAndParse) {
    Rational r = parse_rational("6/-4");
    EXPECT_EQ(to_string(r), "-3/2");
    EXPECT_GT(r.get_den(), 0);
    EXPECT_EQ(parse_rational(" 10/5 "), Rational(2));
    EXPECT_THROW(parse_rational("1/0"), ParseError);
    EXPECT_THROW(parse_rational("abc"), ParseError);
}

TEST(PolyArith, DifferenceOfSquares) {
    EXPECT_EQ(poly_arith(P("x+hbar", kXH), P("x-hbar", kXH), PolyOp::mul), P("x^2-hbar^2", kXH));
}

TEST(PolyArith, ExactDivision) {
    EXPECT_EQ(poly_arith(P("x^2-hbar^2", kXH), P("x-hbar", kXH), PolyOp::exact_div), P("x+hbar", kXH));
    EXPECT_THROW(poly_arith(P("x^2", kXH), P("x-hbar", kXH), PolyOp::exact_div), DivisionNotExact);
}

TEST(LaurentArith, Units) {
    EXPECT_EQ(laurent_arith(L("t", kTQ), L("t^-1", kTQ), PolyOp::mul), LaurentPoly(2, 1));
    EXPECT_EQ(laurent_arith(L("1-t^-1*q", kTQ), L("q^-1", kTQ), PolyOp::mul), L("q^-1-t^-1", kTQ));
    LaurentPoly f = L("3*t^2*q^-1 - 1/2*t^-3 + q", kTQ);
    EXPECT_EQ(laurent_arith(L("q^0", kTQ), f, PolyOp::mul), f);
}

TEST(PolyText, RoundTrip) {
    const VarNames names = {"x1", "c1", "hbar"};
    MultiPoly p = P("-1/3*x1^3*c1 + 2*hbar - 7", names);
    EXPECT_EQ(P(to_string(p, names), names), p);
    EXPECT_THROW(P("x1^-1", names), ParseError);
    EXPECT_THROW(P("y", names), ParseError);
}

TEST(JetOfExp, Examples) {
    EXPECT_EQ(jet_of_exp(P("x", kXH), 2), J("1 + x + 1/2*x^2", kXH, 2));
    EXPECT_EQ(jet_of_exp(MultiPoly(2), 5), Jet::constant(2, 5, 1));
    MultiPoly u = P("x+hbar", kXH);
    EXPECT_EQ(jet_of_exp(u, 2), Jet(MultiPoly(2, 1) + u + u * u * Rational(1, 2), 2));
    EXPECT_THROW(jet_of_exp(P("x+1", kXH), 3), NonzeroConstantTerm);
}

TEST(ChernCharacter, Examples) {
    EXPECT_EQ(chern_character_jet(L("t", kTQ), 2), J("1 + x + 1/2*x^2", kXH, 2));
    MultiPoly u = P("x-hbar", kXH);
    EXPECT_EQ(chern_character_jet(L("1-t^-1*q", kTQ), 2), Jet(u - u * u * Rational(1, 2), 2));
    EXPECT_EQ(chern_character_jet(L("q^3", kTQ), 1), J("1 + 3*hbar", kXH, 1));
    EXPECT_EQ(chern_character_jet(LaurentPoly(2, 1), 4), Jet::constant(2, 4, 1));
}

TEST(ToddInverseFactor, Examples) {
    MultiPoly u = P("x-hbar", kXH);
    Jet expected(MultiPoly(2, 1) - u * Rational(1, 2) + u * u * Rational(1, 6), 2);
    EXPECT_EQ(todd_inverse_factor(P("x", kXH), -1, 2), expected);
    EXPECT_EQ(todd_inverse_factor(P("x", kXH), 0, 0), Jet::constant(2, 0, 1));
    EXPECT_THROW(todd_inverse_factor(MultiPoly(2), 0, 3), ZeroWeight);

    // product over k = -2, -1 against the product of the factors of the combined series
    Jet a = todd_inverse_factor(P("x", kXH), -2, 5), b = todd_inverse_factor(P("x", kXH), -1, 5);
    Jet prod = Jet::constant(2, 5, 1);
    for (int k : {-2, -1}) prod = prod * todd_inverse_factor(P("x", kXH), k, 5);
    EXPECT_EQ(prod, a * b);
}

TEST(JetInvert, Examples) {
    EXPECT_EQ(jet_invert(J("1+x", kXH, 3)), J("1 - x + x^2 - x^3", kXH, 3));
    EXPECT_EQ(jet_invert(Jet::constant(2, 4, 1)), Jet::constant(2, 4, 1));
    EXPECT_EQ(jet_invert(jet_of_exp(P("x", kXH), 6)), jet_of_exp(P("-x", kXH), 6));
    EXPECT_THROW(jet_invert(J("x", kXH, 3)), NotAUnit);
}

TEST(RingAxioms, MultiPolyRandomTriples) {
    Sampler s(11);
    for (int i = 0; i < 200; ++i) {
        MultiPoly a = s.poly(3), b = s.poly(3), c = s.poly(3);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ((a + b) + c, a + (b + c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ(a + b, b + a);
        if (!b.is_zero()) {
            ASSERT_EQ(exact_div(a * b, b), a);
        }
    }
}

TEST(RingAxioms, LaurentRandomTriples) {
    Sampler s(12);
    for (int i = 0; i < 200; ++i) {
        LaurentPoly a = s.laurent(3), b = s.laurent(3), c = s.laurent(3);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, b * a);
        if (!b.is_zero()) {
            ASSERT_EQ(exact_div(a * b, b), a);
        }
    }
}

TEST(RingAxioms, JetRandomTriples) {
    Sampler s(13);
    for (int i = 0; i < 200; ++i) {
        Jet a(s.poly(3, 4), 4), b(s.poly(3, 4), 4), c(s.poly(3, 4), 4);
        ASSERT_EQ((a * b) * c, a * (b * c));
        ASSERT_EQ(a * (b + c), a * b + a * c);
        ASSERT_EQ(a * b, b * a);
    }
}

TEST(Jet, TruncationIsAHomomorphism) {
    Sampler s(14);
    for (int i = 0; i < 50; ++i) {
        MultiPoly a = s.poly(3, 4, 3), b = s.poly(3, 4, 3);
        for (int n = 0; n <= 5; ++n) {
            ASSERT_EQ((Jet(a, n + 2) * Jet(b, n + 2)).truncate(n), Jet(a, n) * Jet(b, n));
            ASSERT_EQ(Jet(a * b, n), Jet(a, n) * Jet(b, n));
        }
    }
}

TEST(Jet, InverseOfUnits) {
    Sampler s(15);
    for (int i = 0; i < 50; ++i) {
        MultiPoly a = s.poly(3, 4) + MultiPoly(3, Rational(s.uniform(1, 5)));
        if (a.constant_term() == 0) continue;
        Jet f(a, 5);
        ASSERT_EQ(f * jet_invert(f), Jet::constant(3, 5, 1));
    }
}

TEST(ChernCharacter, MultiplicativeAndUnital) {
    Sampler s(16);
    for (int n : {2, 5, 8}) {
        for (int i = 0; i < 20; ++i) {
            LaurentPoly f = s.laurent(3), g = s.laurent(3);
            ASSERT_EQ(chern_character_jet(f * g, n), chern_character_jet(f, n) * chern_character_jet(g, n));
        }
        ASSERT_EQ(chern_character_jet(LaurentPoly(3, 1), n), Jet::constant(3, n, 1));
    }
}

TEST(ChernCharacter, TruncationCompatible) {
    Sampler s(17);
    for (int i = 0; i < 20; ++i) {
        LaurentPoly f = s.laurent(3);
        ASSERT_EQ(chern_character_jet(f, 7).truncate(5), chern_character_jet(f, 5));
    }
}

TEST(ToddInverseFactor, TimesWeightIsOneMinusExp) {
    Sampler s(18);
    const std::size_t n = 4; // x1, x2, c1, hbar
    for (int i = 0; i < 10; ++i) {
        MultiPoly chi(n);
        for (std::size_t v = 0; v + 1 < n; ++v) chi += MultiPoly::variable(n, v) * Rational(s.uniform(-2, 2));
        for (int k = -3; k <= 3; ++k) {
            MultiPoly u = chi + MultiPoly::variable(n, n - 1) * Rational(k);
            if (u.is_zero()) {
                EXPECT_THROW(todd_inverse_factor(chi, k, 4), ZeroWeight);
                continue;
            }
            Jet lhs = todd_inverse_factor(chi, k, 5) * Jet(u, 5);
            Jet rhs = Jet::constant(n, 5, 1) - jet_of_exp(-u, 5);
            ASSERT_EQ(lhs, rhs);
        }
    }
}
