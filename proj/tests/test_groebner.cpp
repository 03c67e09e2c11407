#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace coulomb;
using namespace testing_helpers;

namespace {

const VarNames kX = {"x"};
const VarNames kXC = {"x", "c"};

Presentation ideal(const VarNames& vars, const std::vector<std::string>& gens) {
    Presentation p;
    p.vars = vars;
    for (const auto& g : gens) p.gens.push_back(P(g, vars));
    p.normalize();
    return p;
}

} // namespace

TEST(Buchberger, RedundancyRemoved) {
    GroebnerBasis g = buchberger(ideal(kX, {"x^2", "x^3"}));
    ASSERT_EQ(g.basis.size(), 1u);
    EXPECT_EQ(g.basis[0], P("x^2", kX));
}

TEST(Buchberger, ReducesAgainstLinear) {
    GroebnerBasis g = buchberger(ideal(kXC, {"x-c", "x^2"}));
    ASSERT_EQ(g.basis.size(), 2u);
    EXPECT_TRUE(std::find(g.basis.begin(), g.basis.end(), P("x-c", kXC)) != g.basis.end());
    EXPECT_TRUE(std::find(g.basis.begin(), g.basis.end(), P("c^2", kXC)) != g.basis.end());
    EXPECT_FALSE(g.is_unit());
    // Inverting c (chart variable u with u*c = 1) kills the ideal.
    const VarNames v = {"x", "c", "u"};
    EXPECT_TRUE(buchberger(ideal(v, {"x-c", "x^2", "u*c-1"})).is_unit());
}

TEST(Buchberger, EmptyIdeal) {
    EXPECT_TRUE(buchberger(ideal(kX, {})).basis.empty());
}

TEST(Buchberger, Idempotent) {
    Sampler s(61);
    const VarNames v = {"x", "y", "z"};
    for (int i = 0; i < 30; ++i) {
        Presentation p;
        p.vars = v;
        for (int k = 0; k < 3; ++k) p.gens.push_back(s.poly(3, 3, 2));
        p.normalize();
        GroebnerBasis g = buchberger(p);
        EXPECT_EQ(buchberger(g.basis, 3).basis, g.basis);
    }
}

TEST(NormalForm, Examples) {
    GroebnerBasis gx = buchberger(ideal(kX, {"x"}));
    EXPECT_TRUE(normal_form(P("x^2", kX), gx).is_zero());
    GroebnerBasis gx2 = buchberger(ideal(kX, {"x^2"}));
    EXPECT_EQ(normal_form(P("x+1", kX), gx2), P("x+1", kX));
}

TEST(NormalForm, ZeroExactlyOnIdealElements) {
    Sampler s(62);
    const VarNames v = {"x", "y"};
    Presentation p = ideal(v, {"x^2 - y", "x*y - 1"});
    GroebnerBasis g = buchberger(p);
    for (int i = 0; i < 30; ++i) {
        MultiPoly f = s.poly(2) * p.gens[0] + s.poly(2) * p.gens[1];
        EXPECT_TRUE(normal_form(f, g).is_zero());
    }
    EXPECT_FALSE(normal_form(P("x", v), g).is_zero());
}

TEST(IdealEqual, Examples) {
    EXPECT_TRUE(ideal_equal(ideal(kX, {"x^2"}), ideal(kX, {"x^2", "x^3"})));
    EXPECT_FALSE(ideal_equal(ideal(kX, {"x"}), ideal(kX, {"x^2"})));
    EXPECT_THROW(ideal_equal(ideal(kX, {"x"}), ideal(kXC, {"x"})), InvalidArgument);
}

TEST(IdealEqual, EquivalenceRelation) {
    Sampler s(63);
    const VarNames v = {"x", "y"};
    for (int i = 0; i < 20; ++i) {
        Presentation a;
        a.vars = v;
        a.gens = {s.poly(2, 2, 2), s.poly(2, 2, 2)};
        a.normalize();
        Presentation b = a;
        if (b.gens.size() == 2) b.gens = {b.gens[0] + b.gens[1], b.gens[1]};
        b.normalize();
        Presentation c = b;
        c.gens.push_back(P("x*y", v) * b.gens.front());
        EXPECT_TRUE(ideal_equal(a, a));
        EXPECT_EQ(ideal_equal(a, b), ideal_equal(b, a));
        EXPECT_TRUE(ideal_equal(a, b));
        EXPECT_TRUE(ideal_equal(b, c));
        EXPECT_TRUE(ideal_equal(a, c));
    }
}

TEST(QuotientDimension, Staircase) {
    for (int w = 1; w <= 5; ++w) {
        Presentation p = ideal(kX, {"x^" + std::to_string(w)});
        EXPECT_EQ(quotient_dimension(p), (QuotientDimension{true, static_cast<std::size_t>(w)}));
    }
    EXPECT_FALSE(quotient_dimension(ideal(kX, {})).finite);
    EXPECT_EQ(quotient_dimension(ideal(kX, {"1"})).value, 0u);
    EXPECT_EQ(quotient_dimension(ideal({"x", "y"}, {"x^2", "y^3"})).value, 6u);
}

TEST(QuotientDimension, SpecializeFlavor) {
    Presentation p = ideal(kXC, {"(x-c)*x"});
    p.flavor_vars = {1};
    EXPECT_EQ(quotient_dimension(p, std::vector<Rational>{0}).value, 2u);
    EXPECT_EQ(quotient_dimension(p, std::vector<Rational>{5}).value, 2u);
    EXPECT_THROW(quotient_dimension(p, std::vector<Rational>{1, 2}), InvalidArgument);
}

TEST(Eliminate, ContractsAuxiliaryBlock) {
    Presentation p = ideal({"z", "x"}, {"z - x^2", "z^2 - x"});
    p.naux = 1;
    Presentation e = eliminate(p);
    EXPECT_EQ(e.vars, VarNames{"x"});
    EXPECT_TRUE(ideal_equal(e, ideal({"x"}, {"x^4 - x"})));
}

TEST(Eliminate, UnresolvedAuxiliaryThrows) {
    Presentation p = ideal({"z", "x"}, {"z^2 - x"});
    p.naux = 1;
    EXPECT_THROW(eliminate(p), EliminationFailure);
}
