#include <gtest/gtest.h>

#include "helpers.hpp"
#include "oracles.hpp"

using namespace coulomb;
using namespace testing_helpers;

namespace {

const VarNames kTQ = {"t", "q"};

LaurentPoly weight_monomial(const MatterWeight& w, int qpow) {
    Exponents e(w.gauge.begin(), w.gauge.end());
    e.insert(e.end(), w.flavor.begin(), w.flavor.end());
    e.push_back(qpow);
    return LaurentPoly::monomial(std::move(e));
}

/// Structure constant of r_l * r_m as the explicit product of f_chi q^(...) factors.
LaurentPoly explicit_weight_product(const GaugeTheory& t, const Cocharacter& l, const Cocharacter& m) {
    LaurentPoly r(t.ring_vars(), 1);
    for (const auto& w : t.weights()) {
        const int a = pairing(w.gauge, l), b = pairing(w.gauge, m), d = d_function(a, b);
        for (int rep = 0; rep < w.multiplicity; ++rep) {
            if (a > 0 && b < 0)
                for (int j = 1; j <= d; ++j) r *= weight_monomial(w, a - j);
            if (a < 0 && b > 0)
                for (int j = 0; j <= d - 1; ++j) r *= weight_monomial(w, a + j);
        }
    }
    return r;
}

} // namespace

TEST(EulerK, ChiEqualsX) {
    GaugeTheory t = chi_equals_x();
    EXPECT_EQ(euler_k(t, {-1}), L("1 - t^-1*q", kTQ));
    EXPECT_EQ(euler_k(t, {1}), LaurentPoly(2, 1));
    EXPECT_EQ(euler_k(t, {-2}), L("(1 - t^-1*q)*(1 - t^-1*q^2)", kTQ));
}

TEST(EulerK, ProductOfWeightsReading) {
    GaugeTheory t = chi_equals_x();
    EXPECT_EQ(euler_k(t, {-2}, EulerConvention::product_of_weights), L("t^2*q^-3", kTQ));
}

TEST(ShiftK, Examples) {
    EXPECT_EQ(shift_k({1}, L("1 - t^-1*q", kTQ)), L("1 - t^-1", kTQ));
    LaurentPoly f = L("2*t^3*q^-1 - 5", kTQ);
    EXPECT_EQ(shift_k({0}, f), f);
}

TEST(ShiftK, RingHomomorphism) {
    for (const auto& t : law_theories()) {
        Sampler s(41);
        for (int i = 0; i < 50; ++i) {
            Cocharacter l = s.cocharacter(t.gauge_rank(), 3);
            LaurentPoly f = s.laurent(t.ring_vars()), g = s.laurent(t.ring_vars());
            ASSERT_EQ(shift_k(l, f * g), shift_k(l, f) * shift_k(l, g));
        }
    }
}

TEST(MultiplyK, ChiEqualsX) {
    KAlgebra alg = k_algebra(chi_equals_x());
    EXPECT_EQ(alg.multiply(alg.monopole({1}), alg.monopole({-1})), alg.cartan(L("1 - t^-1", kTQ)));
    EXPECT_EQ(alg.multiply(alg.monopole({-1}), alg.monopole({1})), alg.cartan(L("1 - t^-1*q", kTQ)));
}

TEST(MultiplyK, CommutationRule) {
    KAlgebra alg = k_algebra(chi_equals_x());
    for (int l = -3; l <= 3; ++l) {
        LaurentPoly expected = L("t", kTQ) * LaurentPoly::monomial({0, l});
        EXPECT_EQ(alg.multiply(alg.monopole({l}), alg.cartan(L("t", kTQ))), alg.monopole({l}, expected));
    }
}

TEST(MultiplyK, UnitAndBimodule) {
    for (const auto& t : law_theories()) {
        KAlgebra alg = k_algebra(t);
        Sampler s(42);
        for (int i = 0; i < 30; ++i) {
            KElement a = s.k_element(t);
            ASSERT_EQ(alg.multiply(alg.unit(), a), a);
            ASSERT_EQ(alg.multiply(a, alg.unit()), a);
            Cocharacter l = s.cocharacter(t.gauge_rank(), 3);
            LaurentPoly f = s.laurent(t.ring_vars());
            ASSERT_EQ(alg.multiply(alg.monopole(l), alg.cartan(f)), alg.monopole(l, shift_k(l, f)));
        }
    }
}

TEST(MultiplyK, AssociativeOnRandomTriples) {
    for (const auto& t : law_theories()) {
        KAlgebra alg = k_algebra(t);
        Sampler s(43);
        for (int i = 0; i < 200; ++i) {
            KElement a = s.k_element(t), b = s.k_element(t), c = s.k_element(t);
            ASSERT_EQ(alg.multiply(alg.multiply(a, b), c), alg.multiply(a, alg.multiply(b, c))) << t.name();
        }
    }
}

TEST(MultiplyK, ProductOfWeightsMatchesExplicitFormula) {
    for (const auto& t : law_theories()) {
        KAlgebra alg = k_algebra(t, EulerConvention::product_of_weights);
        const auto box = ::coulomb::detail::box_points(t.gauge_rank(), 2);
        for (const auto& l : box)
            for (const auto& m : box) {
                Cocharacter s(l.size());
                for (std::size_t i = 0; i < l.size(); ++i) s[i] = l[i] + m[i];
                ASSERT_EQ(alg.multiply(alg.monopole(l), alg.monopole(m)), alg.monopole(s, explicit_weight_product(t, l, m)))
                    << t.name();
            }
    }
}

TEST(MultiplyK, ProductOfWeightsIsAssociative) {
    for (const auto& t : law_theories()) {
        KAlgebra alg = k_algebra(t, EulerConvention::product_of_weights);
        Sampler s(44);
        for (int i = 0; i < 50; ++i) {
            KElement a = s.k_element(t), b = s.k_element(t), c = s.k_element(t);
            ASSERT_EQ(alg.multiply(alg.multiply(a, b), c), alg.multiply(a, alg.multiply(b, c)));
        }
    }
}

TEST(ClassicalLimitK, Examples) {
    KAlgebra alg = k_algebra(chi_equals_x());
    KElement a = classical_limit_k(alg.multiply(alg.monopole({1}), alg.monopole({-1})));
    KElement b = classical_limit_k(alg.multiply(alg.monopole({-1}), alg.monopole({1})));
    EXPECT_EQ(a, alg.cartan(L("1 - t^-1", kTQ)));
    EXPECT_EQ(b, a);
    EXPECT_EQ(alg.euler({-2}).specialize(1, 1), L("(1 - t^-1)^2", kTQ));
}

TEST(ClassicalLimitK, RingMapAndCommutative) {
    for (const auto& t : law_theories()) {
        KAlgebra alg = k_algebra(t);
        Sampler s(45);
        for (int i = 0; i < 50; ++i) {
            KElement a = s.k_element(t), b = s.k_element(t);
            KElement ab = classical_limit_k(alg.multiply(a, b));
            ASSERT_EQ(ab, classical_limit_k(alg.multiply(classical_limit_k(a), classical_limit_k(b))));
            ASSERT_EQ(ab, classical_limit_k(alg.multiply(b, a)));
        }
    }
}

TEST(ChernCompatibility, ShiftsCommuteWithCh) {
    for (const auto& t : law_theories()) {
        Sampler s(46);
        for (int i = 0; i < 10; ++i) {
            Cocharacter l = s.cocharacter(t.gauge_rank(), 3);
            LaurentPoly f = s.laurent(t.ring_vars());
            Jet lhs = chern_character_jet(shift_k(l, f), 6);
            Jet rhs(shift_hom(l, chern_character_jet(f, 6).poly()), 6);
            ASSERT_EQ(lhs, rhs);
        }
    }
}
