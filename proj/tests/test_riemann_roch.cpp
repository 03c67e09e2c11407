#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace coulomb;
using namespace testing_helpers;

namespace {

const VarNames kXH = {"x", "hbar"};
const VarNames kTQ = {"t", "q"};

} // namespace

TEST(EmbedHom, Examples) {
    GaugeTheory t = chi_equals_x();
    HomAlgebra alg = hom_algebra(t);
    CompletedElement e = embed_hom(alg.cartan(P("x", kXH)), 2, 2);
    ASSERT_EQ(e.terms().size(), 1u);
    EXPECT_EQ(e.terms().at({0}), J("x", kXH, 2));
    EXPECT_TRUE(embed_hom(HomElement(2), 2, 4).is_zero());
}

TEST(EmbedHom, RingMap) {
    for (const auto& t : law_theories()) {
        HomAlgebra alg = hom_algebra(t);
        CompletedAlgebra calg(t, 4);
        Sampler s(51);
        for (int i = 0; i < 30; ++i) {
            HomElement a = s.hom_element(t), b = s.hom_element(t);
            ASSERT_EQ(embed_hom(alg.multiply(a, b), t.ring_vars(), 4),
                      calg.multiply(embed_hom(a, t.ring_vars(), 4), embed_hom(b, t.ring_vars(), 4)));
        }
    }
}

TEST(Upsilon, Generators) {
    GaugeTheory t = chi_equals_x();
    KAlgebra k = k_algebra(t);
    CompletedAlgebra c(t, 6);
    CompletedElement u1 = upsilon(c, k.monopole({1}));
    EXPECT_EQ(u1.terms().at({1}), Jet::constant(2, 6, 1));
    CompletedElement um = upsilon(c, k.monopole({-1}));
    EXPECT_EQ(um.terms().at({-1}), todd_inverse_factor(P("x", kXH), -1, 6));
    CompletedElement ut = upsilon(c, k.cartan(L("t", kTQ)));
    EXPECT_EQ(ut.terms().at({0}), jet_of_exp(P("x", kXH), 6));
}

TEST(Upsilon, UnitAdditiveAndModule) {
    for (const auto& t : law_theories()) {
        KAlgebra k = k_algebra(t);
        CompletedAlgebra c(t, 4);
        CompletedElement one = upsilon(c, k.unit());
        ASSERT_EQ(one.terms().size(), 1u);
        EXPECT_EQ(one.terms().begin()->second, Jet::constant(t.ring_vars(), 4, 1));
        Sampler s(52);
        for (int i = 0; i < 20; ++i) {
            KElement a = s.k_element(t), b = s.k_element(t);
            KElement sum = a;
            sum += b;
            ASSERT_EQ(upsilon(c, sum), upsilon(c, a) + upsilon(c, b));
            LaurentPoly f = s.laurent(t.ring_vars());
            CompletedElement ch_f(t.ring_vars(), 4);
            ch_f.add_term(Cocharacter(t.gauge_rank(), 0), chern_character_jet(f, 4));
            ASSERT_EQ(upsilon(c, k.multiply(k.cartan(f), a)), c.multiply(ch_f, upsilon(c, a)));
        }
    }
}

TEST(UpsilonHomomorphism, ChiEqualsXClosedForm) {
    GaugeTheory t = chi_equals_x();
    KAlgebra k = k_algebra(t);
    for (int order : {6, 8}) {
        CompletedAlgebra c(t, order);
        CheckReport r = verify_upsilon_homomorphism(t, k, c, k.monopole({1}), k.monopole({-1}));
        EXPECT_TRUE(r.pass);
        CompletedElement rhs = c.multiply(upsilon(c, k.monopole({1})), upsilon(c, k.monopole({-1})));
        CompletedElement expected(2, order);
        expected.add_term({0}, Jet::constant(2, order, 1) - jet_of_exp(P("-x", kXH), order));
        EXPECT_EQ(rhs, expected);
    }
}

TEST(UpsilonHomomorphism, TrivialPair) {
    GaugeTheory t = chi_equals_x();
    KAlgebra k = k_algebra(t);
    CompletedAlgebra c(t, 6);
    EXPECT_TRUE(verify_upsilon_homomorphism(t, k, c, k.unit(), k.unit()).pass);
}

TEST(UpsilonHomomorphism, ProductOfWeightsFails) {
    GaugeTheory t = chi_equals_x();
    KAlgebra k = k_algebra(t, EulerConvention::product_of_weights);
    for (int order : {1, 2, 6}) {
        CompletedAlgebra c(t, order);
        CheckReport r = verify_upsilon_homomorphism(t, k, c, k.monopole({1}), k.monopole({-1}));
        EXPECT_FALSE(r.pass) << order;
        EXPECT_FALSE(r.residual_terms.empty());
    }
}

TEST(UpsilonHomomorphism, GeneratorPairs) {
    for (const auto& t : law_theories()) {
        KAlgebra k = k_algebra(t);
        CompletedAlgebra c(t, 6);
        std::vector<Cocharacter> gens = hilbert_basis_generators(t);
        gens.push_back(Cocharacter(t.gauge_rank(), 0));
        for (const auto& a : gens)
            for (const auto& b : gens)
                ASSERT_TRUE(verify_upsilon_homomorphism(t, k, c, k.monopole(a), k.monopole(b)).pass) << t.name();
    }
}

TEST(UpsilonHomomorphism, RandomPairs) {
    for (const auto& t : law_theories()) {
        KAlgebra k = k_algebra(t);
        CompletedAlgebra c(t, 4);
        Sampler s(53);
        for (int i = 0; i < 25; ++i) {
            KElement a = s.k_element(t), b = s.k_element(t);
            ASSERT_TRUE(verify_upsilon_homomorphism(t, k, c, a, b).pass) << t.name();
        }
    }
}

TEST(TdIdentity, Examples) {
    GaugeTheory t = chi_equals_x();
    KAlgebra k = k_algebra(t);
    CompletedAlgebra c(t, 6);
    EXPECT_TRUE(verify_td_identity(t, c, k, {-1}).pass);
    EXPECT_TRUE(verify_td_identity(t, c, k, {1}).pass);
    EXPECT_EQ(chern_character_jet(k.euler({-1}), 6), Jet::constant(2, 6, 1) - jet_of_exp(P("hbar-x", kXH), 6));
}

TEST(TdIdentity, AbelianA2Box) {
    GaugeTheory t = abelian_a2();
    KAlgebra k = k_algebra(t);
    CompletedAlgebra c(t, 8);
    for (const auto& l : ::coulomb::detail::box_points(2, 3)) ASSERT_TRUE(verify_td_identity(t, c, k, l).pass);
}

TEST(TdIdentity, ProductOfWeightsFails) {
    GaugeTheory t = chi_equals_x();
    KAlgebra k = k_algebra(t, EulerConvention::product_of_weights);
    CompletedAlgebra c(t, 2);
    EXPECT_FALSE(verify_td_identity(t, c, k, {-1}).pass);
}

TEST(MinusculePrefactor, Examples) {
    GaugeTheory t = chi_equals_x();
    EXPECT_EQ(minuscule_upsilon_prefactor(t, {-1}, 2), J("1 - (x-hbar)/2 + (x-hbar)^2/6", kXH, 2));
    EXPECT_EQ(minuscule_upsilon_prefactor(t, {1}, 4), Jet::constant(2, 4, 1));
}

TEST(MinusculePrefactor, MatchesToddInverseOnRankOneBlocks) {
    for (const auto& t : law_theories()) {
        CompletedAlgebra c(t, 5);
        for (const auto& l : minuscule_coweights(t.block_dims()))
            ASSERT_EQ(minuscule_upsilon_prefactor(t, l, 5), c.todd_inverse(l));
    }
}

TEST(MinusculePrefactor, NonabelianBlock) {
    GaugeTheory t = type_a_quiver({2}, {2}, "u2_w2");
    Jet p = minuscule_upsilon_prefactor(t, {1, 0}, 3);
    EXPECT_EQ(p.constant_term(), 1);
    EXPECT_THROW(minuscule_upsilon_prefactor(t, {1, -1}, 3), NotMinuscule);
}
