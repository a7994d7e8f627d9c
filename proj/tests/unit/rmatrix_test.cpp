#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zfock/rmatrix.hpp"

using namespace zfock;

namespace
{

RMatrix minus_flip(Index d) { return {d, -flip(d).mat}; }

} // namespace

TEST(Flip, EntriesAndAxioms)
{
    const RMatrix f = flip(3);
    EXPECT_EQ(f(0, 1, 1, 0), Complex(1.0));
    EXPECT_EQ(f(0, 1, 0, 1), Complex(0.0));
    EXPECT_EQ(f(2, 2, 2, 2), Complex(1.0));
    EXPECT_TRUE(check_rmatrix(f).all());
    EXPECT_TRUE(check_rmatrix(minus_flip(3)).all());
}

TEST(RMatrixType, RejectsBadShapeAndNonFinite)
{
    EXPECT_THROW(RMatrix(2, CMatrix::Identity(3, 3)), Error);
    CMatrix m = CMatrix::Identity(4, 4);
    m(1, 1) = std::nan("");
    EXPECT_THROW(RMatrix(2, m), Error);
}

TEST(BoxSum, ScalarBlocksGiveExplicitMatrix)
{
    // (-1) boxplus (-1) on C^2: -1 on 00 and 11, flip between 01 and 10
    const RMatrix s = box_sum(scalar_identity(1, -1.0), scalar_identity(1, -1.0));
    CMatrix expect = CMatrix::Zero(4, 4);
    expect(0, 0) = -1.0;
    expect(1, 2) = 1.0;
    expect(2, 1) = 1.0;
    expect(3, 3) = -1.0;
    EXPECT_EQ(frobenius(s.mat - expect), 0.0);
}

TEST(BoxSum, OfFlipsIsFlip)
{
    EXPECT_EQ(frobenius(box_sum(flip(2), flip(1)).mat - flip(3).mat), 0.0);
}

TEST(BoxSum, PreservesAxioms)
{
    const RMatrix s = box_sum(minus_flip(2), box_sum(scalar_identity(1, -1.0), flip(2)));
    EXPECT_TRUE(check_rmatrix(s).all());
}

TEST(BoxProduct, FlipTimesFlipIsFlip)
{
    EXPECT_LE(frobenius(box_product(flip(2), flip(3)).mat - flip(6).mat), 0.0);
}

TEST(BoxProduct, MatchesLoopOracle)
{
    std::mt19937_64 rng(21);
    const RMatrix s(2, oracle::random_matrix(rng, 4, 4));
    const RMatrix r(2, oracle::random_matrix(rng, 4, 4));
    const RMatrix p = box_product(s, r);
    // F_2 (S (x) R) F_2 with F_2 swapping the middle factors of H (x) H (x) K (x) K
    const CMatrix f2 = oracle::slot_permutation({0, 2, 1, 3}, 2);
    const CMatrix expect = f2 * oracle::kron(s.mat, r.mat) * f2;
    EXPECT_LE(frobenius(p.mat - expect), 1e-12);
}

TEST(NormalForm, ThreeBlocksAreDiagonalCheckable)
{
    const RMatrix s = make_normal_form({{1, 1}, {-1, 2}, {1, 1}});
    EXPECT_EQ(s.base_dim, 4);
    EXPECT_TRUE(check_rmatrix(s).all());
    EXPECT_THROW(make_normal_form({}), Error);
    EXPECT_THROW(make_normal_form({{2, 1}}), Error);
    EXPECT_THROW(make_normal_form({{1, 0}}), Error);
}

TEST(Lift, TrivialInternalSpaceIsIdentityOperation)
{
    const RMatrix s = minus_flip(2);
    EXPECT_EQ(frobenius(lift_with_internal(s, 1).mat - s.mat), 0.0);
    const RMatrix l = lift_with_internal(s, 2);
    EXPECT_EQ(l.base_dim, 4);
    // lifting -F by an internal flip is -F on the composite space
    EXPECT_EQ(frobenius(l.mat + flip(4).mat), 0.0);
    EXPECT_TRUE(check_rmatrix(lift_with_internal(make_normal_form({{1, 1}, {-1, 1}}), 3)).all());
    EXPECT_THROW(lift_with_internal(s, 0), Error);
}

TEST(YangBaxter, RandomUnitaryFails)
{
    std::mt19937_64 rng(22);
    const RMatrix u(2, oracle::random_unitary(rng, 4));
    const auto rep = check_rmatrix(u);
    EXPECT_TRUE(rep.unitary());
    EXPECT_GT(rep.yang_baxter, 1e-3);
    EXPECT_FALSE(rep.all());
}

TEST(Dim2, InvolutiveRepresentatives)
{
    const Complex w = std::polar(1.0, 0.4);
    Dim2Params r2;
    r2.p = 1.0;
    r2.q = w;
    r2.r = std::conj(w);
    r2.s = -1.0;
    EXPECT_TRUE(check_rmatrix(make_dim2(Dim2Kind::R2, r2)).all());

    Dim2Params r3;
    r3.p = std::polar(1.0, 1.1);
    r3.q = -1.0;
    r3.r = std::polar(1.0, -1.1);
    EXPECT_TRUE(check_rmatrix(make_dim2(Dim2Kind::R3, r3)).all());

    Dim2Params r1;
    r1.q = -1.0;
    EXPECT_TRUE(check_rmatrix(make_dim2(Dim2Kind::R1, r1)).all());
}

TEST(Dim2, FourthFamilyIsUnitaryYangBaxterButNotInvolutive)
{
    Dim2Params prm;
    prm.q = 1.0;
    const RMatrix r4 = make_dim2(Dim2Kind::R4, prm);
    // R4^2 = [[0,1],[-1,0]] (+) [[0,-1],[1,0]] for q = 1
    CMatrix sq = CMatrix::Zero(4, 4);
    sq(0, 1) = 1.0;
    sq(1, 0) = -1.0;
    sq(2, 3) = -1.0;
    sq(3, 2) = 1.0;
    EXPECT_LE(frobenius(r4.mat * r4.mat - sq), 1e-14);
    const auto rep = check_rmatrix(r4);
    EXPECT_TRUE(rep.unitary());
    EXPECT_TRUE(rep.yang_baxter_ok());
    EXPECT_FALSE(rep.involutive());
    EXPECT_THROW(require_involutive(r4, 1e-10, "test"), Error);
}

TEST(Dim2, RejectsNonUnitParameters)
{
    Dim2Params prm;
    prm.q = 2.0;
    EXPECT_THROW(make_dim2(Dim2Kind::R1, prm), Error);
    EXPECT_THROW(parse_dim2_kind("R5"), Error);
    EXPECT_EQ(parse_dim2_kind("R3"), Dim2Kind::R3);
}

TEST(Crossing, PartnerIndexConvention)
{
    std::mt19937_64 rng(23);
    const RMatrix s(2, oracle::random_matrix(rng, 4, 4));
    const RMatrix h = crossing_partner(s);
    for (Index a = 0; a < 2; ++a)
        for (Index b = 0; b < 2; ++b)
            for (Index c = 0; c < 2; ++c)
                for (Index e = 0; e < 2; ++e) EXPECT_EQ(h(a, b, c, e), s(c, a, e, b));
}

TEST(Crossing, DiagonalNormalFormsAreSymmetric)
{
    EXPECT_LE(crossing_residual(make_normal_form({{1, 1}, {-1, 1}})), 1e-12);
    EXPECT_LE(crossing_residual(make_normal_form({{-1, 1}, {-1, 1}, {1, 1}})), 1e-12);
    EXPECT_LE(crossing_residual(flip(3)), 1e-12);
}

TEST(Crossing, IdentityBlockIsNot)
{
    EXPECT_GT(crossing_residual(scalar_identity(2)), 0.5);
}

TEST(Conjugate, ByUnitaryAndRejection)
{
    std::mt19937_64 rng(24);
    const RMatrix s = make_normal_form({{1, 1}, {-1, 1}});
    const CMatrix q = oracle::random_unitary(rng, 2);
    const RMatrix r = conjugate(s, q);
    const CMatrix qq = oracle::kron(q, q);
    EXPECT_LE(frobenius(r.mat - qq * s.mat * qq.adjoint()), 1e-13);
    EXPECT_TRUE(check_rmatrix(r).all());
    EXPECT_THROW(conjugate(s, 2.0 * identity(2)), Error);
    EXPECT_THROW(conjugate(s, identity(3)), Error);
}

TEST(Distributivity, LiftCommutesWithBoxSum)
{
    EXPECT_LE(distributivity_residual(minus_flip(2), scalar_identity(1), 2), 1e-12);
    EXPECT_LE(distributivity_residual(make_normal_form({{1, 1}, {-1, 1}}), scalar_identity(1, -1.0), 3), 1e-12);
}
